//! Exact rationals and their textual form `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ground field.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a rational.
pub fn sign_q(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

pub fn factorial(n: usize) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Parses `"p"` or `"p/q"` with optional sign; the denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Canonical text: `p/q` in lowest terms with `q > 0`, `/q` omitted when `q = 1`.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3").unwrap(), q(3));
        assert_eq!(parse_rational("-6/4").unwrap(), qf(-3, 2));
        assert_eq!(format_rational(&qf(6, -4)), "-3/2");
        assert_eq!(format_rational(&q(0)), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let big = factorial(40) / factorial(38);
        assert_eq!(big, q(40 * 39));
        let s = format_rational(&(factorial(30) / q(7)));
        assert_eq!(parse_rational(&s).unwrap(), factorial(30) / q(7));
    }

    proptest! {
        #[test]
        fn text_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let x = qf(n, d);
            let s = format_rational(&x);
            prop_assert_eq!(parse_rational(&s).unwrap(), x.clone());
            prop_assert_eq!(format_rational(&parse_rational(&s).unwrap()), s);
        }
    }
}
