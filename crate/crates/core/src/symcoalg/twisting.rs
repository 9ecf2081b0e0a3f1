//! Cup products, twisting cochains and their adjoint coalgebra maps.

use std::sync::Arc;

use num_traits::One;

use super::SymCoalgebra;
use crate::complexes::normalize_degree;
use crate::error::{Error, Result};
use crate::exactalg::map::{add_entry, add_scaled, GradedMap, Vector};
use crate::exactalg::module::{same_module, GradedModule};
use crate::exactalg::rational::{factorial, qf, sign_q, Q};
use crate::exactalg::tensor::hom_differential;

/// A chain complex with a bilinear degree-0 product: a dg Lie algebra
/// (bracket) or a dg algebra (multiplication).
pub trait BilinearTarget: Sync {
    fn module(&self) -> &Arc<GradedModule>;
    fn differential(&self) -> &GradedMap;
    fn product(&self, i: usize, j: usize) -> Result<Vector>;

    fn product_vectors(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                add_scaled(&mut out, &(x * y), &self.product(i, j)?);
            }
        }
        Ok(out)
    }
}

/// `a ∪ b = μ(a⊗b)Δ` for maps `C → A`; with a Lie target this is the cup
/// bracket.
pub fn cup(a: &GradedMap, b: &GradedMap, c: &SymCoalgebra, target: &dyn BilinearTarget) -> Result<GradedMap> {
    for f in [a, b] {
        if !same_module(f.source(), c.module()) || !same_module(f.target(), target.module()) {
            return Err(Error::Argument("cup: maps must go from the coalgebra to the target".into()));
        }
    }
    let bd = b.degree();
    GradedMap::from_fn(c.module(), target.module(), a.degree() + bd, |i| {
        let mut out = Vector::new();
        for (s, parts) in c.split(i, 2, true) {
            let (x, y) = (a.column(parts[0]), b.column(parts[1]));
            if x.is_empty() || y.is_empty() {
                continue;
            }
            let sign = s * sign_q((bd * c.module().degree(parts[0])) % 2 != 0);
            add_scaled(&mut out, &sign, &target.product_vectors(x, y)?);
        }
        Ok(out)
    })
}

/// `[a, b] = [·,·](a⊗b)Δ`.
pub fn cup_bracket(a: &GradedMap, b: &GradedMap, c: &SymCoalgebra, lie: &dyn BilinearTarget) -> Result<GradedMap> {
    cup(a, b, c, lie)
}

/// Result of a twisting cochain check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingVerdict {
    /// First failing basis word and its length.
    pub failure: Option<(String, usize)>,
}

impl TwistingVerdict {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    fn from_defect(c: &SymCoalgebra, t: &GradedMap, defect: &GradedMap) -> Self {
        let bad = if !t.column(c.unit()).is_empty() {
            Some(c.unit())
        } else {
            defect.columns().iter().position(|v| !v.is_empty())
        };
        TwistingVerdict {
            failure: bad.map(|i| (c.module().label(i).to_string(), c.word_len(i))),
        }
    }
}

fn check_shape(t: &GradedMap, c: &SymCoalgebra, d_c: &GradedMap, target: &dyn BilinearTarget) -> Result<()> {
    if !same_module(t.source(), c.module()) || !same_module(t.target(), target.module()) {
        return Err(Error::Argument("twisting cochain has the wrong source or target".into()));
    }
    if !same_module(d_c.source(), c.module()) {
        return Err(Error::Argument("coalgebra differential acts on another module".into()));
    }
    if t.degree() != -1 && !t.is_zero() {
        return Err(Error::Argument("twisting cochain must have degree -1".into()));
    }
    Ok(())
}

/// `Dt - ½[t,t]` with `Dt = d_L t + t d_C`.
pub fn lie_master_defect(t: &GradedMap, c: &SymCoalgebra, d_c: &GradedMap, lie: &dyn BilinearTarget) -> Result<GradedMap> {
    check_shape(t, c, d_c, lie)?;
    let t = normalize_degree(t.clone(), -1);
    let dt = normalize_degree(hom_differential(&t, d_c, lie.differential())?, -2);
    let tt = cup(&t, &t, c, lie)?;
    dt.add_scaled(&-qf(1, 2), &tt)
}

/// Checks `t(1) = 0` and the master equation `Dt = ½[t,t]`.
pub fn check_lie_twisting(t: &GradedMap, c: &SymCoalgebra, d_c: &GradedMap, lie: &dyn BilinearTarget) -> Result<TwistingVerdict> {
    let defect = lie_master_defect(t, c, d_c, lie)?;
    Ok(TwistingVerdict::from_defect(c, t, &defect))
}

/// Checks `t(1) = 0` and `Dt = t∪t` for an algebra target.
pub fn check_ordinary_twisting(t: &GradedMap, c: &SymCoalgebra, d_c: &GradedMap, alg: &dyn BilinearTarget) -> Result<TwistingVerdict> {
    check_shape(t, c, d_c, alg)?;
    let t = normalize_degree(t.clone(), -1);
    let dt = normalize_degree(hom_differential(&t, d_c, alg.differential())?, -2);
    let defect = dt.sub(&cup(&t, &t, c, alg)?)?;
    Ok(TwistingVerdict::from_defect(c, &t, &defect))
}

/// The coalgebra map `t̄: C → S^c[sL]` adjoint to `t: C → L`:
/// `t̄(1) = 1` and `t̄(w) = Σ_k (1/k!) Σ ± st(w_1)⋯st(w_k)` over splittings of
/// `w` into `k` nonempty ordered sub-words. The generators of `target` are
/// identified with the basis of `L` by index.
pub fn adjoint(t: &GradedMap, c: &SymCoalgebra, target: &SymCoalgebra) -> Result<GradedMap> {
    let l = t.target();
    let gens = target.generators();
    if gens.dim() != l.dim() || (0..l.dim()).any(|i| gens.degree(i) != l.degree(i) + 1) {
        return Err(Error::Argument(
            "adjoint: target coalgebra is not generated by the suspension of the cochain's target".into(),
        ));
    }
    if !same_module(t.source(), c.module()) {
        return Err(Error::Argument("adjoint: cochain is not defined on the coalgebra".into()));
    }
    let st: Vec<Vector> = (0..c.dim())
        .map(|i| {
            t.column(i)
                .iter()
                .map(|(&g, x)| (target.generator_word(g).expect("generator word"), x.clone()))
                .collect()
        })
        .collect();
    GradedMap::from_fn(c.module(), target.module(), 0, |i| {
        let mut out = Vector::new();
        let n = c.word_len(i);
        if n == 0 {
            out.insert(target.unit(), Q::one());
            return Ok(out);
        }
        for k in 1..=n {
            let coeff = Q::one() / factorial(k);
            for (s, parts) in c.split(i, k, false) {
                let mut acc = Vector::new();
                acc.insert(target.unit(), Q::one());
                for &p in &parts {
                    if st[p].is_empty() {
                        acc.clear();
                        break;
                    }
                    acc = target.product(&acc, &st[p])?;
                }
                for (j, x) in acc {
                    add_entry(&mut out, j, &(x * &s * &coeff));
                }
            }
        }
        Ok(out)
    })
}
