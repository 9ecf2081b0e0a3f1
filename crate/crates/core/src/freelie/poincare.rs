//! The Poincaré symmetrization `e: S[L] → T[Y]` for `L = L[Y]`.

use std::collections::BTreeMap;

use num_traits::One;

use super::lyndon::FreeLie;
use crate::error::{Error, Result};
use crate::exactalg::linalg::rank_of;
use crate::exactalg::map::{add_scaled, GradedMap, Vector};
use crate::exactalg::module::same_module;
use crate::exactalg::rational::{factorial, sign_q, Q};
use crate::exactalg::sign::{koszul_odd_unchecked, Permutation};
use crate::symcoalg::{add_pair, SymCoalgebra, TensorVector};

/// `e(x_1⋯x_n) = (1/n!) Σ_σ ± x_{σ1}⋯x_{σn}` with the Koszul sign of `σ`.
/// `sym` must be generated by the basis of `free`.
pub fn poincare_symmetrization(free: &FreeLie, sym: &SymCoalgebra) -> Result<GradedMap> {
    if !same_module(sym.generators(), free.module()) {
        return Err(Error::Argument(
            "symmetrization: coalgebra is not generated by the Lie algebra".into(),
        ));
    }
    let t = free.tensor();
    let lie = free.module();
    GradedMap::from_fn(sym.module(), t.module(), 0, |i| {
        let w = sym.word(i);
        let degs: Vec<i32> = w.iter().map(|&x| lie.degree(x)).collect();
        let mut out = Vector::new();
        let inv = Q::one() / factorial(w.len());
        for p in Permutation::all(w.len()) {
            let s = sign_q(koszul_odd_unchecked(p.images(), &degs));
            let mut acc = Vector::new();
            acc.insert(t.unit(), Q::one());
            for &k in p.images() {
                acc = t.product(&acc, free.expansion(w[k]))?;
            }
            add_scaled(&mut out, &(s * &inv), &acc);
        }
        Ok(out)
    })
}

/// Outcome of checking `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareReport {
    /// First word where `Δ_T e ≠ (e⊗e) Δ_S`.
    pub coalgebra_failure: Option<String>,
    /// Bidegrees `(degree, weight)` where `rank e ≠ dim T` or `dim S ≠ dim T`.
    pub rank_failures: Vec<(i32, u32)>,
    /// First word where `d_T e ≠ e d_S`, when differentials were supplied.
    pub chain_failure: Option<String>,
    pub bidegrees_checked: usize,
}

impl PoincareReport {
    pub fn ok(&self) -> bool {
        self.coalgebra_failure.is_none() && self.rank_failures.is_empty() && self.chain_failure.is_none()
    }

    /// Checks `e` as a coalgebra map, its bijectivity per bidegree and,
    /// given `(d_S, d_T)`, compatibility with differentials.
    pub fn check(
        free: &FreeLie,
        sym: &SymCoalgebra,
        e: &GradedMap,
        differentials: Option<(&GradedMap, &GradedMap)>,
    ) -> Result<Self> {
        let t = free.tensor();
        let coalgebra_failure = (0..sym.dim())
            .find(|&i| {
                let mut lhs = TensorVector::new();
                for (&k, c) in e.column(i) {
                    for (pair, x) in t.shuffle_diagonal(k) {
                        add_pair(&mut lhs, pair, &(c * x));
                    }
                }
                lhs != SymCoalgebra::tensor_apply(e, e, &sym.diagonal(i))
            })
            .map(|i| sym.module().label(i).to_string());

        let mut by_bidegree: BTreeMap<(i32, u32), (Vec<usize>, usize)> = BTreeMap::new();
        for i in 0..sym.dim() {
            by_bidegree
                .entry((sym.module().degree(i), sym.total_weight(i)))
                .or_default()
                .0
                .push(i);
        }
        let tm = t.module();
        for k in 0..t.dim() {
            by_bidegree.entry((tm.degree(k), tm.weight(k))).or_default().1 += 1;
        }
        let mut rank_failures = Vec::new();
        for (&key, (cols, tdim)) in &by_bidegree {
            let r = rank_of(cols.iter().map(|&i| e.column(i)));
            if r != *tdim || cols.len() != *tdim {
                rank_failures.push(key);
            }
        }
        let chain_failure = match differentials {
            Some((ds, dt)) => {
                let lhs = dt.compose(e)?;
                let rhs = e.compose(ds)?;
                lhs.first_difference(&rhs).map(|i| sym.module().label(i).to_string())
            }
            None => None,
        };
        Ok(PoincareReport {
            coalgebra_failure,
            rank_failures,
            chain_failure,
            bidegrees_checked: by_bidegree.len(),
        })
    }
}
