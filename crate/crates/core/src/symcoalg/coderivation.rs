//! Coderivations of `S^c[V]` stored by their corestrictions.

use std::sync::Arc;

use num_traits::Zero;

use super::{add_pair, SymCoalgebra, TensorVector};
use crate::complexes::{normalize_degree, ChainComplex};
use crate::error::{Error, Result};
use crate::exactalg::map::{add_entry, GradedMap, Vector};
use crate::exactalg::module::same_module;
use crate::exactalg::rational::{sign_q, Q};
use crate::exactalg::tensor::suspend_map;

/// A coderivation of degree -1, determined by its corestriction
/// `λ: S^c[V] → V` through `∂(w) = Σ_{S≠∅} ± λ(w_S)·w_{S^c}`.
#[derive(Clone, Debug)]
pub struct Coderivation {
    coalg: Arc<SymCoalgebra>,
    corestriction: GradedMap,
    map: GradedMap,
}

impl PartialEq for Coderivation {
    fn eq(&self, other: &Self) -> bool {
        self.coalg == other.coalg && self.corestriction == other.corestriction
    }
}

impl Coderivation {
    pub fn from_corestriction(coalg: &Arc<SymCoalgebra>, lambda: GradedMap) -> Result<Self> {
        if !same_module(lambda.source(), coalg.module()) || !same_module(lambda.target(), coalg.generators()) {
            return Err(Error::Argument(
                "corestriction must map the coalgebra to its generators".into(),
            ));
        }
        if lambda.degree() != -1 && !lambda.is_zero() {
            return Err(Error::Argument(format!(
                "corestriction has degree {}, expected -1",
                lambda.degree()
            )));
        }
        if !lambda.column(coalg.unit()).is_empty() {
            return Err(Error::Argument("corestriction must vanish on the unit".into()));
        }
        let lambda = normalize_degree(lambda, -1);
        let map = GradedMap::from_fn(coalg.module(), coalg.module(), -1, |i| {
            let mut out = Vector::new();
            for (s, parts) in coalg.split(i, 2, true) {
                if parts[0] == coalg.unit() {
                    continue;
                }
                let rest = coalg.word(parts[1]);
                for (&g, c) in lambda.column(parts[0]) {
                    let mut letters = vec![g];
                    letters.extend_from_slice(rest);
                    if let Some((k, sg)) = coalg.normalize(&letters)? {
                        add_entry(&mut out, k, &(&s * sg * c));
                    }
                }
            }
            Ok(out)
        })?;
        Ok(Coderivation {
            coalg: coalg.clone(),
            corestriction: lambda,
            map,
        })
    }

    pub fn zero(coalg: &Arc<SymCoalgebra>) -> Self {
        let lambda = GradedMap::zero(coalg.module(), coalg.generators(), -1);
        Coderivation {
            coalg: coalg.clone(),
            corestriction: lambda,
            map: GradedMap::zero(coalg.module(), coalg.module(), -1),
        }
    }

    /// From `(input word, output generator, coefficient)` triples.
    pub fn from_triples(coalg: &Arc<SymCoalgebra>, triples: &[(String, String, Q)]) -> Result<Self> {
        let lambda = GradedMap::from_triples(coalg.module(), coalg.generators(), -1, triples)?;
        Self::from_corestriction(coalg, lambda)
    }

    pub fn coalgebra(&self) -> &Arc<SymCoalgebra> {
        &self.coalg
    }

    pub fn corestriction(&self) -> &GradedMap {
        &self.corestriction
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn is_zero(&self) -> bool {
        self.corestriction.is_zero()
    }

    /// The corestriction restricted to words of length `k`.
    pub fn component(&self, k: usize) -> GradedMap {
        self.corestriction.restrict_columns(|i| self.coalg.word_len(i) == k)
    }

    /// Largest word length with a nonzero corestriction.
    pub fn arity(&self) -> usize {
        (0..self.coalg.dim())
            .filter(|&i| !self.corestriction.column(i).is_empty())
            .map(|i| self.coalg.word_len(i))
            .max()
            .unwrap_or(0)
    }

    pub fn triples(&self) -> Vec<(String, String, Q)> {
        self.corestriction.triples()
    }

    pub fn add(&self, other: &Coderivation) -> Result<Coderivation> {
        if self.coalg != other.coalg {
            return Err(Error::Argument("adding coderivations of different coalgebras".into()));
        }
        Ok(Coderivation {
            coalg: self.coalg.clone(),
            corestriction: normalize_degree(self.corestriction.add(&other.corestriction)?, -1),
            map: normalize_degree(self.map.add(&other.map)?, -1),
        })
    }

    /// First basis word on which `Δ∂ = (∂⊗1 + 1⊗∂)Δ` fails.
    pub fn coderivation_failure(&self) -> Option<usize> {
        coderivation_failure_of(&self.coalg, &self.map)
    }

    /// First basis word where `∂∂ ≠ 0`.
    pub fn square_failure(&self) -> Option<usize> {
        let sq = self.map.compose(&self.map).expect("endomorphism");
        sq.columns().iter().position(|c| !c.is_empty())
    }
}

/// First basis word on which an endomorphism `f` of `S^c[V]` fails to be a
/// coderivation.
pub fn coderivation_failure_of(c: &SymCoalgebra, f: &GradedMap) -> Option<usize> {
    let id = GradedMap::identity(c.module());
    (0..c.dim()).find(|&i| {
        let mut lhs = TensorVector::new();
        for (&j, x) in f.column(i) {
            for (k, y) in c.diagonal(j) {
                add_pair(&mut lhs, k, &(x * y));
            }
        }
        let delta = c.diagonal(i);
        let mut rhs = SymCoalgebra::tensor_apply(f, &id, &delta);
        for (k, y) in SymCoalgebra::tensor_apply(&id, f, &delta) {
            add_pair(&mut rhs, k, &y);
        }
        lhs != rhs
    })
}

/// An sh-Lie structure on a chain complex `(V, d)`: a coderivation `∂` of
/// `S^c[sV]` with vanishing linear part such that `(d⁰ + ∂)² = 0`.
#[derive(Clone, Debug)]
pub struct ShStructure {
    base: ChainComplex,
    d0: Coderivation,
    partial: Coderivation,
    total: GradedMap,
}

impl ShStructure {
    /// `coalg` must be generated by the suspension of `base`, in the same
    /// basis order.
    pub fn new(base: ChainComplex, partial: Coderivation) -> Result<Self> {
        let coalg = partial.coalgebra().clone();
        let gens = coalg.generators();
        let v = base.module();
        if gens.dim() != v.dim() || (0..v.dim()).any(|i| gens.degree(i) != v.degree(i) + 1) {
            return Err(Error::Argument(
                "coalgebra generators are not the suspension of the base complex".into(),
            ));
        }
        if let Some(i) = (0..coalg.dim())
            .find(|&i| coalg.word_len(i) == 1 && !partial.corestriction().column(i).is_empty())
        {
            return Err(Error::Precondition(format!(
                "sh-structure has a linear part on {}",
                coalg.module().label(i)
            )));
        }
        let sd = suspend_map(base.d(), gens, gens)?;
        let d0 = coalg.induced_differential(&sd)?;
        let total = d0.map().add(partial.map())?;
        let sq = total.compose(&total)?;
        if let Some(i) = sq.columns().iter().position(|c| !c.is_empty()) {
            return Err(Error::ContractViolation(format!(
                "(d⁰ + ∂)² ≠ 0 on {} (length {})",
                coalg.module().label(i),
                coalg.word_len(i)
            )));
        }
        Ok(ShStructure {
            base,
            d0,
            partial,
            total: normalize_degree(total, -1),
        })
    }

    pub fn base(&self) -> &ChainComplex {
        &self.base
    }

    pub fn coalgebra(&self) -> &Arc<SymCoalgebra> {
        self.partial.coalgebra()
    }

    pub fn d0(&self) -> &Coderivation {
        &self.d0
    }

    pub fn partial(&self) -> &Coderivation {
        &self.partial
    }

    /// `d⁰ + ∂` on `S^c[sV]`.
    pub fn differential(&self) -> &GradedMap {
        &self.total
    }

    pub fn complex(&self) -> ChainComplex {
        ChainComplex::new(self.total.clone()).expect("checked at construction")
    }
}

/// Corestriction of the coderivation encoding a bracket on `V`, on
/// `S^c[sV]`: `λ₂(sx·sy) = (-1)^{|x|+1} s[x,y]`. `bracket(i, j)` returns
/// `[x_i, x_j]` over the basis of `V`, which is identified with the
/// generators of `coalg` by index.
pub fn bracket_corestriction(
    coalg: &SymCoalgebra,
    bracket: &dyn Fn(usize, usize) -> Result<Vector>,
) -> Result<GradedMap> {
    let gens = coalg.generators();
    let cols = (0..coalg.dim())
        .map(|i| {
            let w = coalg.word(i);
            if w.len() != 2 {
                return Ok(Vector::new());
            }
            let x_deg = gens.degree(w[0]) - 1;
            let s = sign_q(x_deg % 2 == 0);
            Ok(bracket(w[0], w[1])?
                .into_iter()
                .map(|(k, c)| (k, c * &s))
                .filter(|(_, c)| !c.is_zero())
                .collect())
        })
        .collect::<Result<Vec<Vector>>>()?;
    GradedMap::from_columns(coalg.module(), gens, -1, cols)
}
