//! Weight-truncated cofree cocommutative coalgebras `S^c[V]`.
//!
//! A basis word is a nondecreasing sequence of generator indices in which
//! odd generators occur at most once. The product is graded commutative, so
//! reordering letters costs a Koszul sign. Words are truncated by total
//! weight (the sum of the generator weights); the module weight of a word is
//! its length, which is the coaugmentation filtration.

mod coderivation;
mod twisting;

pub use coderivation::{bracket_corestriction, coderivation_failure_of, Coderivation, ShStructure};
pub use twisting::{
    adjoint, check_lie_twisting, check_ordinary_twisting, cup, cup_bracket, lie_master_defect,
    BilinearTarget, TwistingVerdict,
};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::map::{add_entry, GradedMap, Vector};
use crate::exactalg::module::{same_module, BasisElement, GradedModule};
use crate::exactalg::rational::{sign_q, Q};
use crate::exactalg::sign::{koszul_odd_unchecked, unshuffles};

/// Sparse element of `C ⊗ C` over pairs of basis indices.
pub type TensorVector = BTreeMap<(usize, usize), Q>;

pub fn add_pair(v: &mut TensorVector, k: (usize, usize), c: &Q) {
    use num_traits::Zero;
    if c.is_zero() {
        return;
    }
    let e = v.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&k);
    }
}

#[derive(Debug)]
pub struct SymCoalgebra {
    generators: Arc<GradedModule>,
    max_weight: u32,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    total: Vec<u32>,
    module: Arc<GradedModule>,
}

impl PartialEq for SymCoalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.max_weight == other.max_weight && same_module(&self.generators, &other.generators)
    }
}

impl SymCoalgebra {
    /// All words of total weight at most `max_weight`. Generators need
    /// positive weights.
    pub fn new(name: &str, generators: &Arc<GradedModule>, max_weight: u32) -> Result<Self> {
        if generators.basis().iter().any(|b| b.weight == 0) {
            return Err(Error::Argument(
                "symmetric coalgebra generators need positive weights".into(),
            ));
        }
        let g = generators.clone();
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (w, wt) in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for i in start..g.dim() {
                    if w.last() == Some(&i) && g.degree(i) % 2 != 0 {
                        continue;
                    }
                    let nw = wt + g.weight(i);
                    if nw > max_weight {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(i);
                    next.push((v, nw));
                }
            }
            words.extend(next.iter().map(|(w, _)| w.clone()));
            frontier = next;
        }
        let total: Vec<u32> = words
            .iter()
            .map(|w| w.iter().map(|&i| g.weight(i)).sum())
            .collect();
        let basis = words
            .iter()
            .map(|w| BasisElement {
                label: word_label(&g, w),
                degree: w.iter().map(|&i| g.degree(i)).sum(),
                weight: w.len() as u32,
            })
            .collect();
        let module = GradedModule::new(name, basis)?.shared();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(SymCoalgebra {
            generators: g,
            max_weight,
            words,
            index,
            total,
            module,
        })
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn generators(&self) -> &Arc<GradedModule> {
        &self.generators
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn word_len(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn total_weight(&self, i: usize) -> u32 {
        self.total[i]
    }

    pub fn unit(&self) -> usize {
        0
    }

    /// Index of the one-letter word on generator `g`.
    pub fn generator_word(&self, g: usize) -> Option<usize> {
        self.index.get(&vec![g]).copied()
    }

    pub fn index_of_word(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn words_of_length(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.words[i].len() == k)
    }

    fn gen_degrees(&self, w: &[usize]) -> Vec<i32> {
        w.iter().map(|&i| self.generators.degree(i)).collect()
    }

    /// Product of letters in the given order: `None` when it vanishes
    /// (a repeated odd letter); otherwise the word index and the sign.
    /// Errors when the product leaves the truncation.
    pub fn normalize(&self, letters: &[usize]) -> Result<Option<(usize, Q)>> {
        let degs = self.gen_degrees(letters);
        let mut order: Vec<usize> = (0..letters.len()).collect();
        order.sort_by_key(|&p| letters[p]);
        let sorted: Vec<usize> = order.iter().map(|&p| letters[p]).collect();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] && self.generators.degree(pair[0]) % 2 != 0 {
                return Ok(None);
            }
        }
        let odd = koszul_odd_unchecked(&order, &degs);
        match self.index.get(&sorted) {
            Some(&i) => Ok(Some((i, sign_q(odd)))),
            None => {
                let weight = sorted.iter().map(|&i| self.generators.weight(i)).sum();
                Err(Error::Truncation {
                    weight,
                    max: self.max_weight,
                })
            }
        }
    }

    /// Product of basis words.
    pub fn product_words(&self, a: usize, b: usize) -> Result<Option<(usize, Q)>> {
        let mut letters = self.words[a].clone();
        letters.extend_from_slice(&self.words[b]);
        self.normalize(&letters)
    }

    pub fn product(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                if let Some((k, s)) = self.product_words(i, j)? {
                    add_entry(&mut out, k, &(s * x * y));
                }
            }
        }
        Ok(out)
    }

    /// Signed splittings of word `i` into `k` ordered sub-words; `(sign,
    /// sub-word indices)`.
    pub fn split(&self, i: usize, k: usize, allow_empty: bool) -> Vec<(Q, Vec<usize>)> {
        let w = &self.words[i];
        let degs = self.gen_degrees(w);
        unshuffles(&degs, k, allow_empty)
            .into_iter()
            .map(|u| {
                let parts = u
                    .blocks
                    .iter()
                    .map(|b| {
                        let sub: Vec<usize> = b.iter().map(|&p| w[p]).collect();
                        self.index[&sub]
                    })
                    .collect();
                (sign_q(u.odd), parts)
            })
            .collect()
    }

    /// `Δ(w) = Σ ± w_S ⊗ w_{S^c}` over subsets of letter positions.
    pub fn diagonal(&self, i: usize) -> TensorVector {
        let mut out = TensorVector::new();
        for (s, parts) in self.split(i, 2, true) {
            add_pair(&mut out, (parts[0], parts[1]), &s);
        }
        out
    }

    /// The coalgebra map `S(f)` induced by a degree-0 map of generators,
    /// `x_1⋯x_n ↦ f(x_1)⋯f(x_n)`.
    pub fn induced_morphism(&self, f: &GradedMap, target: &SymCoalgebra) -> Result<GradedMap> {
        if f.degree() != 0 && !f.is_zero() {
            return Err(Error::Argument("induced morphism needs a degree-0 map".into()));
        }
        if !same_module(f.source(), &self.generators) || !same_module(f.target(), &target.generators) {
            return Err(Error::Argument("induced morphism: generator modules differ".into()));
        }
        GradedMap::from_fn(&self.module, &target.module, 0, |i| {
            let mut acc = Vector::new();
            acc.insert(target.unit(), Q::one());
            for &g in &self.words[i] {
                let img: Vector = f
                    .column(g)
                    .iter()
                    .map(|(&j, c)| (target.generator_word(j).expect("generator word"), c.clone()))
                    .collect();
                acc = target.product(&acc, &img)?;
            }
            Ok(acc)
        })
    }

    /// Projection onto the generators: `x ↦ x` on one-letter words, zero
    /// elsewhere.
    pub fn projection(&self) -> GradedMap {
        let cols = (0..self.dim())
            .map(|i| {
                let mut v = Vector::new();
                if self.words[i].len() == 1 {
                    v.insert(self.words[i][0], Q::one());
                }
                v
            })
            .collect();
        GradedMap::from_columns(&self.module, &self.generators, 0, cols).expect("projection")
    }

    /// Inclusion of the generators as one-letter words.
    pub fn inclusion(&self) -> GradedMap {
        let cols = (0..self.generators.dim())
            .map(|g| {
                let mut v = Vector::new();
                v.insert(self.generator_word(g).expect("generator within truncation"), Q::one());
                v
            })
            .collect();
        GradedMap::from_columns(&self.generators, &self.module, 0, cols).expect("inclusion")
    }

    /// `(f ⊗ g)` applied to a tensor vector, with the Koszul sign
    /// `(-1)^{|g||x|}`.
    pub fn tensor_apply(f: &GradedMap, g: &GradedMap, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::new();
        for (&(a, b), c) in v {
            let s = sign_q((g.degree() * f.source().degree(a)) % 2 != 0);
            let fa = f.column(a);
            let gb = g.column(b);
            for (i, x) in fa {
                for (j, y) in gb {
                    add_pair(&mut out, (*i, *j), &(c * &s * x * y));
                }
            }
        }
        out
    }

    /// `None` if `f: self → target` commutes with the diagonals, otherwise
    /// the first failing basis word.
    pub fn coalgebra_morphism_failure(&self, f: &GradedMap, target: &SymCoalgebra) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let lhs = {
                let mut out = TensorVector::new();
                for (&j, c) in f.column(i) {
                    for (k, x) in target.diagonal(j) {
                        add_pair(&mut out, k, &(c * x));
                    }
                }
                out
            };
            let rhs = Self::tensor_apply(f, f, &self.diagonal(i));
            lhs != rhs
        })
    }

    /// The coalgebra differential `d⁰` induced by a differential on the
    /// generators, as a coderivation.
    pub fn induced_differential(self: &Arc<Self>, d: &GradedMap) -> Result<Coderivation> {
        let mut cols = vec![Vector::new(); self.dim()];
        for g in 0..self.generators.dim() {
            cols[self.generator_word(g).expect("generator word")] = d.column(g).clone();
        }
        let lambda = GradedMap::from_columns(&self.module, &self.generators, -1, cols)?;
        Coderivation::from_corestriction(self, lambda)
    }
}

fn word_label(g: &GradedModule, w: &[usize]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|&i| g.label(i)).collect::<Vec<_>>().join("·")
    }
}
