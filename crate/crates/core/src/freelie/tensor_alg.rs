//! Weight-truncated tensor algebras `T[Y]`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::map::{add_entry, GradedMap, Vector};
use crate::exactalg::module::{same_module, BasisElement, GradedModule};
use crate::exactalg::rational::{sign_q, Q};
use crate::exactalg::sign::unshuffles;
use crate::symcoalg::{BilinearTarget, TensorVector};

/// Words in the generators of total weight at most `max_weight`, with
/// concatenation as product. The module weight of a word is its total
/// weight.
#[derive(Debug)]
pub struct TensorAlgebra {
    generators: Arc<GradedModule>,
    max_weight: u32,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    module: Arc<GradedModule>,
}

impl TensorAlgebra {
    pub fn new(name: &str, generators: &Arc<GradedModule>, max_weight: u32) -> Result<Self> {
        let g = generators.clone();
        if g.basis().iter().any(|b| b.weight == 0) {
            return Err(Error::Argument("tensor algebra generators need positive weights".into()));
        }
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (w, wt) in &frontier {
                for i in 0..g.dim() {
                    let nw = wt + g.weight(i);
                    if nw <= max_weight {
                        let mut v = w.clone();
                        v.push(i);
                        next.push((v, nw));
                    }
                }
            }
            words.extend(next.iter().map(|(w, _)| w.clone()));
            frontier = next;
        }
        let basis = words
            .iter()
            .map(|w| BasisElement {
                label: if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&i| g.label(i)).collect::<Vec<_>>().join("⊗")
                },
                degree: w.iter().map(|&i| g.degree(i)).sum(),
                weight: w.iter().map(|&i| g.weight(i)).sum(),
            })
            .collect();
        let module = GradedModule::new(name, basis)?.shared();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(TensorAlgebra {
            generators: g,
            max_weight,
            words,
            index,
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

    pub fn unit(&self) -> usize {
        0
    }

    pub fn index_of_word(&self, w: &[usize]) -> Result<usize> {
        self.index.get(w).copied().ok_or_else(|| Error::Truncation {
            weight: w.iter().map(|&i| self.generators.weight(i)).sum(),
            max: self.max_weight,
        })
    }

    pub fn letter(&self, g: usize) -> usize {
        self.index[&vec![g]]
    }

    pub fn letter_vector(&self, g: usize) -> Vector {
        let mut v = Vector::new();
        v.insert(self.letter(g), Q::one());
        v
    }

    pub fn concat(&self, i: usize, j: usize) -> Result<usize> {
        let mut w = self.words[i].clone();
        w.extend_from_slice(&self.words[j]);
        self.index_of_word(&w)
    }

    pub fn product(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                add_entry(&mut out, self.concat(i, j)?, &(x * y));
            }
        }
        Ok(out)
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba` of homogeneous elements.
    pub fn commutator(&self, a: &Vector, da: i32, b: &Vector, db: i32) -> Result<Vector> {
        let mut out = self.product(a, b)?;
        let ba = self.product(b, a)?;
        let s = -sign_q((da * db) % 2 != 0);
        for (k, c) in ba {
            add_entry(&mut out, k, &(c * &s));
        }
        Ok(out)
    }

    /// Shuffle coproduct: letters are primitive and `Δ` is multiplicative.
    pub fn shuffle_diagonal(&self, i: usize) -> TensorVector {
        let w = &self.words[i];
        let degs: Vec<i32> = w.iter().map(|&g| self.generators.degree(g)).collect();
        let mut out = TensorVector::new();
        for u in unshuffles(&degs, 2, true) {
            let a: Vec<usize> = u.blocks[0].iter().map(|&p| w[p]).collect();
            let b: Vec<usize> = u.blocks[1].iter().map(|&p| w[p]).collect();
            crate::symcoalg::add_pair(&mut out, (self.index[&a], self.index[&b]), &sign_q(u.odd));
        }
        out
    }

    /// The derivation of degree `degree` extending `letters[g]` (the image of
    /// generator `g`, an element of this algebra).
    pub fn derivation(&self, letters: &[Vector], degree: i32) -> Result<GradedMap> {
        GradedMap::from_fn(&self.module, &self.module, degree, |i| {
            let w = &self.words[i];
            let mut out = Vector::new();
            let mut passed = 0;
            for (p, &g) in w.iter().enumerate() {
                let s = sign_q((degree * passed) % 2 != 0);
                let left = self.index_of_word(&w[..p])?;
                let right = self.index_of_word(&w[p + 1..])?;
                for (&k, c) in &letters[g] {
                    let lk = self.concat(left, k)?;
                    add_entry(&mut out, self.concat(lk, right)?, &(c * &s));
                }
                passed += self.generators.degree(g);
            }
            Ok(out)
        })
    }

    /// The degree-0 algebra map to `target` extending `letters[g]`.
    pub fn algebra_map(&self, letters: &[Vector], target: &TensorAlgebra) -> Result<GradedMap> {
        GradedMap::from_fn(&self.module, &target.module, 0, |i| {
            let mut acc = Vector::new();
            acc.insert(target.unit(), Q::one());
            for &g in &self.words[i] {
                acc = target.product(&acc, &letters[g])?;
            }
            Ok(acc)
        })
    }
}

/// A tensor algebra with a differential making it a dg algebra.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    tensor: Arc<TensorAlgebra>,
    d: GradedMap,
}

impl DgAlgebra {
    pub fn new(tensor: Arc<TensorAlgebra>, d: GradedMap) -> Result<Self> {
        if !same_module(d.source(), tensor.module()) {
            return Err(Error::Argument("differential acts on another module".into()));
        }
        Ok(DgAlgebra { tensor, d })
    }

    pub fn tensor(&self) -> &Arc<TensorAlgebra> {
        &self.tensor
    }
}

impl BilinearTarget for DgAlgebra {
    fn module(&self) -> &Arc<GradedModule> {
        self.tensor.module()
    }

    fn differential(&self) -> &GradedMap {
        &self.d
    }

    fn product(&self, i: usize, j: usize) -> Result<Vector> {
        let mut v = Vector::new();
        v.insert(self.tensor.concat(i, j)?, Q::one());
        Ok(v)
    }
}
