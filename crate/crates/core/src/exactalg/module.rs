//! Finite graded modules with an ordered, labelled basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{arg, Result};

/// A basis element: label, homological degree, and filtration weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
    pub weight: u32,
}

/// A graded vector space over `Q` with a finite ordered basis.
///
/// Every basis element carries a degree and a filtration weight. The
/// weight is used by the truncated constructions (word length in symmetric
/// coalgebras, total letter weight in tensor and free Lie algebras); plain
/// chain complexes default it to 1.
#[derive(Clone, Debug)]
pub struct GradedModule {
    name: String,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    by_degree: BTreeMap<i32, Vec<usize>>,
    window: Option<(i32, i32)>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.basis == other.basis
    }
}
impl Eq for GradedModule {}

impl GradedModule {
    pub fn new(name: impl Into<String>, basis: Vec<BasisElement>) -> Result<Self> {
        let name = name.into();
        let mut index = HashMap::with_capacity(basis.len());
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.label.clone(), i).is_some() {
                return arg(format!("duplicate label {:?} in module {name}", b.label));
            }
            by_degree.entry(b.degree).or_default().push(i);
        }
        let window = match (by_degree.keys().next(), by_degree.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Some((lo, hi)),
            _ => None,
        };
        Ok(GradedModule {
            name,
            basis,
            index,
            by_degree,
            window,
        })
    }

    /// Module from `(label, degree)` pairs, all of weight 1.
    pub fn from_pairs<S: AsRef<str>>(name: &str, pairs: &[(S, i32)]) -> Result<Self> {
        Self::new(
            name,
            pairs
                .iter()
                .map(|(l, d)| BasisElement {
                    label: l.as_ref().to_string(),
                    degree: *d,
                    weight: 1,
                })
                .collect(),
        )
    }

    pub fn zero(name: &str) -> Self {
        Self::new(name, Vec::new()).expect("empty module")
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Basis indices in degree `n`, in basis order.
    pub fn in_degree(&self, n: i32) -> &[usize] {
        self.by_degree.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.by_degree.keys().copied()
    }

    /// Inclusive degree window outside of which the module vanishes.
    pub fn degree_window(&self) -> Option<(i32, i32)> {
        self.window
    }

    pub fn max_weight(&self) -> u32 {
        self.basis.iter().map(|b| b.weight).max().unwrap_or(0)
    }

    /// Same basis shifted by `shift` in degree, labels prefixed.
    pub fn shifted(&self, name: &str, shift: i32, prefix: &str) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: format!("{prefix}{}", b.label),
                degree: b.degree + shift,
                weight: b.weight,
            })
            .collect();
        Self::new(name, basis).expect("prefixing preserves uniqueness")
    }

    /// Same basis with different weights.
    pub fn with_weights(&self, weights: &[u32]) -> Self {
        let basis = self
            .basis
            .iter()
            .zip(weights)
            .map(|(b, &w)| BasisElement {
                weight: w,
                ..b.clone()
            })
            .collect();
        Self::new(self.name.clone(), basis).expect("labels unchanged")
    }
}

/// Equality of shared modules, cheap when the `Arc`s coincide.
pub fn same_module(a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
