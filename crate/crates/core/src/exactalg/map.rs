//! Sparse vectors and degree-homogeneous linear maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::module::{same_module, GradedModule};
use super::rational::{format_rational, Q};
use crate::error::{arg, Result};

/// Sparse vector: basis index to nonzero coefficient.
pub type Vector = BTreeMap<usize, Q>;

pub fn unit_vector(i: usize) -> Vector {
    let mut v = Vector::new();
    v.insert(i, Q::one());
    v
}

/// `v += c * w`, dropping zeros.
pub fn add_scaled(v: &mut Vector, c: &Q, w: &Vector) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in w {
        add_entry(v, i, &(c * x));
    }
}

pub fn add_entry(v: &mut Vector, i: usize, x: &Q) {
    if x.is_zero() {
        return;
    }
    match v.entry(i) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x.clone());
        }
    }
}

pub fn scaled(v: &Vector, c: &Q) -> Vector {
    if c.is_zero() {
        return Vector::new();
    }
    v.iter().map(|(&i, x)| (i, x * c)).collect()
}

pub fn sub_vectors(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    add_scaled(&mut out, &-Q::one(), b);
    out
}

/// A homogeneous linear map of degree `degree`.
///
/// Stored column-wise: `cols[j]` is the image of source basis element `j`.
/// Every nonzero entry `(i, j)` satisfies
/// `target.degree(i) == source.degree(j) + degree`.
#[derive(Clone)]
pub struct GradedMap {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    degree: i32,
    cols: Vec<Vector>,
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        same_module(&self.source, &other.source)
            && same_module(&self.target, &other.target)
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.cols == other.cols
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GradedMap {} -> {} (degree {})",
            self.source.name(),
            self.target.name(),
            self.degree
        )?;
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                writeln!(
                    f,
                    "  {} -> {} : {}",
                    self.source.label(j),
                    self.target.label(*i),
                    format_rational(c)
                )?;
            }
        }
        Ok(())
    }
}

impl GradedMap {
    pub fn zero(source: &Arc<GradedModule>, target: &Arc<GradedModule>, degree: i32) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            cols: vec![Vector::new(); source.dim()],
        }
    }

    pub fn identity(m: &Arc<GradedModule>) -> Self {
        GradedMap {
            source: m.clone(),
            target: m.clone(),
            degree: 0,
            cols: (0..m.dim()).map(unit_vector).collect(),
        }
    }

    /// Builds a map from its columns, checking shape and homogeneity.
    pub fn from_columns(
        source: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        degree: i32,
        cols: Vec<Vector>,
    ) -> Result<Self> {
        if cols.len() != source.dim() {
            return arg(format!(
                "map {} -> {}: {} columns for a source of dimension {}",
                source.name(),
                target.name(),
                cols.len(),
                source.dim()
            ));
        }
        for (j, col) in cols.iter().enumerate() {
            for (&i, c) in col {
                if i >= target.dim() {
                    return arg(format!("row index {i} out of range"));
                }
                if c.is_zero() {
                    return arg("explicit zero entry");
                }
                if target.degree(i) != source.degree(j) + degree {
                    return arg(format!(
                        "entry {} -> {} is not homogeneous of degree {degree}",
                        source.label(j),
                        target.label(i)
                    ));
                }
            }
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            cols,
        })
    }

    /// Columns computed independently, in parallel.
    pub fn from_fn<F>(
        source: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        degree: i32,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(usize) -> Result<Vector> + Sync + Send,
    {
        let cols: Result<Vec<Vector>> = (0..source.dim()).into_par_iter().map(f).collect();
        Self::from_columns(source, target, degree, cols?)
    }

    /// Builds a map from `(source label, target label, coefficient)` triples.
    pub fn from_triples(
        source: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        degree: i32,
        triples: &[(String, String, Q)],
    ) -> Result<Self> {
        let mut cols = vec![Vector::new(); source.dim()];
        for (s, t, c) in triples {
            let j = source
                .index_of(s)
                .ok_or_else(|| crate::Error::Argument(format!("unknown source label {s:?}")))?;
            let i = target
                .index_of(t)
                .ok_or_else(|| crate::Error::Argument(format!("unknown target label {t:?}")))?;
            add_entry(&mut cols[j], i, c);
        }
        Self::from_columns(source, target, degree, cols)
    }

    pub fn triples(&self) -> Vec<(String, String, Q)> {
        let mut out = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (&i, c) in col {
                out.push((
                    self.source.label(j).to_string(),
                    self.target.label(i).to_string(),
                    c.clone(),
                ));
            }
        }
        out
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&j, c) in v {
            add_scaled(&mut out, c, &self.cols[j]);
        }
        out
    }

    /// Dense block from source degree `n` to target degree `n + degree`.
    pub fn block(&self, n: i32) -> Vec<Vec<Q>> {
        let rows = self.target.in_degree(n + self.degree);
        let cols = self.source.in_degree(n);
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entry(i, j)).collect())
            .collect()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GradedMap) -> Result<GradedMap> {
        if !same_module(f.target(), &self.source) {
            return arg(format!(
                "cannot compose: {} does not match {}",
                f.target().name(),
                self.source.name()
            ));
        }
        let cols: Vec<Vector> = f.cols.par_iter().map(|c| self.apply(c)).collect();
        Ok(GradedMap {
            source: f.source.clone(),
            target: self.target.clone(),
            degree: self.degree + f.degree,
            cols,
        })
    }

    fn check_same_shape(&self, other: &GradedMap) -> Result<()> {
        if !same_module(&self.source, &other.source) || !same_module(&self.target, &other.target) {
            return arg("maps have different source or target");
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return arg(format!(
                "cannot add maps of degrees {} and {}",
                self.degree, other.degree
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add_scaled(&-Q::one(), other)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &GradedMap) -> Result<GradedMap> {
        self.check_same_shape(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut v = a.clone();
                add_scaled(&mut v, c, b);
                v
            })
            .collect();
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            cols,
        })
    }

    pub fn scale(&self, c: &Q) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols: self.cols.iter().map(|v| scaled(v, c)).collect(),
        }
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&-Q::one())
    }

    /// Same matrix viewed between other modules of matching dimensions.
    pub fn relabel(
        &self,
        source: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        degree: i32,
    ) -> Result<GradedMap> {
        Self::from_columns(source, target, degree, self.cols.clone())
    }

    /// Restriction to the source basis elements accepted by `keep`.
    pub fn restrict_columns(&self, keep: impl Fn(usize) -> bool) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols: self
                .cols
                .iter()
                .enumerate()
                .map(|(j, c)| if keep(j) { c.clone() } else { Vector::new() })
                .collect(),
        }
    }

    /// First source basis element on which `self` and `other` differ.
    pub fn first_difference(&self, other: &GradedMap) -> Option<usize> {
        (0..self.cols.len()).find(|&j| self.cols[j] != other.cols[j])
    }

    /// Largest `target weight - source weight` over nonzero entries;
    /// `i64::MIN` for the zero map.
    pub fn max_weight_increase(&self) -> i64 {
        let mut best = i64::MIN;
        for (j, col) in self.cols.iter().enumerate() {
            for &i in col.keys() {
                let d = self.target.weight(i) as i64 - self.source.weight(j) as i64;
                best = best.max(d);
            }
        }
        best
    }
}
