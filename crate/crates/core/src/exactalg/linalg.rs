//! Exact sparse row reduction.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::map::{add_scaled, scaled, unit_vector, GradedMap, Vector};
use super::rational::Q;

struct Row {
    pivot: usize,
    // normalized so the pivot coefficient is 1; only entries >= pivot
    vec: Vector,
    // the row as a combination of inserted vectors
    combo: Vector,
}

/// Incremental echelon form over inserted sparse vectors.
///
/// Vectors are numbered by insertion order (dependent ones included), and
/// [`Echelon::coordinates`] expresses a vector in terms of those numbers.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Pivot positions in insertion order of the independent vectors.
    pub fn pivot_positions(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    fn reduce(&self, v: &Vector) -> (Vector, Vector) {
        let mut res = v.clone();
        let mut combo = Vector::new();
        let mut cursor = 0usize;
        loop {
            let next = res
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            add_scaled(&mut res, &-c.clone(), &row.vec);
            add_scaled(&mut combo, &c, &row.combo);
            cursor = k + 1;
        }
        (res, combo)
    }

    /// Inserts `v`. Returns `None` when `v` was independent of the earlier
    /// vectors, otherwise its coordinates in terms of them.
    pub fn insert(&mut self, v: &Vector) -> Option<Vector> {
        let id = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v);
        let Some((&pivot, c)) = res.iter().next() else {
            return Some(combo);
        };
        let inv = Q::one() / c;
        let mut row_combo = unit_vector(id);
        add_scaled(&mut row_combo, &-Q::one(), &combo);
        let row = Row {
            pivot,
            vec: scaled(&res, &inv),
            combo: scaled(&row_combo, &inv),
        };
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        None
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients `c` with `v = Σ c_i v_i` over inserted vectors, if `v`
    /// lies in their span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        let (res, combo) = self.reduce(v);
        res.is_empty().then_some(combo)
    }

    /// Residual of `v` after reduction; zero exactly on the span.
    pub fn residual(&self, v: &Vector) -> Vector {
        self.reduce(v).0
    }
}

pub fn rank_of<'a>(vectors: impl IntoIterator<Item = &'a Vector>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Rank of `f` restricted to source degree `n`.
pub fn rank_in_degree(f: &GradedMap, n: i32) -> usize {
    rank_of(f.source().in_degree(n).iter().map(|&j| f.column(j)))
}

/// Basis of the kernel of `f` restricted to source degree `n`, as vectors
/// over the source basis.
pub fn kernel_in_degree(f: &GradedMap, n: i32) -> Vec<Vector> {
    let cols = f.source().in_degree(n);
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for &j in cols {
        if let Some(combo) = e.insert(f.column(j)) {
            let mut k = unit_vector(j);
            for (i, c) in combo {
                crate::exactalg::map::add_entry(&mut k, cols[i], &-c);
            }
            debug_assert!(f.apply(&k).is_empty());
            out.push(k);
        }
    }
    out
}

/// Dimension of homology `ker d_n / im d_{n+1}` for a differential of
/// degree -1.
pub fn homology_rank(d: &GradedMap, n: i32) -> usize {
    let dim = d.source().in_degree(n).len();
    dim - rank_in_degree(d, n) - rank_in_degree(d, n + 1)
}

pub fn is_zero_vector(v: &Vector) -> bool {
    v.values().all(|c| c.is_zero())
}
