//! Tensor products, suspension and the Hom-complex differential.
//!
//! Sign convention: `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`.

use std::sync::Arc;

use super::map::{add_entry, GradedMap, Vector};
use super::module::{BasisElement, GradedModule};
use super::rational::sign_q;
use crate::error::{arg, Result};

/// `A ⊗ B` with basis `a_i⊗b_j` at index `i * dim B + j`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub left: Arc<GradedModule>,
    pub right: Arc<GradedModule>,
    pub module: Arc<GradedModule>,
}

impl TensorModule {
    pub fn new(left: &Arc<GradedModule>, right: &Arc<GradedModule>) -> Self {
        let mut basis = Vec::with_capacity(left.dim() * right.dim());
        for a in left.basis() {
            for b in right.basis() {
                basis.push(BasisElement {
                    label: format!("{}⊗{}", a.label, b.label),
                    degree: a.degree + b.degree,
                    weight: a.weight + b.weight,
                });
            }
        }
        let name = format!("{}⊗{}", left.name(), right.name());
        TensorModule {
            left: left.clone(),
            right: right.clone(),
            module: GradedModule::new(name, basis)
                .expect("tensor labels are unique")
                .shared(),
        }
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.dim() + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right.dim(), k % self.right.dim())
    }

    /// `x ⊗ y` for sparse vectors.
    pub fn tensor_vectors(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, a) in x {
            for (&j, b) in y {
                add_entry(&mut out, self.index(i, j), &(a * b));
            }
        }
        out
    }
}

/// `f ⊗ g : A⊗B -> A'⊗B'` with the Koszul sign on `(g, x)`.
pub fn tensor(f: &GradedMap, g: &GradedMap, src: &TensorModule, tgt: &TensorModule) -> Result<GradedMap> {
    if !same(&src.left, f.source()) || !same(&src.right, g.source()) {
        return arg("tensor: source factors do not match the maps");
    }
    if !same(&tgt.left, f.target()) || !same(&tgt.right, g.target()) {
        return arg("tensor: target factors do not match the maps");
    }
    let gd = g.degree();
    GradedMap::from_fn(&src.module, &tgt.module, f.degree() + gd, |k| {
        let (i, j) = src.split(k);
        let sign = sign_q((gd * src.left.degree(i)) % 2 != 0);
        let mut v = tgt.tensor_vectors(f.column(i), g.column(j));
        for c in v.values_mut() {
            *c *= &sign;
        }
        Ok(v)
    })
}

fn same(a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> bool {
    super::module::same_module(a, b)
}

/// `Dφ = d_tgt φ - (-1)^{|φ|} φ d_src`.
pub fn hom_differential(phi: &GradedMap, d_src: &GradedMap, d_tgt: &GradedMap) -> Result<GradedMap> {
    if d_src.degree() != -1 && !d_src.is_zero() || d_tgt.degree() != -1 && !d_tgt.is_zero() {
        return arg("hom differential: differentials must have degree -1");
    }
    let left = d_tgt.compose(phi)?;
    let right = phi.compose(d_src)?;
    let left = if left.is_zero() {
        GradedMap::zero(phi.source(), phi.target(), phi.degree() - 1)
    } else {
        left
    };
    left.add_scaled(&-sign_q(phi.degree() % 2 != 0), &right)
}

/// `sV` with labels prefixed by `s` and degrees raised by one.
pub fn suspend(v: &GradedModule) -> GradedModule {
    v.shifted(&format!("s{}", v.name()), 1, "s")
}

/// `s⁻¹V`; inverse of [`suspend`] on modules produced by it.
pub fn desuspend(v: &GradedModule) -> GradedModule {
    let basis = v
        .basis()
        .iter()
        .map(|b| BasisElement {
            label: b.label.strip_prefix('s').map(str::to_string).unwrap_or_else(|| format!("s⁻¹{}", b.label)),
            degree: b.degree - 1,
            weight: b.weight,
        })
        .collect();
    let name = v
        .name()
        .strip_prefix('s')
        .map(str::to_string)
        .unwrap_or_else(|| format!("s⁻¹{}", v.name()));
    GradedModule::new(name, basis).expect("desuspension keeps labels distinct")
}

/// Conjugate `f` by suspension: `sx ↦ (-1)^{|f|} s f(x)`.
///
/// For a differential this gives `d_{sV}(sx) = -s(dx)`.
pub fn suspend_map(f: &GradedMap, s_src: &Arc<GradedModule>, s_tgt: &Arc<GradedModule>) -> Result<GradedMap> {
    f.relabel(s_src, s_tgt, f.degree())
        .map(|m| m.scale(&sign_q(f.degree() % 2 != 0)))
}

/// Inverse of [`suspend_map`].
pub fn desuspend_map(f: &GradedMap, src: &Arc<GradedModule>, tgt: &Arc<GradedModule>) -> Result<GradedMap> {
    suspend_map(f, src, tgt)
}
