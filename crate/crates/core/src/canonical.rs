//! Small worked examples used by the tests, the acceptance suite and the
//! CLI's bundled problem files.

use std::sync::Arc;

use crate::complexes::{ChainComplex, Contraction};
use crate::error::Result;
use crate::exactalg::map::GradedMap;
use crate::exactalg::module::GradedModule;
use crate::exactalg::rational::{q, Q};
use crate::exactalg::tensor::suspend;
use crate::freelie::DgLie;
use crate::symcoalg::{Coderivation, ShStructure, SymCoalgebra};

/// A dg Lie algebra together with a contraction onto a smaller complex.
#[derive(Clone, Debug)]
pub struct LieExample {
    pub name: &'static str,
    pub lie: DgLie,
    pub contraction: Contraction,
}

pub(crate) fn module(name: &str, pairs: &[(&str, i32)]) -> Arc<GradedModule> {
    GradedModule::from_pairs(name, pairs)
        .expect("example labels are distinct")
        .shared()
}

pub(crate) fn map(
    s: &Arc<GradedModule>,
    t: &Arc<GradedModule>,
    degree: i32,
    entries: &[(&str, &str, i64)],
) -> Result<GradedMap> {
    let triples: Vec<(String, String, Q)> = entries
        .iter()
        .map(|(a, b, c)| (a.to_string(), b.to_string(), q(*c)))
        .collect();
    GradedMap::from_triples(s, t, degree, &triples)
}

fn constants(entries: &[(&str, &str, &str, i64)]) -> Vec<(String, String, String, Q)> {
    entries
        .iter()
        .map(|(a, b, c, k)| (a.to_string(), b.to_string(), c.to_string(), q(*k)))
        .collect()
}

/// Inclusion/projection contraction of `big` onto the sub-basis `keep`,
/// with the homotopy given by `h` entries.
fn retract(
    big: &ChainComplex,
    keep: &[(&str, i32)],
    h: &[(&str, &str, i64)],
) -> Result<Contraction> {
    let m = module("M", keep);
    let n = big.module();
    let incl: Vec<(&str, &str, i64)> = keep.iter().map(|(l, _)| (*l, *l, 1)).collect();
    Contraction::new(
        ChainComplex::zero_differential(&m),
        big.clone(),
        map(&m, n, 0, &incl)?,
        map(n, &m, 0, &incl)?,
        map(n, n, 1, h)?,
    )
}

/// Abelian `g = {a, b} ⊕ (v → u)` retracting onto `{a, b}`.
pub fn abelian() -> Result<LieExample> {
    let g = module("g", &[("a", 1), ("b", 2), ("u", 1), ("v", 2)]);
    let c = ChainComplex::new(map(&g, &g, -1, &[("v", "u", 1)])?)?;
    let contraction = retract(&c, &[("a", 1), ("b", 2)], &[("u", "v", 1)])?;
    Ok(LieExample {
        name: "abelian",
        lie: DgLie::abelian(c),
        contraction,
    })
}

/// Heisenberg algebra `x, y` in degree 1, `z` in degree 2, `[x,y] = z`,
/// `d = 0`, with the identity contraction.
pub fn heisenberg() -> Result<LieExample> {
    let g = module("g", &[("x", 1), ("y", 1), ("z", 2)]);
    let c = ChainComplex::zero_differential(&g);
    let lie = DgLie::new(c.clone(), &constants(&[("x", "y", "z", 1)]))?;
    Ok(LieExample {
        name: "heisenberg",
        contraction: Contraction::identity(&c),
        lie,
    })
}

/// Heisenberg algebra enlarged by an acyclic pair `v → u` (degrees 3, 2)
/// and a class `w` in degree 4, with `[x,y] = z + u` and `[v,x] = w`.
/// Retracting onto `{x, y, z, w}` with `h(u) = v` produces a nonzero
/// ternary bracket `λ₃(sx·sx·sy) ∝ sw`.
pub fn heisenberg_acyclic() -> Result<LieExample> {
    let g = module(
        "g",
        &[("x", 1), ("y", 1), ("z", 2), ("u", 2), ("v", 3), ("w", 4)],
    );
    let c = ChainComplex::new(map(&g, &g, -1, &[("v", "u", 1)])?)?;
    let lie = DgLie::new(
        c.clone(),
        &constants(&[("x", "y", "z", 1), ("x", "y", "u", 1), ("v", "x", "w", 1)]),
    )?;
    let contraction = retract(
        &c,
        &[("x", 1), ("y", 1), ("z", 2), ("w", 4)],
        &[("u", "v", 1)],
    )?;
    Ok(LieExample {
        name: "heisenberg_acyclic",
        lie,
        contraction,
    })
}

pub fn all() -> Result<Vec<LieExample>> {
    Ok(vec![abelian()?, heisenberg()?, heisenberg_acyclic()?])
}

/// A genuinely sh structure on `g = {a, b, c}` (degrees 1, 2, 4, `d = 0`)
/// with an acyclic pair `dv = u` (degrees 5, 6) attached:
/// `λ₂(sa·sa) = sb`, `λ₃(sa·sa·sa) = sc`. Comes with the contraction onto
/// `{a, b, c}`.
pub fn sh_triple(max_weight: u32) -> Result<(Contraction, ShStructure)> {
    let g = module("g", &[("a", 1), ("b", 2), ("c", 4), ("u", 5), ("v", 6)]);
    let big = ChainComplex::new(map(&g, &g, -1, &[("v", "u", 1)])?)?;
    let c = retract(&big, &[("a", 1), ("b", 2), ("c", 4)], &[("u", "v", 1)])?;
    let sg = Arc::new(suspend(&g));
    let coalg = SymCoalgebra::new("S(sg)", &sg, max_weight)?.shared();
    let lambda: Vec<(String, String, Q)> = [("sa·sa", "sb"), ("sa·sa·sa", "sc")]
        .iter()
        .filter(|(w, _)| coalg.module().index_of(w).is_some())
        .map(|(w, x)| (w.to_string(), x.to_string(), q(1)))
        .collect();
    let sh = ShStructure::new(big, Coderivation::from_triples(&coalg, &lambda)?)?;
    Ok((c, sh))
}
