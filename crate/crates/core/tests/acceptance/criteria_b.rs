use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shlie::canonical::{self, LieExample};
use shlie::complexes::{ChainComplex, Contraction};
use shlie::exactalg::map::GradedMap;
use shlie::exactalg::module::GradedModule;
use shlie::exactalg::rational::q;
use shlie::exactalg::tensor::suspend;
use shlie::freelie::{poincare_symmetrization, DgLie, FreeLie, PoincareReport, TensorAlgebra};
use shlie::loopalg::{cobar_iso_check, LoopLie};
use shlie::symcoalg::{bracket_corestriction, ShStructure, SymCoalgebra};
use shlie::transfer::{
    homotopy_recursion, lie_transfer, lie_transfer_contraction, sh_transfer, theta_recursion,
    theta_restriction_failure, verify_sh_equivalence, ComplementTwo,
};

use super::gen::random_heisenberg;
use super::Outcome;

fn sym(pairs: &[(&str, i32)], n: u32) -> Arc<SymCoalgebra> {
    let v = GradedModule::from_pairs("V", pairs).unwrap();
    SymCoalgebra::new("S", &Arc::new(suspend(&v)), n).unwrap().shared()
}

fn cce(ex: &LieExample, n: u32) -> ShStructure {
    let sg = Arc::new(suspend(ex.lie.complex().module()));
    let c = SymCoalgebra::new("S(sg)", &sg, n).unwrap().shared();
    ex.lie.cce(&c).unwrap().0
}

/// `∂_Δ` and the full cobar differential preserve the Lie span of the
/// letters, and `U[ℒC] → ΩC` is bijective in every bidegree.
pub fn loop_lie_closure() -> Outcome {
    let mut elements = 0;
    let mut bidegrees = 0;
    let mut bases: Vec<(String, Arc<SymCoalgebra>, GradedMap)> = Vec::new();
    for degs in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 3)] {
        let c = sym(&[("x", degs.0), ("y", degs.1)], 3);
        let d = GradedMap::zero(c.module(), c.module(), -1);
        bases.push((format!("rank 2 in degrees {degs:?}"), c, d));
    }
    // a base with a nonzero differential: the CCE coalgebra of a rank-2 Lie
    // algebra with [x,x] = y
    let g = GradedModule::from_pairs("g", &[("x", 0), ("y", 0)]).unwrap().shared();
    let cx = ChainComplex::zero_differential(&g);
    let ex = LieExample {
        name: "rank2",
        lie: DgLie::new(cx.clone(), &[("x".into(), "y".into(), "y".into(), q(1))]).unwrap(),
        contraction: Contraction::identity(&cx),
    };
    let sh = cce(&ex, 3);
    bases.push(("CCE of [x,y] = y".into(), sh.coalgebra().clone(), sh.differential().clone()));

    for (name, c, d) in &bases {
        let l = LoopLie::over(c, d).map_err(|e| format!("{name}: {e}"))?;
        let free = l.free();
        let cobar = l.cobar();
        for i in 0..free.dim() {
            let x = free.expansion(i);
            for (what, f) in [("∂_Δ", cobar.delta()), ("d_Ω", cobar.differential())] {
                if free.try_express(&f.apply(x)).is_none() {
                    return Err(format!("{name}: {what} leaves the Lie span at {}", free.module().label(i)));
                }
            }
            elements += 1;
        }
        let r = cobar_iso_check(&l).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(format!("{name}: {r:?}"));
        }
        bidegrees += r.ranks.len();
    }
    Ok(format!(
        "{} bases, {elements} Lie basis elements closed, {bidegrees} bidegrees rank-equal",
        bases.len()
    ))
}

/// `τ̄` and `t̄_ℒ` commute with `Δ` and with the differentials.
pub fn coalgebra_morphisms() -> Outcome {
    let mut maps = 0;
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).map_err(|e| e.to_string())?;
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).map_err(|e| e.to_string())?;
        let target = lc.cce.coalgebra();
        if let Some(i) = lt.coalgebra.coalgebra_morphism_failure(&lc.tau_bar, target) {
            return Err(format!("{}: τ̄ and Δ differ at {}", ex.name, lt.coalgebra.module().label(i)));
        }
        let lhs = lc.cce.differential().compose(&lc.tau_bar).unwrap();
        let rhs = lc.tau_bar.compose(lt.structure.differential()).unwrap();
        if let Some(i) = lhs.first_difference(&rhs) {
            return Err(format!("{}: τ̄ is not a chain map at {}", ex.name, lt.coalgebra.module().label(i)));
        }
        maps += 1;
        let t = sh_transfer(&ex.contraction, &cce(&ex, 4), 4).map_err(|e| e.to_string())?;
        let r = verify_sh_equivalence(&t).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(format!("{} (sh): {}", ex.name, r.failures.join("; ")));
        }
        maps += 2;
    }
    let (c, sh) = canonical::sh_triple(4).unwrap();
    let t = sh_transfer(&c, &sh, 4).map_err(|e| e.to_string())?;
    let r = verify_sh_equivalence(&t).map_err(|e| e.to_string())?;
    if !r.ok() {
        return Err(format!("sh_triple: {}", r.failures.join("; ")));
    }
    Ok(format!("{} coalgebra morphisms checked at N = 4", maps + 2))
}

/// `ϑτ̄ = t_ℒ`, and the homotopy `h^C` satisfies its defining identity and
/// restricts to `h^B`.
pub fn complements() -> Outcome {
    let mut n = 0;
    for ex in [canonical::heisenberg().unwrap(), canonical::heisenberg_acyclic().unwrap()] {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).map_err(|e| e.to_string())?;
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).map_err(|e| e.to_string())?;
        let th = theta_recursion(&lt, &lc, &ex.lie).map_err(|e| e.to_string())?;
        if let Some(w) = theta_restriction_failure(&th, &lt, &lc).map_err(|e| e.to_string())? {
            return Err(format!("{}: ϑτ̄ ≠ t_ℒ at {w}", ex.name));
        }
        let ct = ComplementTwo::new(&lt, &lc, &th).map_err(|e| e.to_string())?;
        let r = homotopy_recursion(&ct.problem(&lt, &lc)).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(format!("{}: {:?} / {:?}", ex.name, r.failure, r.restriction_failure));
        }
        n += 1;
    }
    Ok(format!("{n} connected examples at N = 4"))
}

/// Strict input through the sh pipeline reproduces the strict transfer,
/// and identity contractions transfer nothing beyond the bracket.
pub fn degenerate_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut examples = canonical::all().unwrap();
    examples.push(random_heisenberg(&mut rng));
    for ex in &examples {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).map_err(|e| e.to_string())?;
        let t = sh_transfer(&ex.contraction, &cce(ex, 4), 4).map_err(|e| e.to_string())?;
        for k in 1..=4 {
            let strict = lt.structure.partial().component(k).triples();
            let sh = t.structure().partial().component(k).triples();
            if strict != sh {
                return Err(format!("{}: arity {k} differs", ex.name));
            }
        }
        let id = Contraction::identity(ex.lie.complex());
        let lt = lie_transfer(&id, &ex.lie, 4).map_err(|e| e.to_string())?;
        let partial = lt.structure.partial();
        if partial.arity() > 2 {
            return Err(format!("{}: identity contraction gives arity {}", ex.name, partial.arity()));
        }
        let expected = bracket_corestriction(&lt.coalgebra, &|i, j| ex.lie.bracket(i, j)).unwrap();
        if partial.corestriction().triples() != expected.triples() {
            return Err(format!("{}: identity contraction changes the bracket", ex.name));
        }
    }
    Ok(format!("{} examples, arities 1 to 4", examples.len()))
}

/// `e: S^c[L] → T` is a coalgebra map and bijective per bidegree.
pub fn poincare() -> Outcome {
    let mut checked = 0;
    for degs in [(0, 0), (1, 1), (1, 2), (0, 1)] {
        let y = GradedModule::from_pairs("Y", &[("a", degs.0), ("b", degs.1)]).unwrap().shared();
        let t = TensorAlgebra::new("T", &y, 3).unwrap().shared();
        let free = FreeLie::new("L", &t).unwrap();
        let s = SymCoalgebra::new("S", free.module(), 3).unwrap();
        let e = poincare_symmetrization(&free, &s).map_err(|e| e.to_string())?;
        let r = PoincareReport::check(&free, &s, &e, None).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(format!("degrees {degs:?}: {r:?}"));
        }
        checked += r.bidegrees_checked;
    }
    Ok(format!("4 rank-2 free Lie algebras, {checked} bidegrees"))
}
