//! Transfer of a dg Lie structure across a contraction, and the induced
//! contraction of CCE coalgebras.

use std::sync::Arc;

use num_traits::One;

use crate::complexes::{normalize_degree, ChainComplex, Contraction, Perturbation};
use crate::error::{Error, Result};
use crate::exactalg::map::{add_scaled, GradedMap, Vector};
use crate::exactalg::module::GradedModule;
use crate::exactalg::rational::{factorial, qf, sign_q, Q};
use crate::exactalg::sign::{koszul_odd_unchecked, Permutation};
use crate::exactalg::tensor::{suspend, suspend_map};
use crate::freelie::DgLie;
use crate::symcoalg::{
    adjoint, check_lie_twisting, BilinearTarget, Coderivation, ShStructure, SymCoalgebra,
};

/// Output of [`lie_transfer`]: the sh-structure `𝒟` on `S^c[sM]` and the
/// twisting cochain `τ: S^c_𝒟[sM] → g`.
#[derive(Clone, Debug)]
pub struct LieTransfer {
    pub coalgebra: Arc<SymCoalgebra>,
    pub structure: ShStructure,
    pub tau: GradedMap,
    /// `τ_M: S^c[sM] → M`, `sx ↦ x`.
    pub tau_m: GradedMap,
}

/// `S^c[sM]` for the small complex of a contraction.
pub fn coalgebra_over(m: &Arc<GradedModule>, max_weight: u32, name: &str) -> Result<Arc<SymCoalgebra>> {
    let sm = Arc::new(suspend(m));
    Ok(SymCoalgebra::new(name, &sm, max_weight)?.shared())
}

/// `sx ↦ x` on one-letter words, zero elsewhere.
pub fn desuspended_projection(c: &SymCoalgebra, base: &Arc<GradedModule>) -> Result<GradedMap> {
    let cols = (0..c.dim())
        .map(|i| {
            let mut v = Vector::new();
            if c.word_len(i) == 1 {
                v.insert(c.word(i)[0], Q::one());
            }
            v
        })
        .collect();
    GradedMap::from_columns(c.module(), base, -1, cols)
}

/// `½[a,b](w)` on one word, over nonempty splittings only.
fn half_bracket_column(t: &[Vector], c: &SymCoalgebra, lie: &dyn BilinearTarget, i: usize) -> Result<Vector> {
    let mut out = Vector::new();
    for (s, parts) in c.split(i, 2, false) {
        let (x, y) = (&t[parts[0]], &t[parts[1]]);
        if x.is_empty() || y.is_empty() {
            continue;
        }
        // τ has degree -1: sign (-1)^{|w_S|}
        let sign = s * sign_q(c.module().degree(parts[0]) % 2 != 0) * qf(1, 2);
        add_scaled(&mut out, &sign, &lie.product_vectors(x, y)?);
    }
    Ok(out)
}

/// Lie algebra perturbation lemma. With `R = ½[τ,τ]`, computed one word
/// length at a time, `τ = ∇τ_M + hR` and the corestriction of `𝒟` is `sπR`.
pub fn lie_transfer(c: &Contraction, g: &DgLie, max_weight: u32) -> Result<LieTransfer> {
    if max_weight < 2 {
        return Err(Error::Argument("transfer needs max_weight ≥ 2".into()));
    }
    if c.big() != g.complex() {
        return Err(Error::Argument(
            "the contraction's big complex is not the Lie algebra's complex".into(),
        ));
    }
    let m = c.small().module().clone();
    let gm = g.complex().module().clone();
    let coalg = coalgebra_over(&m, max_weight, "S(sM)")?;
    let tau_m = desuspended_projection(&coalg, &m)?;
    let n = coalg.dim();
    let mut tau: Vec<Vector> = vec![Vector::new(); n];
    let mut lambda: Vec<Vector> = vec![Vector::new(); n];
    for i in coalg.words_of_length(1) {
        tau[i] = c.nabla().apply(tau_m.column(i));
    }
    for k in 2..=max_weight as usize {
        let ids: Vec<usize> = coalg.words_of_length(k).collect();
        let cols: Vec<(usize, Vector, Vector)> = {
            use rayon::prelude::*;
            ids.par_iter()
                .map(|&i| {
                    let r = half_bracket_column(&tau, &coalg, g, i)?;
                    Ok((i, c.h().apply(&r), c.pi().apply(&r)))
                })
                .collect::<Result<Vec<_>>>()?
        };
        for (i, t, l) in cols {
            tau[i] = t;
            lambda[i] = l;
        }
    }
    let tau = GradedMap::from_columns(coalg.module(), &gm, -1, tau)?;
    let lambda = GradedMap::from_columns(coalg.module(), coalg.generators(), -1, lambda)?;
    let partial = Coderivation::from_corestriction(&coalg, lambda)?;
    let structure = ShStructure::new(c.small().clone(), partial)
        .map_err(|e| Error::Internal(format!("transferred structure: {e}")))?;
    let verdict = check_lie_twisting(&tau, &coalg, structure.differential(), g)?;
    if let Some((w, len)) = verdict.failure {
        return Err(Error::Internal(format!(
            "transferred twisting cochain fails the master equation on {w} (length {len})"
        )));
    }
    Ok(LieTransfer {
        coalgebra: coalg,
        structure,
        tau,
        tau_m,
    })
}

/// The contraction `S^c[sM] ⇄ S^c[sg]` induced by `M ⇄ g`: `S(s∇)`,
/// `S(sπ)` and the symmetrized tensor-trick homotopy, with side conditions
/// repaired.
pub fn symmetric_contraction(c: &Contraction, small: &Arc<SymCoalgebra>, big: &Arc<SymCoalgebra>) -> Result<Contraction> {
    let (sm, sg) = (small.generators(), big.generators());
    let snabla = suspend_map(c.nabla(), sm, sg)?;
    let spi = suspend_map(c.pi(), sg, sm)?;
    let sh = suspend_map(c.h(), sg, sg)?;
    let sp = snabla.compose(&spi)?;
    let nabla = small.induced_morphism(&snabla, big)?;
    let pi = big.induced_morphism(&spi, small)?;
    let gens = big.generators();
    let h = GradedMap::from_fn(big.module(), big.module(), 1, |i| {
        let w = big.word(i);
        let k = w.len();
        let mut out = Vector::new();
        if k == 0 {
            return Ok(out);
        }
        let degs: Vec<i32> = w.iter().map(|&x| gens.degree(x)).collect();
        let inv = Q::one() / factorial(k);
        for p in Permutation::all(k) {
            let eps = sign_q(koszul_odd_unchecked(p.images(), &degs));
            let ys: Vec<usize> = p.images().iter().map(|&j| w[j]).collect();
            let mut passed = 0;
            for pos in 0..k {
                let sign = &eps * sign_q(passed % 2 != 0) * &inv;
                // (∇π)y_1 ⋯ (∇π)y_{pos-1} · h(y_pos) · y_{pos+1} ⋯ y_k
                let mut acc = Vector::new();
                acc.insert(big.unit(), Q::one());
                for (j, &y) in ys.iter().enumerate() {
                    let img: &Vector = if j < pos {
                        sp.column(y)
                    } else if j == pos {
                        sh.column(y)
                    } else {
                        &Vector::new()
                    };
                    let letter: Vector = if j > pos {
                        [(big.generator_word(y).expect("generator"), Q::one())].into_iter().collect()
                    } else {
                        img.iter()
                            .map(|(&g, x)| (big.generator_word(g).expect("generator"), x.clone()))
                            .collect()
                    };
                    if letter.is_empty() {
                        acc.clear();
                        break;
                    }
                    acc = big.product(&acc, &letter)?;
                }
                add_scaled(&mut out, &sign, &acc);
                passed += degs[p.images()[pos]];
            }
        }
        Ok(out)
    })?;
    let d_small = small.induced_differential(&suspend_map(c.small().d(), sm, sm)?)?;
    let d_big = big.induced_differential(&suspend_map(c.big().d(), sg, sg)?)?;
    let small_cx = ChainComplex::new(d_small.map().clone())?;
    let big_cx = ChainComplex::new(d_big.map().clone())?;
    Contraction::repair_side_conditions(small_cx, big_cx, nabla, pi, h)
        .map_err(|e| Error::Internal(format!("symmetric contraction: {e}")))
}

/// The contraction of CCE coalgebras built from a [`LieTransfer`].
#[derive(Clone, Debug)]
pub struct LieContraction {
    /// `C[g] = S^c[sg]` with its CCE structure.
    pub cce: ShStructure,
    /// `S^c[sM] ⇄ S^c[sg]` before perturbation.
    pub symmetric: Contraction,
    /// After perturbing by the CCE coderivation: `S^c_δ[sM] ⇄ C[g]`.
    pub perturbed: Contraction,
    /// The induced perturbation `δ` of `S^c[sM]`.
    pub delta: GradedMap,
    /// `τ̄: S^c_𝒟[sM] → C[g]`.
    pub tau_bar: GradedMap,
    /// `Φ = Π̃τ̄` and its inverse.
    pub phi: GradedMap,
    pub phi_inverse: GradedMap,
    /// `S^c_𝒟[sM] ⇄ C[g]` with `∇ = τ̄`, `π = Φ⁻¹Π̃`, `h = H̃ - H̃τ̄Π`.
    pub contraction: Contraction,
}

/// Inverse of a map of the form `Id + N` with `N` strictly lowering the
/// module weight, by the finite Neumann series.
pub fn unipotent_inverse(phi: &GradedMap) -> Result<GradedMap> {
    let m = phi.source();
    let id = GradedMap::identity(m);
    let nil = id.sub(phi)?;
    if nil.max_weight_increase() >= 0 {
        return Err(Error::Internal("Φ - Id does not lower the filtration".into()));
    }
    let mut inv = id.clone();
    let mut term = id;
    for _ in 0..=m.max_weight() {
        term = nil.compose(&term)?;
        if term.is_zero() {
            return Ok(inv);
        }
        inv = inv.add(&term)?;
    }
    Err(Error::Internal("Neumann series for Φ⁻¹ does not terminate".into()))
}

pub fn lie_transfer_contraction(lt: &LieTransfer, c: &Contraction, g: &DgLie) -> Result<LieContraction> {
    let gm = g.complex().module();
    let sg = Arc::new(suspend(gm));
    let cg = SymCoalgebra::new("C(g)", &sg, lt.coalgebra.max_weight())?.shared();
    let (cce, _) = g.cce(&cg)?;
    let symmetric = symmetric_contraction(c, &lt.coalgebra, &cg)?;
    let p = Perturbation::new(symmetric.big(), cce.partial().map().clone())?;
    let (perturbed, delta) = symmetric.perturb(&p)?;
    let tau_bar = adjoint(&lt.tau, &lt.coalgebra, &cg)?;
    let phi = perturbed.pi().compose(&tau_bar)?;
    let phi_inverse = unipotent_inverse(&phi)?;
    let pi = phi_inverse.compose(perturbed.pi())?;
    let h = perturbed
        .h()
        .sub(&perturbed.h().compose(&tau_bar)?.compose(&pi)?)?;
    let contraction = Contraction::new_unchecked(
        lt.structure.complex(),
        cce.complex(),
        tau_bar.clone(),
        pi,
        normalize_degree(h, 1),
    )?;
    contraction.expect_valid("CCE contraction")?;
    Ok(LieContraction {
        cce,
        symmetric,
        perturbed,
        delta,
        tau_bar,
        phi,
        phi_inverse,
        contraction,
    })
}

/// Checks `πτ = τ_M` and `hτ = 0`; returns the names of failing identities.
pub fn side_constraints(lt: &LieTransfer, c: &Contraction) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if c.pi().compose(&lt.tau)? != lt.tau_m {
        out.push("πτ = τ_M".to_string());
    }
    if !c.h().compose(&lt.tau)?.is_zero() {
        out.push("hτ = 0".to_string());
    }
    Ok(out)
}
