//! Transfer of an sh-Lie structure through the loop Lie algebra of its
//! coalgebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::complexes::{compose_contractions, solve_contraction, ChainComplex, Contraction, Perturbation};
use crate::error::{Error, Result};
use crate::exactalg::map::{add_scaled, scaled, unit_vector, GradedMap, Vector};
use crate::exactalg::rational::{sign_q, Q};
use crate::loopalg::LoopLie;
use crate::symcoalg::{adjoint, Coderivation, ShStructure, SymCoalgebra};

use super::lie::{lie_transfer, lie_transfer_contraction, LieContraction, LieTransfer};

/// Everything produced by [`sh_transfer`].
#[derive(Debug)]
pub struct ShTransfer {
    /// The input structure `S^c_∂[sg]`, truncated at the requested weight.
    pub input: ShStructure,
    /// `ℒ = ℒS^c_∂[sg]`.
    pub loop_lie: Arc<LoopLie>,
    /// The differential of `ℒ` built from `d⁰` alone, and the perturbation
    /// `∂_ℒ` induced by `∂`.
    pub d_unperturbed: GradedMap,
    pub partial: GradedMap,
    /// `g ⇄ ℒS^c[sg]`, its perturbation `g ⇄ ℒ`, and the composite `M ⇄ ℒ`.
    /// For a binary `∂` the retraction of `g ⇄ ℒ` is the Lie morphism
    /// `ℒ → g`.
    pub to_loop: Contraction,
    pub to_loop_perturbed: Contraction,
    pub composite: Contraction,
    pub transfer: LieTransfer,
    /// `S^c_𝒟[sM] ⇄ C[ℒ]`.
    pub cce: LieContraction,
}

impl ShTransfer {
    /// The transferred sh-structure on `S^c[sM]`.
    pub fn structure(&self) -> &ShStructure {
        &self.transfer.structure
    }

    /// `t_ℒ: S^c_∂[sg] → ℒ`.
    pub fn loop_cochain(&self) -> GradedMap {
        self.loop_lie.universal_cochain()
    }
}

/// Re-truncates an sh-structure at a smaller weight.
pub fn truncate(sh: &ShStructure, max_weight: u32) -> Result<ShStructure> {
    let c = sh.coalgebra();
    if max_weight == c.max_weight() {
        return Ok(sh.clone());
    }
    if max_weight > c.max_weight() {
        return Err(Error::Argument(format!(
            "structure is truncated at weight {}, below the requested {max_weight}",
            c.max_weight()
        )));
    }
    let small = SymCoalgebra::new(c.module().name(), c.generators(), max_weight)?.shared();
    let triples: Vec<_> = sh
        .partial()
        .corestriction()
        .triples()
        .into_iter()
        .filter(|(w, _, _)| small.module().index_of(w).is_some())
        .collect();
    ShStructure::new(sh.base().clone(), Coderivation::from_triples(&small, &triples)?)
}

/// sh-Lie transfer: given a contraction `M ⇄ g` and an sh-Lie structure `∂`
/// on `g`, an sh-Lie structure `𝒟` on `M` with an sh-equivalence, built by
/// transferring the loop Lie algebra `ℒS^c_∂[sg]` to `M`.
pub fn sh_transfer(c: &Contraction, sh: &ShStructure, max_weight: u32) -> Result<ShTransfer> {
    if c.big() != sh.base() {
        return Err(Error::Argument(
            "the contraction's big complex is not the complex of the sh-structure".into(),
        ));
    }
    let input = truncate(sh, max_weight)?;
    let coalg = input.coalgebra().clone();
    let loop_lie = Arc::new(LoopLie::over(&coalg, input.differential())?);
    let lm = loop_lie.module().clone();
    let partial = loop_lie.induced_derivation(input.partial().map())?;
    let d_unperturbed = loop_lie.lie().complex().d().sub(&partial)?;
    let loop0 = ChainComplex::new(d_unperturbed.clone())
        .map_err(|e| Error::Internal(format!("unperturbed loop differential: {e}")))?;

    let g = c.big();
    let gm = g.module();
    let letter_of = |x: usize| -> usize {
        let w = coalg.generator_word(x).expect("generator word");
        loop_lie.letter(w).expect("letter")
    };
    let nabla_cols: Vec<Vector> = (0..gm.dim())
        .map(|x| [(letter_of(x), Q::one())].into_iter().collect())
        .collect();
    let nabla = GradedMap::from_columns(gm, &lm, 0, nabla_cols)?;
    let mut pi_cols = vec![Vector::new(); lm.dim()];
    for x in 0..gm.dim() {
        pi_cols[letter_of(x)].insert(x, Q::one());
    }
    let pi = GradedMap::from_columns(&lm, gm, 0, pi_cols)?;
    let weight = |j: usize| lm.weight(j) as u64;
    let to_loop = solve_contraction(g.clone(), loop0, nabla, pi, Some(&weight))
        .map_err(|e| Error::Internal(format!("g ⇄ ℒS^c[sg]: {e}")))?;

    let p = Perturbation::new(to_loop.big(), partial.clone())?;
    let (mut to_loop_perturbed, delta_g) = to_loop.perturb(&p)?;
    if !delta_g.is_zero() {
        return Err(Error::Internal("perturbation reached the differential of g".into()));
    }
    if input.partial().arity() <= 2 {
        to_loop_perturbed = with_lie_retraction(&to_loop_perturbed, &input, &loop_lie)?;
    }
    let composite = compose_contractions(c, &to_loop_perturbed)?;
    let transfer = lie_transfer(&composite, loop_lie.lie(), max_weight)?;
    let cce = lie_transfer_contraction(&transfer, &composite, loop_lie.lie())?;
    Ok(ShTransfer {
        input,
        loop_lie,
        d_unperturbed,
        partial,
        to_loop,
        to_loop_perturbed,
        composite,
        transfer,
        cce,
    })
}

/// The bracket on `g` encoded by a binary coderivation:
/// `λ(sx·sy) = (-1)^{|x|+1} s[x,y]`.
fn binary_bracket(input: &ShStructure, i: usize, j: usize) -> Vector {
    let coalg = input.coalgebra();
    let gens = coalg.generators();
    let (a, b) = (i.min(j), i.max(j));
    let Some(w) = coalg.index_of_word(&[a, b]) else {
        return Vector::new();
    };
    let da = gens.degree(a) - 1;
    let db = gens.degree(b) - 1;
    let mut s = sign_q(da % 2 == 0);
    if i > j {
        s = -s * sign_q((da * db) % 2 != 0);
    }
    scaled(input.partial().corestriction().column(w), &s)
}

/// For a strict input the retraction `ℒ → g` can be taken to be the Lie
/// algebra morphism extending `s⁻¹(sx) ↦ x`. Any two retractions of the
/// same `∇` differ by a boundary `D((φ - π)h)`, so replacing `π` by `φ`
/// and `h` by `h - ∇(φ - π)h` (then repairing the side conditions) keeps a
/// contraction. With this retraction the sh route reproduces the strict
/// transfer exactly.
fn with_lie_retraction(c: &Contraction, input: &ShStructure, loop_lie: &LoopLie) -> Result<Contraction> {
    let coalg = input.coalgebra();
    let gm = c.small().module();
    let free = loop_lie.free();
    let cobar = loop_lie.cobar();
    let mut image_of_letter: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..gm.dim() {
        let w = coalg.generator_word(x).expect("generator word");
        if let Some(l) = cobar.letter(w) {
            image_of_letter.insert(l, x);
        }
    }
    let letter = |l: usize| -> Vector {
        image_of_letter.get(&l).map(|&x| unit_vector(x)).unwrap_or_default()
    };
    let bracket = |a: &Vector, b: &Vector| -> Result<Vector> {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                add_scaled(&mut out, &(x * y), &binary_bracket(input, i, j));
            }
        }
        Ok(out)
    };
    let phi = GradedMap::from_fn(c.big().module(), gm, 0, |i| free.evaluate(i, &letter, &bracket))?;
    let k = phi.sub(c.pi())?.compose(c.h())?;
    let h = c.h().sub(&c.nabla().compose(&k)?)?;
    Contraction::repair_side_conditions(c.small().clone(), c.big().clone(), c.nabla().clone(), phi, h)
        .map_err(|e| Error::Internal(format!("Lie retraction of g ⇄ ℒ: {e}")))
}

/// Result of [`verify_sh_equivalence`]. Failures name the first offending
/// basis element.
#[derive(Clone, Debug, Default)]
pub struct ShEquivalenceReport {
    pub failures: Vec<String>,
    /// Homology ranks per degree of `S^c_∂[sg]`, `S^c_𝒟[sM]` and `C[ℒ]`.
    pub homology: Vec<(String, BTreeMap<i32, usize>)>,
}

impl ShEquivalenceReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `τ̄: S^c_𝒟[sM] → C[ℒ]` and `t̄_ℒ: S^c_∂[sg] → C[ℒ]` are
/// coalgebra morphisms and chain maps and that `Πτ̄ = Id`.
pub fn verify_sh_equivalence(t: &ShTransfer) -> Result<ShEquivalenceReport> {
    let mut r = ShEquivalenceReport::default();
    let cl = t.cce.cce.coalgebra().clone();
    let d_cl = t.cce.cce.differential();
    let sm = t.transfer.coalgebra.clone();
    let d_sm = t.transfer.structure.differential();
    let sg = t.input.coalgebra().clone();
    let d_sg = t.input.differential();
    let t_bar = adjoint(&t.loop_cochain(), &sg, &cl)?;
    let maps = [
        ("τ̄", &t.cce.tau_bar, &sm, d_sm),
        ("t̄_ℒ", &t_bar, &sg, d_sg),
    ];
    for (name, f, src, d_src) in maps {
        if let Some(i) = src.coalgebra_morphism_failure(f, &cl) {
            r.failures
                .push(format!("{name} is not a coalgebra morphism at {}", src.module().label(i)));
        }
        let lhs = d_cl.compose(f)?;
        let rhs = f.compose(d_src)?;
        if let Some(i) = lhs.first_difference(&rhs) {
            r.failures.push(format!("{name} is not a chain map at {}", src.module().label(i)));
        }
    }
    let id = GradedMap::identity(sm.module());
    if let Some(i) = t.cce.contraction.pi().compose(&t.cce.tau_bar)?.first_difference(&id) {
        r.failures.push(format!("Πτ̄ ≠ Id at {}", sm.module().label(i)));
    }
    r.homology = vec![
        ("S^c_∂[sg]".into(), t.input.complex().homology_ranks()),
        ("S^c_𝒟[sM]".into(), t.transfer.structure.complex().homology_ranks()),
        ("C[ℒ]".into(), t.cce.cce.complex().homology_ranks()),
    ];
    Ok(r)
}
