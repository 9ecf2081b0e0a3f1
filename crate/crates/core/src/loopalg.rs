//! The cobar construction `ΩC`, the loop Lie algebra `ℒC` inside it, the
//! universal twisting cochain `t_ℒ`, and functoriality in `C`.
//!
//! Letters are `s⁻¹c` for basis words `c ≠ 1` of `C`, of degree `|c| - 1`
//! and weight the total weight of `c`. On letters
//! `d(s⁻¹c) = -s⁻¹(d_C c)` and `∂_Δ(s⁻¹c) = Σ (-1)^{|c'|} s⁻¹c'⊗s⁻¹c''`
//! over the reduced diagonal; both extend as derivations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::linalg::rank_of;
use crate::exactalg::map::{add_entry, GradedMap, Vector};
use crate::exactalg::module::{same_module, BasisElement, GradedModule};
use crate::exactalg::rational::{sign_q, Q};
use crate::freelie::{DgAlgebra, DgLie, FreeLie, TensorAlgebra};
use crate::symcoalg::SymCoalgebra;

/// `ΩC = T[s⁻¹JC]` with differential `d + ∂_Δ`.
#[derive(Debug)]
pub struct Cobar {
    coalg: Arc<SymCoalgebra>,
    d_c: GradedMap,
    letter_of: Vec<Option<usize>>,
    tensor: Arc<TensorAlgebra>,
    d: GradedMap,
    delta: GradedMap,
    algebra: DgAlgebra,
}

impl Cobar {
    /// `d_c` is the (possibly perturbed) differential of `coalg`; it must
    /// be a coderivation vanishing on the unit. Truncated at the total
    /// weight of `coalg`.
    pub fn new(coalg: &Arc<SymCoalgebra>, d_c: &GradedMap) -> Result<Self> {
        if !same_module(d_c.source(), coalg.module()) || !same_module(d_c.target(), coalg.module()) {
            return Err(Error::Argument("cobar: differential acts on another module".into()));
        }
        let cm = coalg.module();
        let mut letter_of = vec![None; coalg.dim()];
        let mut basis = Vec::new();
        for i in 0..coalg.dim() {
            if i == coalg.unit() {
                continue;
            }
            letter_of[i] = Some(basis.len());
            basis.push(BasisElement {
                label: format!("s⁻¹({})", cm.label(i)),
                degree: cm.degree(i) - 1,
                weight: coalg.total_weight(i),
            });
        }
        let letters = GradedModule::new(format!("s⁻¹J{}", cm.name()), basis)?.shared();
        let tensor = TensorAlgebra::new(&format!("Ω{}", cm.name()), &letters, coalg.max_weight())?.shared();
        let word_of_letter = |i: usize| -> Result<usize> {
            tensor.index_of_word(&[letter_of[i].expect("reduced word")])
        };
        let mut d_letters = vec![Vector::new(); letters.dim()];
        let mut delta_letters = vec![Vector::new(); letters.dim()];
        for i in 0..coalg.dim() {
            let Some(l) = letter_of[i] else { continue };
            for (&j, c) in d_c.column(i) {
                if j == coalg.unit() {
                    return Err(Error::Argument("cobar: differential reaches the unit".into()));
                }
                add_entry(&mut d_letters[l], word_of_letter(j)?, &-c.clone());
            }
            for (&(a, b), c) in &coalg.diagonal(i) {
                if a == coalg.unit() || b == coalg.unit() {
                    continue;
                }
                let s = sign_q(cm.degree(a) % 2 != 0);
                let w = tensor.index_of_word(&[letter_of[a].unwrap(), letter_of[b].unwrap()])?;
                add_entry(&mut delta_letters[l], w, &(c * s));
            }
        }
        let d = tensor.derivation(&d_letters, -1)?;
        let delta = tensor.derivation(&delta_letters, -1)?;
        let total = d.add(&delta)?;
        let algebra = DgAlgebra::new(tensor.clone(), total)?;
        Ok(Cobar {
            coalg: coalg.clone(),
            d_c: d_c.clone(),
            letter_of,
            tensor,
            d,
            delta,
            algebra,
        })
    }

    pub fn coalgebra(&self) -> &Arc<SymCoalgebra> {
        &self.coalg
    }

    pub fn coalgebra_differential(&self) -> &GradedMap {
        &self.d_c
    }

    pub fn tensor(&self) -> &Arc<TensorAlgebra> {
        &self.tensor
    }

    /// Letter index of `s⁻¹c` for a basis word `c ≠ 1`.
    pub fn letter(&self, c: usize) -> Option<usize> {
        self.letter_of[c]
    }

    /// The unperturbed part `d` of the differential.
    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    /// The perturbation `∂_Δ` induced by the diagonal.
    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn differential(&self) -> &GradedMap {
        use crate::symcoalg::BilinearTarget;
        self.algebra.differential()
    }

    /// First basis word where `(d + ∂_Δ)² ≠ 0`.
    pub fn square_failure(&self) -> Option<String> {
        let t = self.differential();
        let sq = t.compose(t).expect("endomorphism");
        sq.columns()
            .iter()
            .position(|c| !c.is_empty())
            .map(|i| self.tensor.module().label(i).to_string())
    }

    /// The universal twisting cochain `C → ΩC`, `c ↦ s⁻¹c`, `1 ↦ 0`.
    pub fn universal_cochain(&self) -> GradedMap {
        let cols = (0..self.coalg.dim())
            .map(|i| {
                let mut v = Vector::new();
                if let Some(l) = self.letter_of[i] {
                    v.insert(self.tensor.letter(l), Q::one());
                }
                v
            })
            .collect();
        GradedMap::from_columns(self.coalg.module(), self.tensor.module(), -1, cols)
            .expect("letters have degree |c| - 1")
    }
}

/// The loop Lie algebra `ℒC ⊂ ΩC`: the free Lie algebra on the letters
/// with the restricted differential.
#[derive(Debug)]
pub struct LoopLie {
    cobar: Arc<Cobar>,
    free: Arc<FreeLie>,
    lie: DgLie,
    d_unperturbed: GradedMap,
    delta: GradedMap,
}

impl LoopLie {
    /// Fails with an internal error if the differential does not preserve
    /// the Lie elements, which would contradict the closure lemma.
    pub fn new(cobar: &Arc<Cobar>) -> Result<Self> {
        let free = Arc::new(FreeLie::new(&format!("ℒ{}", cobar.coalg.module().name()), cobar.tensor())?);
        let restrict = |f: &GradedMap, what: &str| -> Result<GradedMap> {
            GradedMap::from_fn(free.module(), free.module(), -1, |i| {
                let image = f.apply(free.expansion(i));
                free.try_express(&image).ok_or_else(|| {
                    Error::Internal(format!(
                        "{what} of {} leaves the free Lie algebra",
                        free.module().label(i)
                    ))
                })
            })
        };
        let d_unperturbed = restrict(cobar.d(), "d")?;
        let delta = restrict(cobar.delta(), "∂_Δ")?;
        let total = d_unperturbed.add(&delta)?;
        let lie = DgLie::from_free(free.clone(), total)?;
        Ok(LoopLie {
            cobar: cobar.clone(),
            free,
            lie,
            d_unperturbed,
            delta,
        })
    }

    /// `ℒC` over `C` with differential `d_c`.
    pub fn over(coalg: &Arc<SymCoalgebra>, d_c: &GradedMap) -> Result<Self> {
        Self::new(&Arc::new(Cobar::new(coalg, d_c)?))
    }

    pub fn cobar(&self) -> &Arc<Cobar> {
        &self.cobar
    }

    pub fn free(&self) -> &Arc<FreeLie> {
        &self.free
    }

    pub fn lie(&self) -> &DgLie {
        &self.lie
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        self.free.module()
    }

    pub fn d_unperturbed(&self) -> &GradedMap {
        &self.d_unperturbed
    }

    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }

    /// Lie basis index of the letter `s⁻¹c`.
    pub fn letter(&self, c: usize) -> Option<usize> {
        self.cobar.letter(c).map(|l| self.free.letter(l))
    }

    /// The derivation of `ℒC` induced by a map `f` of `C` of degree -1
    /// vanishing on the unit: `s⁻¹c ↦ -s⁻¹f(c)` on letters.
    pub fn induced_derivation(&self, f: &GradedMap) -> Result<GradedMap> {
        let coalg = &self.cobar.coalg;
        if !same_module(f.source(), coalg.module()) || !same_module(f.target(), coalg.module()) {
            return Err(Error::Argument("induced derivation: map acts on another module".into()));
        }
        let tensor = self.cobar.tensor();
        let mut letters = vec![Vector::new(); tensor.generators().dim()];
        for i in 0..coalg.dim() {
            let Some(l) = self.cobar.letter(i) else { continue };
            for (&j, c) in f.column(i) {
                let lj = self
                    .cobar
                    .letter(j)
                    .ok_or_else(|| Error::Argument("induced derivation: map reaches the unit".into()))?;
                add_entry(&mut letters[l], tensor.letter(lj), &-c.clone());
            }
        }
        let der = tensor.derivation(&letters, -1)?;
        let free = &self.free;
        GradedMap::from_fn(free.module(), free.module(), -1, |i| {
            free.try_express(&der.apply(free.expansion(i))).ok_or_else(|| {
                Error::Internal(format!(
                    "induced derivation of {} leaves the free Lie algebra",
                    free.module().label(i)
                ))
            })
        })
    }

    /// `t_ℒ: C → ℒC`, `c ↦ s⁻¹c`.
    pub fn universal_cochain(&self) -> GradedMap {
        let coalg = &self.cobar.coalg;
        let cols = (0..coalg.dim())
            .map(|i| {
                let mut v = Vector::new();
                if let Some(l) = self.letter(i) {
                    v.insert(l, Q::one());
                }
                v
            })
            .collect();
        GradedMap::from_columns(coalg.module(), self.module(), -1, cols).expect("letter degrees")
    }
}

/// Ranks of `U[ℒC] → ΩC` in one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidegreeRank {
    pub degree: i32,
    pub weight: u32,
    pub pbw_dim: usize,
    pub rank: usize,
    pub cobar_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarIsoReport {
    pub ranks: Vec<BidegreeRank>,
    /// Lie basis elements whose differential in `ΩC` differs from the
    /// differential computed in `ℒC`.
    pub differential_failures: Vec<String>,
}

impl CobarIsoReport {
    pub fn ok(&self) -> bool {
        self.differential_failures.is_empty()
            && self
                .ranks
                .iter()
                .all(|r| r.pbw_dim == r.rank && r.rank == r.cobar_dim)
    }
}

/// Checks that ordered products of Lie basis elements map bijectively onto
/// `ΩC` in each bidegree and that the inclusion intertwines differentials.
pub fn cobar_iso_check(l: &LoopLie) -> Result<CobarIsoReport> {
    let free = l.free();
    let t = free.tensor();
    let pbw = SymCoalgebra::new("U", free.module(), free.max_weight())?;
    let mut by_bidegree: BTreeMap<(i32, u32), (Vec<Vector>, usize)> = BTreeMap::new();
    for i in 0..pbw.dim() {
        let mut acc = Vector::new();
        acc.insert(t.unit(), Q::one());
        for &x in pbw.word(i) {
            acc = t.product(&acc, free.expansion(x))?;
        }
        by_bidegree
            .entry((pbw.module().degree(i), pbw.total_weight(i)))
            .or_default()
            .0
            .push(acc);
    }
    let tm = t.module();
    for k in 0..t.dim() {
        by_bidegree.entry((tm.degree(k), tm.weight(k))).or_default().1 += 1;
    }
    let ranks = by_bidegree
        .into_iter()
        .map(|((degree, weight), (images, cobar_dim))| BidegreeRank {
            degree,
            weight,
            pbw_dim: images.len(),
            rank: rank_of(&images),
            cobar_dim,
        })
        .collect();
    let d_t = l.cobar().differential();
    let d_l = l.lie().complex().d();
    let differential_failures = (0..free.dim())
        .filter(|&i| d_t.apply(free.expansion(i)) != free.to_tensor(d_l.column(i)))
        .map(|i| free.module().label(i).to_string())
        .collect();
    Ok(CobarIsoReport {
        ranks,
        differential_failures,
    })
}

/// `ℒ(f): ℒC → ℒC'` for a dg coalgebra map `f: C → C'` preserving the
/// coaugmentation; on letters `s⁻¹c ↦ s⁻¹f(c)`.
pub fn loop_lie_functor(f: &GradedMap, source: &LoopLie, target: &LoopLie) -> Result<GradedMap> {
    let (c, c2) = (source.cobar().coalgebra(), target.cobar().coalgebra());
    if !same_module(f.source(), c.module()) || !same_module(f.target(), c2.module()) {
        return Err(Error::Argument("loop functor: map between the wrong coalgebras".into()));
    }
    if f.degree() != 0 && !f.is_zero() {
        return Err(Error::Precondition("loop functor: map must have degree 0".into()));
    }
    if let Some(i) = c.coalgebra_morphism_failure(f, c2) {
        return Err(Error::Precondition(format!(
            "loop functor: not a coalgebra map on {}",
            c.module().label(i)
        )));
    }
    let lhs = target.cobar().coalgebra_differential().compose(f)?;
    let rhs = f.compose(source.cobar().coalgebra_differential())?;
    if let Some(i) = lhs.first_difference(&rhs) {
        return Err(Error::Precondition(format!(
            "loop functor: not a chain map on {}",
            c.module().label(i)
        )));
    }
    let t2 = target.cobar().tensor();
    let mut letters = vec![Vector::new(); source.cobar().tensor().generators().dim()];
    for i in 0..c.dim() {
        let Some(l) = source.cobar().letter(i) else { continue };
        for (&j, x) in f.column(i) {
            let lj = target.cobar().letter(j).ok_or_else(|| {
                Error::Precondition("loop functor: map does not preserve the coaugmentation".into())
            })?;
            add_entry(&mut letters[l], t2.letter(lj), x);
        }
    }
    let on_tensor = source.cobar().tensor().algebra_map(&letters, t2)?;
    let free = source.free();
    GradedMap::from_fn(free.module(), target.module(), 0, |i| {
        let image = on_tensor.apply(free.expansion(i));
        target.free().express(&image)
    })
}
