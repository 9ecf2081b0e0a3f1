//! The recursions towards an sh-inverse: the Lie twisting cochain `ϑ` out of
//! `C[g]` and the homotopy `h^C` between twisting cochains.

use std::sync::Arc;

use num_traits::One;

use crate::complexes::{normalize_degree, Contraction};
use crate::error::{Error, Result};
use crate::exactalg::map::GradedMap;
use crate::exactalg::module::GradedModule;
use crate::exactalg::rational::{qf, Q};
use crate::exactalg::tensor::hom_differential;
use crate::freelie::DgLie;
use crate::loopalg::{loop_lie_functor, Cobar, LoopLie};
use crate::symcoalg::{check_lie_twisting, cup, BilinearTarget, SymCoalgebra, TwistingVerdict};

use super::lie::{LieContraction, LieTransfer};

/// `M` connected: every basis degree strictly positive, or every one
/// strictly negative.
pub fn is_connected(m: &GradedModule) -> bool {
    let degs: Vec<i32> = (0..m.dim()).map(|i| m.degree(i)).collect();
    degs.iter().all(|&d| d > 0) || degs.iter().all(|&d| d < 0)
}

/// Output of [`theta_recursion`].
#[derive(Debug)]
pub struct Theta {
    /// `ℒS^c_𝒟[sM]`.
    pub loop_lie: Arc<LoopLie>,
    /// `ϑ: C[g] → ℒS^c_𝒟[sM]`.
    pub theta: GradedMap,
    pub iterations: usize,
}

/// Solves `ϑ = t_ℒΠ + ½[ϑ,ϑ]H` by iteration; each pass fixes one more word
/// length, so the iteration stabilizes within the truncation.
pub fn theta_recursion(lt: &LieTransfer, lc: &LieContraction, g: &DgLie) -> Result<Theta> {
    let m = lt.structure.base().module();
    if !is_connected(m) || !is_connected(g.complex().module()) {
        return Err(Error::Precondition(
            "ϑ recursion needs M and g concentrated in positive or in negative degrees".into(),
        ));
    }
    let b = &lt.coalgebra;
    let loop_lie = Arc::new(LoopLie::over(b, lt.structure.differential())?);
    let c = lc.cce.coalgebra();
    let pi = lc.contraction.pi();
    let h = lc.contraction.h();
    let base = normalize_degree(loop_lie.universal_cochain().compose(pi)?, -1);
    let mut theta = base.clone();
    let cap = c.max_weight() as usize + 2;
    for iterations in 1..=cap {
        let tt = cup(&theta, &theta, c, loop_lie.lie())?;
        let next = base.add_scaled(&qf(1, 2), &normalize_degree(tt.compose(h)?, -1))?;
        if next == theta {
            return Ok(Theta {
                loop_lie,
                theta,
                iterations,
            });
        }
        theta = next;
    }
    Err(Error::Internal("ϑ recursion did not stabilize within the truncation".into()))
}

/// Master equation of `ϑ` over `C[g]`.
pub fn check_theta(t: &Theta, lc: &LieContraction) -> Result<TwistingVerdict> {
    check_lie_twisting(&t.theta, lc.cce.coalgebra(), lc.cce.differential(), t.loop_lie.lie())
}

/// `ϑτ̄ = t_ℒ`, returning the first word where it fails.
pub fn theta_restriction_failure(t: &Theta, lt: &LieTransfer, lc: &LieContraction) -> Result<Option<String>> {
    let lhs = t.theta.compose(&lc.tau_bar)?;
    let rhs = t.loop_lie.universal_cochain();
    Ok(lhs
        .first_difference(&rhs)
        .map(|i| lt.coalgebra.module().label(i).to_string()))
}

/// The inputs of [`homotopy_recursion`]: ordinary twisting cochains
/// `t1, t2: C → A`, a contraction `B ⇄ C` whose `∇` is a coalgebra map, and
/// a homotopy `h^B: B → A` between `t1∇` and `t2∇`.
pub struct HomotopyProblem<'a> {
    pub b: &'a SymCoalgebra,
    pub c: &'a SymCoalgebra,
    pub contraction: &'a Contraction,
    pub algebra: &'a dyn BilinearTarget,
    /// Index of the unit of `A`.
    pub unit: usize,
    pub t1: &'a GradedMap,
    pub t2: &'a GradedMap,
    pub h_b: &'a GradedMap,
}

/// `Dh - (t1∪h - h∪t2)` for a degree-0 map `h: C → A`.
pub fn homotopy_defect(
    h: &GradedMap,
    t1: &GradedMap,
    t2: &GradedMap,
    c: &SymCoalgebra,
    d_c: &GradedMap,
    alg: &dyn BilinearTarget,
) -> Result<GradedMap> {
    let h = normalize_degree(h.clone(), 0);
    let dh = normalize_degree(hom_differential(&h, d_c, alg.differential())?, -1);
    let rhs = cup(t1, &h, c, alg)?.sub(&cup(&h, t2, c, alg)?)?;
    Ok(normalize_degree(dh.sub(&normalize_degree(rhs, -1))?, -1))
}

/// Output of [`homotopy_recursion`].
#[derive(Clone, Debug)]
pub struct HomotopyResult {
    pub h: GradedMap,
    /// First word of `C` where `Dh^C = t1∪h^C - h^C∪t2` fails.
    pub failure: Option<String>,
    /// First word of `B` where `h^C∇ = h^B` fails.
    pub restriction_failure: Option<String>,
}

impl HomotopyResult {
    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.restriction_failure.is_none()
    }
}

/// Solves `h^C = h^Bπ - (t1∪h^C - h^C∪t2)h` and checks the result.
pub fn homotopy_recursion(p: &HomotopyProblem) -> Result<HomotopyResult> {
    let HomotopyProblem { b, c, contraction, algebra, unit, t1, t2, h_b } = *p;
    let (d_b, d_c) = (contraction.small().d(), contraction.big().d());
    let nabla = contraction.nabla();
    if let Some(i) = b.coalgebra_morphism_failure(nabla, c) {
        return Err(Error::Precondition(format!(
            "∇ is not a coalgebra morphism at {}",
            b.module().label(i)
        )));
    }
    let eta = h_b.column(b.unit());
    if eta.len() != 1 || eta.get(&unit) != Some(&Q::one()) {
        return Err(Error::Precondition("h^B must send the unit to the unit".into()));
    }
    let (t1n, t2n) = (t1.compose(nabla)?, t2.compose(nabla)?);
    let tc8 = homotopy_defect(h_b, &t1n, &t2n, b, d_b, algebra)?;
    if let Some(i) = tc8.columns().iter().position(|v| !v.is_empty()) {
        return Err(Error::Precondition(format!(
            "h^B is not a homotopy between t1∇ and t2∇ at {}",
            b.module().label(i)
        )));
    }
    let base = normalize_degree(h_b.compose(contraction.pi())?, 0);
    let hc = contraction.h();
    let mut h = base.clone();
    let cap = c.max_weight() as usize + 2;
    let mut stable = false;
    for _ in 0..cap {
        let corr = cup(t1, &h, c, algebra)?.sub(&cup(&h, t2, c, algebra)?)?;
        let next = base.sub(&normalize_degree(normalize_degree(corr, -1).compose(hc)?, 0))?;
        if next == h {
            stable = true;
            break;
        }
        h = next;
    }
    if !stable {
        return Err(Error::Internal("h^C recursion did not stabilize within the truncation".into()));
    }
    let defect = homotopy_defect(&h, t1, t2, c, d_c, algebra)?;
    let failure = defect
        .columns()
        .iter()
        .position(|v| !v.is_empty())
        .map(|i| c.module().label(i).to_string());
    let restriction_failure = h
        .compose(nabla)?
        .first_difference(h_b)
        .map(|i| b.module().label(i).to_string());
    Ok(HomotopyResult {
        h,
        failure,
        restriction_failure,
    })
}

/// The map `εη: C → A`, unit to unit.
pub fn unit_map(c: &SymCoalgebra, a: &Arc<GradedModule>, a_unit: usize) -> Result<GradedMap> {
    let mut cols = vec![Default::default(); c.dim()];
    let mut v = crate::exactalg::map::Vector::new();
    v.insert(a_unit, Q::one());
    cols[c.unit()] = v;
    GradedMap::from_columns(c.module(), a, 0, cols)
}

/// Data of the Complement II instance: `A = ΩC[g]`, `t1 = ℒ(τ̄)ϑ`,
/// `t2 = t_ℒ` and `h^B = εη`, all viewed as maps into `A`.
#[derive(Debug)]
pub struct ComplementTwo {
    pub cobar: Arc<Cobar>,
    pub loop_lie: LoopLie,
    pub t1: GradedMap,
    pub t2: GradedMap,
    pub h_b: GradedMap,
}

impl ComplementTwo {
    pub fn new(lt: &LieTransfer, lc: &LieContraction, theta: &Theta) -> Result<Self> {
        let c = lc.cce.coalgebra();
        let cobar = Arc::new(Cobar::new(c, lc.cce.differential())?);
        let loop_lie = LoopLie::new(&cobar)?;
        let free = loop_lie.free();
        let a = cobar.tensor().module();
        let embed = GradedMap::from_columns(
            free.module(),
            a,
            0,
            (0..free.dim()).map(|i| free.expansion(i).clone()).collect(),
        )?;
        let functor = loop_lie_functor(&lc.tau_bar, &theta.loop_lie, &loop_lie)?;
        let t1 = normalize_degree(embed.compose(&functor)?.compose(&theta.theta)?, -1);
        let t2 = normalize_degree(embed.compose(&loop_lie.universal_cochain())?, -1);
        let h_b = unit_map(&lt.coalgebra, a, cobar.tensor().unit())?;
        Ok(ComplementTwo {
            cobar,
            loop_lie,
            t1,
            t2,
            h_b,
        })
    }

    pub fn problem<'a>(&'a self, lt: &'a LieTransfer, lc: &'a LieContraction) -> HomotopyProblem<'a> {
        HomotopyProblem {
            b: &lt.coalgebra,
            c: lc.cce.coalgebra(),
            contraction: &lc.contraction,
            algebra: self.cobar.algebra(),
            unit: self.cobar.tensor().unit(),
            t1: &self.t1,
            t2: &self.t2,
            h_b: &self.h_b,
        }
    }
}
