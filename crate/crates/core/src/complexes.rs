//! Chain complexes, contractions, the basic perturbation lemma and a
//! linear-algebra contraction solver.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{homology_rank, Echelon};
use crate::exactalg::map::{add_scaled, GradedMap, Vector};
use crate::exactalg::module::{same_module, GradedModule};

/// A graded module with a square-zero differential of degree -1.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    d: GradedMap,
}

impl ChainComplex {
    pub fn new(d: GradedMap) -> Result<Self> {
        if !same_module(d.source(), d.target()) {
            return Err(Error::Argument("differential must be an endomorphism".into()));
        }
        if d.degree() != -1 && !d.is_zero() {
            return Err(Error::Argument(format!(
                "differential has degree {}, expected -1",
                d.degree()
            )));
        }
        let dd = d.compose(&d)?;
        if let Some(j) = dd.columns().iter().position(|c| !c.is_empty()) {
            return Err(Error::ContractViolation(format!(
                "d∘d ≠ 0 on {} in {}",
                d.source().label(j),
                d.source().name()
            )));
        }
        Ok(ChainComplex {
            d: normalize_degree(d, -1),
        })
    }

    pub fn zero_differential(m: &Arc<GradedModule>) -> Self {
        ChainComplex {
            d: GradedMap::zero(m, m, -1),
        }
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        self.d.source()
    }

    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    pub fn homology_ranks(&self) -> BTreeMap<i32, usize> {
        self.module()
            .degrees()
            .map(|n| (n, homology_rank(&self.d, n)))
            .collect()
    }

    /// The complex with differential `d + delta`, checked square-zero.
    pub fn perturbed(&self, delta: &GradedMap) -> Result<ChainComplex> {
        ChainComplex::new(self.d.add(delta)?)
    }
}

/// A zero map has no meaningful degree; give it the expected one.
pub(crate) fn normalize_degree(f: GradedMap, degree: i32) -> GradedMap {
    if f.degree() == degree || !f.is_zero() {
        f
    } else {
        GradedMap::zero(f.source(), f.target(), degree)
    }
}

/// A perturbation `δ` of a chain complex whose basis weights define the
/// filtration: `δ` strictly lowers weight and `(d + δ)² = 0`.
#[derive(Clone, Debug)]
pub struct Perturbation {
    delta: GradedMap,
}

impl Perturbation {
    pub fn new(complex: &ChainComplex, delta: GradedMap) -> Result<Self> {
        if !same_module(delta.source(), complex.module()) || !same_module(delta.target(), complex.module()) {
            return Err(Error::Argument("perturbation acts on a different module".into()));
        }
        if !delta.is_zero() && delta.degree() != -1 {
            return Err(Error::Argument("perturbation must have degree -1".into()));
        }
        if delta.max_weight_increase() >= 0 {
            return Err(Error::Precondition(
                "perturbation does not strictly lower the filtration weight".into(),
            ));
        }
        complex.perturbed(&delta)?;
        Ok(Perturbation {
            delta: normalize_degree(delta, -1),
        })
    }

    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }
}

/// Outcome of checking the contraction identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionReport {
    /// `(identity name, first failing basis element)` for each failure.
    pub failures: Vec<(String, String)>,
}

impl ContractionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, name: &str, lhs: &GradedMap, rhs: &GradedMap) {
        if let Some(j) = lhs.first_difference(rhs) {
            self.failures
                .push((name.to_string(), lhs.source().label(j).to_string()));
        }
    }

    fn check_zero(&mut self, name: &str, f: &GradedMap) {
        if let Some(j) = f.columns().iter().position(|c| !c.is_empty()) {
            self.failures
                .push((name.to_string(), f.source().label(j).to_string()));
        }
    }

    pub fn describe(&self) -> String {
        self.failures
            .iter()
            .map(|(n, w)| format!("{n} fails on {w}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// A contraction `(∇, π, h)` of `big` onto `small`:
/// `π∇ = Id`, `dh + hd = Id - ∇π`, `πh = 0`, `h∇ = 0`, `hh = 0`, with
/// `π` and `∇` chain maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    small: ChainComplex,
    big: ChainComplex,
    nabla: GradedMap,
    pi: GradedMap,
    h: GradedMap,
}

impl Contraction {
    /// Builds and verifies a contraction.
    pub fn new(
        small: ChainComplex,
        big: ChainComplex,
        nabla: GradedMap,
        pi: GradedMap,
        h: GradedMap,
    ) -> Result<Self> {
        let c = Self::new_unchecked(small, big, nabla, pi, h)?;
        let report = c.verify()?;
        if !report.ok() {
            return Err(Error::ContractViolation(report.describe()));
        }
        Ok(c)
    }

    /// Checks only shapes; the identities are left to [`Contraction::verify`].
    pub fn new_unchecked(
        small: ChainComplex,
        big: ChainComplex,
        nabla: GradedMap,
        pi: GradedMap,
        h: GradedMap,
    ) -> Result<Self> {
        let (m, n) = (small.module(), big.module());
        let shape = |f: &GradedMap, s: &Arc<GradedModule>, t: &Arc<GradedModule>, deg: i32, name: &str| {
            if !same_module(f.source(), s) || !same_module(f.target(), t) {
                return Err(Error::Argument(format!("{name} has the wrong source or target")));
            }
            if f.degree() != deg && !f.is_zero() {
                return Err(Error::Argument(format!("{name} must have degree {deg}")));
            }
            Ok(())
        };
        shape(&nabla, m, n, 0, "∇")?;
        shape(&pi, n, m, 0, "π")?;
        shape(&h, n, n, 1, "h")?;
        Ok(Contraction {
            small,
            big,
            nabla: normalize_degree(nabla, 0),
            pi: normalize_degree(pi, 0),
            h: normalize_degree(h, 1),
        })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let m = c.module();
        Contraction {
            small: c.clone(),
            big: c.clone(),
            nabla: GradedMap::identity(m),
            pi: GradedMap::identity(m),
            h: GradedMap::zero(m, m, 1),
        }
    }

    pub fn small(&self) -> &ChainComplex {
        &self.small
    }

    pub fn big(&self) -> &ChainComplex {
        &self.big
    }

    pub fn nabla(&self) -> &GradedMap {
        &self.nabla
    }

    pub fn pi(&self) -> &GradedMap {
        &self.pi
    }

    pub fn h(&self) -> &GradedMap {
        &self.h
    }

    /// `Id - ∇π` on the big complex.
    pub fn complement_projector(&self) -> Result<GradedMap> {
        GradedMap::identity(self.big.module()).sub(&self.nabla.compose(&self.pi)?)
    }

    fn core_report(&self) -> Result<ContractionReport> {
        let mut r = ContractionReport::default();
        let (dm, dn) = (self.small.d(), self.big.d());
        r.check(
            "π∇ = Id",
            &self.pi.compose(&self.nabla)?,
            &GradedMap::identity(self.small.module()),
        );
        let dh = normalize_degree(dn.compose(&self.h)?.add(&self.h.compose(dn)?)?, 0);
        r.check("dh + hd = Id - ∇π", &dh, &self.complement_projector()?);
        r.check(
            "∇ chain map",
            &normalize_degree(dn.compose(&self.nabla)?, -1),
            &normalize_degree(self.nabla.compose(dm)?, -1),
        );
        r.check(
            "π chain map",
            &normalize_degree(dm.compose(&self.pi)?, -1),
            &normalize_degree(self.pi.compose(dn)?, -1),
        );
        Ok(r)
    }

    /// Checks all identities and reports the first failing basis element of
    /// each.
    pub fn verify(&self) -> Result<ContractionReport> {
        let mut r = self.core_report()?;
        r.check_zero("πh = 0", &self.pi.compose(&self.h)?);
        r.check_zero("h∇ = 0", &self.h.compose(&self.nabla)?);
        r.check_zero("hh = 0", &self.h.compose(&self.h)?);
        Ok(r)
    }

    /// Restores `πh = h∇ = hh = 0` for data satisfying the other identities,
    /// via `h̃ = P h P d P h P` with `P = Id - ∇π`. Leaves a genuine
    /// contraction unchanged.
    pub fn repair_side_conditions(
        small: ChainComplex,
        big: ChainComplex,
        nabla: GradedMap,
        pi: GradedMap,
        h: GradedMap,
    ) -> Result<Self> {
        let c = Self::new_unchecked(small, big, nabla, pi, h)?;
        let r = c.core_report()?;
        if !r.ok() {
            return Err(Error::ContractViolation(r.describe()));
        }
        let p = c.complement_projector()?;
        let php = p.compose(&c.h)?.compose(&p)?;
        let h2 = php.compose(c.big.d())?.compose(&php)?;
        let out = Contraction {
            h: normalize_degree(h2, 1),
            ..c
        };
        out.expect_valid("side-condition repair")?;
        Ok(out)
    }

    /// Verification of output the library computed itself: a failure is a
    /// bug, reported as an internal error.
    pub(crate) fn expect_valid(&self, what: &str) -> Result<()> {
        let r = self.verify()?;
        if r.ok() {
            Ok(())
        } else {
            Err(Error::Internal(format!("{what} produced an invalid contraction: {}", r.describe())))
        }
    }

    /// Basic perturbation lemma. Returns the perturbed contraction together
    /// with the induced perturbation `δ_M` of the small differential.
    ///
    /// With `A = Σ_n (-δh)^n δ`: `δ_M = πA∇`, `∇' = ∇ - hA∇`,
    /// `π' = π - πAh`, `h' = h - hAh`.
    pub fn perturb(&self, p: &Perturbation) -> Result<(Contraction, GradedMap)> {
        let n = self.big.module();
        if !same_module(p.delta().source(), n) {
            return Err(Error::Argument("perturbation acts on a different complex".into()));
        }
        let delta = p.delta();
        let cap = n.max_weight() as usize + 2;
        let mut a = delta.clone();
        let mut term = delta.clone();
        let minus_dh = delta.compose(&self.h)?.neg();
        let mut steps = 0;
        while !term.is_zero() {
            term = minus_dh.compose(&term)?;
            a = a.add(&term)?;
            steps += 1;
            if steps > cap {
                return Err(Error::Precondition(
                    "perturbation series does not terminate within the truncation".into(),
                ));
            }
        }
        let a_nabla = a.compose(&self.nabla)?;
        let delta_m = normalize_degree(self.pi.compose(&a_nabla)?, -1);
        let nabla = self.nabla.sub(&self.h.compose(&a_nabla)?)?;
        let pi_a = self.pi.compose(&a)?;
        let pi = self.pi.sub(&pi_a.compose(&self.h)?)?;
        let h = self.h.sub(&self.h.compose(&a)?.compose(&self.h)?)?;
        let small = ChainComplex::new(self.small.d().add(&delta_m)?)
            .map_err(|e| Error::Internal(format!("perturbed small differential: {e}")))?;
        let big = ChainComplex::new(self.big.d().add(delta)?)?;
        let out = Contraction::new_unchecked(small, big, nabla, pi, h)?;
        out.expect_valid("perturbation lemma")?;
        Ok((out, delta_m))
    }

    /// Contraction with the same big complex and small data, but the big
    /// differential replaced; used when a caller perturbs the small side
    /// by hand. Checked.
    pub fn with_complexes(&self, small: ChainComplex, big: ChainComplex) -> Result<Contraction> {
        Contraction::new(small, big, self.nabla.clone(), self.pi.clone(), self.h.clone())
    }
}

/// Composite of `c1: M ⇄ G` and `c2: G ⇄ L`, giving `M ⇄ L` with
/// `π = π1π2`, `∇ = ∇2∇1`, `h = h2 + ∇2 h1 π2`.
pub fn compose_contractions(c1: &Contraction, c2: &Contraction) -> Result<Contraction> {
    if c1.big() != c2.small() {
        return Err(Error::Argument(
            "composing contractions with different middle complexes".into(),
        ));
    }
    let pi = c1.pi().compose(c2.pi())?;
    let nabla = c2.nabla().compose(c1.nabla())?;
    let h = c2
        .h()
        .add(&c2.nabla().compose(c1.h())?.compose(c2.pi())?)?;
    let out = Contraction::new_unchecked(c1.small().clone(), c2.big().clone(), nabla, pi, h)?;
    let r = out.verify()?;
    if r.ok() {
        return Ok(out);
    }
    let Contraction { small, big, nabla, pi, h } = out;
    Contraction::repair_side_conditions(small, big, nabla, pi, h)
        .map_err(|e| Error::Internal(format!("contraction composition: {e}")))
}

/// Finds `h` making `(∇, π, h)` a contraction, given `π∇ = Id` and chain
/// maps `π`, `∇`, provided the complement `ker π` is acyclic.
///
/// Work is split by degree and, when `block` is given, by the block key of
/// each basis element; `d`, `π` and `∇π` must preserve blocks. Within each
/// piece the complement is split as boundaries plus a complement chosen
/// greedily in basis order, which makes the result deterministic.
pub fn solve_contraction(
    small: ChainComplex,
    big: ChainComplex,
    nabla: GradedMap,
    pi: GradedMap,
    block: Option<&(dyn Fn(usize) -> u64 + Sync)>,
) -> Result<Contraction> {
    let zero_h = GradedMap::zero(big.module(), big.module(), 1);
    let c = Contraction::new_unchecked(small, big, nabla, pi, zero_h)?;
    let r = c.core_report()?;
    for (name, w) in &r.failures {
        if !name.starts_with("dh") {
            return Err(Error::ContractViolation(format!("{name} fails on {w}")));
        }
    }
    let n = c.big.module().clone();
    let d = c.big.d();
    let p = c.complement_projector()?;

    let key = |j: usize| (n.degree(j), block.map_or(0, |b| b(j)));
    let mut pieces: BTreeMap<(i32, u64), Vec<usize>> = BTreeMap::new();
    for j in 0..n.dim() {
        pieces.entry(key(j)).or_default().push(j);
    }

    // basis of the complement in each piece, from the columns of P
    let mut complement: BTreeMap<(i32, u64), Vec<Vector>> = BTreeMap::new();
    for (k, idx) in &pieces {
        let mut e = Echelon::new();
        let mut basis = Vec::new();
        for &j in idx {
            let col = p.column(j);
            if e.insert(col).is_none() {
                basis.push(col.clone());
            }
        }
        complement.insert(*k, basis);
    }

    // C_n: basis vectors whose boundaries are independent; B_{n-1} = d(C_n)
    let mut chosen: BTreeMap<(i32, u64), Vec<Vector>> = BTreeMap::new();
    let mut boundaries: BTreeMap<(i32, u64), Vec<Vector>> = BTreeMap::new();
    for (&(deg, b), basis) in &complement {
        let mut e = Echelon::new();
        let mut cs = Vec::new();
        let mut bs = Vec::new();
        for k in basis {
            let dk = d.apply(k);
            if dk.is_empty() {
                continue;
            }
            if let Some(&j) = dk.keys().next() {
                if key(j) != (deg - 1, b) {
                    return Err(Error::Argument(
                        "solve_contraction: block key not preserved by d".into(),
                    ));
                }
            }
            if e.insert(&dk).is_none() {
                cs.push(k.clone());
                bs.push(dk);
            }
        }
        chosen.insert((deg, b), cs);
        boundaries.insert((deg - 1, b), bs);
    }

    // acyclicity: dim K = rank d|K + dim B in every piece
    let mut h_of_piece: BTreeMap<(i32, u64), (Echelon, usize, Vec<Vector>)> = BTreeMap::new();
    for (&(deg, b), basis) in &complement {
        let empty = Vec::new();
        let bs = boundaries.get(&(deg, b)).unwrap_or(&empty);
        let cs = chosen.get(&(deg, b)).unwrap_or(&empty);
        if basis.len() != bs.len() + cs.len() {
            return Err(Error::NoContraction { degree: deg });
        }
        let mut e = Echelon::new();
        for v in bs.iter().chain(cs) {
            if e.insert(v).is_some() {
                return Err(Error::NoContraction { degree: deg });
            }
        }
        let preimages = chosen.get(&(deg + 1, b)).cloned().unwrap_or_default();
        h_of_piece.insert((deg, b), (e, bs.len(), preimages));
    }

    let h = GradedMap::from_fn(&n, &n, 1, |j| {
        let x = p.column(j);
        let mut out = Vector::new();
        if x.is_empty() {
            return Ok(out);
        }
        let (e, nb, pre) = &h_of_piece[&key(j)];
        let coords = e.coordinates(x).ok_or_else(|| {
            Error::Argument("solve_contraction: block key not preserved by ∇π".into())
        })?;
        for (i, a) in coords {
            if i < *nb {
                add_scaled(&mut out, &a, &pre[i]);
            }
        }
        Ok(out)
    })?;
    let out = Contraction { h, ..c };
    out.expect_valid("contraction solver")?;
    Ok(out)
}
