//! The four commands, as library functions returning structured results.

use std::sync::Arc;

use crate::complexes::Contraction;
use crate::error::{Error, Result};
use crate::exactalg::map::GradedMap;
use crate::exactalg::rational::{format_rational, parse_rational, Q};
use crate::exactalg::tensor::suspend;
use crate::freelie::DgLie;
use crate::loopalg::LoopLie;
use crate::oracle::tree_sum;
use crate::symcoalg::{adjoint, check_lie_twisting, Coderivation, ShStructure, SymCoalgebra};
use crate::transfer::{
    check_theta, coalgebra_over, homotopy_recursion, is_connected, lie_transfer,
    lie_transfer_contraction, sh_transfer, side_constraints, theta_recursion,
    theta_restriction_failure, verify_sh_equivalence, ComplementTwo,
};

use super::report::{tool_name, Check, Homology, Mode, Report};
use super::schema::{triples, Problem, ProblemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckLevel {
    /// Master equation and side constraints only.
    Fast,
    /// Also every contraction, coalgebra morphism and the inverse recursions.
    Full,
}

#[derive(Clone, Debug)]
pub struct TransferOptions {
    pub mode: Option<Mode>,
    pub max_weight: Option<u32>,
    pub degree_window: Option<[i32; 2]>,
    pub level: CheckLevel,
}

fn contraction_check(name: &str, c: &Contraction) -> Result<Check> {
    let r = c.verify()?;
    Ok(Check::from_witness(name, (!r.ok()).then(|| r.describe())))
}

fn first_label(f: &GradedMap, g: &GradedMap) -> Option<String> {
    f.first_difference(g).map(|i| f.source().label(i).to_string())
}

/// `τ̄` into `C[L]` is a coalgebra morphism and a chain map.
fn adjoint_checks(
    name: &str,
    tau: &GradedMap,
    src: &SymCoalgebra,
    d_src: &GradedMap,
    lie: &DgLie,
    max_weight: u32,
) -> Result<Vec<Check>> {
    let target = SymCoalgebra::new("C(L)", &Arc::new(suspend(lie.complex().module())), max_weight)?.shared();
    let (cce, _) = lie.cce(&target)?;
    let bar = adjoint(tau, src, &target)?;
    let morph = src
        .coalgebra_morphism_failure(&bar, &target)
        .map(|i| src.module().label(i).to_string());
    let chain = first_label(&cce.differential().compose(&bar)?, &bar.compose(d_src)?);
    Ok(vec![
        Check::from_witness(&format!("{name} commutes with Δ"), morph),
        Check::from_witness(&format!("{name} is a chain map"), chain),
    ])
}

fn twisting_check(name: &str, t: &GradedMap, c: &SymCoalgebra, d: &GradedMap, lie: &DgLie) -> Result<Check> {
    let v = check_lie_twisting(t, c, d, lie)?;
    Ok(Check::from_witness(name, v.failure.map(|(w, _)| w)))
}

pub fn cmd_transfer(problem: &Problem, opts: &TransferOptions) -> Result<Report> {
    let strict = problem.is_strict();
    let mode = opts.mode.unwrap_or(if strict { Mode::Strict } else { Mode::Sh });
    if mode == Mode::Strict && !strict {
        return Err(Error::Argument("--strict needs a problem with a Lie structure".into()));
    }
    let n = opts.max_weight.unwrap_or(problem.file.max_weight());
    if n < 2 {
        return Err(Error::Argument("--max-weight must be at least 2".into()));
    }
    let window = opts
        .degree_window
        .or(problem.file.truncation.as_ref().and_then(|t| t.degree_window));
    let full = opts.level == CheckLevel::Full;
    let c = &problem.contraction;
    let mut checks = Vec::new();
    let mut homology = Vec::new();
    let mut notes = Vec::new();
    let (structure, tau) = match mode {
        Mode::Strict => {
            let g = problem.lie()?;
            let lt = lie_transfer(c, &g, n)?;
            let d_s = lt.structure.differential();
            checks.push(Check::pass("(d⁰+𝒟)² = 0"));
            checks.push(twisting_check("Dτ = ½[τ,τ]", &lt.tau, &lt.coalgebra, d_s, &g)?);
            let side = side_constraints(&lt, c)?;
            for name in ["πτ = τ_M", "hτ = 0"] {
                let failed = side.iter().any(|s| s == name);
                checks.push(Check::from_witness(name, failed.then(|| "see τ".to_string())));
            }
            homology.push(Homology::new("S^c_𝒟[sM]", &lt.structure.complex().homology_ranks(), window));
            if full {
                let lc = lie_transfer_contraction(&lt, c, &g)?;
                checks.push(contraction_check("S^c_𝒟[sM] ⇄ C[g] contraction", &lc.contraction)?);
                let id = GradedMap::identity(lt.coalgebra.module());
                checks.push(Check::from_witness(
                    "Πτ̄ = Id",
                    first_label(&lc.contraction.pi().compose(&lc.tau_bar)?, &id),
                ));
                let cg = lc.cce.coalgebra();
                let morph = lt
                    .coalgebra
                    .coalgebra_morphism_failure(&lc.tau_bar, cg)
                    .map(|i| lt.coalgebra.module().label(i).to_string());
                checks.push(Check::from_witness("τ̄ commutes with Δ", morph));
                homology.push(Homology::new("C[g]", &lc.cce.complex().homology_ranks(), window));
                if is_connected(c.small().module()) && is_connected(g.complex().module()) {
                    let th = theta_recursion(&lt, &lc, &g)?;
                    let v = check_theta(&th, &lc)?;
                    checks.push(Check::from_witness("Dϑ = ½[ϑ,ϑ]", v.failure.map(|(w, _)| w)));
                    checks.push(Check::from_witness("ϑτ̄ = t_ℒ", theta_restriction_failure(&th, &lt, &lc)?));
                    let ct = ComplementTwo::new(&lt, &lc, &th)?;
                    let hr = homotopy_recursion(&ct.problem(&lt, &lc))?;
                    checks.push(Check::from_witness("Dh^C = t₁∪h^C - h^C∪t₂", hr.failure));
                    checks.push(Check::from_witness("h^C∇ = h^B", hr.restriction_failure));
                } else {
                    notes.push("M or g is not connected; the ϑ and h^C recursions were skipped".into());
                }
            }
            (triples(lt.structure.partial().corestriction()), triples(&lt.tau))
        }
        Mode::Sh => {
            let sh = problem.sh(n)?;
            let t = sh_transfer(c, &sh, n)?;
            let lie = t.loop_lie.lie();
            let d_s = t.structure().differential();
            checks.push(Check::pass("(d⁰+𝒟)² = 0"));
            checks.push(twisting_check("Dτ = ½[τ,τ]", &t.transfer.tau, &t.transfer.coalgebra, d_s, lie)?);
            if strict {
                let g = problem.lie()?;
                let lt = lie_transfer(c, &g, n)?;
                let same = lt.structure.partial().corestriction().triples()
                    == t.structure().partial().corestriction().triples();
                checks.push(Check::from_witness(
                    "𝒟 agrees with the strict transfer",
                    (!same).then(|| "corestriction tables differ".to_string()),
                ));
            }
            homology.push(Homology::new("S^c_∂[sg]", &t.input.complex().homology_ranks(), window));
            homology.push(Homology::new("S^c_𝒟[sM]", &t.structure().complex().homology_ranks(), window));
            if full {
                checks.push(contraction_check("g ⇄ ℒS^c[sg] contraction", &t.to_loop)?);
                checks.push(contraction_check("g ⇄ ℒ contraction", &t.to_loop_perturbed)?);
                checks.push(contraction_check("M ⇄ ℒ contraction", &t.composite)?);
                checks.push(contraction_check("S^c_𝒟[sM] ⇄ C[ℒ] contraction", &t.cce.contraction)?);
                let r = verify_sh_equivalence(&t)?;
                checks.push(Check::from_witness(
                    "sh-equivalence (τ̄, t̄_ℒ, Πτ̄ = Id)",
                    r.failures.first().cloned(),
                ));
                for (name, ranks) in r.homology.iter().skip(2) {
                    homology.push(Homology::new(name, ranks, window));
                }
            }
            notes.push(format!(
                "τ takes values in ℒS^c_∂[sg], dimension {} at weight ≤ {n}",
                t.loop_lie.module().dim()
            ));
            (triples(t.structure().partial().corestriction()), triples(&t.transfer.tau))
        }
    };
    Ok(Report {
        tool: tool_name(),
        mode,
        max_weight: n,
        problem: problem.file.clone(),
        structure,
        tau,
        checks,
        homology,
        notes,
    })
}

fn parse_triples(t: &[[String; 3]]) -> Result<Vec<(String, String, Q)>> {
    t.iter()
        .map(|[a, b, k]| Ok((a.clone(), b.clone(), parse_rational(k)?)))
        .collect()
}

/// Re-checks a report's identities from its serialized maps alone.
pub fn cmd_verify(report: &Report) -> Result<Vec<Check>> {
    let problem = report.problem.build()?;
    let n = report.max_weight;
    let m = problem.contraction.small();
    let coalg = coalgebra_over(m.module(), n, "S(sM)")?;
    let mut checks = Vec::new();
    let partial = Coderivation::from_triples(&coalg, &parse_triples(&report.structure)?)?;
    let structure = match ShStructure::new(m.clone(), partial) {
        Ok(s) => s,
        Err(Error::ContractViolation(w)) | Err(Error::Precondition(w)) => {
            checks.push(Check::from_witness("(d⁰+𝒟)² = 0", Some(w)));
            return Ok(checks);
        }
        Err(e) => return Err(e),
    };
    checks.push(Check::pass("(d⁰+𝒟)² = 0"));
    let d_s = structure.differential();
    let tau_triples = parse_triples(&report.tau)?;
    match report.mode {
        Mode::Strict => {
            let g = problem.lie()?;
            let tau = GradedMap::from_triples(coalg.module(), g.complex().module(), -1, &tau_triples)?;
            checks.push(twisting_check("Dτ = ½[τ,τ]", &tau, &coalg, d_s, &g)?);
            let c = &problem.contraction;
            let tau_m = crate::transfer::desuspended_projection(&coalg, m.module())?;
            checks.push(Check::from_witness("πτ = τ_M", first_label(&c.pi().compose(&tau)?, &tau_m)));
            let htau = c.h().compose(&tau)?;
            let zero = GradedMap::zero(htau.source(), htau.target(), htau.degree());
            checks.push(Check::from_witness("hτ = 0", first_label(&htau, &zero)));
            checks.extend(adjoint_checks("τ̄", &tau, &coalg, d_s, &g, n)?);
        }
        Mode::Sh => {
            let sh = problem.sh(n)?;
            let lp = LoopLie::over(sh.coalgebra(), sh.differential())?;
            let lie = lp.lie();
            let tau = GradedMap::from_triples(coalg.module(), lp.module(), -1, &tau_triples)?;
            checks.push(twisting_check("Dτ = ½[τ,τ]", &tau, &coalg, d_s, lie)?);
            checks.extend(adjoint_checks("τ̄", &tau, &coalg, d_s, lie, n)?);
            let t_l = lp.universal_cochain();
            checks.extend(adjoint_checks("t̄_ℒ", &t_l, sh.coalgebra(), sh.differential(), lie, n)?);
        }
    }
    Ok(checks)
}

/// Structural checks of a problem file. Returns the checks run so far; a
/// failing check stops the sequence.
pub fn cmd_validate(file: &ProblemFile) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let as_check = |name: &str, r: Result<()>, checks: &mut Vec<Check>| -> Result<bool> {
        match r {
            Ok(()) => {
                checks.push(Check::pass(name));
                Ok(true)
            }
            Err(Error::ContractViolation(w)) | Err(Error::Precondition(w)) => {
                checks.push(Check::from_witness(name, Some(w)));
                Ok(false)
            }
            Err(e) => Err(e),
        }
    };
    let built = file.build();
    let problem = match built {
        Ok(p) => {
            checks.push(Check::pass("d² = 0 and contraction identities"));
            p
        }
        Err(Error::ContractViolation(w)) => {
            checks.push(Check::from_witness("d² = 0 and contraction identities", Some(w)));
            return Ok(checks);
        }
        Err(e) => return Err(e),
    };
    let n = file.max_weight();
    if problem.is_strict() {
        if !as_check("Lie axioms", problem.lie().map(|_| ()), &mut checks)? {
            return Ok(checks);
        }
    }
    as_check("(d⁰+∂)² = 0", problem.sh(n).map(|_| ()), &mut checks)?;
    Ok(checks)
}

/// One word where the transferred corestriction and the tree formula
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OracleDiff {
    pub word: String,
    pub transferred: Vec<(String, String)>,
    pub oracle: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OracleReport {
    pub arity: usize,
    pub words: usize,
    pub nonzero: usize,
    pub diffs: Vec<OracleDiff>,
}

pub fn cmd_oracle(problem: &Problem, arity: usize) -> Result<OracleReport> {
    if arity < 2 {
        return Err(Error::Argument("--arity must be at least 2".into()));
    }
    let g = problem.lie()?;
    let c = &problem.contraction;
    let n = (arity as u32).max(2);
    let lt = lie_transfer(c, &g, n)?;
    let lambda = lt.structure.partial().corestriction();
    let gens = lt.coalgebra.generators();
    let show = |v: &crate::exactalg::map::Vector| -> Vec<(String, String)> {
        v.iter()
            .map(|(&i, k)| (gens.label(i).to_string(), format_rational(k)))
            .collect()
    };
    let mut out = OracleReport {
        arity,
        words: 0,
        nonzero: 0,
        diffs: Vec::new(),
    };
    for i in lt.coalgebra.words_of_length(arity) {
        let expected = tree_sum(c, &g, lt.coalgebra.word(i))?;
        out.words += 1;
        out.nonzero += usize::from(!expected.is_empty());
        if lambda.column(i) != &expected {
            out.diffs.push(OracleDiff {
                word: lt.coalgebra.module().label(i).to_string(),
                transferred: show(lambda.column(i)),
                oracle: show(&expected),
            });
        }
    }
    Ok(out)
}
