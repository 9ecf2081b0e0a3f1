use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shlie::canonical;
use shlie::complexes::{compose_contractions, solve_contraction, Contraction};
use shlie::exactalg::map::{GradedMap, Vector};
use shlie::exactalg::module::GradedModule;
use shlie::exactalg::rational::{q, sign_q};
use shlie::exactalg::tensor::suspend;
use shlie::freelie::{jacobi_failure, DgLie};
use shlie::oracle::tree_sum;
use shlie::symcoalg::{
    bracket_corestriction, check_lie_twisting, Coderivation, ShStructure, SymCoalgebra,
};
use shlie::transfer::{
    check_theta, lie_transfer, lie_transfer_contraction, sh_transfer, side_constraints,
    theta_recursion,
};

use super::gen::{enlarge, random_heisenberg, random_input};
use super::Outcome;

fn valid(c: &Contraction, what: &str) -> Result<(), String> {
    let r = c.verify().map_err(|e| e.to_string())?;
    if r.ok() {
        Ok(())
    } else {
        Err(format!("{what}: {}", r.describe()))
    }
}

fn cce_of(lie: &DgLie, n: u32) -> ShStructure {
    let sg = Arc::new(suspend(lie.complex().module()));
    let c = SymCoalgebra::new("S(sg)", &sg, n).unwrap().shared();
    lie.cce(&c).unwrap().0
}

/// Contractions from every producer on random inputs.
pub fn contraction_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    for round in 0..20 {
        let lo = rng.gen_range(-2..=1);
        let inp = random_input(&mut rng, lo, 4);
        let c = &inp.contraction;
        valid(c, "random contraction")?;

        // solver: same ∇, π on the same complexes
        let solved = solve_contraction(c.small().clone(), c.big().clone(), c.nabla().clone(), c.pi().clone(), None)
            .map_err(|e| format!("round {round}: solver: {e}"))?;
        valid(&solved, "solver")?;

        // repair: spoil the side conditions without touching dh + hd
        let n = c.big().module();
        let z = GradedMap::from_fn(n, n, 2, |j| {
            let mut v = Vector::new();
            for &i in n.in_degree(n.degree(j) + 2) {
                if (i + j + round) % 3 == 0 {
                    v.insert(i, q(1));
                }
            }
            Ok(v)
        })
        .unwrap();
        let d = c.big().d();
        let bump = d.compose(&z).unwrap().sub(&z.compose(d).unwrap()).unwrap();
        let spoiled = c.h().add(&bump).unwrap().add(&c.nabla().compose(&c.pi()).unwrap().compose(&bump).unwrap()).unwrap();
        let repaired = Contraction::repair_side_conditions(
            c.small().clone(),
            c.big().clone(),
            c.nabla().clone(),
            c.pi().clone(),
            spoiled,
        )
        .map_err(|e| format!("round {round}: repair: {e}"))?;
        valid(&repaired, "repair")?;

        // perturbation lemma
        let (perturbed, _) = c.perturb(&inp.perturbation).map_err(|e| format!("round {round}: BPL: {e}"))?;
        valid(&perturbed, "perturbation lemma")?;

        // composition with a second random contraction onto the big complex
        let c2 = enlarge(&mut rng, c.big());
        valid(&c2, "enlargement")?;
        let comp = compose_contractions(c, &c2).map_err(|e| format!("round {round}: composition: {e}"))?;
        valid(&comp, "composition")?;

        // the Lie-level producers on a random dg Lie algebra
        let ex = random_heisenberg(&mut rng);
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).map_err(|e| e.to_string())?;
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).map_err(|e| e.to_string())?;
        valid(&lc.symmetric, "symmetric contraction")?;
        valid(&lc.perturbed, "perturbed symmetric contraction")?;
        valid(&lc.contraction, "lie_transfer_contraction")?;
        // abelian structure on the random complex
        let ab = DgLie::abelian(c.big().clone());
        let lt = lie_transfer(c, &ab, 4).map_err(|e| e.to_string())?;
        let lc = lie_transfer_contraction(&lt, c, &ab).map_err(|e| e.to_string())?;
        valid(&lc.contraction, "lie_transfer_contraction (abelian)")?;
        checked += 9;

        if round % 4 == 0 {
            let t = sh_transfer(&ex.contraction, &cce_of(&ex.lie, 4), 4).map_err(|e| e.to_string())?;
            for (k, what) in [
                (&t.to_loop, "g ⇄ ℒS^c[sg]"),
                (&t.to_loop_perturbed, "g ⇄ ℒ"),
                (&t.composite, "M ⇄ ℒ"),
                (&t.cce.contraction, "S^c_𝒟[sM] ⇄ C[ℒ]"),
            ] {
                valid(k, what)?;
                checked += 1;
            }
        }
    }
    let (c, sh) = canonical::sh_triple(4).map_err(|e| e.to_string())?;
    let t = sh_transfer(&c, &sh, 4).map_err(|e| e.to_string())?;
    for k in [&t.to_loop, &t.to_loop_perturbed, &t.composite, &t.cce.contraction] {
        valid(k, "sh_triple")?;
        checked += 1;
    }
    Ok(format!("20 random inputs, {checked} contractions verified"))
}

fn heisenberg_table(
    deg: i32,
    extra: &[((usize, usize), Vec<(usize, i64)>)],
) -> (Arc<GradedModule>, HashMap<(usize, usize), Vector>) {
    let m = GradedModule::from_pairs("g", &[("x", deg), ("y", deg), ("z", 2 * deg)])
        .unwrap()
        .shared();
    let mut t = HashMap::new();
    let mut put = |i: usize, j: usize, v: Vector| {
        let s = -sign_q((m.degree(i) * m.degree(j)) % 2 != 0);
        t.insert((j, i), v.iter().map(|(&k, c)| (k, c * &s)).collect::<Vector>());
        t.insert((i, j), v);
    };
    put(0, 1, [(2, q(1))].into_iter().collect());
    for ((i, j), v) in extra {
        put(*i, *j, v.iter().map(|&(k, c)| (k, q(c))).collect());
    }
    (m, t)
}

/// `∂∂ = 0` exactly when Jacobi holds, on Heisenberg and random mutations.
pub fn cce_jacobi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = vec![heisenberg_table(0, &[]), heisenberg_table(1, &[])];
    for _ in 0..10 {
        let mut extra = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(0..3);
            let j = rng.gen_range(0..3);
            if i == j {
                continue;
            }
            let k = rng.gen_range(0..3);
            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
            extra.push(((i.min(j), i.max(j)), vec![(k, c)]));
        }
        cases.push(heisenberg_table(0, &extra));
    }
    let (mut broken, mut kept) = (0, 0);
    for (n, (m, table)) in cases.iter().enumerate() {
        let bracket = |i: usize, j: usize| Ok(table.get(&(i, j)).cloned().unwrap_or_default());
        let jacobi = jacobi_failure(m, &bracket).unwrap().is_none();
        let sm = Arc::new(suspend(m));
        let c = SymCoalgebra::new("S", &sm, 3).unwrap().shared();
        let lambda = bracket_corestriction(&c, &bracket).unwrap();
        let coder = Coderivation::from_corestriction(&c, lambda).unwrap();
        let square_zero = coder.square_failure().is_none();
        if jacobi != square_zero {
            return Err(format!("case {n}: Jacobi {jacobi} but ∂∂ = 0 is {square_zero}"));
        }
        if jacobi {
            kept += 1;
        } else {
            broken += 1;
        }
    }
    if broken == 0 || kept < 2 {
        return Err(format!("vacuous: {kept} Jacobi, {broken} non-Jacobi cases"));
    }
    Ok(format!("{} cases ({kept} Jacobi, {broken} violating), all equivalent", cases.len()))
}

/// `Dt = ½[t,t]` for the strict τ, the sh τ and ϑ on the canonical examples.
pub fn master_equation() -> Outcome {
    let mut n = 0;
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).map_err(|e| e.to_string())?;
        let v = check_lie_twisting(&lt.tau, &lt.coalgebra, lt.structure.differential(), &ex.lie).unwrap();
        if !v.ok() {
            return Err(format!("{}: strict τ fails at {:?}", ex.name, v.failure));
        }
        let t = sh_transfer(&ex.contraction, &cce_of(&ex.lie, 4), 4).map_err(|e| e.to_string())?;
        let v = check_lie_twisting(
            &t.transfer.tau,
            &t.transfer.coalgebra,
            t.structure().differential(),
            t.loop_lie.lie(),
        )
        .unwrap();
        if !v.ok() {
            return Err(format!("{}: sh τ fails at {:?}", ex.name, v.failure));
        }
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).map_err(|e| e.to_string())?;
        let th = theta_recursion(&lt, &lc, &ex.lie).map_err(|e| e.to_string())?;
        let v = check_theta(&th, &lc).unwrap();
        if !v.ok() {
            return Err(format!("{}: ϑ fails at {:?}", ex.name, v.failure));
        }
        n += 3;
    }
    let (c, sh) = canonical::sh_triple(4).unwrap();
    let t = sh_transfer(&c, &sh, 4).map_err(|e| e.to_string())?;
    let v = check_lie_twisting(&t.transfer.tau, &t.transfer.coalgebra, t.structure().differential(), t.loop_lie.lie())
        .unwrap();
    if !v.ok() {
        return Err(format!("sh_triple: τ fails at {:?}", v.failure));
    }
    Ok(format!("{} twisting cochains exact at N = 4", n + 1))
}

/// `πτ = τ_M`, `hτ = 0`.
pub fn side_constraints_hold() -> Outcome {
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).map_err(|e| e.to_string())?;
        let f = side_constraints(&lt, &ex.contraction).map_err(|e| e.to_string())?;
        if !f.is_empty() {
            return Err(format!("{}: {}", ex.name, f.join(", ")));
        }
    }
    Ok("3 canonical examples".into())
}

/// Transferred λ₂, λ₃ against the tree formula.
pub fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut examples = vec![canonical::heisenberg_acyclic().unwrap()];
    examples.extend((0..5).map(|_| random_heisenberg(&mut rng)));
    let mut nonzero = [0; 4];
    for ex in &examples {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 3).map_err(|e| e.to_string())?;
        let lambda = lt.structure.partial().corestriction();
        let mut ternary = 0;
        for k in 2..=3 {
            for i in lt.coalgebra.words_of_length(k) {
                let expected =
                    tree_sum(&ex.contraction, &ex.lie, lt.coalgebra.word(i)).map_err(|e| e.to_string())?;
                if lambda.column(i) != &expected {
                    return Err(format!("{}: λ_{k} differs on {}", ex.name, lt.coalgebra.module().label(i)));
                }
                nonzero[k] += usize::from(!expected.is_empty());
                if k == 3 {
                    ternary += usize::from(!expected.is_empty());
                }
            }
        }
        if ternary == 0 {
            return Err(format!("{}: λ₃ vanishes; the comparison would be vacuous", ex.name));
        }
    }
    Ok(format!(
        "{} examples, {} nonzero λ₂ and {} nonzero λ₃ values agree",
        examples.len(),
        nonzero[2],
        nonzero[3]
    ))
}
