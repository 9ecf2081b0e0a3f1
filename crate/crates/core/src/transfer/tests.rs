use crate::canonical;
use crate::complexes::Contraction;

use super::*;

#[test]
fn lie_transfer_on_canonical_examples() {
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        assert!(side_constraints(&lt, &ex.contraction).unwrap().is_empty(), "{}", ex.name);
        assert!(lt.structure.partial().component(1).is_zero());
    }
}

#[test]
fn identity_contraction_gives_binary_structure() {
    let ex = canonical::heisenberg().unwrap();
    let id = Contraction::identity(ex.lie.complex());
    let lt = lie_transfer(&id, &ex.lie, 4).unwrap();
    assert_eq!(lt.structure.partial().arity(), 2);
}

#[test]
fn cce_contraction_on_canonical_examples() {
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).unwrap();
        let c = lt.coalgebra.clone();
        let cg = lc.cce.coalgebra().clone();
        assert_eq!(c.coalgebra_morphism_failure(&lc.tau_bar, &cg), None, "{}", ex.name);
        assert!(lc.contraction.verify().unwrap().ok());
    }
}

#[test]
fn phi_is_a_chain_isomorphism() {
    use crate::exactalg::map::GradedMap;
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).unwrap();
        let d_delta = lc.perturbed.small().d();
        let d_d = lt.structure.differential();
        assert_eq!(d_delta.compose(&lc.phi).unwrap(), lc.phi.compose(d_d).unwrap());
        let id = GradedMap::identity(lt.coalgebra.module());
        assert_eq!(lc.phi.compose(&lc.phi_inverse).unwrap(), id);
        assert_eq!(lc.phi_inverse.compose(&lc.phi).unwrap(), id);
    }
}

fn timed<T>(what: &str, f: impl FnOnce() -> T) -> T {
    let t = std::time::Instant::now();
    let out = f();
    eprintln!("{what}: {:?}", t.elapsed());
    out
}

#[test]
fn sh_transfer_on_triple() {
    let (c, sh) = canonical::sh_triple(4).unwrap();
    let t = timed("sh_triple", || sh_transfer(&c, &sh, 4).unwrap());
    let r = verify_sh_equivalence(&t).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    eprintln!("{:?}", t.structure().partial().triples());
}

#[test]
fn sh_transfer_of_strict_input() {
    for ex in canonical::all().unwrap() {
        let sg = crate::freelie::suspended_generators(&ex.lie);
        let cg = crate::symcoalg::SymCoalgebra::new("C(g)", &sg, 4).unwrap().shared();
        let (cce, _) = ex.lie.cce(&cg).unwrap();
        let t = timed(ex.name, || sh_transfer(&ex.contraction, &cce, 4).unwrap());
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        eprintln!(
            "{}: dim L {} dim C[L] {}",
            ex.name,
            t.loop_lie.module().dim(),
            t.cce.cce.coalgebra().dim()
        );
        for k in 1..=4 {
            assert_eq!(
                t.structure().partial().component(k).triples(),
                lt.structure.partial().component(k).triples(),
                "{} arity {k}",
                ex.name
            );
        }
    }
}

#[test]
fn theta_on_canonical_examples() {
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).unwrap();
        let th = timed(ex.name, || theta_recursion(&lt, &lc, &ex.lie).unwrap());
        assert!(check_theta(&th, &lc).unwrap().ok(), "{}", ex.name);
        assert_eq!(theta_restriction_failure(&th, &lt, &lc).unwrap(), None, "{}", ex.name);
    }
}

#[test]
fn complement_two_on_heisenberg() {
    use crate::symcoalg::check_ordinary_twisting;
    for ex in [canonical::heisenberg().unwrap(), canonical::heisenberg_acyclic().unwrap()] {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).unwrap();
        let th = theta_recursion(&lt, &lc, &ex.lie).unwrap();
        let ct = timed("setup", || ComplementTwo::new(&lt, &lc, &th).unwrap());
        let c = lc.cce.coalgebra();
        for t in [&ct.t1, &ct.t2] {
            assert!(check_ordinary_twisting(t, c, lc.cce.differential(), ct.cobar.algebra()).unwrap().ok());
        }
        let r = timed(ex.name, || homotopy_recursion(&ct.problem(&lt, &lc)).unwrap());
        assert!(r.ok(), "{}: {:?}", ex.name, r);
    }
}

#[test]
fn homotopy_recursion_trivial_and_mutated() {
    use crate::error::Error;
    use crate::exactalg::map::{scaled, GradedMap};
    use crate::exactalg::rational::q;
    let ex = canonical::heisenberg_acyclic().unwrap();
    let lt = lie_transfer(&ex.contraction, &ex.lie, 3).unwrap();
    let lc = lie_transfer_contraction(&lt, &ex.contraction, &ex.lie).unwrap();
    let th = theta_recursion(&lt, &lc, &ex.lie).unwrap();
    let ct = ComplementTwo::new(&lt, &lc, &th).unwrap();

    // t1 = t2: the recursion returns εη
    let mut p = ct.problem(&lt, &lc);
    p.t1 = &ct.t2;
    let r = homotopy_recursion(&p).unwrap();
    assert!(r.ok());
    let c = lc.cce.coalgebra();
    let eps = unit_map(c, ct.cobar.tensor().module(), ct.cobar.tensor().unit()).unwrap();
    assert_eq!(r.h, eps);

    // flipping the sign of t1 on any single word is detected
    let mut detected = 0;
    for i in 0..c.dim() {
        if ct.t1.column(i).is_empty() {
            continue;
        }
        let mut cols = ct.t1.columns().to_vec();
        cols[i] = scaled(&cols[i], &q(-1));
        let bad = GradedMap::from_columns(ct.t1.source(), ct.t1.target(), -1, cols).unwrap();
        let mut p = ct.problem(&lt, &lc);
        p.t1 = &bad;
        match homotopy_recursion(&p) {
            Err(Error::Precondition(_)) => {}
            Ok(r) => assert!(!r.ok(), "mutation at {} undetected", c.module().label(i)),
            Err(e) => panic!("{e}"),
        }
        detected += 1;
    }
    assert!(detected > 0);
}

#[test]
fn recursion_matches_tree_formula() {
    for ex in canonical::all().unwrap() {
        let lt = lie_transfer(&ex.contraction, &ex.lie, 4).unwrap();
        let lambda = lt.structure.partial().corestriction();
        let mut nonzero = [0usize; 5];
        for k in 2..=4 {
            for i in lt.coalgebra.words_of_length(k) {
                let expected = crate::oracle::tree_sum(&ex.contraction, &ex.lie, lt.coalgebra.word(i)).unwrap();
                assert_eq!(
                    lambda.column(i),
                    &expected,
                    "{} on {}",
                    ex.name,
                    lt.coalgebra.module().label(i)
                );
                nonzero[k] += usize::from(!expected.is_empty());
            }
        }
        eprintln!("{}: nonzero λ_k counts {:?}", ex.name, nonzero);
    }
}
