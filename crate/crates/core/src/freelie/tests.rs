use std::sync::Arc;

use super::*;
use crate::canonical;
use crate::exactalg::rational::{q, qf};
use crate::exactalg::tensor::suspend;
use crate::symcoalg::{check_lie_twisting, SymCoalgebra};

fn gens(pairs: &[(&str, i32)]) -> Arc<GradedModule> {
    GradedModule::from_pairs("Y", pairs).unwrap().shared()
}

fn free(pairs: &[(&str, i32)], n: u32) -> FreeLie {
    let t = TensorAlgebra::new("T", &gens(pairs), n).unwrap().shared();
    FreeLie::new("L", &t).unwrap()
}

fn labels(l: &FreeLie, weight: u32) -> Vec<String> {
    (0..l.dim())
        .filter(|&i| l.module().weight(i) == weight)
        .map(|i| l.module().label(i).to_string())
        .collect()
}

#[test]
fn single_generator() {
    let even = free(&[("x", 0)], 3);
    assert!(labels(&even, 2).is_empty());
    let odd = free(&[("x", 1)], 3);
    assert_eq!(labels(&odd, 2), vec!["[x,x]"]);
    // [x,x] expands to 2 x⊗x
    let i = odd.module().index_of("[x,x]").unwrap();
    let xx = odd.tensor().index_of_word(&[0, 0]).unwrap();
    assert_eq!(odd.expansion(i), &[(xx, q(2))].into_iter().collect::<Vector>());
    // [x,[x,x]] = 0 by Jacobi
    assert!(labels(&odd, 3).is_empty());
}

#[test]
fn two_even_generators_weight_three() {
    let l = free(&[("x", 0), ("y", 0)], 3);
    assert_eq!(labels(&l, 3), vec!["[x,[x,y]]", "[[x,y],y]"]);
    assert_eq!(labels(&l, 2), vec!["[x,y]"]);
}

// Witt's necklace formula for the dimension of the weight-n part over k
// even generators.
fn necklace(k: usize, n: usize) -> usize {
    fn mobius(n: usize) -> i64 {
        let (mut m, mut r, mut p) = (n, 1i64, 2);
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if m > 1 {
            r = -r;
        }
        r
    }
    let s: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (k as i64).pow((n / d) as u32))
        .sum();
    (s / n as i64) as usize
}

#[test]
fn dimensions_match_necklaces_and_spanning_sets() {
    for k in 1..=3 {
        let pairs: Vec<(String, i32)> = (0..k).map(|i| (format!("g{i}"), 0)).collect();
        let refs: Vec<(&str, i32)> = pairs.iter().map(|(s, d)| (s.as_str(), *d)).collect();
        let l = free(&refs, 4);
        for n in 1..=4u32 {
            assert_eq!(l.count(0, n), necklace(k, n as usize), "k={k} n={n}");
            assert_eq!(l.spanning_rank(0, n).unwrap(), l.count(0, n));
        }
    }
    let l = free(&[("x", 1), ("y", 2), ("z", 1)], 4);
    for (d, w) in l.bidegrees() {
        if w > 0 {
            assert_eq!(l.spanning_rank(d, w).unwrap(), l.count(d, w), "bidegree ({d},{w})");
        }
    }
}

#[test]
fn brackets_in_the_tensor_algebra() {
    let l = free(&[("x", 0), ("y", 0), ("z", 0)], 3);
    let x = l.letter(0);
    let y = l.letter(1);
    let z = l.letter(2);
    assert!(l.bracket(x, x).unwrap().is_empty());
    let xy = l.bracket(x, y).unwrap();
    let xy_idx = l.module().index_of("[x,y]").unwrap();
    assert_eq!(xy, [(xy_idx, q(1))].into_iter().collect::<Vector>());
    // Jacobi: [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0
    let lie = |a: &Vector, b: &Vector| {
        let mut out = Vector::new();
        for (&i, c) in a {
            for (&j, e) in b {
                add_scaled(&mut out, &(c * e), &l.bracket(i, j).unwrap());
            }
        }
        out
    };
    let unit = |i: usize| [(i, q(1))].into_iter().collect::<Vector>();
    let mut sum = lie(&unit(x), &l.bracket(y, z).unwrap());
    add_scaled(&mut sum, &q(1), &lie(&unit(y), &l.bracket(z, x).unwrap()));
    add_scaled(&mut sum, &q(1), &lie(&unit(z), &l.bracket(x, y).unwrap()));
    assert!(sum.is_empty());
    let wide = free(&[("x", 0), ("y", 0)], 2);
    let xy2 = wide.module().index_of("[x,y]").unwrap();
    assert_eq!(
        wide.bracket(xy2, wide.letter(0)),
        Err(Error::Truncation { weight: 3, max: 2 })
    );
}

#[test]
fn dglie_rejects_bad_constants() {
    let m = gens(&[("x", 0), ("y", 0), ("z", 0)]);
    let c = ChainComplex::zero_differential(&m);
    let k = |a: &str, b: &str, r: &str, v: i64| (a.to_string(), b.to_string(), r.to_string(), q(v));
    assert!(DgLie::new(c.clone(), &[k("x", "y", "z", 1)]).is_ok());
    // antisymmetry: [y,x] given inconsistently
    assert!(DgLie::new(c.clone(), &[k("x", "y", "z", 1), k("y", "x", "z", 1)]).is_err());
    // Jacobi: [x,y] = z, [x,z] = x
    let err = DgLie::new(c.clone(), &[k("x", "y", "z", 1), k("x", "z", "x", 1)]).unwrap_err();
    assert!(matches!(err, Error::ContractViolation(ref s) if s.contains("Jacobi")), "{err}");
    // degree mismatch
    let g = gens(&[("x", 1), ("y", 1), ("z", 1)]);
    assert!(DgLie::new(ChainComplex::zero_differential(&g), &[k("x", "y", "z", 1)]).is_err());
    // derivation: d z = x with [x,y] = z is not compatible
    let g2 = gens(&[("x", 0), ("y", 1), ("z", 1)]);
    let d = GradedMap::from_triples(&g2, &g2, -1, &[("z".into(), "x".into(), q(1))]).unwrap();
    let err = DgLie::new(ChainComplex::new(d).unwrap(), &[k("x", "y", "z", 1)]).unwrap_err();
    assert!(matches!(err, Error::ContractViolation(ref s) if s.contains("derivation")), "{err}");
}

#[test]
fn cce_of_examples() {
    for ex in canonical::all().unwrap() {
        let sg = Arc::new(suspend(ex.lie.complex().module()));
        let c = SymCoalgebra::new("C", &sg, 4).unwrap().shared();
        let (sh, tau) = ex.lie.cce(&c).unwrap();
        assert!(check_lie_twisting(&tau, &c, sh.differential(), &ex.lie).unwrap().ok());
        if ex.name == "abelian" {
            assert!(sh.partial().is_zero());
        } else {
            assert_eq!(sh.partial().arity(), 2);
        }
    }
}

#[test]
fn poincare_small_cases() {
    let l = free(&[("x", 1), ("y", 2)], 3);
    let s = SymCoalgebra::new("S", l.module(), 3).unwrap();
    let e = poincare_symmetrization(&l, &s).unwrap();
    let x = l.letter(0);
    let y = l.letter(1);
    let t = l.tensor();
    let sx = s.generator_word(x).unwrap();
    assert_eq!(e.column(sx), l.expansion(x));
    // e(xy) = ½(xy + (-1)^{|x||y|} yx)
    let sxy = s.index_of_word(&[x, y]).unwrap();
    let txy = t.index_of_word(&[0, 1]).unwrap();
    let tyx = t.index_of_word(&[1, 0]).unwrap();
    assert_eq!(
        e.column(sxy),
        &[(txy, qf(1, 2)), (tyx, qf(1, 2))].into_iter().collect::<Vector>()
    );
    let report = PoincareReport::check(&l, &s, &e, None).unwrap();
    assert!(report.ok(), "{report:?}");
}

#[test]
fn poincare_rank_two_weight_three() {
    for degs in [(0, 0), (1, 1), (1, 2)] {
        let l = free(&[("x", degs.0), ("y", degs.1)], 3);
        let s = SymCoalgebra::new("S", l.module(), 3).unwrap();
        let e = poincare_symmetrization(&l, &s).unwrap();
        let report = PoincareReport::check(&l, &s, &e, None).unwrap();
        assert!(report.ok(), "{degs:?}: {report:?}");
    }
}
