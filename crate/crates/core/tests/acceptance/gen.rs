//! Random valid inputs: contractions obtained by conjugating
//! `M ⊕ (acyclic pairs)` with a weight-compatible unitriangular change of
//! basis, perturbations obtained by conjugating the differential, and a
//! family of dg Lie algebras shaped like the Heisenberg-plus-pair example.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use shlie::canonical::LieExample;
use shlie::complexes::{ChainComplex, Contraction, Perturbation};
use shlie::exactalg::map::{GradedMap, Vector};
use shlie::exactalg::module::{BasisElement, GradedModule};
use shlie::exactalg::rational::{q, Q};
use shlie::freelie::DgLie;

pub const WINDOW: i32 = 5;

/// Sum of powers of a nilpotent map, i.e. `(Id - n)⁻¹`.
fn neumann(n: &GradedMap) -> GradedMap {
    let id = GradedMap::identity(n.source());
    let mut out = id.clone();
    let mut term = id;
    loop {
        term = n.compose(&term).unwrap();
        if term.is_zero() {
            return out;
        }
        out = out.add(&term).unwrap();
    }
}

/// Random `Id + N` with `N` mapping each element to earlier elements of the
/// same degree and weight at most `strict` below its own.
fn unitriangular(rng: &mut ChaCha8Rng, m: &Arc<GradedModule>, strict: bool) -> GradedMap {
    let cols: Vec<Vector> = (0..m.dim())
        .map(|j| {
            let mut v = Vector::new();
            v.insert(j, q(1));
            for i in 0..j {
                let ok = m.degree(i) == m.degree(j)
                    && if strict { m.weight(i) < m.weight(j) } else { m.weight(i) <= m.weight(j) };
                if ok && rng.gen_bool(0.5) {
                    let c = rng.gen_range(-2i64..=2);
                    if c != 0 {
                        v.insert(i, q(c));
                    }
                }
            }
            v
        })
        .collect();
    GradedMap::from_columns(m, m, 0, cols).unwrap()
}

pub struct RandomInput {
    pub contraction: Contraction,
    pub perturbation: Perturbation,
}

/// A contraction over degrees `lo..lo+WINDOW` with at most `max_dim`
/// elements per degree, and a weight-lowering perturbation of the big
/// complex.
pub fn random_input(rng: &mut ChaCha8Rng, lo: i32, max_dim: usize) -> RandomInput {
    let hi = lo + WINDOW;
    let mut dims = vec![0usize; WINDOW as usize];
    // (label, degree, weight, role) with role 0 = M, 1 = u, 2 = v
    let mut elems: Vec<(String, i32, u32, u8, usize)> = Vec::new();
    let mut pairs = 0;
    for k in lo..hi - 1 {
        let slot = (k - lo) as usize;
        let room = max_dim.saturating_sub(dims[slot].max(dims[slot + 1]));
        for _ in 0..rng.gen_range(0..=room.min(2)) {
            let w = rng.gen_range(1..=3);
            elems.push((format!("u{pairs}"), k, w, 1, pairs));
            elems.push((format!("v{pairs}"), k + 1, w, 2, pairs));
            dims[slot] += 1;
            dims[slot + 1] += 1;
            pairs += 1;
        }
    }
    let mut ms = 0;
    for k in lo..hi {
        let slot = (k - lo) as usize;
        for _ in 0..rng.gen_range(0..=(max_dim - dims[slot]).min(2)) {
            elems.push((format!("m{ms}"), k, rng.gen_range(1..=3), 0, ms));
            dims[slot] += 1;
            ms += 1;
        }
    }
    elems.sort_by_key(|e| (e.2, e.1, e.0.clone()));
    let big = GradedModule::new(
        "N",
        elems
            .iter()
            .map(|e| BasisElement { label: e.0.clone(), degree: e.1, weight: e.2 })
            .collect(),
    )
    .unwrap()
    .shared();
    let small_elems: Vec<_> = elems.iter().filter(|e| e.3 == 0).collect();
    let small = GradedModule::new(
        "M",
        small_elems
            .iter()
            .map(|e| BasisElement { label: e.0.clone(), degree: e.1, weight: e.2 })
            .collect(),
    )
    .unwrap()
    .shared();
    let idx = |l: &str| big.index_of(l).unwrap();
    let mut d = vec![Vector::new(); big.dim()];
    let mut h = vec![Vector::new(); big.dim()];
    for e in &elems {
        if e.3 == 2 {
            d[idx(&e.0)].insert(idx(&format!("u{}", e.4)), q(1));
            h[idx(&format!("u{}", e.4))].insert(idx(&e.0), q(1));
        }
    }
    let d = GradedMap::from_columns(&big, &big, -1, d).unwrap();
    let h = GradedMap::from_columns(&big, &big, 1, h).unwrap();
    let incl: Vec<Vector> = (0..small.dim())
        .map(|i| [(idx(small.label(i)), q(1))].into_iter().collect())
        .collect();
    let nabla = GradedMap::from_columns(&small, &big, 0, incl).unwrap();
    let mut proj = vec![Vector::new(); big.dim()];
    for i in 0..small.dim() {
        proj[idx(small.label(i))].insert(i, q(1));
    }
    let pi = GradedMap::from_columns(&big, &small, 0, proj).unwrap();

    let t = unitriangular(rng, &big, false);
    let t_inv = neumann(&GradedMap::identity(&big).sub(&t).unwrap());
    let conj = |f: &GradedMap| t.compose(f).unwrap().compose(&t_inv).unwrap();
    let big_cx = ChainComplex::new(conj(&d)).unwrap();
    let contraction = Contraction::new(
        ChainComplex::zero_differential(&small),
        big_cx.clone(),
        t.compose(&nabla).unwrap(),
        pi.compose(&t_inv).unwrap(),
        conj(&h),
    )
    .expect("conjugated contraction is valid");

    let k = unitriangular(rng, &big, true);
    let k_inv = neumann(&GradedMap::identity(&big).sub(&k).unwrap());
    let d2 = k.compose(big_cx.d()).unwrap().compose(&k_inv).unwrap();
    let perturbation = Perturbation::new(&big_cx, d2.sub(big_cx.d()).unwrap()).unwrap();
    RandomInput { contraction, perturbation }
}

fn q64(c: i64) -> Q {
    q(c)
}

/// Random member of the family `x, y: 1`, `z, u: 2`, `v: 3`, `w: 4`,
/// `dv = u`, with `[x,y], [x,x], [y,y] ∈ span(z, u)` and `[v,x], [v,y] ∈
/// span(w)`; every such choice is a dg Lie algebra. The contraction onto
/// `{x, y, z, w}` uses `∇z = z + γu`, `h(z) = -γv`, `h(u) = v`.
pub fn random_heisenberg(rng: &mut ChaCha8Rng) -> LieExample {
    let g = GradedModule::from_pairs(
        "g",
        &[("x", 1), ("y", 1), ("z", 2), ("u", 2), ("v", 3), ("w", 4)],
    )
    .unwrap()
    .shared();
    let d = GradedMap::from_triples(&g, &g, -1, &[("v".into(), "u".into(), q(1))]).unwrap();
    let cx = ChainComplex::new(d).unwrap();
    let mut c = |lo: i64, hi: i64| q64(rng.gen_range(lo..=hi));
    let mut consts = Vec::new();
    for (a, b) in [("x", "y"), ("x", "x"), ("y", "y")] {
        for t in ["z", "u"] {
            consts.push((a.to_string(), b.to_string(), t.to_string(), c(-2, 2)));
        }
    }
    for a in ["x", "y"] {
        consts.push(("v".to_string(), a.to_string(), "w".to_string(), c(-2, 2)));
    }
    // keep the ternary bracket alive
    consts[1].3 = c(1, 3);
    consts[6].3 = c(1, 2);
    let lie = DgLie::new(cx.clone(), &consts).expect("family satisfies the axioms");
    let m = GradedModule::from_pairs("M", &[("x", 1), ("y", 1), ("z", 2), ("w", 4)])
        .unwrap()
        .shared();
    let gamma = c(-2, 2);
    let tr = |v: &[(&str, &str, Q)]| -> Vec<(String, String, Q)> {
        v.iter().map(|(a, b, k)| (a.to_string(), b.to_string(), k.clone())).collect()
    };
    let nabla = GradedMap::from_triples(
        &m,
        &g,
        0,
        &tr(&[("x", "x", q(1)), ("y", "y", q(1)), ("z", "z", q(1)), ("z", "u", gamma.clone()), ("w", "w", q(1))]),
    )
    .unwrap();
    let pi = GradedMap::from_triples(
        &g,
        &m,
        0,
        &tr(&[("x", "x", q(1)), ("y", "y", q(1)), ("z", "z", q(1)), ("w", "w", q(1))]),
    )
    .unwrap();
    let h = GradedMap::from_triples(&g, &g, 1, &tr(&[("u", "v", q(1)), ("z", "v", -gamma)])).unwrap();
    let contraction =
        Contraction::new(ChainComplex::zero_differential(&m), cx, nabla, pi, h).expect("valid contraction");
    LieExample { name: "random_heisenberg", lie, contraction }
}

/// A contraction of `L = B ⊕ (acyclic pairs)` onto the given complex `B`,
/// conjugated by a random unitriangular change of basis of `L`.
pub fn enlarge(rng: &mut ChaCha8Rng, b: &ChainComplex) -> Contraction {
    let bm = b.module();
    let mut basis: Vec<BasisElement> = bm.basis().to_vec();
    let degs: Vec<i32> = (0..bm.dim()).map(|i| bm.degree(i)).collect();
    let lo = degs.iter().copied().min().unwrap_or(0);
    let pairs = rng.gen_range(1..=3);
    for k in 0..pairs {
        let deg = lo + rng.gen_range(0..WINDOW - 1);
        let weight = rng.gen_range(1..=3);
        basis.push(BasisElement { label: format!("p{k}"), degree: deg, weight });
        basis.push(BasisElement { label: format!("q{k}"), degree: deg + 1, weight });
    }
    basis.sort_by_key(|e| e.weight);
    let l = GradedModule::new("L", basis).unwrap().shared();
    let at = |label: &str| l.index_of(label).unwrap();
    let mut d = vec![Vector::new(); l.dim()];
    let mut h = vec![Vector::new(); l.dim()];
    let mut pi = vec![Vector::new(); l.dim()];
    let mut nabla = vec![Vector::new(); bm.dim()];
    for j in 0..bm.dim() {
        let lj = at(bm.label(j));
        d[lj] = b.d().column(j).iter().map(|(&i, c)| (at(bm.label(i)), c.clone())).collect();
        nabla[j].insert(lj, q(1));
        pi[lj].insert(j, q(1));
    }
    for k in 0..pairs {
        d[at(&format!("q{k}"))].insert(at(&format!("p{k}")), q(1));
        h[at(&format!("p{k}"))].insert(at(&format!("q{k}")), q(1));
    }
    let d = GradedMap::from_columns(&l, &l, -1, d).unwrap();
    let h = GradedMap::from_columns(&l, &l, 1, h).unwrap();
    let nabla = GradedMap::from_columns(bm, &l, 0, nabla).unwrap();
    let pi = GradedMap::from_columns(&l, bm, 0, pi).unwrap();
    let t = unitriangular(rng, &l, false);
    let t_inv = neumann(&GradedMap::identity(&l).sub(&t).unwrap());
    let conj = |f: &GradedMap| t.compose(f).unwrap().compose(&t_inv).unwrap();
    Contraction::new(
        b.clone(),
        ChainComplex::new(conj(&d)).unwrap(),
        t.compose(&nabla).unwrap(),
        pi.compose(&t_inv).unwrap(),
        conj(&h),
    )
    .expect("enlargement is a contraction")
}
