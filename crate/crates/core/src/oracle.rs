//! Brute-force tree formula for brackets transferred from a dg Lie algebra,
//! kept independent of the coalgebra machinery so it can check it.
//!
//! Working with suspended elements, the transferred `λ_n(y_1⋯y_n)` is
//! `Σ_σ ε(σ) Σ_T (½)^{n-1} T(y_σ1, …, y_σn)` over permutations and planar
//! binary trees `T`. Leaves apply `∇`, inner vertices the bracket
//! `b(sa, sb) = (-1)^{|a|+1} s[a,b]`, inner edges `h` and the root `π`.
//! Every proper subtree together with its edge has degree 0, so only the
//! permutation contributes a Koszul sign.

use num_traits::One;

use crate::complexes::Contraction;
use crate::error::{Error, Result};
use crate::exactalg::map::{add_scaled, unit_vector, Vector};
use crate::exactalg::rational::{qf, sign_q, Q};
use crate::exactalg::sign::{koszul_odd, Permutation};
use crate::freelie::DgLie;

#[derive(Clone, Debug)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>, usize),
}

fn planar_trees(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in planar_trees(k) {
            for r in planar_trees(n - k) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r), k));
            }
        }
    }
    out
}

struct Ctx<'a> {
    c: &'a Contraction,
    g: &'a DgLie,
}

impl Ctx<'_> {
    /// Value in `sg`, stored by the index of the desuspended basis element.
    fn eval(&self, t: &Tree, leaves: &[usize]) -> Result<Vector> {
        match t {
            Tree::Leaf => Ok(self.c.nabla().apply(&unit_vector(leaves[0]))),
            Tree::Node(l, r, k) => {
                let u = self.edge(l, &leaves[..*k])?;
                let v = self.edge(r, &leaves[*k..])?;
                let gm = self.g.complex().module();
                let mut out = Vector::new();
                for (&a, x) in &u {
                    for (&b, y) in &v {
                        let s = sign_q((gm.degree(a) + 1) % 2 != 0) * x * y;
                        add_scaled(&mut out, &s, &self.g.bracket(a, b)?);
                    }
                }
                Ok(out)
            }
        }
    }

    fn edge(&self, t: &Tree, leaves: &[usize]) -> Result<Vector> {
        let v = self.eval(t, leaves)?;
        Ok(match t {
            Tree::Leaf => v,
            Tree::Node(..) => self.c.h().apply(&v),
        })
    }
}

/// Transferred `λ_n` on the word `x_{i_1}⋯x_{i_n}` of suspended basis
/// elements of `M`, as a vector over the basis of `M`.
pub fn tree_sum(c: &Contraction, g: &DgLie, word: &[usize]) -> Result<Vector> {
    let n = word.len();
    if n < 2 {
        return Err(Error::Argument("tree formula needs at least two inputs".into()));
    }
    if c.big() != g.complex() {
        return Err(Error::Argument("contraction does not end in the Lie algebra".into()));
    }
    let m = c.small().module();
    let sdeg: Vec<i32> = word.iter().map(|&i| m.degree(i) + 1).collect();
    let trees = planar_trees(n);
    let weight = (0..n - 1).fold(Q::one(), |acc, _| acc * qf(1, 2));
    let ctx = Ctx { c, g };
    let mut out = Vector::new();
    for p in Permutation::all(n) {
        let eps = sign_q(koszul_odd(&p, &sdeg)?);
        let leaves: Vec<usize> = p.images().iter().map(|&j| word[j]).collect();
        for t in &trees {
            let v = ctx.eval(t, &leaves)?;
            add_scaled(&mut out, &(&eps * &weight), &c.pi().apply(&v));
        }
    }
    Ok(out)
}
