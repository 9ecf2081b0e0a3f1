//! Permutations, Koszul signs and signed unshuffles.

use crate::error::{arg, Result};

/// A permutation of `0..n`, stored by images.
///
/// Acting on a sequence `x_0 .. x_{n-1}`, it produces the rearrangement
/// `x_{p(0)} .. x_{p(n-1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return arg(format!("{images:?} is not a permutation"));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From images written on `1..=n`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return arg("one-based permutation contains 0");
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return arg("composing permutations of different sizes");
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    pub fn parity_odd(&self) -> bool {
        let mut odd = false;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    odd = !odd;
                }
            }
        }
        odd
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation {
                    images: cur.clone(),
                });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

/// Koszul sign of rearranging `x_0 .. x_{n-1}` (with the given degrees) into
/// `x_{p(0)} .. x_{p(n-1)}`: every pair of elements that cross contributes
/// `(-1)^{|a||b|}`. Returns `true` when the sign is negative.
pub fn koszul_odd(p: &Permutation, degrees: &[i32]) -> Result<bool> {
    if degrees.len() != p.len() {
        return arg(format!(
            "koszul sign: {} degrees for a permutation of {} elements",
            degrees.len(),
            p.len()
        ));
    }
    Ok(koszul_odd_unchecked(p.images(), degrees))
}

pub fn koszul_sign(p: &Permutation, degrees: &[i32]) -> Result<i32> {
    Ok(if koszul_odd(p, degrees)? { -1 } else { 1 })
}

pub(crate) fn koszul_odd_unchecked(images: &[usize], degrees: &[i32]) -> bool {
    let mut odd = false;
    for i in 0..images.len() {
        if degrees[images[i]] % 2 == 0 {
            continue;
        }
        for j in i + 1..images.len() {
            if images[i] > images[j] && degrees[images[j]] % 2 != 0 {
                odd = !odd;
            }
        }
    }
    odd
}

/// An unshuffle of positions `0..n` into `k` ordered blocks, each block
/// keeping the original relative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unshuffle {
    pub blocks: Vec<Vec<usize>>,
    /// Koszul sign of moving the elements into block order.
    pub odd: bool,
}

/// All unshuffles of `n` elements into `k` ordered blocks. Blocks may be
/// empty only when `allow_empty` is set.
pub fn unshuffles(degrees: &[i32], k: usize, allow_empty: bool) -> Vec<Unshuffle> {
    let n = degrees.len();
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Unshuffle {
                blocks: Vec::new(),
                odd: false,
            });
        }
        return out;
    }
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (pos, &b) in assign.iter().enumerate() {
            blocks[b].push(pos);
        }
        if allow_empty || blocks.iter().all(|b| !b.is_empty()) {
            let images: Vec<usize> = blocks.iter().flatten().copied().collect();
            let odd = koszul_odd_unchecked(&images, degrees);
            out.push(Unshuffle { blocks, odd });
        }
        // odometer increment, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
        }
    }
}
