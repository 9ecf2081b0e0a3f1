//! Free graded Lie algebras with a super-Lyndon basis.
//!
//! Basis: standard bracketings `b(w)` of Lyndon words `w`, together with
//! squares `[b(w), b(w)]` of Lyndon words of odd degree. Elements are stored
//! by their expansion in the tensor algebra and recovered by exact row
//! reduction per (degree, weight).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::tensor_alg::TensorAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::linalg::{rank_of, Echelon};
use crate::exactalg::map::{add_entry, Vector};
use crate::exactalg::module::{BasisElement, GradedModule};

#[derive(Clone, Debug)]
enum Tree {
    Letter(usize),
    Bracket(Box<Tree>, Box<Tree>),
}

pub struct FreeLie {
    tensor: Arc<TensorAlgebra>,
    words: Vec<Vec<usize>>,
    trees: Vec<Tree>,
    expansions: Vec<Vector>,
    module: Arc<GradedModule>,
    pieces: HashMap<(i32, u32), (Echelon, Vec<usize>)>,
    letters: Vec<usize>,
    cache: RwLock<HashMap<(usize, usize), Vector>>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeLie({}, dim {})", self.module.name(), self.module.dim())
    }
}

fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

fn standard_tree(w: &[usize]) -> Tree {
    if w.len() == 1 {
        return Tree::Letter(w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is Lyndon");
    Tree::Bracket(
        Box::new(standard_tree(&w[..split])),
        Box::new(standard_tree(&w[split..])),
    )
}

impl FreeLie {
    /// The free Lie algebra on the generators of `tensor`, truncated at its
    /// maximal weight.
    pub fn new(name: &str, tensor: &Arc<TensorAlgebra>) -> Result<Self> {
        let g = tensor.generators().clone();
        let n = tensor.max_weight();
        let deg = |w: &[usize]| w.iter().map(|&i| g.degree(i)).sum::<i32>();
        let wt = |w: &[usize]| w.iter().map(|&i| g.weight(i)).sum::<u32>();

        let mut entries: Vec<(Vec<usize>, Tree)> = Vec::new();
        for i in 0..tensor.dim() {
            let w = tensor.word(i);
            if !is_lyndon(w) {
                continue;
            }
            let t = standard_tree(w);
            if deg(w) % 2 != 0 && 2 * wt(w) <= n {
                let mut ww = w.to_vec();
                ww.extend_from_slice(w);
                entries.push((ww, Tree::Bracket(Box::new(t.clone()), Box::new(t.clone()))));
            }
            entries.push((w.to_vec(), t));
        }
        entries.sort_by(|(a, _), (b, _)| (deg(a), wt(a), a).cmp(&(deg(b), wt(b), b)));

        let mut memo: HashMap<String, (Vector, i32)> = HashMap::new();
        let mut expansions = Vec::with_capacity(entries.len());
        let mut basis = Vec::with_capacity(entries.len());
        for (w, t) in &entries {
            let (v, _) = expand(t, tensor, &mut memo)?;
            expansions.push(v);
            basis.push(BasisElement {
                label: tree_label(t, &g),
                degree: deg(w),
                weight: wt(w),
            });
        }
        let module = GradedModule::new(name, basis)?.shared();

        let mut pieces: HashMap<(i32, u32), (Echelon, Vec<usize>)> = HashMap::new();
        for (i, v) in expansions.iter().enumerate() {
            let key = (module.degree(i), module.weight(i));
            let (e, ids) = pieces.entry(key).or_insert_with(|| (Echelon::new(), Vec::new()));
            if v.is_empty() || e.insert(v).is_some() {
                return Err(Error::Internal(format!(
                    "free Lie basis element {} is dependent",
                    module.label(i)
                )));
            }
            ids.push(i);
        }
        let letters = (0..g.dim())
            .map(|gi| entries.iter().position(|(w, _)| w == &vec![gi]).expect("letters are Lyndon"))
            .collect();
        Ok(FreeLie {
            tensor: tensor.clone(),
            trees: entries.iter().map(|(_, t)| t.clone()).collect(),
            words: entries.into_iter().map(|(w, _)| w).collect(),
            expansions,
            module,
            pieces,
            letters,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Image of basis element `i` under the Lie morphism determined by the
    /// images of the letters, given the target bracket.
    pub fn evaluate(
        &self,
        i: usize,
        letter: &dyn Fn(usize) -> Vector,
        bracket: &dyn Fn(&Vector, &Vector) -> Result<Vector>,
    ) -> Result<Vector> {
        fn go(
            t: &Tree,
            letter: &dyn Fn(usize) -> Vector,
            bracket: &dyn Fn(&Vector, &Vector) -> Result<Vector>,
        ) -> Result<Vector> {
            match t {
                Tree::Letter(g) => Ok(letter(*g)),
                Tree::Bracket(a, b) => {
                    let x = go(a, letter, bracket)?;
                    if x.is_empty() {
                        return Ok(x);
                    }
                    bracket(&x, &go(b, letter, bracket)?)
                }
            }
        }
        go(&self.trees[i], letter, bracket)
    }

    pub fn tensor(&self) -> &Arc<TensorAlgebra> {
        &self.tensor
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn max_weight(&self) -> u32 {
        self.tensor.max_weight()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn expansion(&self, i: usize) -> &Vector {
        &self.expansions[i]
    }

    /// Basis index of the generator `g`.
    pub fn letter(&self, g: usize) -> usize {
        self.letters[g]
    }

    /// Expansion in the tensor algebra of a combination of basis elements.
    pub fn to_tensor(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, c) in v {
            for (&k, x) in &self.expansions[i] {
                add_entry(&mut out, k, &(c * x));
            }
        }
        out
    }

    /// Coordinates of a tensor-algebra element in the Lie basis, or `None`
    /// if it is not a Lie element.
    pub fn try_express(&self, v: &Vector) -> Option<Vector> {
        let t = self.tensor.module();
        let mut parts: BTreeMap<(i32, u32), Vector> = BTreeMap::new();
        for (&k, c) in v {
            parts
                .entry((t.degree(k), t.weight(k)))
                .or_default()
                .insert(k, c.clone());
        }
        let mut out = Vector::new();
        for (key, part) in parts {
            let (e, ids) = self.pieces.get(&key)?;
            for (id, c) in e.coordinates(&part)? {
                add_entry(&mut out, ids[id], &c);
            }
        }
        Some(out)
    }

    pub fn express(&self, v: &Vector) -> Result<Vector> {
        self.try_express(v)
            .ok_or_else(|| Error::Internal("element of the tensor algebra is not a Lie element".into()))
    }

    pub fn bracket(&self, i: usize, j: usize) -> Result<Vector> {
        let weight = self.module.weight(i) + self.module.weight(j);
        if weight > self.max_weight() {
            return Err(Error::Truncation {
                weight,
                max: self.max_weight(),
            });
        }
        if let Some(v) = self.cache.read().expect("cache lock").get(&(i, j)) {
            return Ok(v.clone());
        }
        let c = self.tensor.commutator(
            &self.expansions[i],
            self.module.degree(i),
            &self.expansions[j],
            self.module.degree(j),
        )?;
        let v = self.express(&c)?;
        self.cache.write().expect("cache lock").insert((i, j), v.clone());
        Ok(v)
    }

    /// Rank of the left-normed brackets `[..[x_1,x_2],..,x_n]` over all words
    /// of the given degree and weight; equals the basis count in that
    /// bidegree.
    pub fn spanning_rank(&self, degree: i32, weight: u32) -> Result<usize> {
        let t = self.tensor.module();
        let g = self.tensor.generators();
        let mut spans = Vec::new();
        for k in 0..self.tensor.dim() {
            if t.degree(k) != degree || t.weight(k) != weight {
                continue;
            }
            let w = self.tensor.word(k);
            let mut acc = self.tensor.letter_vector(w[0]);
            let mut d = g.degree(w[0]);
            for &x in &w[1..] {
                acc = self.tensor.commutator(&acc, d, &self.tensor.letter_vector(x), g.degree(x))?;
                d += g.degree(x);
            }
            spans.push(acc);
        }
        Ok(rank_of(&spans))
    }

    /// Number of basis elements in the given degree and weight.
    pub fn count(&self, degree: i32, weight: u32) -> usize {
        self.pieces.get(&(degree, weight)).map_or(0, |(_, ids)| ids.len())
    }

    /// All (degree, weight) pairs present in the tensor algebra.
    pub fn bidegrees(&self) -> Vec<(i32, u32)> {
        let t = self.tensor.module();
        let mut out: Vec<(i32, u32)> = (0..t.dim()).map(|k| (t.degree(k), t.weight(k))).collect();
        out.sort();
        out.dedup();
        out
    }
}

fn expand(t: &Tree, tensor: &TensorAlgebra, memo: &mut HashMap<String, (Vector, i32)>) -> Result<(Vector, i32)> {
    let key = format!("{t:?}");
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let out = match t {
        Tree::Letter(g) => (tensor.letter_vector(*g), tensor.generators().degree(*g)),
        Tree::Bracket(a, b) => {
            let (va, da) = expand(a, tensor, memo)?;
            let (vb, db) = expand(b, tensor, memo)?;
            (tensor.commutator(&va, da, &vb, db)?, da + db)
        }
    };
    memo.insert(key, out.clone());
    Ok(out)
}

fn tree_label(t: &Tree, g: &GradedModule) -> String {
    match t {
        Tree::Letter(i) => g.label(*i).to_string(),
        Tree::Bracket(a, b) => format!("[{},{}]", tree_label(a, g), tree_label(b, g)),
    }
}
