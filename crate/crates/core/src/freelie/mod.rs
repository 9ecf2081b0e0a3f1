//! Dg Lie algebras, free graded Lie algebras inside tensor algebras, CCE
//! coalgebras and the Poincaré symmetrization map.

mod lyndon;
mod poincare;
mod tensor_alg;

pub use lyndon::FreeLie;
pub use poincare::{poincare_symmetrization, PoincareReport};
pub use tensor_alg::{DgAlgebra, TensorAlgebra};

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::exactalg::map::{add_entry, add_scaled, scaled, GradedMap, Vector};
use crate::exactalg::module::GradedModule;
use crate::exactalg::rational::{sign_q, Q};
use crate::symcoalg::{bracket_corestriction, BilinearTarget, Coderivation, ShStructure, SymCoalgebra};

#[derive(Clone, Debug)]
enum Bracket {
    Table(Arc<HashMap<(usize, usize), Vector>>),
    Free(Arc<FreeLie>),
}

/// A dg Lie algebra: a chain complex with a graded antisymmetric bracket of
/// degree 0 satisfying Jacobi, for which `d` is a derivation.
#[derive(Clone, Debug)]
pub struct DgLie {
    complex: ChainComplex,
    bracket: Bracket,
}

impl DgLie {
    /// From structure constants `(a, b, c, k)` meaning `[a, b]` has
    /// coefficient `k` on `c`. Missing reversed pairs are filled in by
    /// antisymmetry; all axioms are checked.
    pub fn new(complex: ChainComplex, constants: &[(String, String, String, Q)]) -> Result<Self> {
        let m = complex.module().clone();
        let idx = |l: &str| {
            m.index_of(l)
                .ok_or_else(|| Error::Argument(format!("unknown label {l:?} in bracket")))
        };
        let mut given: HashMap<(usize, usize), Vector> = HashMap::new();
        for (a, b, c, k) in constants {
            let (i, j, l) = (idx(a)?, idx(b)?, idx(c)?);
            if m.degree(l) != m.degree(i) + m.degree(j) && !k.is_zero() {
                return Err(Error::ContractViolation(format!(
                    "bracket [{a},{b}] has degree {} but {c} has degree {}",
                    m.degree(i) + m.degree(j),
                    m.degree(l)
                )));
            }
            add_entry(given.entry((i, j)).or_default(), l, k);
        }
        let mut table = given.clone();
        for (&(i, j), v) in &given {
            let s = -sign_q((m.degree(i) * m.degree(j)) % 2 != 0);
            let mirrored = scaled(v, &s);
            match given.get(&(j, i)) {
                Some(w) if *w != mirrored => {
                    return Err(Error::ContractViolation(format!(
                        "bracket violates antisymmetry on [{},{}]",
                        m.label(i),
                        m.label(j)
                    )))
                }
                Some(_) => {}
                None => {
                    table.insert((j, i), mirrored);
                }
            }
        }
        table.retain(|_, v| !v.is_empty());
        let lie = DgLie {
            complex,
            bracket: Bracket::Table(Arc::new(table)),
        };
        lie.check_axioms()?;
        Ok(lie)
    }

    pub fn abelian(complex: ChainComplex) -> Self {
        DgLie {
            complex,
            bracket: Bracket::Table(Arc::new(HashMap::new())),
        }
    }

    /// A free Lie algebra with a differential, taken on trust: the caller
    /// guarantees `d` is a square-zero derivation.
    pub fn from_free(free: Arc<FreeLie>, d: GradedMap) -> Result<Self> {
        Ok(DgLie {
            complex: ChainComplex::new(d)?,
            bracket: Bracket::Free(free),
        })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn free(&self) -> Option<&Arc<FreeLie>> {
        match &self.bracket {
            Bracket::Free(f) => Some(f),
            Bracket::Table(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.complex.module().dim()
    }

    pub fn bracket(&self, i: usize, j: usize) -> Result<Vector> {
        match &self.bracket {
            Bracket::Table(t) => Ok(t.get(&(i, j)).cloned().unwrap_or_default()),
            Bracket::Free(f) => f.bracket(i, j),
        }
    }

    pub fn bracket_vectors(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        BilinearTarget::product_vectors(self, a, b)
    }

    /// Structure constants `(a, b, c, k)` for `a < b` in basis order, plus
    /// squares.
    pub fn constants(&self) -> Result<Vec<(String, String, String, Q)>> {
        let m = self.complex.module();
        let mut out = Vec::new();
        for i in 0..m.dim() {
            for j in i..m.dim() {
                for (l, k) in self.bracket(i, j)? {
                    out.push((m.label(i).into(), m.label(j).into(), m.label(l).into(), k));
                }
            }
        }
        Ok(out)
    }

    /// Checks antisymmetry, Jacobi and the derivation property, naming the
    /// first failing basis elements.
    pub fn check_axioms(&self) -> Result<()> {
        let m = self.complex.module();
        let n = m.dim();
        let deg = |i: usize| m.degree(i);
        let fail = |what: &str, els: &[usize]| {
            let names: Vec<&str> = els.iter().map(|&i| m.label(i)).collect();
            Err(Error::ContractViolation(format!("{what} fails on ({})", names.join(", "))))
        };
        for i in 0..n {
            for j in 0..n {
                let s = -sign_q((deg(i) * deg(j)) % 2 != 0);
                if self.bracket(j, i)? != scaled(&self.bracket(i, j)?, &s) {
                    return fail("antisymmetry", &[i, j]);
                }
            }
        }
        if let Some([i, j, k]) = jacobi_failure(m, &|i, j| self.bracket(i, j))? {
            return fail("Jacobi identity", &[i, j, k]);
        }
        let one = |i: usize| {
            let mut v = Vector::new();
            v.insert(i, Q::one());
            v
        };
        let d = self.complex.d();
        for i in 0..n {
            for j in 0..n {
                // d[i,j] = [di,j] + (-1)^{|i|}[i,dj]
                let lhs = d.apply(&self.bracket(i, j)?);
                let mut rhs = self.bracket_vectors(d.column(i), &one(j))?;
                add_scaled(&mut rhs, &sign_q(deg(i) % 2 != 0), &self.bracket_vectors(&one(i), d.column(j))?);
                if lhs != rhs {
                    return fail("derivation property of d", &[i, j]);
                }
            }
        }
        Ok(())
    }

    /// Universal twisting cochain `τ_h: S^c[sh] → h`, `sx ↦ x`, for a
    /// coalgebra generated by the suspension of this Lie algebra.
    pub fn universal_cochain(&self, coalg: &SymCoalgebra) -> Result<GradedMap> {
        let m = self.complex.module();
        check_suspension(coalg.generators(), m)?;
        let cols = (0..coalg.dim())
            .map(|i| {
                let w = coalg.word(i);
                let mut v = Vector::new();
                if w.len() == 1 {
                    v.insert(w[0], Q::one());
                }
                v
            })
            .collect();
        GradedMap::from_columns(coalg.module(), m, -1, cols)
    }

    /// The CCE coalgebra `C[h] = S^c[sh]` with the perturbation `∂` encoding
    /// the bracket, and the universal twisting cochain.
    pub fn cce(&self, coalg: &Arc<SymCoalgebra>) -> Result<(ShStructure, GradedMap)> {
        check_suspension(coalg.generators(), self.complex.module())?;
        let lambda = bracket_corestriction(coalg, &|i, j| self.bracket(i, j))?;
        let partial = Coderivation::from_corestriction(coalg, lambda)?;
        let sh = ShStructure::new(self.complex.clone(), partial)?;
        let tau = self.universal_cochain(coalg)?;
        Ok((sh, tau))
    }
}

impl BilinearTarget for DgLie {
    fn module(&self) -> &Arc<GradedModule> {
        self.complex.module()
    }

    fn differential(&self) -> &GradedMap {
        self.complex.d()
    }

    fn product(&self, i: usize, j: usize) -> Result<Vector> {
        self.bracket(i, j)
    }
}

/// First triple `(i, j, k)` violating
/// `[i,[j,k]] = [[i,j],k] + (-1)^{|i||j|}[j,[i,k]]` for a bracket given by a
/// function on basis indices.
pub fn jacobi_failure(
    m: &GradedModule,
    bracket: &dyn Fn(usize, usize) -> Result<Vector>,
) -> Result<Option<[usize; 3]>> {
    let n = m.dim();
    let apply = |a: &Vector, b: &Vector| -> Result<Vector> {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                add_scaled(&mut out, &(x * y), &bracket(i, j)?);
            }
        }
        Ok(out)
    };
    let one = |i: usize| {
        let mut v = Vector::new();
        v.insert(i, Q::one());
        v
    };
    for i in 0..n {
        for j in 0..n {
            let ij = bracket(i, j)?;
            for k in 0..n {
                let lhs = apply(&one(i), &bracket(j, k)?)?;
                let mut rhs = apply(&ij, &one(k))?;
                let s = sign_q((m.degree(i) * m.degree(j)) % 2 != 0);
                add_scaled(&mut rhs, &s, &apply(&one(j), &bracket(i, k)?)?);
                if lhs != rhs {
                    return Ok(Some([i, j, k]));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn check_suspension(gens: &GradedModule, base: &GradedModule) -> Result<()> {
    if gens.dim() != base.dim() || (0..base.dim()).any(|i| gens.degree(i) != base.degree(i) + 1) {
        return Err(Error::Argument(format!(
            "{} is not the suspension of {}",
            gens.name(),
            base.name()
        )));
    }
    Ok(())
}

/// Suspension of a Lie algebra's module with the weights used for
/// truncation carried over.
pub fn suspended_generators(lie: &DgLie) -> Arc<GradedModule> {
    Arc::new(crate::exactalg::tensor::suspend(lie.complex().module()))
}

#[cfg(test)]
mod tests;
