//! The JSON problem file and its translation into library objects.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::canonical::LieExample;
use crate::complexes::{ChainComplex, Contraction};
use crate::error::{Error, Result};
use crate::exactalg::map::GradedMap;
use crate::exactalg::module::GradedModule;
use crate::exactalg::rational::{format_rational, parse_rational, Q};
use crate::exactalg::tensor::suspend;
use crate::freelie::DgLie;
use crate::symcoalg::{Coderivation, ShStructure, SymCoalgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: i32,
}

/// A graded basis with a differential given as `[source, target, coefficient]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexData {
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub d: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionData {
    pub nabla: Vec<[String; 3]>,
    pub pi: Vec<[String; 3]>,
    #[serde(default)]
    pub h: Vec<[String; 3]>,
}

/// Either structure constants `[a, b, c, k]` (`[a,b]` has `k` on `c`) or
/// corestrictions `[word, generator, k]` over `S^c[sg]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureData {
    Lie(Vec<[String; 4]>),
    Sh(Vec<[String; 3]>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub max_weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_window: Option<[i32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub g: ComplexData,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ComplexData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionData>,
    pub structure: StructureData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Truncation>,
}

pub const DEFAULT_MAX_WEIGHT: u32 = 4;

/// The objects a problem file describes. Axioms are checked separately by
/// [`Problem::lie`] and [`Problem::sh`].
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub g: ChainComplex,
    pub contraction: Contraction,
}

impl ProblemFile {
    /// Parses JSON; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let p: ProblemFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        let problems = p.schema_violations();
        if !problems.is_empty() {
            return Err(Error::Parse(format!("schema violations:\n  {}", problems.join("\n  "))));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        super::report::to_compact_json(self)
    }

    pub fn max_weight(&self) -> u32 {
        self.truncation.as_ref().map_or(DEFAULT_MAX_WEIGHT, |t| t.max_weight)
    }

    /// Every undeclared label, duplicate or malformed coefficient.
    pub fn schema_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let labels = |c: &ComplexData, name: &str, out: &mut Vec<String>| -> BTreeSet<String> {
            let mut seen = BTreeSet::new();
            for b in &c.basis {
                if !seen.insert(b.label.clone()) {
                    out.push(format!("{name}: duplicate label {:?}", b.label));
                }
            }
            seen
        };
        let coeff = |k: &str, at: &str, out: &mut Vec<String>| {
            if parse_rational(k).is_err() {
                out.push(format!("{at}: coefficient {k:?} is not a rational p/q"));
            }
        };
        let check = |t: &[String; 3], s: &BTreeSet<String>, tg: &BTreeSet<String>, at: &str, out: &mut Vec<String>| {
            if !s.contains(&t[0]) {
                out.push(format!("{at}: undeclared label {:?}", t[0]));
            }
            if !tg.contains(&t[1]) {
                out.push(format!("{at}: undeclared label {:?}", t[1]));
            }
            coeff(&t[2], at, out);
        };
        let g = labels(&self.g, "g", &mut out);
        for t in &self.g.d {
            check(t, &g, &g, "g.d", &mut out);
        }
        match (&self.m, &self.contraction) {
            (Some(m), Some(c)) => {
                let ml = labels(m, "M", &mut out);
                for t in &m.d {
                    check(t, &ml, &ml, "M.d", &mut out);
                }
                for t in &c.nabla {
                    check(t, &ml, &g, "contraction.nabla", &mut out);
                }
                for t in &c.pi {
                    check(t, &g, &ml, "contraction.pi", &mut out);
                }
                for t in &c.h {
                    check(t, &g, &g, "contraction.h", &mut out);
                }
            }
            (None, None) => {}
            (Some(_), None) => out.push("M is given without a contraction".into()),
            (None, Some(_)) => out.push("a contraction is given without M".into()),
        }
        match &self.structure {
            StructureData::Lie(consts) => {
                for [a, b, c, k] in consts {
                    for l in [a, b, c] {
                        if !g.contains(l) {
                            out.push(format!("structure.lie: undeclared label {l:?}"));
                        }
                    }
                    coeff(k, "structure.lie", &mut out);
                }
            }
            StructureData::Sh(lams) => {
                for [w, x, k] in lams {
                    for part in w.split('·') {
                        if !part.strip_prefix('s').is_some_and(|l| g.contains(l)) {
                            out.push(format!("structure.sh: word {w:?} has an undeclared letter {part:?}"));
                        }
                    }
                    if !x.strip_prefix('s').is_some_and(|l| g.contains(l)) {
                        out.push(format!("structure.sh: undeclared generator {x:?}"));
                    }
                    coeff(k, "structure.sh", &mut out);
                }
            }
        }
        if let Some(t) = &self.truncation {
            if t.max_weight < 2 {
                out.push("truncation.max_weight must be at least 2".into());
            }
            if let Some([lo, hi]) = t.degree_window {
                if lo > hi {
                    out.push(format!("truncation.degree_window [{lo}, {hi}] is empty"));
                }
            }
        }
        out
    }

    /// Builds the complexes and the contraction; the contraction axioms are
    /// checked here.
    pub fn build(&self) -> Result<Problem> {
        let g = complex(&self.g, "g")?;
        let contraction = match (&self.m, &self.contraction) {
            (Some(m), Some(c)) => {
                let m = complex(m, "M")?;
                let (mm, gm) = (m.module().clone(), g.module().clone());
                Contraction::new(
                    m,
                    g.clone(),
                    map(&mm, &gm, 0, &c.nabla)?,
                    map(&gm, &mm, 0, &c.pi)?,
                    map(&gm, &gm, 1, &c.h)?,
                )?
            }
            _ => Contraction::identity(&g),
        };
        Ok(Problem {
            file: self.clone(),
            g,
            contraction,
        })
    }

    /// A problem file describing a worked example.
    pub fn from_example(ex: &LieExample) -> Self {
        let complex_data = |c: &ChainComplex| ComplexData {
            basis: c
                .module()
                .basis()
                .iter()
                .map(|b| BasisEntry {
                    label: b.label.clone(),
                    degree: b.degree,
                })
                .collect(),
            d: triples(c.d()),
        };
        let c = &ex.contraction;
        let identity = c.small() == c.big() && c.h().is_zero();
        let consts = ex
            .lie
            .constants()
            .expect("example brackets")
            .into_iter()
            .map(|(a, b, c, k)| [a, b, c, format_rational(&k)])
            .collect();
        ProblemFile {
            g: complex_data(ex.lie.complex()),
            m: (!identity).then(|| complex_data(c.small())),
            contraction: (!identity).then(|| ContractionData {
                nabla: triples(c.nabla()),
                pi: triples(c.pi()),
                h: triples(c.h()),
            }),
            structure: StructureData::Lie(consts),
            truncation: Some(Truncation {
                max_weight: DEFAULT_MAX_WEIGHT,
                degree_window: None,
            }),
        }
    }
}

impl Problem {
    /// The dg Lie algebra of a `lie` structure, axioms checked.
    pub fn lie(&self) -> Result<DgLie> {
        match &self.file.structure {
            StructureData::Lie(consts) => {
                let consts = consts
                    .iter()
                    .map(|[a, b, c, k]| Ok((a.clone(), b.clone(), c.clone(), parse_rational(k)?)))
                    .collect::<Result<Vec<_>>>()?;
                DgLie::new(self.g.clone(), &consts)
            }
            StructureData::Sh(_) => Err(Error::Argument("the problem has an sh structure, not a Lie bracket".into())),
        }
    }

    /// The sh structure on `S^c[sg]` truncated at `max_weight`; a `lie`
    /// structure is turned into its CCE coderivation.
    pub fn sh(&self, max_weight: u32) -> Result<ShStructure> {
        let sg = Arc::new(suspend(self.g.module()));
        let coalg = SymCoalgebra::new("S(sg)", &sg, max_weight)?.shared();
        match &self.file.structure {
            StructureData::Lie(_) => Ok(self.lie()?.cce(&coalg)?.0),
            StructureData::Sh(lams) => {
                let mut triples = Vec::new();
                for [w, x, k] in lams {
                    if coalg.module().index_of(w).is_none() {
                        if w.split('·').count() > max_weight as usize {
                            continue;
                        }
                        return Err(Error::Argument(format!(
                            "structure.sh: {w:?} is not a basis word of S^c[sg] (letters must be sorted as in the basis, odd letters not repeated)"
                        )));
                    }
                    triples.push((w.clone(), x.clone(), parse_rational(k)?));
                }
                ShStructure::new(self.g.clone(), Coderivation::from_triples(&coalg, &triples)?)
            }
        }
    }

    pub fn is_strict(&self) -> bool {
        matches!(self.file.structure, StructureData::Lie(_))
    }
}

fn complex(c: &ComplexData, name: &str) -> Result<ChainComplex> {
    let pairs: Vec<(&str, i32)> = c.basis.iter().map(|b| (b.label.as_str(), b.degree)).collect();
    let m = GradedModule::from_pairs(name, &pairs)?.shared();
    ChainComplex::new(map(&m, &m, -1, &c.d)?)
}

fn map(s: &Arc<GradedModule>, t: &Arc<GradedModule>, degree: i32, entries: &[[String; 3]]) -> Result<GradedMap> {
    let triples = entries
        .iter()
        .map(|[a, b, k]| Ok((a.clone(), b.clone(), parse_rational(k)?)))
        .collect::<Result<Vec<(String, String, Q)>>>()?;
    GradedMap::from_triples(s, t, degree, &triples)
}

/// A map as `[source, target, coefficient]` triples in basis order.
pub fn triples(f: &GradedMap) -> Vec<[String; 3]> {
    f.triples()
        .into_iter()
        .map(|(a, b, k)| [a, b, format_rational(&k)])
        .collect()
}
