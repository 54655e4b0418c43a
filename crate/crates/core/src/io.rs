//! JSON structure files and deterministic report output.
//!
//! A pair file is an object with keys `name`, `elements`, `zero`, `one`,
//! `add`, `mul`, `tangible`, `a0` and optionally `negation`. Tables hold
//! element labels. A hyperstructure file replaces `add` by `hyperadd`, whose
//! cells are label arrays, and may give `hypernegation`; its `a0` is the set
//! `S₀` used for the power-set pair.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::congruence::Congruence;
use crate::constructions::{power_set_pair, ConstructionError};
use crate::hyper::{HyperError, HyperStructure};
use crate::pair::{NegationError, NegationMap, Pair, PairError};
use crate::structure::{Elem, FiniteStructure, Operations, StructureError};
use crate::verify::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown label `{label}` in {field}")]
    UnknownLabel { field: String, label: String },
    #[error("{field} has {found} entries, expected {expected}")]
    DimensionMismatch {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
}

/// Semantic failure when turning a parsed file into a pair.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("negation: {0}")]
    Negation(#[from] NegationError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

impl From<StructureError> for LoadError {
    fn from(e: StructureError) -> Self {
        LoadError::Pair(PairError::Structure(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
    pub tangible: Vec<String>,
    pub a0: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperFile {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub hyperadd: Vec<Vec<Vec<String>>>,
    pub mul: Vec<Vec<String>>,
    pub tangible: Vec<String>,
    pub a0: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypernegation: Option<Vec<String>>,
}

/// Either kind of structure file, told apart by the `hyperadd` key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureFile {
    Pair(PairFile),
    Hyper(HyperFile),
}

fn syntax(e: serde_json::Error) -> ParseError {
    ParseError::SyntaxError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

struct Labels<'a> {
    index: HashMap<&'a str, Elem>,
}

impl<'a> Labels<'a> {
    fn new(elements: &'a [String]) -> Result<Self, ParseError> {
        let mut index = HashMap::new();
        for (i, l) in elements.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(ParseError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Labels { index })
    }

    fn get(&self, field: &str, label: &str) -> Result<Elem, ParseError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| ParseError::UnknownLabel {
                field: field.to_string(),
                label: label.to_string(),
            })
    }

    fn list(&self, field: &str, labels: &[String]) -> Result<Vec<Elem>, ParseError> {
        labels.iter().map(|l| self.get(field, l)).collect()
    }

    fn table(&self, field: &str, rows: &[Vec<String>]) -> Result<Vec<Vec<Elem>>, ParseError> {
        let n = self.index.len();
        dims(field, rows.len(), n)?;
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                dims(&format!("{field}[{i}]"), row.len(), n)?;
                self.list(field, row)
            })
            .collect()
    }
}

fn dims(field: &str, found: usize, expected: usize) -> Result<(), ParseError> {
    if found == expected {
        Ok(())
    } else {
        Err(ParseError::DimensionMismatch {
            field: field.to_string(),
            expected,
            found,
        })
    }
}

/// Label-level check of a pair file; axioms are left to [`PairFile::to_pair`].
fn check_pair_file(f: &PairFile) -> Result<(), ParseError> {
    let l = Labels::new(&f.elements)?;
    l.get("zero", &f.zero)?;
    l.get("one", &f.one)?;
    l.table("add", &f.add)?;
    l.table("mul", &f.mul)?;
    l.list("tangible", &f.tangible)?;
    l.list("a0", &f.a0)?;
    if let Some(neg) = &f.negation {
        dims("negation", neg.len(), f.elements.len())?;
        l.list("negation", neg)?;
    }
    Ok(())
}

fn check_hyper_file(f: &HyperFile) -> Result<(), ParseError> {
    let l = Labels::new(&f.elements)?;
    let n = f.elements.len();
    l.get("zero", &f.zero)?;
    l.get("one", &f.one)?;
    l.table("mul", &f.mul)?;
    dims("hyperadd", f.hyperadd.len(), n)?;
    for (i, row) in f.hyperadd.iter().enumerate() {
        dims(&format!("hyperadd[{i}]"), row.len(), n)?;
        for cell in row {
            l.list("hyperadd", cell)?;
        }
    }
    l.list("tangible", &f.tangible)?;
    l.list("a0", &f.a0)?;
    if let Some(neg) = &f.hypernegation {
        dims("hypernegation", neg.len(), n)?;
        l.list("hypernegation", neg)?;
    }
    Ok(())
}

pub fn parse_pair_file(text: &str) -> Result<PairFile, ParseError> {
    let f: PairFile = serde_json::from_str(text).map_err(syntax)?;
    check_pair_file(&f)?;
    Ok(f)
}

pub fn parse_hyper_file(text: &str) -> Result<HyperFile, ParseError> {
    let f: HyperFile = serde_json::from_str(text).map_err(syntax)?;
    check_hyper_file(&f)?;
    Ok(f)
}

pub fn parse_structure_file(text: &str) -> Result<StructureFile, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    let hyper = v.get("hyperadd").is_some();
    if hyper {
        parse_hyper_file(text).map(StructureFile::Hyper)
    } else {
        parse_pair_file(text).map(StructureFile::Pair)
    }
}

impl PairFile {
    pub fn from_pair(pair: &Pair, negation: Option<&NegationMap>) -> Self {
        let label = |x: Elem| pair.label(x).to_string();
        let table = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Vec<String>> {
            (0..pair.size())
                .map(|x| (0..pair.size()).map(|y| label(f(x, y))).collect())
                .collect()
        };
        let s = pair.structure();
        PairFile {
            name: pair.name().to_string(),
            elements: s.names().to_vec(),
            zero: label(pair.zero()),
            one: label(pair.one()),
            add: table(&|x, y| s.add(x, y)),
            mul: table(&|x, y| s.mul(x, y)),
            tangible: pair.tangible().iter().map(|&a| label(a)).collect(),
            a0: pair.a_zero().into_iter().map(label).collect(),
            negation: negation.map(|m| m.perm().iter().map(|&x| label(x)).collect()),
        }
    }

    /// Validates the axioms and the optional negation map.
    pub fn to_pair(&self) -> Result<(Pair, Option<NegationMap>), LoadError> {
        let l = Labels::new(&self.elements).expect("checked at parse time");
        let get = |field: &str, x: &str| l.get(field, x).expect("checked at parse time");
        let table =
            |field: &str, t: &[Vec<String>]| l.table(field, t).expect("checked at parse time");
        let s = FiniteStructure::new(
            self.elements.clone(),
            get("zero", &self.zero),
            get("one", &self.one),
            table("add", &self.add),
            table("mul", &self.mul),
        )?;
        let tangible = l.list("tangible", &self.tangible).expect("checked");
        let a0 = l.list("a0", &self.a0).expect("checked");
        let pair = Pair::new(self.name.clone(), s, &tangible, &a0)?;
        let neg = match &self.negation {
            Some(perm) => Some(pair.negation_map(&l.list("negation", perm).expect("checked"))?),
            None => None,
        };
        Ok((pair, neg))
    }
}

impl HyperFile {
    pub fn from_hyper(name: &str, h: &HyperStructure, s0: &[Elem]) -> Self {
        let label = |x: Elem| h.name(x).to_string();
        let n = h.size();
        HyperFile {
            name: name.to_string(),
            elements: h.names().to_vec(),
            zero: label(h.zero()),
            one: label(h.one()),
            hyperadd: (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| h.sum_set(x, y).into_iter().map(label).collect())
                        .collect()
                })
                .collect(),
            mul: (0..n)
                .map(|x| (0..n).map(|y| label(h.mul(x, y))).collect())
                .collect(),
            tangible: h.tangible().iter().map(|&a| label(a)).collect(),
            a0: s0.iter().map(|&x| label(x)).collect(),
            hypernegation: h
                .hypernegation()
                .map(|neg| neg.iter().map(|&x| label(x)).collect()),
        }
    }

    pub fn to_hyper(&self) -> Result<HyperStructure, LoadError> {
        let l = Labels::new(&self.elements).expect("checked at parse time");
        let list = |field: &str, v: &[String]| l.list(field, v).expect("checked at parse time");
        let hyperadd = self
            .hyperadd
            .iter()
            .map(|row| row.iter().map(|cell| list("hyperadd", cell)).collect())
            .collect();
        Ok(HyperStructure::new(
            self.elements.clone(),
            l.get("zero", &self.zero).expect("checked"),
            l.get("one", &self.one).expect("checked"),
            l.table("mul", &self.mul).expect("checked"),
            hyperadd,
            self.hypernegation
                .as_ref()
                .map(|v| list("hypernegation", v)),
            Some(list("tangible", &self.tangible)),
        )?)
    }

    /// `S₀` as element indices.
    pub fn s0(&self) -> Vec<Elem> {
        let l = Labels::new(&self.elements).expect("checked at parse time");
        l.list("a0", &self.a0).expect("checked")
    }

    /// The power-set pair of the hyperstructure, with `A₀` the subsets
    /// meeting `S₀`.
    pub fn to_pair(&self, cap: usize) -> Result<(HyperStructure, Pair), LoadError> {
        let h = self.to_hyper()?;
        let p = power_set_pair(&h, Some(&self.s0()), cap)?.with_name(self.name.clone());
        Ok((h, p))
    }
}

impl StructureFile {
    pub fn name(&self) -> &str {
        match self {
            StructureFile::Pair(f) => &f.name,
            StructureFile::Hyper(f) => &f.name,
        }
    }
}

/// A loaded structure file: the pair, its negation map if one was given,
/// and the hyperstructure for hyper files.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub pair: Pair,
    pub negation: Option<NegationMap>,
    pub hyper: Option<HyperStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Load(#[from] LoadError),
}

/// Parses and validates a pair or hyperstructure file. Hyperstructures are
/// loaded as their power-set pair, with carriers bounded by `cap`.
pub fn load_structure(text: &str, cap: usize) -> Result<Loaded, FileError> {
    Ok(match parse_structure_file(text)? {
        StructureFile::Pair(f) => {
            let (pair, negation) = f.to_pair()?;
            Loaded {
                pair,
                negation,
                hyper: None,
            }
        }
        StructureFile::Hyper(f) => {
            let (h, pair) = f.to_pair(cap)?;
            Loaded {
                pair,
                negation: None,
                hyper: Some(h),
            }
        }
    })
}

/// Canonical text: pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json's map is ordered by key, so going through `Value` sorts.
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn serialize_pair_file(f: &PairFile) -> String {
    to_canonical_json(f)
}

pub fn serialize_hyper_file(f: &HyperFile) -> String {
    to_canonical_json(f)
}

pub fn serialize_report<T: Serialize>(report: &T) -> String {
    to_canonical_json(report)
}

/// Congruence as lists of member labels.
pub fn labelled_blocks(pair: &Pair, blocks: &[Vec<Elem>]) -> Vec<Vec<String>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|&x| pair.label(x).to_string()).collect())
        .collect()
}

pub fn labelled_congruence(pair: &Pair, c: &Congruence) -> Vec<Vec<String>> {
    labelled_blocks(pair, &c.blocks())
}

/// A check report with witnesses given by label.
pub fn labelled_check_report(pair: &Pair, r: &CheckReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if let Some(c) = &r.counterexample {
        v["counterexample"] = serde_json::json!({
            "elements": c.elements.iter().map(|&x| pair.label(x)).collect::<Vec<_>>(),
            "congruences": c.congruences.iter().map(|b| labelled_blocks(pair, b)).collect::<Vec<_>>(),
            "detail": c.detail,
        });
    }
    v
}

/// Replaces the index blocks of a spectrum report with labelled blocks.
pub fn labelled_spectrum(pair: &Pair, r: &crate::spectrum::SpectrumReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["congruences"] = serde_json::to_value(
        r.congruences
            .iter()
            .map(|b| labelled_blocks(pair, b))
            .collect::<Vec<_>>(),
    )
    .expect("labels serialize");
    v
}
