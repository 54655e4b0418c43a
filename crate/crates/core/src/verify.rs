//! Law harness: runs each law whose hypotheses hold on a finite pair and
//! reports a pass or a concrete counterexample.

use std::cell::OnceCell;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify_pair, has_e_type, Kind, PairClassification};
use crate::congruence::{
    cong_b, diag_e, enumerate_congruences, is_congruence, join, pull_back, Congruence,
    CongruenceError, CongruenceLattice, Subalgebra, DEFAULT_MAX_CONGRUENCES,
};
use crate::constructions::{double, power_set_pair, quotient_pair, twist, DEFAULT_CARRIER_CAP};
use crate::hyper::{HyperStructure, Mask};
use crate::pair::Pair;
use crate::spectrum::{
    congruence_e_type, improper_elements, improper_scan, is_t_cancellative, lattice_flags,
    radical_witness, rd2_verdict, sp2_verdict, sqrt_phi, weakly_prime_proper, Verdict,
};
use crate::structure::{Elem, Multiples, Operations};

/// Stable check identifiers, in report order.
pub const CHECK_IDS: &[&str] = &[
    "EST",
    "ESQ",
    "EMUL",
    "EFINAL_IDEM",
    "KIND",
    "ETYPE_SHALLOW",
    "TWASS",
    "GEN",
    "ID1",
    "TR1",
    "CONGB",
    "BF",
    "PRS1",
    "PRS2",
    "RD1",
    "RD2",
    "SP2",
    "PRO3",
    "PRO3C",
    "CP",
    "SHALLOW1K",
    "CHAINS",
    "HYPROP",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check id `{0}`")]
    UnknownCheckId(String),
    #[error("congruence enumeration exceeded the cap of {cap} ({found} found)")]
    CapExceeded { cap: usize, found: usize },
}

/// Elements and congruences witnessing a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub elements: Vec<Elem>,
    /// Congruences as canonical block lists.
    pub congruences: Vec<Vec<Vec<Elem>>>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub hypotheses_held: bool,
    /// Present iff the hypotheses held.
    pub passed: Option<bool>,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

/// A pair under test, with an optional source hyperstructure and a lazily
/// enumerated congruence lattice.
pub struct Subject {
    pair: Pair,
    hyper: Option<HyperStructure>,
    cap: usize,
    class: OnceCell<PairClassification>,
    lattice: OnceCell<Result<CongruenceLattice, VerifyError>>,
}

impl Subject {
    pub fn new(pair: Pair) -> Self {
        Subject {
            pair,
            hyper: None,
            cap: DEFAULT_MAX_CONGRUENCES,
            class: OnceCell::new(),
            lattice: OnceCell::new(),
        }
    }

    pub fn with_hyper(mut self, h: HyperStructure) -> Self {
        self.hyper = Some(h);
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.lattice = OnceCell::new();
        self
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn hyper(&self) -> Option<&HyperStructure> {
        self.hyper.as_ref()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn classification(&self) -> &PairClassification {
        self.class.get_or_init(|| classify_pair(&self.pair))
    }

    pub fn lattice(&self) -> Result<&CongruenceLattice, VerifyError> {
        self.lattice
            .get_or_init(|| enumerate_congruences(&self.pair, self.cap).map_err(cap_error))
            .as_ref()
            .map_err(Clone::clone)
    }
}

fn cap_error(e: CongruenceError) -> VerifyError {
    match e {
        CongruenceError::CapExceeded { cap, found } => VerifyError::CapExceeded { cap, found },
        other => unreachable!("enumeration only fails on the cap: {other}"),
    }
}

struct Outcome {
    hypotheses: bool,
    failure: Option<Counterexample>,
    notes: Vec<String>,
}

impl Outcome {
    fn skip(note: impl Into<String>) -> Self {
        Outcome {
            hypotheses: false,
            failure: None,
            notes: vec![note.into()],
        }
    }

    fn pass(notes: Vec<String>) -> Self {
        Outcome {
            hypotheses: true,
            failure: None,
            notes,
        }
    }

    fn fail(c: Counterexample) -> Self {
        Outcome {
            hypotheses: true,
            failure: Some(c),
            notes: Vec::new(),
        }
    }

    fn from(failure: Option<Counterexample>, notes: Vec<String>) -> Self {
        Outcome {
            hypotheses: true,
            failure,
            notes,
        }
    }
}

fn cx(elements: Vec<Elem>, detail: impl Into<String>) -> Counterexample {
    Counterexample {
        elements,
        congruences: Vec::new(),
        detail: detail.into(),
    }
}

fn cx_cong(
    elements: Vec<Elem>,
    congs: &[&Congruence],
    detail: impl Into<String>,
) -> Counterexample {
    Counterexample {
        elements,
        congruences: congs.iter().map(|c| c.blocks()).collect(),
        detail: detail.into(),
    }
}

pub fn run_check(s: &Subject, check_id: &str) -> Result<CheckReport, VerifyError> {
    let start = Instant::now();
    let out = match check_id {
        "EST" => est(s),
        "ESQ" => esq(s),
        "EMUL" => emul(s),
        "EFINAL_IDEM" => efinal_idem(s),
        "KIND" => kind(s),
        "ETYPE_SHALLOW" => etype_shallow(s),
        "TWASS" => twass(s),
        "GEN" => gen(s),
        "ID1" => id1(s)?,
        "TR1" => tr1(s)?,
        "CONGB" => congb(s),
        "BF" => bf(s)?,
        "PRS1" => prs1(s)?,
        "PRS2" => prs2(s)?,
        "RD1" => rd1(s)?,
        "RD2" => rd2(s)?,
        "SP2" => sp2(s)?,
        "PRO3" => pro3(s)?,
        "PRO3C" => pro3c(s)?,
        "CP" => cp(s)?,
        "SHALLOW1K" => shallow1k(s)?,
        "CHAINS" => chains(s)?,
        "HYPROP" => hyprop(s),
        other => return Err(VerifyError::UnknownCheckId(other.to_string())),
    };
    Ok(CheckReport {
        check_id: check_id.to_string(),
        hypotheses_held: out.hypotheses,
        passed: out.hypotheses.then_some(out.failure.is_none()),
        counterexample: out.failure,
        notes: out.notes,
        runtime: start.elapsed(),
    })
}

/// Every check in [`CHECK_IDS`] order.
pub fn run_all(s: &Subject) -> Vec<Result<CheckReport, VerifyError>> {
    CHECK_IDS.iter().map(|id| run_check(s, id)).collect()
}

/// `(passed, failed, skipped)` over a batch of reports.
pub fn summary<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> (usize, usize, usize) {
    reports
        .into_iter()
        .fold((0, 0, 0), |(p, f, k), r| match r.passed {
            Some(true) => (p + 1, f, k),
            Some(false) => (p, f + 1, k),
            None => (p, f, k + 1),
        })
}

fn all_pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn est(s: &Subject) -> Outcome {
    let p = &s.pair;
    let Some(w) = p.property_n() else {
        return Outcome::skip("no Property N");
    };
    for &d in &w.all_daggers {
        let v = p.mul(w.e, d);
        if v != w.e {
            return Outcome::fail(cx(
                vec![w.e, d],
                format!("e·{} = {} instead of e", p.label(d), p.label(v)),
            ));
        }
    }
    Outcome::pass(vec![format!("{} choices of 1†", w.all_daggers.len())])
}

fn esq(s: &Subject) -> Outcome {
    let p = &s.pair;
    if s.classification().e_distributive != Some(true) {
        return Outcome::skip("not e-distributive");
    }
    let e = p.property_n().expect("e-distributive").e;
    if p.mul(e, e) != p.add(e, e) {
        return Outcome::fail(cx(vec![e], "e² ≠ e + e"));
    }
    let a0 = p.a_zero();
    for &b1 in &a0 {
        for &b2 in &a0 {
            if p.mul(e, p.add(b1, b2)) != p.add(p.mul(e, b1), p.mul(e, b2)) {
                return Outcome::fail(cx(
                    vec![b1, b2],
                    format!("e({} + {}) ≠ e{0} + e{1}", p.label(b1), p.label(b2)),
                ));
            }
        }
    }
    Outcome::pass(Vec::new())
}

fn ae_elements(p: &Pair, e: Elem) -> Vec<Elem> {
    let mut v: Vec<Elem> = (0..p.size()).map(|b| p.mul(b, e)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn emul(s: &Subject) -> Outcome {
    let p = &s.pair;
    let c = s.classification();
    if c.e_central != Some(true) || c.e_idempotent != Some(true) {
        return Outcome::skip("needs e-central and e-idempotent");
    }
    let e = p.property_n().expect("e-central").e;
    let ae = ae_elements(p, e);
    let n = p.size();
    for &x in &ae {
        if p.mul(e, x) != x || p.mul(x, e) != x {
            return Outcome::fail(cx(vec![x], format!("e is not a unit on {}", p.label(x))));
        }
        if p.add(x, x) != x {
            return Outcome::fail(cx(vec![x], format!("{} + {0} ≠ {0} in Ae", p.label(x))));
        }
    }
    for (b1, b2) in all_pairs(n) {
        let (e1, e2) = (p.mul(b1, e), p.mul(b2, e));
        if p.mul(p.add(b1, b2), e) != p.add(e1, e2) {
            return Outcome::fail(cx(vec![b1, b2], "(b₁ + b₂)e ≠ b₁e + b₂e"));
        }
        if p.mul(p.mul(b1, b2), e) != p.mul(e1, e2) {
            return Outcome::fail(cx(vec![b1, b2], "(b₁b₂)e ≠ (b₁e)(b₂e)"));
        }
    }
    let equal = ae == p.a_zero();
    Outcome::pass(vec![format!("|Ae| = {}; A₀ = Ae: {equal}", ae.len())])
}

fn efinal_idem(s: &Subject) -> Outcome {
    let p = &s.pair;
    if s.classification().e_final != Some(true) {
        return Outcome::skip("not e-final");
    }
    let e = p.property_n().expect("e-final").e;
    if p.add(e, e) != e {
        return Outcome::fail(cx(vec![e], "e + e ≠ e"));
    }
    Outcome::pass(Vec::new())
}

fn kind(s: &Subject) -> Outcome {
    let p = &s.pair;
    let c = s.classification();
    if !c.t_distributive {
        return Outcome::skip("tangibles do not distribute over sums");
    }
    let two = p.add(p.one(), p.one());
    let two_in = p.in_a_zero(two);
    let odd = p
        .tangible()
        .iter()
        .copied()
        .find(|&a| !p.in_a_zero(p.add(a, a)));
    if two_in {
        if let Some(a) = odd {
            return Outcome::fail(cx(
                vec![a],
                format!("1 + 1 ∈ A₀ but {} + {0} ∉ A₀", p.label(a)),
            ));
        }
    }
    if c.cancellative && (c.kind == Kind::Second) == two_in {
        return Outcome::fail(cx(
            vec![two],
            "cancellative, but second kind disagrees with 2 ∉ A₀",
        ));
    }
    Outcome::pass(vec![format!(
        "2 ∈ A₀: {two_in}; cancellative: {}",
        c.cancellative
    )])
}

fn etype_shallow(s: &Subject) -> Outcome {
    let p = &s.pair;
    let c = s.classification();
    if c.e_distributive != Some(true) || !c.shallow {
        return Outcome::skip("needs e-distributive and shallow");
    }
    let e = p.property_n().expect("e-distributive").e;
    let mult = Multiples::new(p.structure());
    let mut seen = Vec::new();
    for k in 1..=mult.horizon() + mult.period() {
        if !p.in_a_zero(p.add(p.one(), mult.get(k, e))) {
            continue;
        }
        if !(has_e_type(p, k, k) || has_e_type(p, k, 1)) {
            return Outcome::fail(cx(
                vec![e],
                format!("1 + {k}e ∈ A₀ but neither e-type {k} nor ({k},1)"),
            ));
        }
        seen.push(k);
    }
    Outcome::pass(vec![format!("k with 1 + ke ∈ A₀: {seen:?}")])
}

fn twass(s: &Subject) -> Outcome {
    let p = &s.pair;
    if !s.classification().semiring {
        return Outcome::skip("not a semiring");
    }
    let d = match double(p) {
        Ok(d) => d,
        Err(err) => return Outcome::fail(cx(Vec::new(), format!("doubling failed: {err}"))),
    };
    let dp = &d.pair;
    let m = dp.size();
    for x in 0..m {
        for y in 0..m {
            let xy = dp.mul(x, y);
            let sum = dp.add(x, y);
            for z in 0..m {
                if dp.mul(xy, z) != dp.mul(x, dp.mul(y, z)) {
                    return Outcome::fail(cx(
                        vec![x, y, z],
                        format!(
                            "twist not associative at {}, {}, {} of Â",
                            dp.label(x),
                            dp.label(y),
                            dp.label(z)
                        ),
                    ));
                }
                if dp.mul(z, sum) != dp.add(dp.mul(z, x), dp.mul(z, y))
                    || dp.mul(sum, z) != dp.add(dp.mul(x, z), dp.mul(y, z))
                {
                    return Outcome::fail(cx(vec![x, y, z], "twist does not distribute"));
                }
            }
        }
    }
    Outcome::pass(vec![format!("{m}³ triples of Â")])
}

fn gen(s: &Subject) -> Outcome {
    let p = &s.pair;
    let n = p.size();
    let distributive = p.structure().flags().distributive;
    for (b1, b2) in all_pairs(n) {
        for z in 0..n {
            let (u, v) = twist(p, (b1, b2), (z, z));
            let (u2, v2) = twist(p, (z, z), (b1, b2));
            if u != v || u2 != v2 {
                return Outcome::fail(cx(vec![b1, b2, z], "Diag is not a twist ideal"));
            }
            let w = p.mul(p.add(b1, b2), z);
            if distributive && u != w {
                return Outcome::fail(cx(vec![b1, b2, z], "b ⋈ (z,z) ≠ (b₁ + b₂)(z,z)"));
            }
        }
    }
    let note = if distributive {
        "b ⋈ (z,z) = (b₁ + b₂)(z,z) everywhere"
    } else {
        "not distributive: only the ideal property was checked"
    };
    Outcome::pass(vec![note.to_string()])
}

fn id1(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let Some(w) = p.property_n() else {
        return Ok(Outcome::skip("no Property N"));
    };
    let l = s.lattice()?;
    let mut count = 0;
    for phi in l.congruences().iter().filter(|c| c.related(p.one(), w.e)) {
        count += 1;
        let q = quotient_pair(p, phi).expect("lattice members are congruences");
        let qc = classify_pair(&q);
        if !qc.degenerate || !qc.idempotent {
            return Ok(Outcome::fail(cx_cong(
                Vec::new(),
                &[phi],
                format!(
                    "quotient degenerate: {}, idempotent: {}",
                    qc.degenerate, qc.idempotent
                ),
            )));
        }
        if let Some(&d) = w.all_daggers.iter().find(|&&d| !phi.related(d, p.one())) {
            return Ok(Outcome::fail(cx_cong(
                vec![d],
                &[phi],
                "1† is not identified with 1",
            )));
        }
    }
    Ok(Outcome::pass(vec![format!("{count} (1,e)-congruences")]))
}

fn tr1(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    if p.property_n().is_none() {
        return Ok(Outcome::skip("no Property N"));
    }
    let mut notes = Vec::new();
    let kernel = diag_e(p).expect("Property N");
    let q = quotient_pair(p, &kernel).expect("Diag_e is a congruence");
    let ql = enumerate_congruences(&q, s.cap).map_err(cap_error)?;
    let lifted: Vec<Congruence> = ql
        .congruences()
        .iter()
        .map(|c| pull_back(&kernel, c))
        .collect();
    for (i, c) in lifted.iter().enumerate() {
        if !is_congruence(p, c) {
            return Ok(Outcome::fail(cx_cong(
                Vec::new(),
                &[c],
                "lift is not a congruence",
            )));
        }
        for (j, d) in lifted.iter().enumerate().skip(i + 1) {
            if c == d {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[c],
                    "lift is not injective",
                )));
            }
            let (qi, qj) = (ql.get(i), ql.get(j));
            if pull_back(&kernel, &qi.meet(qj)) != c.meet(d)
                || pull_back(&kernel, &join(&q, qi, qj)) != join(p, c, d)
            {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[c, d],
                    "lift does not preserve meets and joins",
                )));
            }
        }
    }
    notes.push(format!(
        "{} congruences of A/Diag_e lift injectively",
        lifted.len()
    ));

    let c = s.classification();
    if c.e_central != Some(true) {
        notes.push("not e-central: the map to Ae was not checked".into());
        return Ok(Outcome::pass(notes));
    }
    let l = s.lattice()?;
    let ae = Subalgebra::ae(p).expect("Property N");
    let e = p.property_n().expect("Property N").e;
    let image =
        |phi: &Congruence| -> (Congruence, bool) { crate::spectrum::image_in_ae(p, &ae, phi) };
    let images: Vec<(Congruence, bool)> = l.congruences().iter().map(image).collect();
    let inexact = images.iter().filter(|(_, exact)| !exact).count();
    notes.push(format!(
        "Φe already a congruence for {} of {}",
        l.len() - inexact,
        l.len()
    ));
    for i in 0..l.len() {
        for j in (i + 1)..l.len() {
            let (a, b) = (l.get(i), l.get(j));
            let jn = image(&join(p, a, b)).0;
            if jn != join(&ae, &images[i].0, &images[j].0) {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[a, b],
                    "Φ ↦ Φe does not preserve this join",
                )));
            }
            let mt = image(&a.meet(b)).0;
            if mt != images[i].0.meet(&images[j].0) {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[a, b],
                    "Φ ↦ Φe does not preserve this meet",
                )));
            }
        }
    }
    if c.e_final == Some(true) {
        let al = enumerate_congruences(&ae, s.cap).map_err(cap_error)?;
        let one_e: Vec<usize> = (0..l.len())
            .filter(|&i| l.get(i).related(p.one(), e))
            .collect();
        let mut hit = vec![false; al.len()];
        for &i in &one_e {
            let t = al
                .index_of(&images[i].0)
                .expect("images are congruences of Ae");
            if std::mem::replace(&mut hit[t], true) {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[l.get(i)],
                    "two (1,e)-congruences have the same image in Ae",
                )));
            }
        }
        if let Some(t) = hit.iter().position(|h| !h) {
            let target = al.get(t);
            let elems: Vec<Elem> = target.blocks().concat();
            return Ok(Outcome::fail(Counterexample {
                elements: elems.iter().map(|&x| ae.elements()[x]).collect(),
                congruences: Vec::new(),
                detail: format!(
                    "congruence {:?} of Ae is not the image of a (1,e)-congruence",
                    target
                        .blocks()
                        .iter()
                        .map(|b| b
                            .iter()
                            .map(|&x| p.label(ae.elements()[x]))
                            .collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                ),
            }));
        }
        notes.push(format!(
            "{} (1,e)-congruences match the {} congruences of Ae",
            one_e.len(),
            al.len()
        ));
    }
    Ok(Outcome::pass(notes))
}

fn congb(s: &Subject) -> Outcome {
    let p = &s.pair;
    if !s.classification().positive_e_type() {
        return Outcome::skip("no positive e-type");
    }
    let n = p.size();
    let (mut applicable, mut same) = (0, 0);
    for (b1, b2) in all_pairs(n) {
        let c = cong_b(p, b1, b2);
        if !c.hypotheses_hold {
            continue;
        }
        applicable += 1;
        if !c.is_congruence || !c.contains_b {
            return Outcome::fail(cx(
                vec![b1, b2],
                format!(
                    "Cong_b for ({}, {}): congruence {}, contains b {}",
                    p.label(b1),
                    p.label(b2),
                    c.is_congruence,
                    c.contains_b
                ),
            ));
        }
        if c.equals_generated == Some(true) {
            same += 1;
        }
    }
    if applicable == 0 {
        return Outcome::skip("no b meets the centrality hypothesis");
    }
    Outcome::pass(vec![format!(
        "{applicable} elements of Â; {same} equal the congruence generated by b"
    )])
}

fn bf(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let l = s.lattice()?;
    let n = p.size();
    let flags: Vec<(bool, bool, bool)> = (0..l.len()).map(|i| lattice_flags(p, l, i)).collect();
    let radical: Vec<bool> = l
        .congruences()
        .iter()
        .map(|c| radical_witness(p, c).is_none())
        .collect();
    for phi in l.congruences() {
        let pairs = phi.pairs();
        for b in all_pairs(n) {
            for &c in &pairs {
                let (u, v) = twist(p, b, c);
                if !phi.related(u, v) {
                    return Ok(Outcome::fail(cx_cong(
                        vec![b.0, b.1, c.0, c.1],
                        &[phi],
                        "b ⋈ b' leaves Φ for b' ∈ Φ",
                    )));
                }
            }
        }
    }
    for (i, &(prime, semi, irr)) in flags.iter().enumerate() {
        if prime != (semi && irr) {
            return Ok(Outcome::fail(cx_cong(
                Vec::new(),
                &[l.get(i)],
                format!("prime {prime}, semiprime {semi}, irreducible {irr}"),
            )));
        }
    }
    for i in 0..l.len() {
        for j in i..l.len() {
            let m = l.get(i).meet(l.get(j));
            let Some(k) = l.index_of(&m) else {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[l.get(i), l.get(j)],
                    "meet is not a congruence",
                )));
            };
            if flags[i].1 && flags[j].1 && !flags[k].1 {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[l.get(i), l.get(j)],
                    "meet of semiprime congruences is not semiprime",
                )));
            }
            if radical[i] && radical[j] && !radical[k] {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[l.get(i), l.get(j)],
                    "meet of radical congruences is not radical",
                )));
            }
        }
    }
    let primes = flags.iter().filter(|f| f.0).count();
    Ok(Outcome::pass(vec![
        format!("{} congruences, {primes} prime", l.len()),
        "chains in a finite lattice have a largest and a smallest member".into(),
    ]))
}

fn prs1(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let l = s.lattice()?;
    let n = p.size();
    let one = p.one();
    let mut radicals = 0;
    for phi in l.congruences() {
        if radical_witness(p, phi).is_some() {
            continue;
        }
        radicals += 1;
        for (b1, b2) in all_pairs(n) {
            let (u, v) = twist(p, (b1, b2), (b2, b1));
            if phi.related(u, v) && !phi.related(b1, b2) {
                return Ok(Outcome::fail(cx_cong(
                    vec![b1, b2],
                    &[phi],
                    "(b₁,b₂) ⋈ (b₂,b₁) ∈ Φ but (b₁,b₂) ∉ Φ",
                )));
            }
        }
        for b in 0..n {
            let lhs = phi.related(one, b);
            let rhs = phi.related(p.add(one, p.mul(b, b)), p.add(b, b));
            if lhs != rhs {
                return Ok(Outcome::fail(cx_cong(
                    vec![b],
                    &[phi],
                    format!(
                        "(1, {}) ∈ Φ is {lhs} but (1 + b², b + b) ∈ Φ is {rhs}",
                        p.label(b)
                    ),
                )));
            }
        }
    }
    Ok(Outcome::pass(vec![format!(
        "{radicals} radical congruences"
    )]))
}

fn prs2(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let c = s.classification();
    if c.e_distributive != Some(true) {
        return Ok(Outcome::skip("not e-distributive"));
    }
    let e = p.property_n().expect("e-distributive").e;
    let one = p.one();
    let mut notes = Vec::new();
    let l = s.lattice()?;
    let diag = l.bottom();

    let reduced = radical_witness(p, diag).is_none();
    if reduced {
        let ee = p.add(e, e);
        let probe = p.add(one, ee);
        for phi in l.congruences() {
            if phi.related(one, e) != phi.related(probe, ee) {
                return Ok(Outcome::fail(cx_cong(
                    vec![one, e],
                    &[phi],
                    "(1,e) ∈ Φ disagrees with (1 + e + e, e + e) ∈ Φ",
                )));
            }
        }
        notes.push("reduced: (1,e) ∈ Φ ⟺ (1+e+e, e+e) ∈ Φ on every Φ".into());
    }

    let mut checked = 0;
    for phi in l.congruences() {
        let q = quotient_pair(p, phi).expect("lattice members are congruences");
        if !classify_pair(&q).positive_e_type() {
            continue;
        }
        checked += 1;
        let root = sqrt_phi(p, phi);
        if !root.contains(one, e) || !root.contains(e, one) {
            return Ok(Outcome::fail(cx_cong(
                vec![one, e],
                &[phi],
                "A/Φ has positive e-type but (1,e) ∉ √Φ",
            )));
        }
    }
    notes.push(format!(
        "{checked} congruences with quotient of positive e-type"
    ));

    if c.positive_e_type() {
        let root = sqrt_phi(p, diag);
        match (root.stage[one][e], root.stage[e][one]) {
            (Some(a), Some(b)) => notes.push(format!(
                "(1,e) enters √Diag at stage {a}, (e,1) at stage {b}; √Diag stabilizes after {}",
                root.depth
            )),
            _ => {
                return Ok(Outcome::fail(cx(
                    vec![one, e],
                    "positive e-type but (1,e) ∉ √Diag",
                )))
            }
        }
    }
    // (1 + e, e)^⋈2 = (1 + k''e, k''e) for which k''
    let sq = twist(p, (p.add(one, e), e), (p.add(one, e), e));
    let mult = Multiples::new(p.structure());
    let k2 = (1..=mult.horizon() + mult.period()).find(|&k| {
        let ke = mult.get(k, e);
        sq == (p.add(one, ke), ke)
    });
    notes.push(match k2 {
        Some(k) => format!("(1+e, e)^⋈2 = (1+{k}e, {k}e)"),
        None => "(1+e, e)^⋈2 is not of the form (1+ke, ke)".into(),
    });
    Ok(Outcome::pass(notes))
}

fn rd1(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    if !s.classification().positive_e_type() {
        return Ok(Outcome::skip("no positive e-type"));
    }
    let e = p.property_n().expect("e-type").e;
    let l = s.lattice()?;
    let mut radicals = 0;
    for phi in l.congruences() {
        if radical_witness(p, phi).is_some() {
            continue;
        }
        radicals += 1;
        if !phi.related(p.one(), e) {
            return Ok(Outcome::fail(cx_cong(
                vec![p.one(), e],
                &[phi],
                "radical congruence without (1,e)",
            )));
        }
    }
    Ok(Outcome::pass(vec![format!(
        "{radicals} radical congruences contain (1,e)"
    )]))
}

fn verdict_outcome(v: Verdict, members: &[&Congruence]) -> Outcome {
    match v.holds {
        None => Outcome::skip(v.detail),
        Some(true) => Outcome::pass(vec![v.detail]),
        Some(false) => Outcome::fail(cx_cong(Vec::new(), members, v.detail)),
    }
}

fn hspec(s: &Subject) -> Result<Vec<usize>, VerifyError> {
    let l = s.lattice()?;
    Ok((0..l.len())
        .filter(|&i| lattice_flags(&s.pair, l, i).0)
        .collect())
}

fn rd2(s: &Subject) -> Result<Outcome, VerifyError> {
    let l = s.lattice()?;
    let primes = hspec(s)?;
    let v = rd2_verdict(&s.pair, l, &primes, s.cap);
    let members: Vec<&Congruence> = primes.iter().map(|&i| l.get(i)).collect();
    Ok(verdict_outcome(v, &members))
}

fn sp2(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let c = s.classification();
    if c.e_central != Some(true) {
        return Ok(Outcome::skip("needs an e-central pair with Property N"));
    }
    let l = s.lattice()?;
    let primes = hspec(s)?;
    let spec_e: Vec<usize> = primes
        .iter()
        .copied()
        .filter(|&i| congruence_e_type(p, l.get(i)).is_some())
        .collect();
    let members: Vec<&Congruence> = spec_e.iter().map(|&i| l.get(i)).collect();
    let out = verdict_outcome(sp2_verdict(p, l, &spec_e, s.cap), &members);
    if out.failure.is_some() {
        return Ok(out);
    }
    let mut notes = out.notes;
    let untyped: Vec<usize> = (0..l.len())
        .filter(|&i| congruence_e_type(p, l.get(i)).is_none())
        .collect();
    let maximal: Vec<usize> = untyped
        .iter()
        .copied()
        .filter(|&i| {
            !untyped
                .iter()
                .any(|&j| j != i && l.get(i).refines(l.get(j)))
        })
        .collect();
    for &i in &maximal {
        if !primes.contains(&i) {
            return Ok(Outcome::fail(cx_cong(
                Vec::new(),
                &[l.get(i)],
                "maximal without positive e-type, but not prime",
            )));
        }
    }
    notes.push(format!(
        "{} maximal congruences without positive e-type, all prime",
        maximal.len()
    ));
    Ok(Outcome::pass(notes))
}

fn pro3(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    if s.classification().e_central != Some(true) {
        return Ok(Outcome::skip("not e-central"));
    }
    let e = p.property_n().expect("e-central").e;
    let l = s.lattice()?;
    let n = p.size();
    let mut checked = 0;
    for phi in l.congruences() {
        if !phi.related(e, p.mul(e, e)) {
            continue;
        }
        checked += 1;
        for (a, b) in all_pairs(n) {
            if phi.related(a, p.mul(b, e)) && !phi.related(a, p.mul(a, e)) {
                return Ok(Outcome::fail(cx_cong(
                    vec![a, b],
                    &[phi],
                    "(a, be) ∈ Φ but (a, ae) ∉ Φ",
                )));
            }
        }
    }
    Ok(Outcome::pass(vec![format!(
        "{checked} congruences contain (e, e²)"
    )]))
}

fn pro3c(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let c = s.classification();
    if c.e_central != Some(true) || c.e_idempotent != Some(true) {
        return Ok(Outcome::skip("needs e-central and e-idempotent"));
    }
    let e = p.property_n().expect("e-central").e;
    let l = s.lattice()?;
    let mut checked = 0;
    for phi in l.congruences() {
        let improper = improper_scan(p, phi);
        if improper.is_empty() || !is_t_cancellative(p, phi) {
            continue;
        }
        checked += 1;
        if !phi.related(p.one(), e) {
            let el = improper[0];
            return Ok(Outcome::fail(cx_cong(
                vec![el.a, el.b],
                &[phi],
                "T-cancellative with an improper element, but without (1,e)",
            )));
        }
    }
    Ok(Outcome::pass(vec![format!(
        "{checked} T-cancellative congruences with improper elements"
    )]))
}

fn cp(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    if !s.classification().proper {
        return Ok(Outcome::skip("pair is not proper"));
    }
    let l = s.lattice()?;
    let mut checked = 0;
    for phi in l.congruences() {
        if !improper_scan(p, phi).is_empty() {
            continue;
        }
        checked += 1;
        let q = quotient_pair(p, phi).expect("lattice members are congruences");
        if !classify_pair(&q).proper {
            return Ok(Outcome::fail(cx_cong(
                Vec::new(),
                &[phi],
                "proper congruence with improper quotient",
            )));
        }
    }
    Ok(Outcome::pass(vec![format!("{checked} proper congruences")]))
}

fn shallow1k(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let c = s.classification();
    if !c.shallow || !c.semiring || c.kind != Kind::First {
        return Ok(Outcome::skip(
            "needs a shallow semiring pair of the first kind",
        ));
    }
    let l = s.lattice()?;
    let t = p.tangible();
    for phi in l.congruences() {
        if !improper_scan(p, phi).is_empty() {
            continue;
        }
        for &a1 in t {
            for &a2 in t {
                if phi.related(a1, a2) && !p.in_a_zero(p.add(a1, a2)) {
                    return Ok(Outcome::fail(cx_cong(
                        vec![a1, a2],
                        &[phi],
                        "related tangibles with sum outside A₀",
                    )));
                }
            }
        }
    }
    Ok(Outcome::pass(Vec::new()))
}

fn chains(s: &Subject) -> Result<Outcome, VerifyError> {
    let p = &s.pair;
    let l = s.lattice()?;
    let mut notes = Vec::new();
    let proper: Vec<bool> = l
        .congruences()
        .iter()
        .map(|c| improper_scan(p, c).is_empty())
        .collect();
    for i in (0..l.len()).filter(|&i| proper[i]) {
        for j in 0..l.len() {
            let m = l.get(i).meet(l.get(j));
            if !improper_scan(p, &m).is_empty() {
                return Ok(Outcome::fail(cx_cong(
                    Vec::new(),
                    &[l.get(i), l.get(j)],
                    "meet with a proper congruence is improper",
                )));
            }
        }
    }
    notes.push(format!(
        "{} proper congruences",
        proper.iter().filter(|&&b| b).count()
    ));
    if !s.classification().semiring {
        notes.push("not a semiring: product and principal-congruence parts skipped".into());
        return Ok(Outcome::pass(notes));
    }
    if let Some(w) = p.property_n() {
        let ae = ae_elements(p, w.e);
        let very: Vec<(Elem, Elem)> = improper_elements(p)
            .into_iter()
            .filter(|el| el.very_improper && ae.binary_search(&el.b).is_ok())
            .map(|el| (el.a, el.b))
            .collect();
        for &x in &very {
            for &y in &very {
                let (u, v) = twist(p, x, y);
                let ok = p.is_tangible(u) && p.in_a_zero(v) && p.add(u, v) == u;
                if !ok {
                    return Ok(Outcome::fail(cx(
                        vec![x.0, x.1, y.0, y.1],
                        format!(
                            "({}, {}) ⋈ ({}, {}) = ({}, {}) is not very improper",
                            p.label(x.0),
                            p.label(x.1),
                            p.label(y.0),
                            p.label(y.1),
                            p.label(u),
                            p.label(v)
                        ),
                    )));
                }
            }
        }
        notes.push(format!("{} very improper elements (a, be)", very.len()));
    }
    let weak: Vec<usize> = (0..l.len())
        .filter(|&i| {
            improper_scan(p, l.get(i))
                .iter()
                .all(|el| !el.very_improper)
        })
        .collect();
    for &i in &weak {
        let maximal = !weak.iter().any(|&j| j != i && l.get(i).refines(l.get(j)));
        if maximal && !weakly_prime_proper(p, l.get(i)) {
            return Ok(Outcome::fail(cx_cong(
                Vec::new(),
                &[l.get(i)],
                "maximal weakly proper congruence is not weakly prime proper",
            )));
        }
    }
    Ok(Outcome::pass(notes))
}

fn hyprop(s: &Subject) -> Outcome {
    let Some(h) = s.hyper.as_ref() else {
        return Outcome::skip("no source hyperstructure");
    };
    let Some(e) = h.e() else {
        return Outcome::skip("1 has no unique hypernegative");
    };
    let p = match power_set_pair(h, None, DEFAULT_CARRIER_CAP) {
        Ok(p) => p,
        Err(err) => return Outcome::skip(format!("power set: {err}")),
    };
    let neg = h.unique_hypernegation().expect("e exists");
    let full: Mask = (1 << h.size()) - 1;
    let group = h.size() > 2
        && (0..h.size())
            .filter(|&x| x != h.zero())
            .all(|x| (0..h.size()).any(|y| h.mul(x, y) == h.one()));
    let mut notes = Vec::new();
    let mut applied = false;
    if group && e == full & !(1 << h.one()) {
        applied = true;
        if !has_e_type(&p, 2, 2) {
            return Outcome::fail(cx(
                Vec::new(),
                "e = H ∖ {1} but the power set lacks e-type 2",
            ));
        }
        notes.push("e = H ∖ {1}: e-type 2".into());
    }
    let signs_like: Mask = (1 << h.zero()) | (1 << h.one()) | (1 << neg[h.one()]);
    if e == signs_like {
        applied = true;
        let c = classify_pair(&p);
        if c.e_idempotent != Some(true) || c.e_final != Some(true) {
            return Outcome::fail(cx(
                Vec::new(),
                format!(
                    "e = {} but e-idempotent {:?}, e-final {:?}",
                    h.mask_label(e),
                    c.e_idempotent,
                    c.e_final
                ),
            ));
        }
        notes.push(format!("e = {}: e-idempotent and e-final", h.mask_label(e)));
    }
    if !applied {
        return Outcome::skip(format!("e = {} matches neither case", h.mask_label(e)));
    }
    Outcome::from(None, notes)
}
