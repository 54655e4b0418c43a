//! Twist-product classification of congruences and the prime spectrum.

use serde::Serialize;
use thiserror::Error;

use crate::classify::classify_pair;
use crate::congruence::{
    diag_e, enumerate_congruences, generated_congruence, push_forward, Congruence, CongruenceError,
    CongruenceLattice, Subalgebra,
};
use crate::constructions::{quotient_pair, twist};
use crate::pair::Pair;
use crate::structure::{Elem, Operations};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("S meets the diagonal at ({0}, {0})")]
    MeetsDiagonal(String),
    #[error("quotient failed: {0}")]
    Quotient(String),
}

/// `{b ⋈ b' : b ∈ Φ₁, b' ∈ Φ₂}`, sorted.
pub fn twist_set_product(
    ops: &impl Operations,
    p: &Congruence,
    q: &Congruence,
) -> Vec<(Elem, Elem)> {
    let (pp, qp) = (p.pairs(), q.pairs());
    let mut out: Vec<(Elem, Elem)> = pp
        .iter()
        .flat_map(|&b| qp.iter().map(move |&c| (b, c)))
        .map(|(b, c)| twist(ops, b, c))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `Φ₁ ⋈ Φ₂ ⊆ Φ`.
pub fn twist_within(
    ops: &impl Operations,
    p: &Congruence,
    q: &Congruence,
    phi: &Congruence,
) -> bool {
    let qp = q.pairs();
    p.pairs().iter().all(|&b| {
        qp.iter().all(|&c| {
            let (x, y) = twist(ops, b, c);
            phi.related(x, y)
        })
    })
}

/// `√Φ` with the stage at which each element enters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqrtPhi {
    /// `stage[x][y] = Some(i)` when `(x, y)` first lies in `Sᵢ` (`S₁ = Φ`).
    pub stage: Vec<Vec<Option<usize>>>,
    /// Number of stages until the sequence stabilizes.
    pub depth: usize,
    pub is_congruence: bool,
}

impl SqrtPhi {
    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.stage[x][y].is_some()
    }

    pub fn equals(&self, phi: &Congruence) -> bool {
        let n = self.stage.len();
        (0..n).all(|x| (0..n).all(|y| self.contains(x, y) == phi.related(x, y)))
    }
}

pub fn sqrt_phi(ops: &impl Operations, phi: &Congruence) -> SqrtPhi {
    let n = ops.size();
    let mut stage: Vec<Vec<Option<usize>>> = (0..n)
        .map(|x| (0..n).map(|y| phi.related(x, y).then_some(1)).collect())
        .collect();
    let mut depth = 1;
    // bounded by the number of elements of Â
    for i in 1..=n * n {
        let mut added = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if stage[x][y].is_none() {
                    let (u, v) = twist(ops, (x, y), (x, y));
                    if stage[u][v].is_some_and(|s| s <= i) {
                        added.push((x, y));
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        depth = i + 1;
        for (x, y) in added {
            stage[x][y] = Some(i + 1);
        }
    }
    let rel = |x: Elem, y: Elem| stage[x][y].is_some();
    let equivalence = (0..n).all(|x| {
        (0..n).all(|y| {
            rel(x, y) == rel(y, x) && (!rel(x, y) || (0..n).all(|z| !rel(y, z) || rel(x, z)))
        })
    });
    let is_congruence = equivalence && {
        let labels: Vec<usize> = (0..n)
            .map(|x| (0..n).position(|y| rel(x, y)).expect("reflexive"))
            .collect();
        let c = Congruence::from_labels(&labels);
        crate::congruence::is_congruence(ops, &c)
    };
    SqrtPhi {
        stage,
        depth,
        is_congruence,
    }
}

/// `b ⋈ b ∈ Φ ⟹ b ∈ Φ`; returns the first failing `b`.
pub fn radical_witness(ops: &impl Operations, phi: &Congruence) -> Option<(Elem, Elem)> {
    let n = ops.size();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&b| {
        let (u, v) = twist(ops, b, b);
        phi.related(u, v) && !phi.related(b.0, b.1)
    })
}

/// `b ⋈ b' ∈ Φ ⟹ b ∈ Φ or b' ∈ Φ`; returns the first failing `(b, b')`.
pub fn strongly_prime_witness(
    ops: &impl Operations,
    phi: &Congruence,
) -> Option<((Elem, Elem), (Elem, Elem))> {
    let n = ops.size();
    let outside: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !phi.related(x, y))
        .collect();
    for &b in &outside {
        for &c in &outside {
            let (u, v) = twist(ops, b, c);
            if phi.related(u, v) {
                return Some((b, c));
            }
        }
    }
    None
}

/// Prime, semiprime and irreducible from the upper covers of `i`.
///
/// A congruence strictly above `Φ` contains a cover, and `⋈` is monotone, so
/// quantifying over covers is exact.
pub fn lattice_flags(
    ops: &impl Operations,
    lattice: &CongruenceLattice,
    i: usize,
) -> (bool, bool, bool) {
    let phi = lattice.get(i);
    let covers = lattice.upper_covers(i);
    let semiprime = covers
        .iter()
        .all(|&p| !twist_within(ops, lattice.get(p), lattice.get(p), phi));
    let prime = semiprime
        && covers.iter().all(|&p| {
            covers
                .iter()
                .all(|&q| p == q || !twist_within(ops, lattice.get(p), lattice.get(q), phi))
        });
    (prime, semiprime, covers.len() <= 1)
}

/// Indices of prime congruences in the lattice.
pub fn prime_indices(ops: &impl Operations, lattice: &CongruenceLattice) -> Vec<usize> {
    (0..lattice.len())
        .filter(|&i| lattice_flags(ops, lattice, i).0)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceClassification {
    pub radical: bool,
    pub strongly_prime: bool,
    /// `None` without an enumerated lattice.
    pub prime: Option<bool>,
    pub semiprime: Option<bool>,
    pub irreducible: Option<bool>,
    pub t_cancellative: bool,
    pub proper: bool,
    pub weakly_proper: bool,
    /// `None` without Property N.
    pub contains_1e: Option<bool>,
    /// Least `k ≥ 1` with `(1 + ke, ke) ∈ Φ`.
    pub e_type: Option<usize>,
}

/// `(a, b) ∈ T × A₀`, very improper when `a + b = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImproperElement {
    pub a: Elem,
    pub b: Elem,
    pub very_improper: bool,
}

pub fn improper_elements(pair: &Pair) -> Vec<ImproperElement> {
    let mut out = Vec::new();
    for &a in pair.tangible() {
        for b in pair.a_zero() {
            out.push(ImproperElement {
                a,
                b,
                very_improper: pair.add(a, b) == a,
            });
        }
    }
    out
}

/// Improper elements lying in `Φ`.
pub fn improper_scan(pair: &Pair, phi: &Congruence) -> Vec<ImproperElement> {
    improper_elements(pair)
        .into_iter()
        .filter(|el| phi.related(el.a, el.b))
        .collect()
}

/// Least `k` in `1..=|A|` with `(1 + ke, ke) ∈ Φ`; the values `ke` repeat
/// within that range.
pub fn congruence_e_type(pair: &Pair, phi: &Congruence) -> Option<usize> {
    let e = pair.property_n()?.e;
    let s = pair.structure();
    (1..=pair.size()).find(|&k| {
        let ke = s.multiple(k, e);
        phi.related(pair.add(pair.one(), ke), ke)
    })
}

pub fn is_t_cancellative(pair: &Pair, phi: &Congruence) -> bool {
    let n = pair.size();
    pair.tangible().iter().all(|&a| {
        (0..n).all(|x| {
            (0..n).all(|y| !phi.related(pair.mul(a, x), pair.mul(a, y)) || phi.related(x, y))
        })
    })
}

pub fn classify_congruence(
    pair: &Pair,
    phi: &Congruence,
    lattice: Option<(&CongruenceLattice, usize)>,
) -> CongruenceClassification {
    let (prime, semiprime, irreducible) = match lattice {
        Some((l, i)) => {
            let (p, s, r) = lattice_flags(pair, l, i);
            (Some(p), Some(s), Some(r))
        }
        None => (None, None, None),
    };
    let improper = improper_scan(pair, phi);
    CongruenceClassification {
        radical: radical_witness(pair, phi).is_none(),
        strongly_prime: strongly_prime_witness(pair, phi).is_none(),
        prime,
        semiprime,
        irreducible,
        t_cancellative: is_t_cancellative(pair, phi),
        proper: improper.is_empty(),
        weakly_proper: improper.iter().all(|el| !el.very_improper),
        contains_1e: pair.property_n().map(|w| phi.related(pair.one(), w.e)),
        e_type: congruence_e_type(pair, phi),
    }
}

/// Outcome of one of the isomorphism statements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub applicable: bool,
    /// `None` when not applicable.
    pub holds: Option<bool>,
    pub detail: String,
}

impl Verdict {
    fn not_applicable(detail: impl Into<String>) -> Self {
        Verdict {
            applicable: false,
            holds: None,
            detail: detail.into(),
        }
    }

    fn result(holds: bool, detail: impl Into<String>) -> Self {
        Verdict {
            applicable: true,
            holds: Some(holds),
            detail: detail.into(),
        }
    }
}

/// Checks that `map` is a bijection from `domain` onto `target` that
/// preserves and reflects inclusion.
fn order_isomorphism(
    domain: &[Congruence],
    images: &[Option<Congruence>],
    target: &[Congruence],
) -> Result<(), String> {
    let mut hit = vec![false; target.len()];
    let mut idx = Vec::new();
    for (k, img) in images.iter().enumerate() {
        let Some(img) = img else {
            return Err(format!("member {k} has no image"));
        };
        let Some(t) = target.iter().position(|c| c == img) else {
            return Err(format!("image of member {k} is not in the target"));
        };
        if std::mem::replace(&mut hit[t], true) {
            return Err(format!("two members map to target {t}"));
        }
        idx.push(t);
    }
    if let Some(t) = hit.iter().position(|h| !h) {
        return Err(format!("target {t} is not hit"));
    }
    for i in 0..domain.len() {
        for j in 0..domain.len() {
            if domain[i].refines(&domain[j]) != target[idx[i]].refines(&target[idx[j]]) {
                return Err(format!("order differs between members {i} and {j}"));
            }
        }
    }
    Ok(())
}

/// `Φe = {(b₁e, b₂e)}` on `Ae`, closed up to a congruence.
///
/// The flag reports whether the image was already a congruence.
pub fn image_in_ae(pair: &Pair, ae: &Subalgebra, phi: &Congruence) -> (Congruence, bool) {
    let e = pair.property_n().expect("Ae needs Property N").e;
    let local = |x: Elem| ae.local(pair.mul(x, e)).expect("be lies in Ae");
    let gens: Vec<(Elem, Elem)> = phi
        .pairs()
        .into_iter()
        .map(|(x, y)| (local(x), local(y)))
        .collect();
    let closed = generated_congruence(ae, &gens);
    let m = ae.size();
    let mut rel = vec![vec![false; m]; m];
    for &(x, y) in &gens {
        rel[x][y] = true;
    }
    let exact = (0..m).all(|x| (0..m).all(|y| rel[x][y] == closed.related(x, y)));
    (closed, exact)
}

/// `hSpec(A) ≅ hSpec(Ae)` through `Φ ↦ Φe`.
pub fn rd2_verdict(
    pair: &Pair,
    lattice: &CongruenceLattice,
    hspec: &[usize],
    cap: usize,
) -> Verdict {
    let c = classify_pair(pair);
    if c.e_central != Some(true) || c.e_type.is_none() {
        return Verdict::not_applicable("needs an e-central pair of positive e-type");
    }
    let ae = match Subalgebra::ae(pair) {
        Ok(ae) => ae,
        Err(e) => return Verdict::result(false, e.to_string()),
    };
    let ae_lattice = match enumerate_congruences(&ae, cap) {
        Ok(l) => l,
        Err(e) => return Verdict::not_applicable(e.to_string()),
    };
    let target: Vec<Congruence> = prime_indices(&ae, &ae_lattice)
        .into_iter()
        .map(|i| ae_lattice.get(i).clone())
        .collect();
    let domain: Vec<Congruence> = hspec.iter().map(|&i| lattice.get(i).clone()).collect();
    let images: Vec<Option<Congruence>> = domain
        .iter()
        .map(|phi| Some(image_in_ae(pair, &ae, phi).0))
        .collect();
    match order_isomorphism(&domain, &images, &target) {
        Ok(()) => Verdict::result(
            true,
            format!(
                "{} primes of A match {} primes of Ae",
                domain.len(),
                target.len()
            ),
        ),
        Err(msg) => Verdict::result(false, msg),
    }
}

/// `Spec_e(A) ≅ hSpec(A/Diag_e)` through the quotient map.
pub fn sp2_verdict(
    pair: &Pair,
    lattice: &CongruenceLattice,
    spec_e: &[usize],
    cap: usize,
) -> Verdict {
    let c = classify_pair(pair);
    if c.e_central != Some(true) {
        return Verdict::not_applicable("needs an e-central pair with Property N");
    }
    let kernel = match diag_e(pair) {
        Ok(k) => k,
        Err(e) => return Verdict::not_applicable(e.to_string()),
    };
    let q = match quotient_pair(pair, &kernel) {
        Ok(q) => q,
        Err(e) => return Verdict::result(false, e.to_string()),
    };
    let q_lattice = match enumerate_congruences(&q, cap) {
        Ok(l) => l,
        Err(e) => return Verdict::not_applicable(e.to_string()),
    };
    let target: Vec<Congruence> = prime_indices(&q, &q_lattice)
        .into_iter()
        .map(|i| q_lattice.get(i).clone())
        .collect();
    let domain: Vec<Congruence> = spec_e.iter().map(|&i| lattice.get(i).clone()).collect();
    let images: Vec<Option<Congruence>> = domain
        .iter()
        .map(|phi| push_forward(&kernel, phi))
        .collect();
    match order_isomorphism(&domain, &images, &target) {
        Ok(()) => Verdict::result(
            true,
            format!(
                "{} primes of positive e-type match {} primes of the quotient",
                domain.len(),
                target.len()
            ),
        ),
        Err(msg) => Verdict::result(false, msg),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalProper {
    /// Maximal among congruences with no improper element.
    pub proper: Vec<usize>,
    /// Maximal among congruences with no very improper element.
    pub weakly_proper: Vec<usize>,
    /// For each maximal weakly proper congruence: no two congruences that each
    /// contain a very improper element have their twist product inside it.
    pub weakly_prime_proper: Vec<bool>,
}

fn maximal_among(lattice: &CongruenceLattice, members: &[usize]) -> Vec<usize> {
    members
        .iter()
        .copied()
        .filter(|&i| {
            !members
                .iter()
                .any(|&j| j != i && lattice.get(i).refines(lattice.get(j)))
        })
        .collect()
}

/// Whether `Φ` avoids `Ψ₁ ⋈ Ψ₂` for all congruences `Ψᵢ` containing a very
/// improper element. Principal congruences of those elements suffice.
pub fn weakly_prime_proper(pair: &Pair, phi: &Congruence) -> bool {
    let principals: Vec<Congruence> = improper_elements(pair)
        .into_iter()
        .filter(|el| el.very_improper)
        .map(|el| generated_congruence(pair, &[(el.a, el.b)]))
        .collect();
    principals
        .iter()
        .all(|p| principals.iter().all(|q| !twist_within(pair, p, q, phi)))
}

pub fn maximal_proper_congruences(
    pair: &Pair,
    lattice: &CongruenceLattice,
    classes: &[CongruenceClassification],
) -> MaximalProper {
    let proper: Vec<usize> = (0..lattice.len()).filter(|&i| classes[i].proper).collect();
    let weak: Vec<usize> = (0..lattice.len())
        .filter(|&i| classes[i].weakly_proper)
        .collect();
    let proper = maximal_among(lattice, &proper);
    let weakly_proper = maximal_among(lattice, &weak);
    let weakly_prime_proper = weakly_proper
        .iter()
        .map(|&i| weakly_prime_proper(pair, lattice.get(i)))
        .collect();
    MaximalProper {
        proper,
        weakly_proper,
        weakly_prime_proper,
    }
}

/// Congruences maximal among those disjoint from `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalDisjoint {
    /// Whenever `S` meets `Φ₁` and `Φ₂`, it meets `Φ₁ ⋈ Φ₂`.
    pub hypothesis_holds: bool,
    /// Lattice indices of a pair violating the hypothesis.
    pub hypothesis_witness: Option<(usize, usize)>,
    pub maximal: Vec<usize>,
    pub prime: Vec<bool>,
}

pub fn maximal_disjoint_congruence(
    pair: &Pair,
    lattice: &CongruenceLattice,
    s: &[(Elem, Elem)],
) -> Result<MaximalDisjoint, SpectrumError> {
    if let Some(&(x, _)) = s.iter().find(|&&(x, y)| x == y) {
        return Err(SpectrumError::MeetsDiagonal(pair.label(x).to_string()));
    }
    let meets = |c: &Congruence| s.iter().any(|&(x, y)| c.related(x, y));
    let meeting: Vec<usize> = (0..lattice.len())
        .filter(|&i| meets(lattice.get(i)))
        .collect();
    let mut witness = None;
    'outer: for &i in &meeting {
        for &j in &meeting {
            let prod = twist_set_product(pair, lattice.get(i), lattice.get(j));
            if !prod.iter().any(|b| s.contains(b)) {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let disjoint: Vec<usize> = (0..lattice.len())
        .filter(|&i| !meets(lattice.get(i)))
        .collect();
    let maximal = maximal_among(lattice, &disjoint);
    let prime = maximal
        .iter()
        .map(|&i| lattice_flags(pair, lattice, i).0)
        .collect();
    Ok(MaximalDisjoint {
        hypothesis_holds: witness.is_none(),
        hypothesis_witness: witness,
        maximal,
        prime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub lattice_size: usize,
    pub congruences: Vec<Vec<Vec<Elem>>>,
    pub classifications: Vec<CongruenceClassification>,
    pub hspec: Vec<usize>,
    pub spec_e: Vec<usize>,
    pub strongly_prime: Vec<usize>,
    pub radical: Vec<usize>,
    /// `(i, j)` with `hspec` members `i ⊊ j`.
    pub hspec_order: Vec<(usize, usize)>,
    pub maximal: MaximalProper,
    /// Radical congruences contain `(1, e)` for positive e-type pairs.
    pub rd1: Verdict,
    pub rd2: Verdict,
    pub sp2: Verdict,
}

pub fn spectrum_report(pair: &Pair, cap: usize) -> Result<SpectrumReport, SpectrumError> {
    let lattice = enumerate_congruences(pair, cap)?;
    Ok(spectrum_report_for(pair, &lattice, cap))
}

pub fn spectrum_report_for(pair: &Pair, lattice: &CongruenceLattice, cap: usize) -> SpectrumReport {
    let classes: Vec<CongruenceClassification> = (0..lattice.len())
        .map(|i| classify_congruence(pair, lattice.get(i), Some((lattice, i))))
        .collect();
    let pick = |f: &dyn Fn(&CongruenceClassification) -> bool| -> Vec<usize> {
        (0..lattice.len()).filter(|&i| f(&classes[i])).collect()
    };
    let hspec = pick(&|c| c.prime == Some(true));
    let spec_e = pick(&|c| c.prime == Some(true) && c.e_type.is_some());
    let strongly_prime = pick(&|c| c.strongly_prime);
    let radical = pick(&|c| c.radical);
    let mut hspec_order = Vec::new();
    for &i in &hspec {
        for &j in &hspec {
            if i != j && lattice.get(i).refines(lattice.get(j)) {
                hspec_order.push((i, j));
            }
        }
    }
    let pc = classify_pair(pair);
    let rd1 = if pc.e_type.is_some() {
        let bad = radical
            .iter()
            .find(|&&i| classes[i].contains_1e != Some(true));
        match bad {
            None => Verdict::result(true, format!("{} radical congruences", radical.len())),
            Some(i) => Verdict::result(false, format!("radical congruence {i} misses (1,e)")),
        }
    } else {
        Verdict::not_applicable("needs positive e-type")
    };
    let rd2 = rd2_verdict(pair, lattice, &hspec, cap);
    let sp2 = sp2_verdict(pair, lattice, &spec_e, cap);
    let maximal = maximal_proper_congruences(pair, lattice, &classes);
    SpectrumReport {
        lattice_size: lattice.len(),
        congruences: lattice
            .congruences()
            .iter()
            .map(Congruence::blocks)
            .collect(),
        classifications: classes,
        hspec,
        spec_e,
        strongly_prime,
        radical,
        hspec_order,
        maximal,
        rd1,
        rd2,
        sp2,
    }
}
