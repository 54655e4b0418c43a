//! Semiring pairs `(A, A₀)` over a tangible submonoid `T`.

use serde::Serialize;
use thiserror::Error;

use crate::structure::{Elem, FiniteStructure, Operations, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("element index {0} out of range")]
    UnknownElement(Elem),
    #[error("tangible set does not contain one")]
    MissingOne,
    #[error("tangible set is not multiplicatively closed: {a}·{b} = {product}")]
    TNotClosed {
        a: String,
        b: String,
        product: String,
    },
    #[error("tangible {a} is not central ({law} fails with {b}, {c})")]
    TNotCentral {
        a: String,
        b: String,
        c: String,
        law: &'static str,
    },
    #[error("A₀ is not a T-submodule: {reason}")]
    A0NotSubmodule { reason: String },
    #[error("pair has no Property N witness")]
    NoPropertyN,
    #[error("candidates {first} and {second} for 1† give different e ({e_first} vs {e_second})")]
    NonUniqueE {
        first: String,
        second: String,
        e_first: String,
        e_second: String,
    },
}

/// Witness for Property N: `1†` with `e = 1 + 1† ∈ A₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyN {
    /// The designated `1†` (smallest valid index).
    pub one_dagger: Elem,
    pub e: Elem,
    pub all_daggers: Vec<Elem>,
}

/// A validated pair. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    name: String,
    structure: FiniteStructure,
    tangible: Vec<Elem>,
    is_tangible: Vec<bool>,
    in_a0: Vec<bool>,
    property_n: Option<PropertyN>,
}

impl Pair {
    /// Validates `T` and `A₀` against the structure and searches for a
    /// Property N witness.
    ///
    /// `T` must contain one, `T ∪ {0}` must be multiplicatively closed, and
    /// every tangible element must commute and associate with the whole
    /// carrier. Distribution of `T` over sums is reported by
    /// [`Pair::t_distributive`] rather than enforced. `A₀` must contain zero and be closed under addition and
    /// multiplication by `T`.
    pub fn new(
        name: impl Into<String>,
        structure: FiniteStructure,
        tangible: &[Elem],
        a_zero: &[Elem],
    ) -> Result<Self, PairError> {
        let n = structure.size();
        if let Some(&x) = tangible.iter().chain(a_zero).find(|&&x| x >= n) {
            return Err(PairError::UnknownElement(x));
        }
        let mut is_tangible = vec![false; n];
        for &a in tangible {
            is_tangible[a] = true;
        }
        let mut in_a0 = vec![false; n];
        for &b in a_zero {
            in_a0[b] = true;
        }
        let tangible: Vec<Elem> = (0..n).filter(|&x| is_tangible[x]).collect();
        let mut pair = Pair {
            name: name.into(),
            structure,
            tangible,
            is_tangible,
            in_a0,
            property_n: None,
        };
        pair.check_tangible()?;
        pair.check_a_zero()?;
        pair.property_n = match pair.find_property_n() {
            Ok(w) => w,
            Err(PairError::NonUniqueE { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(pair)
    }

    fn check_tangible(&self) -> Result<(), PairError> {
        let s = &self.structure;
        let n = s.size();
        let name = |x: Elem| s.name(x).to_string();
        if !self.is_tangible[s.one()] {
            return Err(PairError::MissingOne);
        }
        for &a in &self.tangible {
            for &b in &self.tangible {
                let p = s.mul(a, b);
                if !self.is_tangible[p] && p != s.zero() {
                    return Err(PairError::TNotClosed {
                        a: name(a),
                        b: name(b),
                        product: name(p),
                    });
                }
            }
        }
        for &a in &self.tangible {
            for b in 0..n {
                if s.mul(a, b) != s.mul(b, a) {
                    return Err(PairError::TNotCentral {
                        a: name(a),
                        b: name(b),
                        c: name(b),
                        law: "commutativity",
                    });
                }
                for c in 0..n {
                    let fail = |law| PairError::TNotCentral {
                        a: name(a),
                        b: name(b),
                        c: name(c),
                        law,
                    };
                    if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c))
                        || s.mul(s.mul(b, a), c) != s.mul(b, s.mul(a, c))
                        || s.mul(s.mul(b, c), a) != s.mul(b, s.mul(c, a))
                    {
                        return Err(fail("associativity"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_a_zero(&self) -> Result<(), PairError> {
        let s = &self.structure;
        let n = s.size();
        if !self.in_a0[s.zero()] {
            return Err(PairError::A0NotSubmodule {
                reason: "does not contain zero".into(),
            });
        }
        for x in (0..n).filter(|&x| self.in_a0[x]) {
            for y in (0..n).filter(|&y| self.in_a0[y]) {
                if !self.in_a0[s.add(x, y)] {
                    return Err(PairError::A0NotSubmodule {
                        reason: format!("{} + {} leaves A₀", s.name(x), s.name(y)),
                    });
                }
            }
            for &a in &self.tangible {
                if !self.in_a0[s.mul(a, x)] {
                    return Err(PairError::A0NotSubmodule {
                        reason: format!("{}·{} leaves A₀", s.name(a), s.name(x)),
                    });
                }
            }
        }
        Ok(())
    }

    /// Scans every tangible as a `1†` candidate.
    ///
    /// A candidate `d` must give `1 + d ∈ A₀` and `b + d·b ∈ A₀` for all `b`.
    /// Candidates giving different `e` are an error; otherwise the witness
    /// exists when every tangible `a` with `1 + a ∈ A₀` has `1 + a = e`.
    pub fn find_property_n(&self) -> Result<Option<PropertyN>, PairError> {
        let s = &self.structure;
        let n = s.size();
        let one = s.one();
        let candidates: Vec<Elem> = self
            .tangible
            .iter()
            .copied()
            .filter(|&d| self.in_a0[s.add(one, d)])
            .filter(|&d| (0..n).all(|b| self.in_a0[s.add(b, s.mul(d, b))]))
            .collect();
        let Some(&first) = candidates.first() else {
            return Ok(None);
        };
        let e = s.add(one, first);
        if let Some(&other) = candidates.iter().find(|&&d| s.add(one, d) != e) {
            return Err(PairError::NonUniqueE {
                first: s.name(first).into(),
                second: s.name(other).into(),
                e_first: s.name(e).into(),
                e_second: s.name(s.add(one, other)).into(),
            });
        }
        let unique = self.tangible.iter().all(|&a| {
            let sum = s.add(one, a);
            !self.in_a0[sum] || sum == e
        });
        Ok(unique.then_some(PropertyN {
            one_dagger: first,
            e,
            all_daggers: candidates,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn structure(&self) -> &FiniteStructure {
        &self.structure
    }

    pub fn size(&self) -> usize {
        self.structure.size()
    }

    pub fn tangible(&self) -> &[Elem] {
        &self.tangible
    }

    pub fn is_tangible(&self, x: Elem) -> bool {
        self.is_tangible[x]
    }

    pub fn in_a_zero(&self, x: Elem) -> bool {
        self.in_a0[x]
    }

    pub fn a_zero(&self) -> Vec<Elem> {
        (0..self.size()).filter(|&x| self.in_a0[x]).collect()
    }

    pub fn property_n(&self) -> Option<&PropertyN> {
        self.property_n.as_ref()
    }

    pub fn require_property_n(&self) -> Result<&PropertyN, PairError> {
        self.property_n.as_ref().ok_or(PairError::NoPropertyN)
    }

    pub fn zero(&self) -> Elem {
        self.structure.zero()
    }

    pub fn one(&self) -> Elem {
        self.structure.one()
    }

    pub fn label(&self, x: Elem) -> &str {
        self.structure.name(x)
    }

    /// `b° = b + 1†·b`.
    pub fn circ(&self, b: Elem) -> Option<Elem> {
        let w = self.property_n.as_ref()?;
        Some(self.add(b, self.mul(w.one_dagger, b)))
    }

    /// Height of `b` in the additive span of `T ∪ {0}`, or `None` outside it.
    pub fn height(&self, b: Elem) -> Option<usize> {
        self.heights()[b]
    }

    /// Heights of every element; see [`Pair::height`].
    pub fn heights(&self) -> Vec<Option<usize>> {
        let s = &self.structure;
        let n = s.size();
        let mut h: Vec<Option<usize>> = vec![None; n];
        h[s.zero()] = Some(0);
        for &a in &self.tangible {
            if a != s.zero() {
                h[a] = Some(1);
            }
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let Some(hx) = h[x] else { continue };
                for y in x..n {
                    let Some(hy) = h[y] else { continue };
                    let z = s.add(x, y);
                    if z == s.zero() || self.is_tangible[z] {
                        continue;
                    }
                    if h[z].is_none_or(|hz| hx + hy < hz) {
                        h[z] = Some(hx + hy);
                        changed = true;
                    }
                }
            }
            if !changed {
                return h;
            }
        }
    }

    /// `a(b₁ + b₂) = ab₁ + ab₂` for every tangible `a`.
    pub fn t_distributive(&self) -> bool {
        let s = &self.structure;
        let n = s.size();
        self.tangible.iter().all(|&a| {
            (0..n).all(|b| (0..n).all(|c| s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c))))
        })
    }

    /// Elements that commute, associate and distribute with all of `A`.
    pub fn distributive_center(&self) -> Vec<Elem> {
        distributive_center(&self.structure)
    }

    /// Checks a permutation against the negation-map axioms.
    pub fn negation_map(&self, perm: &[Elem]) -> Result<NegationMap, NegationError> {
        NegationMap::new(self, perm.to_vec())
    }
}

impl Operations for Pair {
    fn size(&self) -> usize {
        self.structure.size()
    }

    #[inline]
    fn add(&self, x: Elem, y: Elem) -> Elem {
        self.structure.add(x, y)
    }

    #[inline]
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.structure.mul(x, y)
    }
}

pub fn distributive_center(s: &FiniteStructure) -> Vec<Elem> {
    let n = s.size();
    (0..n)
        .filter(|&z| {
            (0..n).all(|b| {
                s.mul(z, b) == s.mul(b, z)
                    && (0..n).all(|c| {
                        s.mul(s.mul(z, b), c) == s.mul(z, s.mul(b, c))
                            && s.mul(s.mul(b, z), c) == s.mul(b, s.mul(z, c))
                            && s.mul(s.mul(b, c), z) == s.mul(b, s.mul(c, z))
                            && s.mul(z, s.add(b, c)) == s.add(s.mul(z, b), s.mul(z, c))
                            && s.mul(s.add(b, c), z) == s.add(s.mul(b, z), s.mul(c, z))
                    })
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NegationError {
    #[error("map has {got} entries for a carrier of {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("map is not a permutation")]
    NotPermutation,
    #[error("map is not of order ≤ 2 at {0}")]
    NotOrderTwo(String),
    #[error("map is not additive at ({0}, {1})")]
    NotAdditive(String, String),
    #[error("{0} + (−){0} is not in A₀")]
    QuasiNegationFails(String),
    #[error("tangible {0} is not mapped into T")]
    TNotPreserved(String),
    #[error("{0} ∈ A₀ is mapped out of A₀")]
    A0NotPreserved(String),
    #[error("(−)(ab) = ((−)a)b = a((−)b) fails at a = {0}, b = {1}")]
    NotTCompatible(String, String),
}

/// A validated negation map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegationMap {
    perm: Vec<Elem>,
}

impl NegationMap {
    pub fn new(pair: &Pair, perm: Vec<Elem>) -> Result<Self, NegationError> {
        let n = pair.size();
        if perm.len() != n {
            return Err(NegationError::WrongLength {
                got: perm.len(),
                expected: n,
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(NegationError::NotPermutation);
            }
        }
        let name = |x: Elem| pair.label(x).to_string();
        for b in 0..n {
            if perm[perm[b]] != b {
                return Err(NegationError::NotOrderTwo(name(b)));
            }
        }
        for x in 0..n {
            for y in x..n {
                if perm[pair.add(x, y)] != pair.add(perm[x], perm[y]) {
                    return Err(NegationError::NotAdditive(name(x), name(y)));
                }
            }
        }
        for &a in pair.tangible() {
            if !pair.is_tangible(perm[a]) {
                return Err(NegationError::TNotPreserved(name(a)));
            }
        }
        for (b, &pb) in perm.iter().enumerate() {
            if pair.in_a_zero(b) && !pair.in_a_zero(pb) {
                return Err(NegationError::A0NotPreserved(name(b)));
            }
        }
        for (b, &pb) in perm.iter().enumerate() {
            if !pair.in_a_zero(pair.add(b, pb)) {
                return Err(NegationError::QuasiNegationFails(name(b)));
            }
        }
        for &a in pair.tangible() {
            for b in 0..n {
                let ab = perm[pair.mul(a, b)];
                if ab != pair.mul(perm[a], b) || ab != pair.mul(a, perm[b]) {
                    return Err(NegationError::NotTCompatible(name(a), name(b)));
                }
            }
        }
        Ok(NegationMap { perm })
    }

    pub fn apply(&self, b: Elem) -> Elem {
        self.perm[b]
    }

    pub fn perm(&self) -> &[Elem] {
        &self.perm
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn super_boolean_pair_and_witness() {
        let p = constructions::super_boolean();
        let w = p.property_n().unwrap();
        assert_eq!(p.label(w.one_dagger), "1");
        assert_eq!(p.label(w.e), "e");
        assert_eq!(w.all_daggers, vec![1]);
    }

    #[test]
    fn a_zero_without_zero_is_rejected() {
        let p = constructions::super_boolean();
        let err = Pair::new("bad", p.structure().clone(), &[1], &[2]).unwrap_err();
        assert!(matches!(err, PairError::A0NotSubmodule { .. }));
    }

    #[test]
    fn tangible_must_contain_one_and_be_central() {
        let p = constructions::super_boolean();
        let err = Pair::new("bad", p.structure().clone(), &[2], &[0, 2]).unwrap_err();
        assert_eq!(err, PairError::MissingOne);
    }

    #[test]
    fn heights() {
        let p = constructions::super_boolean();
        assert_eq!(p.height(0), Some(0));
        assert_eq!(p.height(1), Some(1));
        assert_eq!(p.height(2), Some(2));
        let m = constructions::minimal_bipotent(
            &constructions::Monoid::cyclic(2),
            constructions::BipotentKind::Second,
        )
        .unwrap();
        let inf = m.structure().index_of("inf").unwrap();
        assert_eq!(m.height(inf), Some(2));
    }

    #[test]
    fn height_outside_span() {
        // max-plus chain: the span of T is everything; use a pair whose T is
        // just {1} in the Boolean semiring with an extra idempotent element.
        let s = FiniteStructure::from_fn(
            ["0", "1", "x"].map(String::from).to_vec(),
            0,
            1,
            |a, b| a.max(b),
            |a, b| {
                if a == 0 || b == 0 {
                    0
                } else if a == 1 {
                    b
                } else if b == 1 {
                    a
                } else {
                    2
                }
            },
        )
        .unwrap();
        let p = Pair::new("chain", s, &[1], &[0]).unwrap();
        assert_eq!(p.height(2), None);
    }

    #[test]
    fn negation_maps() {
        let sb = constructions::super_boolean();
        assert!(sb.negation_map(&[0, 1, 2]).is_ok());
        let m = constructions::minimal_bipotent(
            &constructions::Monoid::cyclic(2),
            constructions::BipotentKind::Second,
        )
        .unwrap();
        let id: Vec<Elem> = (0..m.size()).collect();
        assert_eq!(
            m.negation_map(&id).unwrap_err(),
            NegationError::QuasiNegationFails("1".into())
        );
        let d = constructions::double(&sb).unwrap();
        assert!(d.pair.negation_map(d.switch.perm()).is_ok());
        assert!(matches!(
            sb.negation_map(&[0, 2, 1]).unwrap_err(),
            NegationError::NotAdditive(..) | NegationError::TNotPreserved(_)
        ));
    }

    #[test]
    fn distributive_center_of_commutative_semiring_is_everything() {
        let p = constructions::super_boolean();
        assert_eq!(p.distributive_center(), vec![0, 1, 2]);
    }
}
