//! Finite hypersemirings: a multiplicative monoid with set-valued addition.

use serde::Serialize;
use thiserror::Error;

use crate::structure::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("carrier is empty")]
    Empty,
    #[error("{table} table has the wrong shape")]
    Shape { table: &'static str },
    #[error("element index {0} out of range")]
    OutOfRange(Elem),
    #[error("duplicate element label `{0}`")]
    DuplicateName(String),
    #[error("carrier larger than 63 elements is not supported")]
    TooLarge,
    #[error("{x} ⊞ {y} is empty")]
    EmptySum { x: String, y: String },
    #[error("hyperaddition is not commutative at ({x}, {y})")]
    NotCommutative { x: String, y: String },
    #[error("hyperaddition is not associative at ({x}, {y}, {z})")]
    HyperAddNotAssociative { x: String, y: String, z: String },
    #[error("0 ⊞ {x} is not {{{x}}}")]
    ZeroLaw { x: String },
    #[error("multiplication is not a monoid with absorbing zero ({0})")]
    MulNotMonoid(String),
    #[error("action does not distribute: {a}({x} ⊞ {y}) != {a}{x} ⊞ {a}{y}")]
    NotModule { a: String, x: String, y: String },
    #[error("hypernegation of {0} is not unique")]
    NegationNotUnique(String),
    #[error("hypernegation fails at {0}")]
    NegationInvalid(String),
}

/// Subset of a carrier with at most 63 elements, as a bitmask.
pub type Mask = u64;

/// A validated finite hypersemiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperStructure {
    names: Vec<String>,
    zero: Elem,
    one: Elem,
    mul: Vec<Elem>,
    hyperadd: Vec<Mask>,
    hypernegation: Option<Vec<Elem>>,
    tangible: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HyperFlags {
    /// Every element has exactly one hypernegative, and negation is an
    /// involution reversing hypersums.
    pub hyperring: bool,
    /// Hyperring whose nonzero elements form a multiplicative group.
    pub hyperfield: bool,
}

impl HyperStructure {
    /// Validates the tables. `tangible` defaults to every nonzero element.
    ///
    /// When `hypernegation` is given, `0 ∈ a ⊞ (−a)` and uniqueness of the
    /// hypernegative are checked for every `a`.
    pub fn new(
        names: Vec<String>,
        zero: Elem,
        one: Elem,
        mul: Vec<Vec<Elem>>,
        hyperadd: Vec<Vec<Vec<Elem>>>,
        hypernegation: Option<Vec<Elem>>,
        tangible: Option<Vec<Elem>>,
    ) -> Result<Self, HyperError> {
        let n = names.len();
        if n == 0 {
            return Err(HyperError::Empty);
        }
        if n > 63 {
            return Err(HyperError::TooLarge);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(HyperError::DuplicateName(name.clone()));
            }
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(HyperError::Shape { table: "mul" });
        }
        if hyperadd.len() != n || hyperadd.iter().any(|r| r.len() != n) {
            return Err(HyperError::Shape { table: "hyperadd" });
        }
        let check = |x: Elem| {
            if x < n {
                Ok(x)
            } else {
                Err(HyperError::OutOfRange(x))
            }
        };
        check(zero)?;
        check(one)?;
        let mut mul_flat = Vec::with_capacity(n * n);
        for row in mul {
            for x in row {
                mul_flat.push(check(x)?);
            }
        }
        let mut add_flat = Vec::with_capacity(n * n);
        for row in hyperadd {
            for set in row {
                let mut m: Mask = 0;
                for x in set {
                    m |= 1 << check(x)?;
                }
                add_flat.push(m);
            }
        }
        if let Some(neg) = &hypernegation {
            if neg.len() != n {
                return Err(HyperError::Shape {
                    table: "hypernegation",
                });
            }
            for &x in neg {
                check(x)?;
            }
        }
        let tangible = match tangible {
            Some(t) => {
                for &x in &t {
                    check(x)?;
                }
                let mut t = t;
                t.sort_unstable();
                t.dedup();
                t
            }
            None => (0..n).filter(|&x| x != zero).collect(),
        };
        let h = HyperStructure {
            names,
            zero,
            one,
            mul: mul_flat,
            hyperadd: add_flat,
            hypernegation,
            tangible,
        };
        h.check()?;
        Ok(h)
    }

    fn check(&self) -> Result<(), HyperError> {
        let n = self.size();
        let name = |x: Elem| self.names[x].clone();
        for x in 0..n {
            if self.mul(self.zero, x) != self.zero || self.mul(x, self.zero) != self.zero {
                return Err(HyperError::MulNotMonoid(format!(
                    "zero not absorbing at {}",
                    name(x)
                )));
            }
            if self.mul(self.one, x) != x || self.mul(x, self.one) != x {
                return Err(HyperError::MulNotMonoid(format!(
                    "one not a unit at {}",
                    name(x)
                )));
            }
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(HyperError::MulNotMonoid(format!(
                            "not associative at ({}, {}, {})",
                            name(x),
                            name(y),
                            name(z)
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.sum(x, y) == 0 {
                    return Err(HyperError::EmptySum {
                        x: name(x),
                        y: name(y),
                    });
                }
                if self.sum(x, y) != self.sum(y, x) {
                    return Err(HyperError::NotCommutative {
                        x: name(x),
                        y: name(y),
                    });
                }
            }
            if self.sum(self.zero, x) != 1 << x {
                return Err(HyperError::ZeroLaw { x: name(x) });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = self.set_sum(self.sum(x, y), 1 << z);
                    let right = self.set_sum(1 << x, self.sum(y, z));
                    if left != right {
                        return Err(HyperError::HyperAddNotAssociative {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let left = self.scale(a, self.sum(x, y));
                    let right = self.sum(self.mul(a, x), self.mul(a, y));
                    if left != right {
                        return Err(HyperError::NotModule {
                            a: name(a),
                            x: name(x),
                            y: name(y),
                        });
                    }
                }
            }
        }
        if let Some(neg) = &self.hypernegation {
            for (a, na) in neg.iter().enumerate() {
                let negs: Vec<Elem> = (0..n)
                    .filter(|&b| self.sum(a, b) & (1 << self.zero) != 0)
                    .collect();
                if !negs.contains(na) {
                    return Err(HyperError::NegationInvalid(name(a)));
                }
                if negs.len() != 1 {
                    return Err(HyperError::NegationNotUnique(name(a)));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn tangible(&self) -> &[Elem] {
        &self.tangible
    }

    pub fn hypernegation(&self) -> Option<&[Elem]> {
        self.hypernegation.as_deref()
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.size() + y]
    }

    /// `x ⊞ y` as a bitmask.
    #[inline]
    pub fn sum(&self, x: Elem, y: Elem) -> Mask {
        self.hyperadd[x * self.size() + y]
    }

    pub fn sum_set(&self, x: Elem, y: Elem) -> Vec<Elem> {
        members(self.sum(x, y))
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        let n = self.size();
        (0..n)
            .map(|x| (0..n).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    pub fn hyperadd_table(&self) -> Vec<Vec<Vec<Elem>>> {
        let n = self.size();
        (0..n)
            .map(|x| (0..n).map(|y| self.sum_set(x, y)).collect())
            .collect()
    }

    /// Set-extended hyperaddition.
    pub fn set_sum(&self, s1: Mask, s2: Mask) -> Mask {
        let mut out = 0;
        for x in iter_mask(s1) {
            for y in iter_mask(s2) {
                out |= self.sum(x, y);
            }
        }
        out
    }

    /// Elementwise product of two subsets.
    pub fn set_mul(&self, s1: Mask, s2: Mask) -> Mask {
        let mut out = 0;
        for x in iter_mask(s1) {
            for y in iter_mask(s2) {
                out |= 1 << self.mul(x, y);
            }
        }
        out
    }

    fn scale(&self, a: Elem, s: Mask) -> Mask {
        self.set_mul(1 << a, s)
    }

    /// All `b` with `0 ∈ a ⊞ b`.
    pub fn hypernegatives(&self, a: Elem) -> Vec<Elem> {
        (0..self.size())
            .filter(|&b| self.sum(a, b) & (1 << self.zero) != 0)
            .collect()
    }

    /// Unique hypernegatives, when they exist for every element.
    pub fn unique_hypernegation(&self) -> Option<Vec<Elem>> {
        (0..self.size())
            .map(|a| match self.hypernegatives(a).as_slice() {
                [b] => Some(*b),
                _ => None,
            })
            .collect()
    }

    /// `e = 1 ⊞ (−1)` when `1` has a unique hypernegative.
    pub fn e(&self) -> Option<Mask> {
        let neg = self.unique_hypernegation()?;
        Some(self.sum(self.one, neg[self.one]))
    }

    pub fn flags(&self) -> HyperFlags {
        let n = self.size();
        let hyperring = self.unique_hypernegation().is_some_and(|neg| {
            (0..n).all(|a| neg[neg[a]] == a)
                && (0..n).all(|x| {
                    (0..n).all(|y| {
                        let s = self.sum(x, y);
                        let negated = iter_mask(s).fold(0, |m, z| m | (1 << neg[z]));
                        negated == self.sum(neg[y], neg[x])
                    })
                })
        });
        let nonzero: Vec<Elem> = (0..n).filter(|&x| x != self.zero).collect();
        let group = nonzero.iter().all(|&x| {
            nonzero.iter().all(|&y| self.mul(x, y) != self.zero)
                && nonzero.iter().any(|&y| self.mul(x, y) == self.one)
        });
        HyperFlags {
            hyperring,
            hyperfield: hyperring && group,
        }
    }

    /// Display label of a subset, e.g. `{0,1}`.
    pub fn mask_label(&self, m: Mask) -> String {
        let parts: Vec<&str> = iter_mask(m).map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub fn iter_mask(m: Mask) -> impl Iterator<Item = Elem> {
    (0..64).filter(move |&i| m & (1 << i) != 0)
}

pub fn members(m: Mask) -> Vec<Elem> {
    iter_mask(m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn krasner_and_signs_validate() {
        let k = constructions::krasner();
        assert!(k.flags().hyperfield);
        let s = constructions::signs();
        assert!(s.flags().hyperfield);
        assert_eq!(s.e(), Some(0b111));
    }

    #[test]
    fn zero_law_violation() {
        let names = vec!["0".to_string(), "1".to_string()];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let add = vec![vec![vec![0], vec![0]], vec![vec![0], vec![0, 1]]];
        let err = HyperStructure::new(names, 0, 1, mul, add, None, None).unwrap_err();
        assert_eq!(err, HyperError::ZeroLaw { x: "1".into() });
    }

    #[test]
    fn claimed_hypernegation_must_be_unique() {
        // Krasner with the sum 1 ⊞ 1 = {0,1}: −1 = 1 is the unique choice
        let k = constructions::krasner();
        let ok = HyperStructure::new(
            k.names().to_vec(),
            0,
            1,
            k.mul_table(),
            k.hyperadd_table(),
            Some(vec![0, 1]),
            None,
        );
        assert!(ok.is_ok());
        let g = constructions::group_hyperfield(2).unwrap();
        let err = HyperStructure::new(
            g.names().to_vec(),
            0,
            1,
            g.mul_table(),
            g.hyperadd_table(),
            Some(vec![0, 2, 1]),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, HyperError::NegationInvalid(_)));
        // every nonzero sum is the whole carrier: 1 has two hypernegatives
        let names = ["0", "1", "a"].map(String::from).to_vec();
        let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]];
        let add = (0..3)
            .map(|x| {
                (0..3)
                    .map(|y| match (x, y) {
                        (0, y) => vec![y],
                        (x, 0) => vec![x],
                        _ => vec![0, 1, 2],
                    })
                    .collect()
            })
            .collect();
        let err =
            HyperStructure::new(names, 0, 1, mul, add, Some(vec![0, 1, 2]), None).unwrap_err();
        assert!(matches!(err, HyperError::NegationNotUnique(_)));
    }
}
