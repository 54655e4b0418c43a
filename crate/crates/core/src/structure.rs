//! Finite nd-semirings stored as dense operation tables.

use serde::Serialize;
use thiserror::Error;

/// Dense index of a carrier element.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("carrier is empty")]
    Empty,
    #[error("{table} table has wrong shape at row {row} (expected {expected} entries)")]
    NotSquare {
        table: &'static str,
        row: usize,
        expected: usize,
    },
    #[error("{what} refers to element {index}, but the carrier has {size} elements")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("duplicate element label `{0}`")]
    DuplicateName(String),
    #[error("addition is not commutative: {x} + {y} != {y} + {x}")]
    NonCommutativeAdd { x: String, y: String },
    #[error("addition is not associative at ({x}, {y}, {z})")]
    NonAssociativeAdd { x: String, y: String, z: String },
    #[error("zero is not additively neutral: 0 + {x} != {x}")]
    ZeroNotNeutral { x: String },
    #[error("zero is not multiplicatively absorbing at {x}")]
    ZeroNotAbsorbing { x: String },
    #[error("one is not a multiplicative unit at {x}")]
    OneNotUnit { x: String },
}

/// Properties recorded by exhaustive check when a structure is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub mul_associative: bool,
    pub distributive: bool,
    pub commutative_mul: bool,
}

/// The table-level view shared by structures and their subalgebras.
///
/// Congruence and spectrum computations only need the two operations plus
/// any extra unary operators (the tangible action on a subalgebra).
pub trait Operations {
    fn size(&self) -> usize;
    fn add(&self, x: Elem, y: Elem) -> Elem;
    fn mul(&self, x: Elem, y: Elem) -> Elem;
    fn actions(&self) -> &[Vec<Elem>] {
        &[]
    }
}

/// An nd-semiring: commutative associative addition with neutral zero, and a
/// multiplication for which zero is absorbing and one is a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    names: Vec<String>,
    zero: Elem,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    flags: StructureFlags,
}

impl FiniteStructure {
    /// Validates raw tables and computes the axiom flags.
    pub fn new(
        names: Vec<String>,
        zero: Elem,
        one: Elem,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        let add = flatten("add", add, n)?;
        let mul = flatten("mul", mul, n)?;
        Self::from_flat(names, zero, one, add, mul)
    }

    /// Builds a structure from operation closures over `0..n`.
    pub fn from_fn(
        names: Vec<String>,
        zero: Elem,
        one: Elem,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        let mut a = Vec::with_capacity(n * n);
        let mut m = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                a.push(add(x, y));
                m.push(mul(x, y));
            }
        }
        Self::from_flat(names, zero, one, a, m)
    }

    fn from_flat(
        names: Vec<String>,
        zero: Elem,
        one: Elem,
        add: Vec<Elem>,
        mul: Vec<Elem>,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(StructureError::DuplicateName(name.clone()));
            }
        }
        for (what, index) in [("zero", zero), ("one", one)] {
            if index >= n {
                return Err(StructureError::IndexOutOfRange {
                    what,
                    index,
                    size: n,
                });
            }
        }
        for (what, table) in [("add", &add), ("mul", &mul)] {
            if let Some(&index) = table.iter().find(|&&v| v >= n) {
                return Err(StructureError::IndexOutOfRange {
                    what,
                    index,
                    size: n,
                });
            }
        }
        let mut s = FiniteStructure {
            names,
            zero,
            one,
            add,
            mul,
            flags: StructureFlags {
                mul_associative: false,
                distributive: false,
                commutative_mul: false,
            },
        };
        s.check_axioms()?;
        s.flags = s.compute_flags();
        Ok(s)
    }

    fn check_axioms(&self) -> Result<(), StructureError> {
        let n = self.size();
        let name = |x: Elem| self.names[x].clone();
        for x in 0..n {
            if self.add(self.zero, x) != x {
                return Err(StructureError::ZeroNotNeutral { x: name(x) });
            }
            if self.mul(self.zero, x) != self.zero || self.mul(x, self.zero) != self.zero {
                return Err(StructureError::ZeroNotAbsorbing { x: name(x) });
            }
            if self.mul(self.one, x) != x || self.mul(x, self.one) != x {
                return Err(StructureError::OneNotUnit { x: name(x) });
            }
            for y in (x + 1)..n {
                if self.add(x, y) != self.add(y, x) {
                    return Err(StructureError::NonCommutativeAdd {
                        x: name(x),
                        y: name(y),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.add(x, y);
                for z in 0..n {
                    if self.add(xy, z) != self.add(x, self.add(y, z)) {
                        return Err(StructureError::NonAssociativeAdd {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_flags(&self) -> StructureFlags {
        let n = self.size();
        let mut mul_associative = true;
        let mut distributive = true;
        let mut commutative_mul = true;
        for x in 0..n {
            for y in 0..n {
                if commutative_mul && self.mul(x, y) != self.mul(y, x) {
                    commutative_mul = false;
                }
                let xy = self.mul(x, y);
                let sum = self.add(x, y);
                for z in 0..n {
                    if mul_associative && self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        mul_associative = false;
                    }
                    if distributive
                        && (self.mul(z, sum) != self.add(self.mul(z, x), self.mul(z, y))
                            || self.mul(sum, z) != self.add(self.mul(x, z), self.mul(y, z)))
                    {
                        distributive = false;
                    }
                }
            }
        }
        StructureFlags {
            mul_associative,
            distributive,
            commutative_mul,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == label)
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn flags(&self) -> StructureFlags {
        self.flags
    }

    /// Multiplicatively associative and distributive.
    pub fn is_semiring(&self) -> bool {
        self.flags.mul_associative && self.flags.distributive
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size()).all(|x| self.add(x, x) == x)
    }

    /// `k·x = x + … + x` (k summands), with `0·x = 0`.
    pub fn multiple(&self, k: usize, x: Elem) -> Elem {
        (0..k).fold(self.zero, |acc, _| self.add(acc, x))
    }

    pub fn add_row(&self, x: Elem) -> &[Elem] {
        let n = self.size();
        &self.add[x * n..(x + 1) * n]
    }

    pub fn mul_row(&self, x: Elem) -> &[Elem] {
        let n = self.size();
        &self.mul[x * n..(x + 1) * n]
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        (0..self.size()).map(|x| self.add_row(x).to_vec()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        (0..self.size()).map(|x| self.mul_row(x).to_vec()).collect()
    }

    /// Copy of this structure with relabelled elements.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.size() {
            return Err(StructureError::NotSquare {
                table: "names",
                row: 0,
                expected: self.size(),
            });
        }
        Self::from_flat(
            names,
            self.zero,
            self.one,
            self.add.clone(),
            self.mul.clone(),
        )
    }
}

impl Operations for FiniteStructure {
    fn size(&self) -> usize {
        self.names.len()
    }

    #[inline]
    fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.names.len() + y]
    }

    #[inline]
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.names.len() + y]
    }
}

fn flatten(
    table: &'static str,
    rows: Vec<Vec<Elem>>,
    n: usize,
) -> Result<Vec<Elem>, StructureError> {
    if rows.len() != n {
        return Err(StructureError::NotSquare {
            table,
            row: rows.len(),
            expected: n,
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (row, r) in rows.into_iter().enumerate() {
        if r.len() != n {
            return Err(StructureError::NotSquare {
                table,
                row,
                expected: n,
            });
        }
        flat.extend(r);
    }
    Ok(flat)
}

/// Joint sequence of iterated sums `k ↦ (k·x)_x` for `k ≥ 1`.
///
/// The vector sequence is eventually periodic; the stored rows cover one
/// full preperiod and period, so every condition that depends only on the
/// vector `k·(−)` can be decided exactly by scanning `1..=rows()`.
#[derive(Debug, Clone)]
pub struct Multiples {
    rows: Vec<Vec<Elem>>,
    cycle_start: usize,
}

impl Multiples {
    pub fn new(s: &FiniteStructure) -> Self {
        use std::collections::HashMap;
        let n = s.size();
        let base: Vec<Elem> = (0..n).collect();
        let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut rows = Vec::new();
        let mut cur = base.clone();
        loop {
            if let Some(&k) = seen.get(&cur) {
                return Multiples {
                    rows,
                    cycle_start: k,
                };
            }
            seen.insert(cur.clone(), rows.len() + 1);
            let next: Vec<Elem> = cur.iter().zip(&base).map(|(&c, &x)| s.add(c, x)).collect();
            rows.push(cur);
            cur = next;
        }
    }

    /// Number of distinct vectors; `k` ranges over `1..=horizon()`.
    pub fn horizon(&self) -> usize {
        self.rows.len()
    }

    /// First `k` of the periodic part.
    pub fn cycle_start(&self) -> usize {
        self.cycle_start
    }

    pub fn period(&self) -> usize {
        self.rows.len() + 1 - self.cycle_start
    }

    /// `k·x` for any `k ≥ 1`.
    pub fn get(&self, k: usize, x: Elem) -> Elem {
        assert!(k >= 1, "multiples are indexed from 1");
        let idx = if k <= self.rows.len() {
            k
        } else {
            self.cycle_start + (k - self.cycle_start) % self.period()
        };
        self.rows[idx - 1][x]
    }
}
