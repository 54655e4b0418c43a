//! Congruences as canonical partitions, closure, and lattice enumeration.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::pair::Pair;
use crate::structure::{Elem, Operations};

/// Default bound on the number of congruences enumerated.
pub const DEFAULT_MAX_CONGRUENCES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("more than {cap} congruences (stopped after {found})")]
    CapExceeded { cap: usize, found: usize },
    #[error("the pair has no Property N witness")]
    NoPropertyN,
    #[error("partition has {got} entries, expected {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("Ae is not closed: {0}")]
    NotClosed(String),
}

/// An equivalence relation stored as a partition.
///
/// Block ids increase with the least member of each block, so two equal
/// relations have identical `block_of` vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_of: Vec<usize>,
    num_blocks: usize,
}

impl Congruence {
    /// Canonicalizes any labelling of blocks.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map: Vec<Option<usize>> = Vec::new();
        let mut next = 0;
        let block_of = labels
            .iter()
            .map(|&l| {
                if l >= map.len() {
                    map.resize(l + 1, None);
                }
                *map[l].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Congruence {
            block_of,
            num_blocks: next,
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Elem>]) -> Result<Self, CongruenceError> {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n {
                    return Err(CongruenceError::SizeMismatch {
                        got: x + 1,
                        expected: n,
                    });
                }
                labels[x] = i;
            }
        }
        // unlisted elements become singletons
        let unlisted = labels.iter_mut().filter(|l| **l == usize::MAX);
        for (extra, l) in (blocks.len()..).zip(unlisted) {
            *l = extra;
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn diagonal(n: usize) -> Self {
        Congruence {
            block_of: (0..n).collect(),
            num_blocks: n,
        }
    }

    pub fn all(n: usize) -> Self {
        Congruence {
            block_of: vec![0; n],
            num_blocks: n.min(1),
        }
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    #[inline]
    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// All related ordered pairs, diagonal included.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let blocks = self.blocks();
        let mut out = Vec::new();
        for x in 0..self.size() {
            for &y in &blocks[self.block_of[x]] {
                out.push((x, y));
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_blocks == self.size()
    }

    pub fn is_all(&self) -> bool {
        self.num_blocks <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut rep = vec![usize::MAX; self.num_blocks];
        self.block_of.iter().enumerate().all(|(x, &b)| {
            if rep[b] == usize::MAX {
                rep[b] = other.block_of[x];
                true
            } else {
                rep[b] == other.block_of[x]
            }
        })
    }

    /// Intersection of relations.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let k = other.num_blocks.max(1);
        let labels: Vec<usize> = (0..self.size())
            .map(|x| self.block_of[x] * k + other.block_of[x])
            .collect();
        Self::from_labels(&labels)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = (rx.min(ry), rx.max(ry));
        self.parent[hi] = lo;
        true
    }
}

/// Least congruence containing `base` and the generator pairs.
///
/// `base` must already be a congruence; only new merges are propagated.
pub fn generated_from(
    ops: &impl Operations,
    base: &Congruence,
    gens: &[(Elem, Elem)],
) -> Congruence {
    let n = ops.size();
    let mut uf = UnionFind::new(n);
    let mut first = vec![usize::MAX; base.num_blocks];
    for x in 0..n {
        let b = base.block_of[x];
        if first[b] == usize::MAX {
            first[b] = x;
        } else {
            uf.union(first[b], x);
        }
    }
    let mut work: VecDeque<(Elem, Elem)> = VecDeque::new();
    for &(x, y) in gens {
        if uf.union(x, y) {
            work.push_back((x, y));
        }
    }
    while let Some((x, y)) = work.pop_front() {
        let mut merge = |u: Elem, v: Elem, work: &mut VecDeque<(Elem, Elem)>| {
            if uf.union(u, v) {
                work.push_back((u, v));
            }
        };
        for c in 0..n {
            merge(ops.add(x, c), ops.add(y, c), &mut work);
            merge(ops.mul(x, c), ops.mul(y, c), &mut work);
            merge(ops.mul(c, x), ops.mul(c, y), &mut work);
        }
        for act in ops.actions() {
            merge(act[x], act[y], &mut work);
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_labels(&labels)
}

/// Least congruence containing the generator pairs.
pub fn generated_congruence(ops: &impl Operations, gens: &[(Elem, Elem)]) -> Congruence {
    generated_from(ops, &Congruence::diagonal(ops.size()), gens)
}

/// Join in the congruence lattice.
pub fn join(ops: &impl Operations, a: &Congruence, b: &Congruence) -> Congruence {
    let gens: Vec<(Elem, Elem)> = b
        .blocks()
        .iter()
        .flat_map(|blk| blk.iter().skip(1).map(move |&y| (blk[0], y)))
        .collect();
    generated_from(ops, a, &gens)
}

/// A related pair whose image under one operation is not related.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub operation: String,
    pub pair: (Elem, Elem),
    pub with: Elem,
    pub image: (Elem, Elem),
}

/// Checks closure of a partition under translations, products and actions.
pub fn check_congruence(ops: &impl Operations, c: &Congruence) -> Result<(), Violation> {
    let n = ops.size();
    if c.size() != n {
        return Err(Violation {
            operation: "size".into(),
            pair: (c.size(), n),
            with: 0,
            image: (0, 0),
        });
    }
    for blk in c.blocks() {
        let x = blk[0];
        for &y in &blk[1..] {
            for z in 0..n {
                let tests = [
                    ("+", ops.add(x, z), ops.add(y, z)),
                    ("right ·", ops.mul(x, z), ops.mul(y, z)),
                    ("left ·", ops.mul(z, x), ops.mul(z, y)),
                ];
                for (op, u, v) in tests {
                    if !c.related(u, v) {
                        return Err(Violation {
                            operation: op.into(),
                            pair: (x, y),
                            with: z,
                            image: (u, v),
                        });
                    }
                }
            }
            for (i, act) in ops.actions().iter().enumerate() {
                if !c.related(act[x], act[y]) {
                    return Err(Violation {
                        operation: format!("action {i}"),
                        pair: (x, y),
                        with: i,
                        image: (act[x], act[y]),
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn is_congruence(ops: &impl Operations, c: &Congruence) -> bool {
    check_congruence(ops, c).is_ok()
}

/// Least `(1,e)`-congruence.
pub fn diag_e(pair: &Pair) -> Result<Congruence, CongruenceError> {
    let w = pair.property_n().ok_or(CongruenceError::NoPropertyN)?;
    Ok(generated_congruence(pair, &[(pair.one(), w.e)]))
}

/// All congruences, sorted with the diagonal first and the all-relation last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
}

impl CongruenceLattice {
    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.congruences[i]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|d| d == c)
    }

    pub fn bottom(&self) -> &Congruence {
        &self.congruences[0]
    }

    pub fn top(&self) -> &Congruence {
        self.congruences.last().expect("lattice is nonempty")
    }

    /// Indices of congruences strictly above `i`.
    pub fn strictly_above(&self, i: usize) -> Vec<usize> {
        let c = &self.congruences[i];
        (0..self.len())
            .filter(|&j| j != i && c.refines(&self.congruences[j]))
            .collect()
    }

    /// Minimal elements among the congruences strictly above `i`.
    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        let above = self.strictly_above(i);
        above
            .iter()
            .copied()
            .filter(|&j| {
                !above
                    .iter()
                    .any(|&k| k != j && self.congruences[k].refines(&self.congruences[j]))
            })
            .collect()
    }
}

fn canonical_order(a: &Congruence, b: &Congruence) -> std::cmp::Ordering {
    b.num_blocks
        .cmp(&a.num_blocks)
        .then_with(|| a.block_of.cmp(&b.block_of))
}

/// Enumerates every congruence as a join of principal congruences.
pub fn enumerate_congruences(
    ops: &impl Operations,
    cap: usize,
) -> Result<CongruenceLattice, CongruenceError> {
    let n = ops.size();
    let bottom = Congruence::diagonal(n);
    let mut principals: Vec<Congruence> = Vec::new();
    let mut seen_principal: HashSet<Congruence> = HashSet::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let p = generated_congruence(ops, &[(x, y)]);
            if seen_principal.insert(p.clone()) {
                principals.push(p);
            }
        }
    }
    principals.sort_by(canonical_order);

    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut all: Vec<Congruence> = Vec::new();
    let mut queue: VecDeque<Congruence> = VecDeque::new();
    let mut push = |c: Congruence, all: &mut Vec<Congruence>, queue: &mut VecDeque<Congruence>| {
        if seen.insert(c.clone()) {
            all.push(c.clone());
            queue.push_back(c);
        }
        if all.len() > cap {
            Err(CongruenceError::CapExceeded {
                cap,
                found: all.len(),
            })
        } else {
            Ok(())
        }
    };
    push(bottom, &mut all, &mut queue)?;
    while let Some(c) = queue.pop_front() {
        for p in &principals {
            if p.refines(&c) {
                continue;
            }
            let j = join(ops, &c, p);
            push(j, &mut all, &mut queue)?;
        }
    }
    all.sort_by(canonical_order);
    Ok(CongruenceLattice { congruences: all })
}

/// `Cong_b` for `b = (b₁, b₂)`, computed from the sums of `(u s)v` with
/// `s = b₁ + b₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongB {
    pub b: (Elem, Elem),
    /// Sums `Σ (uᵢ s)vᵢ`, zero included.
    pub sums: Vec<Elem>,
    /// `related[x][y]`
    pub related: Vec<Vec<bool>>,
    pub is_congruence: bool,
    pub contains_b: bool,
    /// Positive e-type and either a semiring or `b₁ + b₂` central.
    pub hypotheses_hold: bool,
    /// Agrees with the congruence generated by `b` (only set when a congruence).
    pub equals_generated: Option<bool>,
}

impl CongB {
    pub fn as_congruence(&self) -> Option<Congruence> {
        if !self.is_congruence {
            return None;
        }
        let labels: Vec<usize> = self
            .related
            .iter()
            .map(|row| row.iter().position(|&r| r).expect("reflexive"))
            .collect();
        Some(Congruence::from_labels(&labels))
    }
}

pub fn cong_b(pair: &Pair, b1: Elem, b2: Elem) -> CongB {
    let n = pair.size();
    let s = pair.add(b1, b2);
    let mut products = HashSet::new();
    for u in 0..n {
        let us = pair.mul(u, s);
        for v in 0..n {
            products.insert(pair.mul(us, v));
        }
    }
    let mut in_sums = vec![false; n];
    in_sums[pair.zero()] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for w in 0..n {
            if !in_sums[w] {
                continue;
            }
            for &d in &products {
                let t = pair.add(w, d);
                if !in_sums[t] {
                    in_sums[t] = true;
                    changed = true;
                }
            }
        }
    }
    let sums: Vec<Elem> = (0..n).filter(|&w| in_sums[w]).collect();
    let related: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| sums.iter().any(|&w| pair.add(x, w) == pair.add(y, w)))
                .collect()
        })
        .collect();
    let transitive = (0..n)
        .all(|x| (0..n).all(|y| !related[x][y] || (0..n).all(|z| !related[y][z] || related[x][z])));
    let mut is_congruence = transitive;
    if is_congruence {
        let labels: Vec<usize> = related
            .iter()
            .map(|row| row.iter().position(|&r| r).expect("reflexive"))
            .collect();
        is_congruence = self::is_congruence(pair, &Congruence::from_labels(&labels));
    }
    let central = (0..n).all(|c| {
        pair.mul(c, s) == pair.mul(s, c)
            && (0..n).all(|d| pair.mul(pair.mul(c, s), d) == pair.mul(c, pair.mul(s, d)))
    });
    let e_type = crate::classify::classify_pair(pair).e_type.is_some();
    let hypotheses_hold = e_type && (pair.structure().is_semiring() || central);
    let mut out = CongB {
        b: (b1, b2),
        sums,
        related,
        is_congruence,
        contains_b: false,
        hypotheses_hold,
        equals_generated: None,
    };
    out.contains_b = out.related[b1][b2];
    if let Some(c) = out.as_congruence() {
        out.equals_generated = Some(c == generated_congruence(pair, &[(b1, b2)]));
    }
    out
}

/// The subalgebra `Ae = {be}` with the tangible action as extra operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    elems: Vec<Elem>,
    pos: Vec<Option<usize>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    actions: Vec<Vec<Elem>>,
}

impl Subalgebra {
    pub fn ae(pair: &Pair) -> Result<Self, CongruenceError> {
        let w = pair.property_n().ok_or(CongruenceError::NoPropertyN)?;
        let n = pair.size();
        let mut elems: Vec<Elem> = (0..n).map(|b| pair.mul(b, w.e)).collect();
        elems.sort_unstable();
        elems.dedup();
        Self::on(pair, elems)
    }

    /// Restriction to a closed subset.
    pub fn on(pair: &Pair, elems: Vec<Elem>) -> Result<Self, CongruenceError> {
        let n = pair.size();
        let m = elems.len();
        let mut pos = vec![None; n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = Some(i);
        }
        let locate = |x: Elem, what: &str| {
            pos[x].ok_or_else(|| {
                CongruenceError::NotClosed(format!("{what} gives {}", pair.label(x)))
            })
        };
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &x in &elems {
            for &y in &elems {
                add.push(locate(pair.add(x, y), "sum")?);
                mul.push(locate(pair.mul(x, y), "product")?);
            }
        }
        let mut actions = Vec::new();
        for &a in pair.tangible() {
            let act = elems
                .iter()
                .map(|&x| locate(pair.mul(a, x), "tangible action"))
                .collect::<Result<Vec<_>, _>>()?;
            if !actions.contains(&act) {
                actions.push(act);
            }
        }
        Ok(Subalgebra {
            elems,
            pos,
            add,
            mul,
            actions,
        })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn local(&self, x: Elem) -> Option<usize> {
        self.pos[x]
    }

    /// Restriction of a congruence of the ambient pair.
    pub fn restrict(&self, c: &Congruence) -> Congruence {
        let labels: Vec<usize> = self.elems.iter().map(|&x| c.block_of()[x]).collect();
        Congruence::from_labels(&labels)
    }
}

impl Operations for Subalgebra {
    fn size(&self) -> usize {
        self.elems.len()
    }

    fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.elems.len() + y]
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.elems.len() + y]
    }

    fn actions(&self) -> &[Vec<Elem>] {
        &self.actions
    }
}

/// Partition of `A` pulled back along the quotient map by `kernel`.
pub fn pull_back(kernel: &Congruence, on_quotient: &Congruence) -> Congruence {
    let labels: Vec<usize> = kernel
        .block_of()
        .iter()
        .map(|&b| on_quotient.block_of()[b])
        .collect();
    Congruence::from_labels(&labels)
}

/// Image of a congruence containing `kernel` in the quotient by `kernel`.
pub fn push_forward(kernel: &Congruence, c: &Congruence) -> Option<Congruence> {
    if !kernel.refines(c) {
        return None;
    }
    let mut labels = vec![0; kernel.num_blocks()];
    for (x, &b) in kernel.block_of().iter().enumerate() {
        labels[b] = c.block_of()[x];
    }
    Some(Congruence::from_labels(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{self, super_boolean};

    #[test]
    fn canonical_labels() {
        let c = Congruence::from_labels(&[5, 2, 5, 9]);
        assert_eq!(c.block_of(), &[0, 1, 0, 2]);
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(Congruence::diagonal(4).refines(&c));
        assert!(c.refines(&Congruence::all(4)));
        assert!(!c.refines(&Congruence::diagonal(4)));
        let d = Congruence::from_labels(&[0, 0, 1, 1]);
        assert_eq!(c.meet(&d), Congruence::diagonal(4));
    }

    #[test]
    fn generated_on_super_boolean() {
        let sb = super_boolean();
        assert_eq!(generated_congruence(&sb, &[]), Congruence::diagonal(3));
        assert_eq!(
            generated_congruence(&sb, &[(1, 1)]),
            Congruence::diagonal(3)
        );
        let c = generated_congruence(&sb, &[(1, 2)]);
        assert_eq!(c.blocks(), vec![vec![0], vec![1, 2]]);
        assert_eq!(diag_e(&sb).unwrap(), c);
        assert!(is_congruence(&sb, &c));
        let bad = Congruence::from_labels(&[0, 0, 1]);
        let v = check_congruence(&sb, &bad).unwrap_err();
        assert!(!bad.related(v.image.0, v.image.1));
    }

    #[test]
    fn super_boolean_lattice_is_a_chain() {
        let sb = super_boolean();
        let l = enumerate_congruences(&sb, DEFAULT_MAX_CONGRUENCES).unwrap();
        assert_eq!(l.len(), 3);
        assert!(l.bottom().is_diagonal());
        assert!(l.top().is_all());
        assert_eq!(l.get(1).blocks(), vec![vec![0], vec![1, 2]]);
        assert_eq!(l.upper_covers(0), vec![1]);
        assert_eq!(l.upper_covers(2), Vec::<usize>::new());
    }

    #[test]
    fn cap_is_enforced() {
        let sb = super_boolean();
        assert_eq!(
            enumerate_congruences(&sb, 2),
            Err(CongruenceError::CapExceeded { cap: 2, found: 3 })
        );
    }

    #[test]
    fn one_element_lattice() {
        let sb = super_boolean();
        let q = constructions::quotient_pair(&sb, &Congruence::all(3)).unwrap();
        let l = enumerate_congruences(&q, 10).unwrap();
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn boolean_has_both_partitions() {
        let l = enumerate_congruences(&constructions::boolean(), 10).unwrap();
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn cong_b_on_super_boolean() {
        let sb = super_boolean();
        let c = cong_b(&sb, 1, 2);
        assert!(c.is_congruence && c.contains_b && c.hypotheses_hold);
        // s = 1 + e = e and e absorbs, so everything is related
        assert!(c.as_congruence().unwrap().is_all());
        assert_eq!(c.equals_generated, Some(false));
        let d = cong_b(&sb, 0, 0);
        assert!(d.as_congruence().unwrap().is_diagonal());
        assert_eq!(d.equals_generated, Some(true));
    }

    #[test]
    fn ae_of_super_boolean() {
        let sb = super_boolean();
        let ae = Subalgebra::ae(&sb).unwrap();
        assert_eq!(ae.elements(), &[0, 2]);
        let l = enumerate_congruences(&ae, 10).unwrap();
        assert_eq!(l.len(), 2);
        let theta = generated_congruence(&sb, &[(1, 2)]);
        assert!(ae.restrict(&theta).is_diagonal());
    }

    #[test]
    fn pull_back_and_push_forward() {
        let k = Congruence::from_labels(&[0, 1, 1, 2]);
        let on_q = Congruence::from_labels(&[0, 1, 1]);
        let up = pull_back(&k, &on_q);
        assert_eq!(up.block_of(), &[0, 1, 1, 1]);
        assert_eq!(push_forward(&k, &up), Some(on_q));
        assert_eq!(push_forward(&k, &Congruence::diagonal(4)), None);
    }
}
