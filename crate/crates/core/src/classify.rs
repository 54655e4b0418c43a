//! Exhaustive classification of a pair.

use serde::Serialize;

use crate::pair::Pair;
use crate::structure::{Elem, Multiples, Operations};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `a + a ∈ A₀` for every tangible `a`.
    First,
    Second,
}

/// Every flag computed by [`classify_pair`].
///
/// Fields that depend on `e` are `None` when the pair has no Property N
/// witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub size: usize,
    pub kind: Kind,
    pub proper: bool,
    pub shallow: bool,
    pub cancellative: bool,
    pub metatangible: bool,
    pub a0_bipotent: bool,
    pub admissible: bool,
    pub idempotent: bool,
    pub degenerate: bool,
    pub semiring: bool,
    pub t_distributive: bool,
    pub characteristic: (usize, usize),
    pub a0_characteristic: usize,
    pub property_n: bool,
    pub e_distributive: Option<bool>,
    pub e_central: Option<bool>,
    pub e_idempotent: Option<bool>,
    pub e_final: Option<bool>,
    pub e_type: Option<(usize, usize)>,
}

impl PairClassification {
    /// Some e-type `(k, k')` exists (always with `k > 0`).
    pub fn positive_e_type(&self) -> bool {
        self.e_type.is_some()
    }
}

pub fn classify_pair(pair: &Pair) -> PairClassification {
    let s = pair.structure();
    let n = s.size();
    let t = pair.tangible();
    let in_a0 = |x: Elem| pair.in_a_zero(x);
    let mult = Multiples::new(s);

    let kind = if t.iter().all(|&a| in_a0(s.add(a, a))) {
        Kind::First
    } else {
        Kind::Second
    };
    let proper = t.iter().all(|&a| a == s.zero() || !in_a0(a));
    let shallow = (0..n).all(|b| pair.is_tangible(b) || in_a0(b));
    let cancellative = t.iter().all(|&a| {
        (0..n).all(|b| !in_a0(s.mul(a, b)) || in_a0(b))
            && (0..n).all(|b1| ((b1 + 1)..n).all(|b2| s.mul(a, b1) != s.mul(a, b2)))
    });
    let metatangible = t.iter().all(|&a1| {
        t.iter().all(|&a2| {
            let sum = s.add(a1, a2);
            pair.is_tangible(sum) || in_a0(sum)
        })
    });
    let a0_bipotent = metatangible
        && t.iter().all(|&a1| {
            t.iter().all(|&a2| {
                let sum = s.add(a1, a2);
                sum == a1 || sum == a2 || in_a0(sum)
            })
        });
    let admissible = pair.heights().iter().all(Option::is_some);

    let one = s.one();
    let characteristic = characteristic(pair);
    let a0_characteristic = (1..=mult.horizon())
        .find(|&k| (0..n).all(|b| in_a0(mult.get(k, b))))
        .unwrap_or(0);

    let (e_distributive, e_central, e_idempotent, e_final, e_type) = match pair.property_n() {
        None => (None, None, None, None, None),
        Some(w) => {
            let e = w.e;
            let circ: Vec<Elem> = (0..n).map(|b| s.add(b, s.mul(w.one_dagger, b))).collect();
            let e_distributive = (1..=mult.horizon()).all(|k| {
                let coeff = s.add(one, mult.get(k, e));
                (0..n).all(|b| s.add(b, mult.get(k, circ[b])) == s.mul(coeff, b))
            });
            let e_central = e_distributive && pair.distributive_center().contains(&e);
            let e_idempotent = s.add(e, e) == e;
            let e_type = find_e_type(pair, &mult, &circ);
            (
                Some(e_distributive),
                Some(e_central),
                Some(e_idempotent),
                Some(e_type == Some((1, 1))),
                e_type,
            )
        }
    };

    PairClassification {
        size: n,
        kind,
        proper,
        shallow,
        cancellative,
        metatangible,
        a0_bipotent,
        admissible,
        idempotent: s.is_idempotent(),
        degenerate: (0..n).all(in_a0),
        semiring: s.is_semiring(),
        t_distributive: pair.t_distributive(),
        characteristic,
        a0_characteristic,
        property_n: pair.property_n().is_some(),
        e_distributive,
        e_central,
        e_idempotent,
        e_final,
        e_type,
    }
}

/// `(p, k)` with `p` minimal, then `k ≥ 1` minimal, such that `(p+k)·1 = k·1`.
pub fn characteristic(pair: &Pair) -> (usize, usize) {
    let s = pair.structure();
    let mut seen = vec![0usize; s.size()];
    let mut x = s.one();
    let mut k = 1;
    loop {
        if seen[x] != 0 {
            return (k - seen[x], seen[x]);
        }
        seen[x] = k;
        x = s.add(x, s.one());
        k += 1;
    }
}

/// Whether `b + k·b° = k'·b°` for every `b`.
pub fn has_e_type(pair: &Pair, k: usize, k_prime: usize) -> bool {
    let s = pair.structure();
    (0..s.size()).all(|b| match pair.circ(b) {
        Some(c) => s.add(b, s.multiple(k, c)) == s.multiple(k_prime, c),
        None => false,
    })
}

/// Smallest `k`, then smallest `k' ≤ k`, with `b + k·b° = k'·b°` for all `b`.
fn find_e_type(pair: &Pair, mult: &Multiples, circ: &[Elem]) -> Option<(usize, usize)> {
    let s = pair.structure();
    let n = s.size();
    let holds = |k: usize, kp: usize| {
        (0..n).all(|b| s.add(b, mult.get(k, circ[b])) == mult.get(kp, circ[b]))
    };
    let h = mult.horizon();
    // Past the horizon the vector k·(−) repeats while every k' ≤ h is
    // available, so one extra period settles the search.
    (1..=h + mult.period()).find_map(|k| (1..=k.min(h)).find(|&kp| holds(k, kp)).map(|kp| (k, kp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{self, BipotentKind, Monoid};

    #[test]
    fn super_boolean_classification() {
        let c = classify_pair(&constructions::super_boolean());
        assert_eq!(c.kind, Kind::First);
        assert!(c.proper && c.shallow);
        assert_eq!(c.e_type, Some((1, 1)));
        assert_eq!(c.e_final, Some(true));
        assert_eq!(c.e_idempotent, Some(true));
        assert_eq!(c.characteristic, (1, 2));
        assert_eq!(c.a0_characteristic, 2);
    }

    #[test]
    fn minimal_bipotent_kinds() {
        let c2 = Monoid::cyclic(2);
        let first = constructions::minimal_bipotent(&c2, BipotentKind::First).unwrap();
        let second = constructions::minimal_bipotent(&c2, BipotentKind::Second).unwrap();
        assert_eq!(classify_pair(&first).kind, Kind::First);
        assert_eq!(classify_pair(&second).kind, Kind::Second);
        let w = second.property_n().unwrap();
        assert_eq!(second.label(w.one_dagger), "g");
        assert_eq!(second.label(w.e), "inf");
        let w = first.property_n().unwrap();
        assert_eq!(first.label(w.one_dagger), "1");
        let trivial =
            constructions::minimal_bipotent(&Monoid::trivial(), BipotentKind::Second).unwrap();
        assert!(trivial.property_n().is_none());
        assert_eq!(classify_pair(&trivial).e_type, None);
    }

    #[test]
    fn max_plus_lacks_property_n() {
        let p = constructions::max_plus(4);
        assert!(p.property_n().is_none());
        let c = classify_pair(&p);
        assert!(c.e_final.is_none());
        assert!(c.idempotent);
        assert_eq!(c.characteristic, (1, 1));
        assert_eq!(c.a0_characteristic, 0);
    }

    #[test]
    fn e_type_matches_predicate() {
        for p in constructions::catalog() {
            let c = classify_pair(&p);
            if let Some((k, kp)) = c.e_type {
                assert!(has_e_type(&p, k, kp), "{}", p.name());
                for smaller in 1..k {
                    for kp2 in 1..=smaller {
                        assert!(!has_e_type(&p, smaller, kp2), "{}", p.name());
                    }
                }
            }
            assert_eq!(c.e_type == Some((1, 1)), c.e_final == Some(true));
            if c.e_final == Some(true) {
                assert_eq!(c.e_idempotent, Some(true));
            }
        }
    }
}
