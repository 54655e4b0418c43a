use crate::pair::Pair;
use crate::structure::{Elem, FiniteStructure};

use super::{ConstructionError, Monoid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BipotentKind {
    /// `a + a = ∞`
    First,
    /// `a + a = a`
    Second,
}

/// Minimal `A₀`-bipotent pair over a monoid: carrier `T ∪ {0, ∞}`, distinct
/// summands add to `∞`, and `A₀ = {0, ∞}`.
///
/// `∞` is multiplicatively absorbing on nonzero elements.
pub fn minimal_bipotent(t: &Monoid, kind: BipotentKind) -> Result<Pair, ConstructionError> {
    let m = t.size();
    let inf = m + 1;
    let mut names = vec!["0".to_string()];
    names.extend(t.names().iter().cloned());
    names.push("inf".to_string());
    let add = |x: Elem, y: Elem| -> Elem {
        if x == 0 {
            y
        } else if y == 0 {
            x
        } else if x != y || x == inf {
            inf
        } else {
            match kind {
                BipotentKind::First => inf,
                BipotentKind::Second => x,
            }
        }
    };
    let mul = |x: Elem, y: Elem| -> Elem {
        if x == 0 || y == 0 {
            0
        } else if x == inf || y == inf {
            inf
        } else {
            t.mul(x - 1, y - 1) + 1
        }
    };
    let s = FiniteStructure::from_fn(names, 0, t.identity() + 1, add, mul)?;
    let tangible: Vec<Elem> = (1..=m).collect();
    let label = match kind {
        BipotentKind::First => "first",
        BipotentKind::Second => "second",
    };
    Ok(Pair::new(
        format!("minimal_bipotent(order {m}, {label})"),
        s,
        &tangible,
        &[0, inf],
    )?)
}

/// Truncated max-plus pair: `{-inf, 0, …, m}` with `max` as addition and
/// addition capped at `m` as multiplication; `A₀ = {-inf}`.
pub fn max_plus(m: usize) -> Pair {
    let mut names = vec!["-inf".to_string()];
    names.extend((0..=m).map(|i| i.to_string()));
    let s = FiniteStructure::from_fn(
        names,
        0,
        1,
        |x, y| x.max(y),
        |x, y| {
            if x == 0 || y == 0 {
                0
            } else {
                ((x - 1) + (y - 1)).min(m) + 1
            }
        },
    )
    .expect("max-plus tables are valid");
    let tangible: Vec<Elem> = (1..=m + 1).collect();
    Pair::new(format!("max_plus({m})"), s, &tangible, &[0]).expect("max-plus pair is valid")
}

/// Boolean semiring `{0, 1}` with `1 + 1 = 1`, as the degenerate pair.
pub fn boolean() -> Pair {
    let s = FiniteStructure::from_fn(
        vec!["0".into(), "1".into()],
        0,
        1,
        |x, y| x.max(y),
        |x, y| x.min(y),
    )
    .expect("boolean tables are valid");
    Pair::new("boolean", s, &[1], &[0, 1]).expect("boolean pair is valid")
}

/// The classical pair of the prime field `F_p`: `T = F_p^×`, `A₀ = {0}`.
pub fn prime_field(p: usize) -> Result<Pair, ConstructionError> {
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(ConstructionError::BadMonoid(format!("{p} is not prime")));
    }
    let s = FiniteStructure::from_fn(
        (0..p).map(|i| i.to_string()).collect(),
        0,
        1,
        |x, y| (x + y) % p,
        |x, y| (x * y) % p,
    )?;
    let t: Vec<Elem> = (1..p).collect();
    Ok(Pair::new(format!("F{p}"), s, &t, &[0])?)
}
