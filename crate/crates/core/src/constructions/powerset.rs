use std::collections::BTreeSet;

use crate::hyper::{iter_mask, HyperStructure, Mask};
use crate::pair::Pair;
use crate::structure::{Elem, FiniteStructure};

use super::ConstructionError;

/// Krasner hyperfield `{0, 1}` with `1 ⊞ 1 = {0, 1}`.
pub fn krasner() -> HyperStructure {
    HyperStructure::new(
        vec!["0".into(), "1".into()],
        0,
        1,
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![vec![0], vec![1]], vec![vec![1], vec![0, 1]]],
        Some(vec![0, 1]),
        None,
    )
    .expect("Krasner hyperfield is valid")
}

/// Hyperfield of signs `{0, 1, -1}`.
pub fn signs() -> HyperStructure {
    let add = vec![
        vec![vec![0], vec![1], vec![2]],
        vec![vec![1], vec![1], vec![0, 1, 2]],
        vec![vec![2], vec![0, 1, 2], vec![2]],
    ];
    HyperStructure::new(
        vec!["0".into(), "1".into(), "-1".into()],
        0,
        1,
        vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
        add,
        Some(vec![0, 2, 1]),
        None,
    )
    .expect("sign hyperfield is valid")
}

/// `C_n ∪ {0}` with `x ⊞ y = {x, y}` for distinct nonzero `x, y` and
/// `x ⊞ x = H ∖ {x}`.
pub fn group_hyperfield(n: usize) -> Result<HyperStructure, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadMonoid(
            "group order must be positive".into(),
        ));
    }
    let size = n + 1;
    let mut names = vec!["0".to_string()];
    names.extend((0..n).map(|i| match i {
        0 => "1".to_string(),
        1 => "g".to_string(),
        i => format!("g{i}"),
    }));
    let mul = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    if x == 0 || y == 0 {
                        0
                    } else {
                        1 + (x - 1 + y - 1) % n
                    }
                })
                .collect()
        })
        .collect();
    let add = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| match (x, y) {
                    (0, y) => vec![y],
                    (x, 0) => vec![x],
                    (x, y) if x == y => (0..size).filter(|&z| z != x).collect(),
                    (x, y) => vec![x.min(y), x.max(y)],
                })
                .collect()
        })
        .collect();
    Ok(HyperStructure::new(names, 0, 1, mul, add, None, None)?)
}

fn check_s0(h: &HyperStructure, s0: &[Elem]) -> Result<Mask, ConstructionError> {
    let mut m: Mask = 0;
    for &x in s0 {
        if x >= h.size() {
            return Err(ConstructionError::S0NotValid(format!(
                "index {x} out of range"
            )));
        }
        m |= 1 << x;
    }
    if m & (1 << h.zero()) == 0 {
        return Err(ConstructionError::S0NotValid("S₀ must contain 0".into()));
    }
    for x in iter_mask(m) {
        for y in iter_mask(m) {
            if h.sum(x, y) & !m != 0 {
                return Err(ConstructionError::S0NotValid(format!(
                    "{} ⊞ {} leaves S₀",
                    h.name(x),
                    h.name(y)
                )));
            }
        }
        for &a in h.tangible() {
            if (1 << h.mul(a, x)) & m == 0 {
                return Err(ConstructionError::S0NotValid(format!(
                    "{}·{} leaves S₀",
                    h.name(a),
                    h.name(x)
                )));
            }
        }
    }
    Ok(m)
}

fn pair_on_masks(
    name: String,
    h: &HyperStructure,
    masks: &[Mask],
    s0: Mask,
) -> Result<Pair, ConstructionError> {
    let pos = |m: Mask| masks.binary_search(&m).expect("closed carrier");
    let names = masks.iter().map(|&m| h.mask_label(m)).collect();
    let s = FiniteStructure::from_fn(
        names,
        pos(1 << h.zero()),
        pos(1 << h.one()),
        |x, y| pos(h.set_sum(masks[x], masks[y])),
        |x, y| pos(h.set_mul(masks[x], masks[y])),
    )?;
    let tangible: Vec<Elem> = h.tangible().iter().map(|&a| pos(1 << a)).collect();
    let a_zero: Vec<Elem> = (0..masks.len()).filter(|&x| masks[x] & s0 != 0).collect();
    Ok(Pair::new(name, s, &tangible, &a_zero)?)
}

/// Power-set pair of a hyperstructure.
///
/// The carrier is every nonempty subset, ordered by bitmask. `A₀` is the
/// subsets meeting `S₀` (default `{0}`).
pub fn power_set_pair(
    h: &HyperStructure,
    s0: Option<&[Elem]>,
    cap: usize,
) -> Result<Pair, ConstructionError> {
    let n = h.size();
    let size = if n >= 63 {
        usize::MAX
    } else {
        (1usize << n) - 1
    };
    if size > cap {
        return Err(ConstructionError::CarrierTooLarge { size, cap });
    }
    let s0 = check_s0(h, s0.unwrap_or(&[h.zero()]))?;
    let masks: Vec<Mask> = (1..=size as Mask).collect();
    let name = format!("power_set({})", h.names().join(","));
    pair_on_masks(name, h, &masks, s0)
}

/// Closure of the singletons under `+` and `·` inside the power-set pair.
pub fn hyperpair_generated(h: &HyperStructure, cap: usize) -> Result<Pair, ConstructionError> {
    let mut set: BTreeSet<Mask> = (0..h.size()).map(|x| 1 << x).collect();
    let mut frontier: Vec<Mask> = set.iter().copied().collect();
    while let Some(m) = frontier.pop() {
        let current: Vec<Mask> = set.iter().copied().collect();
        for other in current {
            for r in [
                h.set_sum(m, other),
                h.set_mul(m, other),
                h.set_mul(other, m),
            ] {
                if set.insert(r) {
                    if set.len() > cap {
                        return Err(ConstructionError::CarrierTooLarge {
                            size: set.len(),
                            cap,
                        });
                    }
                    frontier.push(r);
                }
            }
        }
    }
    let masks: Vec<Mask> = set.into_iter().collect();
    let name = format!("hyperpair({})", h.names().join(","));
    pair_on_masks(name, h, &masks, 1 << h.zero())
}
