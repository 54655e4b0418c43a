use crate::pair::Pair;
use crate::structure::{Elem, FiniteStructure};

use super::{ConstructionError, Monoid};

/// Totally ordered multiplicative monoid with an absorbing minimum.
///
/// `rank` gives the order; ranks must be distinct and the zero must have the
/// smallest rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedMonoid {
    pub names: Vec<String>,
    pub zero: Elem,
    pub one: Elem,
    pub mul: Vec<Vec<Elem>>,
    pub rank: Vec<u32>,
}

impl OrderedMonoid {
    fn validate(&self) -> Result<(), ConstructionError> {
        let n = self.names.len();
        if self.rank.len() != n || self.mul.len() != n || self.mul.iter().any(|r| r.len() != n) {
            return Err(ConstructionError::BadMonoid("ghost table shape".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.rank[i] == self.rank[j] {
                    return Err(ConstructionError::OrderNotTotal(format!(
                        "{} and {} share a rank",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        if (0..n).any(|x| self.rank[x] < self.rank[self.zero]) {
            return Err(ConstructionError::OrderNotTotal(
                "zero is not minimal".into(),
            ));
        }
        for x in 0..n {
            if self.mul[self.zero][x] != self.zero || self.mul[x][self.zero] != self.zero {
                return Err(ConstructionError::BadMonoid(
                    "ghost zero not absorbing".into(),
                ));
            }
            if self.mul[self.one][x] != x || self.mul[x][self.one] != x {
                return Err(ConstructionError::BadMonoid("ghost one not a unit".into()));
            }
        }
        Ok(())
    }
}

/// Supertropical pair over `ν: T → G`.
///
/// The carrier is `T ⊔ G` (zero is the zero of `G`). Sums compare `ν`
/// values: the larger summand wins and ties give the ghost `ν(b₁)`.
/// Mixed products use `a·g = ν(a)g`. `A₀ = G`.
pub fn supertropical(
    t: &Monoid,
    g: &OrderedMonoid,
    nu: &[Elem],
) -> Result<Pair, ConstructionError> {
    g.validate()?;
    let tn = t.size();
    let gn = g.names.len();
    if nu.len() != tn || nu.iter().any(|&x| x >= gn) {
        return Err(ConstructionError::NuNotHomomorphism(
            "ν has the wrong shape".into(),
        ));
    }
    if nu[t.identity()] != g.one {
        return Err(ConstructionError::NuNotHomomorphism("ν(1) is not 1".into()));
    }
    for a in 0..tn {
        if nu[a] == g.zero {
            return Err(ConstructionError::NuNotHomomorphism(format!(
                "ν({}) is zero",
                t.names()[a]
            )));
        }
        for b in 0..tn {
            if nu[t.mul(a, b)] != g.mul[nu[a]][nu[b]] {
                return Err(ConstructionError::NuNotHomomorphism(format!(
                    "ν({0}{1}) != ν({0})ν({1})",
                    t.names()[a],
                    t.names()[b]
                )));
            }
        }
    }
    // Carrier layout: 0 = ghost zero, 1..=tn tangibles, then nonzero ghosts.
    let ghosts: Vec<Elem> = (0..gn).filter(|&x| x != g.zero).collect();
    let n = 1 + tn + ghosts.len();
    let ghost_index = |x: Elem| -> Elem {
        if x == g.zero {
            0
        } else {
            1 + tn + ghosts.iter().position(|&y| y == x).expect("ghost")
        }
    };
    enum Layer {
        Tangible(Elem),
        Ghost(Elem),
    }
    let layer = |x: Elem| -> Layer {
        if x == 0 {
            Layer::Ghost(g.zero)
        } else if x <= tn {
            Layer::Tangible(x - 1)
        } else {
            Layer::Ghost(ghosts[x - 1 - tn])
        }
    };
    let nu_of = |x: Elem| -> Elem {
        match layer(x) {
            Layer::Tangible(a) => nu[a],
            Layer::Ghost(h) => h,
        }
    };
    let add = |x: Elem, y: Elem| -> Elem {
        let (vx, vy) = (nu_of(x), nu_of(y));
        match g.rank[vx].cmp(&g.rank[vy]) {
            std::cmp::Ordering::Greater => x,
            std::cmp::Ordering::Less => y,
            std::cmp::Ordering::Equal => ghost_index(vx),
        }
    };
    let mul = |x: Elem, y: Elem| -> Elem {
        match (layer(x), layer(y)) {
            (Layer::Tangible(a), Layer::Tangible(b)) => 1 + t.mul(a, b),
            (Layer::Tangible(a), Layer::Ghost(h)) => ghost_index(g.mul[nu[a]][h]),
            (Layer::Ghost(h), Layer::Tangible(a)) => ghost_index(g.mul[h][nu[a]]),
            (Layer::Ghost(h1), Layer::Ghost(h2)) => ghost_index(g.mul[h1][h2]),
        }
    };
    let mut names = vec![g.names[g.zero].clone()];
    names.extend(t.names().iter().cloned());
    names.extend(ghosts.iter().map(|&h| g.names[h].clone()));
    let s = FiniteStructure::from_fn(names, 0, 1 + t.identity(), add, mul)?;
    let tangible: Vec<Elem> = (1..=tn).collect();
    let mut a_zero = vec![0];
    a_zero.extend((1 + tn)..n);
    Ok(Pair::new(
        format!("supertropical(order {tn})"),
        s,
        &tangible,
        &a_zero,
    )?)
}

fn ghost_name(name: &str) -> String {
    if name == "1" {
        "e".to_string()
    } else {
        format!("ν{name}")
    }
}

/// Standard supertropical pair: `G = T ∪ {0}` ordered by index, `ν = id`.
pub fn supertropical_standard(t: &Monoid) -> Result<Pair, ConstructionError> {
    let tn = t.size();
    // ghost monoid: index 0 = zero, i+1 = ν(t_i)
    let mut names = vec!["0".to_string()];
    names.extend(t.names().iter().map(|s| ghost_name(s)));
    let mul = (0..=tn)
        .map(|x| {
            (0..=tn)
                .map(|y| {
                    if x == 0 || y == 0 {
                        0
                    } else {
                        1 + t.mul(x - 1, y - 1)
                    }
                })
                .collect()
        })
        .collect();
    let g = OrderedMonoid {
        names,
        zero: 0,
        one: 1 + t.identity(),
        mul,
        rank: (0..=tn as u32).collect(),
    };
    let nu: Vec<Elem> = (1..=tn).collect();
    Ok(supertropical(t, &g, &nu)?.with_name(format!("supertropical(order {tn}, id)")))
}

/// Supertropical pair with `ν` constant onto `G = {0, e}`.
pub fn supertropical_constant(t: &Monoid) -> Result<Pair, ConstructionError> {
    let g = OrderedMonoid {
        names: vec!["0".into(), "e".into()],
        zero: 0,
        one: 1,
        mul: vec![vec![0, 0], vec![0, 1]],
        rank: vec![0, 1],
    };
    let nu = vec![1; t.size()];
    Ok(supertropical(t, &g, &nu)?.with_name(format!("supertropical(order {}, const)", t.size())))
}

/// Super-Boolean pair `{0, 1, e}`: `1 + 1 = e`, `e` additively absorbing,
/// `A₀ = {0, e}`.
pub fn super_boolean() -> Pair {
    supertropical_standard(&Monoid::trivial())
        .expect("super-Boolean pair is valid")
        .with_name("super_boolean")
}

/// `m`-truncated supertropical pair over a set of positive integers.
///
/// `values` must contain 1 and `m`, lie in `1..=m`, and be closed under
/// multiplication capped at `m`. Products above `m` saturate to `m` (or to
/// the ghost `νm` when a ghost is involved).
pub fn truncated(values: &[u64], m: u64) -> Result<Pair, ConstructionError> {
    let mut vals = values.to_vec();
    vals.sort_unstable();
    vals.dedup();
    if m == 0 || !vals.contains(&1) || !vals.contains(&m) || vals.iter().any(|&v| v == 0 || v > m) {
        return Err(ConstructionError::BadBound(format!(
            "values must contain 1 and {m} and lie in 1..={m}"
        )));
    }
    let cap = |a: u64, b: u64| (a * b).min(m);
    let tn = vals.len();
    let pos = |v: u64| vals.iter().position(|&x| x == v);
    let mut table = vec![vec![0; tn]; tn];
    for (i, &a) in vals.iter().enumerate() {
        for (j, &b) in vals.iter().enumerate() {
            table[i][j] = pos(cap(a, b)).ok_or_else(|| {
                ConstructionError::BadBound(format!("{a}·{b} capped at {m} is not a value"))
            })?;
        }
    }
    let t = Monoid::new(
        vals.iter().map(|v| v.to_string()).collect(),
        0,
        table.clone(),
    )?;
    let mut gnames = vec!["0".to_string()];
    gnames.extend(t.names().iter().map(|s| ghost_name(s)));
    let gmul = (0..=tn)
        .map(|x| {
            (0..=tn)
                .map(|y| {
                    if x == 0 || y == 0 {
                        0
                    } else {
                        1 + table[x - 1][y - 1]
                    }
                })
                .collect()
        })
        .collect();
    let g = OrderedMonoid {
        names: gnames,
        zero: 0,
        one: 1,
        mul: gmul,
        rank: (0..=tn as u32).collect(),
    };
    let nu: Vec<Elem> = (1..=tn).collect();
    Ok(supertropical(&t, &g, &nu)?.with_name(format!("truncated(m={m})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_pair, Kind};
    use crate::structure::Operations;

    #[test]
    fn super_boolean_tables() {
        let p = super_boolean();
        assert_eq!(p.structure().names(), &["0", "1", "e"]);
        assert_eq!(p.add(1, 1), 2);
        assert_eq!(p.add(1, 2), 2);
        assert_eq!(p.add(2, 2), 2);
        assert_eq!(p.a_zero(), vec![0, 2]);
        assert_eq!(p.tangible(), &[1]);
    }

    #[test]
    fn standard_supertropical_over_c2() {
        let p = supertropical_standard(&Monoid::cyclic(2)).unwrap();
        let c = classify_pair(&p);
        assert!(c.proper && c.shallow && c.a0_bipotent && c.metatangible);
        assert_eq!(c.kind, Kind::First);
        assert_eq!(c.e_final, Some(true));
        assert_eq!(c.characteristic, (1, 2));
        assert_eq!(c.a0_characteristic, 2);
    }

    #[test]
    fn constant_nu_sums_are_all_e() {
        // every tangible sum is e ∈ A₀, so the literal definition holds
        let p = supertropical_constant(&Monoid::cyclic(2)).unwrap();
        let c = classify_pair(&p);
        assert!(c.metatangible);
        assert!(!c.a0_bipotent || p.tangible().iter().all(|&a| p.in_a_zero(p.add(a, a))));
        let one = p.one();
        let g = p.structure().index_of("g").unwrap();
        assert_eq!(p.label(p.add(one, g)), "e");
    }

    #[test]
    fn truncated_chain() {
        let p = truncated(&[1, 2, 3], 3).unwrap();
        let two = p.structure().index_of("2").unwrap();
        assert_eq!(p.label(p.mul(two, two)), "3");
        let v2 = p.structure().index_of("ν2").unwrap();
        assert_eq!(p.label(p.mul(two, v2)), "ν3");
        let c = classify_pair(&p);
        assert!(c.proper && c.shallow && c.a0_bipotent);
        assert_eq!(c.e_final, Some(true));
        let single = truncated(&[1], 1).unwrap();
        assert_eq!(single.size(), 3);
        assert!(matches!(
            truncated(&[1, 2], 3),
            Err(ConstructionError::BadBound(_))
        ));
        assert!(truncated(&[1, 3], 3).is_ok());
        assert!(matches!(
            truncated(&[1, 2, 3], 0),
            Err(ConstructionError::BadBound(_))
        ));
    }

    #[test]
    fn nu_must_be_a_homomorphism() {
        let g = OrderedMonoid {
            names: vec!["0".into(), "e".into(), "x".into()],
            zero: 0,
            one: 1,
            mul: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
            rank: vec![0, 1, 2],
        };
        let err = supertropical(&Monoid::cyclic(2), &g, &[1, 2]).unwrap_err();
        assert!(matches!(err, ConstructionError::NuNotHomomorphism(_)));
        let mut g2 = g.clone();
        g2.rank = vec![0, 1, 1];
        let err = supertropical(&Monoid::cyclic(2), &g2, &[1, 1]).unwrap_err();
        assert!(matches!(err, ConstructionError::OrderNotTotal(_)));
    }
}
