use crate::pair::{NegationMap, Pair};
use crate::structure::{Elem, FiniteStructure, Operations};

use super::ConstructionError;

/// The doubled pair `(Â, Diag)` with its switch map.
///
/// Element `(b₁, b₂)` has index `b₁·n + b₂`, where `n` is the base size.
#[derive(Debug, Clone)]
pub struct DoubledPair {
    pub pair: Pair,
    pub switch: NegationMap,
    pub base_size: usize,
    /// Twist product is associative (always when the base is a semiring).
    pub twist_associative: bool,
}

impl DoubledPair {
    pub fn index(&self, b1: Elem, b2: Elem) -> Elem {
        b1 * self.base_size + b2
    }

    pub fn components(&self, x: Elem) -> (Elem, Elem) {
        (x / self.base_size, x % self.base_size)
    }
}

/// Twist product of two elements of `Â`, given as component pairs.
pub fn twist(ops: &impl Operations, b: (Elem, Elem), c: (Elem, Elem)) -> (Elem, Elem) {
    (
        ops.add(ops.mul(b.0, c.0), ops.mul(b.1, c.1)),
        ops.add(ops.mul(b.0, c.1), ops.mul(b.1, c.0)),
    )
}

pub fn double(base: &Pair) -> Result<DoubledPair, ConstructionError> {
    let n = base.size();
    let split = |x: Elem| (x / n, x % n);
    let join = |(a, b): (Elem, Elem)| a * n + b;
    let names = (0..n * n)
        .map(|x| format!("({},{})", base.label(x / n), base.label(x % n)))
        .collect();
    let z = base.zero();
    let s = FiniteStructure::from_fn(
        names,
        join((z, z)),
        join((base.one(), z)),
        |x, y| {
            let (a, b) = (split(x), split(y));
            join((base.add(a.0, b.0), base.add(a.1, b.1)))
        },
        |x, y| join(twist(base, split(x), split(y))),
    )?;
    let twist_associative = s.flags().mul_associative;
    let mut tangible = Vec::new();
    for &a in base.tangible() {
        tangible.push(join((a, z)));
        tangible.push(join((z, a)));
    }
    let diag: Vec<Elem> = (0..n).map(|b| join((b, b))).collect();
    let pair = Pair::new(format!("double({})", base.name()), s, &tangible, &diag)?;
    let perm = (0..n * n).map(|x| join((x % n, x / n))).collect();
    let switch = NegationMap::new(&pair, perm).map_err(|e| {
        ConstructionError::NotACongruence(format!("switch is not a negation map: {e}"))
    })?;
    Ok(DoubledPair {
        pair,
        switch,
        base_size: n,
        twist_associative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::super_boolean;

    #[test]
    fn doubled_super_boolean() {
        let sb = super_boolean();
        let d = double(&sb).unwrap();
        assert_eq!(d.pair.size(), 9);
        assert!(d.twist_associative);
        let w = d.pair.property_n().unwrap();
        assert_eq!(d.pair.label(w.e), "(1,1)");
        let zero_one = d.index(0, 1);
        assert_eq!(d.pair.label(d.pair.mul(zero_one, zero_one)), "(1,0)");
        assert_eq!(d.switch.apply(zero_one), d.index(1, 0));
    }

    #[test]
    fn diag_absorbs_twist() {
        let sb = super_boolean();
        let d = double(&sb).unwrap();
        for x in 0..9 {
            let (b1, b2) = d.components(x);
            for z in 0..3 {
                let p = d.pair.mul(x, d.index(z, z));
                let v = sb.mul(sb.add(b1, b2), z);
                assert_eq!(d.components(p), (v, v));
            }
        }
    }
}
