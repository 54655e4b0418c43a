//! Builders for the standard families of pairs and hyperstructures.

mod bipotent;
mod doubling;
mod function;
mod powerset;
mod quotient;
mod residue;
mod supertropical;

pub use bipotent::{boolean, max_plus, minimal_bipotent, prime_field, BipotentKind};
pub use doubling::{double, twist, DoubledPair};
pub use function::function_pair;
pub use powerset::{group_hyperfield, hyperpair_generated, krasner, power_set_pair, signs};
pub use quotient::quotient_pair;
pub use residue::residue_hyperstructure;
pub use supertropical::{
    super_boolean, supertropical, supertropical_constant, supertropical_standard, truncated,
    OrderedMonoid,
};

use thiserror::Error;

use crate::hyper::HyperError;
use crate::pair::{Pair, PairError};
use crate::structure::{Elem, StructureError};

/// Default bound on carriers built by exponential constructions.
pub const DEFAULT_CARRIER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error("invalid monoid: {0}")]
    BadMonoid(String),
    #[error("ν is not a monoid homomorphism: {0}")]
    NuNotHomomorphism(String),
    #[error("ghost order is not total: {0}")]
    OrderNotTotal(String),
    #[error("bad truncation bound: {0}")]
    BadBound(String),
    #[error("carrier would have {size} elements, above the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("invalid S₀: {0}")]
    S0NotValid(String),
    #[error("subgroup is not a group: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("relation is not a congruence: {0}")]
    NotACongruence(String),
}

impl From<StructureError> for ConstructionError {
    fn from(e: StructureError) -> Self {
        ConstructionError::Pair(PairError::Structure(e))
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    names: Vec<String>,
    identity: Elem,
    mul: Vec<Elem>,
}

impl Monoid {
    pub fn new(
        names: Vec<String>,
        identity: Elem,
        table: Vec<Vec<Elem>>,
    ) -> Result<Self, ConstructionError> {
        let n = names.len();
        if n == 0 || identity >= n {
            return Err(ConstructionError::BadMonoid("empty or bad identity".into()));
        }
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(ConstructionError::BadMonoid("table shape".into()));
        }
        let m = Monoid {
            names,
            identity,
            mul: table.into_iter().flatten().collect(),
        };
        for x in 0..n {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(ConstructionError::BadMonoid(format!(
                    "{} is not an identity",
                    m.names[identity]
                )));
            }
            for y in 0..n {
                for z in 0..n {
                    if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                        return Err(ConstructionError::BadMonoid("not associative".into()));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Cyclic group `{1, g, g2, …}` of order `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                i => format!("g{i}"),
            })
            .collect();
        Monoid {
            names,
            identity: 0,
            mul: (0..n * n).map(|i| (i / n + i % n) % n).collect(),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `{0, 1, …, m}` under addition capped at `m`.
    pub fn saturating(m: usize) -> Self {
        let n = m + 1;
        Monoid {
            names: (0..n).map(|i| i.to_string()).collect(),
            identity: 0,
            mul: (0..n * n).map(|i| (i / n + i % n).min(m)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.size() + y]
    }

    pub fn is_group(&self) -> bool {
        (0..self.size()).all(|x| (0..self.size()).any(|y| self.mul(x, y) == self.identity))
    }
}

/// Named pairs used throughout the tests and acceptance suite.
pub fn catalog() -> Vec<Pair> {
    let c2 = Monoid::cyclic(2);
    let mut out = vec![
        super_boolean(),
        boolean(),
        minimal_bipotent(&c2, BipotentKind::First).expect("catalog"),
        minimal_bipotent(&c2, BipotentKind::Second).expect("catalog"),
        supertropical_standard(&c2).expect("catalog"),
        truncated(&[1, 2, 3], 3).expect("catalog"),
        power_set_pair(&krasner(), None, DEFAULT_CARRIER_CAP).expect("catalog"),
        power_set_pair(&signs(), None, DEFAULT_CARRIER_CAP).expect("catalog"),
    ];
    let f5 = prime_field(5).expect("catalog");
    let residue = residue_hyperstructure(&f5, &[1, 4]).expect("catalog");
    out.push(
        power_set_pair(&residue, None, DEFAULT_CARRIER_CAP)
            .expect("catalog")
            .with_name("power_set(F5/{1,4})"),
    );
    out.push(
        power_set_pair(
            &group_hyperfield(3).expect("catalog"),
            None,
            DEFAULT_CARRIER_CAP,
        )
        .expect("catalog")
        .with_name("power_set(C3 hyperfield)"),
    );
    out.push(
        function_pair(
            &super_boolean(),
            &Monoid::saturating(1),
            DEFAULT_CARRIER_CAP,
        )
        .expect("catalog"),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_validation() {
        assert!(Monoid::cyclic(3).is_group());
        assert!(!Monoid::saturating(2).is_group());
        let bad = Monoid::new(
            vec!["1".into(), "x".into()],
            0,
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(bad.is_ok());
        let bad = Monoid::new(
            vec!["1".into(), "x".into()],
            1,
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(matches!(bad, Err(ConstructionError::BadMonoid(_))));
    }

    #[test]
    fn catalog_pairs_validate() {
        for p in catalog() {
            assert!(p.size() > 0, "{}", p.name());
            assert!(p.size() <= 81);
        }
    }
}
