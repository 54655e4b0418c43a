use crate::congruence::{check_congruence, Congruence};
use crate::pair::Pair;
use crate::structure::{Elem, FiniteStructure, Operations};

use super::ConstructionError;

/// `(A, A₀)/Φ`. Block names join member labels with `~`.
pub fn quotient_pair(pair: &Pair, c: &Congruence) -> Result<Pair, ConstructionError> {
    check_congruence(pair, c).map_err(|v| {
        ConstructionError::NotACongruence(format!(
            "({}, {}) related but {} images ({}, {}) are not",
            pair.label(v.pair.0),
            pair.label(v.pair.1),
            v.operation,
            pair.label(v.image.0),
            pair.label(v.image.1)
        ))
    })?;
    let blocks = c.blocks();
    let bo = c.block_of();
    let names = blocks
        .iter()
        .map(|b| {
            let labels: Vec<&str> = b.iter().map(|&x| pair.label(x)).collect();
            labels.join("~")
        })
        .collect();
    let s = FiniteStructure::from_fn(
        names,
        bo[pair.zero()],
        bo[pair.one()],
        |x, y| bo[pair.add(blocks[x][0], blocks[y][0])],
        |x, y| bo[pair.mul(blocks[x][0], blocks[y][0])],
    )?;
    let mut tangible: Vec<Elem> = pair.tangible().iter().map(|&a| bo[a]).collect();
    tangible.dedup();
    let a_zero: Vec<Elem> = (0..pair.size())
        .filter(|&x| pair.in_a_zero(x))
        .map(|x| bo[x])
        .collect();
    Ok(Pair::new(
        format!("{}/~", pair.name()),
        s,
        &tangible,
        &a_zero,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_pair;
    use crate::congruence::{diag_e, generated_congruence};
    use crate::constructions::super_boolean;

    #[test]
    fn quotient_by_diagonal_is_a_copy() {
        let sb = super_boolean();
        let q = quotient_pair(&sb, &Congruence::diagonal(3)).unwrap();
        assert_eq!(q.structure().add_table(), sb.structure().add_table());
        assert_eq!(q.a_zero(), sb.a_zero());
    }

    #[test]
    fn quotient_by_diag_e_is_degenerate_and_idempotent() {
        let sb = super_boolean();
        let q = quotient_pair(&sb, &diag_e(&sb).unwrap()).unwrap();
        let c = classify_pair(&q);
        assert!(c.degenerate && c.idempotent);
        assert_eq!(q.structure().names(), &["0", "1~e"]);
    }

    #[test]
    fn quotient_by_all_and_bad_partition() {
        let sb = super_boolean();
        let q = quotient_pair(&sb, &Congruence::all(3)).unwrap();
        assert_eq!(q.size(), 1);
        let bad = Congruence::from_labels(&[0, 0, 1]);
        assert!(matches!(
            quotient_pair(&sb, &bad),
            Err(ConstructionError::NotACongruence(_))
        ));
        let _ = generated_congruence(&sb, &[(0, 1)]);
    }
}
