use crate::hyper::HyperStructure;
use crate::pair::Pair;
use crate::structure::{Elem, Operations};

use super::ConstructionError;

/// Orbit hyperstructure `A/G` for a multiplicative group `G ⊆ T`.
///
/// Classes are the orbits `bG`; `b₁G ⊞ b₂G` collects the classes of every
/// `b₁g₁ + b₂g₂`.
pub fn residue_hyperstructure(
    pair: &Pair,
    group: &[Elem],
) -> Result<HyperStructure, ConstructionError> {
    let n = pair.size();
    let one = pair.one();
    let mut g: Vec<Elem> = group.to_vec();
    g.sort_unstable();
    g.dedup();
    if g.iter().any(|&x| x >= n || !pair.is_tangible(x)) {
        return Err(ConstructionError::NotAGroup("G must lie in T".into()));
    }
    if !g.contains(&one) {
        return Err(ConstructionError::NotAGroup("G must contain 1".into()));
    }
    for &x in &g {
        for &y in &g {
            if !g.contains(&pair.mul(x, y)) {
                return Err(ConstructionError::NotAGroup(format!(
                    "{}·{} leaves G",
                    pair.label(x),
                    pair.label(y)
                )));
            }
        }
        if !g.iter().any(|&y| pair.mul(x, y) == one) {
            return Err(ConstructionError::NotAGroup(format!(
                "{} has no inverse in G",
                pair.label(x)
            )));
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for b in 0..n {
        if class_of[b] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<Elem> = g.iter().map(|&x| pair.mul(b, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &c in &orbit {
            class_of[c] = classes.len();
        }
        classes.push(orbit);
    }
    let k = classes.len();

    let mut mul = vec![vec![0; k]; k];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let target = class_of[pair.mul(ci[0], cj[0])];
            for &x in ci {
                for &y in cj {
                    if class_of[pair.mul(x, y)] != target {
                        return Err(ConstructionError::NotNormal(format!(
                            "{}·{} and {}·{} land in different classes",
                            pair.label(ci[0]),
                            pair.label(cj[0]),
                            pair.label(x),
                            pair.label(y)
                        )));
                    }
                }
            }
            mul[i][j] = target;
        }
    }
    let hyperadd = classes
        .iter()
        .map(|ci| {
            classes
                .iter()
                .map(|cj| {
                    let mut out: Vec<Elem> = ci
                        .iter()
                        .flat_map(|&x| cj.iter().map(move |&y| (x, y)))
                        .map(|(x, y)| class_of[pair.add(x, y)])
                        .collect();
                    out.sort_unstable();
                    out.dedup();
                    out
                })
                .collect()
        })
        .collect();
    let names = classes
        .iter()
        .map(|c| {
            let labels: Vec<&str> = c.iter().map(|&x| pair.label(x)).collect();
            format!("[{}]", labels.join(","))
        })
        .collect();
    let mut tangible: Vec<Elem> = pair.tangible().iter().map(|&a| class_of[a]).collect();
    tangible.sort_unstable();
    tangible.dedup();
    Ok(HyperStructure::new(
        names,
        class_of[pair.zero()],
        class_of[one],
        mul,
        hyperadd,
        None,
        Some(tangible),
    )?)
}
