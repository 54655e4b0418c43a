use crate::pair::Pair;
use crate::structure::{Elem, FiniteStructure, Operations};

use super::{ConstructionError, Monoid};

/// Functions `S → A` with pointwise addition and convolution
/// `(f ∗ g)(s) = Σ_{s₁s₂ = s} f(s₁)g(s₂)`.
///
/// A function is encoded in base `|A|`, with `f(s)` as digit `s`. Tangibles
/// are the functions with a single nonzero value, which is tangible.
pub fn function_pair(base: &Pair, s: &Monoid, cap: usize) -> Result<Pair, ConstructionError> {
    let n = base.size();
    let m = s.size();
    let size = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(n));
    let size = match size {
        Some(size) if size <= cap => size,
        _ => {
            return Err(ConstructionError::CarrierTooLarge {
                size: size.unwrap_or(usize::MAX),
                cap,
            })
        }
    };
    let decode = |x: Elem| -> Vec<Elem> {
        let mut v = Vec::with_capacity(m);
        let mut x = x;
        for _ in 0..m {
            v.push(x % n);
            x /= n;
        }
        v
    };
    let encode = |v: &[Elem]| -> Elem { v.iter().rev().fold(0, |acc, &d| acc * n + d) };
    let z = base.zero();
    let delta = |at: usize, val: Elem| -> Elem {
        let mut v = vec![z; m];
        v[at] = val;
        encode(&v)
    };
    let names = (0..size)
        .map(|x| {
            let labels: Vec<&str> = decode(x).iter().map(|&b| base.label(b)).collect();
            format!("[{}]", labels.join(","))
        })
        .collect();
    let st = FiniteStructure::from_fn(
        names,
        delta(0, z),
        delta(s.identity(), base.one()),
        |x, y| {
            let (f, g) = (decode(x), decode(y));
            let v: Vec<Elem> = (0..m).map(|i| base.add(f[i], g[i])).collect();
            encode(&v)
        },
        |x, y| {
            let (f, g) = (decode(x), decode(y));
            let mut v = vec![z; m];
            for (s1, &f1) in f.iter().enumerate() {
                for (s2, &g2) in g.iter().enumerate() {
                    let t = s.mul(s1, s2);
                    v[t] = base.add(v[t], base.mul(f1, g2));
                }
            }
            encode(&v)
        },
    )?;
    let mut tangible = Vec::new();
    for at in 0..m {
        for &a in base.tangible() {
            if a != z {
                tangible.push(delta(at, a));
            }
        }
    }
    let a_zero: Vec<Elem> = (0..size)
        .filter(|&x| decode(x).iter().all(|&b| base.in_a_zero(b)))
        .collect();
    Ok(Pair::new(
        format!("functions({}, order {m})", base.name()),
        st,
        &tangible,
        &a_zero,
    )?)
}
