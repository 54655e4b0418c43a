//! Brute-force oracles written straight from the definitions, sharing no
//! code with the library beyond reading tables.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use pairspec::io::{parse_pair_file, PairFile};
use pairspec::{Congruence, Operations, Pair};

/// Every set partition of `0..n`, as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    go(&mut vec![0], 0, n, &mut out);
    out
}

/// Compatible with `+` and `·` on both sides.
pub fn compatible(p: &Pair, labels: &[usize]) -> bool {
    let n = p.size();
    for x in 0..n {
        for y in 0..n {
            if labels[x] != labels[y] {
                continue;
            }
            for z in 0..n {
                if labels[p.add(x, z)] != labels[p.add(y, z)]
                    || labels[p.mul(x, z)] != labels[p.mul(y, z)]
                    || labels[p.mul(z, x)] != labels[p.mul(z, y)]
                {
                    return false;
                }
            }
        }
    }
    true
}

pub fn brute_force_congruences(p: &Pair) -> BTreeSet<Vec<Vec<usize>>> {
    set_partitions(p.size())
        .into_iter()
        .filter(|l| compatible(p, l))
        .map(|l| blocks(&l))
        .collect()
}

pub fn blocks(labels: &[usize]) -> Vec<Vec<usize>> {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); k];
    for (x, &l) in labels.iter().enumerate() {
        out[l].push(x);
    }
    out.retain(|b| !b.is_empty());
    out.sort();
    out
}

pub fn twist(p: &Pair, b: (usize, usize), c: (usize, usize)) -> (usize, usize) {
    (
        p.add(p.mul(b.0, c.0), p.mul(b.1, c.1)),
        p.add(p.mul(b.0, c.1), p.mul(b.1, c.0)),
    )
}

/// A congruence as a relation matrix, for definition-level checks.
#[derive(Clone, PartialEq, Eq)]
pub struct Rel {
    pub n: usize,
    pub m: Vec<bool>,
}

impl Rel {
    pub fn of(c: &Congruence) -> Self {
        let n = c.size();
        Rel {
            n,
            m: (0..n * n).map(|i| c.related(i / n, i % n)).collect(),
        }
    }

    pub fn has(&self, b: (usize, usize)) -> bool {
        self.m[b.0 * self.n + b.1]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|&i| self.m[i])
            .map(|i| (i / self.n, i % self.n))
            .collect()
    }

    pub fn subset(&self, other: &Rel) -> bool {
        self.m.iter().zip(&other.m).all(|(&a, &b)| !a || b)
    }

    pub fn meet(&self, other: &Rel) -> Rel {
        Rel {
            n: self.n,
            m: self.m.iter().zip(&other.m).map(|(&a, &b)| a && b).collect(),
        }
    }
}

/// `Φ₁ ⋈ Φ₂ ⊆ Φ`.
pub fn twist_inside(p: &Pair, a: &Rel, b: &Rel, phi: &Rel) -> bool {
    let bp = b.pairs();
    a.pairs()
        .iter()
        .all(|&x| bp.iter().all(|&y| phi.has(twist(p, x, y))))
}

pub struct DefinitionFlags {
    pub prime: bool,
    pub semiprime: bool,
    pub irreducible: bool,
    pub radical: bool,
}

/// Flags of `all[i]` quantified over every congruence above it.
pub fn definition_flags(p: &Pair, all: &[Rel], i: usize) -> DefinitionFlags {
    let phi = &all[i];
    let above: Vec<&Rel> = all.iter().filter(|r| phi.subset(r)).collect();
    let mut prime = true;
    let mut irreducible = true;
    for a in &above {
        for b in &above {
            if twist_inside(p, a, b, phi) && *a != phi && *b != phi {
                prime = false;
            }
            if a.meet(b) == *phi && *a != phi && *b != phi {
                irreducible = false;
            }
        }
    }
    let semiprime = above
        .iter()
        .all(|a| *a == phi || !twist_inside(p, a, a, phi));
    let n = p.size();
    let radical = (0..n * n)
        .map(|i| (i / n, i % n))
        .all(|b| !phi.has(twist(p, b, b)) || phi.has(b));
    DefinitionFlags {
        prime,
        semiprime,
        irreducible,
        radical,
    }
}

/// Pair axioms checked on a file's tables by label.
pub fn axioms_hold(f: &PairFile) -> bool {
    let n = f.elements.len();
    let idx = |l: &str| f.elements.iter().position(|x| x == l).unwrap();
    let add = |x: usize, y: usize| idx(&f.add[x][y]);
    let mul = |x: usize, y: usize| idx(&f.mul[x][y]);
    let zero = idx(&f.zero);
    let one = idx(&f.one);
    let t: Vec<usize> = f.tangible.iter().map(|l| idx(l)).collect();
    let a0: Vec<usize> = f.a0.iter().map(|l| idx(l)).collect();
    for x in 0..n {
        if add(zero, x) != x || mul(zero, x) != zero || mul(x, zero) != zero {
            return false;
        }
        if mul(one, x) != x || mul(x, one) != x {
            return false;
        }
        for y in 0..n {
            if add(x, y) != add(y, x) {
                return false;
            }
            for z in 0..n {
                if add(add(x, y), z) != add(x, add(y, z)) {
                    return false;
                }
            }
        }
    }
    if !t.contains(&one) || !a0.contains(&zero) {
        return false;
    }
    for &a in &t {
        for &b in &t {
            let ab = mul(a, b);
            if ab != zero && !t.contains(&ab) {
                return false;
            }
        }
        for b in 0..n {
            if mul(a, b) != mul(b, a) {
                return false;
            }
            for c in 0..n {
                if mul(mul(a, b), c) != mul(a, mul(b, c))
                    || mul(mul(b, a), c) != mul(b, mul(a, c))
                    || mul(mul(b, c), a) != mul(b, mul(c, a))
                {
                    return false;
                }
            }
        }
        for &b in &a0 {
            if !a0.contains(&mul(a, b)) {
                return false;
            }
        }
    }
    a0.iter()
        .all(|&x| a0.iter().all(|&y| a0.contains(&add(x, y))))
}

/// `F_p / G` computed from cosets: classes are `{0}` and `xG`, and
/// `[x] ⊞ [y]` is the set of classes of `xg + yh`.
pub struct CosetHyper {
    pub classes: Vec<BTreeSet<usize>>,
    pub sums: Vec<Vec<BTreeSet<usize>>>,
    pub products: Vec<Vec<usize>>,
}

pub fn coset_oracle(p: usize, group: &[usize]) -> CosetHyper {
    let mut classes: Vec<BTreeSet<usize>> = Vec::new();
    for x in 0..p {
        if classes.iter().any(|c| c.contains(&x)) {
            continue;
        }
        classes.push(group.iter().map(|g| x * g % p).collect());
    }
    let class_of = |x: usize| classes.iter().position(|c| c.contains(&x)).unwrap();
    let k = classes.len();
    let mut sums = vec![vec![BTreeSet::new(); k]; k];
    let mut products = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            for &x in &classes[i] {
                for &y in &classes[j] {
                    sums[i][j].insert(class_of((x + y) % p));
                }
            }
            let (x, y) = (*classes[i].first().unwrap(), *classes[j].first().unwrap());
            products[i][j] = class_of(x * y % p);
        }
    }
    CosetHyper {
        classes,
        sums,
        products,
    }
}

/// Members of a residue class from its label, e.g. `[1,4]`.
pub fn class_members(label: &str) -> BTreeSet<usize> {
    label
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|s| s.trim().parse().unwrap())
        .collect()
}

pub struct Mutant {
    pub source: String,
    pub file: PairFile,
    pub cell: String,
}

/// Deterministic mutants: every cell of both tables, shifted to the next
/// label, taking every `stride`-th cell per file.
pub fn mutants(stride: usize) -> Vec<Mutant> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog");
    let mut names: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            !p.file_name()
                .unwrap()
                .to_str()
                .unwrap()
                .starts_with("hyper_")
        })
        .collect();
    names.sort();
    let mut out = Vec::new();
    for path in names {
        let base = parse_pair_file(&fs::read_to_string(&path).unwrap()).unwrap();
        let n = base.elements.len();
        let source = path.file_stem().unwrap().to_str().unwrap().to_string();
        let mut k = 0;
        for table in ["add", "mul"] {
            for i in 0..n {
                for j in 0..n {
                    k += 1;
                    if k % stride != 0 {
                        continue;
                    }
                    let mut f = base.clone();
                    let t = if table == "add" {
                        &mut f.add
                    } else {
                        &mut f.mul
                    };
                    let pos = base.elements.iter().position(|l| *l == t[i][j]).unwrap();
                    t[i][j] = base.elements[(pos + 1) % n].clone();
                    out.push(Mutant {
                        source: source.clone(),
                        cell: format!("{table}[{}][{}]", base.elements[i], base.elements[j]),
                        file: f,
                    });
                }
            }
        }
    }
    out
}
