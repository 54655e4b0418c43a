//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use pairspec::classify::has_e_type;
use pairspec::congruence::enumerate_congruences;
use pairspec::constructions::{
    boolean, catalog, double, group_hyperfield, krasner, max_plus, minimal_bipotent,
    power_set_pair, prime_field, residue_hyperstructure, signs, super_boolean,
    supertropical_constant, supertropical_standard, truncated, BipotentKind, Monoid,
    DEFAULT_CARRIER_CAP,
};
use pairspec::io::{
    load_structure, parse_structure_file, serialize_hyper_file, serialize_pair_file, HyperFile,
    PairFile, StructureFile,
};
use pairspec::spectrum::{
    improper_elements, lattice_flags, radical_witness, spectrum_report_for, sqrt_phi,
};
use pairspec::verify::{run_check, Subject};
use pairspec::{classify_pair, Kind, Operations, Pair};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

fn semirings() -> Vec<Pair> {
    catalog()
        .into_iter()
        .filter(|p| p.structure().is_semiring())
        .collect()
}

fn c1_validation() -> Outcome {
    let start = Instant::now();
    let c2 = Monoid::cyclic(2);
    let f5 = prime_field(5).map_err(|e| e.to_string())?;
    let residue = residue_hyperstructure(&f5, &[1, 4]).map_err(|e| e.to_string())?;
    let built: Vec<Result<Pair, String>> = vec![
        Ok(super_boolean()),
        minimal_bipotent(&c2, BipotentKind::First).map_err(|e| e.to_string()),
        minimal_bipotent(&c2, BipotentKind::Second).map_err(|e| e.to_string()),
        supertropical_standard(&c2).map_err(|e| e.to_string()),
        truncated(&[1, 2, 3], 3).map_err(|e| e.to_string()),
        power_set_pair(&krasner(), None, DEFAULT_CARRIER_CAP).map_err(|e| e.to_string()),
        power_set_pair(&signs(), None, DEFAULT_CARRIER_CAP).map_err(|e| e.to_string()),
    ];
    let mut count = 0;
    for p in built {
        let p = p?;
        let text = serialize_pair_file(&PairFile::from_pair(&p, None));
        load_structure(&text, DEFAULT_CARRIER_CAP).map_err(|e| format!("{}: {e}", p.name()))?;
        count += 1;
    }
    let text = serialize_hyper_file(&HyperFile::from_hyper("F5/{1,4}", &residue, &[0]));
    let loaded = load_structure(&text, DEFAULT_CARRIER_CAP).map_err(|e| e.to_string())?;
    ensure(loaded.pair.size() == 7, || {
        "residue power set should have 7 elements".into()
    })?;
    count += 1;
    for entry in fs::read_dir(catalog_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        load_structure(&text, DEFAULT_CARRIER_CAP)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        count += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("{count} structures validated in {t:.2?}"))
}

fn c2_classification() -> Outcome {
    let st = classify_pair(&supertropical_standard(&Monoid::cyclic(2)).map_err(|e| e.to_string())?);
    ensure(st.proper, || "supertropical not proper".into())?;
    ensure(st.kind == Kind::First, || {
        "supertropical not first kind".into()
    })?;
    ensure(st.shallow, || "supertropical not shallow".into())?;
    ensure(st.e_final == Some(true), || {
        "supertropical not e-final".into()
    })?;
    ensure(st.characteristic == (1, 2), || {
        format!("characteristic {:?}", st.characteristic)
    })?;
    ensure(st.a0_characteristic == 2, || {
        format!("A₀-characteristic {}", st.a0_characteristic)
    })?;
    let signs_pair =
        power_set_pair(&signs(), None, DEFAULT_CARRIER_CAP).map_err(|e| e.to_string())?;
    ensure(classify_pair(&signs_pair).e_final == Some(true), || {
        "signs power set not e-final".into()
    })?;
    let mut orders = Vec::new();
    for n in 2..=4 {
        let h = group_hyperfield(n).map_err(|e| e.to_string())?;
        let full = (1u64 << h.size()) - 1;
        ensure(h.e() == Some(full & !(1 << h.one())), || {
            format!("C{n}: e ≠ H ∖ {{1}}")
        })?;
        let p = power_set_pair(&h, None, DEFAULT_CARRIER_CAP).map_err(|e| e.to_string())?;
        ensure(has_e_type(&p, 2, 2), || {
            format!("C{n} hyperfield: no e-type 2")
        })?;
        orders.push(n);
    }
    Ok(format!(
        "supertropical(C₂): proper, first kind, shallow, e-final, char (1,2), A₀-char 2; signs e-final; e-type 2 for C{orders:?} hyperfields"
    ))
}

fn c3_twass() -> Outcome {
    let start = Instant::now();
    let pairs = semirings();
    let mut triples = 0u64;
    for p in &pairs {
        let d = double(p).map_err(|e| format!("{}: {e}", p.name()))?;
        ensure(d.twist_associative, || {
            format!("{}: double not associative", p.name())
        })?;
        let r = run_check(&Subject::new(p.clone()), "TWASS").map_err(|e| e.to_string())?;
        ensure(r.passed == Some(true), || {
            format!("{}: TWASS {:?}", p.name(), r.counterexample)
        })?;
        // independent pass over Â
        let n = p.size();
        let elems: Vec<(usize, usize)> = (0..n * n).map(|i| (i / n, i % n)).collect();
        for &x in &elems {
            for &y in &elems {
                let xy = twist(p, x, y);
                for &z in &elems {
                    if twist(p, xy, z) != twist(p, x, twist(p, y, z)) {
                        return Err(format!("{}: {x:?} {y:?} {z:?}", p.name()));
                    }
                }
            }
        }
        triples += (n * n * n * n * n * n) as u64;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "{} semiring pairs, {triples} triples, {t:.2?}",
        pairs.len()
    ))
}

fn c4_enumeration() -> Outcome {
    let mut pairs: Vec<Pair> = catalog().into_iter().filter(|p| p.size() <= 6).collect();
    pairs.extend([
        max_plus(3),
        max_plus(5),
        prime_field(3).unwrap(),
        prime_field(5).unwrap(),
        supertropical_constant(&Monoid::cyclic(2)).unwrap(),
        boolean(),
    ]);
    let mut total = 0;
    for p in &pairs {
        let lattice = enumerate_congruences(p, 100_000).map_err(|e| e.to_string())?;
        let ours: std::collections::BTreeSet<_> =
            lattice.congruences().iter().map(|c| c.blocks()).collect();
        let oracle = brute_force_congruences(p);
        ensure(ours == oracle && lattice.len() == oracle.len(), || {
            format!(
                "{}: {} vs {} congruences",
                p.name(),
                lattice.len(),
                oracle.len()
            )
        })?;
        total += oracle.len();
    }
    Ok(format!(
        "{} pairs of size ≤ 6, {total} congruences agree",
        pairs.len()
    ))
}

fn c5_bf() -> Outcome {
    let mut checked = 0;
    let mut meets = 0;
    for p in catalog() {
        let lattice = enumerate_congruences(&p, 100_000).map_err(|e| e.to_string())?;
        let rels: Vec<Rel> = lattice.congruences().iter().map(Rel::of).collect();
        let flags: Vec<DefinitionFlags> = (0..lattice.len())
            .map(|i| definition_flags(&p, &rels, i))
            .collect();
        for (i, d) in flags.iter().enumerate() {
            let (prime, semiprime, irreducible) = lattice_flags(&p, &lattice, i);
            ensure(
                (prime, semiprime, irreducible) == (d.prime, d.semiprime, d.irreducible),
                || format!("{} #{i}: flags disagree with definitions", p.name()),
            )?;
            ensure(d.prime == (d.semiprime && d.irreducible), || {
                format!("{} #{i}: prime ⟺ semiprime ∧ irreducible fails", p.name())
            })?;
            checked += 1;
        }
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let m = lattice
                    .index_of(&lattice.get(i).meet(lattice.get(j)))
                    .ok_or("meet outside lattice")?;
                if flags[i].semiprime && flags[j].semiprime {
                    ensure(flags[m].semiprime, || {
                        format!("{}: meet of semiprimes #{i}, #{j}", p.name())
                    })?;
                    meets += 1;
                }
                if flags[i].radical && flags[j].radical {
                    ensure(flags[m].radical, || {
                        format!("{}: meet of radicals #{i}, #{j}", p.name())
                    })?;
                    ensure(radical_witness(&p, lattice.get(m)).is_none(), || {
                        "library disagrees".into()
                    })?;
                    meets += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} congruences: prime iff semiprime and irreducible; {meets} meets stay semiprime or radical"
    ))
}

fn c6_rd1() -> Outcome {
    let mut radicals = 0;
    let mut pairs = 0;
    for p in catalog() {
        if !classify_pair(&p).positive_e_type() {
            continue;
        }
        pairs += 1;
        let e = p.property_n().ok_or("positive e-type without e")?.e;
        let lattice = enumerate_congruences(&p, 100_000).map_err(|e| e.to_string())?;
        for c in lattice.congruences() {
            if radical_witness(&p, c).is_none() {
                ensure(c.related(p.one(), e), || {
                    format!("{}: radical without (1,e)", p.name())
                })?;
                radicals += 1;
            }
        }
    }
    Ok(format!(
        "{radicals} radical congruences over {pairs} positive e-type pairs contain (1,e)"
    ))
}

fn c7_rd2_sp2() -> Outcome {
    let mut applicable = 0;
    let mut failures = Vec::new();
    for p in catalog() {
        let lattice = enumerate_congruences(&p, 100_000).map_err(|e| e.to_string())?;
        let r = spectrum_report_for(&p, &lattice, 100_000);
        for (name, v) in [
            ("hSpec(A) ≅ hSpec(Ae)", &r.rd2),
            ("Spec_e ≅ hSpec(A/Diag_e)", &r.sp2),
        ] {
            if v.applicable {
                applicable += 1;
                if v.holds != Some(true) {
                    failures.push(format!("{} {name}: {}", p.name(), v.detail));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{applicable} applicable bijections verified"))
    } else {
        Err(format!(
            "{} of {applicable} applicable bijections fail (prime congruences that are not radical): {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn c8_prs2() -> Outcome {
    let mut out = Vec::new();
    for p in catalog() {
        if !classify_pair(&p).positive_e_type() {
            continue;
        }
        let e = p.property_n().ok_or("positive e-type without e")?.e;
        let diag = pairspec::Congruence::diagonal(p.size());
        let root = sqrt_phi(&p, &diag);
        let (a, b) = (root.stage[p.one()][e], root.stage[e][p.one()]);
        match (a, b) {
            (Some(a), Some(b)) => {
                out.push(format!("{} stages {a}/{b} depth {}", p.name(), root.depth))
            }
            _ => return Err(format!("{}: (1,e) or (e,1) ∉ √Diag", p.name())),
        }
    }
    Ok(out.join("; "))
}

fn c9_chains() -> Outcome {
    let mut products = 0;
    let mut pairs = 0;
    for p in semirings() {
        let Some(w) = p.property_n() else { continue };
        pairs += 1;
        let ae: Vec<usize> = (0..p.size()).map(|b| p.mul(b, w.e)).collect();
        let very: Vec<(usize, usize)> = improper_elements(&p)
            .into_iter()
            .filter(|el| el.very_improper && ae.contains(&el.b))
            .map(|el| (el.a, el.b))
            .collect();
        for &x in &very {
            for &y in &very {
                let (u, v) = twist(&p, x, y);
                ensure(
                    p.is_tangible(u) && p.in_a_zero(v) && p.add(u, v) == u,
                    || format!("{}: {x:?} ⋈ {y:?} = ({u}, {v})", p.name()),
                )?;
                products += 1;
            }
        }
        let r = run_check(&Subject::new(p.clone()), "CHAINS").map_err(|e| e.to_string())?;
        ensure(r.passed == Some(true), || {
            format!("{}: CHAINS check failed", p.name())
        })?;
    }
    Ok(format!(
        "{products} twist products over {pairs} semiring pairs are very improper"
    ))
}

fn c10_residue() -> Outcome {
    let f5 = prime_field(5).map_err(|e| e.to_string())?;
    let h = residue_hyperstructure(&f5, &[1, 4]).map_err(|e| e.to_string())?;
    let oracle = coset_oracle(5, &[1, 4]);
    ensure(h.size() == oracle.classes.len(), || {
        "class count differs".into()
    })?;
    let map: Vec<usize> = (0..h.size())
        .map(|x| {
            let m = class_members(h.name(x));
            oracle.classes.iter().position(|c| *c == m).expect("class")
        })
        .collect();
    for x in 0..h.size() {
        for y in 0..h.size() {
            let sum: std::collections::BTreeSet<usize> =
                h.sum_set(x, y).into_iter().map(|z| map[z]).collect();
            ensure(sum == oracle.sums[map[x]][map[y]], || {
                format!("sum {x},{y}")
            })?;
            ensure(map[h.mul(x, y)] == oracle.products[map[x]][map[y]], || {
                format!("product {x},{y}")
            })?;
        }
    }
    let f3 = residue_hyperstructure(&prime_field(3).map_err(|e| e.to_string())?, &[1, 2])
        .map_err(|e| e.to_string())?;
    let k = krasner();
    ensure(
        f3.hyperadd_table() == k.hyperadd_table() && f3.mul_table() == k.mul_table(),
        || "F₃/F₃^× differs from Krasner".into(),
    )?;
    Ok("F₅/{1,4} matches cosets; F₃/F₃^× = Krasner".into())
}

fn c11_round_trip_and_mutants() -> Outcome {
    let mut files = 0;
    for entry in fs::read_dir(catalog_dir()).map_err(|e| e.to_string())? {
        let text = fs::read_to_string(entry.map_err(|e| e.to_string())?.path())
            .map_err(|e| e.to_string())?;
        let once = parse_structure_file(&text).map_err(|e| e.to_string())?;
        let again = match &once {
            StructureFile::Pair(f) => serialize_pair_file(f),
            StructureFile::Hyper(f) => serialize_hyper_file(f),
        };
        let twice = parse_structure_file(&again).map_err(|e| e.to_string())?;
        ensure(once == twice && again == text, || {
            "round trip changed a file".into()
        })?;
        files += 1;
    }
    let ms = mutants(3);
    let mut breaking = 0;
    for m in &ms {
        if axioms_hold(&m.file) {
            continue;
        }
        breaking += 1;
        let text = serialize_pair_file(&m.file);
        let detected = match load_structure(&text, DEFAULT_CARRIER_CAP) {
            Err(_) => true,
            Ok(l) => pairspec::verify::run_all(&Subject::new(l.pair))
                .into_iter()
                .flatten()
                .any(|r| r.passed == Some(false)),
        };
        ensure(detected, || {
            format!("undetected mutant {} {}", m.source, m.cell)
        })?;
    }
    ensure(ms.len() >= 50, || format!("only {} mutants", ms.len()))?;
    Ok(format!(
        "{files} files round-trip; {} mutants, {breaking} axiom-breaking, all detected",
        ms.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("catalog validation", c1_validation),
        ("classifications", c2_classification),
        ("twist associativity", c3_twass),
        ("congruence enumeration", c4_enumeration),
        ("prime, semiprime, radical", c5_bf),
        ("radical congruences contain (1,e)", c6_rd1),
        ("spectrum bijections", c7_rd2_sp2),
        ("(1,e) in √Diag", c8_prs2),
        ("very improper products", c9_chains),
        ("residue hyperstructures", c10_residue),
        ("round trip and fault injection", c11_round_trip_and_mutants),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let t = start.elapsed();
        match r {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
