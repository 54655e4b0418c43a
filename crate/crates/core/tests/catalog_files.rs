//! The JSON files under `catalog/` match the built-in constructions.
//!
//! Run with `PAIRSPEC_WRITE_CATALOG=1` to regenerate them.

use std::fs;
use std::path::PathBuf;

use pairspec::constructions::{
    catalog, group_hyperfield, krasner, prime_field, residue_hyperstructure, signs,
};
use pairspec::io::{
    load_structure, parse_structure_file, serialize_hyper_file, serialize_pair_file, HyperFile,
    PairFile, StructureFile,
};

const PAIR_FILES: [&str; 11] = [
    "super_boolean",
    "boolean",
    "minbp_c2_first",
    "minbp_c2_second",
    "supertropical_c2_id",
    "truncated_123_m3",
    "power_set_krasner",
    "power_set_signs",
    "power_set_f5_residue",
    "power_set_c3_hyperfield",
    "functions_super_boolean",
];

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

fn expected() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = PAIR_FILES
        .iter()
        .zip(catalog())
        .map(|(f, p)| {
            (
                format!("{f}.json"),
                serialize_pair_file(&PairFile::from_pair(&p, None)),
            )
        })
        .collect();
    let f5 = prime_field(5).unwrap();
    let hypers = [
        ("krasner", krasner()),
        ("signs", signs()),
        ("f5_residue", residue_hyperstructure(&f5, &[1, 4]).unwrap()),
        ("c3_hyperfield", group_hyperfield(3).unwrap()),
    ];
    for (name, h) in hypers {
        let f = HyperFile::from_hyper(name, &h, &[h.zero()]);
        out.push((format!("hyper_{name}.json"), serialize_hyper_file(&f)));
    }
    out
}

#[test]
fn catalog_files_are_current() {
    let write = std::env::var_os("PAIRSPEC_WRITE_CATALOG").is_some();
    for (file, text) in expected() {
        let path = dir().join(&file);
        if write {
            fs::write(&path, &text).unwrap();
        }
        let on_disk = fs::read_to_string(&path).unwrap_or_default();
        assert_eq!(on_disk, text, "{file} is stale");
    }
}

#[test]
fn catalog_files_round_trip() {
    for entry in fs::read_dir(dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let parsed = parse_structure_file(&text).unwrap();
        let again = match &parsed {
            StructureFile::Pair(f) => serialize_pair_file(f),
            StructureFile::Hyper(f) => serialize_hyper_file(f),
        };
        assert_eq!(again, text, "{}", path.display());
        assert_eq!(parse_structure_file(&again).unwrap(), parsed);
        load_structure(&text, 4096).unwrap();
    }
}
