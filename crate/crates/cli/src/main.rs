use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pairspec::congruence::{
    enumerate_congruences, generated_congruence, CongruenceError, DEFAULT_MAX_CONGRUENCES,
};
use pairspec::constructions::{
    double, function_pair, group_hyperfield, hyperpair_generated, krasner, minimal_bipotent,
    power_set_pair, prime_field, quotient_pair, residue_hyperstructure, signs, super_boolean,
    supertropical_constant, supertropical_standard, truncated, BipotentKind, Monoid,
    DEFAULT_CARRIER_CAP,
};
use pairspec::io::{
    labelled_check_report, labelled_congruence, labelled_spectrum, load_structure,
    parse_hyper_file, serialize_hyper_file, serialize_pair_file, serialize_report, HyperFile,
    Loaded, PairFile,
};
use pairspec::spectrum::{spectrum_report_for, SpectrumError};
use pairspec::verify::{run_all, run_check, summary, Subject, VerifyError};
use pairspec::{classify_pair, HyperStructure, Pair};

const EXIT_INVALID: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_CHECK: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pairspec",
    version,
    about = "Finite semiring pairs and their congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a structure file and check the pair axioms.
    Validate { file: PathBuf },
    /// Print the classification flags of a pair.
    Classify { file: PathBuf },
    /// List every congruence.
    Congruences {
        file: PathBuf,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Prime, radical and related congruences.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Run verification checks; exits 3 if any fails.
    Verify(VerifyArgs),
    /// Build a pair from a named construction.
    Construct {
        builder: String,
        /// `key=value`, repeatable.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Quotient by the congruence generated by `a~b,c~d,...`.
    Quotient {
        file: PathBuf,
        #[arg(long = "gen")]
        generators: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "all")]
    check: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    max: Option<usize>,
}

/// Error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn cap_from(max: Option<usize>) -> Result<usize, Failure> {
    if let Some(m) = max {
        return Ok(m);
    }
    match std::env::var("PAIRSPEC_MAX_CONGRUENCES") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::invalid(format!("PAIRSPEC_MAX_CONGRUENCES is not a number: {v}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_CONGRUENCES),
    }
}

fn cap_failure(cap: usize, found: usize) -> Failure {
    Failure {
        code: EXIT_CAP,
        message: format!("more than {cap} congruences (reached {found}); raise --max"),
    }
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    load_structure(&text, DEFAULT_CARRIER_CAP)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn print(v: &serde_json::Value) {
    print!("{}", serialize_report(v));
}

fn validate(path: &Path) -> Outcome {
    let l = load(path)?;
    let p = &l.pair;
    let mut out = json!({
        "name": p.name(),
        "size": p.size(),
        "valid": true,
        "property_n": p.property_n().map(|w| json!({
            "e": p.label(w.e),
            "one_dagger": p.label(w.one_dagger),
            "all_daggers": w.all_daggers.iter().map(|&x| p.label(x)).collect::<Vec<_>>(),
        })),
        "structure": p.structure().flags(),
        "negation": l.negation.is_some(),
    });
    if let Some(h) = &l.hyper {
        out["hyper"] = serde_json::to_value(h.flags()).expect("flags serialize");
    }
    print(&out);
    Ok(0)
}

fn classify(path: &Path) -> Outcome {
    let l = load(path)?;
    let mut out = serde_json::to_value(classify_pair(&l.pair)).expect("classification serializes");
    out["name"] = json!(l.pair.name());
    if let Some(h) = &l.hyper {
        out["hyper"] = serde_json::to_value(h.flags()).expect("flags serialize");
    }
    print(&out);
    Ok(0)
}

fn congruences(path: &Path, max: Option<usize>) -> Outcome {
    let cap = cap_from(max)?;
    let l = load(path)?;
    let lattice = match enumerate_congruences(&l.pair, cap) {
        Ok(x) => x,
        Err(CongruenceError::CapExceeded { cap, found }) => return Err(cap_failure(cap, found)),
        Err(e) => return Err(Failure::invalid(e.to_string())),
    };
    let list: Vec<Vec<Vec<String>>> = lattice
        .congruences()
        .iter()
        .map(|c| labelled_congruence(&l.pair, c))
        .collect();
    print(&json!({ "name": l.pair.name(), "count": list.len(), "congruences": list }));
    Ok(0)
}

fn spectrum(path: &Path, max: Option<usize>) -> Outcome {
    let cap = cap_from(max)?;
    let l = load(path)?;
    let lattice = match enumerate_congruences(&l.pair, cap) {
        Ok(x) => x,
        Err(CongruenceError::CapExceeded { cap, found }) => return Err(cap_failure(cap, found)),
        Err(e) => return Err(Failure::invalid(SpectrumError::from(e).to_string())),
    };
    let report = spectrum_report_for(&l.pair, &lattice, cap);
    let mut out = labelled_spectrum(&l.pair, &report);
    out["name"] = json!(l.pair.name());
    print(&out);
    Ok(0)
}

fn verify(args: &VerifyArgs) -> Outcome {
    let cap = cap_from(args.max)?;
    let l = load(&args.file)?;
    let mut subject = Subject::new(l.pair.clone()).with_cap(cap);
    if let Some(h) = l.hyper {
        subject = subject.with_hyper(h);
    }
    let results = match &args.check {
        Some(id) if !args.all => vec![run_check(&subject, id)],
        _ => run_all(&subject),
    };
    let mut reports = Vec::new();
    let mut cap_hit = None;
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(VerifyError::UnknownCheckId(id)) => {
                return Err(Failure::invalid(format!("unknown check id {id}")))
            }
            Err(VerifyError::CapExceeded { cap, found }) => cap_hit = Some((cap, found)),
        }
    }
    let (passed, failed, skipped) = summary(&reports);
    let out = json!({
        "name": l.pair.name(),
        "reports": reports.iter().map(|r| labelled_check_report(&l.pair, r)).collect::<Vec<_>>(),
        "summary": { "passed": passed, "failed": failed, "skipped": skipped },
    });
    print(&out);
    if failed > 0 {
        return Ok(EXIT_CHECK);
    }
    if let Some((cap, found)) = cap_hit {
        return Err(cap_failure(cap, found));
    }
    Ok(0)
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(raw: &[String]) -> Result<Self, Failure> {
        let mut m = BTreeMap::new();
        for p in raw {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Failure::invalid(format!("parameter `{p}` is not key=value")))?;
            m.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(m))
    }

    fn get(&self, k: &str) -> Option<&str> {
        self.0.get(k).map(String::as_str)
    }

    fn require(&self, k: &str) -> Result<&str, Failure> {
        self.get(k)
            .ok_or_else(|| Failure::invalid(format!("missing parameter {k}")))
    }

    fn number<T: std::str::FromStr>(&self, k: &str, default: Option<T>) -> Result<T, Failure> {
        match (self.get(k), default) {
            (Some(v), _) => v
                .parse()
                .map_err(|_| Failure::invalid(format!("parameter {k}: bad number {v}"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Failure::invalid(format!("missing parameter {k}"))),
        }
    }

    fn list(&self, k: &str) -> Result<Vec<String>, Failure> {
        Ok(self
            .require(k)?
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect())
    }
}

fn monoid(spec: &str) -> Result<Monoid, Failure> {
    let (kind, n) = spec.split_once(':').unwrap_or((spec, "1"));
    let n: usize = n
        .parse()
        .map_err(|_| Failure::invalid(format!("bad monoid size in {spec}")))?;
    match kind {
        "cyclic" if n >= 1 => Ok(Monoid::cyclic(n)),
        "saturating" => Ok(Monoid::saturating(n)),
        _ => Err(Failure::invalid(format!(
            "monoid must be cyclic:N or saturating:M, got {spec}"
        ))),
    }
}

fn input_pair(params: &Params) -> Result<Pair, Failure> {
    Ok(load(Path::new(params.require("input")?))?.pair)
}

fn labels_to_elems(names: &[String], labels: &[String]) -> Result<Vec<usize>, Failure> {
    labels
        .iter()
        .map(|l| {
            names
                .iter()
                .position(|n| n == l)
                .ok_or_else(|| Failure::invalid(format!("unknown label {l}")))
        })
        .collect()
}

/// `hyper=krasner|signs|group:N` or `input=<hyper file>`.
fn input_hyper(params: &Params) -> Result<(HyperStructure, Option<Vec<usize>>), Failure> {
    if let Some(path) = params.get("input") {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{path}: {e}")))?;
        let f = parse_hyper_file(&text).map_err(|e| Failure::invalid(format!("{path}: {e}")))?;
        let h = f
            .to_hyper()
            .map_err(|e| Failure::invalid(format!("{path}: {e}")))?;
        return Ok((h, Some(f.s0())));
    }
    let spec = params.get("hyper").unwrap_or("krasner");
    let h = match spec.split_once(':') {
        None if spec == "krasner" => krasner(),
        None if spec == "signs" => signs(),
        Some(("group", n)) => {
            let n = n
                .parse()
                .map_err(|_| Failure::invalid(format!("bad group order in {spec}")))?;
            group_hyperfield(n).map_err(|e| Failure::invalid(e.to_string()))?
        }
        _ => {
            return Err(Failure::invalid(format!(
                "hyper must be krasner, signs or group:N, got {spec}"
            )))
        }
    };
    Ok((h, None))
}

enum Built {
    Pair(PairFile),
    Hyper(HyperFile),
}

fn build(builder: &str, params: &Params) -> Result<Built, Failure> {
    let err = |e: pairspec::constructions::ConstructionError| Failure::invalid(e.to_string());
    let pair = |p: Pair| Built::Pair(PairFile::from_pair(&p, None));
    Ok(match builder {
        "super_boolean" => pair(super_boolean()),
        "supertropical" => {
            let t = monoid(params.get("monoid").unwrap_or("cyclic:2"))?;
            match params.get("nu").unwrap_or("id") {
                "id" => pair(supertropical_standard(&t).map_err(err)?),
                "const" => pair(supertropical_constant(&t).map_err(err)?),
                other => {
                    return Err(Failure::invalid(format!(
                        "nu must be id or const, got {other}"
                    )))
                }
            }
        }
        "truncated" => {
            let values = params
                .list("values")?
                .iter()
                .map(|v| v.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::invalid("values must be integers"))?;
            let m = params.number("m", values.iter().max().copied())?;
            pair(truncated(&values, m).map_err(err)?)
        }
        "minimal_bipotent" => {
            let t = monoid(params.get("monoid").unwrap_or("cyclic:2"))?;
            let kind = match params.get("kind").unwrap_or("first") {
                "first" => BipotentKind::First,
                "second" => BipotentKind::Second,
                other => {
                    return Err(Failure::invalid(format!(
                        "kind must be first or second, got {other}"
                    )))
                }
            };
            pair(minimal_bipotent(&t, kind).map_err(err)?)
        }
        "double" => {
            let d = double(&input_pair(params)?).map_err(err)?;
            Built::Pair(PairFile::from_pair(&d.pair, Some(&d.switch)))
        }
        "power_set" => {
            let (h, s0) = input_hyper(params)?;
            let s0 = match params.get("s0") {
                Some(_) => Some(labels_to_elems(h.names(), &params.list("s0")?)?),
                None => s0,
            };
            pair(power_set_pair(&h, s0.as_deref(), DEFAULT_CARRIER_CAP).map_err(err)?)
        }
        "hyperpair" => {
            let (h, _) = input_hyper(params)?;
            pair(hyperpair_generated(&h, DEFAULT_CARRIER_CAP).map_err(err)?)
        }
        "residue" => {
            let p = params.number("p", Some(5usize))?;
            let field = prime_field(p).map_err(err)?;
            let group_labels = params.list("group")?;
            let group = labels_to_elems(field.structure().names(), &group_labels)?;
            let h = residue_hyperstructure(&field, &group).map_err(err)?;
            let name = params
                .get("name")
                .map(str::to_string)
                .unwrap_or_else(|| format!("F{p}/{{{}}}", group_labels.join(",")));
            Built::Hyper(HyperFile::from_hyper(&name, &h, &[h.zero()]))
        }
        "function_pair" => {
            let s = monoid(params.get("monoid").unwrap_or("saturating:1"))?;
            pair(function_pair(&input_pair(params)?, &s, DEFAULT_CARRIER_CAP).map_err(err)?)
        }
        other => return Err(Failure::invalid(format!("unknown builder {other}"))),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn construct(builder: &str, raw: &[String], output: &Path) -> Outcome {
    let params = Params::parse(raw)?;
    let mut built = build(builder, &params)?;
    if let Some(name) = params.get("name") {
        match &mut built {
            Built::Pair(f) => f.name = name.to_string(),
            Built::Hyper(f) => f.name = name.to_string(),
        }
    }
    match built {
        Built::Pair(f) => write(output, &serialize_pair_file(&f))?,
        Built::Hyper(f) => write(output, &serialize_hyper_file(&f))?,
    }
    Ok(0)
}

fn quotient(path: &Path, generators: &str, output: &Path) -> Outcome {
    let l = load(path)?;
    let p = &l.pair;
    let mut gens = Vec::new();
    for g in generators
        .split(',')
        .map(str::trim)
        .filter(|g| !g.is_empty())
    {
        let (a, b) = g
            .split_once('~')
            .ok_or_else(|| Failure::invalid(format!("generator `{g}` is not a~b")))?;
        let find = |x: &str| {
            p.structure()
                .index_of(x.trim())
                .ok_or_else(|| Failure::invalid(format!("unknown label {x}")))
        };
        gens.push((find(a)?, find(b)?));
    }
    let c = generated_congruence(p, &gens);
    let q = quotient_pair(p, &c).map_err(|e| Failure::invalid(e.to_string()))?;
    write(output, &serialize_pair_file(&PairFile::from_pair(&q, None)))?;
    print(&json!({ "congruence": labelled_congruence(p, &c), "size": q.size() }));
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Classify { file } => classify(&file),
        Command::Congruences { file, max } => congruences(&file, max),
        Command::Spectrum { file, max } => spectrum(&file, max),
        Command::Verify(args) => verify(&args),
        Command::Construct {
            builder,
            params,
            output,
        } => construct(&builder, &params, &output),
        Command::Quotient {
            file,
            generators,
            output,
        } => quotient(&file, &generators, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
