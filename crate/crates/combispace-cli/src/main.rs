//! `combispace`: exact combinatorial-Banach-space computations from the
//! command line, with JSON input and output.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 property violation
//! found by a checker subcommand, 3 resource bound exceeded.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use combispace::families::{
    self, build_family, build_family_unchecked, check_regularity_window, Family, FamilyConfig,
    FamilyError, Limits, TailRule,
};
use combispace::finset::FinSet;
use combispace::isometry::{
    check_window_preservation, doubling_image, search_window_isometries, IsometryError,
    SignedPermutation,
};
use combispace::norms::{
    dual_norm, enumerate_extreme_supports, is_extreme, norm, NormError, SparseVec,
};
use combispace::ordinals::{compare, parse_ordinal, OrdinalClass};
use combispace::scalars::parse_scalar;
use combispace::schreier::{check_min_preservation, SchreierError};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "combispace",
    version,
    about = "Exact membership, norms, extreme points, and isometry search \
             for combinatorial Banach spaces built from regular families"
)]
struct Cli {
    /// Print a single machine-readable JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sampling in checker subcommands. The built-in
    /// checkers are exhaustive, so this is accepted and currently unused.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Raise the window bounds of exhaustive checks (exponential cost).
    #[arg(long, global = true, value_name = "M")]
    max_window: Option<usize>,
    /// Raise the support bounds of enumerations and LPs (exponential cost).
    #[arg(long, global = true, value_name = "K")]
    max_support: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArg {
    /// Family config: inline JSON or a path to a JSON file, e.g.
    /// '{"kind":"schreier","alpha":"2"}'.
    #[arg(long)]
    family: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a set in the family.
    Member {
        #[command(flatten)]
        family: FamilyArg,
        /// The set as a sorted JSON integer array, e.g. `[2,3,4]`.
        #[arg(long)]
        set: String,
    },
    /// Decide whether a member is maximal in the full family.
    Maximal {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        set: String,
    },
    /// Extend a member rightward to a maximal member inside a tail rule.
    Extend {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        set: String,
        /// Tail rule JSON, e.g. '{"kind":"all_from","start":6}' or
        /// '{"kind":"arithmetic_progression","first":2,"step":2}'.
        #[arg(long)]
        tail: String,
    },
    /// Successive blocks G_1 < G_2 < ... with every G_i u {n} maximal.
    Extseq {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// List members inside a given set (lexicographic order).
    Enumerate {
        #[command(flatten)]
        family: FamilyArg,
        /// The ambient set as a sorted JSON integer array.
        #[arg(long)]
        within: String,
        /// Only members maximal relative to the ambient set.
        #[arg(long)]
        maximal: bool,
    },
    /// Exhaustively verify heredity, spreading, and singleton membership
    /// on a window. Exit code 2 when violations are found.
    CheckRegular {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        window: u32,
    },
    /// Exact norm of a vector.
    Norm {
        #[command(flatten)]
        family: FamilyArg,
        /// Vector as a JSON object of scalar literals, e.g.
        /// '{"1":"1","2":"-1/2"}'.
        #[arg(long)]
        vec: String,
    },
    /// Exact dual norm of a functional, with the attaining certificate.
    Dualnorm {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        vec: String,
    },
    /// Decide whether a functional is an extreme point of the dual ball.
    Extreme {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        vec: String,
    },
    /// Supports of extreme points inside a window.
    Extremes {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        window: u32,
    },
    /// Check that a signed permutation transports members to members both
    /// ways on a window. Exit code 2 on a violation.
    Isocheck {
        #[command(flatten)]
        family: FamilyArg,
        /// Target family (defaults to --family).
        #[arg(long)]
        target: Option<String>,
        /// Signed permutation JSON:
        /// `{"window":3,"perm":[2,1,3],"signs":{"1":"-1"}}`.
        #[arg(long)]
        perm: String,
        #[arg(long)]
        window: u32,
    },
    /// Search all permutations of `[1,support]` for window-verified isometry
    /// candidates.
    Isosearch {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        support: u32,
        #[arg(long)]
        window: u32,
    },
    /// Check min-preservation across spreading pairs of maximal Schreier
    /// sets. Exit code 2 on a violation.
    Minpres {
        /// Schreier order as an ordinal expression, e.g. 'w*2'.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        window: u32,
    },
    /// Apply the doubling operator e_n* -> e_(2n)* + e_(2n+1)*.
    Doubling {
        #[arg(long)]
        vec: String,
    },
    /// Parse, classify, compare, and expand ordinal expressions.
    Ordinal {
        #[arg(long)]
        expr: String,
        /// Compare against another ordinal expression (prints LT/EQ/GT).
        #[arg(long)]
        compare: Option<String>,
        /// Print the n-th fundamental-sequence element of a limit ordinal.
        #[arg(long)]
        fs: Option<u32>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let code = match &e {
            FamilyError::BoundExceeded { .. } | FamilyError::CellCapExceeded { .. } => EXIT_BOUND,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<NormError> for Failure {
    fn from(e: NormError) -> Self {
        let code = match &e {
            NormError::BoundExceeded { .. } => EXIT_BOUND,
            NormError::Family(inner) => return Failure::from_family_ref(inner, e.to_string()),
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<IsometryError> for Failure {
    fn from(e: IsometryError) -> Self {
        let code = match &e {
            IsometryError::BoundExceeded { .. } => EXIT_BOUND,
            IsometryError::Family(inner) => return Failure::from_family_ref(inner, e.to_string()),
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SchreierError> for Failure {
    fn from(e: SchreierError) -> Self {
        match &e {
            SchreierError::Family(inner) => Failure::from_family_ref(inner, e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl Failure {
    fn from_family_ref(e: &FamilyError, message: String) -> Self {
        let code = match e {
            FamilyError::BoundExceeded { .. } | FamilyError::CellCapExceeded { .. } => EXIT_BOUND,
            _ => EXIT_USAGE,
        };
        Failure { code, message }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message.replace('\n', " "));
            ExitCode::from(failure.code)
        }
    }
}

fn limits_from(cli: &Cli) -> Limits {
    // --seed is reserved: every shipped checker is exhaustive.
    let _ = cli.seed;
    let mut limits = Limits::from_env();
    if let Some(m) = cli.max_window {
        limits.window = m;
        limits.regularity_window = m;
        limits.min_preservation_window = m;
    }
    if let Some(k) = cli.max_support {
        limits.enum_support = k;
        limits.dual_support = k;
        limits.search_support = k;
    }
    limits
}

fn read_json_source(source: &str, what: &str) -> Result<String, Failure> {
    let trimmed = source.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(trimmed.to_string())
    } else {
        std::fs::read_to_string(trimmed)
            .map_err(|e| Failure::usage(format!("cannot read {what} file {trimmed:?}: {e}")))
    }
}

fn load_family(source: &str, strict: bool) -> Result<Family, Failure> {
    let text = read_json_source(source, "family config")?;
    let config: FamilyConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad family config: {e}")))?;
    let fam = if strict { build_family(&config) } else { build_family_unchecked(&config) }?;
    Ok(fam)
}

fn parse_set(text: &str) -> Result<FinSet, Failure> {
    let text = read_json_source(text, "set")?;
    let raw: Vec<u32> = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad set (expected a JSON integer array): {e}")))?;
    FinSet::new(raw).map_err(|e| Failure::usage(format!("bad set: {e} (arrays must be sorted)")))
}

fn parse_vec(text: &str) -> Result<SparseVec, Failure> {
    let text = read_json_source(text, "vector")?;
    let raw: BTreeMap<String, String> = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad vector (expected an index->scalar object): {e}")))?;
    SparseVec::from_literal_entries(raw.iter().map(|(k, v)| (k.as_str(), v.as_str())))
        .map_err(|e| Failure::usage(format!("bad vector: {e}")))
}

fn parse_tail(text: &str) -> Result<TailRule, Failure> {
    let text = read_json_source(text, "tail rule")?;
    let tail: TailRule = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad tail rule: {e}")))?;
    tail.validate().map_err(Failure::from)?;
    Ok(tail)
}

fn parse_perm(text: &str) -> Result<SignedPermutation, Failure> {
    #[derive(serde::Deserialize)]
    struct RawPerm {
        window: u32,
        perm: Vec<u32>,
        #[serde(default)]
        signs: BTreeMap<String, String>,
    }
    let text = read_json_source(text, "permutation")?;
    let raw: RawPerm = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad signed permutation: {e}")))?;
    let mut signs = BTreeMap::new();
    for (key, literal) in &raw.signs {
        let index: u32 = key
            .parse()
            .map_err(|_| Failure::usage(format!("bad sign index {key:?}")))?;
        let sign = parse_scalar(literal)
            .map_err(|e| Failure::usage(format!("bad sign at {key}: {e}")))?;
        signs.insert(index, sign);
    }
    SignedPermutation::new(raw.window, raw.perm, signs)
        .map_err(|e| Failure::usage(e.to_string()))
}

fn set_json(set: &FinSet) -> Value {
    Value::Array(set.iter().map(|e| json!(e)).collect())
}

fn vec_json(v: &SparseVec) -> Value {
    let mut map = serde_json::Map::new();
    for (i, s) in v.iter() {
        map.insert(i.to_string(), Value::String(s.to_string()));
    }
    Value::Object(map)
}

fn perm_human(images: &[u32]) -> String {
    if images.iter().enumerate().all(|(k, &v)| v == k as u32 + 1) {
        "identity".to_string()
    } else {
        format!(
            "[{}]",
            images.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        )
    }
}

fn emit(json_mode: bool, doc: Value, human: String) {
    if json_mode {
        println!("{doc}");
    } else {
        println!("{human}");
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limits = limits_from(&cli);
    let json_mode = cli.json;
    match &cli.command {
        Command::Member { family, set } => {
            let fam = load_family(&family.family, true)?;
            let set = parse_set(set)?;
            let result = families::is_member(&fam, &set);
            emit(json_mode, json!({ "member": result }), result.to_string());
            Ok(EXIT_OK)
        }
        Command::Maximal { family, set } => {
            let fam = load_family(&family.family, true)?;
            let set = parse_set(set)?;
            let result = families::is_maximal(&fam, &set)?;
            emit(json_mode, json!({ "maximal": result }), result.to_string());
            Ok(EXIT_OK)
        }
        Command::Extend { family, set, tail } => {
            let fam = load_family(&family.family, true)?;
            let set = parse_set(set)?;
            let tail = parse_tail(tail)?;
            let extended = families::extend_to_maximal(&fam, &set, &tail)?;
            emit(
                json_mode,
                json!({ "set": set_json(&extended) }),
                set_json(&extended).to_string(),
            );
            Ok(EXIT_OK)
        }
        Command::Extseq { family, n, count } => {
            let fam = load_family(&family.family, true)?;
            let blocks = families::max_extension_sequence(&fam, *n, *count)?;
            let doc = json!({ "sets": blocks.iter().map(set_json).collect::<Vec<_>>() });
            let human = blocks
                .iter()
                .map(|b| set_json(b).to_string())
                .collect::<Vec<_>>()
                .join("\n");
            emit(json_mode, doc, human);
            Ok(EXIT_OK)
        }
        Command::Enumerate { family, within, maximal } => {
            let fam = load_family(&family.family, true)?;
            let within = parse_set(within)?;
            let sets = if *maximal {
                families::enumerate_maximal_within(&fam, &within, &limits)?
            } else {
                families::enumerate_members(&fam, &within, &limits)?
            };
            let doc = json!({
                "count": sets.len(),
                "sets": sets.iter().map(set_json).collect::<Vec<_>>(),
            });
            let human = sets
                .iter()
                .map(|b| set_json(b).to_string())
                .collect::<Vec<_>>()
                .join("\n");
            emit(json_mode, doc, human);
            Ok(EXIT_OK)
        }
        Command::CheckRegular { family, window } => {
            let fam = load_family(&family.family, false)?;
            let report = check_regularity_window(&fam, *window, &limits)?;
            let doc = json!({
                "ok": report.is_ok(),
                "window": report.window,
                "singleton_violations": report.singleton_violations,
                "hereditary_violations": report
                    .hereditary_violations
                    .iter()
                    .map(|(m, s)| json!([set_json(m), set_json(s)]))
                    .collect::<Vec<_>>(),
                "spreading_violations": report
                    .spreading_violations
                    .iter()
                    .map(|(m, s)| json!([set_json(m), set_json(s)]))
                    .collect::<Vec<_>>(),
                "compactness": report.compactness,
            });
            emit(json_mode, doc, report.to_string());
            Ok(if report.is_ok() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Norm { family, vec } => {
            let fam = load_family(&family.family, true)?;
            let x = parse_vec(vec)?;
            let value = norm(&fam, &x, &limits)?;
            emit(json_mode, json!({ "value": value.to_string() }), value.to_string());
            Ok(EXIT_OK)
        }
        Command::Dualnorm { family, vec } => {
            let fam = load_family(&family.family, true)?;
            let f = parse_vec(vec)?;
            let result = dual_norm(&fam, &f, &limits)?;
            let weights: serde_json::Map<String, Value> = result
                .weights
                .iter()
                .map(|(i, u)| (i.to_string(), Value::String(u.to_string())))
                .collect();
            let doc = json!({
                "value": result.value.to_string(),
                "weights": weights,
                "certificate": vec_json(&result.certificate),
                "basis": result.basis,
            });
            let human = format!(
                "value {}\nweights {}\ncertificate {}",
                result.value,
                Value::Object(weights),
                result.certificate
            );
            emit(json_mode, doc, human);
            Ok(EXIT_OK)
        }
        Command::Extreme { family, vec } => {
            let fam = load_family(&family.family, true)?;
            let f = parse_vec(vec)?;
            let result = is_extreme(&fam, &f);
            emit(json_mode, json!({ "extreme": result }), result.to_string());
            Ok(EXIT_OK)
        }
        Command::Extremes { family, window } => {
            let fam = load_family(&family.family, true)?;
            let sets = enumerate_extreme_supports(&fam, *window, &limits)?;
            let doc = json!({
                "count": sets.len(),
                "supports": sets.iter().map(set_json).collect::<Vec<_>>(),
            });
            let human = sets
                .iter()
                .map(|b| set_json(b).to_string())
                .collect::<Vec<_>>()
                .join("\n");
            emit(json_mode, doc, human);
            Ok(EXIT_OK)
        }
        Command::Isocheck { family, target, perm, window } => {
            let fam = load_family(&family.family, true)?;
            let target = match target {
                Some(t) => load_family(t, true)?,
                None => load_family(&family.family, true)?,
            };
            let perm = parse_perm(perm)?;
            let outcome = check_window_preservation(&perm, &fam, &target, *window, &limits)?;
            let doc = json!({
                "holds": outcome.holds,
                "counterexample": outcome.counterexample.as_ref().map(set_json),
            });
            let human = match &outcome.counterexample {
                None => format!("preserved on [1,{window}]"),
                Some(witness) => format!("violated: witness {}", set_json(witness)),
            };
            emit(json_mode, doc, human);
            Ok(if outcome.holds { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Isosearch { family, target, support, window } => {
            let fam = load_family(&family.family, true)?;
            let target = match target {
                Some(t) => load_family(t, true)?,
                None => load_family(&family.family, true)?,
            };
            let found = search_window_isometries(&fam, &target, *support, *window, &limits)?;
            let doc = json!({
                "count": found.len(),
                "permutations": found,
                "note": "window-verified candidates",
            });
            let human = if found.is_empty() {
                "none".to_string()
            } else {
                found.iter().map(|p| perm_human(p)).collect::<Vec<_>>().join("\n")
            };
            emit(json_mode, doc, human);
            Ok(EXIT_OK)
        }
        Command::Minpres { alpha, window } => {
            let alpha = parse_ordinal(alpha).map_err(|e| Failure::usage(e.to_string()))?;
            let report = check_min_preservation(&alpha, *window, &limits)?;
            let doc = json!({
                "ok": report.is_ok(),
                "alpha": report.alpha.to_string(),
                "window": report.window,
                "maximal_count": report.maximal_count,
                "pairs_checked": report.pairs_checked,
                "violations": report
                    .violations
                    .iter()
                    .map(|(e, f)| json!([set_json(e), set_json(f)]))
                    .collect::<Vec<_>>(),
            });
            emit(json_mode, doc, report.to_string());
            Ok(if report.is_ok() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Doubling { vec } => {
            let f = parse_vec(vec)?;
            let image = doubling_image(&f);
            emit(json_mode, vec_json(&image), image.to_string());
            Ok(EXIT_OK)
        }
        Command::Ordinal { expr, compare: other, fs } => {
            let alpha = parse_ordinal(expr).map_err(|e| Failure::usage(e.to_string()))?;
            let class = match alpha.classify() {
                OrdinalClass::Zero => json!({ "class": "zero" }),
                OrdinalClass::Successor(pred) => {
                    json!({ "class": "successor", "predecessor": pred.to_string() })
                }
                OrdinalClass::Limit => json!({ "class": "limit" }),
            };
            let mut doc = json!({ "canonical": alpha.to_string() });
            let mut human = vec![alpha.to_string()];
            for (key, value) in class.as_object().unwrap() {
                doc[key] = value.clone();
                human.push(format!("{key}: {}", value.as_str().unwrap_or_default()));
            }
            if let Some(other) = other {
                let beta = parse_ordinal(other).map_err(|e| Failure::usage(e.to_string()))?;
                let ordering = match compare(&alpha, &beta) {
                    std::cmp::Ordering::Less => "LT",
                    std::cmp::Ordering::Equal => "EQ",
                    std::cmp::Ordering::Greater => "GT",
                };
                doc["compare"] = json!(ordering);
                human.push(format!("compare: {ordering}"));
            }
            if let Some(n) = fs {
                let element = alpha
                    .fundamental_sequence(*n)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                doc["fs"] = json!(element.to_string());
                human.push(format!("fs[{n}]: {element}"));
            }
            emit(json_mode, doc, human.join("\n"));
            Ok(EXIT_OK)
        }
    }
}
