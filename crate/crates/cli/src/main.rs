//! `nilcap`: command-line access to the algebra file format, invariants,
//! capability decisions, the catalog and the verification report.
//!
//! Exit status: 0 success, 1 bad input or computation error, 2 a check failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilcap::catalog::{self, CatalogId, Params};
use nilcap::classify::{self, VerifyOptions};
use nilcap::field::parse_rational;
use nilcap::{format, schur, FieldSpec, LieAlgebra, Subspace};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "nilcap", version, about = "Schur multipliers and capability of nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity and nilpotency; print series dimensions.
    Validate(FileArgs),
    /// Print the full invariant fingerprint.
    Analyze(FileArgs),
    /// Decide capability from the exterior center, or from structure.
    Capable {
        #[command(flatten)]
        file: FileArgs,
        /// Use the structural rules (requires dim L² ≤ 2).
        #[arg(long)]
        structural: bool,
    },
    /// Print dim M(L), dim L∧L and dim L².
    Multiplier(FileArgs),
    /// List or emit catalog algebras.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Run the verification report.
    VerifyPaper {
        /// Field to check over; repeatable. Defaults to q and gf2.
        #[arg(long = "field", value_parser = parse_field)]
        fields: Vec<FieldSpec>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct FileArgs {
    path: PathBuf,
    #[arg(long)]
    json: bool,
    /// `KEY=VAL` to compare against the output; mismatch exits with 2.
    #[arg(long = "expect", value_parser = parse_expect)]
    expect: Vec<(String, String)>,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List family names and their parameters.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Write an algebra file for one catalog member.
    Emit {
        /// Family name, e.g. L6_22 or H.
        id: String,
        #[arg(long, value_parser = parse_field, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let lower = s.to_ascii_lowercase();
    let p = match lower.as_str() {
        "q" => return Ok(FieldSpec::Rationals),
        "gf2" => 2,
        "gf3" => 3,
        "gf5" => 5,
        other => other
            .strip_prefix("gfp:")
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| format!("unknown field {s:?}; use q, gf2, gf3, gf5 or gfp:P"))?,
    };
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn parse_expect(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected KEY=VAL, got {s:?}"))
}

/// A failure with its exit status.
struct Failure {
    status: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            status: 1,
            message: message.to_string(),
        }
    }

    fn check(message: impl ToString) -> Self {
        Failure {
            status: 2,
            message: message.to_string(),
        }
    }
}

impl From<nilcap::Error> for Failure {
    fn from(e: nilcap::Error) -> Self {
        Failure::input(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are input errors; help and version are not errors
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate(args) => validate(&args),
        Command::Analyze(args) => analyze(&args),
        Command::Capable { file, structural } => capable(&file, structural),
        Command::Multiplier(args) => multiplier(&args),
        Command::Catalog(CatalogCommand::List { json }) => catalog_list(json),
        Command::Catalog(CatalogCommand::Emit {
            id,
            field,
            eps,
            eta,
            m,
            n,
            out,
        }) => {
            let rational = |s: Option<String>| s.map(|s| parse_rational(&s)).transpose();
            let params = Params {
                n,
                m,
                eps: rational(eps)?,
                eta: rational(eta)?,
            };
            let id = CatalogId::from_parts(&id, &params)?;
            let text = format::emit(&catalog::build(&id, field)?);
            write_or_print(out.as_deref(), &text)
        }
        Command::VerifyPaper {
            fields,
            seed,
            out,
            json,
        } => {
            let fields = if fields.is_empty() {
                vec![FieldSpec::Rationals, FieldSpec::Prime(2)]
            } else {
                fields
            };
            let report = classify::verify_paper_with(&VerifyOptions::new(fields, seed));
            let text = serde_json::to_string_pretty(&report).map_err(Failure::input)? + "\n";
            if let Some(path) = out {
                write_or_print(Some(&path), &text)?;
            }
            if json {
                print!("{text}");
            } else {
                print!("{}", report.table());
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::check(format!("{} checks failed", report.failures().count())))
            }
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads, parses and Jacobi-checks an algebra file.
fn load(path: &Path) -> Result<LieAlgebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let l = format::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let report = l.validate();
    if !report.passed() {
        let triples: Vec<String> = report
            .violations
            .iter()
            .map(|(i, j, k)| format!("({}, {}, {})", i + 1, j + 1, k + 1))
            .collect();
        return Err(Failure::check(format!("Jacobi identity fails on {}", triples.join(", "))));
    }
    Ok(l)
}

fn subspace_json(s: &Subspace) -> Value {
    Value::Array(
        s.basis()
            .iter()
            .map(|v| Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Prints `out` and applies `--expect`.
fn finish(out: Map<String, Value>, args: &FileArgs) -> Outcome {
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out).map_err(Failure::input)?);
    } else {
        for (k, v) in &out {
            println!("{k}: {}", value_text(v));
        }
    }
    let mut mismatches = Vec::new();
    for (k, want) in &args.expect {
        let got = out
            .get(k)
            .ok_or_else(|| Failure::input(format!("--expect: unknown key {k:?}")))?;
        if value_text(got) != *want {
            mismatches.push(format!("{k}: expected {want}, got {}", value_text(got)));
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(mismatches.join("; ")))
    }
}

fn to_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn header(l: &LieAlgebra) -> Map<String, Value> {
    let mut m = Map::new();
    if let Some(name) = l.name() {
        m.insert("name".into(), json!(name));
    }
    m.insert("field".into(), json!(l.field().id()));
    m.insert("dim".into(), json!(l.dim()));
    m
}

fn validate(args: &FileArgs) -> Outcome {
    let l = load(&args.path)?;
    let lower: Vec<usize> = l.lower_central_series()?.iter().map(Subspace::dim).collect();
    let upper: Vec<usize> = l.upper_central_series().iter().map(Subspace::dim).collect();
    let mut out = header(&l);
    out.insert("jacobi".into(), json!("ok"));
    out.insert("class".into(), json!(lower.len() - 1));
    out.insert("lower_series".into(), json!(lower));
    out.insert("upper_series".into(), json!(upper));
    finish(out, args)
}

fn analyze(args: &FileArgs) -> Outcome {
    let l = load(&args.path)?;
    let fp = classify::fingerprint(&l)?;
    let mut out = header(&l);
    out.extend(to_map(serde_json::to_value(&fp).map_err(Failure::input)?));
    let r = schur::analyze(&l)?;
    out.insert("capable".into(), json!(r.capable));
    out.insert("exterior_center".into(), subspace_json(&r.exterior_center));
    finish(out, args)
}

fn capable(args: &FileArgs, structural: bool) -> Outcome {
    let l = load(&args.path)?;
    let mut out = header(&l);
    if structural {
        let v = classify::capability_structural(&l)?;
        out.insert("method".into(), json!("structural"));
        out.insert("capable".into(), json!(v.capable));
        out.insert("rule".into(), json!(v.rule.tag()));
        out.insert("rule_statement".into(), json!(v.rule.statement()));
        out.insert("family_label".into(), json!(v.family_label));
    } else {
        let r = schur::analyze(&l)?;
        out.insert("method".into(), json!("exterior-center"));
        out.insert("capable".into(), json!(r.capable));
        out.insert("dim_exterior_center".into(), json!(r.exterior_center.dim()));
        out.insert("exterior_center".into(), subspace_json(&r.exterior_center));
    }
    finish(out, args)
}

fn multiplier(args: &FileArgs) -> Outcome {
    let l = load(&args.path)?;
    let r = schur::analyze(&l)?;
    let mut out = header(&l);
    out.insert("dim_multiplier".into(), json!(r.dim_multiplier));
    out.insert("dim_exterior_square".into(), json!(r.dim_exterior_square));
    out.insert("dim_derived".into(), json!(l.derived().dim()));
    finish(out, args)
}

fn catalog_list(json_out: bool) -> Outcome {
    let rows: Vec<(&str, &str, &str)> = catalog::NAMES
        .iter()
        .map(|&name| {
            let (params, fields) = match name {
                "A" => ("--n", "any"),
                "H" => ("--m (>= 1)", "any"),
                "L6_7_2" => ("--eta (0 or omega)", "gf2"),
                "L6_22" => ("--eps", "characteristic != 2"),
                _ => ("", "any"),
            };
            (name, params, fields)
        })
        .collect();
    if json_out {
        let v: Vec<Value> = rows
            .iter()
            .map(|(n, p, f)| json!({"name": n, "params": p, "fields": f}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&v).map_err(Failure::input)?);
    } else {
        for (n, p, f) in rows {
            println!("{n:8} {p:20} {f}");
        }
    }
    Ok(())
}
