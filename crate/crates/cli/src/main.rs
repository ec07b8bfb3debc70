//! Command-line interface for building representations of cyclic quivers,
//! computing hom spaces, decomposing into indecomposables, verifying the
//! relations of the assembled component quiver, and exporting diagrams.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or argument
//! errors, 3 incomplete decomposition.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclerep_cli::{export, io};
use cyclerep::components::{assemble_qm, build_component};
use cyclerep::decompose::decompose;
use cyclerep::exec::ExecMode;
use cyclerep::field::{Elem, Field};
use cyclerep::functor::locate;
use cyclerep::quiver::{ComponentId, CyclicQuiver, Walk};
use cyclerep::relations::{verify_configuration, RelationReport};
use cyclerep::rep::{band_rep, hom_basis, walk_rep, BandSpec};
use serde_json::json;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(name = "cyclerep", version, about = "exact computations with representations of cyclic quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a walk or band representation and print it as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Dimension (and optionally a basis) of the hom space between two
    /// serialized representations.
    Hom {
        v_file: String,
        w_file: String,
        /// Also print the basis morphisms.
        #[arg(long)]
        basis: bool,
    },
    /// Verify the defining relations of the assembled quiver.
    Verify(VerifyArgs),
    /// Export a component or assembled quiver as DOT or JSON.
    Export {
        #[command(subcommand)]
        what: ExportWhat,
    },
    /// Decompose a serialized representation into catalog objects.
    Decompose {
        v_file: String,
        /// Band parameter candidates (needed over the rationals when the
        /// defaults -10..10 do not cover the input).
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<String>>,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// String representation of the walk (p, q).
    Walk {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value = "fp:101")]
        field: String,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Band representation with parameter lambda and size d.
    Band {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "fp:101")]
        field: String,
        #[arg(short, long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    h: usize,
    /// Assembly truncation parameter; when absent, runs m = 1 and the
    /// degenerate m = 0 pass.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "fp:101")]
    field: String,
    /// Band parameters, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    lambdas: Vec<String>,
    /// Also write a machine-readable JSON report here.
    #[arg(long)]
    json: Option<String>,
    /// Check relation instances sequentially instead of on a worker pool.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum ExportWhat {
    /// One component quiver at a truncation.
    Component {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        h: usize,
        /// Which component: P, I, 0, inf, or lambda.
        #[arg(long, ignore_case = true)]
        which: ComponentArg,
        /// Band parameter (lambda component only).
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        truncation: usize,
        #[arg(long, default_value = "fp:101")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Attach each vertex's walk/band label and dimension vector.
        #[arg(long)]
        with_objects: bool,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// The assembled quiver with connecting arrows.
    Assembled {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        lambdas: Vec<String>,
        #[arg(long, default_value = "fp:101")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        with_objects: bool,
        #[arg(short, long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComponentArg {
    P,
    I,
    #[value(name = "0")]
    R0,
    Inf,
    Lambda,
}

struct UsageError(String);

fn parse_field(s: &str) -> Result<Field, UsageError> {
    if s == "q" || s == "rational" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p.parse().map_err(|_| UsageError(format!("bad prime `{p}`")))?;
        return Field::prime(p).map_err(|e| UsageError(e.to_string()));
    }
    Err(UsageError(format!("unknown field `{s}` (expected fp:<p> or q)")))
}

fn parse_lambdas(field: &Field, raw: &[String]) -> Result<Vec<Elem>, UsageError> {
    raw.iter()
        .map(|s| field.parse(s).map_err(|e| UsageError(e.to_string())))
        .collect()
}

fn emit(text: &str, out: &Option<String>) -> Result<(), UsageError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| UsageError(e.to_string())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn build_quiver(g: usize, h: usize) -> Result<CyclicQuiver, UsageError> {
    CyclicQuiver::new(g, h).map_err(|e| UsageError(e.to_string()))
}

fn load_rep(path: &str) -> Result<cyclerep::rep::Representation, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read `{path}`: {e}")))?;
    io::rep_from_str(&text).map_err(|e| UsageError(e.to_string()))
}

fn cmd_build(kind: BuildKind) -> Result<u8, UsageError> {
    match kind {
        BuildKind::Walk { g, h, p, q, field, out } => {
            let k = build_quiver(g, h)?;
            let f = parse_field(&field)?;
            let w = Walk::new(p, q).map_err(|e| UsageError(e.to_string()))?;
            let rep = walk_rep(&w, &k, f);
            emit(&io::rep_to_string(&rep), &out)?;
            Ok(EXIT_OK)
        }
        BuildKind::Band { g, h, lambda, d, field, out } => {
            let k = build_quiver(g, h)?;
            let f = parse_field(&field)?;
            if d == 0 {
                return Err(UsageError("band size d must be positive".into()));
            }
            let lam = f.parse(&lambda).map_err(|e| UsageError(e.to_string()))?;
            let rep = band_rep(&BandSpec { lambda: lam, d }, &k, f);
            emit(&io::rep_to_string(&rep), &out)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_hom(v_file: &str, w_file: &str, basis: bool) -> Result<u8, UsageError> {
    let v = Arc::new(load_rep(v_file)?);
    let w = Arc::new(load_rep(w_file)?);
    if v.quiver != w.quiver || v.field != w.field {
        return Err(UsageError("representations live over different quivers or fields".into()));
    }
    let b = hom_basis(&v, &w).map_err(|e| UsageError(e.to_string()))?;
    println!("{}", b.len());
    if basis {
        for m in &b {
            println!("{}", serde_json::to_string(&io::morphism_to_json(m)).unwrap());
        }
    }
    Ok(EXIT_OK)
}

fn report_lines(rep: &RelationReport) -> String {
    let status = if rep.ok() { "ok" } else { "FAILED" };
    format!("relation {:<14} {:>6} instances  {}", rep.id, rep.instances, status)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, UsageError> {
    let k = build_quiver(args.g, args.h)?;
    let field = parse_field(&args.field)?;
    let lambdas = parse_lambdas(&field, &args.lambdas)?;
    let mode = if args.sequential { ExecMode::Sequential } else { ExecMode::default() };
    let ms: Vec<usize> = match args.m {
        Some(m) => vec![m],
        None => vec![1, 0],
    };
    let mut all_ok = true;
    let mut json_runs = Vec::new();
    for m in ms {
        println!("verifying g={} h={} m={} field={} lambdas={:?}", args.g, args.h, m, field,
            lambdas.iter().map(|l| field.render(l)).collect::<Vec<_>>());
        let outcome = verify_configuration(&k, m, &lambdas, field, mode)
            .map_err(|e| UsageError(e.to_string()))?;
        for rep in &outcome.reports {
            println!("{}", report_lines(rep));
            for f in &rep.failures {
                println!("  mismatch at {}", f.instance);
                println!("    left:  {}", f.left);
                println!("    right: {}", f.right);
            }
        }
        for note in &outcome.notes {
            println!("note: {note}");
        }
        all_ok &= outcome.ok();
        json_runs.push(json!({
            "m": m,
            "ok": outcome.ok(),
            "relations": outcome.reports.iter().map(|r| json!({
                "id": r.id,
                "instances": r.instances,
                "failures": r.failures.iter().map(|f| json!({
                    "instance": f.instance,
                    "left": f.left,
                    "right": f.right,
                })).collect::<Vec<_>>(),
                "notes": r.notes,
            })).collect::<Vec<_>>(),
            "notes": outcome.notes,
        }));
    }
    if let Some(path) = &args.json {
        let doc = json!({
            "g": args.g,
            "h": args.h,
            "field": io::field_to_json(&field),
            "lambdas": lambdas.iter().map(|l| field.render(l)).collect::<Vec<_>>(),
            "runs": json_runs,
        });
        std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap())
            .map_err(|e| UsageError(e.to_string()))?;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_export(what: ExportWhat) -> Result<u8, UsageError> {
    match what {
        ExportWhat::Component {
            g,
            h,
            which,
            lambda,
            truncation,
            field,
            format,
            with_objects,
            out,
        } => {
            let k = build_quiver(g, h)?;
            let f = parse_field(&field)?;
            let comp = match which {
                ComponentArg::P => ComponentId::P,
                ComponentArg::I => ComponentId::I,
                ComponentArg::R0 => ComponentId::R0,
                ComponentArg::Inf => ComponentId::Rinf,
                ComponentArg::Lambda => {
                    let raw = lambda
                        .ok_or_else(|| UsageError("--lambda required for the lambda component".into()))?;
                    let lam = f.parse(&raw).map_err(|e| UsageError(e.to_string()))?;
                    ComponentId::Rlambda(lam)
                }
            };
            let cq = build_component(&comp, truncation, &k).map_err(|e| UsageError(e.to_string()))?;
            let text = match format {
                Format::Dot => export::component_dot(&cq, &f),
                Format::Json => serde_json::to_string_pretty(&export::to_json(
                    &cq.data,
                    &k,
                    &f,
                    with_objects,
                ))
                .unwrap(),
            };
            emit(&text, &out)?;
            Ok(EXIT_OK)
        }
        ExportWhat::Assembled { g, h, m, lambdas, field, format, with_objects, out } => {
            let k = build_quiver(g, h)?;
            let f = parse_field(&field)?;
            let lams = parse_lambdas(&f, &lambdas)?;
            let aq = assemble_qm(m, &lams, &k, f).map_err(|e| UsageError(e.to_string()))?;
            let text = match format {
                Format::Dot => export::assembled_dot(&aq),
                Format::Json => serde_json::to_string_pretty(&export::to_json(
                    &aq.data,
                    &k,
                    &f,
                    with_objects,
                ))
                .unwrap(),
            };
            emit(&text, &out)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_decompose(v_file: &str, lambdas: Option<Vec<String>>) -> Result<u8, UsageError> {
    let v = Arc::new(load_rep(v_file)?);
    let k = v.quiver;
    let field = v.field;
    let cands = match lambdas {
        Some(raw) => Some(parse_lambdas(&field, &raw)?),
        None => None,
    };
    match decompose(&v, cands.as_deref()) {
        Ok(parts) => {
            for (obj, mult) in &parts {
                let loc = locate(obj, &k, field)
                    .map(|(c, vtx, m)| {
                        format!("component {}, vertex {}, minimal m = {}", c, vtx.render(&field), m)
                    })
                    .unwrap_or_else(|e| format!("locate failed: {e}"));
                println!("{} ×{}  [{}]", obj.render(&field), mult, loc);
            }
            if parts.is_empty() {
                println!("zero representation");
            }
            Ok(EXIT_OK)
        }
        Err(cyclerep::rep::RepError::NoCatalogSummand) => {
            eprintln!("no catalog summand found: a band parameter may lie outside the base field or candidate list");
            Ok(EXIT_INCOMPLETE)
        }
        Err(e) => Err(UsageError(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { kind } => cmd_build(kind),
        Command::Hom { v_file, w_file, basis } => cmd_hom(&v_file, &w_file, basis),
        Command::Verify(args) => cmd_verify(args),
        Command::Export { what } => cmd_export(what),
        Command::Decompose { v_file, lambdas } => cmd_decompose(&v_file, lambdas),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
