//! Command-line front end: build and transform diagrams, export DOT/JSON,
//! and run the normal-form commands and predictor cross-checks.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input or usage error.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use liediag::diagram::{build_diagram, disjoint_union, product, Diagram};
use liediag::exact::scalar::format_scalar;
use liediag::families::Family;
use liediag::lambda::{ext_power, sym_power, sym_sub};
use liediag::normal_form::{
    enumerate_normal_forms, general_position, is_normal_form, reduce, Coord, Pattern, SpanVariant,
};
use liediag::{io, verify, Result};

#[derive(Parser)]
#[command(
    name = "liediag",
    about = "Diagrams of Lie algebra representations and orbit normal forms, \
             in exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a diagram, apply transforms, and print it as DOT or JSON.
    Diagram(DiagramArgs),
    /// Normal-form commands for strictly triangular diagrams.
    Nf(NfArgs),
    /// Cross-check enumerated normal forms against the closed-form
    /// predictors; exits 1 on any mismatch.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DiagramArgs {
    /// Family selector (heisenberg, sl2, sl2std, upper:N, witt:M:N,
    /// tensor:LAMBDA:MU:M:CAP) or a path to a diagram JSON file.
    source: String,
    /// Use the adjoint module of the family (the default).
    #[arg(long, conflicts_with = "coadjoint")]
    adjoint: bool,
    /// Use the coadjoint module (for a JSON source: dualize it).
    #[arg(long)]
    coadjoint: bool,
    /// Transforms, applied in the order listed here:
    /// dualize the diagram,
    #[arg(long)]
    dual: bool,
    /// take the disjoint union with another source (file or selector),
    #[arg(long, value_name = "SOURCE")]
    sum: Option<String>,
    /// take the reduced Cartesian product with another source,
    #[arg(long, value_name = "SOURCE")]
    product: Option<String>,
    /// take the N-th symmetric power (quotient version),
    #[arg(long, value_name = "N")]
    sym: Option<usize>,
    /// take the N-th exterior power,
    #[arg(long, value_name = "N")]
    ext: Option<usize>,
    /// take the N-th symmetric power (sub version).
    #[arg(long, value_name = "N")]
    symsub: Option<usize>,
    /// Delete power-construction edges whose multiplicity is divisible by
    /// this prime (positive-characteristic behavior).
    #[arg(long, value_name = "P")]
    char_p: Option<u64>,
    /// Output format.
    #[arg(long, value_name = "FORMAT", default_value = "dot")]
    out: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, clap::ValueEnum)]
enum OutputFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct NfArgs {
    #[command(subcommand)]
    action: NfAction,
}

#[derive(Args)]
struct NfCommon {
    /// Family selector or diagram JSON path.
    source: String,
    /// Use the coadjoint module instead of the adjoint one.
    #[arg(long)]
    coadjoint: bool,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum NfAction {
    /// Check whether a vector is the lowest point of its orbit.
    Check {
        #[command(flatten)]
        common: NfCommon,
        /// Coordinate vector: JSON array of rational strings, or @FILE.
        #[arg(long)]
        vector: String,
    },
    /// Move a vector to its orbit's normal form; prints the transcript.
    Reduce {
        #[command(flatten)]
        common: NfCommon,
        #[arg(long)]
        vector: String,
    },
    /// Compute the normal form in a general position.
    Generic {
        #[command(flatten)]
        common: NfCommon,
        /// Branch on parameter-dependent span decisions instead of
        /// attaching genericity conditions.
        #[arg(long)]
        stratify: bool,
    },
    /// Enumerate all normal-form patterns by descent.
    Enumerate {
        #[command(flatten)]
        common: NfCommon,
        #[arg(long)]
        stratify: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    target: VerifyTarget,
    /// Run the sweep on one thread even when built with rayon.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Truncated Witt coadjoint modules against the degree-window predictor.
    Witt {
        /// Range of truncation offsets, e.g. "0..2" or a single value.
        #[arg(long, default_value = "0..2")]
        m: String,
        /// Largest top degree n (cases run for m < n <= n-max).
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Tensor-density modules over a (lambda, mu) grid.
    Tensor {
        /// Grid name; only "default" is built in.
        #[arg(long, default_value = "default")]
        grid: String,
    },
    /// Coadjoint module of strictly upper triangular n x n matrices.
    Upper {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn load_diagram(source: &str, dual: bool) -> Result<Diagram> {
    if Path::new(source).exists() || source.ends_with(".json") {
        let d = io::import_diagram(&fs::read_to_string(source)?)?;
        Ok(if dual { d.dual() } else { d })
    } else {
        let family = Family::parse(source)?;
        Ok(build_diagram(&family.representation(dual)?, None))
    }
}

fn read_vector(spec: &str, expected_len: usize) -> Result<Vec<liediag::exact::Scalar>> {
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)?,
        None => spec.to_string(),
    };
    let v = io::parse_vector(&text)?;
    if v.len() != expected_len {
        return Err(liediag::Error::DimensionMismatch {
            expected: expected_len,
            got: v.len(),
        });
    }
    Ok(v)
}

fn cmd_diagram(args: &DiagramArgs) -> Result<()> {
    let mut d = load_diagram(&args.source, args.coadjoint)?;
    if args.dual {
        d = d.dual();
    }
    if let Some(other) = &args.sum {
        d = disjoint_union(&d, &load_diagram(other, false)?)?;
    }
    if let Some(other) = &args.product {
        d = product(&d, &load_diagram(other, false)?)?;
    }
    if let Some(n) = args.sym {
        d = sym_power(&d, n, args.char_p)?;
    }
    if let Some(n) = args.ext {
        d = ext_power(&d, n, args.char_p)?;
    }
    if let Some(n) = args.symsub {
        d = sym_sub(&d, n, args.char_p)?;
    }
    match args.out {
        OutputFormat::Dot => print!("{}", d.to_dot()),
        OutputFormat::Json => print!("{}", io::export_diagram(&d)),
    }
    Ok(())
}

/// Renders a pattern the way the classification tables do: the coordinate
/// layout, then the memorized forms and any parameter conditions.
fn print_pattern(index: usize, p: &Pattern, d: &Diagram) {
    let coords: Vec<String> = p
        .coords
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Coord::Zero => format!("x_{} = 0", i + 1),
            Coord::Free(param) => format!("x_{} = {}", i + 1, param.name()),
        })
        .collect();
    println!("pattern {index}: {}", coords.join(", "));
    let duals = d.algebra().dual_labels();
    for (pos, form) in &p.memorized {
        println!("  y_{} = {}", pos + 1, form.display_with(duals));
    }
    for c in &p.conditions {
        println!("  condition: {c} != 0");
    }
    for c in &p.constraints {
        println!("  constraint: {c} = 0");
    }
}

fn cmd_nf(args: &NfArgs) -> Result<()> {
    match &args.action {
        NfAction::Check { common, vector } => {
            let d = load_diagram(&common.source, common.coadjoint)?;
            let x = read_vector(vector, d.vertex_count())?;
            let check = is_normal_form(&d, &x, SpanVariant::default())?;
            if common.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "normal": check.normal,
                        "failing": check.failing,
                    })
                );
            } else {
                match check.failing {
                    None => println!("normal: true"),
                    Some(k) => println!("normal: false (first removable coordinate x_{})", k + 1),
                }
            }
            Ok(())
        }
        NfAction::Reduce { common, vector } => {
            let d = load_diagram(&common.source, common.coadjoint)?;
            let x = read_vector(vector, d.vertex_count())?;
            let red = reduce(&d, &x)?;
            if common.json {
                let steps: Vec<serde_json::Value> = red
                    .steps
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "l": s.l.iter().map(format_scalar).collect::<Vec<_>>(),
                            "t": format_scalar(&s.t),
                            "cleared": s.cleared,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "normal_form": red.normal.iter().map(format_scalar).collect::<Vec<_>>(),
                        "steps": steps,
                    })
                );
            } else {
                println!("normal form: {}", io::vector_to_json(&red.normal));
                for (i, s) in red.steps.iter().enumerate() {
                    println!(
                        "step {}: exp T({} * l) with l = {}, clears x_{}",
                        i + 1,
                        format_scalar(&s.t),
                        io::vector_to_json(&s.l),
                        s.cleared + 1
                    );
                }
            }
            Ok(())
        }
        NfAction::Generic { common, stratify } => {
            let d = load_diagram(&common.source, common.coadjoint)?;
            let patterns = general_position(&d, *stratify)?;
            print_patterns(&patterns, &d, common.json)
        }
        NfAction::Enumerate { common, stratify } => {
            let d = load_diagram(&common.source, common.coadjoint)?;
            let patterns = enumerate_normal_forms(&d, *stratify)?;
            print_patterns(&patterns, &d, common.json)
        }
    }
}

fn print_patterns(patterns: &[Pattern], d: &Diagram, json: bool) -> Result<()> {
    if json {
        let list: Vec<io::PatternJson> = patterns.iter().map(io::pattern_to_json).collect();
        println!("{}", serde_json::to_string_pretty(&list)?);
    } else {
        for (i, p) in patterns.iter().enumerate() {
            print_pattern(i + 1, p, d);
        }
        println!("{} patterns", patterns.len());
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || liediag::Error::Parse(format!("expected a range like 0..2, got '{s}'"));
    match s.split_once("..") {
        Some((a, b)) => {
            let lo = a.trim().parse().map_err(|_| bad())?;
            let hi = b.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let parallel = !args.sequential;
    let report = match &args.target {
        VerifyTarget::Witt { m, n_max } => {
            let (m_lo, m_hi) = parse_range(m)?;
            if m_lo != 0 {
                return Err(liediag::Error::InvalidArgument(
                    "the sweep always starts at m = 0".into(),
                ));
            }
            verify::verify_witt(m_hi, *n_max, parallel)?
        }
        VerifyTarget::Tensor { grid } => {
            if grid != "default" {
                return Err(liediag::Error::InvalidArgument(format!(
                    "unknown grid '{grid}'"
                )));
            }
            let (lambdas, mus, m_max, n_max) = verify::default_tensor_grid();
            verify::verify_tensor(&lambdas, &mus, m_max, n_max, parallel)?
        }
        VerifyTarget::Upper { n } => verify::verify_upper(*n)?,
    };
    println!("{report}");
    Ok(report.all_ok())
}

fn main() -> ExitCode {
    verify::init_thread_pool();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Diagram(args) => cmd_diagram(args).map(|()| true),
        Command::Nf(args) => cmd_nf(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
