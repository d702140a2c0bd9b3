//! Command-line front end: functionals, inequality checking, lattice
//! predicates, construction families, shape search, batch verification,
//! and SVG figures.
//!
//! Exit codes: 0 success, 1 a theorem/cited violation or a conjecture
//! counterexample candidate was found, 2 input or format error.

use clap::{Parser, Subcommand, ValueEnum};
use latfree::constructions::{
    equilateral_extremizer, kn_family, random_lattice_free, rhombus_square, triangle_lr,
    ConstructionError, LrTriangleParams,
};
use latfree::figure::{emit_figure, emit_lemma_figure, FigureOptions};
use latfree::functionals::report;
use latfree::geom::ConvexPolygon;
use latfree::inequalities::{evaluate_all, violations, InequalityResult, Status};
use latfree::lattice::{is_lattice_free, is_unconditional, DEFAULT_MARGIN};
use latfree::polyio::{parse_polygon, to_json, PolygonIoError};
use latfree::search::{
    anneal, grid_search_lr, verify_batch, Family, Objective, SearchConfig, SearchError,
};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Polygon(#[from] PolygonIoError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("cannot read stdin: {0}")]
    Stdin(std::io::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        source: std::io::Error,
    },
    #[error("LATFREE_SEED must be an unsigned integer, got {0:?}")]
    BadSeedEnv(String),
    #[error("--grid applies only to the lr family")]
    GridNeedsLr,
}

#[derive(Parser)]
#[command(
    name = "latfree",
    about = "Planar convex geometry toolkit for lattice-free bodies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    #[value(name = "pD", alias = "pd")]
    PD,
    #[value(name = "pR", alias = "pr")]
    PR,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Lr,
    Free,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    /// The extremal equilateral triangle with edge length 1 + 2/sqrt(3).
    Extremizer,
    /// The wide strip [-n, n] x [0, 1].
    Kn,
    /// The normalized triangle with given base overhangs.
    Lr,
    /// A seeded random lattice-free body.
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the six functionals of a polygon, with witnesses.
    Functionals {
        /// Polygon file; "-" reads stdin.
        #[arg(long, default_value = "-")]
        file: String,
    },
    /// Evaluate inequality registry entries on a polygon.
    Check {
        #[arg(long, default_value = "-")]
        file: String,
        /// "all" or a comma-separated list of registry ids.
        #[arg(long, default_value = "all")]
        ineq: String,
        /// Emit the raw result list as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Lattice-freeness and unconditionality of a polygon.
    Lattice {
        #[arg(long, default_value = "-")]
        file: String,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
    },
    /// Emit a member of a construction family as polygon JSON.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        /// Strip half-width (kind = kn).
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Base overhangs (kind = lr).
        #[arg(long, default_value_t = 1.0 / 1.7320508075688772)]
        left: f64,
        #[arg(long, default_value_t = 1.0 / 1.7320508075688772)]
        right: f64,
        /// Generator seed (kind = random).
        #[arg(long)]
        seed: Option<u64>,
        /// Generator point count (kind = random).
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize an objective over lattice-free shapes.
    Search {
        #[arg(long, value_enum, default_value = "pR")]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value = "free")]
        family: FamilyArg,
        /// Generator point count for the free family.
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Overrides LATFREE_SEED and the built-in default.
        #[arg(long)]
        seed: Option<u64>,
        /// Run a dense grid scan of this resolution instead of annealing
        /// (lr family only).
        #[arg(long)]
        grid: Option<usize>,
        /// Where counterexample candidates are persisted.
        #[arg(long, default_value = "latfree-findings.json")]
        findings: PathBuf,
    },
    /// Evaluate the registry on a batch of seeded random lattice-free
    /// bodies.
    Verify {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Findings file (always written: empty list when clean).
        #[arg(long)]
        findings: Option<PathBuf>,
    },
    /// Render a polygon as a deterministic SVG.
    Figure {
        #[arg(long, default_value = "-")]
        file: String,
        /// Draw lattice points of the padded bounding box.
        #[arg(long)]
        lattice: bool,
        /// Draw the circumcircle and inscribed circle.
        #[arg(long)]
        circles: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the supporting-line rhombus against the circumscribed
    /// square, with labeled segments.
    LemmaDemo {
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        slope: f64,
        #[arg(long, default_value_t = 1.0)]
        circumradius: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_polygon_arg(file: &str) -> Result<ConvexPolygon, CliError> {
    if file == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(CliError::Stdin)?;
        Ok(parse_polygon(&text)?)
    } else {
        Ok(latfree::polyio::read_polygon(Path::new(file))?)
    }
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var("LATFREE_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| CliError::BadSeedEnv(text)),
        Err(_) => Ok(None),
    }
}

fn resolve_seed(flag: Option<u64>, default: u64) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    Ok(env_seed()?.unwrap_or(default))
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.9}"),
        None => "-".to_string(),
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Theorem => "theorem",
        Status::Cited => "cited",
        Status::Conjecture => "conjecture",
    }
}

fn print_check_table(results: &[InequalityResult]) {
    println!(
        "{:<12} {:<11} {:<4} {:>15} {:>15} {:>15} {:<5}",
        "id", "status", "appl", "lhs", "rhs", "slack", "holds"
    );
    for r in results {
        println!(
            "{:<12} {:<11} {:<4} {:>15} {:>15} {:>15} {:<5}",
            r.id,
            status_name(r.status),
            if r.applicable { "yes" } else { "no" },
            fmt_opt(r.lhs),
            fmt_opt(r.rhs),
            fmt_opt(r.slack),
            yes_no(r.holds),
        );
    }
}

/// Exit code from a set of evaluated entries: 1 when an applicable entry
/// failed (conjecture failures are counterexample candidates).
fn violation_exit(results: &[InequalityResult]) -> ExitCode {
    let all = violations(results, true);
    if all.is_empty() {
        return ExitCode::SUCCESS;
    }
    for v in &all {
        if v.counterexample_candidate {
            eprintln!(
                "counterexample candidate: {} violated with slack {:.3e}",
                v.id, v.slack
            );
        } else {
            eprintln!("violation: {} failed with slack {:.3e}", v.id, v.slack);
        }
    }
    ExitCode::from(1)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Functionals { file } => {
            let poly = read_polygon_arg(&file)?;
            let rep = report(&poly);
            println!(
                "{}",
                serde_json::to_string_pretty(&rep).expect("report serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file, ineq, json } => {
            let poly = read_polygon_arg(&file)?;
            let mut results = evaluate_all(&poly);
            if ineq != "all" {
                let wanted: Vec<&str> = ineq.split(',').map(str::trim).collect();
                for id in &wanted {
                    if latfree::inequalities::entry(id).is_err() {
                        eprintln!("error: unknown inequality id: {id}");
                        return Ok(ExitCode::from(2));
                    }
                }
                results.retain(|r| wanted.contains(&r.id.as_str()));
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&results).expect("results serialize")
                );
            } else {
                print_check_table(&results);
            }
            Ok(violation_exit(&results))
        }
        Command::Lattice { file, margin } => {
            let poly = read_polygon_arg(&file)?;
            let status = is_lattice_free(&poly, margin);
            let certificate = is_unconditional(&poly, 1e-9);
            let combined = serde_json::json!({
                "lattice": status,
                "unconditional": certificate,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&combined).expect("status serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Family {
            kind,
            n,
            left,
            right,
            seed,
            vertices,
            out,
        } => {
            let poly = match kind {
                FamilyKind::Extremizer => equilateral_extremizer(),
                FamilyKind::Kn => kn_family(n),
                FamilyKind::Lr => triangle_lr(&LrTriangleParams::new(left, right)?),
                FamilyKind::Random => {
                    let seed = resolve_seed(seed, 1)?;
                    random_lattice_free(seed, vertices)
                }
            };
            write_output(out.as_ref(), &(to_json(&poly) + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            objective,
            family,
            vertices,
            iterations,
            restarts,
            seed,
            grid,
            findings,
        } => {
            let objective = match objective {
                ObjectiveArg::PD => Objective::PD,
                ObjectiveArg::PR => Objective::PR,
            };
            if let Some(resolution) = grid {
                if !matches!(family, FamilyArg::Lr) {
                    return Err(CliError::GridNeedsLr);
                }
                let (max, argmax) = grid_search_lr(resolution);
                let out = serde_json::json!({
                    "grid_resolution": resolution,
                    "max": max,
                    "argmax": argmax,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("grid result serializes")
                );
                return Ok(ExitCode::SUCCESS);
            }
            let family = match family {
                FamilyArg::Lr => Family::LrTriangles,
                FamilyArg::Free => Family::FreePolygons { vertices },
            };
            let mut config = SearchConfig::new(objective, family);
            if let Some(iterations) = iterations {
                config.iterations = iterations;
            }
            if let Some(restarts) = restarts {
                config.restarts = restarts;
            }
            config.seed = resolve_seed(seed, config.seed)?;
            let result = anneal(&config)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&result).expect("search result serializes")
            );
            if result.counterexample {
                let payload = serde_json::json!([{
                    "objective": result.objective,
                    "value": result.best_value,
                    "bound": result.conjectured_bound,
                    "polygon": result.best_polygon,
                }]);
                std::fs::write(
                    &findings,
                    serde_json::to_string_pretty(&payload).expect("findings serialize"),
                )
                .map_err(|source| CliError::Output {
                    path: findings.display().to_string(),
                    source,
                })?;
                eprintln!(
                    "counterexample candidate written to {}",
                    findings.display()
                );
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            count,
            seed,
            findings,
        } => {
            let seed = resolve_seed(seed, 7)?;
            let batch = verify_batch(count, seed);
            println!(
                "{}",
                serde_json::to_string_pretty(&batch).expect("batch report serializes")
            );
            if let Some(path) = &findings {
                std::fs::write(
                    path,
                    serde_json::to_string_pretty(&batch.conjecture_findings)
                        .expect("findings serialize"),
                )
                .map_err(|source| CliError::Output {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            if batch.violations.is_empty() && batch.conjecture_findings.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} violations, {} counterexample candidates",
                    batch.violations.len(),
                    batch.conjecture_findings.len()
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Figure {
            file,
            lattice,
            circles,
            out,
        } => {
            let poly = read_polygon_arg(&file)?;
            let svg = emit_figure(&poly, &FigureOptions { lattice, circles });
            write_output(out.as_ref(), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LemmaDemo {
            slope,
            circumradius,
            out,
        } => {
            let instance = rhombus_square(slope, circumradius)?;
            let svg = emit_lemma_figure(&instance);
            write_output(out.as_ref(), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
