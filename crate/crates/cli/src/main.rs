use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ktd_core::blocking::{blocking_construction, lower_bound_report};
use ktd_core::combinatorics::vertex_connectivity;
use ktd_core::experiment::{run_campaign, Campaign, ExperimentConfig};
use ktd_core::geometry::{validate_general_position, Point};
use ktd_core::io;
use ktd_core::render::{graph_scene, render_svg, witness_scene};
use ktd_core::rng::{random_point_set, rng_for};
use ktd_core::scenarios::{
    connectivity_witness, shipped_hamiltonicity_counterexample, shipped_matching_counterexample,
    validate_hamiltonicity_counterexample, validate_matching_counterexample, Check, Verdict,
    WitnessKind,
};
use ktd_core::{build_ktd_cones, Error, PointSet};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SIZE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ktd",
    version,
    about = "Order-k triangular-distance Delaunay graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessChoice {
    Connectivity,
    Matching,
    Hamiltonicity,
}

#[derive(Subcommand)]
enum Command {
    /// Random points in the unit square, in general position.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build k-TD of a point file.
    Build {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the graph; for k > 0, edges of (k-1)-TD are drawn faint.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Overlay the triangle of every edge in the drawing.
        #[arg(long)]
        triangles: bool,
    },
    /// Run a seeded experiment campaign.
    Experiment {
        /// Campaign id, e.g. connectivity, matching-lambda, lemma11.
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// `n` or `lo..hi`.
        #[arg(long, value_parser = parse_range)]
        n: Option<(usize, usize)>,
        /// `k` or `lo..hi`.
        #[arg(long, value_parser = parse_range)]
        k: Option<(usize, usize)>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_builder: bool,
    },
    /// Blocking set for a point file.
    Block {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a witness configuration.
    Witness {
        #[arg(value_enum)]
        kind: WitnessChoice,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        size_a: usize,
        #[arg(long, default_value_t = 3)]
        size_b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a point, blocker or witness file.
    Validate { input: PathBuf },
    /// Draw a graph or witness file as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        triangles: bool,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = |_| format!("expected an integer or lo..hi, got {s:?}");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (
                lo.trim().parse().map_err(bad)?,
                hi.trim().parse().map_err(bad)?,
            );
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok((lo, hi))
        }
        None => {
            let v = s.trim().parse().map_err(bad)?;
            Ok((v, v))
        }
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Violation,
}

fn emit(out: Option<&Path>, text: &str) -> ktd_core::Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> ktd_core::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn report_verdict(v: &Verdict) -> Outcome {
    print!("{v}");
    if v.passed() {
        Outcome::Ok
    } else {
        Outcome::Violation
    }
}

fn validate(text: &str) -> ktd_core::Result<Outcome> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("kind").is_some() {
        let spec = io::witness_from_json(text)?;
        let verdict = match spec.kind {
            WitnessKind::MatchingCounterexample => validate_matching_counterexample(&spec)?,
            WitnessKind::HamiltonicityCounterexample => {
                validate_hamiltonicity_counterexample(&spec)?
            }
            WitnessKind::Connectivity => {
                let kappa = vertex_connectivity(build_ktd_cones(&spec.points, spec.k)?.topology());
                Verdict {
                    checks: vec![Check {
                        name: "connectivity",
                        passed: kappa == spec.k + 1,
                        detail: format!("vertex connectivity {kappa}, expected {}", spec.k + 1),
                    }],
                }
            }
        };
        return Ok(report_verdict(&verdict));
    }
    if value.get("blockers").is_some() {
        let (base, blockers, k) = io::blockers_from_json(text)?;
        return match lower_bound_report(&base, &blockers, k) {
            Ok(r) => {
                println!(
                    "blocks: {} points for n = {}, k = {}; lower bound {}",
                    r.blockers, r.n, r.k, r.bound
                );
                Ok(if r.satisfied {
                    Outcome::Ok
                } else {
                    Outcome::Violation
                })
            }
            Err(Error::NotABlocker(i, j)) => {
                println!("not a blocker: edge ({i}, {j}) survives");
                Ok(Outcome::Violation)
            }
            Err(e) => Err(e),
        };
    }
    let raw: Vec<[f64; 2]> = serde_json::from_value(
        value
            .get("points")
            .cloned()
            .ok_or_else(|| Error::Parse("no points, blockers or kind field".into()))?,
    )?;
    let pts: Vec<Point> = raw.iter().map(|&[x, y]| Point::new(x, y)).collect();
    let report = validate_general_position(&pts);
    if report.is_ok() {
        println!("{} points in general position", pts.len());
        Ok(Outcome::Ok)
    } else {
        print!("{report}");
        Ok(Outcome::Violation)
    }
}

fn run(cli: Cli) -> ktd_core::Result<Outcome> {
    match cli.command {
        Command::Generate { seed, n, out } => {
            if n == 0 {
                return Err(Error::TooFewPoints {
                    what: "generate",
                    n,
                    min: 1,
                });
            }
            let points = random_point_set(&mut rng_for(seed, 0), n)?;
            emit(out.as_deref(), &io::point_set_to_json(points.points())?)?;
        }
        Command::Build {
            input,
            k,
            out,
            svg,
            triangles,
        } => {
            let points = io::point_set_from_json(&read(&input)?)?;
            let g = build_ktd_cones(&points, k)?;
            emit(out.as_deref(), &io::graph_to_json(&g)?)?;
            if let Some(path) = svg {
                let previous = if k > 0 {
                    Some(build_ktd_cones(&points, k - 1)?)
                } else {
                    None
                };
                let scene = graph_scene(
                    points.points(),
                    &g.edge_pairs(),
                    previous.as_ref(),
                    triangles,
                )?;
                fs::write(path, render_svg(&scene))?;
            }
        }
        Command::Experiment {
            id,
            seed,
            trials,
            n,
            k,
            format,
            out,
            corrupt_builder,
        } => {
            let campaign: Campaign = id.parse()?;
            let mut cfg = ExperimentConfig::new(seed, trials);
            cfg.n = n;
            cfg.k = k;
            cfg.corrupt_builder = corrupt_builder;
            let report = run_campaign(campaign, &cfg)?;
            let text = match format {
                Format::Csv => report.to_csv(),
                Format::Md => report.to_markdown(),
                Format::Json => report.to_json()?,
            };
            emit(out.as_deref(), &text)?;
            eprintln!(
                "{}: {}/{} trials passed",
                campaign,
                report.passed(),
                report.rows.len()
            );
            if !report.all_passed() {
                return Ok(Outcome::Violation);
            }
        }
        Command::Block { input, k, out } => {
            let points = io::point_set_from_json(&read(&input)?)?;
            let inst = blocking_construction(&points, k)?;
            let report = lower_bound_report(&points, &inst.blockers, k)?;
            emit(out.as_deref(), &io::blockers_to_json(&inst)?)?;
            eprintln!("{} blockers, lower bound {}", report.blockers, report.bound);
        }
        Command::Witness {
            kind,
            k,
            size_a,
            size_b,
            out,
        } => {
            let spec = match kind {
                WitnessChoice::Connectivity => connectivity_witness(k, size_a, size_b)?,
                WitnessChoice::Matching => shipped_matching_counterexample(),
                WitnessChoice::Hamiltonicity => shipped_hamiltonicity_counterexample(),
            };
            emit(out.as_deref(), &io::witness_to_json(&spec)?)?;
        }
        Command::Validate { input } => return validate(&read(&input)?),
        Command::Render {
            input,
            out,
            triangles,
        } => {
            let text = read(&input)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let scene = if value.get("kind").is_some() {
                witness_scene(&io::witness_from_json(&text)?)?
            } else {
                let g = io::graph_from_json(&text)?;
                let pts = g
                    .points()
                    .ok_or_else(|| Error::Parse("graph file has no points to draw".into()))?;
                let pairs: Vec<(usize, usize)> = g.edges.iter().map(|&(i, j, _)| (i, j)).collect();
                // validates general position before drawing
                let pts = PointSet::new(pts)?;
                graph_scene(pts.points(), &pairs, None, triangles)?
            };
            emit(out.as_deref(), &render_svg(&scene))?;
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            match e.root() {
                Error::SizeLimit { .. } => ExitCode::from(EXIT_SIZE),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}
