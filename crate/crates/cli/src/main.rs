//! Command-line surface: solve, sweep, gen, check, oracle, render.
//!
//! Exit codes: 0 success, 2 invalid input, 3 infeasible instance,
//! 4 verification mismatch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use mixlabel_cli::format::{self, InstanceFile, LabelingFile};
use mixlabel_cli::svg;
use mixlabel::routing::route_outer;
use mixlabel::solver_general::GeneralOptions;
use mixlabel::validity::check_validity;
use mixlabel::{oracle, solver_general, solver_left, sweep, Direction, Instance, Scalar};

#[derive(Parser)]
#[command(
    name = "mixlabel",
    about = "Mixed internal/external point labeling with parallel leaders"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SlopeArgs {
    /// Leader slope in radians, clockwise from the negative x-axis.
    #[arg(long)]
    theta: Option<f64>,
    /// Exact leader direction "dx,dy" (decimal or rational components).
    #[arg(long, value_name = "DX,DY", conflicts_with = "theta")]
    direction: Option<String>,
}

impl SlopeArgs {
    fn dir(&self) -> anyhow::Result<Option<Direction>> {
        match &self.direction {
            None => Ok(None),
            Some(s) => {
                let (dx, dy) = s
                    .split_once(',')
                    .ok_or_else(|| anyhow!("--direction expects DX,DY"))?;
                Ok(Some(Direction::new(Scalar::parse(dx)?, Scalar::parse(dy)?)?))
            }
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Maximize the number of internal labels for one leader slope.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Labeling file destination (stdout when absent).
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        slope: SlopeArgs,
        /// auto | left | general. Auto picks the left solver for (-1,0).
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Render the result as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Certify against the exhaustive oracle (refused above --cap points).
        #[arg(long)]
        oracle_check: bool,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
        /// Cap influence-region subsets at two points (verified optimization).
        #[arg(long)]
        pruning: bool,
    },
    /// Solve once per critical-slope interval and report the best direction.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        /// CSV report destination (stdout when absent).
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        pruning: bool,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Minimum pairwise distance (exact decimal).
        #[arg(long, default_value = "0.4")]
        dmin: String,
        /// Side length of the sampling box (exact decimal).
        #[arg(long, value_name = "SIDE", default_value = "4")]
        r#box: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        slope: SlopeArgs,
    },
    /// Validate a labeling file against an instance.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Exhaustive optimum by enumerating all partitions.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        slope: SlopeArgs,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Render an instance with a labeling as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_out(path: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            std::fs::write(p, content).with_context(|| format!("cannot write {}", p.display()))
        }
    }
}

fn load_instance(path: &Path, slope: &SlopeArgs) -> anyhow::Result<Instance> {
    let file = InstanceFile::parse(&read(path)?)?;
    file.to_instance(slope.theta, slope.dir()?.as_ref())
}

/// Verification failures exit with a dedicated code.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Solve {
            input,
            output,
            slope,
            mode,
            svg,
            oracle_check,
            cap,
            pruning,
        } => {
            let instance = load_instance(&input, &slope)?;
            let leftward = instance.dir == Direction::from_ints(-1, 0);
            let mode = match mode.as_str() {
                "auto" => {
                    if leftward {
                        "left"
                    } else {
                        "general"
                    }
                }
                "left" if !leftward => {
                    bail!("--mode left requires leader direction (-1,0)")
                }
                m @ ("left" | "general") => m,
                other => bail!("unknown mode `{other}`"),
            };
            let solution = match mode {
                "left" => solver_left::solve(&instance)?,
                _ => solver_general::solve_with(
                    &instance,
                    &GeneralOptions { pruning, reference_psi: false },
                )?,
            };
            if oracle_check {
                let want = oracle::brute_force(&instance, cap)?;
                if want.optimum != solution.internal_count {
                    return Err(anyhow::Error::new(Mismatch(format!(
                        "oracle mismatch: solver found {}, exhaustive optimum is {}",
                        solution.internal_count, want.optimum
                    ))));
                }
            }
            let routing = route_outer(&instance, &solution.labeling)?;
            let file = LabelingFile::new(&instance, &solution.labeling, &routing.externals, mode);
            eprintln!(
                "{} of {} labels internal (mode {mode}, delta {})",
                solution.internal_count,
                instance.n(),
                solution.stats.delta
            );
            write_out(output.as_deref(), &file.render())?;
            if let Some(path) = svg {
                let image = svg::render(&instance, &solution.labeling, &routing.externals);
                std::fs::write(&path, image)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(())
        }
        Cmd::Sweep { input, report, pruning } => {
            let slope = SlopeArgs { theta: None, direction: None };
            let file = InstanceFile::parse(&read(&input)?)?;
            // the sweep optimizes over slopes; any placeholder direction works
            let instance = file
                .to_instance(None, None)
                .or_else(|_| file.to_instance(Some(0.0), None))?;
            let _ = slope;
            let result = sweep::sweep_solve_with(
                &instance,
                &GeneralOptions { pruning, reference_psi: false },
            )?;
            let mut csv = String::from(
                "interval,lo_dx,lo_dy,hi_dx,hi_dy,rep_dx,rep_dy,rep_theta,optimum,is_argmax\n",
            );
            for (k, iv) in result.intervals.iter().enumerate() {
                writeln!(
                    csv,
                    "{k},{},{},{},{},{},{},{:.9},{},{}",
                    iv.lo.dx(),
                    iv.lo.dy(),
                    iv.hi.dx(),
                    iv.hi.dy(),
                    iv.representative.dx(),
                    iv.representative.dy(),
                    iv.representative.theta(),
                    iv.value,
                    k == result.best
                )
                .unwrap();
            }
            let best = result.best_interval();
            eprintln!(
                "best: {} internal labels at direction ({}, {}) (theta ~ {:.6})",
                best.value,
                best.representative.dx(),
                best.representative.dy(),
                best.representative.theta()
            );
            write_out(report.as_deref(), &csv)
        }
        Cmd::Gen { n, seed, dmin, r#box, output, slope } => {
            let dmin = Scalar::parse(&dmin)?;
            let side = Scalar::parse(&r#box)?;
            let points = mixlabel::gen::random_points(n, seed, &dmin, &side)?;
            let mut file = InstanceFile {
                points: points
                    .iter()
                    .map(|p| {
                        [
                            format::ExactNum::from_scalar(&p.x),
                            format::ExactNum::from_scalar(&p.y),
                        ]
                    })
                    .collect(),
                label: None,
                theta: slope.theta,
                direction: None,
                map: None,
                obstacles: None,
            };
            if let Some(d) = slope.dir()? {
                file.direction = Some([
                    format::ExactNum::from_scalar(d.dx()),
                    format::ExactNum::from_scalar(d.dy()),
                ]);
            }
            write_out(output.as_deref(), &file.render())
        }
        Cmd::Check { input, labeling } => {
            let instance =
                load_instance(&input, &SlopeArgs { theta: None, direction: None })
                    .or_else(|_| {
                        // the labeling file pins the direction when the
                        // instance file does not
                        let lab = LabelingFile::parse(&read(&labeling)?)?;
                        let file = InstanceFile::parse(&read(&input)?)?;
                        let dir = Direction::new(
                            lab.direction[0].to_scalar()?,
                            lab.direction[1].to_scalar()?,
                        )?;
                        file.to_instance(None, Some(&dir))
                    })?;
            let lab_file = LabelingFile::parse(&read(&labeling)?)?;
            let dir = Direction::new(
                lab_file.direction[0].to_scalar()?,
                lab_file.direction[1].to_scalar()?,
            )?;
            let instance = Instance { dir, ..instance };
            let labeling = lab_file.to_labeling(instance.n())?;
            if let Some(v) = check_validity(&instance, &labeling) {
                return Err(anyhow::Error::new(Mismatch(format!("invalid labeling: {v}"))));
            }
            let rects = lab_file.external_rects()?;
            for i in 0..rects.len() {
                for j in i + 1..rects.len() {
                    if mixlabel::geometry::rects_overlap(&rects[i], &rects[j]) {
                        return Err(anyhow::Error::new(Mismatch(format!(
                            "external labels of points {} and {} overlap",
                            lab_file.external[i].index, lab_file.external[j].index
                        ))));
                    }
                }
            }
            if !lab_file.valid {
                return Err(anyhow::Error::new(Mismatch(
                    "labeling file attests valid=false but the labeling checks out; \
                     attestation mismatch"
                        .into(),
                )));
            }
            eprintln!(
                "valid labeling: {} internal, {} external",
                labeling.internal.len(),
                labeling.external.len()
            );
            Ok(())
        }
        Cmd::Oracle { input, output, slope, cap } => {
            let instance = load_instance(&input, &slope)?;
            let result = oracle::brute_force(&instance, cap)?;
            let routing = route_outer(&instance, &result.witness)?;
            let file = LabelingFile::new(&instance, &result.witness, &routing.externals, "oracle");
            eprintln!(
                "exhaustive optimum: {} internal labels ({} partitions enumerated)",
                result.optimum, result.enumerated
            );
            write_out(output.as_deref(), &file.render())
        }
        Cmd::Render { input, labeling, svg: svg_path } => {
            let lab_file = LabelingFile::parse(&read(&labeling)?)?;
            let dir = Direction::new(
                lab_file.direction[0].to_scalar()?,
                lab_file.direction[1].to_scalar()?,
            )?;
            let file = InstanceFile::parse(&read(&input)?)?;
            let instance = file.to_instance(None, Some(&dir))?;
            let labeling = lab_file.to_labeling(instance.n())?;
            let routing = route_outer(&instance, &labeling)?;
            let image = svg::render(&instance, &labeling, &routing.externals);
            std::fs::write(&svg_path, image)
                .with_context(|| format!("cannot write {}", svg_path.display()))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.downcast_ref::<Mismatch>().is_some() {
                4
            } else {
                match e.downcast_ref::<mixlabel::Error>() {
                    Some(mixlabel::Error::Infeasible(_)) => 3,
                    _ => 2,
                }
            };
            ExitCode::from(code)
        }
    }
}
