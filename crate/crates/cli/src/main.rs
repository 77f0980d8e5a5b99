//! `qinfo`: information measures, mutually unbiased bases and scripted
//! experiments from the command line.
//!
//! Exit status: 0 on success, 1 when a scenario check fails, 2 on bad usage
//! or invalid input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qinfo::coding::{build_question_tree, simulate_drawings, SymbolSource};
use qinfo::linalg::x_rotation;
use qinfo::measures::{family_info, quadratic_info_normalized, shannon, MeasureKind, ProbDist};
use qinfo::mub::{cached_mubs, h_total_simulated, h_total_theta, total_information, verify_mutually_unbiased};
use qinfo::scenarios::{self, ScenarioReport};
use qinfo::state::{bloch_state, theta_grid, DensityMatrix};

#[derive(Parser, Debug)]
#[command(name = "qinfo", version, about = "Information measures for quantum experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Decimals printed in text output.
    #[arg(long, env = "QINFO_PRECISION", default_value_t = 4, global = true)]
    precision: usize,
    /// Seed for every random draw.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Tolerance for unbiasedness checks.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tol: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an information measure on a distribution.
    Entropy {
        /// Comma-separated probabilities.
        #[arg(long)]
        dist: String,
        /// shannon, quadratic, tsallis, renyi or hlp.
        #[arg(long, default_value = "shannon")]
        measure: String,
        #[arg(long)]
        alpha: Option<f64>,
        /// Rescale the quadratic measure to log2 n on a pure outcome.
        #[arg(long)]
        normalized: bool,
    },
    /// Build (and optionally check or print) a complete set of mutually unbiased bases.
    Mub {
        #[arg(long)]
        dim: usize,
        /// Check every pair of bases and print the report.
        #[arg(long)]
        verify: bool,
        /// Print the bases as JSON.
        #[arg(long)]
        dump: bool,
    },
    /// Run a scripted experiment against its reference values.
    Scenario {
        #[command(subcommand)]
        which: ScenarioCommand,
    },
    /// Tabulate total information of the qubit cos(t/2)|z+> + sin(t/2)|z-> over t in [0, pi].
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo question counting.
    Simulate {
        #[command(subcommand)]
        which: SimulateCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ScenarioCommand {
    /// Polarizer cascade on unpolarized light.
    Filters,
    /// Tilted and x spin measurements in both orders.
    SpinOrder {
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        alpha: f64,
    },
    /// Colour and composition of classical balls.
    Balls,
    /// Unitary invariance of total information.
    Invariance {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Entropy and total information along a unitary orbit of diag(3/4, 1/4).
    Conservation {
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Rotation angle about x per step.
        #[arg(long, default_value_t = 0.3)]
        angle: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SweepKind {
    /// Shannon total; its column comes from simulated measurements, checked against the closed form.
    HTotal,
    /// Quadratic total; its column comes from simulated measurements, checked against Tr rho^2 - 1/n.
    ITotal,
}

#[derive(Subcommand, Debug)]
enum SimulateCommand {
    /// Draw from an urn and count the questions needed to identify each draw.
    Urn {
        /// Comma-separated colour proportions.
        #[arg(long)]
        probs: String,
        #[arg(long)]
        n: usize,
        /// Symbols identified per question tree.
        #[arg(long, default_value_t = 1)]
        block: usize,
    },
}

enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A check did not hold; exit 1.
    Check,
}

impl From<qinfo::Error> for Failure {
    fn from(e: qinfo::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let g = cli.global;
    match cli.command {
        Command::Entropy {
            dist,
            measure,
            alpha,
            normalized,
        } => entropy(&g, &dist, &measure, alpha, normalized),
        Command::Mub { dim, verify, dump } => mub(&g, dim, verify, dump),
        Command::Scenario { which } => scenario(&g, which),
        Command::Sweep { kind, steps, out } => sweep(&g, kind, steps, out),
        Command::Simulate {
            which: SimulateCommand::Urn { probs, n, block },
        } => urn(&g, &probs, n, block),
    }
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct EntropyOutput {
    measure: &'static str,
    alpha: Option<f64>,
    normalized: bool,
    dist: Vec<f64>,
    value: f64,
}

fn entropy(g: &Global, dist: &str, measure: &str, alpha: Option<f64>, normalized: bool) -> Outcome {
    let p = ProbDist::parse(dist)?;
    let kind = MeasureKind::from_name(measure, alpha)?;
    if normalized && kind != MeasureKind::Quadratic {
        return Err(Failure::Usage("--normalized applies to the quadratic measure only".into()));
    }
    if alpha.is_some() && kind.alpha().is_none() {
        return Err(Failure::Usage(format!("measure {} takes no --alpha", kind.name())));
    }
    let value = if normalized {
        quadratic_info_normalized(&p)
    } else {
        family_info(&p, kind)?
    };
    let out = EntropyOutput {
        measure: kind.name(),
        alpha: kind.alpha(),
        normalized,
        dist: p.probs().to_vec(),
        value,
    };
    match g.format {
        Format::Text => println!("{:.*}", g.precision, value),
        Format::Json => print_json(&out)?,
        Format::Csv => {
            println!("measure,alpha,normalized,value");
            println!(
                "{},{},{},{}",
                out.measure,
                out.alpha.map(|a| a.to_string()).unwrap_or_default(),
                normalized,
                value
            );
        }
    }
    Ok(())
}

fn mub(g: &Global, dim: usize, verify: bool, dump: bool) -> Outcome {
    let set = cached_mubs(dim)?;
    if dump {
        print_json(set)?;
    }
    if !verify {
        if !dump {
            match g.format {
                Format::Json => print_json(&serde_json::json!({ "dim": dim, "bases": set.bases().len() }))?,
                Format::Csv => println!("dim,bases\n{dim},{}", set.bases().len()),
                Format::Text => println!("dim {dim}: {} mutually unbiased bases", set.bases().len()),
            }
        }
        return Ok(());
    }
    let report = verify_mutually_unbiased(set.bases(), g.tol);
    // With --dump the bases own stdout; the report goes to stderr.
    let text = match g.format {
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?,
        Format::Csv => format!(
            "dim,bases,ok,worst_deviation\n{},{},{},{:e}",
            report.dim, report.bases, report.ok, report.worst_deviation
        ),
        Format::Text => {
            let mut s = format!(
                "dim {}: {} bases, {}, worst_deviation {:.3e}",
                report.dim,
                report.bases,
                if report.ok { "ok" } else { "NOT unbiased" },
                report.worst_deviation
            );
            if let (Some((a, b)), Some(o)) = (report.offending_pair, report.offending_overlap) {
                s.push_str(&format!(", worst pair ({a}, {b}) overlap {o:.6}"));
            }
            s
        }
    };
    if dump {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    if report.ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn emit_report(g: &Global, report: &ScenarioReport) -> Outcome {
    match g.format {
        Format::Text => print!("{}", report.to_text(g.precision)),
        Format::Json => print_json(report)?,
        Format::Csv => print!("{}", report.to_csv()),
    }
    if report.overall {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn scenario(g: &Global, which: ScenarioCommand) -> Outcome {
    let report = match which {
        ScenarioCommand::Filters => scenarios::run_filter_cascade(),
        ScenarioCommand::SpinOrder { alpha } => {
            if !(alpha > 0.0 && alpha <= std::f64::consts::FRAC_PI_2) {
                return Err(Failure::Usage(format!("--alpha must lie in (0, pi/2], got {alpha}")));
            }
            scenarios::run_spin_order(alpha)
        }
        ScenarioCommand::Balls => scenarios::run_classical_balls(),
        ScenarioCommand::Invariance { dim, trials } => scenarios::run_invariance_sweep(dim, trials, g.seed)?,
        ScenarioCommand::Conservation { steps, angle } => {
            let rho = DensityMatrix::diagonal(&[0.75, 0.25])?;
            scenarios::run_conservation(&rho, &x_rotation(angle), steps)?
        }
    };
    emit_report(g, &report)
}

#[derive(Serialize)]
struct SweepRow {
    theta: f64,
    h_total: f64,
    i_total: f64,
}

fn sweep(g: &Global, kind: SweepKind, steps: usize, out: Option<PathBuf>) -> Outcome {
    if steps < 2 {
        return Err(Failure::Usage(format!("--steps must be >= 2, got {steps}")));
    }
    let mubs = cached_mubs(2)?;
    let mut rows = Vec::with_capacity(steps);
    let mut worst: f64 = 0.0;
    for theta in theta_grid(steps) {
        let rho = bloch_state(theta, 0.0).projector();
        let closed_h = h_total_theta(theta);
        let closed_i = qinfo::mub::i_total_closed_form(&rho);
        let row = match kind {
            SweepKind::HTotal => {
                let h = h_total_simulated(theta)?;
                worst = worst.max((h - closed_h).abs());
                SweepRow {
                    theta,
                    h_total: h,
                    i_total: closed_i,
                }
            }
            SweepKind::ITotal => {
                let i = total_information(&rho, mubs, MeasureKind::Quadratic)?.total;
                worst = worst.max((i - closed_i).abs());
                SweepRow {
                    theta,
                    h_total: closed_h,
                    i_total: i,
                }
            }
        };
        rows.push(row);
    }

    let mut sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    if g.format == Format::Json {
        let text = serde_json::to_string_pretty(&rows).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(sink, "{text}")?;
    } else {
        writeln!(sink, "theta,h_total,i_total")?;
        for r in &rows {
            writeln!(sink, "{:.12},{:.12},{:.12}", r.theta, r.h_total, r.i_total)?;
        }
    }
    sink.flush()?;

    if worst > 1e-10 {
        eprintln!("simulated and closed-form totals differ by {worst:e}");
        return Err(Failure::Check);
    }
    Ok(())
}

fn urn(g: &Global, probs: &str, n: usize, block: usize) -> Outcome {
    let source = SymbolSource::from_probs(ProbDist::parse(probs)?);
    let tree = build_question_tree(&source, block)?;
    let report = simulate_drawings(&source, n, g.seed, &tree)?;
    match g.format {
        Format::Csv => print!("{}", report.to_csv()),
        Format::Json => print_json(&report)?,
        Format::Text => {
            let p = g.precision;
            println!("draws {n}, block {block}, seed {}", g.seed);
            println!("questions asked        {}", report.questions_asked);
            println!("questions per symbol   {:.p$}", report.questions_per_symbol);
            println!("expected per symbol    {:.p$}", tree.questions_per_symbol());
            println!("entropy H              {:.p$}", shannon(source.probs()));
        }
    }
    Ok(())
}
