//! Command-line front end: constant tables, inequality verification from
//! JSON inputs, exact kernel tables, and the Weyl-law demo.
//!
//! Exit codes: 0 when the checked inequality holds (or no check ran),
//! 1 when a verification found a violation, 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use num::ToPrimitive;
use serde_json::json;

use tauber::complexpath::{default_contour, Contour, EvaluationPoint};
use tauber::constants::{thm1_constants, thm2_constants, thm3_constants, Regime};
use tauber::kernels::t_poly;
use tauber::measure::StepMeasure;
use tauber::verify::{
    pleijel_report, run_suite, thm1_report, thm2_report, thm3_report, ReportOptions, SuiteParams,
    VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "tauber",
    version,
    about = "Counting-function inequality toolkit: constants, verification, kernel tables, demo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the explicit constants of one inequality as JSON
    Constants {
        #[command(subcommand)]
        which: ConstantsCmd,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Verify one inequality on concrete inputs or on a randomized suite
    Verify(VerifyArgs),
    /// Emit the exact kernel numerator tables as JSON
    Kernels(KernelsArgs),
    /// Riesz mean vs. main term for the model eigenvalue measure (CSV)
    Demo(DemoArgs),
}

#[derive(Subcommand)]
enum ConstantsCmd {
    /// Constants (c1, c2, c3) of the Riesz-mean remainder bound
    Thm1 {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = RegimeArg::General)]
        regime: RegimeArg,
    },
    /// Coefficients C_m of the generalized-transform bound
    Thm2 {
        #[arg(long)]
        q: u32,
    },
    /// Coefficients C_m and B(q, alpha) of the fractional-order bound
    Thm3 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    General,
    Lt1,
}

impl From<RegimeArg> for Regime {
    fn from(value: RegimeArg) -> Self {
        match value {
            RegimeArg::General => Regime::General,
            RegimeArg::Lt1 => Regime::AlphaLt1,
        }
    }
}

impl RegimeArg {
    fn label(self) -> &'static str {
        match self {
            RegimeArg::General => "general",
            RegimeArg::Lt1 => "lt1",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Pleijel,
    Thm1,
    Thm2,
    Thm3,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// Measure JSON file: {"atoms":[{"lambda":..,"weight":..},..]}
    #[arg(long)]
    measure: Option<PathBuf>,
    /// Contour JSON file: {"vertices":[{"re":..,"im":..},..]}
    #[arg(long, conflicts_with = "default_contour")]
    contour: Option<PathBuf>,
    /// Use the left rectangle through -lambda0 instead of a contour file
    #[arg(long)]
    default_contour: bool,
    /// Evaluation point as RE,IM
    #[arg(long, value_parser = parse_point)]
    zeta0: Option<EvaluationPoint>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, value_enum, default_value_t = RegimeArg::General)]
    regime: RegimeArg,
    /// Run N seeded random instances instead of a single check
    #[arg(long)]
    suite: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the verification tolerance floor
    #[arg(long)]
    tolerance: Option<f64>,
    /// Allow an atom exactly at lambda0
    #[arg(long)]
    allow_atom_at_lambda0: bool,
    /// Use the sharper computed multiplier c3/(2 pi) for the Riesz-mean bound
    #[arg(long)]
    sharp: bool,
    /// Write the JSON output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelsArgs {
    #[arg(long)]
    q: u32,
    /// Single index; all of m = 0..q-2 when omitted
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 1)]
    dimension: u32,
    #[arg(long, default_value_t = 10_000)]
    count: u32,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Comma-separated evaluation points
    #[arg(long, value_delimiter = ',', required = true)]
    lambda0: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_point(s: &str) -> Result<EvaluationPoint, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|e| format!("bad imaginary part: {e}"))?;
    EvaluationPoint::new(re, im).map_err(|e| e.to_string())
}

fn complex_json(z: Complex64) -> serde_json::Value {
    json!({"re": z.re, "im": z.im})
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Constants { which, out } => cmd_constants(which, out.as_deref()),
        Command::Verify(args) => cmd_verify(args),
        Command::Kernels(args) => cmd_kernels(args),
        Command::Demo(args) => cmd_demo(args),
    }
}

fn cmd_constants(which: ConstantsCmd, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let value = match which {
        ConstantsCmd::Thm1 { alpha, regime } => {
            let k = thm1_constants(alpha, regime.into())?;
            json!({
                "alpha": k.alpha,
                "regime": regime.label(),
                "a": k.a,
                "b": k.b,
                "c1": complex_json(k.c1),
                "c2": k.c2,
                "c3": k.c3,
                "multiplier": k.multiplier(),
                "sharp_multiplier": k.sharp_multiplier(),
            })
        }
        ConstantsCmd::Thm2 { q } => {
            let k = thm2_constants(q)?;
            json!({
                "q": k.q,
                "combo": k.combo.iter().map(|c| complex_json(c.to_complex())).collect::<Vec<_>>(),
                "sup": k.c_sup,
                "extra_ratio": k.extra_ratio,
                "C": k.c_m,
            })
        }
        ConstantsCmd::Thm3 { q, alpha } => {
            let k = thm3_constants(q, alpha)?;
            json!({
                "q": k.q,
                "alpha": k.alpha,
                "combo": k.combo.iter().map(|c| complex_json(c.to_complex())).collect::<Vec<_>>(),
                "sup": k.c_sup,
                "extra_ratio": k.extra_ratio,
                "C": k.c_m,
                "B": k.b_q_alpha,
            })
        }
    };
    emit(&serde_json::to_string_pretty(&value)?, out)?;
    Ok(ExitCode::SUCCESS)
}

fn load_measure(path: &Path) -> anyhow::Result<StepMeasure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing measure {}", path.display()))
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let opts = ReportOptions {
        allow_atom_at_lambda0: args.allow_atom_at_lambda0,
        sharp_constant: args.sharp,
        tolerance_floor: args.tolerance.unwrap_or(1e-9),
        ..ReportOptions::default()
    };
    let regime: Regime = args.regime.into();

    if let Some(trials) = args.suite {
        let params = match args.theorem {
            TheoremArg::Pleijel => SuiteParams::Pleijel,
            TheoremArg::Thm1 => SuiteParams::Thm1 {
                alpha: args.alpha.context("--alpha is required for thm1")?,
                regime,
            },
            TheoremArg::Thm2 => SuiteParams::Thm2 {
                q: args.q.context("--q is required for thm2")?,
            },
            TheoremArg::Thm3 => SuiteParams::Thm3 {
                q: args.q.context("--q is required for thm3")?,
                alpha: args.alpha.context("--alpha is required for thm3")?,
            },
        };
        let outcome = run_suite(params, trials, args.seed, &opts)?;
        let value = json!({
            "theorem": theorem_label(args.theorem),
            "seed": args.seed,
            "trials": outcome.trials,
            "violations": outcome.violations,
            "worst_margin": outcome.worst_margin,
        });
        emit(&serde_json::to_string_pretty(&value)?, args.out.as_deref())?;
        return Ok(if outcome.violations == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let measure = load_measure(
        args.measure
            .as_deref()
            .context("--measure is required for a single check")?,
    )?;
    let point = args
        .zeta0
        .context("--zeta0 is required for a single check")?;
    let contour: Contour = match (&args.contour, args.default_contour) {
        (Some(path), false) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing contour {}", path.display()))?
        }
        (None, true) => default_contour(&point),
        _ => bail!("provide either --contour FILE or --default-contour"),
    };

    let report: VerificationReport = match args.theorem {
        TheoremArg::Pleijel => pleijel_report(&measure, &point, &contour, &opts)?,
        TheoremArg::Thm1 => thm1_report(
            &measure,
            &point,
            &contour,
            args.alpha.context("--alpha is required for thm1")?,
            regime,
            &opts,
        )?,
        TheoremArg::Thm2 => thm2_report(
            &measure,
            &point,
            &contour,
            args.q.context("--q is required for thm2")?,
            &opts,
        )?,
        TheoremArg::Thm3 => thm3_report(
            &measure,
            &point,
            &contour,
            args.q.context("--q is required for thm3")?,
            args.alpha.context("--alpha is required for thm3")?,
            &opts,
        )?,
    };
    emit(&serde_json::to_string_pretty(&report)?, args.out.as_deref())?;
    Ok(if report.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn theorem_label(t: TheoremArg) -> &'static str {
    match t {
        TheoremArg::Pleijel => "pleijel",
        TheoremArg::Thm1 => "thm1",
        TheoremArg::Thm2 => "thm2",
        TheoremArg::Thm3 => "thm3",
    }
}

fn rational_row(c: &tauber::kernels::GaussianRational) -> anyhow::Result<serde_json::Value> {
    let to_i64 = |b: &num::BigInt, what: &str| -> anyhow::Result<i64> {
        b.to_i64()
            .with_context(|| format!("{what} does not fit in an i64; q is too large for the table"))
    };
    Ok(json!([
        to_i64(c.re.numer(), "numerator")?,
        to_i64(c.re.denom(), "denominator")?,
        to_i64(c.im.numer(), "numerator")?,
        to_i64(c.im.denom(), "denominator")?,
    ]))
}

fn cmd_kernels(args: KernelsArgs) -> anyhow::Result<ExitCode> {
    if args.q < 2 {
        bail!("--q must be at least 2");
    }
    let ms: Vec<u32> = match args.m {
        Some(m) => vec![m],
        None => (0..=args.q - 2).collect(),
    };
    let mut rows = Vec::new();
    for m in ms {
        let kernel = t_poly(args.q, m)?;
        let numerator = kernel
            .numerator
            .coeffs()
            .iter()
            .map(rational_row)
            .collect::<anyhow::Result<Vec<_>>>()?;
        rows.push(json!({
            "q": args.q,
            "m": m,
            "numerator": numerator,
            "power": kernel.power,
        }));
    }
    emit(
        &serde_json::to_string_pretty(&serde_json::Value::Array(rows))?,
        args.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_demo(args: DemoArgs) -> anyhow::Result<ExitCode> {
    if args.dimension < 1 || args.count < 1 {
        bail!("--dimension and --count must be at least 1");
    }
    if args.alpha.is_nan() || args.alpha <= 0.0 {
        bail!("--alpha must be positive");
    }
    let measure = StepMeasure::weyl(args.dimension, args.count);
    let opts = ReportOptions {
        allow_atom_at_lambda0: true,
        ..ReportOptions::default()
    };
    let mut table =
        String::from("lambda0,riesz_mean,main_term_re,main_term_im,error_bound,relative_gap\n");
    for &lambda0 in &args.lambda0 {
        if lambda0.is_nan() || lambda0 <= 0.0 {
            bail!("lambda0 values must be positive, got {lambda0}");
        }
        if lambda0 > measure.max_position() {
            eprintln!(
                "warning: lambda0={lambda0} lies above the largest atom {}; increase --count",
                measure.max_position()
            );
        }
        let point = EvaluationPoint::new(lambda0, lambda0.sqrt())?;
        let contour = default_contour(&point);
        let report = thm1_report(
            &measure,
            &point,
            &contour,
            args.alpha,
            Regime::General,
            &opts,
        )?;
        let riesz = measure.riesz_mean(args.alpha, lambda0);
        let gap = report.lhs / riesz;
        table.push_str(&format!(
            "{},{},{},{},{},{}\n",
            lambda0, riesz, report.main_term.re, report.main_term.im, report.rhs, gap
        ));
    }
    emit(&table, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
