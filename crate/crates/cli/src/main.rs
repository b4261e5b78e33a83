//! Command-line front end for the verification suites.
//!
//! Exit status contract: 0 when everything requested passed, 1 when at
//! least one check failed, 2 on usage or configuration errors.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use heisenrep::core::{GradedIndex, TruncationWindow};
use heisenrep::interlace::{kernel_blocks, kernel_polynomial_action, kernel_shift_check};
use heisenrep::oscillators::{fock_ladders, nonfock_h4};
use heisenrep::suites::{emit_report, run_suites, ReportFormat, SuiteConfig, SuiteId, VerificationReport};
use heisenrep::{parse_rational, rat, CRat, SpinParameter};

const CONFIG_ENV: &str = "HEISENREP_CONFIG";

#[derive(Parser)]
#[command(
    name = "heisenrep",
    version,
    about = "Finite-truncation oscillator-representation workbench: runs exact and numerical verification suites and dumps operator data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Check(CheckArgs),
    /// Print occupation-number spectra of a realization.
    Spectrum(SpectrumArgs),
    /// Print interlacing-kernel blocks and their shift checks.
    Kernel(KernelArgs),
    /// Serialize a named operator as CSV triplets.
    DumpOperator(DumpArgs),
    /// Reformat an existing JSON report.
    Report(ReportArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Config file (plain key = value format); defaults to $HEISENREP_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Spin parameter as exact rational text (repeatable), e.g. -1/4.
    #[arg(long = "lambda", allow_hyphen_values = true)]
    lambdas: Vec<String>,
    /// Suite selection (repeatable); defaults to all suites.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long, allow_negative_numbers = true)]
    p_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    p_max: Option<i64>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    quad_nodes: Option<usize>,
    #[arg(long)]
    quad_cutoff: Option<f64>,
    #[arg(long)]
    tol_float_algebra: Option<f64>,
    #[arg(long)]
    tol_quadrature: Option<f64>,
    #[arg(long)]
    tol_group_action: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: json, csv or text.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Realization: fock or nonfock-h4.
    #[arg(long)]
    rep: String,
    /// Spin parameter (required for nonfock-h4), exact rational text.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Block window as min:max, e.g. -2:2.
    #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
    p_window: String,
    #[arg(long, default_value_t = 6)]
    m_max: usize,
    /// Oscillator mode, 1 or 2.
    #[arg(long, default_value_t = 2)]
    mode: usize,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    p_window: String,
    #[arg(long, default_value_t = 12)]
    j_max: usize,
}

#[derive(Args)]
struct DumpArgs {
    /// Operator name: phi1, phi2, phibar1, phibar2, l3, lplus, lminus.
    #[arg(long)]
    name: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    p_window: String,
    #[arg(long, default_value_t = 8)]
    m_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Existing JSON report.
    #[arg(long)]
    input: PathBuf,
    /// Target format: json, csv or text.
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(args) => run_check(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Kernel(args) => run_kernel(args),
        Command::DumpOperator(args) => run_dump(args),
        Command::Report(args) => run_report(args),
    }
    .unwrap_or_else(|err| {
        eprintln!("error: {err}");
        ExitCode::from(2)
    })
}

fn run_check(args: CheckArgs) -> Result<ExitCode, String> {
    let mut cfg = match &args.config {
        Some(path) => config::load_config_file(path)?,
        None => match std::env::var_os(CONFIG_ENV) {
            Some(path) => config::load_config_file(&PathBuf::from(path))?,
            None => SuiteConfig::default(),
        },
    };
    if !args.lambdas.is_empty() {
        let mut lams = Vec::new();
        for text in &args.lambdas {
            lams.push(
                parse_rational(text).map_err(|e| format!("flag --lambda {text}: {e}"))?,
            );
        }
        cfg.lambdas = lams;
    }
    if !args.suites.is_empty() {
        let mut suites = Vec::new();
        for text in &args.suites {
            suites.push(
                SuiteId::from_str(text).map_err(|e| format!("flag --suite {text}: {e}"))?,
            );
        }
        cfg.suites = suites;
    }
    if let Some(v) = args.p_min {
        cfg.p_min = v;
    }
    if let Some(v) = args.p_max {
        cfg.p_max = v;
    }
    if let Some(v) = args.m_max {
        cfg.m_max = v;
    }
    if let Some(v) = args.quad_nodes {
        cfg.quad_nodes = v;
    }
    if let Some(v) = args.quad_cutoff {
        cfg.quad_cutoff = v;
    }
    if let Some(v) = args.tol_float_algebra {
        cfg.tol_float_algebra = v;
    }
    if let Some(v) = args.tol_quadrature {
        cfg.tol_quadrature = v;
    }
    if let Some(v) = args.tol_group_action {
        cfg.tol_group_action = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    let format = ReportFormat::from_str(&args.format)
        .map_err(|e| format!("flag --format {}: {e}", args.format))?;

    let report = run_suites(&cfg).map_err(|e| format!("flag --lambda/--suite: {e}"))?;
    write_output(&emit_report(&report, format), args.out.as_deref())?;
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn parse_p_window(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("flag --p-window {text}: expected min:max"))?;
    let lo = lo
        .parse::<i64>()
        .map_err(|e| format!("flag --p-window {text}: {e}"))?;
    let hi = hi
        .parse::<i64>()
        .map_err(|e| format!("flag --p-window {text}: {e}"))?;
    Ok((lo, hi))
}

fn spin_from_flag(text: &str) -> Result<SpinParameter, String> {
    let value = parse_rational(text).map_err(|e| format!("flag --lambda {text}: {e}"))?;
    SpinParameter::general(value).map_err(|e| format!("flag --lambda {text}: {e}"))
}

fn run_spectrum(args: SpectrumArgs) -> Result<ExitCode, String> {
    let mut out = String::new();
    match args.rep.as_str() {
        "fock" => {
            let set = fock_ladders::<CRat>(1, args.m_max);
            out.push_str("# fock occupation spectrum\n");
            for v in set.number_spectrum(args.mode) {
                out.push_str(&format!("{v}\n"));
            }
        }
        "nonfock-h4" => {
            let lam_text = args
                .lambda
                .as_deref()
                .ok_or("flag --lambda is required for nonfock-h4")?;
            let lam = spin_from_flag(lam_text)?;
            let (p_min, p_max) = parse_p_window(&args.p_window)?;
            let window = TruncationWindow::new(p_min, p_max, args.m_max)
                .map_err(|e| format!("flag --p-window/--m-max: {e}"))?;
            let rep = nonfock_h4::<CRat>(&lam, window).map_err(|e| e.to_string())?;
            out.push_str(&format!(
                "# nonfock-h4 mode-{} spectrum, lambda={}, p in [{},{}], m <= {}\n",
                args.mode, lam, p_min, p_max, args.m_max
            ));
            out.push_str("# value (exact)\tvalue (float)\n");
            for v in rep.number_spectrum(args.mode) {
                out.push_str(&format!("{v}\t{}\n", heisenrep::scalar::rat_to_f64(&v)));
            }
        }
        other => return Err(format!("flag --rep {other}: expected fock or nonfock-h4")),
    }
    write_output(&out, None)?;
    Ok(ExitCode::SUCCESS)
}

fn run_kernel(args: KernelArgs) -> Result<ExitCode, String> {
    let lam = spin_from_flag(&args.lambda)?;
    let (p_min, p_max) = parse_p_window(&args.p_window)?;
    let blocks =
        kernel_blocks(&lam, p_min, p_max, args.j_max).map_err(|e| e.to_string())?;
    let mut out = format!(
        "# kernel blocks, lambda={lam}, p in [{p_min},{p_max}], series order <= {}\n",
        args.j_max
    );
    for b in &blocks {
        let mut coeffs = String::new();
        for j in 0..=args.j_max.min(6) {
            coeffs.push_str(&format!(" {}", b.series_coefficient(j)));
        }
        out.push_str(&format!(
            "block p={:+}: exponent = 2*lambda{:+}, leading coefficients{}\n",
            b.p, b.p, coeffs
        ));
    }
    let shift = kernel_shift_check(&blocks).map_err(|e| e.to_string())?;
    out.push_str(&format!("shift-check residual: {shift}\n"));
    let member = kernel_polynomial_action(&blocks, &[rat(-1, 1), rat(1, 1)])
        .map_err(|e| e.to_string())?;
    out.push_str(&format!("membership residual for (shift - 1): {member}\n"));
    write_output(&out, None)?;
    if shift == 0.0 && member == 0.0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn run_dump(args: DumpArgs) -> Result<ExitCode, String> {
    let lam = spin_from_flag(&args.lambda)?;
    let (p_min, p_max) = parse_p_window(&args.p_window)?;
    let window = TruncationWindow::new(p_min, p_max, args.m_max)
        .map_err(|e| format!("flag --p-window/--m-max: {e}"))?;
    let rep = nonfock_h4::<CRat>(&lam, window).map_err(|e| e.to_string())?;
    let su2 = heisenrep::symmetry::su2_graded::<CRat>(&lam, window)
        .map_err(|e| e.to_string())?;
    let op = match args.name.as_str() {
        "phi1" | "a11" => rep.op(1, 1).clone(),
        "phi2" | "a12" => rep.op(1, 2).clone(),
        "phibar1" | "a21" => rep.op(2, 1).clone(),
        "phibar2" | "a22" => rep.op(2, 2).clone(),
        "l3" => su2[0].clone(),
        "lplus" => su2[1].clone(),
        "lminus" => su2[2].clone(),
        other => {
            return Err(format!(
                "flag --name {other}: expected phi1, phi2, phibar1, phibar2, l3, lplus or lminus"
            ))
        }
    };
    let mut csv = String::from("row_p,row_m,col_p,col_m,re,im\n");
    let mut entries: Vec<(GradedIndex, GradedIndex, CRat)> = op
        .entries()
        .map(|(r, c, v)| (r, c, v.clone()))
        .collect();
    entries.sort_by_key(|(r, c, _)| (c.p, c.m, r.p, r.m));
    for (r, c, v) in entries {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.p,
            r.m,
            c.p,
            c.m,
            heisenrep::scalar::rat_to_f64(&v.re),
            heisenrep::scalar::rat_to_f64(&v.im)
        ));
    }
    write_output(&csv, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_report(args: ReportArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("flag --input {}: {e}", args.input.display()))?;
    let report: VerificationReport = serde_json::from_str(&text)
        .map_err(|e| format!("flag --input {}: not a report: {e}", args.input.display()))?;
    let format = ReportFormat::from_str(&args.format)
        .map_err(|e| format!("flag --format {}: {e}", args.format))?;
    write_output(&emit_report(&report, format), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn write_output(content: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("flag --out {}: {e}", path.display())),
        None => match std::io::stdout().write_all(content.as_bytes()) {
            Ok(()) => Ok(()),
            // a closed pipe (e.g. piping into head) is normal termination
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            Err(e) => Err(format!("stdout: {e}")),
        },
    }
}
