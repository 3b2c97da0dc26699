//! Command-line front end.
//!
//! One binary, six subcommands (`level`, `transition`, `series`, `sweep`,
//! `field`, `conserve`), all sharing global constants overrides
//! (`--config`, `--alpha`, `--mec2-ev`, `--hc-ev-nm`) and `--format`.
//! Single results render as aligned text or JSON; `sweep` emits CSV or JSON
//! tables. Exit codes: 0 success, 1 domain error, 2 usage or invalid sweep
//! spec, 3 I/O failure. Results go to standard output (or `--out`), warnings
//! and errors to standard error.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::conservation::{classical_residual, solve_v2, strict_residual, BalancePair};
use crate::constants::Constants;
use crate::error::{Error, Result as LibResult};
use crate::field::{field_shift, FieldPoint, FieldShift};
use crate::levels::{level_corrected, LevelResult, QuantumState, HIGH_Z_WARNING_THRESHOLD};
use crate::report::{self, JSelection, SweepMode, SweepSpec, TableFormat};
use crate::transitions::{series, transition, Transition};

/// Sign convention stamped on every scalar output.
const CONVENTION: &str =
    "binding energy in eV, positive when bound; spectroscopic level = -E; displacements negative";

#[derive(Parser)]
#[command(
    name = "levelshift",
    version,
    about = "Hydrogen-like levels and lines with the effective-mass correction",
    after_help = "Units: radii nm, speeds fractions of c, energies eV, wavelengths nm."
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Config file with constants overrides: key=value lines or a JSON object
    /// (keys: alpha, electron_rest_energy_ev, hc_ev_nm)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<std::path::PathBuf>,
    /// Override the fine-structure constant (dimensionless, 0 <= alpha < 1)
    #[arg(long, global = true, value_name = "FLOAT", allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Override the electron rest energy m c^2 (eV)
    #[arg(long = "mec2-ev", global = true, value_name = "EV", allow_negative_numbers = true)]
    mec2_ev: Option<f64>,
    /// Override h c (eV nm), used for wavelengths
    #[arg(long = "hc-ev-nm", global = true, value_name = "EV_NM", allow_negative_numbers = true)]
    hc_ev_nm: Option<f64>,
    /// Output format: text (default) or json for single results; csv
    /// (default) or json for sweep tables
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Corrected and uncorrected binding energy of one level
    Level(LevelArgs),
    /// Line energies and both shift variants for one downward transition
    Transition(TransitionArgs),
    /// Spectral series onto a fixed lower level (j = 1/2)
    Series(SeriesArgs),
    /// Sweep a (Z, n) grid into a CSV or JSON table
    Sweep(SweepArgs),
    /// Field-point diagnostics: potential (eV), effective mass, speed shift
    Field(FieldArgs),
    /// Two-point energy-balance residuals (eV)
    Conserve(ConserveArgs),
}

#[derive(Args)]
struct LevelArgs {
    /// Nuclear charge number Z (dimensionless integer >= 1)
    #[arg(long = "Z", value_name = "INT", allow_negative_numbers = true)]
    z: i64,
    /// Radial quantum number n_r (dimensionless integer >= 0)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    n_radial: i64,
    /// Twice the total angular momentum j (dimensionless odd integer; 1 for j=1/2)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    twice_j: i64,
}

#[derive(Args)]
struct TransitionArgs {
    /// Nuclear charge number Z (dimensionless integer >= 1)
    #[arg(long = "Z", value_name = "INT", allow_negative_numbers = true)]
    z: i64,
    /// Upper level radial quantum number (dimensionless integer >= 0)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    upper_n_radial: i64,
    /// Upper level twice-j (dimensionless odd integer)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    upper_twice_j: i64,
    /// Lower level radial quantum number (dimensionless integer >= 0)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    lower_n_radial: i64,
    /// Lower level twice-j (dimensionless odd integer)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    lower_twice_j: i64,
}

#[derive(Args)]
struct SeriesArgs {
    /// Nuclear charge number Z (dimensionless integer >= 1)
    #[arg(long = "Z", value_name = "INT", allow_negative_numbers = true)]
    z: i64,
    /// Principal quantum number n of the lower level (integer >= 1)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    lower_n: i64,
    /// Largest upper principal quantum number n (integer > lower n)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    n_max: i64,
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive charge range: "1..92", "1..=92", or a single "29"
    #[arg(long, value_name = "RANGE")]
    z: String,
    /// Largest principal quantum number n (integer >= 1)
    #[arg(long, value_name = "INT", allow_negative_numbers = true)]
    n_max: i64,
    /// Include every valid j at each n instead of j = 1/2 only
    #[arg(long)]
    all_j: bool,
    /// What to tabulate
    #[arg(long, value_enum, value_name = "MODE", default_value_t = ModeArg::Levels)]
    mode: ModeArg,
    /// Output path; "-" (default) writes to standard output
    #[arg(long, value_name = "PATH", default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Levels,
    Transitions,
}

#[derive(Args)]
struct FieldArgs {
    /// Nuclear charge number Z (dimensionless integer >= 0)
    #[arg(long = "Z", value_name = "INT", allow_negative_numbers = true)]
    z: i64,
    /// Radius of the field point (nm)
    #[arg(long, value_name = "NM", allow_negative_numbers = true)]
    r_nm: f64,
    /// Speed at the field point (fraction of c, 0 <= v < 1)
    #[arg(long, value_name = "C", allow_negative_numbers = true)]
    v: f64,
}

#[derive(Args)]
#[command(group(ArgGroup::new("second_speed").required(true).args(["v2", "solve_v2"])))]
struct ConserveArgs {
    /// Nuclear charge number Z (dimensionless integer >= 0)
    #[arg(long = "Z", value_name = "INT", allow_negative_numbers = true)]
    z: i64,
    /// Radius of the first point (nm)
    #[arg(long, value_name = "NM", allow_negative_numbers = true)]
    r1_nm: f64,
    /// Speed at the first point (fraction of c)
    #[arg(long, value_name = "C", allow_negative_numbers = true)]
    v1: f64,
    /// Radius of the second point (nm)
    #[arg(long, value_name = "NM", allow_negative_numbers = true)]
    r2_nm: f64,
    /// Speed at the second point (fraction of c)
    #[arg(long, value_name = "C", allow_negative_numbers = true)]
    v2: Option<f64>,
    /// Derive the second speed from the classical balance instead of --v2
    #[arg(long)]
    solve_v2: bool,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

enum Rendering {
    Text,
    Json,
}

/// Parse the command line and run it; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help/--version.
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let constants = resolve_constants(&cli.globals)?;
    match cli.command {
        Command::Level(args) => level_cmd(args, &cli.globals, &constants),
        Command::Transition(args) => transition_cmd(args, &cli.globals, &constants),
        Command::Series(args) => series_cmd(args, &cli.globals, &constants),
        Command::Sweep(args) => sweep_cmd(args, &cli.globals, &constants),
        Command::Field(args) => field_cmd(args, &cli.globals, &constants),
        Command::Conserve(args) => conserve_cmd(args, &cli.globals, &constants),
    }
}

fn resolve_constants(globals: &GlobalOpts) -> Result<Constants, Failure> {
    let mut constants = match &globals.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(Error::from)?;
            Constants::from_config_str(&text)?
        }
        None => Constants::default(),
    };
    if let Some(alpha) = globals.alpha {
        constants.alpha = alpha;
    }
    if let Some(mec2) = globals.mec2_ev {
        constants.electron_rest_energy_ev = mec2;
    }
    if let Some(hc) = globals.hc_ev_nm {
        constants.hc_ev_nm = hc;
    }
    constants.validate()?;
    Ok(constants)
}

fn scalar_rendering(globals: &GlobalOpts, command: &str) -> Result<Rendering, Failure> {
    match globals.format {
        None | Some(OutputFormat::Text) => Ok(Rendering::Text),
        Some(OutputFormat::Json) => Ok(Rendering::Json),
        Some(OutputFormat::Csv) => Err(Failure::Usage(format!(
            "csv format applies to sweep tables only, not to {command}"
        ))),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("plain data serializes"));
}

fn print_kv(label: &str, value: impl std::fmt::Display) {
    println!("{label:<22}{value}");
}

fn warn_high_z(z: u32) {
    if z > HIGH_Z_WARNING_THRESHOLD {
        eprintln!(
            "warning: Z={z} is beyond the tabulated range (Z <= {HIGH_Z_WARNING_THRESHOLD}); \
             fine-structure bracket extrapolated"
        );
    }
}

#[derive(Serialize)]
struct LevelReport {
    z: u32,
    n_radial: u32,
    twice_j: u32,
    n: u32,
    j: f64,
    convention: &'static str,
    #[serde(flatten)]
    result: LevelResult,
}

fn level_cmd(args: LevelArgs, globals: &GlobalOpts, constants: &Constants) -> Result<(), Failure> {
    let rendering = scalar_rendering(globals, "level")?;
    let state = QuantumState::new(args.z, args.n_radial, args.twice_j, constants)?;
    warn_high_z(state.z());
    let result = level_corrected(&state, constants);
    let report = LevelReport {
        z: state.z(),
        n_radial: state.n_radial(),
        twice_j: state.twice_j(),
        n: state.n(),
        j: state.j(),
        convention: CONVENTION,
        result,
    };
    match rendering {
        Rendering::Json => print_json(&report),
        Rendering::Text => {
            println!(
                "level Z={} n={} (n_radial={}, twice_j={})",
                report.z, report.n, report.n_radial, report.twice_j
            );
            println!("convention: {CONVENTION}");
            print_kv("bracket", result.bracket);
            print_kv("k", result.k);
            print_kv("E_uncorr_eV", result.e_uncorrected_ev);
            print_kv("E_corr_eV", result.e_corrected_ev);
            print_kv("dE_first_eV", result.delta_first_order_ev);
            print_kv("dE_exact_eV", result.delta_exact_ev);
            print_kv("m_eff_ratio", result.m_eff_over_m);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TransitionReport {
    convention: &'static str,
    #[serde(flatten)]
    line: Transition,
}

fn print_transition_text(t: &Transition) {
    print_kv("E_line_uncorr_eV", t.e_line_uncorrected_ev);
    print_kv("E_line_corr_eV", t.e_line_corrected_ev);
    print_kv("shift_level_diff_eV", t.shift_level_difference_ev);
    print_kv("shift_subst_eV", t.shift_substitution_ev);
    print_kv("lambda_uncorr_nm", t.lambda_uncorrected_nm);
    print_kv("lambda_corr_nm", t.lambda_corrected_nm);
}

fn transition_cmd(
    args: TransitionArgs,
    globals: &GlobalOpts,
    constants: &Constants,
) -> Result<(), Failure> {
    let rendering = scalar_rendering(globals, "transition")?;
    let upper = QuantumState::new(args.z, args.upper_n_radial, args.upper_twice_j, constants)?;
    let lower = QuantumState::new(args.z, args.lower_n_radial, args.lower_twice_j, constants)?;
    warn_high_z(upper.z());
    let line = transition(&upper, &lower, constants)?;
    match rendering {
        Rendering::Json => print_json(&TransitionReport { convention: CONVENTION, line }),
        Rendering::Text => {
            println!(
                "transition Z={}: upper n={} (twice_j={}) -> lower n={} (twice_j={})",
                upper.z(),
                upper.n(),
                upper.twice_j(),
                lower.n(),
                lower.twice_j()
            );
            println!("convention: {CONVENTION}");
            print_transition_text(&line);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesReport {
    z: u32,
    lower_n: u32,
    n_max: i64,
    convention: &'static str,
    lines: Vec<Transition>,
}

fn series_cmd(args: SeriesArgs, globals: &GlobalOpts, constants: &Constants) -> Result<(), Failure> {
    let rendering = scalar_rendering(globals, "series")?;
    let lower = QuantumState::new(args.z, args.lower_n - 1, 1, constants)?;
    warn_high_z(lower.z());
    let lines = series(&lower, args.n_max, constants)?;
    match rendering {
        Rendering::Json => print_json(&SeriesReport {
            z: lower.z(),
            lower_n: lower.n(),
            n_max: args.n_max,
            convention: CONVENTION,
            lines,
        }),
        Rendering::Text => {
            println!(
                "series Z={}, lower n={} (j=1/2), upper n={}..{}",
                lower.z(),
                lower.n(),
                lower.n() + 1,
                args.n_max
            );
            println!("convention: {CONVENTION}");
            println!(
                "{:<9}{:<24}{:<24}{:<26}{}",
                "upper_n", "E_line_uncorr_eV", "E_line_corr_eV", "shift_level_diff_eV", "lambda_corr_nm"
            );
            for t in &lines {
                println!(
                    "{:<9}{:<24}{:<24}{:<26}{}",
                    t.upper.n(),
                    t.e_line_uncorrected_ev,
                    t.e_line_corrected_ev,
                    t.shift_level_difference_ev,
                    t.lambda_corrected_nm
                );
            }
        }
    }
    Ok(())
}

fn parse_z_range(text: &str) -> LibResult<(i64, i64)> {
    let parse_bound = |s: &str| {
        s.trim().parse::<i64>().map_err(|_| {
            Error::InvalidSweep(format!("bad charge number {:?} in --z range", s.trim()))
        })
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((parse_bound(lo)?, parse_bound(hi)?))
        }
        None => {
            let z = parse_bound(text)?;
            Ok((z, z))
        }
    }
}

fn sweep_cmd(args: SweepArgs, globals: &GlobalOpts, constants: &Constants) -> Result<(), Failure> {
    let format = match globals.format {
        None | Some(OutputFormat::Csv) => TableFormat::Csv,
        Some(OutputFormat::Json) => TableFormat::Json,
        Some(OutputFormat::Text) => {
            return Err(Failure::Usage(
                "sweep emits csv or json tables; --format text is not available here".into(),
            ))
        }
    };
    let (z_min, z_max) = parse_z_range(&args.z)?;
    let include_j = if args.all_j { JSelection::All } else { JSelection::HalfOnly };
    let mode = match args.mode {
        ModeArg::Levels => SweepMode::Levels,
        ModeArg::Transitions => SweepMode::Transitions,
    };
    let spec = SweepSpec::new(z_min, z_max, args.n_max, include_j, mode, format)?;
    let table = report::sweep(&spec, constants)?;
    for notice in table.notices() {
        eprintln!("notice: {notice}");
    }
    let body = report::emit_string(&table, format);
    if args.out == "-" {
        std::io::stdout().write_all(body.as_bytes()).map_err(Error::from)?;
    } else {
        std::fs::write(&args.out, body).map_err(Error::from)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FieldReport {
    z: u32,
    r_nm: f64,
    v: f64,
    #[serde(flatten)]
    shift: FieldShift,
}

fn field_cmd(args: FieldArgs, globals: &GlobalOpts, constants: &Constants) -> Result<(), Failure> {
    let rendering = scalar_rendering(globals, "field")?;
    let point = FieldPoint::new(args.z, args.r_nm, args.v)?;
    let shift = field_shift(&point, constants)?;
    if shift.high_speed {
        eprintln!(
            "warning: v = {} exceeds 0.1 c; the nonrelativistic kinetic terms degrade",
            point.v()
        );
    }
    let report = FieldReport { z: point.z(), r_nm: point.r_nm(), v: point.v(), shift };
    match rendering {
        Rendering::Json => print_json(&report),
        Rendering::Text => {
            println!("field point Z={}, r={} nm, v={} c", report.z, report.r_nm, report.v);
            print_kv("potential_energy_eV", shift.potential_energy_ev);
            print_kv("x", shift.x);
            print_kv("m_prime_over_m", shift.m_prime_over_m);
            print_kv("v_prime", shift.v_prime);
            print_kv("mass_defect_eV", shift.mass_defect_ev);
            print_kv("delta_v", shift.delta_v);
            print_kv("delta_v_exact", shift.delta_v_exact);
            print_kv("high_speed", shift.high_speed);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ConserveReport {
    z: u32,
    r1_nm: f64,
    v1: f64,
    r2_nm: f64,
    v2: f64,
    v2_source: &'static str,
    classical_residual_ev: f64,
    strict_residual_ev: f64,
}

fn conserve_cmd(
    args: ConserveArgs,
    globals: &GlobalOpts,
    constants: &Constants,
) -> Result<(), Failure> {
    let rendering = scalar_rendering(globals, "conserve")?;
    let (v2, v2_source) = if args.solve_v2 {
        (solve_v2(args.z, args.r1_nm, args.v1, args.r2_nm, constants)?, "solved")
    } else {
        (args.v2.expect("clap group requires --v2 or --solve-v2"), "given")
    };
    let pair = BalancePair::new(args.z, args.r1_nm, args.v1, args.r2_nm, v2)?;
    let report = ConserveReport {
        z: pair.z(),
        r1_nm: args.r1_nm,
        v1: args.v1,
        r2_nm: args.r2_nm,
        v2,
        v2_source,
        classical_residual_ev: classical_residual(&pair, constants)?,
        strict_residual_ev: strict_residual(&pair, constants)?,
    };
    match rendering {
        Rendering::Json => print_json(&report),
        Rendering::Text => {
            println!(
                "balance Z={}: point1 (r={} nm, v={} c) vs point2 (r={} nm, v={} c, {})",
                report.z, report.r1_nm, report.v1, report.r2_nm, report.v2, report.v2_source
            );
            println!("residuals are point1 minus point2, eV");
            print_kv("classical_residual_eV", report.classical_residual_ev);
            print_kv("strict_residual_eV", report.strict_residual_ev);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn z_range_forms() {
        assert_eq!(parse_z_range("1..92").unwrap(), (1, 92));
        assert_eq!(parse_z_range("1..=92").unwrap(), (1, 92));
        assert_eq!(parse_z_range("29").unwrap(), (29, 29));
        assert_eq!(parse_z_range(" 3 .. 7 ").unwrap(), (3, 7));
        assert!(matches!(parse_z_range("a..b"), Err(Error::InvalidSweep(_))));
        assert!(matches!(parse_z_range("1..2..3"), Err(Error::InvalidSweep(_))));
        assert!(matches!(parse_z_range(""), Err(Error::InvalidSweep(_))));
    }

    #[test]
    fn negative_numeric_values_reach_domain_validation() {
        // "-1" must parse as a value, not a flag, so the domain check can
        // reject it with exit code 1 rather than clap's usage error.
        let cli = Cli::try_parse_from([
            "levelshift", "level", "--Z", "1", "--n-radial", "-1", "--twice-j", "1",
        ])
        .unwrap();
        match cli.command {
            Command::Level(args) => assert_eq!(args.n_radial, -1),
            _ => panic!("expected level"),
        }
    }

    #[test]
    fn conserve_requires_exactly_one_second_speed() {
        assert!(Cli::try_parse_from([
            "levelshift", "conserve", "--Z", "1", "--r1-nm", "1", "--v1", "0", "--r2-nm", "2",
        ])
        .is_err());
        assert!(Cli::try_parse_from([
            "levelshift", "conserve", "--Z", "1", "--r1-nm", "1", "--v1", "0", "--r2-nm", "2",
            "--v2", "0.1", "--solve-v2",
        ])
        .is_err());
        assert!(Cli::try_parse_from([
            "levelshift", "conserve", "--Z", "1", "--r1-nm", "1", "--v1", "0", "--r2-nm", "2",
            "--solve-v2",
        ])
        .is_ok());
    }

    #[test]
    fn csv_is_rejected_for_scalar_commands() {
        let globals = GlobalOpts {
            config: None,
            alpha: None,
            mec2_ev: None,
            hc_ev_nm: None,
            format: Some(OutputFormat::Csv),
        };
        match scalar_rendering(&globals, "level") {
            Err(Failure::Usage(msg)) => assert!(msg.contains("sweep")),
            _ => panic!("csv must be a usage error for scalar commands"),
        }
    }
}
