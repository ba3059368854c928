//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on an internal diagnostic
//! (the two coefficient methods disagree, or the closed form leaves an
//! imaginary residue).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bell::{bell_registry, InputSequence};
use crate::diastasis::{block_report, eh_block_scan_with_cutoff, BlockReport, FubiniStudyBase};
use crate::error::Error;
use crate::exact::Rational;
use crate::inequality::{q_decomposition, scan_grid, ScanReport, DEFAULT_R_MAX};
use crate::potential::{compare, h_values, method_registry, CalabiParams, ClosedFormEvaluator};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DIAGNOSTIC: u8 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "calabi-bell",
    version,
    about = "Exact Bell-polynomial computations for Calabi's Ricci-flat potential"
)]
pub struct Invocation {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial Bell polynomial B_{r,j}(x), or the complete one Y_r(x) when --j is omitted
    Bell(BellArgs),
    /// Taylor coefficients a_j = u^(j)(0) of the potential, or a numeric evaluation with --eval
    Useries(UseriesArgs),
    /// Block scales h_r(u, m) = (1/r!) sum_j m^j B_{r,j}(a) for r = 1..=R
    ///
    /// The prefactor is 1/r!, which is what makes h_1 = u'(0) and
    /// h_2 = (u'(0)^2 + u''(0))/2; signs are unaffected by the choice.
    Hr(HrArgs),
    /// Least r with S(n, q, r) < 0
    Scan(ScanArgs),
    /// Diastasis coefficient blocks over CP^d with lambda times Fubini-Study
    Blocks(BlocksArgs),
}

#[derive(Debug, Args)]
pub struct BellArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub j: Option<usize>,
    /// Comma-separated rationals x_1,x_2,...
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub x: Vec<Rational>,
    #[arg(long, default_value = "recurrence")]
    pub algo: String,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k0: Rational,
    #[arg(long)]
    pub c: Rational,
}

impl PotentialArgs {
    fn params(&self) -> crate::Result<CalabiParams> {
        CalabiParams::new(self.n, self.k0.clone(), self.c.clone())
    }
}

#[derive(Debug, Args)]
pub struct UseriesArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    /// closed-form, ode, or both
    #[arg(long, default_value = "both")]
    pub method: String,
    /// Evaluate the closed form at this (decimal) x instead
    #[arg(long)]
    pub eval: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HrArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value = "1")]
    pub m: Rational,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, required_unless_present = "grid", conflicts_with = "grid")]
    pub q: Option<Rational>,
    /// Comma-separated q values, scanned concurrently
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<Rational>>,
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    pub rmax: usize,
}

#[derive(Debug, Args)]
pub struct BlocksArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 1)]
    pub lambda: u32,
    #[arg(long, default_value = "1")]
    pub c: Rational,
    #[arg(long, default_value_t = 6)]
    pub rmax: usize,
    #[arg(long, default_value_t = 3)]
    pub cutoff: usize,
}

enum Failure {
    Usage(String),
    Diagnostic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MethodDisagreement { .. } | Error::BranchDiagnostic { .. } => {
                Failure::Diagnostic(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Diagnostic(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Diagnostic(format!("csv: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (program name first) and writes the result to `out`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(argv) {
        Ok(inv) => inv,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&inv, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Diagnostic(msg)) => {
            let _ = writeln!(err, "diagnostic: {msg}");
            EXIT_DIAGNOSTIC
        }
    }
}

fn execute(inv: &Invocation, out: &mut dyn Write) -> Outcome {
    match &inv.command {
        Command::Bell(a) => bell(a, inv.format, out),
        Command::Useries(a) => useries(a, inv.format, out),
        Command::Hr(a) => hr(a, inv.format, out),
        Command::Scan(a) => scan(a, inv.format, out),
        Command::Blocks(a) => blocks(a, inv.format, out),
    }
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}")?;
    Ok(())
}

fn bell(a: &BellArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let registry = bell_registry();
    let algo = registry.get(&a.algo)?;
    let x = InputSequence::new(a.x.clone())?;
    let value = match a.j {
        Some(j) => algo.partial(a.r, j, &x)?,
        None => algo.complete(a.r, &x)?,
    };
    match format {
        Format::Table => writeln!(out, "{value}")?,
        Format::Json => print_json(
            out,
            &json!({ "r": a.r, "j": a.j, "algorithm": a.algo, "value": value }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["r", "j", "value"])?;
            let j = a.j.map(|j| j.to_string()).unwrap_or_default();
            w.write_record([a.r.to_string(), j, value.to_string()])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn useries(a: &UseriesArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let params = a.potential.params()?;
    if let Some(x) = a.eval {
        return evaluate(&params, x, format, out);
    }
    let registry = method_registry();
    let selected: Vec<&str> = if a.method == "both" {
        registry.names()
    } else {
        vec![a.method.as_str()]
    };
    let mut sequences = Vec::new();
    for name in selected {
        sequences.push(registry.get(name)?.coefficients(&params, a.order)?);
    }
    // ode is authoritative when both ran
    let primary = sequences
        .iter()
        .find(|s| s.method == "ode")
        .unwrap_or(&sequences[0])
        .clone();
    let agreement = if sequences.len() > 1 {
        Some(compare(&sequences[0], &sequences[1]))
    } else {
        None
    };

    match format {
        Format::Table => {
            for (j, v) in primary.values.iter().enumerate() {
                writeln!(out, "a_{} = {}", j + 1, v)?;
            }
            if let Some(Ok(())) = &agreement {
                writeln!(out, "methods agree")?;
            }
        }
        Format::Json => print_json(
            out,
            &json!({
                "params": params,
                "method": primary.method,
                "coefficients": primary.values,
                "methods_agree": agreement.as_ref().map(|r| r.is_ok()),
            }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["j", "a_j"])?;
            for (j, v) in primary.values.iter().enumerate() {
                w.write_record([(j + 1).to_string(), v.to_string()])?;
            }
            w.flush()?;
        }
    }
    if let Some(Err(e)) = agreement {
        return Err(e.into());
    }
    Ok(())
}

fn evaluate(params: &CalabiParams, x: f64, format: Format, out: &mut dyn Write) -> Outcome {
    if !x.is_finite() || x < 0.0 {
        return Err(Failure::Usage(format!(
            "--eval needs a finite x >= 0, got {x}"
        )));
    }
    let ev = ClosedFormEvaluator::new(params);
    let e = ev.evaluate(x)?;
    let d1 = ev.derivative(x)?;
    let (cond_a, cond_b) = ev.condition_i(x)?;
    let residual = ev.condition_ii_residual(x)?;
    match format {
        Format::Table => {
            writeln!(out, "u({x}) = {:.17e}", e.value)?;
            writeln!(out, "imaginary residue = {:.3e}", e.imag_residue)?;
            writeln!(out, "u'({x}) = {d1:.17e}")?;
            writeln!(out, "1 + k0 x u' = {cond_a:.17e}")?;
            writeln!(out, "u' + x u'' = {cond_b:.17e}")?;
            writeln!(out, "ode relative residual = {residual:.3e}")?;
        }
        Format::Json => print_json(
            out,
            &json!({
                "x": x,
                "u": e.value,
                "imag_residue": e.imag_residue,
                "u_prime": d1,
                "condition_i": [cond_a, cond_b],
                "ode_relative_residual": residual,
            }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "x",
                "u",
                "imag_residue",
                "u_prime",
                "cond_i_a",
                "cond_i_b",
                "residual",
            ])?;
            w.write_record(
                [x, e.value, e.imag_residue, d1, cond_a, cond_b, residual]
                    .map(|v| format!("{v:e}")),
            )?;
            w.flush()?;
        }
    }
    Ok(())
}

fn hr(a: &HrArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let params = a.potential.params()?;
    let values = h_values(&params, &a.m, a.r)?;
    match format {
        Format::Table => {
            for v in &values {
                writeln!(out, "h_{}(m = {}) = {}", v.r, v.m, v.value)?;
            }
        }
        Format::Json => print_json(
            out,
            &json!({ "params": params, "prefactor": "1/r!", "values": values }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["r", "m", "h"])?;
            for v in &values {
                w.write_record([v.r.to_string(), v.m.to_string(), v.value.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn scan(a: &ScanArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let (qs, grid) = match (&a.q, &a.grid) {
        (Some(q), None) => (vec![q.clone()], false),
        (None, Some(g)) if !g.is_empty() => (g.clone(), true),
        _ => return Err(Failure::Usage("give exactly one of --q or --grid".into())),
    };
    let reports = scan_grid(a.n, &qs, a.rmax)?;
    match format {
        Format::Table => {
            for rep in &reports {
                write_scan_table(rep, out)?;
            }
        }
        Format::Json if grid => print_json(out, &reports)?,
        Format::Json => writeln!(out, "{}", reports[0].to_json())?,
        Format::Csv if grid => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["q", "r", "S"])?;
            for rep in &reports {
                for row in &rep.rows {
                    w.write_record([rep.q.to_string(), row.r.to_string(), row.s.to_string()])?;
                }
            }
            w.flush()?;
        }
        Format::Csv => reports[0].write_csv(&mut *out)?,
    }
    Ok(())
}

fn write_scan_table(rep: &ScanReport, out: &mut dyn Write) -> Outcome {
    let dec = q_decomposition(&rep.q)?;
    writeln!(
        out,
        "n = {}, q = {} (m = {}, k0 = {}), r_max = {}",
        rep.n, rep.q, dec.m, dec.k0, rep.r_max
    )?;
    for row in &rep.rows {
        writeln!(out, "  S({}) = {}", row.r, row.s)?;
    }
    match rep.min_negative_r {
        Some(r) => writeln!(out, "min_negative_r = {r}")?,
        None => writeln!(out, "min_negative_r: not found <= {}", rep.r_max)?,
    }
    Ok(())
}

fn blocks(a: &BlocksArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let base = FubiniStudyBase::new(a.d, a.lambda)?;
    if a.cutoff < 1 {
        return Err(Failure::Usage("--cutoff must be at least 1".into()));
    }
    let scan = eh_block_scan_with_cutoff(&base, &a.c, a.rmax, a.cutoff)?;
    let report = block_report(&base, &a.c, &scan);
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Table => match &report {
            BlockReport::IntegralityFailure { k0, .. } => {
                writeln!(out, "d = {}, lambda = {}, k0 = {k0}", a.d, a.lambda)?;
                writeln!(
                    out,
                    "integrality already fails: k0/2 = {} is not a positive integer",
                    k0 * Rational::ratio(1, 2)
                )?;
            }
            BlockReport::Blocks {
                k0,
                blocks,
                first_negative_r,
                ..
            } => {
                writeln!(
                    out,
                    "d = {}, lambda = {}, k0 = {k0}, c = {}",
                    a.d, a.lambda, a.c
                )?;
                for b in blocks {
                    writeln!(
                        out,
                        "  r = {}: scale = {}, exponent = {}, {}",
                        b.r,
                        b.scale,
                        b.exponent,
                        b.verdict.as_str()
                    )?;
                }
                match first_negative_r {
                    Some(r) => writeln!(out, "first_negative_r = {r}")?,
                    None => writeln!(out, "first_negative_r: not found <= {}", a.rmax)?,
                }
            }
        },
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["r", "scale", "verdict", "exponent"])?;
            if let BlockReport::Blocks { blocks, .. } = &report {
                for b in blocks {
                    w.write_record([
                        b.r.to_string(),
                        b.scale.to_string(),
                        b.verdict.as_str().to_string(),
                        b.exponent.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}
