//! Command-line front end shared by the `projbound` binary.
//!
//! Floating-point values are printed with 12 significant digits in text, CSV
//! and markdown output; integers are printed exactly. JSON output keeps full
//! precision so that it parses back to the in-memory report.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::{
    asymptotic_report, oscillation_report, quaternion_m2_printed_form, table_rows, yudin_bound,
    AsymptoticRow, BoundReport, OscillationRow, TableRow,
};
use crate::error::Error;
use crate::field::Field;
use crate::testfn::{build_test_function, YudinTestFunction, DEFAULT_K_MAX};
use crate::verifier::{default_tolerance, verify, PointSetFile, VerificationReport};

pub const TABLE_SCHEMA: &str = "# projbound-table v1";
pub const ASYM_SCHEMA: &str = "# projbound-asym v1";
pub const TESTFN_SCHEMA: &str = "# projbound-testfn v1";
pub const OSCILLATION_SCHEMA: &str = "# projbound-oscillation v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::Parameter(_) | Error::Domain(_) | Error::Input(_) | Error::Parse { .. } => {
            EXIT_USAGE
        }
        Error::Numerical(_) => EXIT_FAIL,
    }
}

/// `x` with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "H", alias = "h")]
    H,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::R => Field::R,
            FieldArg::C => Field::C,
            FieldArg::H => Field::H,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "projbound",
    version,
    about = "Lower bounds for projective cubature formulas over R, C and H",
    after_help = "Set PROJBOUND_THREADS to cap the number of worker threads."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear programming and Yudin-type bounds for one (field, m, p).
    Bound {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Also print the alternative printed form of the quaternionic m = 2 bound.
        #[arg(long)]
        verbose: bool,
    },
    /// Bound comparison table for every even p in [p-min, p-max].
    ///
    /// CSV columns: p, lp_bound, yudin_raw, yudin_bound, delta (= yudin_bound - lp_bound).
    Table {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        p_min: usize,
        #[arg(long)]
        p_max: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Moment test of a point-set JSON file; exit code 1 when it is not a cubature formula.
    Verify {
        file: PathBuf,
        /// Pass threshold for max |M_k| (default 1e-10 * n).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        verbose: bool,
    },
    /// Asymptotic constants kappa_K(m) for m in [m-min, m-max].
    ///
    /// CSV columns: m, bessel_zero, kappa, ln_kappa, ln_kappa_asymptotic, log_ratio,
    /// ln_lp_constant, ln_yudin_constant, ln_gap_factor.
    Asym {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long, default_value_t = 2)]
        m_min: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Jacobi–Fourier coefficients of the test function f_l.
    ///
    /// CSV columns: k, c_h, c_g, c_f.
    Testfn {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Differences of Delta_H and Delta_C for m = 2 and the observed sign law.
    Oscillation {
        #[arg(long)]
        p_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

pub fn render_bound(report: &BoundReport, format: ReportFormat, verbose: bool) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = String::from("field,m,p,xi,epsilon,lp_bound,yudin_raw,yudin_bound,delta\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                report.field,
                report.m,
                report.p,
                fmt_sig(report.xi),
                fmt_sig(report.epsilon),
                report.lp_bound.value,
                fmt_sig(report.yudin_raw),
                report.yudin_bound,
                report.delta()
            );
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "field        {}", report.field);
            let _ = writeln!(s, "m            {}", report.m);
            let _ = writeln!(s, "p            {}", report.p);
            let _ = writeln!(s, "xi           {}", fmt_sig(report.xi));
            let _ = writeln!(s, "epsilon      {}", fmt_sig(report.epsilon));
            let exact = if report.lp_bound.exact { "" } else { " (ceiling of inexact quotient)" };
            let _ = writeln!(s, "lp           {}{exact}", report.lp_bound.value);
            let _ = writeln!(s, "yudin_raw    {}", fmt_sig(report.yudin_raw));
            let _ = writeln!(s, "yudin        {}", report.yudin_bound);
            let _ = writeln!(s, "delta        {}", report.delta());
            if verbose {
                let _ = writeln!(s, "cross_check  {}", fmt_sig(report.cross_check));
                let _ = writeln!(s, "ln_yudin     {}", fmt_sig(report.yudin_ln));
                if report.field == Field::H && report.m == 2 {
                    let _ = writeln!(
                        s,
                        "printed_form {} (alternative closed form; lp above uses Lambda_H(2, p/2))",
                        fmt_sig(quaternion_m2_printed_form(report.p))
                    );
                }
            }
            s
        }
    }
}

pub fn render_table(field: Field, m: usize, rows: &[TableRow], format: TableFormat) -> String {
    let mut s = String::new();
    match format {
        TableFormat::Csv => {
            let _ = writeln!(s, "{TABLE_SCHEMA} field={field} m={m}");
            s.push_str("p,lp_bound,yudin_raw,yudin_bound,delta\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.p,
                    r.lp_bound,
                    fmt_sig(r.yudin_raw),
                    r.yudin_bound,
                    r.delta
                );
            }
        }
        TableFormat::Markdown => {
            let _ = writeln!(s, "Bounds for field {field}, m = {m}\n");
            s.push_str("| p | lp_bound | yudin_raw | yudin_bound | delta |\n");
            s.push_str("|---:|---:|---:|---:|---:|\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    r.p,
                    r.lp_bound,
                    fmt_sig(r.yudin_raw),
                    r.yudin_bound,
                    r.delta
                );
            }
        }
        TableFormat::Json => {
            s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
        }
    }
    s
}

pub fn render_asym(field: Field, rows: &[AsymptoticRow], format: TableFormat) -> String {
    let mut s = String::new();
    match format {
        TableFormat::Json => {
            s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
        }
        TableFormat::Csv | TableFormat::Markdown => {
            let cols = [
                "m",
                "bessel_zero",
                "kappa",
                "ln_kappa",
                "ln_kappa_asymptotic",
                "log_ratio",
                "ln_lp_constant",
                "ln_yudin_constant",
                "ln_gap_factor",
            ];
            let md = format == TableFormat::Markdown;
            if md {
                let _ = writeln!(s, "Asymptotic constants for field {field}\n");
                let _ = writeln!(s, "| {} |", cols.join(" | "));
                let _ = writeln!(s, "|{}", "---:|".repeat(cols.len()));
            } else {
                let _ = writeln!(s, "{ASYM_SCHEMA} field={field}");
                let _ = writeln!(s, "{}", cols.join(","));
            }
            for r in rows {
                let cells = [
                    r.m.to_string(),
                    fmt_sig(r.bessel_zero),
                    fmt_sig(r.kappa.value),
                    fmt_sig(r.kappa.ln),
                    fmt_sig(r.kappa_asymptotic.ln),
                    fmt_sig(r.log_ratio),
                    fmt_sig(r.lp_constant.ln),
                    fmt_sig(r.yudin_constant.ln),
                    fmt_sig(r.gap_factor.ln),
                ];
                if md {
                    let _ = writeln!(s, "| {} |", cells.join(" | "));
                } else {
                    let _ = writeln!(s, "{}", cells.join(","));
                }
            }
        }
    }
    s
}

pub fn render_testfn(tf: &YudinTestFunction) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{TESTFN_SCHEMA} field={} m={} l={} k_max={} xi={} bound={}",
        tf.field,
        tf.m,
        tf.l,
        tf.k_max,
        fmt_sig(tf.xi),
        fmt_sig(tf.bound())
    );
    s.push_str("k,c_h,c_g,c_f\n");
    for row in tf.coefficient_rows() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            row.k,
            fmt_sig(row.c_h),
            fmt_sig(row.c_g),
            fmt_sig(row.c_f)
        );
    }
    s
}

pub fn render_oscillation(rows: &[OscillationRow], format: TableFormat) -> String {
    if format == TableFormat::Json {
        let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
        s.push('\n');
        return s;
    }
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let flag = |v: Option<bool>| v.map(|x| x.to_string()).unwrap_or_default();
    let cols = [
        "p",
        "delta_h",
        "delta_h_prime",
        "delta_h_second",
        "sign_law_holds",
        "delta_c",
        "delta_c_prime",
        "delta_c_prime_nondecreasing",
    ];
    let md = format == TableFormat::Markdown;
    let mut s = String::new();
    if md {
        let _ = writeln!(s, "| {} |", cols.join(" | "));
        let _ = writeln!(s, "|{}", "---:|".repeat(cols.len()));
    } else {
        let _ = writeln!(s, "{OSCILLATION_SCHEMA}");
        let _ = writeln!(s, "{}", cols.join(","));
    }
    for r in rows {
        let cells = [
            r.p.to_string(),
            r.delta_h.to_string(),
            opt(r.delta_h_prime),
            opt(r.delta_h_second),
            flag(r.sign_law_holds),
            r.delta_c.to_string(),
            opt(r.delta_c_prime),
            flag(r.delta_c_prime_nondecreasing),
        ];
        if md {
            let _ = writeln!(s, "| {} |", cells.join(" | "));
        } else {
            let _ = writeln!(s, "{}", cells.join(","));
        }
    }
    s
}

pub fn render_verification(report: &VerificationReport, format: ReportFormat, verbose: bool) -> String {
    if format == ReportFormat::Json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        return s;
    }
    if format == ReportFormat::Csv {
        let mut s = String::from("k,moment\n");
        for (k, v) in report.moments.iter().enumerate() {
            let _ = writeln!(s, "{},{}", k + 1, fmt_sig(*v));
        }
        return s;
    }
    let mut s = String::new();
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "result       {verdict}");
    let _ = writeln!(s, "field        {}", report.field);
    let _ = writeln!(s, "m            {}", report.m);
    let _ = writeln!(s, "p            {}", report.p);
    let _ = writeln!(s, "n            {}", report.n);
    let _ = writeln!(s, "max|M_k|     {}", fmt_sig(report.max_abs_moment));
    let _ = writeln!(s, "tol          {}", fmt_sig(report.tol));
    let _ = writeln!(s, "lp_bound     {}", report.lp_bound);
    let _ = writeln!(s, "yudin_bound  {}", report.yudin_bound);
    let _ = writeln!(s, "tight_lp     {}", report.tight_lp);
    let _ = writeln!(s, "tight_yudin  {}", report.tight_yudin);
    if !report.nonnegative {
        let _ = writeln!(s, "warning      some M_k is negative beyond rounding");
    }
    for (i, j) in &report.duplicate_pairs {
        let _ = writeln!(s, "warning      nodes {i} and {j} are not projectively distinct");
    }
    if verbose {
        let _ = writeln!(
            s,
            "note         M_k = sum_ij rho_i rho_j P_k(x_i x_j); the weights rho_i play the role of e_i in the design condition"
        );
        for (k, v) in report.moments.iter().enumerate() {
            let _ = writeln!(s, "M_{:<10} {}", k + 1, fmt_sig(*v));
        }
    }
    s
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn check_even_p(p: usize) -> Result<(), Error> {
    if p < 2 || !p.is_multiple_of(2) {
        return Err(Error::Parameter(format!("p must be an even integer >= 2, got {p}")));
    }
    Ok(())
}

/// Runs one parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn execute(command: Command) -> Result<i32, Error> {
    match command {
        Command::Bound { field, m, p, format, verbose } => {
            check_even_p(p)?;
            let report = yudin_bound(field.into(), m, p)?;
            emit(None, &render_bound(&report, format, verbose))?;
            Ok(EXIT_OK)
        }
        Command::Table { field, m, p_min, p_max, out, format } => {
            if p_min > p_max {
                return Err(Error::Parameter(format!("empty range: p_min {p_min} > p_max {p_max}")));
            }
            let field = Field::from(field);
            let rows = table_rows(field, m, p_min, p_max)?;
            emit(out.as_deref(), &render_table(field, m, &rows, format))?;
            Ok(EXIT_OK)
        }
        Command::Verify { file, tol, format, verbose } => {
            let (ps, p) = PointSetFile::read(&file)?.into_point_set()?;
            let tol = tol.unwrap_or_else(|| default_tolerance(ps.len()));
            let report = verify(&ps, p, tol)?;
            emit(None, &render_verification(&report, format, verbose))?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Asym { field, m_min, m_max, out, format } => {
            if m_min < 2 || m_min > m_max {
                return Err(Error::Parameter(format!("invalid m range [{m_min}, {m_max}]")));
            }
            let field = Field::from(field);
            let ms: Vec<usize> = (m_min..=m_max).collect();
            let rows = asymptotic_report(field, &ms)?;
            emit(out.as_deref(), &render_asym(field, &rows, format))?;
            Ok(EXIT_OK)
        }
        Command::Testfn { field, m, l, kmax, out } => {
            let tf = build_test_function(field.into(), m, l, kmax)?;
            emit(out.as_deref(), &render_testfn(&tf))?;
            Ok(EXIT_OK)
        }
        Command::Oscillation { p_max, out, format } => {
            let rows = oscillation_report(p_max)?;
            emit(out.as_deref(), &render_oscillation(&rows, format))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` and runs the command. Usage errors exit with code 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    run(cli)
}
