//! Argument parsing and the non-suite subcommands.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cliffgauge::algebra::{cayley_table, Blade, Idempotent};
use cliffgauge::error::Result as CoreResult;
use cliffgauge::frames::{conjugated_genvector, dalembertian, dirac_op};
use cliffgauge::lattice::{convergence_csv, convergence_study};
use cliffgauge::lepton::{self, LeptonGauge};
use cliffgauge::lie::GroupFlavor;
use cliffgauge::quark::{self, QuarkGauge};

use crate::config::{self, FieldConfig};
use crate::report::Report;
use crate::suites::{run_suite, Options, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChiArg {
    Minus,
    Plus,
    Unit,
}

impl From<ChiArg> for Idempotent {
    fn from(c: ChiArg) -> Self {
        match c {
            ChiArg::Minus => Idempotent::Minus,
            ChiArg::Plus => Idempotent::Plus,
            ChiArg::Unit => Idempotent::Unit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cliffgauge", version, about = "Cl(1,3) gauge-field verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Random trials per check.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides every pinned per-check tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Jet order; checks that need more raise it.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(0..=3))]
    pub order: u64,
    #[arg(long, global = true, value_enum, default_value_t = ChiArg::Minus)]
    pub chi: ChiArg,
    /// Field configuration JSON; replaces random fields in the lepton and
    /// quark suites.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall times (reports are then no longer reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Print the Cayley table of the basis blades.
    Table,
    /// Finite-difference convergence study as CSV.
    Convergence {
        /// Coarsest spacing; it is halved twice.
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        /// Grid points per axis (odd, at least 5).
        #[arg(long, default_value_t = 9)]
        n: usize,
    },
    /// Residual norms for the bundled sample configuration.
    Demo,
}

/// Observed orders outside this band fail `convergence`.
pub const ORDER_BAND: (f64, f64) = (1.8, 2.2);

#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl Cli {
    pub fn options(&self) -> Options {
        Options {
            trials: self.trials as usize,
            seed: self.seed,
            tol: self.tol,
            order: self.order as usize,
            chi: self.chi.into(),
            timings: self.timings,
        }
    }

    fn load_config(&self) -> Result<Option<FieldConfig>, UsageError> {
        match &self.config {
            Some(p) => Ok(Some(FieldConfig::from_file(p, self.chi.into())?)),
            None => Ok(None),
        }
    }

    fn config_or_sample(&self) -> Result<FieldConfig, UsageError> {
        Ok(self.load_config()?.unwrap_or_else(config::sample))
    }

    fn emit(&self, text: &str) -> Result<(), UsageError> {
        match &self.report {
            Some(p) => std::fs::write(p, text).map_err(|source| UsageError::Write { path: p.display().to_string(), source }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, UsageError> {
    if cli.tol.is_some_and(|t| !t.is_finite() || t < 0.0) {
        return Err(UsageError::Invalid("--tol must be a finite non-negative number".into()));
    }
    match &cli.command {
        Command::Verify { suite } => {
            let config = cli.load_config()?;
            let opts = cli.options();
            let records = run_suite(*suite, &opts, config.as_ref());
            let chi = config.as_ref().map_or(opts.chi, |c| c.chi);
            let report = Report::new(suite.name().into(), opts.seed, opts.trials, opts.order, chi_name(chi).into(), opts.tol, records);
            cli.emit(&match cli.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            })?;
            for r in report.records.iter().filter(|r| !r.pass) {
                eprintln!("FAIL {} ({}): max error {:?}, tolerance {:e}", r.check, r.anchor, r.max_abs_error, r.tolerance);
            }
            Ok(if report.summary.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Table => {
            cli.emit(&match cli.format {
                Format::Json => cayley_grid(),
                Format::Csv => cayley_csv(),
            })?;
            Ok(EXIT_PASS)
        }
        Command::Convergence { h, n } => {
            if !(h.is_finite() && *h > 0.0) {
                return Err(UsageError::Invalid("--h must be positive".into()));
            }
            if *n < cliffgauge::lattice::MIN_EXTENT || n % 2 == 0 {
                return Err(UsageError::Invalid(format!(
                    "--n must be odd and at least {}",
                    cliffgauge::lattice::MIN_EXTENT
                )));
            }
            let cfg = cli.config_or_sample()?;
            let (csv, ok) = convergence(&cfg, *h, *n).map_err(|e| UsageError::Invalid(e.to_string()))?;
            cli.emit(&csv)?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Demo => {
            let cfg = cli.config_or_sample()?;
            let text = demo(&cfg).map_err(|e| UsageError::Invalid(e.to_string()))?;
            cli.emit(&text)?;
            Ok(EXIT_PASS)
        }
    }
}

fn chi_name(chi: Idempotent) -> &'static str {
    match chi {
        Idempotent::Minus => "minus",
        Idempotent::Plus => "plus",
        Idempotent::Unit => "unit",
    }
}

fn signed(sign: i8, b: Blade) -> String {
    format!("{}{b}", if sign < 0 { '-' } else { '+' })
}

/// Text grid: row blade times column blade.
pub fn cayley_grid() -> String {
    let blades: Vec<Blade> = Blade::all().collect();
    let mut s = format!("{:>7}", "");
    for b in &blades {
        write!(s, "{:>7}", b.to_string()).unwrap();
    }
    s.push('\n');
    let table = cayley_table();
    for (i, a) in blades.iter().enumerate() {
        write!(s, "{:>7}", a.to_string()).unwrap();
        for &(_, _, sign, r) in &table[i * blades.len()..(i + 1) * blades.len()] {
            write!(s, "{:>7}", signed(sign, r)).unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn cayley_csv() -> String {
    let mut s = String::from("left,right,sign,product\n");
    for (a, b, sign, r) in cayley_table() {
        writeln!(s, "{a},{b},{sign},{r}").unwrap();
    }
    s
}

/// Convergence CSV over `h, h/2, h/4`; the flag is whether every observed
/// order lies in [`ORDER_BAND`].
pub fn convergence(cfg: &FieldConfig, h: f64, n: usize) -> CoreResult<(String, bool)> {
    let gauge = cfg
        .s
        .clone()
        .or_else(|| cfg.u.clone())
        .unwrap_or_else(|| cliffgauge::jet::GroupField::identity(GroupFlavor::G3));
    let rows = convergence_study(&cfg.lepton, &gauge, cfg.point, &[h, h / 2.0, h / 4.0], n)?;
    let ok = rows.iter().filter_map(|r| r.order).all(|p| (ORDER_BAND.0..=ORDER_BAND.1).contains(&p));
    Ok((convergence_csv(&rows), ok))
}

/// Residual norms and identity defects at the configuration's point.
pub fn demo(cfg: &FieldConfig) -> CoreResult<String> {
    let x = cfg.point;
    let l = cfg.lepton.jets(x, 3);
    let r = lepton::residuals(&l)?;
    let (dirac, ym_a, ym_c) = r.max_abs();
    let mut lines: Vec<(String, f64)> = vec![
        ("lepton.dirac_residual".into(), dirac),
        ("lepton.ym_a_residual".into(), ym_a),
        ("lepton.ym_c_residual".into(), ym_c),
        ("lepton.field_typing".into(), lepton::config_defect(&l)),
        ("lepton.antihermitian_identity".into(), lepton::antihermitian_identity(&l)?),
    ];
    if let Some(u) = &cfg.u {
        lines.push(("lepton.covariance_u".into(), lepton::covariance_check(&l, &LeptonGauge::U(u.jet(x, 3)))?));
    }
    if let Some(s) = &cfg.s {
        lines.push(("lepton.covariance_s".into(), lepton::covariance_check(&l, &LeptonGauge::S(s.jet(x, 3)))?));
        // reported only: the identity is not claimed for x-dependent frames
        let h = conjugated_genvector(&cfg.lepton.h, s)?.jets(x, 3);
        let twice = dirac_op(&h, &dirac_op(&h, &l.psi)?)?;
        lines.push(("frames.dirac_squared_twisted".into(), twice.max_diff(&dalembertian(&l.psi)?)));
    }
    let q = cfg.quark.jets(x, 3);
    let qr = quark::quark_residuals(&q)?;
    let m = |js: &[cliffgauge::jet::Jet<cliffgauge::algebra::Multivector>]| {
        js.iter().map(|j| j.value().max_abs()).fold(0.0, f64::max)
    };
    lines.push(("quark.dirac_residual".into(), m(&qr.dirac)));
    lines.push(("quark.ym_a_residual".into(), m(&qr.ym_a)));
    lines.push(("quark.ym_b_residual".into(), qr.ym_b.iter().map(|j| j.value().max_abs()).fold(0.0, f64::max)));
    lines.push(("quark.ym_c_residual".into(), m(&qr.ym_c)));
    lines.push(("quark.conservation_identities".into(), quark::quark_conservation_identities(&q)?.max()));
    if let Some(v) = &cfg.v {
        lines.push(("quark.covariance_v".into(), quark::quark_covariance_check(&q, &QuarkGauge::V(v.jet(x, 3)))?));
    }
    let mut s = format!("point {:?}\n", x);
    for (name, val) in lines {
        writeln!(s, "{name:<32} {val:.6e}").unwrap();
    }
    Ok(s)
}
