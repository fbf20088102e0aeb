mod commands;
mod report;
mod reproduce;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "l2dz", version, about = "Level-2 double zeta values, double Eisenstein series and period polynomials")]
struct Cli {
    /// Emit the canonical JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for batch sweeps (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Relations in the formal double zeta space.
    Dzspace {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value_t = DzCheck::SumFormula)]
        check: DzCheck,
    },
    /// Exact q-expansions.
    Qexp(QexpArgs),
    /// Individual verifications.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// The matrices Q_k and the spaces W_k.
    Periodpoly {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
        level: u32,
        #[arg(long, value_enum, default_value_t = Emit::Matrix)]
        emit: Emit,
        /// Print the emitted object as CSV.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Closed formulas for Ramanujan's tau(n).
    Tau {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        formula: u8,
        #[arg(long, default_value_t = 200)]
        max_n: usize,
    },
    /// The weight 12 identities between level 1 double Eisenstein series.
    Appendix {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long, default_value_t = 100)]
        order: usize,
        #[arg(long, env = "L2DZ_DIGITS", default_value_t = 30)]
        digits: u32,
    },
    /// Dimension of the span of G^oo_{r,k-r}, r even.
    Despace {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Numerical double zeta values.
    Mzv {
        #[arg(long)]
        kind: MzvKind,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, env = "L2DZ_DIGITS", default_value_t = 30)]
        digits: u32,
    },
    /// Runs every acceptance check and prints a summary.
    ReproducePaper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DzCheck {
    SumFormula,
    PoeReduction,
    Genfun,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Matrix,
    Rank,
    Kernel,
    Basis,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MzvKind {
    Eo,
    Oe,
    Oo,
    /// Level 1, `sum_{m>n>0} m^-r n^-s`.
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesName {
    #[value(name = "G_o")]
    GO,
    #[value(name = "G_e")]
    GE,
    Full,
    CuspInf,
    Cusp0,
    Delta,
    Eo,
    Oe,
    Oo,
    Level1,
    CuspProduct,
}

#[derive(Args, Debug)]
struct QexpArgs {
    #[arg(long)]
    series: SeriesName,
    /// Weight of a single series.
    #[arg(long)]
    weight: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Also evaluate the constant term of a double series numerically.
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Both double shuffle chains, stratum by stratum.
    Theorem3 {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 40)]
        order: usize,
        #[arg(long, env = "L2DZ_DIGITS", default_value_t = 30)]
        digits: u32,
    },
    /// Generating-function identities for the imaginary strata.
    ImagLemma {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Generating-function identities for the combinatorial strata.
    CombLemma {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Double shuffle relations between numerical level-2 values.
    Prop1 {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, env = "L2DZ_DIGITS", default_value_t = 30)]
        digits: u32,
    },
    /// `sum_{r even} zeta^oo(r,k-r) = zeta^o(k)/4` numerically.
    SumFormula {
        #[arg(long)]
        weight: u32,
        #[arg(long, env = "L2DZ_DIGITS", default_value_t = 30)]
        digits: u32,
    },
    /// Parity sum identity for odd weight.
    Kmt {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, env = "L2DZ_DIGITS", default_value_t = 30)]
        digits: u32,
    },
    /// Lattice sum against the q-expansion at a point of the upper half plane.
    Lattice {
        #[arg(long)]
        kind: MzvKind,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, default_value_t = 1.0)]
        im: f64,
        #[arg(long, default_value_t = 400)]
        cutoff: u32,
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Matrix identities behind the period relations.
    GroupIdentities,
    /// Cusp forms from products of Eisenstein series.
    Cusp {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
}

fn run(cli: &Cli) -> Result<(RunReport, Option<String>), commands::CmdError> {
    use Command::*;
    let report = match &cli.command {
        Dzspace { weight, check } => commands::dzspace(*weight, *check)?,
        Qexp(a) => commands::qexp(a)?,
        Verify { what } => commands::verify(what)?,
        Periodpoly { weight, level, emit, csv } => {
            let (report, table) = commands::periodpoly(*weight, *level, *emit)?;
            return Ok((report, csv.then_some(table)));
        }
        Tau { formula, max_n } => commands::tau(*formula, *max_n)?,
        Appendix { which, order, digits } => commands::appendix(*which, *order, *digits)?,
        Despace { weight, order } => commands::despace(*weight, *order)?,
        Mzv { kind, r, s, digits } => commands::mzv(*kind, *r, *s, *digits)?,
        ReproducePaper => reproduce::reproduce()?,
    };
    Ok((report, None))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok((report, csv)) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n"
            } else {
                csv.unwrap_or_else(|| report.render_text())
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            eprintln!("wall time: {:.2}s", start.elapsed().as_secs_f64());
            if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
