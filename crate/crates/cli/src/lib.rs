use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ffzeta::algebra::Model;
use ffzeta::padic::Base;
use ffzeta::zeta::Convention;

pub mod config;
pub mod output;
pub mod run;

use config::Format;

/// Zeta functions of divisors, Riemann-Roch spaces and heights over global
/// function fields of positive characteristic.
#[derive(Parser, Debug)]
#[command(name = "ffzeta", version)]
pub struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Compute a truncated zeta series.
    Zeta {
        kind: ZetaKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check an identity exactly; exit 1 if it fails.
    Verify {
        kind: VerifyKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Emit a table.
    Report {
        kind: ReportKind,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ZetaKind {
    Divisors,
    Rr,
    Height,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VerifyKind {
    Reduction,
    Axkatz,
    Euler,
    Interval,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ReportKind {
    Wan,
    Growth,
    Newton,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AmbientArg {
    P1,
    P2,
}

impl AmbientArg {
    pub fn model(self) -> Model {
        match self {
            AmbientArg::P1 => Model::ProjLine,
            AmbientArg::P2 => Model::ProjPlane,
        }
    }
}

fn parse_base(s: &str) -> Result<Base, String> {
    match s {
        "p" => Ok(Base::P),
        "q" => Ok(Base::Q),
        _ => Err(format!("expected `p` or `q`, got `{s}`")),
    }
}

/// Flags shared by every command. Each overrides the matching config key.
#[derive(Args, Debug, Default)]
pub struct Opts {
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub ambient: Option<AmbientArg>,
    /// Field order; alternatively --p and --r.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub dmax: Option<usize>,
    /// Projective dimension for `report wan`.
    #[arg(long)]
    pub n: Option<usize>,
    /// For example "affine:2:y1*y2 - 1" or "projective:1:y0*y1".
    #[arg(long)]
    pub variety: Option<String>,
    #[arg(long)]
    pub convention: Option<Convention>,
    /// Matrix rows separated by `;`, entries by `,`.
    #[arg(long)]
    pub twist: Option<String>,
    /// Permutation of 0..=n, comma separated.
    #[arg(long)]
    pub sigma: Option<String>,
    /// For example "[(inf, 1), (t + 1, 2)]".
    #[arg(long)]
    pub divisor: Option<String>,
    /// Integer coefficients for `report newton`, comma separated.
    #[arg(long)]
    pub series: Option<String>,
    #[arg(long, value_parser = parse_base)]
    pub base: Option<Base>,
    /// Relative deviation bound for `report wan`, e.g. 1/100.
    #[arg(long)]
    pub tolerance: Option<String>,
    /// First d of the decreasing-deviation window for `report wan`.
    #[arg(long)]
    pub from_d: Option<usize>,
    #[arg(long)]
    pub max_divisors: Option<u64>,
    #[arg(long)]
    pub max_tuples: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code: 0 ok, 1 verification failed, 2 bad configuration, 3 cap exceeded,
/// 4 internal error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let (command, opts) = match &cli.group {
        Group::Zeta { kind, opts } => (run::Command::Zeta(*kind), opts),
        Group::Verify { kind, opts } => (run::Command::Verify(*kind), opts),
        Group::Report { kind, opts } => (run::Command::Report(*kind), opts),
    };
    let settings = match config::resolve(opts) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let report = match run::execute(command, &settings) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = output::emit(&report, &settings, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if report.passed == Some(false) {
        let _ = writeln!(stderr, "verification failed");
        return 1;
    }
    0
}

#[cfg(test)]
mod tests;
