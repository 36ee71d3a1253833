//! `bosonlaw`: amplitudes, suppression laws and their symmetry analysis from the command line.

mod commands;
mod occupation;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "bosonlaw", version, about = "Multiphoton amplitudes and suppression laws in small interferometers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for scans (default: available parallelism).
    #[arg(long, global = true, env = "BOSONLAW_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// |amplitude| below this counts as zero when re-verifying laws.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = positive)]
    zero_tol: f64,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be a positive number, got {s}"))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transition amplitude <out|in> by one or all methods.
    #[command(after_help = "CSV columns: method,re,im,abs")]
    Amplitude(commands::AmplitudeArgs),
    /// Beamsplitter suppression laws for one or two reflected photons.
    #[command(
        name = "laws-bs",
        after_help = "CSV columns: m1,m2,n1,n2,reflections,tau,multiplicity,amplitude,classification"
    )]
    LawsBs(commands::LawsBsArgs),
    /// Beamsplitter amplitude against tau, its zeros, counts and interlacing.
    #[command(after_help = "CSV columns: kind,n1,n1_other,tau,value\n  \
        kind=amplitude: sampled real amplitude; kind=zero: refined zero, value = |amplitude|;\n  \
        kind=count: number of zeros; kind=interlacing: value 1 if the lists of n1 and n1_other interlace")]
    Fig2(commands::Fig2Args),
    /// Zero curves of the tritter suppression functions in the (tau, theta) plane.
    #[command(
        after_help = "CSV columns: family,input,output,size_param,curve,tau,theta,residual,provenance,classification,amplitude"
    )]
    Fig3(commands::Fig3Args),
    /// Tabulated tritter roots for every row, theta column and size, each re-verified.
    #[command(after_help = "CSV columns: family,row,theta_case,size,theta,tau,amplitude,verified,source")]
    Table1(commands::Table1Args),
    /// Permutation-symmetry rows of the symmetric tritter: factorizations and predicted zeros.
    #[command(
        name = "tableB",
        alias = "table-b",
        after_help = "CSV columns: label,sigma,side,device,theta,input,output,claimed,predicted,lambda_rule,amplitude,suppressed"
    )]
    TableB(commands::TableBArgs),
    /// Whether a suppressed transition follows from a permutation symmetry.
    #[command(after_help = "CSV columns: classification,sigma,side,phase_re,phase_im")]
    Classify(commands::ClassifyArgs),
    /// Transition probability with one photon partially distinguishable.
    #[command(after_help = "CSV columns: alpha,probability,indistinguishable,distinguishable")]
    Distinguishability(commands::DistinguishabilityArgs),
}

fn run(cli: Cli) -> Result<(), String> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| format!("cannot start worker pool: {e}"))?;
    }
    let g = &cli.global;
    let text = match &cli.command {
        Command::Amplitude(a) => commands::amplitude(a, g.format.unwrap_or(Format::Csv), g.zero_tol)?,
        Command::LawsBs(a) => commands::laws_bs(a, g.format.unwrap_or(Format::Csv), g.zero_tol)?,
        Command::Fig2(a) => commands::fig2(a, g.format.unwrap_or(Format::Csv), g.zero_tol)?,
        Command::Fig3(a) => commands::fig3(a, g.format.unwrap_or(Format::Csv))?,
        Command::Table1(a) => commands::table1(a, g.format.unwrap_or(Format::Json), g.zero_tol)?,
        Command::TableB(a) => commands::table_b(a, g.format.unwrap_or(Format::Json))?,
        Command::Classify(a) => commands::classify(a, g.format.unwrap_or(Format::Json), g.zero_tol)?,
        Command::Distinguishability(a) => commands::distinguishability(a, g.format.unwrap_or(Format::Csv), g.zero_tol)?,
    };
    output::emit(g.output.as_deref(), &text)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("bosonlaw: {msg}");
            ExitCode::FAILURE
        }
    }
}
