use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fsig_cli::{render, run, Command, Config, Format, Input};

/// Frobenius splitting numbers, F-signature and Hilbert-Kunz lengths of
/// graded rings over prime fields.
#[derive(Parser)]
#[command(name = "fsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Splitting numbers a_q with their stabilization traces
    Aq(Opts),
    /// F-signature sequence s_e = a_q / q^(d+alpha)
    Fsig(Opts),
    /// Hilbert-Kunz lengths and ratios
    Hk(Opts),
    /// Splitting-dimension estimate
    Sdim(Opts),
    /// Fedder's F-purity criterion
    Fpure(Opts),
    /// Glassbrenner's strong F-regularity test (needs `c`)
    Sfr(Opts),
    /// Splitting numbers of a hypersurface via (m^[q] : f^(q-1))
    #[command(name = "oracle-aq")]
    OracleAq(Opts),
    /// Big-powers containment and length bound
    Bigpowers(Opts),
    /// All criteria with a consistency verdict
    Classify(Opts),
}

#[derive(Args)]
struct Opts {
    /// Presentation file, or the name of a bundled example
    input: String,
    #[arg(long, default_value_t = 2)]
    emax: u32,
    /// Single exponent (aq, oracle-aq, bigpowers)
    #[arg(long)]
    e: Option<u32>,
    /// Family index (bigpowers)
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, default_value_t = 8)]
    tmax: u32,
    #[arg(long, default_value_t = 2)]
    window: u32,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    #[arg(long, default_value = "grevlex")]
    order: String,
    #[arg(long, default_value_t = 2_000_000)]
    term_budget: usize,
    #[arg(long, default_value = "table")]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Aq(o) => (Command::Aq, o),
        Cmd::Fsig(o) => (Command::Fsig, o),
        Cmd::Hk(o) => (Command::Hk, o),
        Cmd::Sdim(o) => (Command::Sdim, o),
        Cmd::Fpure(o) => (Command::Fpure, o),
        Cmd::Sfr(o) => (Command::Sfr, o),
        Cmd::OracleAq(o) => (Command::OracleAq, o),
        Cmd::Bigpowers(o) => (Command::BigPowers, o),
        Cmd::Classify(o) => (Command::Classify, o),
    };
    let config = Config {
        emax: opts.emax,
        e: opts.e,
        t: opts.t,
        tmax: opts.tmax,
        window: opts.window,
        epsilon: opts.epsilon,
        order: opts.order,
        term_budget: opts.term_budget,
    };
    let outcome = Input::load(&opts.input).and_then(|input| run(command, &input, &config));
    match outcome {
        Ok(outcome) => {
            let text = render(&outcome.report, opts.format);
            match &opts.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
