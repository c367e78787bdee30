use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

/// Heap-transform builder, qubit nesting circuit runner and copier checker.
#[derive(Debug, Parser)]
#[command(name = "nestq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rotation chain and matrix of the heap transform generated by a unit vector.
    Dsiht {
        /// Comma-separated generator amplitudes, e.g. "0.5,0.5,0.5,0.5".
        #[arg(long, conflicts_with = "generator", required_unless_present = "generator")]
        inline: Option<String>,
        /// State JSON document holding the generator.
        #[arg(long)]
        generator: Option<PathBuf>,
        /// Rescale the generator to unit length.
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        /// Write the chain and matrix JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transfer unitary carrying one state onto another.
    Transfer {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        /// Write the matrix JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the three-qubit nesting circuit and sample its measurement.
    Nest {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 1)]
        shots: u64,
        /// Required: every sampled number is reproducible from it.
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        renormalize: bool,
        /// Transcript JSON destination (stdout when omitted).
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Histogram CSV destination (stdout when omitted).
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Build a copier for (a, b) and measure how well it copies other qubits.
    Copycheck {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "hadamard")]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "hadamard")]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "d")]
        c: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "c")]
        d: Option<f64>,
        /// Use the fixed plus/minus copier instead of building one from (a, b).
        #[arg(long)]
        hadamard: bool,
        /// Sweep test qubits (cos t, sin t) over this many grid points.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every built-in numerical check and report pass/fail per line.
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Dsiht {
            inline,
            generator,
            renormalize,
            format,
            precision,
            out,
        } => commands::dsiht(inline, generator, renormalize, format, precision, out),
        Command::Transfer {
            from,
            to,
            format,
            precision,
            out,
        } => commands::transfer(&from, &to, format, precision, out),
        Command::Nest {
            a,
            b,
            shots,
            seed,
            renormalize,
            transcript,
            histogram,
        } => commands::nest(a, b, shots, seed, renormalize, transcript, histogram),
        Command::Copycheck {
            a,
            b,
            c,
            d,
            hadamard,
            sweep,
            renormalize,
            format,
            precision,
            out,
        } => commands::copycheck(commands::CopyArgs {
            source: a.zip(b),
            test: c.zip(d),
            hadamard,
            sweep,
            renormalize,
            format,
            precision,
            out,
        }),
        Command::Verify => commands::verify(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
