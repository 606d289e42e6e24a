use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gdm_core::{Exec, Kind};

mod commands;

/// Galois-division multiplexing toolkit.
#[derive(Debug, Parser)]
#[command(name = "gdm", version, about)]
struct Cli {
    /// Run every batch and Monte-Carlo loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Characteristic (odd prime, at most 251).
    #[arg(short = 'p')]
    pub p: u32,
    /// Extension degree.
    #[arg(short = 'm', default_value_t = 1)]
    pub m: usize,
    /// Number of users; defaults to p^m - 1.
    #[arg(short = 'N')]
    pub n: Option<usize>,
    #[arg(long, default_value_t = Kind::Hartley)]
    pub kind: Kind,
    /// Reduction polynomial below the leading term, constant first, e.g. "1,2,0".
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct IoArgs {
    /// Input file; standard input when omitted.
    #[arg(long = "in")]
    pub input: Option<std::path::PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long = "out")]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the root of unity, coset table and efficiency figures.
    Design {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Print the cyclotomic cosets of N over GF(p).
    Cosets {
        #[arg(short = 'p')]
        p: u32,
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, default_value_t = Kind::Hartley)]
        kind: Kind,
    },
    /// Print the cas carrier table and its orthogonality.
    Carriers {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Text symbol lines in, binary frames out.
    Mux {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Binary frames in, text symbol lines out.
    Demux {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Check that one active user leaks nothing onto the others.
    Crosstalk {
        #[command(flatten)]
        sys: SystemArgs,
        /// Active user; every user in turn when omitted.
        #[arg(long)]
        user: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte-Carlo power spectral density, written as CSV.
    Psd {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Total frames, split evenly over the realizations.
        #[arg(long, default_value_t = 100_000)]
        frames: usize,
        #[arg(long, default_value_t = 100)]
        realizations: usize,
        #[arg(long, default_value_t = 1024)]
        nfft: usize,
        #[arg(long, default_value_t = 32)]
        samples_per_symbol: usize,
        /// Raised-cosine roll-off; rectangular pulses when omitted.
        #[arg(long)]
        rolloff: Option<f64>,
        /// Replace the multiplexed symbols by white Gaussian ones.
        #[arg(long)]
        white: bool,
        /// PSD CSV file; standard output when omitted.
        #[arg(long = "out")]
        output: Option<std::path::PathBuf>,
        /// Also write the Galois-domain autocorrelation CSV here.
        #[arg(long)]
        acf_out: Option<std::path::PathBuf>,
    },
    /// Check the library against known reference values.
    Selftest,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_SELFTEST: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let result = match cli.command {
        Command::Design { sys } => commands::design(&sys),
        Command::Cosets { p, n, kind } => commands::cosets(p, n, kind),
        Command::Carriers { sys } => commands::carriers(&sys),
        Command::Mux { sys, io } => commands::mux(&sys, &io, exec),
        Command::Demux { sys, io } => commands::demux(&sys, &io, exec),
        Command::Crosstalk {
            sys,
            user,
            trials,
            seed,
        } => commands::crosstalk(&sys, user, trials, seed, exec),
        Command::Psd {
            sys,
            seed,
            frames,
            realizations,
            nfft,
            samples_per_symbol,
            rolloff,
            white,
            output,
            acf_out,
        } => commands::psd(
            &sys,
            &commands::PsdArgs {
                seed,
                frames,
                realizations,
                nfft,
                samples_per_symbol,
                rolloff,
                white,
                output,
                acf_out,
            },
            exec,
        ),
        Command::Selftest => commands::selftest(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
