//! `euclid`: command-line front end for euclid-core.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod commands;
mod svg;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use euclid_core::Execution;

#[derive(Parser, Debug)]
#[command(
    name = "euclid",
    version,
    about = "Euclid-reduced matrices, sublattices and sails"
)]
struct Cli {
    /// Run every sweep on the current thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of reduced matrices of determinant n.
    Count {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also run the brute-force oracle and compare.
        #[arg(long)]
        brute: bool,
        /// Count only matrices with coprime entries.
        #[arg(long)]
        coprime: bool,
    },
    /// Terms 1..=n_max of the counting sequence.
    Seq {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[arg(long)]
        coprime: bool,
        #[arg(long, value_enum, default_value_t = Format::Bfile)]
        format: Format,
    },
    /// List the solutions of ab − cd = n with min(a,b) > max(c,d).
    Enumerate {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Group solutions into Klein four-group orbits.
        #[arg(long)]
        orbits: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Sublattices of ℤ² of index n as Hermite normal form triples `d a m`.
    Sublattices {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Only lattices without a central sailbasis.
        #[arg(long)]
        bad: bool,
        /// Append the sail points of each lattice.
        #[arg(long)]
        sails: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Sail of the lattice ℤ(d,0) + ℤ(a,m).
    Sail {
        d: u64,
        a: u64,
        m: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Reduce the matrix [[a,b],[c,d]] by elementary subtractions.
    Reduce {
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        /// Print every run of moves.
        #[arg(long)]
        trace: bool,
        /// Print every reduced matrix reachable by some order of moves.
        #[arg(long)]
        all_normal_forms: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Gaussian-integer solutions of ab + cd = z.
    Gauss {
        #[command(subcommand)]
        command: GaussCommand,
    },
    /// Cross-check every closed form against its oracle up to n_max.
    Verify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Replace the reduced-count formula by an off-by-one variant.
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum GaussCommand {
    /// Solutions with every real and imaginary part bounded by B.
    Search(GaussSearch),
    /// Check the odd and even identity families.
    Identities {
        #[arg(long)]
        m_max: i64,
        #[arg(long)]
        n_max: i64,
    },
}

#[derive(Args, Debug)]
struct GaussSearch {
    #[arg(allow_negative_numbers = true)]
    re: i64,
    #[arg(allow_negative_numbers = true)]
    im: i64,
    #[arg(long)]
    bound: u64,
    /// One solution per orbit of the swaps a↔b, c↔d.
    #[arg(long)]
    canonical: bool,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
    Bfile,
    Svg,
}

/// Text to print and whether every check it reports passed.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

/// Anything that is the caller's fault: bad arguments or inputs the library
/// rejects.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<euclid_core::Error> for UsageError {
    fn from(e: euclid_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub type CmdResult = Result<Output, UsageError>;

fn dispatch(cli: Cli) -> CmdResult {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Count { n, brute, coprime } => commands::count(n, brute, coprime, exec),
        Command::Seq {
            n_max,
            coprime,
            format,
        } => commands::seq(n_max, coprime, format, exec),
        Command::Enumerate { n, orbits, format } => commands::enumerate(n, orbits, format, exec),
        Command::Sublattices {
            n,
            bad,
            sails,
            format,
        } => commands::sublattices(n, bad, sails, format, exec),
        Command::Sail { d, a, m, format } => commands::sail(d, a, m, format),
        Command::Reduce {
            a,
            b,
            c,
            d,
            trace,
            all_normal_forms,
            format,
        } => commands::reduce([a, b, c, d], trace, all_normal_forms, format),
        Command::Gauss {
            command: GaussCommand::Search(s),
        } => commands::gauss_search(s.re, s.im, s.bound, s.canonical, s.format, exec),
        Command::Gauss {
            command: GaussCommand::Identities { m_max, n_max },
        } => commands::gauss_identities(m_max, n_max, exec),
        Command::Verify {
            n_max,
            inject_fault,
            format,
        } => commands::verify(n_max, inject_fault, format, exec),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            match stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Ok(()) => {}
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("euclid: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("euclid: {msg}");
            ExitCode::from(2)
        }
    }
}
