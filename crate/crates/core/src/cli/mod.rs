//! Command-line frontend. [`run`] parses arguments, runs one batch command
//! and prints its manifest; `main` only wires it to the process streams.
//!
//! Exit codes: 0 success, 1 a negative answer (word nontrivial, certificate
//! failed, quotient found, ...), 2 inconclusive or out of budget, 3 bad
//! input or arguments.

mod commands;
mod manifest;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::smallcancel::Ratio;

pub use manifest::{bigint_value, sha256_hex, Artifact, InputDigest, Manifest};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "presforge",
    version,
    about = "Constructions on finite group presentations, with checkable certificates"
)]
pub struct Cli {
    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory for produced files (and manifest.json). Without it the
    /// files are carried inline in the manifest.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Step budget for semi-decision searches.
    #[arg(
        long,
        global = true,
        env = "PRESFORGE_BUDGET_STEPS",
        default_value_t = crate::uce::DEFAULT_BUDGET
    )]
    pub budget: u64,

    /// Coset budget for enumeration.
    #[arg(
        long,
        global = true,
        env = "PRESFORGE_MAX_COSETS",
        default_value_t = 100_000
    )]
    pub max_cosets: usize,

    /// Treat the input presentation as aspherical, recording NOTE as the
    /// reason.
    #[arg(long, global = true, value_name = "NOTE")]
    pub assert_aspherical: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FibreKind {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "U", alias = "u")]
    U,
    #[value(name = "theta")]
    Theta,
    #[value(name = "theta-tilde")]
    ThetaTilde,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// First homology with generator images; second homology when the
    /// input is asserted aspherical.
    Homology { file: String },
    /// Universal central extension of a perfect presentation.
    Uce {
        file: String,
        /// Find witnesses by enumeration instead of linear algebra.
        #[arg(long)]
        search: bool,
    },
    /// Rips-Wise transform: a C'(1/6) presentation onto the input with a
    /// three-generated kernel.
    Rips { file: String },
    /// Attach a copy of Higman's group to every generator.
    Killfq { file: String },
    /// Attach Higman copies, then take the universal central extension.
    Superperfectify {
        file: String,
        #[arg(long)]
        search: bool,
    },
    /// Generating set of a fibre-product-type subgroup, with every element
    /// checked for membership.
    Fibre {
        #[arg(long, value_enum)]
        kind: FibreKind,
        file: String,
    },
    /// Conjugacy gadget for a word in the product of two free groups.
    Gadget {
        file: String,
        #[arg(long)]
        word: String,
        /// The generator `a` of the gadget; defaults to the first one.
        #[arg(long)]
        generator: Option<String>,
    },
    /// Word problem: is WORD trivial in the presented group?
    Word { file: String, word: String },
    /// Metric small-cancellation certificate.
    VerifySc {
        file: String,
        #[arg(long, default_value = "1/6")]
        lambda: Ratio,
    },
    /// Search for nontrivial homomorphisms into symmetric groups S_2..S_K.
    Homsearch {
        file: String,
        #[arg(long, env = "PRESFORGE_MAX_DEGREE", default_value_t = 6)]
        max_degree: usize,
        /// Enumerate every assignment; no class restriction or early checks.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Coset enumeration: group order, or index of a subgroup.
    Order {
        file: String,
        /// Subgroup generator (repeatable).
        #[arg(long)]
        subgroup: Vec<String>,
    },
    /// Rips group of the input, its square and the generating set of the
    /// fibre product inside it.
    BgPipeline { file: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if help { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if help { EXIT_SUCCESS } else { EXIT_INPUT };
        }
    };
    let command_line = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match commands::execute(&cli, command_line, stdin) {
        Ok(manifest) => {
            let text = match cli.format {
                Format::Json => manifest.to_json(),
                Format::Text => manifest.to_text(),
            };
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
            manifest.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
