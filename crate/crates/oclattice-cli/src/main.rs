//! `oclattice` — congruence lattices of quotient G-sets for finitely
//! presented overcommutative semigroup varieties.
//!
//! Subcommands either inspect one content class (`words`, `phi`, `con`)
//! or one presentation as a whole (`check`, `derive`).  All output is
//! deterministic; `--json` switches every report to a machine-readable
//! form carrying the same verdicts as the text.

mod reports;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oclattice::{
    bound_params, check_criterion, congruence_lattice_capped, derivable, enumerate_words_capped,
    g_lambda, is_distributive, is_modular, least_pk, marked_power_block_swap_holds,
    phi_lambda_on, power_block_swap_holds, quotient_gset_capped, Content, EnumerationCaps, Error,
    Identity, Partition, Permutativity, Presentation, Result, Verdict,
};

use reports::{
    CheckReport, ConReport, DeriveReport, PermutativityReport, PhiReport, WordsReport,
};

/// Largest level tried when searching for the power-block swap
/// identities: level 4 would need contents beyond the enumeration cap.
const SWAP_LEVEL_MAX: u32 = 3;

#[derive(Parser)]
#[command(name = "oclattice", version, about = "Congruence lattices of quotient G-sets of overcommutative varieties")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Presentation file: one "u = v" identity per line, '#' comments.
    #[arg(long, global = true, value_name = "PATH")]
    presentation: Option<PathBuf>,

    /// Cap on the number of words enumerated per content class.
    #[arg(long, global = true, value_name = "N", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap_words: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all words of one content class.
    Words {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Partition a content class into rewrite-equivalence classes.
    Phi {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Compute the congruence lattice of the quotient of a class.
    Con {
        #[command(flatten)]
        class: ClassArgs,
        /// Cap on the number of congruences.
        #[arg(long, value_name = "N", default_value_t = 100_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        cap_congruences: u64,
    },
    /// Decide the lattice-identity classification for the presentation.
    Check {
        /// Bound on the length of the permutation-identity search.
        #[arg(long, value_name = "N", default_value_t = 6)]
        n_max: usize,
        /// Bound on the prefix/suffix level search.
        #[arg(long, value_name = "K", default_value_t = 3)]
        k_max: u32,
    },
    /// Decide whether one identity follows from the presentation.
    Derive {
        /// The identity to test, written "u = v".
        identity: String,
    },
}

#[derive(Args)]
struct ClassArgs {
    /// Content as letter:multiplicity pairs, e.g. "x:2,y:1".
    #[arg(long, value_name = "CONTENT", conflicts_with = "partition")]
    content: Option<String>,

    /// Partition, e.g. "3,2,1", expanded to the canonical content.
    #[arg(long, value_name = "PARTS")]
    partition: Option<String>,
}

impl ClassArgs {
    fn content(&self) -> Result<Content> {
        match (&self.content, &self.partition) {
            (Some(text), _) => text.parse(),
            (None, Some(text)) => Ok(Content::canonical(&text.parse()?)),
            (None, None) => Err(Error::Parse(
                "one of --content or --partition is required".to_string(),
            )),
        }
    }

    fn partition(&self) -> Result<Partition> {
        match (&self.content, &self.partition) {
            (_, Some(text)) => text.parse(),
            (Some(text), None) => Ok(text.parse::<Content>()?.partition()),
            (None, None) => Err(Error::Parse(
                "one of --content or --partition is required".to_string(),
            )),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Maps library errors onto the documented exit codes: 2 for parse
/// errors, 3 for size caps, 4 for invalid input, 5 for the lattice cap,
/// 70 for internal invariant failures.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::EmptyWord
        | Error::UnknownSymbol { .. }
        | Error::InvalidLetterIndex { .. } => 2,
        Error::SizeCapExceeded { .. }
        | Error::PatternTooLong { .. }
        | Error::DegreeCapExceeded { .. }
        | Error::WordTooShort { .. }
        | Error::AssignmentCapExceeded { .. } => 3,
        Error::UnbalancedIdentity { .. }
        | Error::NotOvercommutative { .. }
        | Error::DegreeMismatch { .. }
        | Error::LetterAbsent { .. } => 4,
        Error::LatticeCapExceeded { .. } => 5,
        _ => 70,
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let caps = EnumerationCaps {
        max_class_size: cli.cap_words,
        ..EnumerationCaps::default()
    };
    match &cli.command {
        Command::Words { class } => cmd_words(cli, &caps, class),
        Command::Phi { class } => cmd_phi(cli, &caps, class),
        Command::Con {
            class,
            cap_congruences,
        } => cmd_con(cli, &caps, class, *cap_congruences as usize),
        Command::Check { n_max, k_max } => cmd_check(cli, *n_max, *k_max),
        Command::Derive { identity } => cmd_derive(cli, identity),
    }
}

fn load_presentation(cli: &Cli) -> Result<Presentation> {
    let path = cli.presentation.as_ref().ok_or_else(|| {
        Error::Parse("--presentation <path> is required for this command".to_string())
    })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Presentation::parse_text(&text, None)
}

fn emit<T: serde::Serialize>(cli: &Cli, report: &T, text: String) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        );
    } else {
        print!("{text}");
    }
}

fn cmd_words(cli: &Cli, caps: &EnumerationCaps, class: &ClassArgs) -> Result<u8> {
    let content = class.content()?;
    let words = enumerate_words_capped(&content, caps)?;
    let report = WordsReport {
        content: content.to_string(),
        count: words.len(),
        words: words.words().iter().map(|w| w.to_string()).collect(),
    };
    let text = report.render_text();
    emit(cli, &report, text);
    Ok(0)
}

fn cmd_phi(cli: &Cli, caps: &EnumerationCaps, class: &ClassArgs) -> Result<u8> {
    let sigma = load_presentation(cli)?;
    let content = class.content()?;
    let words = enumerate_words_capped(&content, caps)?;
    let phi = phi_lambda_on(&sigma, &words)?;
    let classes: Vec<Vec<String>> = phi
        .classes()
        .into_iter()
        .map(|members| members.into_iter().map(|i| words.word(i).to_string()).collect())
        .collect();
    let report = PhiReport {
        content: content.to_string(),
        class_count: phi.class_count(),
        classes,
    };
    let text = report.render_text();
    emit(cli, &report, text);
    Ok(0)
}

fn cmd_con(
    cli: &Cli,
    caps: &EnumerationCaps,
    class: &ClassArgs,
    cap_congruences: usize,
) -> Result<u8> {
    let sigma = load_presentation(cli)?;
    let partition = class.partition()?;
    let quotient = quotient_gset_capped(&sigma, &partition, caps)?;
    let lattice = congruence_lattice_capped(&quotient, cap_congruences)?;
    let report = ConReport {
        partition: partition.to_string(),
        quotient_size: quotient.size(),
        group_order: g_lambda(&partition)?.order(),
        congruence_count: lattice.size(),
        distributive: is_distributive(&lattice)?,
        modular: is_modular(&lattice)?,
        lattice: cli.json.then(|| lattice.to_export()),
    };
    let text = report.render_text();
    emit(cli, &report, text);
    Ok(0)
}

fn cmd_check(cli: &Cli, n_max: usize, k_max: u32) -> Result<u8> {
    let sigma = load_presentation(cli)?;
    let criterion = check_criterion(&sigma, n_max)?;
    let permutativity = match &criterion.permutative {
        Permutativity::Yes(witness) => {
            let (lhs, rhs) = witness.identity_words();
            PermutativityReport {
                found: true,
                n: Some(witness.n),
                witness: Some(witness.g.cycles_string()),
                identity: Some(format!("{lhs} = {rhs}")),
                searched_up_to: None,
            }
        }
        Permutativity::NoUpTo(bound) => PermutativityReport {
            found: false,
            n: None,
            witness: None,
            identity: None,
            searched_up_to: Some(*bound),
        },
    };
    let mut report = CheckReport {
        presentation: sigma.to_string(),
        permutativity,
        contains_lz: criterion.contains_lz,
        contains_rz: criterion.contains_rz,
        contains_x: criterion.contains_x,
        contains_xdual: criterion.contains_xdual,
        verdict: criterion.verdict.to_string(),
        k: None,
        n: None,
        big_n: None,
        card_bound_log2: None,
        card_bound_bits: None,
    };
    if criterion.verdict == Verdict::True {
        let k = least_pk(&sigma, k_max)?;
        let mut level = None;
        for n in 1..=SWAP_LEVEL_MAX {
            if power_block_swap_holds(&sigma, n)?
                && marked_power_block_swap_holds(&sigma, n)?
            {
                level = Some(n);
                break;
            }
        }
        if let (Some(k), Some(n)) = (k, level) {
            let bounds = bound_params(k, n);
            report.k = Some(k);
            report.n = Some(n);
            report.big_n = Some(bounds.big_n.to_string());
            report.card_bound_log2 = Some(bounds.card_bound_log2.to_string());
            report.card_bound_bits = Some(bounds.card_bound_bits().to_string());
        }
    }
    let text = report.render_text();
    emit(cli, &report, text);
    Ok(if criterion.verdict == Verdict::Unknown {
        6
    } else {
        0
    })
}

fn cmd_derive(cli: &Cli, identity: &str) -> Result<u8> {
    let sigma = load_presentation(cli)?;
    let id = Identity::parse_line(identity)?;
    if !id.is_balanced() {
        return Err(Error::UnbalancedIdentity {
            identity: id.to_string(),
        });
    }
    let report = DeriveReport {
        identity: id.to_string(),
        derivable: derivable(&sigma, id.lhs(), id.rhs())?,
    };
    let text = report.render_text();
    emit(cli, &report, text);
    Ok(if report.derivable { 0 } else { 1 })
}
