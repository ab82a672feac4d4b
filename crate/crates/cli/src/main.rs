//! Command-line front end for `ribet_core`.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ribet_core::bernoulli::bernoulli_number;
use ribet_core::characters::{relative_class_number, ClassNumberReport};
use ribet_core::eisenstein::{
    eis_g1_char, eis_g2_char, eis_g2_level_p, eis_gk_level1, eis_s2_char,
    verify_eisenstein_congruence,
};
use ribet_core::pipeline::{ribet_construct, scan_irregular};
use ribet_core::qseries::{QExpansion, DEFAULT_TRUNCATION};
use ribet_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "ribet",
    version,
    about = "Eisenstein congruences at irregular primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact Bernoulli number B_N.
    Bernoulli { n: usize },
    /// List irregular pairs (p, k) with p below the bound, as JSON.
    Scan {
        #[arg(long)]
        bound: u64,
    },
    /// Relative class number of Q(μ_p).
    Classnumber {
        #[arg(short)]
        p: u64,
    },
    /// Check t < (p-1)/4 and p^t | h⁻.
    Carlitz {
        #[arg(short)]
        p: u64,
    },
    /// Print an Eisenstein series as JSON.
    Series {
        kind: SeriesKind,
        #[arg(short)]
        p: u64,
        /// Index k: the character is ω^{k-2} (weight 2) or ω^{k-1} (weight 1); weight of G_k.
        #[arg(short, default_value_t = 4)]
        k: u64,
        #[arg(long, default_value_t = 20)]
        coeffs: usize,
        #[arg(long, default_value_t = 4)]
        precision: u32,
    },
    /// Run the full construction for an irregular pair.
    Construct {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        coeffs: usize,
        #[arg(long, default_value_t = 4)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a single verification.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Compare G_{2,ω^{k-2}} and G_{1,ω^{k-1}} with G_k modulo p.
    #[command(name = "lemma31")]
    Congruences {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        k: u64,
        #[arg(long, default_value_t = 100)]
        coeffs: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    #[value(name = "G2eps")]
    G2Eps,
    #[value(name = "s2eps")]
    S2Eps,
    #[value(name = "G1eps")]
    G1Eps,
    #[value(name = "Gk")]
    Gk,
    #[value(name = "G2p")]
    G2p,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Rendered output and whether every verification held.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(serde::Serialize)]
struct ClassNumberJson {
    p: u64,
    h_minus: String,
    p_part_exponent: u32,
    irregular_count: usize,
    carlitz_bound: String,
    carlitz_holds: bool,
}

fn class_number_json(r: &ClassNumberReport) -> ClassNumberJson {
    ClassNumberJson {
        p: r.p,
        h_minus: r.h_minus.to_string(),
        p_part_exponent: r.p_part_exponent,
        irregular_count: r.irregular_count,
        carlitz_bound: r.carlitz_bound.to_string(),
        carlitz_holds: r.carlitz_holds(),
    }
}

fn series(kind: SeriesKind, p: u64, k: u64, m: usize, a: u32) -> Result<QExpansion, Error> {
    let k = k as i64;
    match kind {
        SeriesKind::G2Eps => eis_g2_char(p, k - 2, m, a),
        SeriesKind::S2Eps => eis_s2_char(p, k - 2, m, a),
        SeriesKind::G1Eps => eis_g1_char(p, k - 1, m, a),
        SeriesKind::Gk => eis_gk_level1(u32::try_from(k).unwrap_or(0), m)?.embed(p, a),
        SeriesKind::G2p => eis_g2_level_p(p, m)?.embed(p, a),
    }
}

fn run(command: Command) -> Result<(Outcome, Option<PathBuf>), Error> {
    let outcome = match command {
        Command::Bernoulli { n } => Outcome::ok(bernoulli_number(n).to_string()),
        Command::Scan { bound } => Outcome::ok(pretty(&scan_irregular(bound)?)),
        Command::Classnumber { p } => {
            Outcome::ok(pretty(&class_number_json(&relative_class_number(p)?)))
        }
        Command::Carlitz { p } => {
            let report = relative_class_number(p)?;
            Outcome {
                text: pretty(&class_number_json(&report)),
                passed: report.carlitz_holds(),
            }
        }
        Command::Series {
            kind,
            p,
            k,
            coeffs,
            precision,
        } => Outcome::ok(pretty(&series(kind, p, k, coeffs, precision)?.to_json())),
        Command::Construct {
            p,
            k,
            coeffs,
            precision,
            format,
            out,
        } => {
            let report = ribet_construct(p, k, coeffs, precision)?;
            let text = match format {
                Format::Json => report.to_json_pretty(),
                Format::Text => report.to_text().trim_end().to_string(),
            };
            return Ok((
                Outcome {
                    text,
                    passed: report.overall_pass,
                },
                out,
            ));
        }
        Command::Verify {
            check: Check::Congruences { p, k, coeffs },
        } => {
            let verdict = verify_eisenstein_congruence(p, k, coeffs, 2)?;
            Outcome {
                text: pretty(&verdict),
                passed: verdict.holds(),
            }
        }
    };
    Ok((outcome, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((outcome, out)) => {
            if let Some(path) = out {
                if let Err(e) = fs::write(&path, format!("{}\n", outcome.text)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                // a closed pipe is not an error worth reporting
                let _ = writeln!(io::stdout().lock(), "{}", outcome.text);
            }
            if outcome.passed {
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
