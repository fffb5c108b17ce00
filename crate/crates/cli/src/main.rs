//! `dynnikov`: command-line access to Dynnikov coordinates on braid and
//! virtual braid groups.
//!
//! Exit status is 0 on success, 1 on invalid input and 2 when a verification
//! (diagram check or certificate) fails.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dynnikov::diagram::{certify_nontrivial_from, verify_diagram, Certificate};
use dynnikov::hunt::{hunt_with_workers, moved_fraction, HuntConfig};
use dynnikov::word_problem::{are_equal_bn, are_equal_vb2, distinguish_vbn, DEFAULT_BATTERY};
use dynnikov::{BraidWord, Coordinates};

#[derive(Parser)]
#[command(name = "dynnikov", version, about = "Dynnikov coordinates on braid and virtual braid groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Bn,
    Vb2,
    Vbn,
}

#[derive(Subcommand)]
enum Command {
    /// Act on a vector by a word and print the result as CSV.
    Act {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated integers, or `base` for (0,1,…,0,1).
        #[arg(long, default_value = "base", allow_hyphen_values = true)]
        vector: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether two words are equal.
    Eq {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        /// Random vectors tried for `vbn`; requires --seed.
        #[arg(long)]
        battery: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the permutation of a word in one-line notation.
    Perm {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Print the free reduction of a word.
    Reduce {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Search random words for ones acting trivially.
    Hunt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        min_length: usize,
        #[arg(long)]
        max_length: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        battery: usize,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        /// First-filter vector; defaults to (0,1,…,0,1).
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// JSON report destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write base fixers as JSON lines.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Fraction of random vectors a word moves.
    MovedFraction {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(long)]
        seed: u64,
    },
    /// Check every arrow of the VB_2 diagram and its closure.
    VerifyDiagram {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Certify that a VB_2 word is nontrivial.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Start vector (0,x,0,y) with x ≠ y positive.
        #[arg(long, default_value = "0,2,0,1")]
        vector: String,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn verification(message: String) -> Failure {
    Failure { code: 2, message }
}

fn word(text: &str, n: Option<usize>) -> Result<BraidWord, Failure> {
    BraidWord::parse(text, n).map_err(invalid)
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Act { n, vector, word: text } => {
            let n = match n {
                Some(n) => Some(n),
                None if vector.trim() != "base" => Some(Coordinates::parse(&vector, None).map_err(invalid)?.strands()),
                None => None,
            };
            let w = word(&text, n)?;
            let v = Coordinates::parse(&vector, Some(w.strands())).map_err(invalid)?;
            writeln!(out, "{}", v.act_word(&w).map_err(invalid)?).unwrap();
        }
        Command::Eq { group, n, w1, w2, battery, seed } => {
            if battery.is_some() && seed.is_none() {
                return Err(invalid("--battery needs an explicit --seed"));
            }
            let n = n.or(match group {
                Group::Vb2 => Some(2),
                _ => None,
            });
            let (mut a, mut b) = (word(&w1, n)?, word(&w2, n)?);
            if n.is_none() {
                // inferred strand counts may differ; use the larger
                let m = a.strands().max(b.strands());
                a = word(&w1, Some(m))?;
                b = word(&w2, Some(m))?;
            }
            let verdict = match group {
                Group::Bn => are_equal_bn(&a, &b),
                Group::Vb2 => are_equal_vb2(&a, &b),
                Group::Vbn => {
                    // without a seed only the deterministic checks run
                    let size = if seed.is_some() { battery.unwrap_or(DEFAULT_BATTERY) } else { 0 };
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
                    distinguish_vbn(&a, &b, size, &mut rng)
                }
            }
            .map_err(invalid)?;
            writeln!(out, "{}", verdict.status).unwrap();
            if let Some(w) = verdict.witness {
                writeln!(out, "witness: {w}").unwrap();
            }
        }
        Command::Perm { n, word: text } => {
            writeln!(out, "{}", word(&text, n)?.permutation()).unwrap();
        }
        Command::Reduce { n, word: text } => {
            writeln!(out, "{}", word(&text, n)?.free_reduce()).unwrap();
        }
        Command::Hunt { n, min_length, max_length, count, seed, battery, bound, base, workers, out: path, jsonl } => {
            let base_vector = match base {
                None => None,
                Some(text) => {
                    let v = Coordinates::parse(&text, Some(n)).map_err(invalid)?;
                    Some(v.to_i64().ok_or_else(|| invalid("base vector entries must fit in 64 bits"))?)
                }
            };
            let config = HuntConfig {
                strands: n,
                min_length,
                max_length,
                word_count: count,
                seed,
                battery_size: battery,
                coefficient_bound: bound,
                base_vector,
            };
            config.validate().map_err(invalid)?;
            let report = hunt_with_workers(&config, workers).map_err(invalid)?;
            let json = report.to_json();
            match path {
                Some(p) => {
                    fs::write(&p, json + "\n").map_err(|e| invalid(format!("{}: {e}", p.display())))?;
                    writeln!(
                        out,
                        "words tested: {}\nbase fixers: {}\ncertified trivial: {}\npotential counterexamples: {}",
                        report.words_tested,
                        report.base_fixers.len(),
                        report.certified_trivial.len(),
                        report.potential_counterexamples.len()
                    )
                    .unwrap();
                }
                None => writeln!(out, "{json}").unwrap(),
            }
            if let Some(p) = jsonl {
                fs::write(&p, report.base_fixers_jsonl()).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
            }
        }
        Command::MovedFraction { n, word: text, samples, bound, seed } => {
            if samples == 0 || bound < 1 {
                return Err(invalid("--samples and --bound must be positive"));
            }
            let w = word(&text, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mf = moved_fraction(&w, samples, bound, &mut rng);
            writeln!(out, "{}", mf.value()).unwrap();
        }
        Command::VerifyDiagram { samples, seed, json } => {
            if samples == 0 {
                return Err(invalid("--samples must be positive"));
            }
            let report = verify_diagram(samples, seed);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes")).unwrap();
            } else {
                for a in &report.arrows {
                    let status = if a.passed() { "ok" } else { "FAIL" };
                    writeln!(out, "{status:4} {:24} samples={} boundary={}", a.arrow, a.samples, a.boundary_samples)
                        .unwrap();
                    if let Some(cx) = &a.first_counterexample {
                        writeln!(out, "     counterexample ({}) -> ({}): {}", cx.input, cx.image, cx.reason).unwrap();
                    }
                }
                let closure = if report.closure.closed() { "ok" } else { "FAIL" };
                writeln!(out, "{closure:4} closure ({} pairs)", report.closure.pairs_checked).unwrap();
                for m in &report.closure.missing {
                    writeln!(out, "     missing {} out of {} (after {})", m.generator, m.at, m.reached_by).unwrap();
                }
                let nc = &report.negative_control;
                writeln!(
                    out,
                    "{:4} norm control ({})·s = ({}): {} -> {}",
                    if nc.confirmed() { "ok" } else { "FAIL" },
                    nc.input,
                    nc.image,
                    nc.norm_before,
                    nc.norm_after
                )
                .unwrap();
            }
            if !report.passed() {
                return Err(Failure { code: 2, message: out });
            }
        }
        Command::Certify { word: text, vector, json } => {
            let w = word(&text, Some(2))?;
            let v = Coordinates::parse(&vector, Some(2)).map_err(invalid)?;
            let start = v.quad_at(1);
            let cert = certify_nontrivial_from(&w, &start).map_err(invalid)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&cert).expect("certificate serializes")).unwrap();
            }
            match &cert {
                Certificate::Trivial => {
                    if !json {
                        writeln!(out, "trivial").unwrap();
                    }
                }
                Certificate::Nontrivial { image, path, .. } => {
                    if !json {
                        let path: Vec<String> = path.iter().map(|b| b.to_string()).collect();
                        let norms: Vec<String> = cert.norms().iter().map(|x| x.to_string()).collect();
                        writeln!(out, "nontrivial").unwrap();
                        writeln!(out, "image: {image}").unwrap();
                        writeln!(out, "path: {}", path.join(" -> ")).unwrap();
                        writeln!(out, "norms: {}", norms.join(" ")).unwrap();
                    }
                }
                Certificate::Violation { step, reason } => {
                    return Err(verification(format!("{out}diagram violation at step {step}: {reason}")));
                }
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            if code == 2 {
                print!("{message}");
                if !message.ends_with('\n') {
                    println!();
                }
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
