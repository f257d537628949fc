//! Command-line front end: topology files in, code bundles out, plus
//! encoding, corruption, decoding, simulation, and exhaustive verification.
//!
//! Exit codes: 0 success, 1 domain failure (inadmissible rates, decoding
//! failure, failed verification), 2 I/O or parse error, 3 resource caps
//! exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use drs_core::{
    build, corrupt, decode, encode_all, format_word, parse_word, simulate, Construction, Error,
    FieldElement, MessagesFile, SourceMessages, TopologyFile,
};

#[derive(Parser)]
#[command(
    name = "drs",
    version,
    about = "Distributed Reed-Solomon codes for multi-source relay networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a distributed code from a topology file and report the case,
    /// dimensions, and verification results
    Construct {
        /// Topology JSON ({"field": {..}, "z", "rates", "adjacency"})
        topology: PathBuf,
        /// Write the code bundle JSON here
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print T and G in power notation (a^e)
        #[arg(long)]
        power_notation: bool,
    },
    /// Encode per-source messages into the network codeword
    Encode {
        bundle: PathBuf,
        /// Messages JSON ({"messages": [[..], [..], [..]]})
        messages: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        power_notation: bool,
    },
    /// Apply an additive error pattern to a codeword
    Corrupt {
        bundle: PathBuf,
        /// Codeword file: N space-separated field elements
        word: PathBuf,
        /// Pattern "relay:value,relay:value" with physical relay ids
        #[arg(long)]
        errors: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        power_notation: bool,
    },
    /// Decode a received word back to per-source messages
    Decode {
        bundle: PathBuf,
        word: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode, corrupt, decode, and compare against the original messages
    Roundtrip {
        bundle: PathBuf,
        messages: PathBuf,
        /// Optional pattern "relay:value,..." with physical relay ids
        #[arg(long)]
        errors: Option<String>,
    },
    /// Monte Carlo runs of the full pipeline with random errors
    Simulate {
        bundle: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Number of corrupted relays per trial; defaults to the design z
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-run the invariant suite plus exhaustive bounded-error decoding
    Verify {
        bundle: PathBuf,
        /// Message sample cap (exhaustive when the message space fits)
        #[arg(long, default_value_t = 256)]
        max_messages: u64,
        /// Refuse to run if the error-pattern count exceeds this
        #[arg(long, default_value_t = 65536)]
        max_patterns: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// Exit 1: the inputs parse but the mathematics says no.
    Domain(String),
    /// Exit 2: unreadable, unwritable, or unparseable inputs.
    Io(String),
    /// Exit 3: the requested exhaustive work exceeds the configured caps.
    Caps(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Io(_) => 2,
            Failure::Caps(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Io(m) | Failure::Caps(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_) => Failure::Io(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(f) => {
            eprintln!("error: {}", f.message());
            exit(f.code());
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_bundle(path: &Path) -> Result<Construction, Failure> {
    Ok(Construction::from_json(&read_file(path)?)?)
}

fn load_word(path: &Path, cons: &Construction) -> Result<Vec<FieldElement>, Failure> {
    parse_word(&read_file(path)?, cons).map_err(|e| Failure::Io(e.to_string()))
}

fn load_messages(path: &Path, cons: &Construction) -> Result<SourceMessages, Failure> {
    let file: MessagesFile = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Failure::Io(format!("messages JSON: {e}")))?;
    Ok(file.into_messages(cons)?)
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Parse "relay:value,relay:value" with physical relay ids into canonical
/// (position, value) pairs.
fn parse_errors(
    spec: Option<&str>,
    cons: &Construction,
) -> Result<Vec<(usize, FieldElement)>, Failure> {
    let Some(spec_str) = spec.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for part in spec_str.split(',') {
        let (relay_str, value_str) = part
            .split_once(':')
            .ok_or_else(|| Failure::Io(format!("error spec {part:?}: expected relay:value")))?;
        let relay: usize = relay_str
            .trim()
            .parse()
            .map_err(|_| Failure::Io(format!("error spec {part:?}: bad relay id")))?;
        let value = cons
            .spec()
            .parse_element(value_str)
            .map_err(|e| Failure::Io(format!("error spec {part:?}: {e}")))?;
        let position = cons
            .position_of_relay(relay)
            .ok_or_else(|| Failure::Domain(format!("relay {relay} does not exist")))?;
        out.push((position, value));
    }
    Ok(out)
}

fn matrix_lines(m: &drs_core::Matrix, cons: &Construction) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line = m
            .row(i)
            .iter()
            .map(|&e| cons.spec().format_power(e))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "{line}").unwrap();
    }
    out
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct {
            topology,
            output,
            power_notation,
        } => {
            let file: TopologyFile = serde_json::from_str(&read_file(&topology)?)
                .map_err(|e| Failure::Io(format!("topology JSON: {e}")))?;
            let (top, spec) = file.into_parts()?;
            let cons = build(&top, &spec)?;
            let code = cons.code();
            println!("case: {}", cons.case());
            println!(
                "code: [{},{},{}] over GF(2^{}) (primitive_poly {:#x})",
                code.n(),
                code.k(),
                code.distance(),
                spec.m(),
                spec.primitive_poly()
            );
            println!(
                "column_order: {}",
                cons.column_order()
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!(
                "rows: {}, rank: {}",
                cons.total_rate(),
                cons.g().rank(cons.spec())
            );
            print!("{}", cons.verify());
            if power_notation {
                print!("T:\n{}", matrix_lines(cons.t(), &cons));
                print!("G:\n{}", matrix_lines(cons.g(), &cons));
            }
            if let Some(path) = output {
                let mut json = cons.to_json();
                json.push('\n');
                fs::write(&path, json)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                eprintln!("wrote bundle to {}", path.display());
            }
            Ok(())
        }
        Command::Encode {
            bundle,
            messages,
            output,
            power_notation,
        } => {
            let cons = load_bundle(&bundle)?;
            let msgs = load_messages(&messages, &cons)?;
            let word = encode_all(&cons, &msgs);
            emit(
                output.as_deref(),
                &format!("{}\n", format_word(&word, &cons, power_notation)),
            )
        }
        Command::Corrupt {
            bundle,
            word,
            errors,
            output,
            power_notation,
        } => {
            let cons = load_bundle(&bundle)?;
            let clean = load_word(&word, &cons)?;
            let pattern = parse_errors(Some(&errors), &cons)?;
            let received = corrupt(&clean, &pattern)?;
            emit(
                output.as_deref(),
                &format!("{}\n", format_word(&received.symbols, &cons, power_notation)),
            )
        }
        Command::Decode { bundle, word, output } => {
            let cons = load_bundle(&bundle)?;
            let received = load_word(&word, &cons)?;
            let msgs = decode(&cons, &received)?;
            let mut json = serde_json::to_string_pretty(&MessagesFile::from_messages(&msgs))
                .expect("messages serialize");
            json.push('\n');
            emit(output.as_deref(), &json)
        }
        Command::Roundtrip {
            bundle,
            messages,
            errors,
        } => {
            let cons = load_bundle(&bundle)?;
            let msgs = load_messages(&messages, &cons)?;
            let clean = encode_all(&cons, &msgs);
            let pattern = parse_errors(errors.as_deref(), &cons)?;
            let received = corrupt(&clean, &pattern)?;
            println!("codeword: {}", format_word(&clean, &cons, false));
            println!("received: {}", format_word(&received.symbols, &cons, false));
            let decoded = decode(&cons, &received.symbols)?;
            let blocks = decoded
                .per_source
                .iter()
                .map(|block| format_word(block, &cons, false))
                .collect::<Vec<_>>()
                .join(" | ");
            println!("recovered: {blocks}");
            if decoded == msgs {
                println!("verdict: MATCH");
                Ok(())
            } else {
                println!("verdict: MISMATCH");
                Err(Failure::Domain("recovered messages differ from the originals".into()))
            }
        }
        Command::Simulate {
            bundle,
            trials,
            budget,
            seed,
            output,
        } => {
            let cons = load_bundle(&bundle)?;
            let budget = budget.unwrap_or_else(|| cons.code().z());
            let stats = simulate(&cons, trials, budget, seed);
            let mut json = serde_json::to_string_pretty(&stats).expect("stats serialize");
            json.push('\n');
            emit(output.as_deref(), &json)
        }
        Command::Verify {
            bundle,
            max_messages,
            max_patterns,
            seed,
        } => {
            let cons = load_bundle(&bundle)?;
            run_verify(&cons, max_messages, max_patterns, seed)
        }
    }
}

/// The invariant report plus exhaustive decoding of every error pattern of
/// weight at most z, over either the whole message space or a seeded sample.
fn run_verify(
    cons: &Construction,
    max_messages: u64,
    max_patterns: u64,
    seed: u64,
) -> Result<(), Failure> {
    let spec = cons.spec();
    let n = cons.code().n();
    let z = cons.code().z();
    let q = spec.q() as u128;

    let mut pattern_count: u128 = 0;
    for w in 0..=z {
        pattern_count += binomial(n, w) * (q - 1).pow(w as u32);
    }
    if pattern_count > max_patterns as u128 {
        return Err(Failure::Caps(format!(
            "{pattern_count} error patterns of weight <= {z} exceed --max-patterns {max_patterns}; \
             raise the cap or verify a smaller code"
        )));
    }

    let report = cons.verify();
    print!("{report}");

    let total_rate = cons.total_rate() as u32;
    let space = q.checked_pow(total_rate);
    let (messages, label): (Vec<SourceMessages>, String) = match space {
        Some(total) if total <= max_messages as u128 => {
            let all = (0..total)
                .map(|mut idx| {
                    let rows: Vec<FieldElement> = (0..total_rate)
                        .map(|_| {
                            let digit = (idx % q) as u16;
                            idx /= q;
                            FieldElement::new(digit)
                        })
                        .collect();
                    SourceMessages::from_rows(cons, &rows)
                })
                .collect();
            (all, format!("all {total} messages"))
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sampled = (0..max_messages)
                .map(|_| SourceMessages::random(cons, &mut rng))
                .collect();
            (sampled, format!("{max_messages} sampled messages (seed {seed})"))
        }
    };

    let patterns = patterns_up_to(n, z, spec.q());
    debug_assert_eq!(patterns.len() as u128, pattern_count);
    let mut sweep_pass = true;
    'sweep: for msgs in &messages {
        let clean = encode_all(cons, msgs);
        for pattern in &patterns {
            let word = corrupt(&clean, pattern).expect("generated pattern is valid");
            match decode(cons, &word.symbols) {
                Ok(decoded) if &decoded == msgs => {}
                _ => {
                    sweep_pass = false;
                    break 'sweep;
                }
            }
        }
    }
    println!(
        "decode-sweep {} {label} x {} patterns of weight <= {z}",
        if sweep_pass { "pass" } else { "FAIL" },
        patterns.len()
    );

    if report.passed() && sweep_pass {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL");
        Err(Failure::Domain("verification failed".into()))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// Every error pattern of weight 0..=z, positions ascending and 1-based.
fn patterns_up_to(n: usize, z: usize, q: u32) -> Vec<Vec<(usize, FieldElement)>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new()];
    for _ in 0..z {
        let mut next = Vec::new();
        for pattern in &frontier {
            let start = pattern.last().map_or(1, |&(p, _)| p + 1);
            for pos in start..=n {
                for value in 1..q {
                    let mut grown = pattern.clone();
                    grown.push((pos, FieldElement::new(value as u16)));
                    next.push(grown);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
