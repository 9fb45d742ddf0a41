//! Batch front end: build, encode, inject, decode, verify, lift, simulate.
//!
//! Exit codes: 0 success, 2 decode failed or exceeded its guarantee,
//! 3 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rankloc::codes::{CodeParams, LocalRankCode, RankCode, DEFAULT_ORACLE_BUDGET};
use rankloc::crisscross::CrisscrossDecoder;
use rankloc::formats::{self, CodeSpec};
use rankloc::gf::{from_matrix, to_matrix};
use rankloc::netsim::{run_trials, ChannelConfig, RackDecoder};
use rankloc::subspace::lift;
use rankloc::verify::{verify_code, Mode};
use rankloc::Error;

#[derive(Parser)]
#[command(name = "rankloc", about = "Rank-metric codes with rank-locality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Exact,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Print the code summary.
    Build {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Encode a message file into a codeword file.
    Encode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply an erasure/error pattern to a codeword file.
    Inject {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        codeword: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Error values for the `E` cells, row-major.
        #[arg(long)]
        errors: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover a codeword from a received file.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        received: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check distance and locality.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: VerifyMode,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write the lifted subspace of a codeword file.
    Lift {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        codeword: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Download one rack over a noisy network, repeatedly.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        rack: usize,
        #[arg(long, default_value_t = 0)]
        rho: usize,
        #[arg(long, default_value_t = 0)]
        terr: usize,
        /// Packets collected; defaults to r + delta - 1.
        #[arg(long)]
        collect: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Links carrying error packets; defaults to max(r + delta - 1, terr).
        #[arg(long)]
        links: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u128,
    },
}

enum Failure {
    Decode(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn load_spec(path: &Path) -> Result<(CodeSpec, LocalRankCode), Failure> {
    let spec = CodeSpec::parse(&read(path)?)?;
    let code = spec.build()?;
    Ok((spec, code))
}

fn summary(spec: &CodeSpec, code: &LocalRankCode) -> String {
    let CodeParams { q, m, n, k, r, delta } = *code.params();
    let f = code.field();
    let mut out = format!("code: q={q} m={m} n={n} k={k} r={r} delta={delta}\n");
    out.push_str(&format!("fingerprint: {}\n", spec.fingerprint()));
    out.push_str(&format!(
        "field: GF({q}^{m}) modulus={}\n",
        spec.field
            .modulus
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(",")
    ));
    out.push_str(&format!("s={} mu={}\n", code.params().s(), code.mu()));
    out.push_str(&format!("d_bound={}\n", code.distance_bound()));
    out.push_str(&format!("local code: ({},{r}) MRD, d={delta}\n", code.params().s()));
    let exps: Vec<String> = code.exponent_map().iter().map(usize::to_string).collect();
    out.push_str(&format!("q-exponents: {}\n", exps.join(",")));
    for j in 1..=code.mu() {
        let pts: Vec<String> = code
            .group(j)
            .expect("valid group")
            .iter()
            .map(|&p| f.format(p))
            .collect();
        out.push_str(&format!("P_{j} = {{{}}}\n", pts.join(", ")));
    }
    out
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Build { spec } => {
            let (spec, code) = load_spec(&spec)?;
            print!("{}", summary(&spec, &code));
        }
        Command::Encode { spec, message, out } => {
            let (spec, code) = load_spec(&spec)?;
            let msg = formats::parse_message(&read(&message)?, code.field(), code.params().k)?;
            let cw = code.encode(&msg)?;
            write_atomic(&out, &formats::format_codeword(code.field(), &spec.fingerprint(), &cw))?;
        }
        Command::Inject {
            spec,
            codeword,
            pattern,
            errors,
            out,
        } => {
            let (spec, code) = load_spec(&spec)?;
            let text = read(&codeword)?;
            formats::check_fingerprint(&text, &spec.fingerprint())?;
            let f = code.field();
            let (cw, pre) = formats::parse_array_file(&text, f, code.params().n)?;
            if !pre.is_empty() {
                return Err(Failure::Input("codeword file already has erased cells".into()));
            }
            let (erased, cells) = formats::parse_pattern(&read(&pattern)?, f.degree(), code.params().n)?;
            let sidecar = match (&errors, cells.is_empty()) {
                (Some(p), _) => read(p)?,
                (None, true) => String::new(),
                (None, false) => return Err(Failure::Input("pattern has E cells but no --errors file".into())),
            };
            let phi = formats::parse_error_values(&sidecar, f.q(), &cells, &erased)?;
            let y = cw.add(phi.values(), f.base())?;
            write_atomic(&out, &formats::format_received(f.q(), &spec.fingerprint(), &y, &erased))?;
        }
        Command::Decode { spec, received, out } => {
            let (spec, code) = load_spec(&spec)?;
            let text = read(&received)?;
            formats::check_fingerprint(&text, &spec.fingerprint())?;
            let f = code.field();
            let (y, erased) = formats::parse_array_file(&text, f, code.params().n)?;
            let decoder = CrisscrossDecoder::new(&code, &erased)?;
            let recovered = decoder.decode(&y).map_err(Failure::Decode)?;
            let cw = from_matrix(f, &recovered.codeword)?;
            write_atomic(&out, &formats::format_codeword(f, &spec.fingerprint(), &cw))?;
            let verdict = decoder.verdict();
            if verdict.global {
                println!("verdict: {verdict}");
            } else {
                let mut line: String = recovered.local.iter().map(|j| format!("LOCAL j={j} ")).collect();
                line.push_str("GLOBAL (unique completion beyond guarantee)");
                println!("verdict: {line}");
            }
            let local: Vec<String> = recovered.local.iter().map(usize::to_string).collect();
            println!(
                "repaired locally: {}",
                if local.is_empty() {
                    "none".to_string()
                } else {
                    local.join(",")
                }
            );
            println!("global pass: {}", if recovered.global { "yes" } else { "no" });
        }
        Command::Verify {
            spec,
            mode,
            budget,
            samples,
            seed,
        } => {
            let (_, code) = load_spec(&spec)?;
            let mode = match mode {
                VerifyMode::Exact => Mode::Exact { budget },
                VerifyMode::Sampled => Mode::Sampled { samples, seed },
            };
            let report = verify_code(&code, mode)?;
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Decode(Error::InvalidParams("verification failed".into())));
            }
        }
        Command::Lift { spec, codeword, out } => {
            let (spec, code) = load_spec(&spec)?;
            let text = read(&codeword)?;
            formats::check_fingerprint(&text, &spec.fingerprint())?;
            let f = code.field();
            let cw = formats::parse_codeword_elements(&text, f, code.params().n)?;
            let s = lift(&to_matrix(f, &cw));
            write_atomic(&out, &formats::format_subspace(&s, f.q(), Some(&spec.fingerprint())))?;
        }
        Command::Simulate {
            spec,
            rack,
            rho,
            terr,
            collect,
            trials,
            seed,
            links,
            budget,
        } => {
            let (_, code) = load_spec(&spec)?;
            let s = code.params().s();
            let config = ChannelConfig {
                s,
                collect: collect.unwrap_or(s),
                rho_max: rho,
                t_max: terr,
                links: links.unwrap_or(s.max(terr)),
                seed,
            };
            let decoder = RackDecoder::new(&code, rack, budget)?;
            let report = run_trials(&code, &decoder, &config, trials)?;
            println!("{report}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let version = format!(
        "{} (file format {})",
        env!("CARGO_PKG_VERSION"),
        formats::FORMAT_VERSION
    );
    let matches = match Cli::command().version(version.leak() as &'static str).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Decode(e)) => {
            println!("verdict: FAIL ({e})");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
