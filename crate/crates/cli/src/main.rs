use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use signbase::families::OracleAgreement;
use signbase::report::render_text;
use signbase::*;

#[derive(Parser)]
#[command(
    name = "signbase",
    version,
    about = "Bases and multiexponents of signed digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a signed digraph.
    Analyze {
        file: PathBuf,
        /// Restrict the bounds section to this k.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// kth upper base L(S,k).
    UpperBase {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// kth upper multiexponent F(D,k) of the underlying digraph.
    Multiexponent {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write a member of an extremal family as .sdg.
    Generate {
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "canonical")]
        policy: PolicyArg,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite over a range of orders.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Frobenius number of a generator set.
    Frobenius {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
    },
    /// Walk signs between two vertices by brute-force enumeration.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    D1,
    D2,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    AllPositive,
    Canonical,
    SameSign,
    DifferentSign,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    ClosedForms,
    Gap,
    Oracle,
}

enum Failure {
    Lib(Error),
    Usage(String),
    /// A check that should hold did not.
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_sdg(path: &Path) -> std::result::Result<SignedDigraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_sdg(&text).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure::Usage(format!("{}:{line}:{column}: {message}", path.display())),
        other => Failure::Lib(other),
    })
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file, k, json } => {
            let s = read_sdg(&file)?;
            let doc = analyze(&s, k)?;
            if json {
                print!("{}", doc.to_json());
            } else {
                print!("{}", render_text(&doc));
            }
            if !doc.audit_passed() {
                return Err(Failure::Violation("report self-audit failed".into()));
            }
        }
        Command::UpperBase { file, k, json } => {
            let s = read_sdg(&file)?;
            let e = kth_upper_base(&s, k)?;
            if json {
                print_json(&e);
            } else {
                println!("{}", e.value);
            }
        }
        Command::Multiexponent { file, k, json } => {
            let s = read_sdg(&file)?;
            let e = upper_multiexponent(&s.underlying(), k)?;
            if json {
                print_json(&e);
            } else {
                println!("{}", e.value);
            }
        }
        Command::Generate {
            family,
            n,
            policy,
            out,
        } => {
            let policy = match policy {
                PolicyArg::AllPositive => SignPolicy::AllPositive,
                PolicyArg::Canonical => SignPolicy::CanonicalNonpowerful,
                PolicyArg::SameSign => SignPolicy::SameSignNm1,
                PolicyArg::DifferentSign => SignPolicy::DifferentSignNm1,
            };
            let s = match family {
                FamilyArg::D1 => build_d1(n, &policy)?,
                FamilyArg::D2 => build_d2(n, &policy)?,
            };
            let text = serialize_sdg(&s);
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Verify {
            suite,
            n_min,
            n_max,
            samples,
            seed,
            json,
        } => {
            if n_min > n_max {
                return Err(Failure::Usage(format!(
                    "--n-min {n_min} exceeds --n-max {n_max}"
                )));
            }
            let failed = match suite {
                Suite::ClosedForms => {
                    report_outcomes(verify_closed_forms(n_min..=n_max, &KMode::All)?, json)
                }
                Suite::Gap => {
                    let mut all = Vec::new();
                    for n in n_min..=n_max {
                        for k in KMode::Only(vec![1, 2, 0]).values(n) {
                            all.extend(verify_third_bound_and_gap(n, k, samples, seed, &[])?);
                        }
                    }
                    report_outcomes(all, json)
                }
                Suite::Oracle => {
                    let runs: Vec<OracleAgreement> = (n_min..=n_max)
                        .map(|n| verify_oracle_agreement(n, samples, seed, 8))
                        .collect::<Result<_>>()?;
                    report_oracle(&runs, json)
                }
            };
            if failed > 0 {
                return Err(Failure::Violation(format!(
                    "{failed} verification check(s) failed"
                )));
            }
        }
        Command::Frobenius { gens } => {
            let basis = FrobeniusBasis::new(&gens)?;
            println!("{}", frobenius_number(&basis));
        }
        Command::Oracle {
            file,
            from,
            to,
            len,
            json,
        } => {
            let s = read_sdg(&file)?;
            let (pos, neg) = signbase::oracle::enumerate_signs(&s, from, to, len)?;
            let (np, nn) = signbase::oracle::count_walks(&s, from, to, len)?;
            let engine = s.pattern().power(len).get(from, to);
            if json {
                print_json(&json!({
                    "from": from,
                    "to": to,
                    "length": len,
                    "positive_walks": np,
                    "negative_walks": nn,
                    "sssd_pair": pos && neg,
                    "engine_entry": engine,
                }));
            } else {
                println!("walks of length {len} from {from} to {to}: {np} positive, {nn} negative");
                println!("sssd pair: {}", if pos && neg { "yes" } else { "no" });
                println!("engine entry: {}", engine.symbol());
            }
            let agrees = match engine {
                GenSign::Zero => !pos && !neg,
                GenSign::Pos => pos && !neg,
                GenSign::Neg => !pos && neg,
                GenSign::Amb => pos && neg,
            };
            if !agrees {
                return Err(Failure::Violation("engine and walk oracle disagree".into()));
            }
        }
    }
    Ok(())
}

fn report_outcomes(outcomes: Vec<VerificationOutcome>, json: bool) -> usize {
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    if json {
        print_json(&outcomes);
        return failed;
    }
    for o in &outcomes {
        println!(
            "{} {:<28} n={} k={} computed={} expected={} witness={}",
            if o.pass { "PASS" } else { "FAIL" },
            serde_json::to_value(o.claim)
                .unwrap()
                .as_str()
                .unwrap_or_default(),
            o.n,
            o.k,
            o.computed,
            describe(&o.expected),
            o.witness,
        );
    }
    println!("{} checks, {} failed", outcomes.len(), failed);
    failed
}

fn describe(e: &signbase::families::Expectation) -> String {
    use signbase::families::Expectation::*;
    match *e {
        Exact { value } => value.to_string(),
        AtMost { value } => format!("<={value}"),
        OutsideOpen { low, high } => format!("not in ({low},{high})"),
    }
}

fn report_oracle(runs: &[OracleAgreement], json: bool) -> usize {
    let failed: usize = runs.iter().map(|r| r.mismatches.len()).sum();
    if json {
        print_json(&runs);
        return failed;
    }
    for r in runs {
        println!(
            "{} oracle n={} samples={} lengths<={} entries={} mismatches={}",
            if r.pass { "PASS" } else { "FAIL" },
            r.n,
            r.samples,
            r.max_length,
            r.entries,
            r.mismatches.len()
        );
    }
    failed
}

fn configure_threads() -> std::result::Result<(), Failure> {
    let Ok(raw) = std::env::var("SIGNBASE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "SIGNBASE_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Analysis => 1,
                ErrorKind::Usage => 2,
                ErrorKind::Internal => 3,
            })
        }
    }
}
