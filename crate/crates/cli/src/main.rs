use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hopfop::hopf::{big_delta, primitive_space, reduced_big_delta, HopfOperad};
use hopfop::operad::laws::{applicable_laws, check_operad_law};
use hopfop::operad::{parse_element, Assoc, Com, LieInAs, Mag, Operad, Pois};
use hopfop::report::{CheckConfig, LawReport, Status};
use hopfop::smod::{factorial, format_element, format_hat, set_partitions};
use hopfop::verify::{run_verification, Profile, VerifyOptions};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "hopfop", version, about = "Exact checks for Hopf operads and their primitives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the operad axiom suite on one operad.
    Axioms {
        /// as, com, lie, pois or magN (N >= 2)
        operad: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the twisted coproduct of an element.
    Coproduct {
        operad: String,
        element: String,
        /// Drop the terms with an arity-0 factor.
        #[arg(long)]
        reduced: bool,
    },
    /// Print a basis of the primitive elements in arity n, or the dimensions
    /// in arities 1..=n.
    Primitives {
        operad: String,
        n: usize,
        #[arg(long)]
        dims_only: bool,
    },
    /// Run the whole verification program.
    Verify {
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Use a deliberately faulty associative operad.
        #[arg(long, hide = true)]
        tampered: bool,
    },
}

enum Named {
    As,
    Com,
    Lie,
    Pois,
    Mag(usize),
}

fn parse_operad(name: &str) -> Result<Named, String> {
    match name {
        "as" => Ok(Named::As),
        "com" => Ok(Named::Com),
        "lie" => Ok(Named::Lie),
        "pois" => Ok(Named::Pois),
        _ => match name.strip_prefix("mag").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 2 => Ok(Named::Mag(k)),
            _ => Err(format!("unknown operad {name:?} (expected as, com, lie, pois or magN with N >= 2)")),
        },
    }
}

struct Usage(String);

type Outcome = Result<ExitCode, Usage>;

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

#[derive(Serialize)]
struct AxiomsReport {
    operad: String,
    max_n: usize,
    seed: u64,
    status: Status,
    laws: Vec<LawReport>,
}

fn axioms<P: Operad>(p: &P, max_n: usize, seed: u64, json: bool) -> Outcome {
    let cfg = CheckConfig::new(max_n, seed);
    let laws: Vec<LawReport> = applicable_laws(p)
        .into_iter()
        .map(|law| check_operad_law(p, law, &cfg))
        .collect::<hopfop::Result<_>>()
        .map_err(|e| Usage(e.to_string()))?;
    let status = Status::from_ok(laws.iter().all(|r| r.status.is_pass()));
    if json {
        print_json(&AxiomsReport { operad: p.name(), max_n, seed, status, laws });
    } else {
        for r in &laws {
            print_law(r);
        }
    }
    Ok(exit_for(status))
}

fn print_law(r: &LawReport) {
    let tag = if r.status.is_pass() { "PASS" } else { "FAIL" };
    println!("{tag} {} {} arity {}..={} checked {}", r.operad, r.law, r.arity_range[0], r.arity_range[1], r.checked);
    for c in &r.counterexamples {
        println!("  counterexample: {}", c.inputs);
        println!("    lhs = {}", c.lhs);
        println!("    rhs = {}", c.rhs);
    }
}

fn exit_for(status: Status) -> ExitCode {
    if status.is_pass() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) }
}

fn coproduct<H: HopfOperad>(h: &H, element: &str, reduced: bool) -> Outcome {
    let x = parse_element(h, element).map_err(|e| Usage(e.to_string()))?;
    let d = if reduced { reduced_big_delta(h, &x) } else { big_delta(h, &x) };
    let d = d.map_err(|e| Usage(e.to_string()))?;
    println!("{}", format_hat(h, &d));
    Ok(ExitCode::SUCCESS)
}

fn primitives<H: HopfOperad>(h: &H, n: usize, dims_only: bool) -> Outcome {
    if dims_only {
        let dims: Vec<String> = (1..=n).map(|k| primitive_space(h, k).dim().to_string()).collect();
        println!("{}", dims.join(","));
    } else {
        let space = primitive_space(h, n);
        if space.basis.is_empty() {
            println!("0");
        }
        for v in &space.basis {
            println!("{}", format_element(h, v));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `sum over partitions of [k] of prod (|B| - 1)! = k!` for `k = 1..=n`.
fn print_partition_identity(n: usize) {
    for k in 1..=n {
        let sum: usize = set_partitions(k).iter().map(|bs| bs.iter().map(|b| factorial(b.len() - 1)).product::<usize>()).sum();
        let mark = if sum == factorial(k) { "ok" } else { "MISMATCH" };
        println!("n={k}: sum over partitions of prod (|B|-1)! = {sum}, n! = {} {mark}", factorial(k));
    }
}

fn not_hopf() -> Usage {
    Usage("lie has no arity-0 part, so it carries no twisted coproduct".to_string())
}

macro_rules! with_hopf {
    ($named:expr, $h:ident => $body:expr) => {
        match $named {
            Named::As => {
                let $h = Assoc::new();
                $body
            }
            Named::Com => {
                let $h = Com;
                $body
            }
            Named::Pois => {
                let $h = Pois::new();
                $body
            }
            Named::Mag(k) => {
                let $h = Mag::new(k);
                $body
            }
            Named::Lie => Err(not_hopf()),
        }
    };
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Axioms { operad, max_n, seed, json } => match parse_operad(&operad).map_err(Usage)? {
            Named::Lie => axioms(&LieInAs::new(), max_n, seed, json),
            other => with_hopf!(other, h => axioms(&h, max_n, seed, json)),
        },
        Command::Coproduct { operad, element, reduced } => {
            with_hopf!(parse_operad(&operad).map_err(Usage)?, h => coproduct(&h, &element, reduced))
        }
        Command::Primitives { operad, n, dims_only } => {
            let named = parse_operad(&operad).map_err(Usage)?;
            let is_pois = matches!(named, Named::Pois);
            let code = with_hopf!(named, h => primitives(&h, n, dims_only))?;
            if dims_only && is_pois {
                print_partition_identity(n);
            }
            Ok(code)
        }
        Command::Verify { profile, seed, json, tampered } => {
            let profile: Profile = profile.parse().map_err(|e: hopfop::Error| Usage(e.to_string()))?;
            let report = run_verification(&VerifyOptions { profile, seed, tampered });
            if json {
                print_json(&report);
            } else {
                for r in &report.records {
                    let tag = if r.status.is_pass() { "PASS" } else { "FAIL" };
                    println!(
                        "{tag} {} {} arity {}..={} checked {} ({} ms)",
                        r.operad, r.name, r.arity_range[0], r.arity_range[1], r.checked, r.elapsed_ms
                    );
                    for c in &r.counterexamples {
                        println!("  counterexample: {}", c.inputs);
                        println!("    lhs = {}", c.lhs);
                        println!("    rhs = {}", c.rhs);
                    }
                }
                let failed = report.failed().count();
                println!("{} records, {failed} failed, seed {}, profile {}", report.records.len(), seed, profile);
            }
            Ok(exit_for(report.status))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
