use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use zumkeller::classify::{self, ClassificationRecord};
use zumkeller::config::SearchConfig;
use zumkeller::properties::{self, Property};
use zumkeller::scan::{self, Predicate, ScanOptions};
use zumkeller::{construct, factorize, partition, Error, PartitionWitness};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "zumkeller",
    version,
    about = "Zumkeller and half-Zumkeller numbers: classify, certify, lift, scan"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Emit JSON (the default)
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV where a command supports it
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized restarts, in hex
    #[arg(long, global = true, value_parser = parse_hex, default_value = "C0FFEE")]
    seed: u64,
    #[arg(long, global = true, default_value_t = zumkeller::config::DEFAULT_RESTARTS)]
    restarts: u32,
    #[arg(long, global = true, default_value_t = zumkeller::config::DEFAULT_MAX_DIVISORS)]
    max_divisors: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one integer
    Classify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Attach witnesses for every yes
        #[arg(long)]
        witness: bool,
        /// Human-readable table instead of JSON
        #[arg(long)]
        table: bool,
    },
    /// Print a partition witness, or exit 1 when none exists
    Witness {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value = "zumkeller")]
        kind: Kind,
    },
    /// Check witness JSON (one object per line) from a file or `-`
    VerifyWitness { input: String },
    /// Build a witness for a larger number from a given one
    Lift {
        /// Witness JSON file or `-`
        input: String,
        #[arg(long, value_enum)]
        op: LiftOp,
        /// Prime for the coprime lift
        #[arg(long)]
        p: Option<u64>,
        /// Position of the prime (ascending, from 0) for the same-prime lift
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, default_value_t = 1)]
        l: u32,
    },
    /// Zumkeller witness for n! from the divisor chain
    Factorial {
        #[arg(value_parser = clap::value_parser!(u64).range(3..))]
        n: u64,
    },
    /// Scan a range for one predicate; JSONL records then a summary line
    Scan {
        #[arg(long, value_parser = parse_predicate)]
        predicate: Predicate,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = scan::DEFAULT_CHUNK_SIZE)]
        chunk: u64,
        /// Attach witnesses to Zumkeller and half-Zumkeller records
        #[arg(long)]
        witness: bool,
    },
    /// Run a property check and print its report
    Verify {
        #[arg(long, value_parser = parse_property)]
        property: Property,
        #[arg(long)]
        to: Option<u64>,
        /// Allow the conjecture check past 10^6 (hard limit 10^8)
        #[arg(long)]
        beyond_desk: bool,
    },
    /// Per-bucket counts and cumulative densities
    Density {
        #[arg(long)]
        to: u64,
        #[arg(long)]
        bucket: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Zumkeller,
    Half,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftOp {
    Coprime,
    SamePrime,
    Double,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let t = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(t, 16).map_err(|e| format!("bad hex seed {s:?}: {e}"))
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code for a library error: capacity is 3, everything else is a usage problem.
fn code_for(e: &Error) -> u8 {
    if e.is_capacity() {
        UNKNOWN
    } else {
        USAGE
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

fn print_table(r: &ClassificationRecord) {
    println!("n                {}", r.n);
    println!("sigma            {}", r.sigma);
    println!("abundance        {}", r.abundance);
    println!("zumkeller        {}", r.zumkeller);
    println!("half_zumkeller   {}", r.half_zumkeller);
    println!("practical        {}", r.practical);
    println!("quasi_practical  {}", r.quasi_practical);
    println!("shortcut         {}", r.shortcut.as_deref().unwrap_or("-"));
    for w in [&r.zumkeller_witness, &r.half_zumkeller_witness]
        .into_iter()
        .flatten()
    {
        println!("{:<16} {:?} | {:?}", w.kind, w.part_a, w.part_b);
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let g = &cli.global;
    let cfg = SearchConfig::default()
        .with_seed(g.seed)
        .with_restarts(g.restarts)
        .with_max_divisors(g.max_divisors);
    let mut opts = ScanOptions {
        search: cfg,
        ..ScanOptions::default()
    };
    if let Some(j) = g.jobs {
        opts = opts.with_workers(j);
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());

    match cli.cmd {
        Cmd::Classify { n, witness, table } => {
            let r = match classify::classify(n, &cfg, witness) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(code_for(&e));
                }
            };
            if table {
                print_table(&r);
            } else if g.csv {
                scan::write_csv(std::slice::from_ref(&r), &mut out)?;
            } else {
                writeln!(out, "{}", r.to_json())?;
            }
            let unknown = r.zumkeller == zumkeller::Verdict::Unknown
                || r.half_zumkeller == zumkeller::Verdict::Unknown;
            Ok(if unknown { UNKNOWN } else { OK })
        }
        Cmd::Witness { n, kind } => {
            let found = factorize(n).and_then(|f| match kind {
                Kind::Zumkeller => classify::zumkeller_witness(&f, &cfg),
                Kind::Half => classify::half_zumkeller_witness(&f, &cfg),
            });
            match found {
                Ok(Some(w)) => {
                    writeln!(out, "{}", w.to_json())?;
                    Ok(OK)
                }
                Ok(None) => {
                    eprintln!("no witness exists for {n}");
                    Ok(FAILED)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(code_for(&e))
                }
            }
        }
        Cmd::VerifyWitness { input } => {
            let text = read_input(&input)?;
            let mut all_ok = true;
            let mut seen = 0;
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                seen += 1;
                let verdict = PartitionWitness::from_json(line).and_then(|w| {
                    partition::check_witness(&w)?;
                    Ok(w.n)
                });
                match verdict {
                    Ok(n) => writeln!(out, "{{\"n\":{n},\"valid\":true}}")?,
                    Err(e) => {
                        all_ok = false;
                        writeln!(
                            out,
                            "{}",
                            serde_json::json!({"valid": false, "reason": e.to_string()})
                        )?;
                    }
                }
            }
            if seen == 0 {
                eprintln!("no witness on input");
                return Ok(USAGE);
            }
            Ok(if all_ok { OK } else { FAILED })
        }
        Cmd::Lift {
            input,
            op,
            p,
            index,
            l,
        } => {
            let text = read_input(&input)?;
            let w = match PartitionWitness::from_json(text.trim()) {
                Ok(w) => w,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(USAGE);
                }
            };
            let lifted = match op {
                LiftOp::Coprime => match p {
                    Some(p) => construct::lift_coprime_prime_power(&w, p, l),
                    None => Err(Error::domain("--p is required for the coprime lift")),
                },
                LiftOp::SamePrime => match index {
                    Some(i) => construct::lift_same_prime(&w, i, l),
                    None => Err(Error::domain("--index is required for the same-prime lift")),
                },
                LiftOp::Double => construct::double_to_half(&w),
            };
            match lifted {
                Ok(w) => {
                    writeln!(out, "{}", w.to_json())?;
                    Ok(OK)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(code_for(&e))
                }
            }
        }
        Cmd::Factorial { n } => match construct::factorial_witness(n) {
            Ok(w) => {
                writeln!(out, "{}", w.to_json())?;
                Ok(OK)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(code_for(&e))
            }
        },
        Cmd::Scan {
            predicate,
            from,
            to,
            chunk,
            witness,
        } => {
            opts.chunk_size = chunk;
            opts.witnesses = witness;
            let report = match scan::scan_range(predicate, from, to, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(code_for(&e));
                }
            };
            if g.csv {
                scan::write_csv(&report.records, &mut out)?;
            } else {
                scan::write_jsonl(&report, &mut out)?;
            }
            if !report.is_complete() {
                eprintln!(
                    "{} numbers undecided: {:?}",
                    report.unknowns.len(),
                    report.unknowns
                );
                return Ok(UNKNOWN);
            }
            Ok(OK)
        }
        Cmd::Verify {
            property,
            to,
            beyond_desk,
        } => {
            if beyond_desk {
                opts.conjecture_cap = scan::HARD_CAP;
            }
            let report = match properties::verify(property, to, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(code_for(&e));
                }
            };
            writeln!(out, "{}", report.to_json())?;
            if !report.failures.is_empty() {
                return Ok(FAILED);
            }
            if !report.unknowns.is_empty() {
                eprintln!(
                    "{} numbers undecided: {:?}",
                    report.unknowns.len(),
                    report.unknowns
                );
                return Ok(UNKNOWN);
            }
            Ok(OK)
        }
        Cmd::Density { to, bucket } => {
            let report = match scan::density_report(to, bucket, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(code_for(&e));
                }
            };
            if g.csv {
                let mut w = csv::Writer::from_writer(&mut out);
                for row in &report.rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            } else {
                for row in &report.rows {
                    writeln!(out, "{}", serde_json::to_string(row)?)?;
                }
            }
            Ok(if report.unknowns() > 0 { UNKNOWN } else { OK })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
