//! Scan a range for one predicate and stream JSONL to stdout.
//!
//!     cargo run --release --example scan -- odd_zumkeller 1 100000

use zumkeller::scan::{scan_range, write_jsonl, Predicate, ScanOptions};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let pred: Predicate = args.next().as_deref().unwrap_or("zumkeller").parse()?;
    let from: u64 = args.next().as_deref().unwrap_or("1").parse()?;
    let to: u64 = args.next().as_deref().unwrap_or("100").parse()?;

    let report = scan_range(pred, from, to, &ScanOptions::default())?;
    write_jsonl(&report, std::io::stdout().lock())?;
    eprintln!(
        "{} of {} numbers match; {} shortcut decisions, {} searches, {} chunks",
        report.match_count,
        report.range_size(),
        report.shortcuts.values().sum::<u64>(),
        report.searches,
        report.chunks.len()
    );
    Ok(())
}
