//! Counts and cumulative densities of abundant, Zumkeller and
//! half-Zumkeller numbers.
//!
//!     cargo run --release --example density -- 1000000 100000

use zumkeller::scan::{density_report, ScanOptions};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let to: u64 = args.next().as_deref().unwrap_or("100000").parse()?;
    let bucket: u64 = args.next().as_deref().unwrap_or("10000").parse()?;
    let r = density_report(to, bucket, &ScanOptions::default())?;
    println!(
        "{:>10} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "end", "abund", "Z", "half", "d(abund)", "d(Z)", "d(half)"
    );
    for row in &r.rows {
        println!(
            "{:>10} {:>9} {:>9} {:>9} {:>9.5} {:>9.5} {:>9.5}",
            row.end,
            row.abundant,
            row.zumkeller,
            row.half_zumkeller,
            row.cumulative_abundant,
            row.cumulative_zumkeller,
            row.cumulative_half_zumkeller
        );
    }
    Ok(())
}
