//! Check that every even Zumkeller number up to a bound is half-Zumkeller.
//!
//!     cargo run --release --example conjecture -- 1000000

use std::time::Instant;

use zumkeller::scan::{verify_conjecture2, ScanOptions};

fn main() -> anyhow::Result<()> {
    let to: u64 = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("100000")
        .parse()?;
    let opts = ScanOptions::default();
    let t = Instant::now();
    let r = verify_conjecture2(to, &opts)?;
    println!(
        "n <= {to}: {} even Zumkeller numbers, {} not half-Zumkeller, {} undecided ({} workers, {:.1?})",
        r.even_zumkeller,
        r.counterexamples.len(),
        r.unknowns.len(),
        opts.workers,
        t.elapsed()
    );
    for n in &r.counterexamples {
        println!("counterexample: {n}");
    }
    anyhow::ensure!(r.holds(), "check failed: {r:?}");
    Ok(())
}
