//! Classify a few integers, or those given on the command line.
//!
//!     cargo run --example classify -- 945 70 1575

use zumkeller::classify::classify;
use zumkeller::SearchConfig;

fn main() -> anyhow::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let ns = if args.is_empty() {
        vec![6, 36, 70, 225, 945, 1575]
    } else {
        args
    };
    let cfg = SearchConfig::default();

    println!(
        "{:>11} {:>12} {:>10} {:>6} {:>6} {:>6} {:>6}  shortcut",
        "n", "sigma", "class", "Z", "half", "prac", "quasi"
    );
    for n in ns {
        let r = classify(n, &cfg, false)?;
        println!(
            "{:>11} {:>12} {:>10} {:>6} {:>6} {:>6} {:>6}  {}",
            r.n,
            r.sigma,
            r.abundance.as_str(),
            r.zumkeller.as_str(),
            r.half_zumkeller.as_str(),
            r.practical,
            r.quasi_practical,
            r.shortcut.as_deref().unwrap_or("search")
        );
    }
    Ok(())
}
