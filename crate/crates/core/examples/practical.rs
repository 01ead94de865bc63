//! Practical and quasi-practical numbers: Stewart's criterion next to the
//! brute-force reachable-sum check.
//!
//!     cargo run --example practical -- 200

use zumkeller::classify::{is_practical, is_quasi_practical, sigma_reachability_check};
use zumkeller::{arith, factorize, SearchConfig};

fn main() -> anyhow::Result<()> {
    let to: u64 = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("100")
        .parse()?;
    let cfg = SearchConfig::default();
    let mut practical = Vec::new();
    let mut quasi_only = Vec::new();
    for n in 1..=to {
        let f = factorize(n)?;
        let p = is_practical(&f);
        assert_eq!(p, sigma_reachability_check(&f, &cfg)?, "{n}");
        if p {
            practical.push(n);
        } else if is_quasi_practical(&f, &cfg)? {
            quasi_only.push(n);
        }
    }
    println!("practical up to {to}: {practical:?}");
    let non_prime: Vec<u64> = quasi_only
        .iter()
        .copied()
        .filter(|&n| !arith::is_prime(n))
        .collect();
    println!(
        "quasi-practical but not practical: {} numbers, non-prime among them: {non_prime:?}",
        quasi_only.len()
    );
    Ok(())
}
