//! Grow witnesses without searching: coprime prime powers, repeated
//! primes, doubling into half-Zumkeller, and factorials.
//!
//!     cargo run --example lifting

use zumkeller::classify::zumkeller_witness;
use zumkeller::construct::{
    double_to_half, factorial_witness, lift_coprime_prime_power, lift_same_prime,
};
use zumkeller::{factorize, verify_witness, PartitionWitness, SearchConfig};

fn show(step: &str, w: &PartitionWitness) {
    assert!(verify_witness(w));
    println!(
        "{step:<28} n = {:<14} {:<14} {} + {} divisors",
        w.n,
        w.kind.to_string(),
        w.part_a.len(),
        w.part_b.len()
    );
}

fn main() -> anyhow::Result<()> {
    let cfg = SearchConfig::default();
    let six = zumkeller_witness(&factorize(6)?, &cfg)?.expect("6 is perfect");
    show("start", &six);

    let w = lift_coprime_prime_power(&six, 5, 1)?;
    show("times 5", &w);
    let w = lift_same_prime(&w, 0, 1)?;
    show("times 2^2 (same prime)", &w);
    let w = double_to_half(&w)?;
    show("doubled", &w);
    let w = lift_coprime_prime_power(&w, 7, 2)?;
    show("times 7^2", &w);

    let odd = zumkeller_witness(&factorize(945)?, &cfg)?.expect("945 is Zumkeller");
    show("start", &odd);
    let w = lift_same_prime(&odd, 0, 1)?;
    show("times 3^4 (same prime)", &w);
    show("doubled", &double_to_half(&odd)?);

    for n in [6, 10, 12, 16] {
        show(&format!("{n}!"), &factorial_witness(n)?);
    }
    Ok(())
}
