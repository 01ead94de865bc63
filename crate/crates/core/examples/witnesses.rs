//! Find partition witnesses, print them as JSON and check them again from
//! the JSON alone.
//!
//!     cargo run --example witnesses

use zumkeller::classify::{half_zumkeller_witness, zumkeller_witness};
use zumkeller::partition::check_witness;
use zumkeller::{factorize, PartitionWitness, SearchConfig};

fn main() -> anyhow::Result<()> {
    let cfg = SearchConfig::default();
    for n in [6u64, 945, 70, 350, 490, 225, 1575] {
        let f = factorize(n)?;
        for (label, w) in [
            ("zumkeller", zumkeller_witness(&f, &cfg)?),
            ("half", half_zumkeller_witness(&f, &cfg)?),
        ] {
            match w {
                Some(w) => {
                    let json = w.to_json();
                    check_witness(&PartitionWitness::from_json(&json)?)?;
                    println!("{n:>5} {label:<9} sum {:>5}  {json}", w.half_sum());
                }
                None => println!("{n:>5} {label:<9} none"),
            }
        }
    }

    // the textbook split of 225: 75 + 9 + 5 = 45 + 25 + 15 + 3 + 1
    let by_hand = PartitionWitness::from_json(
        r#"{"n":225,"kind":"half_zumkeller","part_a":[5,9,75],"part_b":[1,3,15,25,45]}"#,
    )?;
    check_witness(&by_hand)?;
    println!("hand-written witness for 225 accepted");
    Ok(())
}
