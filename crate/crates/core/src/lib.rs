//! Zumkeller numbers and their relatives.
//!
//! A positive integer is *Zumkeller* when its divisors split into two parts
//! of equal sum, and *half-Zumkeller* when its proper divisors do. This crate
//! decides both (with checkable witnesses), decides practical and
//! quasi-practical numbers, lifts witnesses to larger numbers without
//! searching, and scans ranges in parallel with deterministic output.
//!
//! ```
//! use zumkeller::{classify, SearchConfig, Verdict};
//!
//! let r = classify::classify(945, &SearchConfig::default(), true).unwrap();
//! assert_eq!(r.zumkeller, Verdict::Yes);
//! assert!(zumkeller::verify_witness(r.zumkeller_witness.as_ref().unwrap()));
//! ```

pub mod arith;
pub mod classify;
pub mod config;
pub mod construct;
pub mod error;
pub mod partition;
pub mod properties;
pub mod scan;
pub mod theory;

pub use arith::{divisors, factorize, sigma, Abundance, DivisorSet, Factorization};
pub use classify::{ClassificationRecord, Decision, Shortcut, Verdict};
pub use config::SearchConfig;
pub use error::{Error, Result};
pub use partition::{verify_witness, PartitionWitness, WitnessKind};
pub use scan::{Predicate, ScanOptions, ScanReport};
