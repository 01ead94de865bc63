//! Parallel range scans with output in ascending `n` whatever the worker
//! count.
//!
//! A range is cut into fixed-size chunks, chunks are evaluated on a rayon
//! pool, and results are merged in chunk order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Abundance};
use crate::classify::{self, ClassificationRecord, Decision, Verdict};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Zumkeller,
    HalfZumkeller,
    Practical,
    QuasiPractical,
    OddZumkeller,
    Abundant,
}

impl Predicate {
    pub const ALL: [Predicate; 6] = [
        Predicate::Zumkeller,
        Predicate::HalfZumkeller,
        Predicate::Practical,
        Predicate::QuasiPractical,
        Predicate::OddZumkeller,
        Predicate::Abundant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Predicate::Zumkeller => "zumkeller",
            Predicate::HalfZumkeller => "half_zumkeller",
            Predicate::Practical => "practical",
            Predicate::QuasiPractical => "quasi_practical",
            Predicate::OddZumkeller => "odd_zumkeller",
            Predicate::Abundant => "abundant",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Predicate::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| Error::domain(format!("unknown predicate {s:?}")))
    }
}

pub const DEFAULT_CHUNK_SIZE: u64 = 4096;
/// Default upper bound for [`verify_conjecture2`].
pub const DESK_CAP: u64 = 1_000_000;
/// Upper bound for [`verify_conjecture2`] that no option can raise.
pub const HARD_CAP: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub workers: usize,
    pub chunk_size: u64,
    pub search: SearchConfig,
    /// Keep a [`ClassificationRecord`] for every match.
    pub records: bool,
    /// Attach witnesses to records of Zumkeller and half-Zumkeller matches.
    pub witnesses: bool,
    /// Largest `to` accepted by [`verify_conjecture2`], itself capped by [`HARD_CAP`].
    pub conjecture_cap: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            chunk_size: DEFAULT_CHUNK_SIZE,
            search: SearchConfig::default(),
            records: true,
            witnesses: false,
            conjecture_cap: DESK_CAP,
        }
    }
}

impl ScanOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// Per-chunk bookkeeping: how often a shortcut settled the predicate and
/// how often a witness search had to run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChunkStats {
    pub start: u64,
    pub end: u64,
    pub matches: u64,
    pub unknowns: u64,
    pub shortcut_hits: u64,
    pub searches: u64,
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub from: u64,
    pub to: u64,
    pub predicate: Predicate,
    pub match_count: u64,
    pub non_match_count: u64,
    /// Numbers whose predicate could not be decided within capacity.
    pub unknowns: Vec<u64>,
    pub chunk_size: u64,
    pub workers: usize,
    pub elapsed_ms: u64,
    /// Shortcut tag → number of decisions it settled.
    pub shortcuts: BTreeMap<String, u64>,
    pub searches: u64,
    #[serde(skip)]
    pub matches: Vec<u64>,
    #[serde(skip)]
    pub records: Vec<ClassificationRecord>,
    #[serde(skip)]
    pub chunks: Vec<ChunkStats>,
}

impl ScanReport {
    /// `true` when every number in range was decided.
    pub fn is_complete(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn range_size(&self) -> u64 {
        self.to - self.from + 1
    }

    /// The trailing summary line of the JSONL stream.
    pub fn summary_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

enum Outcome {
    Match,
    Miss,
    Unknown,
}

struct Evaluated {
    outcome: Outcome,
    shortcut: Option<String>,
    searched: bool,
}

impl Evaluated {
    fn plain(hit: bool) -> Self {
        Evaluated {
            outcome: if hit { Outcome::Match } else { Outcome::Miss },
            shortcut: None,
            searched: false,
        }
    }

    fn from_decision(d: Decision) -> Self {
        Evaluated {
            outcome: match d.verdict {
                Verdict::Yes => Outcome::Match,
                Verdict::No => Outcome::Miss,
                Verdict::Unknown => Outcome::Unknown,
            },
            searched: d.shortcut.is_none(),
            shortcut: d.shortcut.map(|s| s.as_str().to_string()),
        }
    }
}

fn evaluate(pred: Predicate, n: u64, cfg: &SearchConfig) -> Evaluated {
    let f = match arith::factorize(n) {
        Ok(f) => f,
        Err(_) => return Evaluated::plain(false),
    };
    match pred {
        Predicate::Zumkeller => Evaluated::from_decision(classify::is_zumkeller(&f, cfg)),
        Predicate::HalfZumkeller => Evaluated::from_decision(classify::is_half_zumkeller(&f, cfg)),
        Predicate::OddZumkeller if f.is_even() => Evaluated::plain(false),
        Predicate::OddZumkeller => Evaluated::from_decision(classify::is_zumkeller(&f, cfg)),
        Predicate::Practical => Evaluated::plain(classify::is_practical(&f)),
        Predicate::QuasiPractical => match classify::is_quasi_practical(&f, cfg) {
            Ok(b) => Evaluated::plain(b),
            Err(_) => Evaluated {
                outcome: Outcome::Unknown,
                shortcut: None,
                searched: false,
            },
        },
        Predicate::Abundant => match arith::sigma(&f) {
            Ok(s) => Evaluated::plain(Abundance::of(n, s) == Abundance::Abundant),
            Err(_) => Evaluated {
                outcome: Outcome::Unknown,
                shortcut: None,
                searched: false,
            },
        },
    }
}

struct ChunkResult {
    stats: ChunkStats,
    matches: Vec<u64>,
    unknowns: Vec<u64>,
    records: Vec<ClassificationRecord>,
    shortcuts: BTreeMap<String, u64>,
}

fn chunk_bounds(from: u64, to: u64, size: u64) -> Vec<(u64, u64)> {
    let size = size.max(1);
    let mut out = Vec::new();
    let mut start = from;
    loop {
        let end = start.saturating_add(size - 1).min(to);
        out.push((start, end));
        if end == to {
            return out;
        }
        start = end + 1;
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::capacity(format!("worker pool: {e}"), workers as u64))
}

/// Runs `f` on every chunk in parallel and returns results in chunk order.
fn map_chunks<T: Send>(
    from: u64,
    to: u64,
    opts: &ScanOptions,
    f: impl Fn(u64, u64) -> T + Sync,
) -> Result<Vec<T>> {
    let bounds = chunk_bounds(from, to, opts.chunk_size);
    let pool = pool(opts.workers)?;
    Ok(pool.install(|| bounds.par_iter().map(|&(a, b)| f(a, b)).collect()))
}

fn check_range(from: u64, to: u64) -> Result<()> {
    if from == 0 || from > to {
        return Err(Error::domain(format!(
            "invalid range [{from}, {to}]; need 1 <= from <= to"
        )));
    }
    if to > arith::MAX_N {
        return Err(Error::domain(format!("{to} exceeds {}", arith::MAX_N)));
    }
    Ok(())
}

/// Evaluates `pred` on every `n` in `[from, to]`.
pub fn scan_range(pred: Predicate, from: u64, to: u64, opts: &ScanOptions) -> Result<ScanReport> {
    check_range(from, to)?;
    let started = Instant::now();
    let cfg = &opts.search;
    let chunks = map_chunks(from, to, opts, |a, b| {
        let t = Instant::now();
        let mut r = ChunkResult {
            stats: ChunkStats {
                start: a,
                end: b,
                ..ChunkStats::default()
            },
            matches: Vec::new(),
            unknowns: Vec::new(),
            records: Vec::new(),
            shortcuts: BTreeMap::new(),
        };
        for n in a..=b {
            let e = evaluate(pred, n, cfg);
            if let Some(tag) = e.shortcut {
                r.stats.shortcut_hits += 1;
                *r.shortcuts.entry(tag).or_default() += 1;
            }
            if e.searched {
                r.stats.searches += 1;
            }
            match e.outcome {
                Outcome::Match => {
                    r.stats.matches += 1;
                    r.matches.push(n);
                    if opts.records {
                        if let Ok(rec) = classify::classify(n, cfg, opts.witnesses) {
                            r.records.push(rec);
                        }
                    }
                }
                Outcome::Unknown => {
                    r.stats.unknowns += 1;
                    r.unknowns.push(n);
                }
                Outcome::Miss => {}
            }
        }
        r.stats.elapsed_us = t.elapsed().as_micros() as u64;
        r
    })?;

    let mut report = ScanReport {
        from,
        to,
        predicate: pred,
        match_count: 0,
        non_match_count: 0,
        unknowns: Vec::new(),
        chunk_size: opts.chunk_size,
        workers: opts.workers,
        elapsed_ms: 0,
        shortcuts: BTreeMap::new(),
        searches: 0,
        matches: Vec::new(),
        records: Vec::new(),
        chunks: Vec::new(),
    };
    for c in chunks {
        report.matches.extend(c.matches);
        report.unknowns.extend(c.unknowns);
        report.records.extend(c.records);
        report.searches += c.stats.searches;
        for (k, v) in c.shortcuts {
            *report.shortcuts.entry(k).or_default() += v;
        }
        report.chunks.push(c.stats);
    }
    report.match_count = report.matches.len() as u64;
    report.non_match_count =
        report.range_size() - report.match_count - report.unknowns.len() as u64;
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// One record per line, then the summary object.
pub fn write_jsonl(report: &ScanReport, mut out: impl Write) -> std::io::Result<()> {
    for r in &report.records {
        writeln!(out, "{}", r.to_json())?;
    }
    writeln!(out, "{}", report.summary_json())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: u64,
    sigma: u64,
    abundance: Abundance,
    zumkeller: Verdict,
    half_zumkeller: Verdict,
    practical: bool,
    quasi_practical: bool,
    shortcut: Option<&'a str>,
}

/// Records as CSV with a header row; witnesses are not included.
pub fn write_csv(records: &[ClassificationRecord], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow {
            n: r.n,
            sigma: r.sigma,
            abundance: r.abundance,
            zumkeller: r.zumkeller,
            half_zumkeller: r.half_zumkeller,
            practical: r.practical,
            quasi_practical: r.quasi_practical,
            shortcut: r.shortcut.as_deref(),
        })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Conjecture2Report {
    pub to: u64,
    pub even_zumkeller: u64,
    /// Even Zumkeller numbers found not to be half-Zumkeller.
    pub counterexamples: Vec<u64>,
    /// Even numbers where either predicate came back unknown.
    pub unknowns: Vec<u64>,
    /// Counterexamples the necessary-condition prefilter rejects; any entry
    /// here contradicts the prefilter.
    pub prefilter_misses: Vec<u64>,
    /// Even Zumkeller numbers with σ(n) < 3n that the prefilter still
    /// accepts; any entry here is a prefilter bug.
    pub prefilter_sigma_conflicts: Vec<u64>,
}

impl Conjecture2Report {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
            && self.unknowns.is_empty()
            && self.prefilter_misses.is_empty()
            && self.prefilter_sigma_conflicts.is_empty()
    }
}

/// Checks that every even Zumkeller `n ≤ to` is half-Zumkeller.
pub fn verify_conjecture2(to: u64, opts: &ScanOptions) -> Result<Conjecture2Report> {
    let cap = opts.conjecture_cap.min(HARD_CAP);
    if to > cap {
        return Err(Error::capacity(format!("conjecture check up to {to}"), cap));
    }
    let mut report = Conjecture2Report {
        to,
        ..Default::default()
    };
    if to < 2 {
        return Ok(report);
    }
    let cfg = &opts.search;
    let parts = map_chunks(1, to, opts, |a, b| {
        let mut part = Conjecture2Report::default();
        for n in (a + a % 2..=b).step_by(2) {
            let Ok(f) = arith::factorize(n) else {
                part.unknowns.push(n);
                continue;
            };
            match classify::is_zumkeller(&f, cfg).verdict {
                Verdict::No => continue,
                Verdict::Unknown => {
                    part.unknowns.push(n);
                    continue;
                }
                Verdict::Yes => part.even_zumkeller += 1,
            }
            let candidate =
                theory::CounterexampleCandidate::new(&f).and_then(|c| theory::znoth_prefilter(&c));
            let sigma = arith::sigma(&f).unwrap_or(u64::MAX) as u128;
            if sigma < 3 * n as u128 && candidate != Ok(false) {
                part.prefilter_sigma_conflicts.push(n);
            }
            match classify::is_half_zumkeller(&f, cfg).verdict {
                Verdict::Yes => {}
                Verdict::Unknown => part.unknowns.push(n),
                Verdict::No => {
                    part.counterexamples.push(n);
                    if candidate != Ok(true) {
                        part.prefilter_misses.push(n);
                    }
                }
            }
        }
        part
    })?;
    for p in parts {
        report.even_zumkeller += p.even_zumkeller;
        report.counterexamples.extend(p.counterexamples);
        report.unknowns.extend(p.unknowns);
        report.prefilter_misses.extend(p.prefilter_misses);
        report
            .prefilter_sigma_conflicts
            .extend(p.prefilter_sigma_conflicts);
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DensityRow {
    pub start: u64,
    pub end: u64,
    pub abundant: u64,
    pub zumkeller: u64,
    pub half_zumkeller: u64,
    pub unknown: u64,
    pub cumulative_abundant: f64,
    pub cumulative_zumkeller: f64,
    pub cumulative_half_zumkeller: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub to: u64,
    pub bucket: u64,
    pub rows: Vec<DensityRow>,
}

impl DensityReport {
    pub fn last(&self) -> &DensityRow {
        self.rows.last().expect("at least one bucket")
    }

    pub fn unknowns(&self) -> u64 {
        self.rows.iter().map(|r| r.unknown).sum()
    }
}

/// Exact per-bucket counts of abundant, Zumkeller and half-Zumkeller
/// numbers in `[1, to]`, with cumulative densities.
pub fn density_report(to: u64, bucket: u64, opts: &ScanOptions) -> Result<DensityReport> {
    if bucket == 0 || bucket > to {
        return Err(Error::domain(format!(
            "need 1 <= bucket <= to, got bucket {bucket}, to {to}"
        )));
    }
    check_range(1, to)?;
    let cfg = &opts.search;
    let mut chunk_opts = opts.clone();
    chunk_opts.chunk_size = bucket;
    let mut rows = map_chunks(1, to, &chunk_opts, |a, b| {
        let mut row = DensityRow {
            start: a,
            end: b,
            ..Default::default()
        };
        for n in a..=b {
            let Ok(f) = arith::factorize(n) else {
                row.unknown += 1;
                continue;
            };
            if let Ok(s) = arith::sigma(&f) {
                if Abundance::of(n, s) == Abundance::Abundant {
                    row.abundant += 1;
                }
            }
            let z = classify::is_zumkeller(&f, cfg).verdict;
            let h = classify::is_half_zumkeller(&f, cfg).verdict;
            row.zumkeller += z.is_yes() as u64;
            row.half_zumkeller += h.is_yes() as u64;
            if z == Verdict::Unknown || h == Verdict::Unknown {
                row.unknown += 1;
            }
        }
        row
    })?;
    let (mut a, mut z, mut h) = (0u64, 0u64, 0u64);
    for row in &mut rows {
        a += row.abundant;
        z += row.zumkeller;
        h += row.half_zumkeller;
        let total = row.end as f64;
        row.cumulative_abundant = a as f64 / total;
        row.cumulative_zumkeller = z as f64 / total;
        row.cumulative_half_zumkeller = h as f64 / total;
    }
    Ok(DensityReport { to, bucket, rows })
}
