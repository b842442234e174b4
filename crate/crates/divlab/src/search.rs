//! Exhaustive scan over canonical integer ground sets: every set of n
//! distinct positive integers with total T <= sum_bound and element gcd 1.
//! Divisor counts are scaling-invariant, so each gcd-1 set stands for its
//! whole rational scaling class; a scan up to sum_bound covers every
//! normalized rational set whose denominator lcm is at most sum_bound.
//!
//! Work is split by T across a worker pool; results merge in (T, set) order,
//! so the output is identical for any worker count. A checkpoint file holds
//! one digest-protected JSON line per completed T and lets an interrupted
//! run resume without rescanning.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numtheory::binomial;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub s: u64,
    /// Largest set total to scan.
    pub sum_bound: u64,
    pub jobs: usize,
    pub checkpoint_path: Option<PathBuf>,
    /// Minimum divisor count for a set to be recorded; defaults to the
    /// C(n-1, k) target. Zero records everything.
    pub report_threshold: Option<u64>,
    /// Cap on sets evaluated in this run before aborting with a resumable
    /// cursor; unreached totals stay uncommitted.
    pub budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize, s: u64, sum_bound: u64) -> Self {
        SearchConfig {
            n,
            k,
            s,
            sum_bound,
            jobs: 1,
            checkpoint_path: None,
            report_threshold: None,
            budget: None,
        }
    }

    /// `C(n-1, k)`, the count reached by anti-pencils.
    pub fn target(&self) -> u64 {
        binomial(self.n as u64 - 1, self.k as u64)
    }

    pub fn threshold(&self) -> u64 {
        self.report_threshold.unwrap_or_else(|| self.target())
    }

    /// Least total of n distinct positive integers; scanning starts here.
    pub fn min_total(&self) -> u64 {
        let n = self.n as u64;
        n * (n + 1) / 2
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if self.n > crate::ground::MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n: self.n,
                max: crate::ground::MAX_ELEMENTS,
            });
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::KOutOfRange {
                k: self.k,
                n: self.n,
            });
        }
        if self.s == 0 {
            return Err(Error::InvalidScale);
        }
        if self.jobs == 0 {
            return Err(Error::BadParameter("jobs must be >= 1".into()));
        }
        if self.sum_bound < self.min_total() {
            return Err(Error::SumBoundTooSmall {
                bound: self.sum_bound,
                min: self.min_total(),
                n: self.n,
            });
        }
        if self.s.checked_mul(self.sum_bound).is_none() {
            return Err(Error::BadParameter(
                "s * sum_bound must fit in 64 bits".into(),
            ));
        }
        Ok(())
    }
}

/// One canonical set that met the report threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    /// Elements ascending, gcd 1.
    pub set: Vec<u64>,
    pub total: u64,
    pub count: u64,
    pub is_anti_pencil: bool,
    /// count > C(n-1, k).
    pub exceeds: bool,
}

/// Aggregates over the recorded sets (sets below the report threshold are
/// not tracked, so with the default threshold these describe the
/// target-or-better population).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub n: usize,
    pub k: usize,
    pub s: u64,
    pub sum_bound: u64,
    pub target: u64,
    pub report_threshold: u64,
    pub max_count: u64,
    pub max_attainers: Vec<Vec<u64>>,
    pub exceeders: Vec<SearchRecord>,
    /// count = target exactly, yet not an anti-pencil.
    pub boundary_non_anti_pencils: Vec<SearchRecord>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// All records, ordered by (total, set).
    pub records: Vec<SearchRecord>,
    pub summary: SearchSummary,
}

/// Calls `f` with every way to write `t` as `slots` distinct positive parts,
/// parts in decreasing order, visiting part vectors in decreasing
/// lexicographic order. The fixed order is what makes checkpoint cursors and
/// merged output reproducible.
fn for_each_partition(t: u64, slots: usize, f: &mut impl FnMut(&[u64])) {
    fn rec(remaining: u64, slots: usize, max_part: u64, parts: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if slots == 1 {
            if remaining >= 1 && remaining < max_part {
                parts.push(remaining);
                f(parts);
                parts.pop();
            }
            return;
        }
        let j = (slots - 1) as u64;
        let tri = j * (j + 1) / 2;
        if remaining < tri + 1 {
            return;
        }
        // Below v the other parts can sum to at most j*v - tri.
        let v_hi = (max_part - 1).min(remaining - tri);
        let v_lo = (remaining + tri).div_ceil(j + 1);
        for v in (v_lo..=v_hi).rev() {
            parts.push(v);
            rec(remaining - v, slots - 1, v, parts, f);
            parts.pop();
        }
    }
    let mut parts = Vec::with_capacity(slots);
    rec(t, slots, u64::MAX, &mut parts, f);
}

/// Divisor count and anti-pencil flag for an ascending integer set.
fn evaluate(asc: &[u64], s_total: u64, k: usize) -> (u64, bool) {
    let n = asc.len();
    let top = n - 1;
    let mut count = 0u64;
    let mut anti = true;
    for mask in crate::ground::k_subsets(n, k) {
        let mut sum = 0u64;
        for i in mask.indices() {
            sum += asc[i];
        }
        let divides = s_total % sum == 0;
        if divides {
            count += 1;
        }
        if divides == mask.contains(top) {
            anti = false;
        }
    }
    (count, anti)
}

#[derive(Debug, Clone)]
struct Block {
    t: u64,
    records: Vec<SearchRecord>,
}

/// Scans one total; None when the budget ran out mid-scan.
fn scan_total(cfg: &SearchConfig, t: u64, spent: &AtomicU64, stop: &AtomicBool) -> Option<Block> {
    let threshold = cfg.threshold();
    let target = cfg.target();
    let budget = cfg.budget.unwrap_or(u64::MAX);
    let s_total = cfg.s * t;
    let mut records = Vec::new();
    let mut aborted = false;
    let mut asc = vec![0u64; cfg.n];
    for_each_partition(t, cfg.n, &mut |desc| {
        if aborted {
            return;
        }
        let gcd = desc.iter().fold(0u64, |g, &v| g.gcd(&v));
        if gcd != 1 {
            return;
        }
        if spent.fetch_add(1, Ordering::Relaxed) >= budget {
            stop.store(true, Ordering::Relaxed);
            aborted = true;
            return;
        }
        for (i, &v) in desc.iter().rev().enumerate() {
            asc[i] = v;
        }
        let (count, anti) = evaluate(&asc, s_total, cfg.k);
        if count >= threshold {
            records.push(SearchRecord {
                set: asc.clone(),
                total: t,
                count,
                is_anti_pencil: anti,
                exceeds: count > target,
            });
        }
    });
    if aborted {
        return None;
    }
    records.sort_by(|a, b| a.set.cmp(&b.set));
    Some(Block { t, records })
}

fn hex_digest(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CheckpointConfig {
    n: usize,
    k: usize,
    s: u64,
    sum_bound: u64,
    report_threshold: u64,
}

impl CheckpointConfig {
    fn of(cfg: &SearchConfig) -> Self {
        CheckpointConfig {
            n: cfg.n,
            k: cfg.k,
            s: cfg.s,
            sum_bound: cfg.sum_bound,
            report_threshold: cfg.threshold(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    config: CheckpointConfig,
    digest: String,
}

#[derive(Serialize, Deserialize)]
struct BlockBody {
    t: u64,
    records: Vec<SearchRecord>,
}

#[derive(Serialize, Deserialize)]
struct BlockLine {
    t: u64,
    records: Vec<SearchRecord>,
    digest: String,
}

fn header_line(cfg: &SearchConfig) -> String {
    let config = CheckpointConfig::of(cfg);
    let digest = hex_digest(&serde_json::to_string(&config).expect("serializable"));
    serde_json::to_string(&HeaderLine { config, digest }).expect("serializable")
}

fn block_line(block: &Block) -> String {
    let body = BlockBody {
        t: block.t,
        records: block.records.clone(),
    };
    let digest = hex_digest(&serde_json::to_string(&body).expect("serializable"));
    serde_json::to_string(&BlockLine {
        t: body.t,
        records: body.records,
        digest,
    })
    .expect("serializable")
}

fn corrupt(line: usize, reason: impl Into<String>) -> Error {
    Error::CheckpointCorrupt {
        line,
        reason: reason.into(),
    }
}

/// Reads and verifies a checkpoint; returns the finished blocks and the next
/// total to scan.
fn load_checkpoint(path: &Path, cfg: &SearchConfig) -> Result<(Vec<Block>, u64)> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut blocks = Vec::new();
    let mut expected_t = cfg.min_total();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            return Err(corrupt(idx + 1, "blank line"));
        }
        if idx == 0 {
            let header: HeaderLine =
                serde_json::from_str(&line).map_err(|e| corrupt(1, e.to_string()))?;
            let expected =
                hex_digest(&serde_json::to_string(&header.config).expect("serializable"));
            if header.digest != expected {
                return Err(corrupt(1, "header digest mismatch"));
            }
            if header.config != CheckpointConfig::of(cfg) {
                return Err(Error::CheckpointMismatch);
            }
            saw_header = true;
            continue;
        }
        let parsed: BlockLine =
            serde_json::from_str(&line).map_err(|e| corrupt(idx + 1, e.to_string()))?;
        let body = BlockBody {
            t: parsed.t,
            records: parsed.records,
        };
        let expected = hex_digest(&serde_json::to_string(&body).expect("serializable"));
        if parsed.digest != expected {
            return Err(corrupt(idx + 1, "record digest mismatch"));
        }
        if body.t != expected_t {
            return Err(corrupt(
                idx + 1,
                format!("expected total {expected_t}, found {}", body.t),
            ));
        }
        expected_t += 1;
        blocks.push(Block {
            t: body.t,
            records: body.records,
        });
    }
    if !saw_header {
        return Err(corrupt(1, "missing header"));
    }
    Ok((blocks, expected_t))
}

/// Next total a run with this config would scan: the minimum total on a
/// fresh path, or one past the last committed block of a valid checkpoint.
pub fn checkpoint_cursor(cfg: &SearchConfig) -> Result<u64> {
    cfg.validate()?;
    match &cfg.checkpoint_path {
        Some(path) if path.exists() => Ok(load_checkpoint(path, cfg)?.1),
        _ => Ok(cfg.min_total()),
    }
}

fn assemble(cfg: &SearchConfig, blocks: Vec<Block>) -> SearchOutcome {
    let records: Vec<SearchRecord> = blocks.into_iter().flat_map(|b| b.records).collect();
    let target = cfg.target();
    let max_count = records.iter().map(|r| r.count).max().unwrap_or(0);
    let max_attainers = records
        .iter()
        .filter(|r| r.count == max_count)
        .map(|r| r.set.clone())
        .collect();
    let exceeders = records.iter().filter(|r| r.exceeds).cloned().collect();
    let boundary = records
        .iter()
        .filter(|r| r.count == target && !r.is_anti_pencil)
        .cloned()
        .collect();
    SearchOutcome {
        summary: SearchSummary {
            n: cfg.n,
            k: cfg.k,
            s: cfg.s,
            sum_bound: cfg.sum_bound,
            target,
            report_threshold: cfg.threshold(),
            max_count,
            max_attainers,
            exceeders,
            boundary_non_anti_pencils: boundary,
        },
        records,
    }
}

/// Scans every canonical set with total up to `cfg.sum_bound`. Resumes from
/// `cfg.checkpoint_path` when it holds a valid checkpoint for this config,
/// and appends newly completed totals to it. On budget exhaustion the
/// contiguous completed prefix is committed and the error carries the next
/// total to scan.
pub fn exhaustive_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let mut blocks = Vec::new();
    let mut start_t = cfg.min_total();
    let mut fresh_checkpoint = false;
    if let Some(path) = &cfg.checkpoint_path {
        if path.exists() {
            let (done, cursor) = load_checkpoint(path, cfg)?;
            blocks = done;
            start_t = cursor;
        } else {
            fresh_checkpoint = true;
        }
    }

    let new_blocks: Vec<Option<Block>> = if start_t > cfg.sum_bound {
        Vec::new()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::BadParameter(e.to_string()))?;
        let spent = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        pool.install(|| {
            (start_t..=cfg.sum_bound)
                .into_par_iter()
                .map(|t| {
                    if stop.load(Ordering::Relaxed) {
                        None
                    } else {
                        scan_total(cfg, t, &spent, &stop)
                    }
                })
                .collect()
        })
    };

    // Commit the contiguous completed prefix.
    let mut committed = Vec::new();
    let mut cursor = start_t;
    for block in new_blocks {
        match block {
            Some(b) if b.t == cursor => {
                committed.push(b);
                cursor += 1;
            }
            _ => break,
        }
    }
    if let Some(path) = &cfg.checkpoint_path {
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if fresh_checkpoint {
            writeln!(file, "{}", header_line(cfg))?;
        }
        for b in &committed {
            writeln!(file, "{}", block_line(b))?;
        }
    }
    blocks.extend(committed);

    if cursor <= cfg.sum_bound {
        return Err(Error::BudgetExhausted {
            budget: cfg.budget.unwrap_or(u64::MAX),
            cursor,
        });
    }
    Ok(assemble(cfg, blocks))
}

/// One (n, k) cell of [`verify_theorem_grid`]: the canonical sets meeting
/// the C(n-1,k) target without being anti-pencils. The expectation is that
/// this list is empty away from the known exception parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridCell {
    pub n: usize,
    pub k: usize,
    pub s: u64,
    pub sum_bound: u64,
    pub target: u64,
    pub exceptions: Vec<SearchRecord>,
}

pub fn verify_theorem_grid(
    n_range: std::ops::RangeInclusive<usize>,
    k_range: std::ops::RangeInclusive<usize>,
    s: u64,
    sum_bound: u64,
    jobs: usize,
) -> Result<Vec<GridCell>> {
    let mut cells = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            if k > n {
                continue;
            }
            let mut cfg = SearchConfig::new(n, k, s, sum_bound);
            cfg.jobs = jobs;
            let outcome = exhaustive_search(&cfg)?;
            cells.push(GridCell {
                n,
                k,
                s,
                sum_bound,
                target: outcome.summary.target,
                exceptions: outcome
                    .records
                    .into_iter()
                    .filter(|r| !r.is_anti_pencil)
                    .collect(),
            });
        }
    }
    Ok(cells)
}

pub fn write_records_jsonl(records: &[SearchRecord], mut w: impl Write) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(std::io::Error::from)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_summary_json(summary: &SearchSummary, mut w: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, summary).map_err(std::io::Error::from)?;
    writeln!(w)?;
    Ok(())
}

/// CSV export, one row per record.
pub fn write_csv(outcome: &SearchOutcome, w: impl Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record([
        "n",
        "k",
        "s",
        "T",
        "set",
        "count",
        "target",
        "anti_pencil",
        "exceeds",
    ])
    .map_err(io_error)?;
    let s = &outcome.summary;
    for r in &outcome.records {
        let set = r
            .set
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        csv.write_record([
            s.n.to_string(),
            s.k.to_string(),
            s.s.to_string(),
            r.total.to_string(),
            set,
            r.count.to_string(),
            s.target.to_string(),
            r.is_anti_pencil.to_string(),
            r.exceeds.to_string(),
        ])
        .map_err(io_error)?;
    }
    csv.flush()?;
    Ok(())
}

fn io_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partitions(t: u64, n: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for_each_partition(t, n, &mut |p| out.push(p.to_vec()));
        out
    }

    #[test]
    fn partition_enumeration_is_ordered_and_complete() {
        assert_eq!(
            partitions(10, 3),
            vec![vec![7, 2, 1], vec![6, 3, 1], vec![5, 4, 1], vec![5, 3, 2]]
        );
        assert_eq!(partitions(6, 3), vec![vec![3, 2, 1]]);
        assert_eq!(partitions(5, 3), Vec::<Vec<u64>>::new());
        assert_eq!(partitions(4, 1), vec![vec![4]]);
        // Distinct-part partition counts of 20: matches the q-series value.
        assert_eq!(
            (1..=6).map(|n| partitions(20, n).len()).sum::<usize>(),
            64
        );
    }

    #[test]
    fn finds_the_known_maximum_at_24() {
        let cfg = SearchConfig::new(4, 2, 1, 24);
        let out = exhaustive_search(&cfg).unwrap();
        assert_eq!(out.summary.max_count, 4);
        assert_eq!(out.summary.max_attainers, vec![vec![1, 5, 7, 11]]);
        assert_eq!(out.summary.target, 3);
        assert_eq!(out.summary.exceeders.len(), 1);
        assert!(out.summary.exceeders[0].set == vec![1, 5, 7, 11]);
        assert!(!out.summary.exceeders[0].is_anti_pencil);
    }

    #[test]
    fn full_subset_counts_are_always_one() {
        let cfg = SearchConfig::new(3, 3, 1, 20);
        let out = exhaustive_search(&cfg).unwrap();
        assert_eq!(out.summary.max_count, 1);
        assert!(out.records.iter().all(|r| r.count == 1));
    }

    #[test]
    fn records_are_canonical_and_recomputable() {
        let mut cfg = SearchConfig::new(4, 2, 1, 30);
        cfg.report_threshold = Some(0);
        let out = exhaustive_search(&cfg).unwrap();
        assert!(!out.records.is_empty());
        let ordered = out
            .records
            .windows(2)
            .all(|w| (w[0].total, &w[0].set) < (w[1].total, &w[1].set));
        assert!(ordered);
        for r in &out.records {
            assert_eq!(r.set.iter().fold(0u64, |g, &v| g.gcd(&v)), 1);
            assert_eq!(r.total, r.set.iter().sum::<u64>());
        }
        // Spot-check counts against the exact rational path.
        for r in out.records.iter().step_by(37) {
            let g = crate::ground::GroundSet::from_integers(&r.set).unwrap();
            let report = crate::divisor::count_divisors(&g, 2, 1, false).unwrap();
            assert_eq!(report.count, r.count);
            assert_eq!(report.is_anti_pencil, r.is_anti_pencil);
        }
    }

    #[test]
    fn no_exceeder_below_the_known_total() {
        // Independently enumerated: through T = 23 the best pair count is
        // the C(3,2) target itself, reached by exactly these eight sets.
        let out = exhaustive_search(&SearchConfig::new(4, 2, 1, 23)).unwrap();
        assert_eq!(out.summary.max_count, 3);
        assert!(out.summary.exceeders.is_empty());
        let mut attainers = out.summary.max_attainers.clone();
        attainers.sort();
        let expected: Vec<Vec<u64>> = [
            [1, 2, 4, 5],
            [1, 2, 7, 8],
            [1, 3, 5, 7],
            [1, 3, 7, 9],
            [1, 4, 5, 8],
            [1, 4, 6, 9],
            [2, 3, 7, 8],
            [2, 4, 5, 7],
        ]
        .iter()
        .map(|s| s.to_vec())
        .collect();
        assert_eq!(attainers, expected);
    }

    #[test]
    fn max_count_monotone_in_sum_bound() {
        let mut prev = 0;
        for bound in [10, 14, 18, 22, 24, 28] {
            let mut cfg = SearchConfig::new(4, 2, 1, bound);
            cfg.report_threshold = Some(0);
            let max = exhaustive_search(&cfg).unwrap().summary.max_count;
            assert!(max >= prev, "bound {bound}: {max} < {prev}");
            prev = max;
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut cfg = SearchConfig::new(4, 2, 1, 28);
        cfg.report_threshold = Some(1);
        let one = exhaustive_search(&cfg).unwrap();
        cfg.jobs = 4;
        let four = exhaustive_search(&cfg).unwrap();
        assert_eq!(one.records, four.records);
        assert_eq!(one.summary, four.summary);
    }

    #[test]
    fn validates_config() {
        assert!(matches!(
            exhaustive_search(&SearchConfig::new(4, 2, 1, 9)),
            Err(Error::SumBoundTooSmall { min: 10, .. })
        ));
        assert!(exhaustive_search(&SearchConfig::new(4, 5, 1, 24)).is_err());
        assert!(exhaustive_search(&SearchConfig::new(4, 2, 0, 24)).is_err());
    }

    #[test]
    fn scaling_classes_cover_all_small_rational_sets() {
        // Every 3-element normalized rational set with denominator lcm <= 12
        // corresponds to exactly one canonical record at T = that lcm.
        let mut cfg = SearchConfig::new(3, 2, 1, 12);
        cfg.report_threshold = Some(0);
        let out = exhaustive_search(&cfg).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for r in &out.records {
            assert!(seen.insert(r.set.clone()), "duplicate {:?}", r.set);
        }
        // Independent enumeration: all integer triples with total <= 12,
        // any gcd, normalize to the canonical class.
        let mut classes = std::collections::BTreeSet::new();
        for c in 3u64..=12 {
            for b in 2..c {
                for a in 1..b {
                    if a + b + c <= 12 {
                        let g = a.gcd(&b).gcd(&c);
                        classes.insert(vec![a / g, b / g, c / g]);
                    }
                }
            }
        }
        assert_eq!(seen, classes);
    }

    #[test]
    fn grid_flags_known_exception_rows() {
        let cells = verify_theorem_grid(4..=4, 1..=2, 1, 24, 1).unwrap();
        assert_eq!(cells.len(), 2);
        // k=1: the unit-fraction family {1,2,3,6} (and others) meet n-1
        // without being anti-pencils.
        assert!(cells[0]
            .exceptions
            .iter()
            .any(|r| r.set == vec![1, 2, 3, 6]));
        // k=2: the single known exceeder.
        assert_eq!(cells[1].target, 3);
        assert!(cells[1]
            .exceptions
            .iter()
            .any(|r| r.set == vec![1, 5, 7, 11] && r.exceeds));
    }

    #[test]
    fn checkpoint_resume_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.jsonl");
        let mut cfg = SearchConfig::new(4, 2, 1, 26);
        cfg.checkpoint_path = Some(path.clone());
        assert_eq!(checkpoint_cursor(&cfg).unwrap(), 10);

        // Budget-limited run commits a prefix and reports the cursor.
        cfg.budget = Some(40);
        let err = exhaustive_search(&cfg).unwrap_err();
        let cursor = match err {
            Error::BudgetExhausted { cursor, .. } => cursor,
            other => panic!("unexpected {other:?}"),
        };
        assert!(cursor > 10 && cursor <= 26);
        assert_eq!(checkpoint_cursor(&cfg).unwrap(), cursor);

        // Unlimited resume completes and matches a from-scratch run.
        cfg.budget = None;
        let resumed = exhaustive_search(&cfg).unwrap();
        let scratch = exhaustive_search(&SearchConfig::new(4, 2, 1, 26)).unwrap();
        assert_eq!(resumed.records, scratch.records);
        assert_eq!(resumed.summary, scratch.summary);

        // Config drift is rejected.
        let mut other = cfg.clone();
        other.s = 2;
        assert!(matches!(
            exhaustive_search(&other),
            Err(Error::CheckpointMismatch)
        ));

        // Tamper with a stored value: the line digest catches it.
        let text = std::fs::read_to_string(&path).unwrap();
        let broken = text.replacen("{\"t\":10,", "{\"t\":99,", 1);
        assert_ne!(text, broken);
        std::fs::write(&path, broken).unwrap();
        assert!(matches!(
            checkpoint_cursor(&cfg),
            Err(Error::CheckpointCorrupt { .. })
        ));
    }

    #[test]
    fn csv_and_jsonl_shapes() {
        let cfg = SearchConfig::new(4, 2, 1, 24);
        let out = exhaustive_search(&cfg).unwrap();
        let mut csv = Vec::new();
        write_csv(&out, &mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        assert!(csv.starts_with("n,k,s,T,set,count,target,anti_pencil,exceeds\n"));
        assert!(csv.contains("4,2,1,24,\"1,5,7,11\",4,3,false,true"));

        let mut jsonl = Vec::new();
        write_records_jsonl(&out.records, &mut jsonl).unwrap();
        let jsonl = String::from_utf8(jsonl).unwrap();
        let first: SearchRecord = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
        assert_eq!(first, out.records[0]);
    }
}
