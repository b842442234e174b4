//! Command-line front end: every operation behind one binary, exact-rational
//! I/O at the boundary, one JSON envelope per run on stdout.
//!
//! Exit codes: 0 success, 2 bad input or precondition, 3 resource cap hit.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use divlab::caps::DEFAULT_MULTIPLIER_LIMIT;
use divlab::divisor::{check_chain_bound, count_divisors, divisor_chain, mms_count};
use divlab::families::{
    build_anti_pencil, gen_k1_exception, gen_s_exception, huynh_counterexample, FillerStrategy,
};
use divlab::ground::{GroundSet, SubsetMask};
use divlab::numtheory::{
    divisor_count, frac_pair_grid_check, frac_pair_solutions, lemma3_scan, FracPairInstance,
};
use divlab::poset::{
    cube_rank_profile, dilworth_width, dominance_rank_profile, index_subsets, lemma1_check,
    lemma2_threshold,
};
use divlab::rational::{format_rational, parse_rational};
use divlab::search::{exhaustive_search, verify_theorem_grid, write_csv, write_records_jsonl, SearchConfig};
use divlab::Error;

#[derive(Parser)]
#[command(name = "divlab", version, about = "Exact subset-sum divisibility toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the k-subset s-divisors of a ground set
    Count {
        /// Comma-separated positive integers or p/q rationals
        #[arg(long)]
        set: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        /// Also list the witness subsets as index arrays
        #[arg(long)]
        list: bool,
    },
    /// Anti-pencil test and construction
    #[command(subcommand)]
    Antipencil(AntipencilCmd),
    /// Generate the known extremal families
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Longest dominance chain of s-divisors and its multiplier bound
    Chain {
        #[arg(long)]
        set: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
    },
    /// Exact poset widths from rank profiles
    #[command(subcommand)]
    Width(WidthCmd),
    /// Bound suites and scans
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Solve m/n = a/x + b/y over positive integers x, y
    Fracpairs {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Nonnegative k-subset sums against the C(n-1,k-1) target
    Mms {
        /// Comma-separated rationals, any signs, nonnegative total
        #[arg(long, conflicts_with_all = ["trials", "n", "seed"])]
        values: Option<String>,
        #[arg(long)]
        k: usize,
        /// Random-trial mode: number of random value lists to test
        #[arg(long, requires = "n")]
        trials: Option<u64>,
        /// Random-trial mode: values per list
        #[arg(long)]
        n: Option<usize>,
        /// Random-trial mode seed; fixed default keeps runs reproducible
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustively scan canonical integer sets with total <= sum-bound
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long)]
        sum_bound: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Checkpoint file; resumes when it already exists
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write the record table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the records as JSON lines
        #[arg(long)]
        records: Option<PathBuf>,
        /// Record sets with count >= this instead of the C(n-1,k) default
        #[arg(long)]
        threshold: Option<u64>,
        /// Abort (exit 3, resumable) after evaluating this many sets
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Scan an (n, k) grid and list sets meeting the target without being
    /// anti-pencils
    VerifyGrid {
        /// Single value or inclusive range A..B
        #[arg(long)]
        n: String,
        /// Single value or inclusive range A..B
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long)]
        sum_bound: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum AntipencilCmd {
    /// Is the set a (k,s)-anti-pencil?
    Check {
        #[arg(long)]
        set: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
    },
    /// Append one element to a prefix so every prefix k-subset divides the
    /// total
    Build {
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        /// Largest total multiplier to try for strictness
        #[arg(long, default_value_t = DEFAULT_MULTIPLIER_LIMIT)]
        max_multiplier: u64,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// n unit-like fractions summing to 1 with all n single elements dividing
    K1 {
        #[arg(long)]
        n: usize,
    },
    /// Normalized set with at least two (n-1)-subset s-divisors
    #[command(name = "s-exception")]
    SException {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FillerArg::Geometric)]
        filler: FillerArg,
    },
    /// The 4-element set with four 2-subset divisors
    Huynh,
}

#[derive(Subcommand)]
enum WidthCmd {
    /// Width of {0..n-1}^d under coordinate sum
    Cube {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Width of the dominance order on d-subsets of an n-set
    Dominance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Cross-check via minimum chain cover (bipartite matching)
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Cube width bound w^2 d <= 2 (n+d-2)^(2(d-1)) over a (d, n) grid
    #[command(name = "1")]
    One {
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
    },
    /// Smallest n per d from which (w n)^2 d < 4 C(n,d)^2 holds
    #[command(name = "2")]
    Two {
        #[arg(long, default_value_t = 60)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        d_max: usize,
    },
    /// Maximize d(n)^k / n over n <= n-max
    #[command(name = "3")]
    Three {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: u64,
    },
    /// Fraction-pair solver vs brute-force oracle over a full grid
    #[command(name = "4")]
    Four {
        #[arg(long, default_value_t = 30)]
        grid: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FillerArg {
    Geometric,
    Balanced,
}

impl From<FillerArg> for FillerStrategy {
    fn from(value: FillerArg) -> Self {
        match value {
            FillerArg::Geometric => FillerStrategy::Geometric,
            FillerArg::Balanced => FillerStrategy::Balanced,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((command, params, result)) => {
            let envelope = json!({
                "command": command,
                "params": params,
                "result": result,
                "version": env!("CARGO_PKG_VERSION"),
            });
            println!("{}", serde_json::to_string_pretty(&envelope).expect("envelope is json"));
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(if e.is_resource_limit() { 3 } else { 2 });
        }
    }
}

fn indices(mask: SubsetMask) -> Vec<usize> {
    mask.indices().collect()
}

fn run(command: Command) -> Result<(&'static str, Value, Value), Error> {
    match command {
        Command::Count { set, k, s, list } => {
            let g = GroundSet::parse(&set)?;
            let r = count_divisors(&g, k, s, list)?;
            Ok((
                "count",
                json!({"set": g.to_string(), "k": k, "s": s, "list": list}),
                json!({
                    "n": r.n,
                    "k": r.k,
                    "s": r.s,
                    "count": r.count,
                    "target": r.binom_target,
                    "exceeds": r.count > r.binom_target,
                    "is_anti_pencil": r.is_anti_pencil,
                    "witnesses": r.witnesses.map(|w| w.into_iter().map(indices).collect::<Vec<_>>()),
                }),
            ))
        }
        Command::Antipencil(AntipencilCmd::Check { set, k, s }) => {
            let g = GroundSet::parse(&set)?;
            let r = count_divisors(&g, k, s, false)?;
            Ok((
                "antipencil check",
                json!({"set": g.to_string(), "k": k, "s": s}),
                json!({
                    "is_anti_pencil": r.is_anti_pencil,
                    "count": r.count,
                    "target": r.binom_target,
                }),
            ))
        }
        Command::Antipencil(AntipencilCmd::Build {
            prefix,
            k,
            s,
            max_multiplier,
        }) => {
            let p = GroundSet::parse(&prefix)?;
            let b = build_anti_pencil(&p, k, s, max_multiplier)?;
            let r = count_divisors(&b.set, k, s, false)?;
            Ok((
                "antipencil build",
                json!({"prefix": p.to_string(), "k": k, "s": s, "max_multiplier": max_multiplier}),
                json!({
                    "set": b.set.to_string(),
                    "completion": format_rational(&b.completion),
                    "multiplier": b.multiplier,
                    "total": format_rational(&b.total),
                    "strict": b.strict,
                    "count": r.count,
                    "target": r.binom_target,
                }),
            ))
        }
        Command::Family(FamilyCmd::K1 { n }) => {
            let g = gen_k1_exception(n)?;
            let r = count_divisors(&g, 1, 1, false)?;
            Ok((
                "family k1",
                json!({"n": n}),
                json!({
                    "set": g.to_string(),
                    "total": format_rational(&g.total()),
                    "count_k1": r.count,
                    "is_anti_pencil": r.is_anti_pencil,
                }),
            ))
        }
        Command::Family(FamilyCmd::SException { s, n, filler }) => {
            let g = gen_s_exception(s, n, filler.into())?;
            let r = count_divisors(&g, n - 1, s, false)?;
            Ok((
                "family s-exception",
                json!({"s": s, "n": n}),
                json!({
                    "set": g.to_string(),
                    "total": format_rational(&g.total()),
                    "count_top_k": r.count,
                    "target": r.binom_target,
                }),
            ))
        }
        Command::Family(FamilyCmd::Huynh) => {
            let g = huynh_counterexample();
            let r = count_divisors(&g, 2, 1, false)?;
            Ok((
                "family huynh",
                json!({}),
                json!({
                    "set": g.to_string(),
                    "count": r.count,
                    "target": r.binom_target,
                    "exceeds": r.count > r.binom_target,
                }),
            ))
        }
        Command::Chain { set, k, s } => {
            let g = GroundSet::parse(&set)?;
            let chain = divisor_chain(&g, k, s)?;
            let params = json!({"set": g.to_string(), "k": k, "s": s});
            if chain.is_empty() {
                return Ok((
                    "chain",
                    params,
                    json!({"chain": [], "length": 0, "note": "no k-subset s-divisors"}),
                ));
            }
            let r = check_chain_bound(&g, &chain, s)?;
            Ok((
                "chain",
                params,
                json!({
                    "chain": chain.iter().map(|&m| indices(m)).collect::<Vec<_>>(),
                    "length": r.length,
                    "multipliers": r.multipliers.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "q": r.q.to_string(),
                    "bottom_sum": format_rational(&r.bottom_sum),
                    "sum_bound": format_rational(&r.sum_bound),
                    "sum_bound_holds": r.sum_bound_holds,
                    "element_bound": r.element_bound.as_ref().map(format_rational),
                    "element_bound_holds": r.element_bound_holds,
                    "holds": r.holds,
                }),
            ))
        }
        Command::Width(WidthCmd::Cube { n, d }) => {
            let p = cube_rank_profile(n, d)?;
            Ok((
                "width cube",
                json!({"n": n, "d": d}),
                profile_json(&p, None),
            ))
        }
        Command::Width(WidthCmd::Dominance { n, d, oracle }) => {
            let p = dominance_rank_profile(n, d)?;
            let oracle_width = if oracle {
                let subsets: Vec<Vec<u32>> = index_subsets(n as u32, d as u32).collect();
                Some(dilworth_width(&subsets)?)
            } else {
                None
            };
            Ok((
                "width dominance",
                json!({"n": n, "d": d, "oracle": oracle}),
                profile_json(&p, oracle_width),
            ))
        }
        Command::Lemma(LemmaCmd::One { n_max, d_max }) => {
            let mut checked = 0u64;
            let mut failures = Vec::new();
            let mut d2_equalities = true;
            for d in 1..=d_max {
                for n in 2..=n_max {
                    let c = lemma1_check(n, d)?;
                    checked += 1;
                    if !c.holds {
                        failures.push(json!({"n": n, "d": d}));
                    }
                    if d == 2 && c.bound_squared_lhs != c.bound_squared_rhs {
                        d2_equalities = false;
                    }
                }
            }
            Ok((
                "lemma 1",
                json!({"n_max": n_max, "d_max": d_max}),
                json!({
                    "checked": checked,
                    "all_hold": failures.is_empty(),
                    "failures": failures,
                    "equality_at_d2": d2_equalities,
                }),
            ))
        }
        Command::Lemma(LemmaCmd::Two { n_max, d_max }) => {
            if d_max < 2 {
                return Err(Error::BadParameter("d-max must be >= 2".into()));
            }
            let mut rows = Vec::new();
            for d in 2..=d_max {
                let t = lemma2_threshold(d, n_max)?;
                rows.push(json!({
                    "d": d,
                    "threshold": t.threshold,
                    "holds_through_n_max": t.threshold.is_some(),
                    "failures": t.failures,
                }));
            }
            Ok((
                "lemma 2",
                json!({"n_max": n_max, "d_max": d_max}),
                json!({"rows": rows}),
            ))
        }
        Command::Lemma(LemmaCmd::Three { k, n_max }) => {
            let r = lemma3_scan(k, n_max)?;
            Ok((
                "lemma 3",
                json!({"k": k, "n_max": n_max}),
                json!({
                    "best_n": r.best_n,
                    "best_d": r.best_d,
                    "ratio": format_rational(&r.ratio),
                }),
            ))
        }
        Command::Lemma(LemmaCmd::Four { grid }) => {
            let r = frac_pair_grid_check(grid)?;
            Ok((
                "lemma 4",
                json!({"grid": grid}),
                json!({
                    "limit": r.limit,
                    "instances": r.instances,
                    "total_solutions": r.total_solutions,
                    "all_match": r.all_match,
                    "first_mismatch": r.first_mismatch.map(|i| json!({"m": i.m, "n": i.n, "a": i.a, "b": i.b})),
                    "bound_violations": r.bound_violations,
                }),
            ))
        }
        Command::Fracpairs { m, n, a, b } => {
            let inst = FracPairInstance::new(m, n, a, b)?;
            let solutions = frac_pair_solutions(&inst)?;
            let cap = divisor_count(inst.abn2()?)?;
            Ok((
                "fracpairs",
                json!({"m": m, "n": n, "a": a, "b": b}),
                json!({
                    "solutions": solutions,
                    "count": solutions.len(),
                    "divisor_cap": cap,
                }),
            ))
        }
        Command::Mms {
            values,
            k,
            trials,
            n,
            seed,
        } => run_mms(values, k, trials, n, seed),
        Command::Search {
            n,
            k,
            s,
            sum_bound,
            jobs,
            checkpoint,
            csv,
            records,
            threshold,
            budget,
        } => {
            let cfg = SearchConfig {
                n,
                k,
                s,
                sum_bound,
                jobs,
                checkpoint_path: checkpoint.clone(),
                report_threshold: threshold,
                budget,
            };
            let out = exhaustive_search(&cfg)?;
            if let Some(path) = &csv {
                write_csv(&out, std::fs::File::create(path)?)?;
            }
            if let Some(path) = &records {
                write_records_jsonl(&out.records, std::fs::File::create(path)?)?;
            }
            Ok((
                "search",
                json!({
                    "n": n, "k": k, "s": s, "sum_bound": sum_bound, "jobs": jobs,
                    "checkpoint": checkpoint, "csv": csv, "records": records,
                    "threshold": threshold, "budget": budget,
                }),
                json!({
                    "summary": serde_json::to_value(&out.summary).expect("summary is json"),
                    "records_written": out.records.len(),
                }),
            ))
        }
        Command::VerifyGrid {
            n,
            k,
            s,
            sum_bound,
            jobs,
        } => {
            let n_range = parse_range(&n)?;
            let k_range = parse_range(&k)?;
            let cells = verify_theorem_grid(n_range, k_range, s, sum_bound, jobs)?;
            let clean = cells.iter().all(|c| c.exceptions.is_empty());
            Ok((
                "verify-grid",
                json!({"n": n, "k": k, "s": s, "sum_bound": sum_bound, "jobs": jobs}),
                json!({
                    "cells": cells.iter().map(|c| json!({
                        "n": c.n,
                        "k": c.k,
                        "target": c.target,
                        "exception_count": c.exceptions.len(),
                        "exceptions": serde_json::to_value(&c.exceptions).expect("records are json"),
                    })).collect::<Vec<_>>(),
                    "clean": clean,
                }),
            ))
        }
    }
}

fn profile_json(p: &divlab::poset::RankProfile, oracle: Option<u64>) -> Value {
    let mut v = json!({
        "width": p.width(),
        "total": p.total,
        "num_levels": p.sizes.len(),
        "symmetric": p.is_symmetric(),
        "unimodal": p.is_unimodal(),
    });
    if p.sizes.len() <= 128 {
        v["levels"] = json!(p.sizes);
    }
    if let Some(w) = oracle {
        v["oracle"] = json!(w);
        v["agree"] = json!(w == p.width());
    }
    v
}

fn parse_range(input: &str) -> Result<std::ops::RangeInclusive<usize>, Error> {
    let bad = || Error::BadParameter(format!("expected N or A..B, got {input:?}"));
    if let Some((lo, hi)) = input.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(lo..=hi)
    } else {
        let v: usize = input.trim().parse().map_err(|_| bad())?;
        Ok(v..=v)
    }
}

fn run_mms(
    values: Option<String>,
    k: usize,
    trials: Option<u64>,
    n: Option<usize>,
    seed: u64,
) -> Result<(&'static str, Value, Value), Error> {
    use rand::{rngs::StdRng, Rng, SeedableRng};

    if let Some(values) = values {
        let parsed = values
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        let r = mms_count(&parsed, k)?;
        return Ok((
            "mms",
            json!({
                "values": parsed.iter().map(format_rational).collect::<Vec<_>>(),
                "k": k,
            }),
            json!({
                "n": r.n,
                "k": r.k,
                "count": r.count,
                "target": r.target,
                "conjecture_applies": r.conjecture_applies,
                "meets_target": r.meets_target,
            }),
        ));
    }
    let (Some(trials), Some(n)) = (trials, n) else {
        return Err(Error::BadParameter(
            "mms needs --values, or --trials with --n".into(),
        ));
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut all_met = true;
    let mut worst: Option<(Vec<String>, u64, u64)> = None;
    for _ in 0..trials {
        // Resample until the total is nonnegative; about half the draws are.
        let values = loop {
            let candidate: Vec<_> = (0..n)
                .map(|_| {
                    divlab::rational::rat(rng.random_range(-12i64..=12), rng.random_range(1i64..=8))
                })
                .collect();
            if candidate.iter().sum::<divlab::rational::Rational>() >= divlab::rational::rat_int(0)
            {
                break candidate;
            }
        };
        let r = mms_count(&values, k)?;
        if !r.meets_target {
            all_met = false;
        }
        let margin_is_worse = match &worst {
            None => true,
            Some((_, count, target)) => {
                (r.count as i64 - r.target as i64) < (*count as i64 - *target as i64)
            }
        };
        if margin_is_worse {
            worst = Some((
                values.iter().map(format_rational).collect(),
                r.count,
                r.target,
            ));
        }
    }
    let worst = worst.map(|(values, count, target)| {
        json!({"values": values, "count": count, "target": target})
    });
    Ok((
        "mms",
        json!({"trials": trials, "n": n, "k": k, "seed": seed}),
        json!({
            "trials": trials,
            "all_met": all_met,
            "worst": worst,
        }),
    ))
}
