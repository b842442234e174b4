//! s-divisor counting and chain analysis.
//!
//! For a ground set `A` and integer `s >= 1`, a nonempty subset `B` is an
//! *s-divisor* when the sum of `B` divides `s` times the sum of `A`. The
//! property is invariant under scaling the whole set, so every routine here
//! first clears denominators and works on exact integers.
//!
//! An `(k, s)`-*anti-pencil* is a set whose k-subset s-divisors are exactly
//! the k-subsets avoiding the maximum element; it realizes `C(n-1, k)`
//! divisors, the conjectured maximum for `n` large against `k` and `s`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ground::{k_subsets, GroundSet, SubsetMask, MAX_ELEMENTS};
use crate::numtheory::binomial;
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct DivisorReport {
    pub n: usize,
    pub k: usize,
    pub s: u64,
    /// Number of k-subsets whose sum divides s times the total.
    pub count: u64,
    /// `C(n-1, k)`, the count an anti-pencil realizes.
    pub binom_target: u64,
    pub is_anti_pencil: bool,
    /// The divisor subsets in increasing mask order, when requested.
    pub witnesses: Option<Vec<SubsetMask>>,
}

fn validate_k_s(n: usize, k: usize, s: u64) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if s == 0 {
        return Err(Error::InvalidScale);
    }
    Ok(())
}

/// Integer image of the set: elements scaled by the denominator lcm, plus
/// `s` times the scaled total. Divisibility of subset sums is unchanged.
fn cleared(set: &GroundSet, s: u64) -> (Vec<BigInt>, BigInt) {
    let lcm = Rational::from_integer(set.denominator_lcm());
    let values: Vec<BigInt> = set
        .elements()
        .iter()
        .map(|e| (e * &lcm).to_integer())
        .collect();
    let s_total = values.iter().sum::<BigInt>() * BigInt::from(s);
    (values, s_total)
}

fn subset_divides(values: &[BigInt], s_total: &BigInt, mask: SubsetMask) -> bool {
    let mut sum = BigInt::zero();
    for i in mask.indices() {
        sum += &values[i];
    }
    s_total.is_multiple_of(&sum)
}

/// Does the sum of the masked subset divide s times the set total? Empty
/// subsets are not divisors.
pub fn is_s_divisor(set: &GroundSet, mask: SubsetMask, s: u64) -> Result<bool> {
    set.check_mask(mask)?;
    if s == 0 {
        return Err(Error::InvalidScale);
    }
    if mask.bits() == 0 {
        return Ok(false);
    }
    let (values, s_total) = cleared(set, s);
    Ok(subset_divides(&values, &s_total, mask))
}

/// Counts the k-subset s-divisors in one pass, classifying the anti-pencil
/// property along the way.
pub fn count_divisors(
    set: &GroundSet,
    k: usize,
    s: u64,
    list_witnesses: bool,
) -> Result<DivisorReport> {
    let n = set.n();
    validate_k_s(n, k, s)?;
    let (values, s_total) = cleared(set, s);
    let top = n - 1;
    let mut count = 0u64;
    let mut witnesses = list_witnesses.then(Vec::new);
    let mut anti_pencil = true;
    for mask in k_subsets(n, k) {
        let divides = subset_divides(&values, &s_total, mask);
        if divides {
            count += 1;
            if let Some(w) = witnesses.as_mut() {
                w.push(mask);
            }
        }
        if divides == mask.contains(top) {
            anti_pencil = false;
        }
    }
    Ok(DivisorReport {
        n,
        k,
        s,
        count,
        binom_target: binomial((n - 1) as u64, k as u64),
        is_anti_pencil: anti_pencil,
        witnesses,
    })
}

/// True iff the k-subset s-divisors are exactly the k-subsets avoiding the
/// maximum element. Early-exits on the first violation.
pub fn is_anti_pencil(set: &GroundSet, k: usize, s: u64) -> Result<bool> {
    let n = set.n();
    validate_k_s(n, k, s)?;
    let (values, s_total) = cleared(set, s);
    let top = n - 1;
    for mask in k_subsets(n, k) {
        if subset_divides(&values, &s_total, mask) == mask.contains(top) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Longest chain of k-subset s-divisors in dominance order (componentwise
/// comparison of sorted index vectors), bottom first. Deterministic: among
/// equally long chains the one earliest in (rank, mask) order wins at every
/// DP step. Empty when the set has no k-subset s-divisors.
pub fn divisor_chain(set: &GroundSet, k: usize, s: u64) -> Result<Vec<SubsetMask>> {
    let n = set.n();
    validate_k_s(n, k, s)?;
    let (values, s_total) = cleared(set, s);
    let mut divisors: Vec<SubsetMask> = k_subsets(n, k)
        .filter(|&m| subset_divides(&values, &s_total, m))
        .collect();
    // Strict dominance raises the index rank, so rank order is topological.
    divisors.sort_by_key(|m| (m.index_rank(), m.bits()));
    let mut longest = vec![1usize; divisors.len()];
    let mut pred = vec![usize::MAX; divisors.len()];
    let mut best: Option<usize> = None;
    for i in 0..divisors.len() {
        for j in 0..i {
            if longest[j] + 1 > longest[i] && divisors[j].strictly_dominated_by(divisors[i]) {
                longest[i] = longest[j] + 1;
                pred[i] = j;
            }
        }
        if best.is_none_or(|b| longest[i] > longest[b]) {
            best = Some(i);
        }
    }
    let mut chain = Vec::new();
    let mut cur = best;
    while let Some(i) = cur {
        chain.push(divisors[i]);
        cur = (pred[i] != usize::MAX).then(|| pred[i]);
    }
    chain.reverse();
    Ok(chain)
}

/// What [`check_chain_bound`] verified on a dominance chain of s-divisors
/// `B_0 < ... < B_m`. Sums are reported as fractions of the set total.
#[derive(Debug, Clone)]
pub struct ChainBoundReport {
    /// Chain length m + 1.
    pub length: usize,
    /// The integers `m_i = s * total / sum(B_i)`; strictly decreasing.
    pub multipliers: Vec<BigInt>,
    /// `q = m_m`, the multiplier of the chain top.
    pub q: BigInt,
    pub bottom_sum: Rational,
    /// `s / (q + m)`. The strictly decreasing integer multipliers force
    /// `m_0 >= q + m`, hence `bottom_sum <= s/(q+m)`.
    pub sum_bound: Rational,
    pub sum_bound_holds: bool,
    /// `s / (s + m)`: every element of `B_0` must lie strictly below this,
    /// provided the chain top sums to less than the whole set (k < n).
    pub element_bound: Option<Rational>,
    pub element_bound_holds: bool,
    pub holds: bool,
}

/// Verifies the chain bound on an explicit chain: all members must be
/// s-divisors strictly increasing in dominance order. Works on sums as
/// fractions of the total, so the set need not be normalized.
pub fn check_chain_bound(
    set: &GroundSet,
    chain: &[SubsetMask],
    s: u64,
) -> Result<ChainBoundReport> {
    if s == 0 {
        return Err(Error::InvalidScale);
    }
    if chain.is_empty() {
        return Err(Error::NotAChain(0));
    }
    let k = chain[0].k();
    for (pos, &mask) in chain.iter().enumerate() {
        set.check_mask(mask)?;
        if mask.k() != k {
            return Err(Error::MaskWrongSize {
                got: mask.k(),
                expected: k as usize,
            });
        }
        if pos > 0 && !chain[pos - 1].strictly_dominated_by(mask) {
            return Err(Error::NotAChain(pos));
        }
    }
    if k == 0 {
        return Err(Error::KOutOfRange { k: 0, n: set.n() });
    }

    let total = set.total();
    let s_rat = Rational::from_integer(BigInt::from(s));
    let mut multipliers = Vec::with_capacity(chain.len());
    for (pos, &mask) in chain.iter().enumerate() {
        let ratio = &s_rat * &total / set.subset_sum(mask);
        if !ratio.is_integer() {
            return Err(Error::ChainMemberNotDivisor(pos));
        }
        multipliers.push(ratio.to_integer());
    }

    let m = chain.len() - 1;
    let q = multipliers.last().unwrap().clone();
    let bottom_sum = set.subset_sum(chain[0]) / &total;
    let sum_bound = &s_rat / Rational::from_integer(&q + BigInt::from(m));
    let sum_bound_holds = bottom_sum <= sum_bound;

    let top_fraction = set.subset_sum(chain[m]) / &total;
    let element_bound = (!top_fraction.is_one())
        .then(|| &s_rat / Rational::from_integer(BigInt::from(s) + BigInt::from(m)));
    let element_bound_holds = match &element_bound {
        None => true,
        Some(bound) => chain[0]
            .indices()
            .all(|i| &(&set.elements()[i] / &total) < bound),
    };

    Ok(ChainBoundReport {
        length: chain.len(),
        q,
        bottom_sum,
        sum_bound,
        sum_bound_holds,
        element_bound,
        element_bound_holds,
        holds: sum_bound_holds && element_bound_holds,
        multipliers,
    })
}

/// Membership test applied to k-subset sums by [`count_predicate`].
#[derive(Debug, Clone)]
pub enum SumPredicate {
    /// Subset sum divides s times the set total.
    SDivisor(u64),
    /// Subset sum lies strictly between the two endpoints (absolute values,
    /// so normalize the set first if thresholds are meant as fractions).
    OpenInterval(Rational, Rational),
    /// Any of the inner predicates matches.
    Union(Vec<SumPredicate>),
}

impl SumPredicate {
    pub fn validate(&self) -> Result<()> {
        match self {
            SumPredicate::SDivisor(s) => {
                if *s == 0 {
                    return Err(Error::InvalidScale);
                }
            }
            SumPredicate::OpenInterval(lo, hi) => {
                if lo >= hi {
                    return Err(Error::EmptyInterval {
                        lo: lo.clone(),
                        hi: hi.clone(),
                    });
                }
            }
            SumPredicate::Union(parts) => {
                for p in parts {
                    p.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn matches(&self, sum: &Rational, total: &Rational) -> bool {
        match self {
            SumPredicate::SDivisor(s) => {
                (Rational::from_integer(BigInt::from(*s)) * total / sum).is_integer()
            }
            SumPredicate::OpenInterval(lo, hi) => lo < sum && sum < hi,
            SumPredicate::Union(parts) => parts.iter().any(|p| p.matches(sum, total)),
        }
    }
}

/// Counts k-subsets whose sum satisfies the predicate. With
/// `SumPredicate::SDivisor(s)` this agrees with [`count_divisors`].
pub fn count_predicate(set: &GroundSet, k: usize, pred: &SumPredicate) -> Result<u64> {
    validate_k_s(set.n(), k, 1)?;
    pred.validate()?;
    let total = set.total();
    let mut count = 0u64;
    for mask in k_subsets(set.n(), k) {
        if pred.matches(&set.subset_sum(mask), &total) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone)]
pub struct MmsReport {
    pub n: usize,
    pub k: usize,
    /// Number of k-subsets with nonnegative sum.
    pub count: u64,
    /// `C(n-1, k-1)`, the conjectured minimum.
    pub target: u64,
    /// The conjecture claims `count >= target` once `n >= 4k`.
    pub conjecture_applies: bool,
    pub meets_target: bool,
}

/// Counts nonnegative k-subset sums of a value list (repeats and any signs
/// allowed) with nonnegative total, against the `C(n-1, k-1)` target.
pub fn mms_count(values: &[Rational], k: usize) -> Result<MmsReport> {
    let n = values.len();
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge {
            n,
            max: MAX_ELEMENTS,
        });
    }
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let total: Rational = values.iter().sum();
    if total.is_negative() {
        return Err(Error::NegativeTotal(total));
    }
    let mut count = 0u64;
    for mask in k_subsets(n, k) {
        let mut sum = Rational::zero();
        for i in mask.indices() {
            sum += &values[i];
        }
        if !sum.is_negative() {
            count += 1;
        }
    }
    let target = binomial((n - 1) as u64, (k - 1) as u64);
    Ok(MmsReport {
        n,
        k,
        count,
        target,
        conjecture_applies: n >= 4 * k,
        meets_target: count >= target,
    })
}
