//! Generators for the known extremal constructions: anti-pencil completion
//! of a prefix, the two exception families that beat or meet the C(n-1,k)
//! count at the boundary parameters, and the one known interior exception.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::divisor::is_anti_pencil;
use crate::error::{Error, Result};
use crate::ground::{k_subsets, GroundSet};
use crate::rational::{rat, Rational};

/// Parameters for one family; [`FamilySpec::build`] dispatches to the
/// generator functions below.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    AntiPencil {
        prefix: GroundSet,
        k: usize,
        s: u64,
        multiplier_limit: u64,
    },
    K1Exception {
        n: usize,
    },
    SExceptionLast {
        s: u64,
        n: usize,
        filler: FillerStrategy,
    },
    Huynh24,
}

#[derive(Debug, Clone)]
pub enum FamilyOutput {
    AntiPencil(AntiPencilBuild),
    Set(GroundSet),
}

impl FamilySpec {
    pub fn build(&self) -> Result<FamilyOutput> {
        Ok(match self {
            FamilySpec::AntiPencil {
                prefix,
                k,
                s,
                multiplier_limit,
            } => FamilyOutput::AntiPencil(build_anti_pencil(prefix, *k, *s, *multiplier_limit)?),
            FamilySpec::K1Exception { n } => FamilyOutput::Set(gen_k1_exception(*n)?),
            FamilySpec::SExceptionLast { s, n, filler } => {
                FamilyOutput::Set(gen_s_exception(*s, *n, *filler)?)
            }
            FamilySpec::Huynh24 => FamilyOutput::Set(huynh_counterexample()),
        })
    }
}

/// Result of completing a prefix to a set whose prefix k-subsets all divide
/// the total.
#[derive(Debug, Clone)]
pub struct AntiPencilBuild {
    pub set: GroundSet,
    /// The appended maximum element.
    pub completion: Rational,
    /// Total = multiplier * lcm of the prefix k-subset sums.
    pub multiplier: u64,
    pub total: Rational,
    /// True when no k-subset containing the completion is an s-divisor, so
    /// the set is a full (k,s)-anti-pencil rather than only a lower-bound
    /// witness for C(n-1,k).
    pub strict: bool,
}

/// Appends one element to an integer prefix so that every k-subset of the
/// prefix divides the new total: the total is a multiple of the lcm L of all
/// prefix k-subset sums. Rational prefixes are cleared to integers first.
/// Scans multipliers t from the least one making the completion strictly
/// largest, up to `multiplier_limit`, and keeps the first t whose completed
/// set is a strict anti-pencil; if none is, returns the least-t set flagged
/// `strict: false`.
pub fn build_anti_pencil(
    prefix: &GroundSet,
    k: usize,
    s: u64,
    multiplier_limit: u64,
) -> Result<AntiPencilBuild> {
    let n_prefix = prefix.n();
    if k == 0 || k > n_prefix {
        return Err(Error::KOutOfRange { k, n: n_prefix });
    }
    if s == 0 {
        return Err(Error::InvalidScale);
    }
    if multiplier_limit == 0 {
        return Err(Error::BadParameter("multiplier limit must be >= 1".into()));
    }
    let prefix = prefix.scale(&Rational::from_integer(prefix.denominator_lcm()));
    let prefix_sum = prefix.total();
    let lcm = k_subsets(n_prefix, k)
        .map(|m| prefix.subset_sum(m).to_integer())
        .fold(BigInt::one(), |l, sum| l.lcm(&sum));

    // Smallest t with t*L - prefix_sum > max(prefix).
    let needed = prefix.max_element() + &prefix_sum;
    let t_min = (&needed / Rational::from_integer(lcm.clone()))
        .floor()
        .to_integer()
        + 1;
    let t_min = u64::try_from(&t_min).map_err(|_| Error::NoCompletionMultiplier {
        limit: multiplier_limit,
    })?;

    let build_at = |t: u64| -> Result<(GroundSet, Rational)> {
        let total = Rational::from_integer(BigInt::from(t) * &lcm);
        let completion = &total - &prefix_sum;
        let mut elements = prefix.elements().to_vec();
        elements.push(completion.clone());
        Ok((GroundSet::new(elements)?, completion))
    };

    let mut fallback: Option<(GroundSet, Rational, u64)> = None;
    for t in t_min..=t_min.max(multiplier_limit) {
        let (set, completion) = build_at(t)?;
        if is_anti_pencil(&set, k, s)? {
            let total = set.total();
            return Ok(AntiPencilBuild {
                set,
                completion,
                multiplier: t,
                total,
                strict: true,
            });
        }
        if fallback.is_none() {
            fallback = Some((set, completion, t));
        }
    }
    let (set, completion, t) = fallback.expect("multiplier range is nonempty");
    let total = set.total();
    Ok(AntiPencilBuild {
        set,
        completion,
        multiplier: t,
        total,
        strict: false,
    })
}

/// The n-element set of unit fractions summing to exactly 1:
/// `{1/2, 1/4, ..., 1/2^(n-2), 1/(3*2^(n-3)), 1/(3*2^(n-2))}`.
/// Every singleton divides the total, so the 1-subset divisor count is n,
/// beating C(n-1,1) = n-1.
pub fn gen_k1_exception(n: usize) -> Result<GroundSet> {
    if n < 3 {
        return Err(Error::FamilyTooSmall { n, min: 3 });
    }
    let mut elements: Vec<Rational> = (1..=n - 2).map(|i| rat(1, 1i64 << i)).collect();
    elements.push(rat(1, 3 * (1i64 << (n - 3))));
    elements.push(rat(1, 3 * (1i64 << (n - 2))));
    GroundSet::new(elements)
}

/// How [`gen_s_exception`] splits the leftover mass among the n-2 filler
/// elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillerStrategy {
    /// Repeated halving with the final remainder term; the duplicated last
    /// pair (p, p) becomes (4p/5, 6p/5). Falls back to `Balanced` when the
    /// halving split would breach the per-element ceiling.
    #[default]
    Geometric,
    /// Near-equal parts spread symmetrically around R/(n-2).
    Balanced,
}

/// Smallest n for which the filler split of `gen_s_exception` is feasible,
/// i.e. R < (n-2)/(s+1).
pub fn s_exception_min_n(s: u64) -> u64 {
    (s * s - 2) / (s + 2) + 3
}

/// A set of total 1 containing 1/(s+1) and 2/(s+2): removing the first
/// leaves s/(s+1), removing the second leaves s/(s+2), so at least two
/// (n-1)-subsets are s-divisors. The other n-2 elements are fillers, each
/// strictly below 1/(s+1), carrying the remainder
/// R = (s^2-2)/((s+1)(s+2)).
pub fn gen_s_exception(s: u64, n: usize, filler: FillerStrategy) -> Result<GroundSet> {
    if s < 2 {
        return Err(Error::ScaleTooSmall(s));
    }
    if n < 3 {
        return Err(Error::FamilyTooSmall { n, min: 3 });
    }
    let s_i = s as i64;
    let named = [rat(1, s_i + 1), rat(2, s_i + 2)];
    let remainder = rat(1, 1) - &named[0] - &named[1];
    let ceiling = &named[0];
    let fillers = (n - 2) as i64;
    // Feasibility: R split into n-2 distinct positive parts below 1/(s+1).
    if remainder >= rat(fillers, s_i + 1) {
        return Err(Error::FamilyInfeasible {
            s,
            n,
            min_n: s_exception_min_n(s) as usize,
        });
    }

    let balanced = |j: i64| -> Vec<Rational> {
        let mean = &remainder / rat(j, 1);
        let gap = ceiling - &mean;
        let eps = mean.clone().min(gap) / rat(2 * j, 1);
        (1..=j)
            .map(|i| &mean + rat(2 * i - j - 1, 1) * &eps)
            .collect()
    };
    let geometric = |j: i64| -> Vec<Rational> {
        let mut parts = Vec::with_capacity(j as usize);
        let mut rest = remainder.clone();
        for _ in 0..j - 1 {
            rest /= rat(2, 1);
            parts.push(rest.clone());
        }
        parts.push(rest.clone());
        // The last two parts tie; nudge them apart preserving the sum.
        if j >= 2 {
            let p = parts.pop().unwrap();
            parts.pop();
            parts.push(&p * rat(4, 5));
            parts.push(&p * rat(6, 5));
        }
        parts
    };

    let assemble = |parts: Vec<Rational>| -> Option<GroundSet> {
        if parts.iter().any(|p| p >= ceiling) {
            return None;
        }
        let mut elements = parts;
        elements.extend(named.iter().cloned());
        GroundSet::new(elements).ok()
    };

    let set = match filler {
        FillerStrategy::Balanced => assemble(balanced(fillers)),
        FillerStrategy::Geometric => {
            assemble(geometric(fillers)).or_else(|| assemble(balanced(fillers)))
        }
    }
    .expect("feasible remainder always admits the balanced split");
    debug_assert!(set.is_normalized());
    Ok(set)
}

/// The known 4-element set with four 2-subset divisors, one more than
/// C(3,2): {1/24, 5/24, 7/24, 11/24}.
pub fn huynh_counterexample() -> GroundSet {
    GroundSet::new(vec![rat(1, 24), rat(5, 24), rat(7, 24), rat(11, 24)])
        .expect("fixed valid set")
}
