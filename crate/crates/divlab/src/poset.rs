//! Rank profiles and exact widths for the two posets behind the divisor
//! bounds: the d-dimensional lattice cube with n points per edge (coordinate
//! sum as rank) and the dominance order on d-subsets of {1..n} (index sum as
//! rank). Both are rank-symmetric, rank-unimodal, and strongly Sperner, so
//! the width is the largest level; [`dilworth_width`] is the independent
//! matching-based oracle for that fact.

mod matching;

use num_bigint::BigUint;

use crate::caps;
use crate::error::{Error, Result};
use crate::ground::SubsetMask;
use crate::numtheory::binomial_big;

/// Level sizes of a ranked poset, lowest rank first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub sizes: Vec<u64>,
    pub total: u64,
}

impl RankProfile {
    fn new(sizes: Vec<u64>) -> Result<Self> {
        let mut total = 0u64;
        for &s in &sizes {
            total = total.checked_add(s).ok_or(Error::ProfileOverflow)?;
        }
        Ok(RankProfile { sizes, total })
    }

    /// Largest level; the poset width for strongly Sperner posets.
    pub fn width(&self) -> u64 {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let s = &self.sizes;
        (0..s.len() / 2).all(|i| s[i] == s[s.len() - 1 - i])
    }

    pub fn is_unimodal(&self) -> bool {
        // Everything before the first strict descent is nondecreasing by
        // construction; the tail from that point must keep descending.
        let descent = self
            .sizes
            .windows(2)
            .position(|w| w[0] > w[1])
            .unwrap_or(self.sizes.len());
        self.sizes[descent..].windows(2).all(|w| w[0] >= w[1])
    }
}

fn checked_len(len: usize) -> Result<usize> {
    let cap = caps::caps().profile_len;
    if len > cap {
        return Err(Error::ProfileTooLong(len, cap));
    }
    Ok(len)
}

/// Level sizes of `{0..n-1}^d` under coordinate sum: the coefficients of
/// `(1 + q + ... + q^(n-1))^d`, built by d sliding-window convolutions.
pub fn cube_rank_profile(n: usize, d: usize) -> Result<RankProfile> {
    if n < 1 || d < 1 {
        return Err(Error::BadParameter("cube needs n >= 1 and d >= 1".into()));
    }
    checked_len(d * (n - 1) + 1)?;
    let mut coef = vec![1u64];
    for step in 1..=d {
        let mut next = vec![0u64; step * (n - 1) + 1];
        // next[r] = sum of coef[r-n+1 ..= r]; maintained as a running window.
        let mut window = 0u64;
        for r in 0..next.len() {
            if r < coef.len() {
                window = window.checked_add(coef[r]).ok_or(Error::ProfileOverflow)?;
            }
            if r >= n {
                window -= coef[r - n];
            }
            next[r] = window;
        }
        coef = next;
    }
    RankProfile::new(coef)
}

/// Level sizes of the dominance order on d-subsets of an n-set: the Gaussian
/// binomial coefficients of `[n choose d]_q`, i.e. partition counts inside a
/// d x (n-d) box, built by the q-Pascal recurrence
/// `[m, j] = [m-1, j] + q^(m-j) * [m-1, j-1]`.
pub fn dominance_rank_profile(n: usize, d: usize) -> Result<RankProfile> {
    if d < 1 || d > n {
        return Err(Error::BadParameter(format!(
            "dominance order needs 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    checked_len(d * (n - d) + 1)?;
    // The box is (n-d) x d for the complement; same polynomial, and the
    // recurrence is much cheaper run on the short side.
    let d = d.min(n - d);
    if d == 0 {
        return RankProfile::new(vec![1]);
    }
    let mut rows: Vec<Vec<u64>> = vec![vec![1]; d + 1];
    for m in 1..=n {
        for j in (1..=d.min(m)).rev() {
            if j == m {
                rows[j] = vec![1];
                continue;
            }
            let mut row = std::mem::take(&mut rows[j]);
            row.resize(j * (m - j) + 1, 0);
            let shift = m - j;
            for (i, &c) in rows[j - 1].iter().enumerate() {
                row[i + shift] = row[i + shift]
                    .checked_add(c)
                    .ok_or(Error::ProfileOverflow)?;
            }
            rows[j] = row;
        }
    }
    RankProfile::new(std::mem::take(&mut rows[d]))
}

/// Exact Lemma-style bound comparison carried out on squared integers, so
/// equality cases are decided exactly.
#[derive(Debug, Clone)]
pub struct BoundComparison {
    pub exact_width: u64,
    pub bound_squared_lhs: BigUint,
    pub bound_squared_rhs: BigUint,
    pub holds: bool,
}

/// Cube-width bound: `w <= (n+d-2)^(d-1) * sqrt(2/d)`, verified as
/// `w^2 * d <= 2 * (n+d-2)^(2(d-1))`. Holds for every n >= 2, d >= 1, with
/// equality at d = 2.
pub fn lemma1_check(n: usize, d: usize) -> Result<BoundComparison> {
    if n < 2 || d < 1 {
        return Err(Error::BadParameter(
            "bound check needs n >= 2 and d >= 1".into(),
        ));
    }
    let width = cube_rank_profile(n, d)?.width();
    let lhs = BigUint::from(width).pow(2) * BigUint::from(d);
    let rhs = BigUint::from(2u32) * BigUint::from(n + d - 2).pow(2 * (d as u32 - 1));
    Ok(BoundComparison {
        exact_width: width,
        holds: lhs <= rhs,
        bound_squared_lhs: lhs,
        bound_squared_rhs: rhs,
    })
}

/// One point of the dominance-width bound `w * n * sqrt(d) < 2 * C(n,d)`,
/// verified as `(w*n)^2 * d < 4 * C(n,d)^2`. Only claimed for n large, so
/// `holds` is reported, not asserted; see [`lemma2_threshold`].
#[derive(Debug, Clone)]
pub struct DominanceBound {
    pub n: usize,
    pub d: usize,
    pub comparison: BoundComparison,
}

pub fn lemma2_check(n: usize, d: usize) -> Result<DominanceBound> {
    if d <= 1 || d > n {
        return Err(Error::BadParameter(format!(
            "dominance bound needs 1 < d <= n, got d = {d}, n = {n}"
        )));
    }
    let width = dominance_rank_profile(n, d)?.width();
    let lhs = (BigUint::from(width) * BigUint::from(n)).pow(2) * BigUint::from(d);
    let rhs = BigUint::from(4u32) * binomial_big(n as u64, d as u64).pow(2);
    Ok(DominanceBound {
        n,
        d,
        comparison: BoundComparison {
            exact_width: width,
            holds: lhs < rhs,
            bound_squared_lhs: lhs,
            bound_squared_rhs: rhs,
        },
    })
}

/// Smallest n from which the dominance-width bound holds through `n_max`.
#[derive(Debug, Clone)]
pub struct DominanceThreshold {
    pub d: usize,
    pub n_max: usize,
    /// Least n0 such that the bound holds for every n in `n0..=n_max`;
    /// None when it fails at n_max itself.
    pub threshold: Option<usize>,
    /// Points where the bound failed, for the report.
    pub failures: Vec<usize>,
}

pub fn lemma2_threshold(d: usize, n_max: usize) -> Result<DominanceThreshold> {
    if d <= 1 || n_max < d {
        return Err(Error::BadParameter(format!(
            "threshold scan needs 1 < d <= n_max, got d = {d}, n_max = {n_max}"
        )));
    }
    let mut failures = Vec::new();
    for n in d..=n_max {
        if !lemma2_check(n, d)?.comparison.holds {
            failures.push(n);
        }
    }
    let threshold = match failures.last() {
        Some(&worst) if worst == n_max => None,
        Some(&worst) => Some(worst + 1),
        None => Some(d),
    };
    Ok(DominanceThreshold {
        d,
        n_max,
        threshold,
        failures,
    })
}

fn validated_subsets(subsets: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let mut cleaned: Vec<Vec<u32>> = Vec::with_capacity(subsets.len());
    let expected = subsets.first().map_or(0, |s| s.len());
    for s in subsets {
        let mut s = s.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(s[0]));
        }
        if s.len() != expected {
            return Err(Error::MaskWrongSize {
                got: s.len() as u32,
                expected,
            });
        }
        cleaned.push(s);
    }
    Ok(cleaned)
}

/// `a <= b` componentwise on sorted index vectors of equal length.
fn vec_dominated(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Exact width of the input family under dominance, by Dilworth's theorem:
/// elements minus a maximum matching on the comparability graph (already
/// transitively closed). Subsets are index vectors so families over ground
/// sets larger than 64 work too. Duplicate subsets are collapsed.
pub fn dilworth_width(subsets: &[Vec<u32>]) -> Result<u64> {
    let mut subsets = validated_subsets(subsets)?;
    subsets.sort_by_cached_key(|s| (s.iter().map(|&x| x as u64).sum::<u64>(), s.clone()));
    subsets.dedup();
    let n = subsets.len();
    let cap = caps::caps().width_elems;
    if n > cap {
        return Err(Error::WidthCapExceeded(n as u64, cap));
    }
    // Sorted by rank and deduplicated, so every dominance from position i to
    // j > i is strict and all of them point left to right.
    let adj: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| vec_dominated(&subsets[i], &subsets[j]))
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let matched = matching::max_bipartite_matching(n, &adj);
    Ok((n - matched) as u64)
}

/// Enumerates the d-subsets of `{0..n-1}` as sorted index vectors, in
/// lexicographic order. Supports n beyond the 64-bit mask limit.
pub fn index_subsets(n: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut cur: Option<Vec<u32>> = (d <= n).then(|| (0..d).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let v = cur.as_mut().unwrap();
        // Rightmost index that can still move up.
        let mut i = v.len();
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if v[i] < n - (v.len() - i) as u32 {
                v[i] += 1;
                for j in i + 1..v.len() {
                    v[j] = v[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// True iff the masks are pairwise incomparable under dominance. Equal
/// subsets are comparable, so any repeat fails.
pub fn antichain_verify(subsets: &[SubsetMask]) -> Result<bool> {
    if let Some(&first) = subsets.first() {
        let k = first.k();
        for &m in subsets {
            if m.k() != k {
                return Err(Error::MaskWrongSize {
                    got: m.k(),
                    expected: k as usize,
                });
            }
        }
    }
    for (i, &a) in subsets.iter().enumerate() {
        for &b in &subsets[i + 1..] {
            if a.dominated_by(b) || b.dominated_by(a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::k_subsets;

    #[test]
    fn cube_profiles() {
        assert_eq!(cube_rank_profile(3, 2).unwrap().sizes, [1, 2, 3, 2, 1]);
        assert_eq!(cube_rank_profile(2, 3).unwrap().sizes, [1, 3, 3, 1]);
        assert_eq!(cube_rank_profile(5, 1).unwrap().sizes, [1; 5]);
        assert_eq!(cube_rank_profile(1, 4).unwrap().sizes, [1]);
        let p = cube_rank_profile(7, 4).unwrap();
        assert_eq!(p.total, 7u64.pow(4));
        assert_eq!(p.width(), p.sizes[p.sizes.len() / 2]);
        assert!(p.is_symmetric() && p.is_unimodal());
    }

    #[test]
    fn dominance_profiles() {
        assert_eq!(
            dominance_rank_profile(4, 2).unwrap().sizes,
            [1, 1, 2, 1, 1]
        );
        assert_eq!(
            dominance_rank_profile(6, 3).unwrap().sizes,
            [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]
        );
        assert_eq!(dominance_rank_profile(5, 5).unwrap().sizes, [1]);
        let p = dominance_rank_profile(10, 2).unwrap();
        assert_eq!(p.total, 45);
        assert_eq!(p.width(), 5);
    }

    #[test]
    fn dominance_profile_matches_direct_enumeration() {
        for (n, d) in [(4usize, 2usize), (6, 3), (7, 2), (8, 4), (9, 1)] {
            let mut level = vec![0u64; d * (n - d) + 1];
            let base: u32 = (0..d as u32).sum();
            for m in k_subsets(n, d) {
                level[(m.index_rank() - base) as usize] += 1;
            }
            assert_eq!(dominance_rank_profile(n, d).unwrap().sizes, level);
        }
    }

    #[test]
    fn lemma1_bound_examples() {
        let c = lemma1_check(3, 2).unwrap();
        assert_eq!(c.exact_width, 3);
        assert_eq!(c.bound_squared_lhs, BigUint::from(18u32));
        assert_eq!(c.bound_squared_rhs, BigUint::from(18u32));
        assert!(c.holds);

        let c = lemma1_check(2, 3).unwrap();
        assert_eq!(c.exact_width, 3);
        assert_eq!(
            (c.bound_squared_lhs, c.bound_squared_rhs),
            (BigUint::from(27u32), BigUint::from(162u32))
        );

        // d = 2 is always the equality case.
        for n in 2..20 {
            let c = lemma1_check(n, 2).unwrap();
            assert_eq!(c.bound_squared_lhs, c.bound_squared_rhs);
            assert!(c.holds);
        }
        assert!(lemma1_check(1, 1).is_err());
    }

    #[test]
    fn lemma2_bound_examples() {
        let c = lemma2_check(10, 2).unwrap().comparison;
        assert_eq!(c.exact_width, 5);
        assert_eq!(c.bound_squared_lhs, BigUint::from(5000u32));
        assert_eq!(c.bound_squared_rhs, BigUint::from(8100u32));
        assert!(c.holds);

        let c = lemma2_check(4, 2).unwrap().comparison;
        assert_eq!(
            (c.bound_squared_lhs, c.bound_squared_rhs),
            (BigUint::from(128u32), BigUint::from(144u32))
        );

        // n = d: width 1; n^2 d < 4 fails already at n = 2.
        assert!(!lemma2_check(2, 2).unwrap().comparison.holds);
    }

    #[test]
    fn lemma2_threshold_for_pairs() {
        let t = lemma2_threshold(2, 30).unwrap();
        assert_eq!(t.threshold, Some(3));
        assert_eq!(t.failures, vec![2]);
    }

    #[test]
    fn dilworth_matches_profiles() {
        let family = |n: u32, d: u32| index_subsets(n, d).collect::<Vec<_>>();
        assert_eq!(dilworth_width(&family(4, 2)).unwrap(), 2);
        assert_eq!(dilworth_width(&family(6, 3)).unwrap(), 3);
        assert_eq!(
            dilworth_width(&family(12, 2)).unwrap(),
            dominance_rank_profile(12, 2).unwrap().width()
        );
        // A single chain has width 1; an antichain has width = its size.
        let chain = vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![2, 3]];
        assert_eq!(dilworth_width(&chain).unwrap(), 1);
        let anti = vec![vec![0, 3], vec![1, 2]];
        assert_eq!(dilworth_width(&anti).unwrap(), 2);
        assert_eq!(dilworth_width(&[]).unwrap(), 0);
        assert!(dilworth_width(&[vec![0, 0]]).is_err());
        assert!(dilworth_width(&[vec![0], vec![0, 1]]).is_err());
    }

    #[test]
    fn index_subsets_enumerates_lexicographically() {
        let got: Vec<Vec<u32>> = index_subsets(4, 2).collect();
        assert_eq!(
            got,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(index_subsets(10, 4).count(), 210);
        assert_eq!(index_subsets(3, 4).count(), 0);
        assert_eq!(index_subsets(70, 1).count(), 70);
    }

    #[test]
    fn antichain_checks() {
        let m = |idx: &[usize]| SubsetMask::from_indices(idx);
        assert!(antichain_verify(&[m(&[0, 3]), m(&[1, 2])]).unwrap());
        assert!(!antichain_verify(&[m(&[0, 1]), m(&[0, 2])]).unwrap());
        assert!(!antichain_verify(&[m(&[0, 1]), m(&[0, 1])]).unwrap());
        assert!(antichain_verify(&[]).unwrap());
        assert!(antichain_verify(&[m(&[0, 1]), m(&[0, 1, 2])]).is_err());

        // Every fixed-rank level of the dominance order is an antichain.
        for rank in 1..=5 {
            let level: Vec<SubsetMask> = k_subsets(6, 2)
                .filter(|m| m.index_rank() == rank)
                .collect();
            assert!(antichain_verify(&level).unwrap());
        }
    }
}
