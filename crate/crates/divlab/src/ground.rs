//! Ground sets and subset masks.
//!
//! A [`GroundSet`] holds distinct positive rationals in increasing order, so
//! index `n-1` is the maximum element. Subsets are bitmasks over those sorted
//! indices, which caps supported sets at 64 elements; every enumeration in
//! the crate walks masks in increasing numeric order, i.e. colexicographic
//! order on index sets.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    elements: Vec<Rational>,
}

impl GroundSet {
    /// Sorts, then rejects empty input, nonpositive elements, duplicates, and
    /// sets larger than [`MAX_ELEMENTS`].
    pub fn new(mut elements: Vec<Rational>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n: elements.len(),
                max: MAX_ELEMENTS,
            });
        }
        elements.sort();
        if !elements[0].is_positive() {
            return Err(Error::NonPositiveElement(elements[0].clone()));
        }
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].clone()));
            }
        }
        Ok(GroundSet { elements })
    }

    pub fn from_integers(values: &[u64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Parses a comma-separated element list like `1/15,1/10,1/3,1/2`.
    pub fn parse(input: &str) -> Result<Self> {
        let elements = input
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements)
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Rational] {
        &self.elements
    }

    pub fn max_element(&self) -> &Rational {
        self.elements.last().expect("ground sets are nonempty")
    }

    pub fn total(&self) -> Rational {
        self.elements.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }

    /// Same set divided by its total, so the result sums to exactly 1.
    pub fn normalize(&self) -> GroundSet {
        self.scale(&self.total().recip())
    }

    /// Multiplies every element by `factor > 0`.
    pub fn scale(&self, factor: &Rational) -> GroundSet {
        assert!(factor.is_positive(), "scale factor must be positive");
        GroundSet {
            elements: self.elements.iter().map(|e| e * factor).collect(),
        }
    }

    /// Least common multiple of the element denominators; scaling by it
    /// yields an integer set.
    pub fn denominator_lcm(&self) -> BigInt {
        self.elements
            .iter()
            .fold(BigInt::one(), |l, e| l.lcm(e.denom()))
    }

    /// The elements as u64 integers, if that is what they all are.
    pub fn as_integers(&self) -> Option<Vec<u64>> {
        self.elements
            .iter()
            .map(|e| {
                if e.is_integer() {
                    u64::try_from(e.numer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn subset_sum(&self, mask: SubsetMask) -> Rational {
        let mut sum = Rational::zero();
        for i in mask.indices() {
            sum += &self.elements[i];
        }
        sum
    }

    pub fn subset_elements(&self, mask: SubsetMask) -> Vec<Rational> {
        mask.indices().map(|i| self.elements[i].clone()).collect()
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        let n = self.n();
        if n < MAX_ELEMENTS && mask.bits() >> n != 0 {
            return Err(Error::MaskOutOfRange {
                mask: mask.bits(),
                n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A subset of ground-set indices packed into a u64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub fn new(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut bits = 0u64;
        for &i in indices {
            assert!(i < MAX_ELEMENTS);
            bits |= 1 << i;
        }
        SubsetMask(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn k(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_ELEMENTS && self.0 >> index & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Dominance comparison between equal-size subsets: `self <= other` iff
    /// the i-th smallest index of `self` is at most the i-th smallest index
    /// of `other`, for every i.
    pub fn dominated_by(self, other: SubsetMask) -> bool {
        debug_assert_eq!(self.k(), other.k());
        let mut x = self.0;
        let mut y = other.0;
        while x != 0 && y != 0 {
            if x.trailing_zeros() > y.trailing_zeros() {
                return false;
            }
            x &= x - 1;
            y &= y - 1;
        }
        true
    }

    pub fn strictly_dominated_by(self, other: SubsetMask) -> bool {
        self != other && self.dominated_by(other)
    }

    /// Sum of the member indices: the rank of this subset in dominance order.
    pub fn index_rank(self) -> u32 {
        self.indices().map(|i| i as u32).sum()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.indices().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// All k-element subsets of `{0..n-1}` in increasing mask order, produced by
/// the carry-ripple successor trick.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= MAX_ELEMENTS && k <= n);
    if k == 0 {
        // A single empty subset; callers validating k >= 1 never see it.
        return KSubsets {
            next: Some(0),
            last: 0,
        };
    }
    let first = ((1u128 << k) - 1) as u64;
    KSubsets {
        next: Some(first),
        last: first << (n - k),
    }
}

pub struct KSubsets {
    next: Option<u64>,
    last: u64,
}

impl Iterator for KSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == self.last {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            Some(ripple | ((cur ^ ripple) >> 2) / low)
        };
        Some(SubsetMask(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn construction_sorts_and_validates() {
        let g = GroundSet::parse("7,1,11,5").unwrap();
        assert_eq!(g.to_string(), "1,5,7,11");
        assert_eq!(*g.max_element(), rat(11, 1));
        assert!(GroundSet::new(vec![]).is_err());
        assert!(GroundSet::parse("1,1").is_err());
        assert!(GroundSet::parse("2/4,1/2").is_err());
        assert!(GroundSet::parse("0,1").is_err());
        assert!(GroundSet::parse("-1/2,1").is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let g = GroundSet::parse("1/15,1/10,1/3,1/2").unwrap();
        assert_eq!(GroundSet::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn normalize_gives_unit_total() {
        let g = GroundSet::parse("1,5,7,11").unwrap();
        let n = g.normalize();
        assert!(n.is_normalized());
        assert_eq!(n.elements()[0], rat(1, 24));
        assert_eq!(g.denominator_lcm(), BigInt::from(1));
        assert_eq!(n.denominator_lcm(), BigInt::from(24));
        assert_eq!(g.as_integers().unwrap(), vec![1, 5, 7, 11]);
        assert!(n.as_integers().is_none());
    }

    #[test]
    fn subset_sums_and_masks() {
        let g = GroundSet::parse("1,5,7,11").unwrap();
        let m = SubsetMask::from_indices(&[0, 2]);
        assert_eq!(g.subset_sum(m), rat(8, 1));
        assert_eq!(m.to_string(), "{0,2}");
        assert!(m.contains(2) && !m.contains(1));
        assert!(g.check_mask(SubsetMask::new(0b10000)).is_err());
    }

    #[test]
    fn k_subsets_are_colex_and_complete() {
        let all: Vec<u64> = k_subsets(4, 2).map(|m| m.bits()).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        for (n, k) in [(1, 1), (6, 3), (10, 1), (10, 10), (12, 5)] {
            let masks: Vec<SubsetMask> = k_subsets(n, k).collect();
            assert_eq!(masks.len() as u64, binomial(n as u64, k as u64));
            assert!(masks.windows(2).all(|w| w[0] < w[1]));
            assert!(masks.iter().all(|m| m.k() as usize == k));
        }
    }

    #[test]
    fn k_subsets_survives_full_width() {
        let mut it = k_subsets(64, 64);
        assert_eq!(it.next(), Some(SubsetMask(u64::MAX)));
        assert_eq!(it.next(), None);
        assert_eq!(k_subsets(64, 63).count(), 64);
    }

    #[test]
    fn dominance_comparisons() {
        let m = |idx: &[usize]| SubsetMask::from_indices(idx);
        assert!(m(&[0, 1]).dominated_by(m(&[0, 3])));
        assert!(m(&[0, 1]).strictly_dominated_by(m(&[2, 3])));
        assert!(!m(&[0, 3]).dominated_by(m(&[1, 2])));
        assert!(!m(&[1, 2]).dominated_by(m(&[0, 3])));
        assert!(m(&[1, 2]).dominated_by(m(&[1, 2])));
        assert!(!m(&[1, 2]).strictly_dominated_by(m(&[1, 2])));
        assert_eq!(m(&[0, 2, 5]).index_rank(), 7);
    }

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        let mut acc = 1u128;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as u64
    }
}
