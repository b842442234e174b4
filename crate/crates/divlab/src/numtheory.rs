//! Divisor-function machinery and the two-unit-fraction equation
//! `m/n = a/x + b/y`.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::caps::{self, FACTORIZATION_CAP, ORACLE_BUDGET};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `C(n, k)` exactly; panics on u64 overflow (fine for n <= 64).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128).expect("binomial overflow") / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Prime factorization by trial division, `(prime, exponent)` pairs in
/// increasing prime order. Capped at [`FACTORIZATION_CAP`].
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroParameter);
    }
    if n > FACTORIZATION_CAP {
        return Err(Error::FactorizationCap(n, FACTORIZATION_CAP));
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Number of positive divisors, `d(n)`.
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .iter()
        .map(|&(_, e)| (e + 1) as u64)
        .product())
}

/// All positive divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n)? {
        let prev = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..prev {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Divisor counts for every integer in `1..=limit` by the harmonic double
/// loop; memory is capped by `DIVLAB_CAP_MB`.
fn divisor_count_table(limit: u64) -> Result<Vec<u32>> {
    let len = limit as usize + 1;
    let cap = caps::caps().sieve_len;
    if len > cap {
        return Err(Error::ProfileTooLong(len, cap));
    }
    let mut d = vec![0u32; len];
    let mut i = 1;
    while i < len {
        let mut j = i;
        while j < len {
            d[j] += 1;
            j += i;
        }
        i += 1;
    }
    Ok(d)
}

/// Where `d(n)^k / n` peaks on `2..=n_max`, reported exactly. Ties keep the
/// smallest n. The ratio staying bounded as `n_max` grows reflects
/// `d(n) = O(n^(1/k))` for every fixed k.
#[derive(Debug, Clone)]
pub struct GrowthScanReport {
    pub k: u32,
    pub n_max: u64,
    pub best_n: u64,
    pub best_d: u64,
    /// `d(best_n)^k / best_n`.
    pub ratio: Rational,
}

pub fn lemma3_scan(k: u32, n_max: u64) -> Result<GrowthScanReport> {
    if k == 0 {
        return Err(Error::ZeroParameter);
    }
    if n_max < 2 {
        return Err(Error::KOutOfRange {
            k: n_max as usize,
            n: 2,
        });
    }
    fn checked_pow_mul(base: u64, k: u32, factor: u64) -> Option<u128> {
        let mut acc = factor as u128;
        for _ in 0..k {
            acc = acc.checked_mul(base as u128)?;
        }
        Some(acc)
    }
    let table = divisor_count_table(n_max)?;
    let (mut best_n, mut best_d) = (2u64, table[2] as u64);
    for n in 3..=n_max {
        let dn = table[n as usize] as u64;
        // d^k/n > best_d^k/best_n, compared on cross products. u128 covers
        // every realistic k; the exact big-integer path is the fallback.
        let greater = match (
            checked_pow_mul(dn, k, best_n),
            checked_pow_mul(best_d, k, n),
        ) {
            (Some(lhs), Some(rhs)) => lhs > rhs,
            _ => {
                BigUint::from(dn).pow(k) * BigUint::from(best_n)
                    > BigUint::from(best_d).pow(k) * BigUint::from(n)
            }
        };
        if greater {
            (best_n, best_d) = (n, dn);
        }
    }
    let ratio = Rational::new(
        BigUint::from(best_d).pow(k).into(),
        BigUint::from(best_n).into(),
    );
    Ok(GrowthScanReport {
        k,
        n_max,
        best_n,
        best_d,
        ratio,
    })
}

/// The equation `m/n = a/x + b/y` with `m/n` already reduced; solutions are
/// positive integer pairs with `a/x` and `b/y` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FracPairInstance {
    pub m: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

impl FracPairInstance {
    pub fn new(m: u64, n: u64, a: u64, b: u64) -> Result<Self> {
        if m == 0 || n == 0 || a == 0 || b == 0 {
            return Err(Error::ZeroParameter);
        }
        if m.gcd(&n) != 1 {
            return Err(Error::NotCoprime { m, n });
        }
        Ok(FracPairInstance { m, n, a, b })
    }

    /// `a * b * n^2`, whose divisor count caps the number of solutions.
    pub fn abn2(&self) -> Result<u64> {
        self.a
            .checked_mul(self.b)
            .and_then(|v| v.checked_mul(self.n))
            .and_then(|v| v.checked_mul(self.n))
            .filter(|&v| v <= FACTORIZATION_CAP)
            .ok_or(Error::FactorizationCap(u64::MAX, FACTORIZATION_CAP))
    }
}

/// All solutions, sorted by x. Clearing denominators in the equation gives
/// `(mx - an)(my - bn) = a b n^2`, so each solution corresponds to a divisor
/// `e = mx - an` of `a b n^2`; enumerate those, keep the ones where both
/// quotients are integers and the lowest-terms filter passes.
pub fn frac_pair_solutions(inst: &FracPairInstance) -> Result<Vec<(u64, u64)>> {
    let FracPairInstance { m, n, a, b } = *inst;
    let abn2 = inst.abn2()?;
    let (m, n, a, b, abn2) = (m as u128, n as u128, a as u128, b as u128, abn2 as u128);
    let mut out = Vec::new();
    for e in divisors(abn2 as u64)? {
        let e = e as u128;
        let xm = a * n + e;
        let ym = b * n + abn2 / e;
        if xm % m != 0 || ym % m != 0 {
            continue;
        }
        let x = (xm / m) as u64;
        let y = (ym / m) as u64;
        if x.gcd(&(a as u64)) == 1 && y.gcd(&(b as u64)) == 1 {
            out.push((x, y));
        }
    }
    Ok(out)
}

/// Brute-force reference: walks every x that could satisfy the equation
/// (i.e. `0 < mx - an <= a b n^2`) and solves for y directly. Independent of
/// the divisor enumeration; used to cross-check it.
pub fn frac_pair_oracle(inst: &FracPairInstance, budget: Option<u64>) -> Result<Vec<(u64, u64)>> {
    let FracPairInstance { m, n, a, b } = *inst;
    let abn2 = inst.abn2()?;
    let x_lo = a * n / m + 1;
    let x_hi = (a as u128 * n as u128 + abn2 as u128) / m as u128;
    let budget = budget.unwrap_or(ORACLE_BUDGET);
    if x_hi.saturating_sub(x_lo as u128) >= budget as u128 {
        return Err(Error::OracleBudget(budget));
    }
    let mut out = Vec::new();
    for x in x_lo..=(x_hi as u64) {
        let e = m as u128 * x as u128 - a as u128 * n as u128;
        let num = b as u128 * n as u128 * x as u128;
        if num % e == 0 {
            let y = (num / e) as u64;
            if x.gcd(&a) == 1 && y.gcd(&b) == 1 {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// One row of [`frac_pair_grid_check`].
#[derive(Debug, Clone)]
pub struct GridCheckReport {
    pub limit: u64,
    pub instances: u64,
    pub total_solutions: u64,
    /// Solution lists from the divisor enumeration and the brute-force
    /// oracle agreed on every instance.
    pub all_match: bool,
    pub first_mismatch: Option<FracPairInstance>,
    /// Instances where the solution count exceeded d(a b n^2); the divisor
    /// correspondence makes this impossible, so nonzero means a bug.
    pub bound_violations: u64,
}

/// Runs both solvers over every `m, n, a, b <= limit` with `gcd(m, n) = 1`
/// and compares. Parallel over m; the merge is in m order, so the report is
/// deterministic.
pub fn frac_pair_grid_check(limit: u64) -> Result<GridCheckReport> {
    use rayon::prelude::*;
    if limit == 0 {
        return Err(Error::ZeroParameter);
    }
    struct Row {
        instances: u64,
        solutions: u64,
        mismatch: Option<FracPairInstance>,
        violations: u64,
    }
    let rows = (1..=limit)
        .into_par_iter()
        .map(|m| -> Result<Row> {
            let mut row = Row {
                instances: 0,
                solutions: 0,
                mismatch: None,
                violations: 0,
            };
            for n in 1..=limit {
                if m.gcd(&n) != 1 {
                    continue;
                }
                for a in 1..=limit {
                    for b in 1..=limit {
                        let inst = FracPairInstance { m, n, a, b };
                        let fast = frac_pair_solutions(&inst)?;
                        let slow = frac_pair_oracle(&inst, None)?;
                        row.instances += 1;
                        row.solutions += fast.len() as u64;
                        if fast != slow && row.mismatch.is_none() {
                            row.mismatch = Some(inst);
                        }
                        if fast.len() as u64 > divisor_count(a * b * n * n)? {
                            row.violations += 1;
                        }
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<Row>>>()?;
    let mut report = GridCheckReport {
        limit,
        instances: 0,
        total_solutions: 0,
        all_match: true,
        first_mismatch: None,
        bound_violations: 0,
    };
    for row in rows {
        report.instances += row.instances;
        report.total_solutions += row.solutions;
        if let Some(inst) = row.mismatch {
            if report.all_match {
                report.first_mismatch = Some(inst);
            }
            report.all_match = false;
        }
        report.bound_violations += row.violations;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn factorization_basics() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(720).unwrap(), vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(divisor_count(720).unwrap(), 30);
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(97).unwrap(), 2);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(factorize(FACTORIZATION_CAP + 1).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn divisor_count_is_multiplicative() {
        for (u, v) in [(8, 9), (25, 77), (16, 81), (100, 99)] {
            assert_eq!(
                divisor_count(u * v).unwrap(),
                divisor_count(u).unwrap() * divisor_count(v).unwrap()
            );
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(63, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial_big(64, 32), BigUint::from(binomial(64, 32)));
        assert_eq!(
            binomial_big(120, 60) % BigUint::from(1_000_000_007u64),
            BigUint::from(333_009_989u64)
        );
    }

    #[test]
    fn growth_scan_peaks() {
        let r = lemma3_scan(1, 100).unwrap();
        assert_eq!((r.best_n, r.best_d), (2, 2));
        assert_eq!(r.ratio, rat(1, 1));

        let r = lemma3_scan(2, 100).unwrap();
        assert_eq!((r.best_n, r.best_d), (12, 6));
        assert_eq!(r.ratio, rat(3, 1));
    }

    #[test]
    fn frac_pair_known_solutions() {
        let solve = |m, n, a, b| {
            frac_pair_solutions(&FracPairInstance::new(m, n, a, b).unwrap()).unwrap()
        };
        assert_eq!(solve(1, 1, 1, 1), vec![(2, 2)]);
        assert_eq!(solve(1, 2, 1, 1), vec![(3, 6), (4, 4), (6, 3)]);
        assert_eq!(solve(3, 4, 1, 1), vec![(2, 4), (4, 2)]);
        assert!(FracPairInstance::new(2, 4, 1, 1).is_err());
        assert!(FracPairInstance::new(1, 0, 1, 1).is_err());
    }

    #[test]
    fn frac_pair_solutions_satisfy_equation_and_bound() {
        for (m, n, a, b) in [(1, 2, 1, 1), (3, 4, 2, 5), (5, 6, 3, 2), (7, 2, 4, 9)] {
            let inst = FracPairInstance::new(m, n, a, b).unwrap();
            let sols = frac_pair_solutions(&inst).unwrap();
            for &(x, y) in &sols {
                assert_eq!(
                    rat(m as i64, n as i64),
                    rat(a as i64, x as i64) + rat(b as i64, y as i64)
                );
            }
            assert!(sols.len() as u64 <= divisor_count(a * b * n * n).unwrap());
            assert_eq!(sols, frac_pair_oracle(&inst, None).unwrap());
        }
    }

    #[test]
    fn oracle_budget_enforced() {
        let inst = FracPairInstance::new(1, 100, 50, 50).unwrap();
        assert!(matches!(
            frac_pair_oracle(&inst, Some(1000)),
            Err(Error::OracleBudget(1000))
        ));
    }

    #[test]
    fn small_grid_matches() {
        let r = frac_pair_grid_check(4).unwrap();
        assert!(r.all_match);
        assert_eq!(r.bound_violations, 0);
        // m,n coprime pairs up to 4: 11 of 16; times 16 (a,b) pairs.
        assert_eq!(r.instances, 11 * 16);
    }
}
