//! Resource ceilings. `DIVLAB_CAP_MB` scales the memory-bound caps; compute
//! budgets are fixed here or overridden per call.

use std::sync::OnceLock;

/// Largest number to factorize by trial division in reasonable time.
pub const FACTORIZATION_CAP: u64 = 1_000_000_000_000;

/// Iteration budget for the brute-force fraction-pair oracle.
pub const ORACLE_BUDGET: u64 = 200_000_000;

/// Default multiplier range scanned when completing a prefix to an anti-pencil.
pub const DEFAULT_MULTIPLIER_LIMIT: u64 = 1000;

const DEFAULT_CAP_MB: u64 = 64;

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Max rank-profile length (levels are u64 counts, 8 bytes each).
    pub profile_len: usize,
    /// Max poset elements for the exact Dilworth width oracle. The matching
    /// graph stores up to N^2/2 edges of 4 bytes.
    pub width_elems: usize,
    /// Max length of the divisor-count sieve (u32 per entry).
    pub sieve_len: usize,
}

fn from_mb(mb: u64) -> Caps {
    Caps {
        profile_len: (mb * 1024 * 1024 / 8) as usize,
        width_elems: ((mb * 1024 * 1024 / 2).isqrt() as usize).max(100),
        sieve_len: (mb * 1024 * 1024 / 4) as usize,
    }
}

/// Active caps: defaults sized for ~64 MB of table memory (width cap ~5000
/// elements), scaled by the `DIVLAB_CAP_MB` environment variable if set.
pub fn caps() -> Caps {
    static CAPS: OnceLock<Caps> = OnceLock::new();
    *CAPS.get_or_init(|| {
        let mb = std::env::var("DIVLAB_CAP_MB")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .filter(|&mb| mb > 0)
            .unwrap_or(DEFAULT_CAP_MB);
        from_mb(mb)
    })
}
