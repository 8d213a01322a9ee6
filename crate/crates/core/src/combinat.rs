//! Exact combinatorics for the diagonal k-body generators.
//!
//! The generator `h_k^(N)` is the sum of all `C(N, k)` products of `k`
//! Pauli-z operators. It is diagonal in the computational basis and its
//! eigenvalue on a basis string depends only on the number `m` of up spins
//! (zeros) in that string. Every value here is an exact integer.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_order, check_sector, QfiError, Result};

/// Memoized binomial coefficients.
///
/// Row `n` stores `C(n, 0..=r)` for the largest `r <= n/2` requested so far;
/// the upper half of each row is served through `C(n, r) = C(n, n - r)`.
/// The table only grows as far as callers reach, so its footprint is bounded
/// by the largest `(n, r)` seen.
#[derive(Debug, Default, Clone)]
pub struct BinomialCache {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `C(n, r)`, or zero when `r < 0` or `r > n`.
    pub fn get(&mut self, n: u64, r: i64) -> BigInt {
        if r < 0 || r as u64 > n {
            return BigInt::zero();
        }
        let r = r as u64;
        let r = r.min(n - r) as usize;
        let n = n as usize;
        if self.rows.len() <= n {
            self.rows.resize_with(n + 1, Vec::new);
        }
        let row = &mut self.rows[n];
        if row.is_empty() {
            row.push(BigInt::one());
        }
        while row.len() <= r {
            let j = row.len();
            // C(n, j) = C(n, j - 1) * (n - j + 1) / j, exact at every step
            let next = &row[j - 1] * BigInt::from(n - j + 1) / BigInt::from(j);
            row.push(next);
        }
        row[r].clone()
    }

    /// Number of cached entries, across all rows.
    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

thread_local! {
    static CACHE: RefCell<BinomialCache> = RefCell::new(BinomialCache::new());
}

/// Runs `f` against this thread's binomial cache. Each worker thread owns its
/// own cache, so parallel scans never contend on it.
pub fn with_cache<T>(f: impl FnOnce(&mut BinomialCache) -> T) -> T {
    CACHE.with(|c| f(&mut c.borrow_mut()))
}

/// `C(n, r)` with the zero convention outside `0 <= r <= n`.
pub fn binom(n: u64, r: i64) -> BigInt {
    with_cache(|c| c.get(n, r))
}

fn sector_eigenvalue_in(cache: &mut BinomialCache, n: usize, k: usize, m: usize) -> BigInt {
    // j counts the single-body factors landing on up spins (+1 each); the
    // remaining k - j land on down spins (-1 each).
    let mut total = BigInt::zero();
    for j in 0..=k {
        let term = cache.get(m as u64, j as i64) * cache.get((n - m) as u64, (k - j) as i64);
        if (k - j) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Eigenvalue of `h_k^(N)` on any basis string with `m` up spins:
/// `sum_j (-1)^(k-j) C(m, j) C(N-m, k-j)`.
pub fn sector_eigenvalue(n: usize, k: usize, m: usize) -> Result<BigInt> {
    check_order(n, k)?;
    check_sector(n, m)?;
    Ok(with_cache(|c| sector_eigenvalue_in(c, n, k, m)))
}

/// Sector eigenvalues of one k-body generator, indexed by up-spin count `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorSpectrum {
    pub n: usize,
    pub k: usize,
    /// `values[m]` is the eigenvalue of sector `m`, for `m = 0..=n`.
    pub values: Vec<BigInt>,
}

impl SectorSpectrum {
    pub fn compute(n: usize, k: usize) -> Result<Self> {
        check_order(n, k)?;
        let values = with_cache(|c| (0..=n).map(|m| sector_eigenvalue_in(c, n, k, m)).collect());
        Ok(Self { n, k, values })
    }

    /// Number of basis strings in sector `m`, i.e. `C(N, m)`.
    pub fn multiplicity(&self, m: usize) -> BigInt {
        binom(self.n as u64, m as i64)
    }

    pub fn max(&self) -> &BigInt {
        self.values.iter().max().expect("spectrum has N + 1 >= 2 sectors")
    }

    pub fn min(&self) -> &BigInt {
        self.values.iter().min().expect("spectrum has N + 1 >= 2 sectors")
    }

    /// Every sector attaining `target`, ascending.
    pub fn sectors_at(&self, target: &BigInt) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == target)
            .map(|(m, _)| m)
            .collect()
    }
}

/// Number of k-subsets whose product of signs is +1 on a string with `m` up
/// spins: `sum_i C(m, 2i) C(N-m, k-2i)`. Defined for even `k` only.
pub fn n0(n: usize, k: usize, m: usize) -> Result<BigInt> {
    check_order(n, k)?;
    check_sector(n, m)?;
    if k % 2 != 0 {
        return Err(QfiError::OddOrder(k));
    }
    Ok(with_cache(|c| {
        (0..=k / 2).fold(BigInt::zero(), |acc, i| {
            acc + c.get(m as u64, (2 * i) as i64) * c.get((n - m) as u64, (k - 2 * i) as i64)
        })
    }))
}

/// Natural logarithm of a positive big integer, accurate to double precision
/// even when the value overflows `f64`.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln_big needs a positive argument");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("64-bit head").ln() + shift as f64 * std::f64::consts::LN_2
}
