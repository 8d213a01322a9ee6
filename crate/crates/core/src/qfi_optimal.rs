//! Maximum QFI over all pure probes for the pure k-body generator.
//!
//! For a pure probe the QFI is four times the generator variance, which is
//! largest for the equal superposition of the extremal eigenvectors, giving
//! `(lambda_max - lambda_min)^2`. The extremes are found by scanning every
//! integer sector; no continuum optimum is assumed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinat::{binom, ln_big, SectorSpectrum};
use crate::error::{check_order, QfiError, Result};
use crate::probes::{qubit_probe, ProbeState, TieRule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QfiReport {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::bigint_serde")]
    pub qfi: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub lambda_max: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub lambda_min: BigInt,
    pub argmax_sectors: Vec<usize>,
    pub argmin_sectors: Vec<usize>,
    /// Optimal probe under [`TieRule::PreferProduct`].
    pub probe: ProbeState,
}

/// Exhaustive sector scan for `h_k^(N)`. All tied sectors are retained.
pub fn optimal_qfi(n: usize, k: usize) -> Result<QfiReport> {
    let spectrum = SectorSpectrum::compute(n, k)?;
    let lambda_max = spectrum.max().clone();
    let lambda_min = spectrum.min().clone();
    let argmax_sectors = spectrum.sectors_at(&lambda_max);
    let argmin_sectors = spectrum.sectors_at(&lambda_min);
    let range = &lambda_max - &lambda_min;
    let probe = qubit_probe(n, &argmin_sectors, TieRule::PreferProduct);
    Ok(QfiReport {
        n,
        k,
        qfi: &range * &range,
        lambda_max,
        lambda_min,
        argmax_sectors,
        argmin_sectors,
        probe,
    })
}

/// `(2N^2 - 1 + (-1)^N)^2 / 16`, the two-body optimum.
pub fn optimal_qfi_closed_k2(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(QfiError::TooSmall { n, min: 2 });
    }
    let n = BigInt::from(n);
    let parity = if n.is_even() { 1 } else { -1 };
    let base = BigInt::from(2) * &n * &n - 1 + parity;
    let (q, r) = Integer::div_rem(&(&base * &base), &BigInt::from(16));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Large-N closed form. Odd `k` gives `4 C(N,k)^2`; even `k` gives
/// `[C(N,k) - (-1)^(k/2) C(N/2, k/2)]^2`, which assumes the minimizing
/// sector is `N/2` and so can undershoot the exact optimum at small `N`.
pub fn asymptotic_qfi(n: usize, k: usize) -> Result<BigInt> {
    check_order(n, k)?;
    let c = binom(n as u64, k as i64);
    if k % 2 == 1 {
        return Ok(BigInt::from(4) * &c * &c);
    }
    if n % 2 != 0 {
        return Err(QfiError::OddPartyCount { n });
    }
    let centre = binom((n / 2) as u64, (k / 2) as i64);
    let range = if (k / 2) % 2 == 0 { c - centre } else { c + centre };
    Ok(&range * &range)
}

/// Ratio of the exact optimum to its leading large-N behaviour,
/// `N^(2k)/(k!)^2` for even `k` and `4 N^(2k)/(k!)^2` for odd `k`.
pub fn scaling_ratio(n: usize, k: usize) -> Result<f64> {
    let report = optimal_qfi(n, k)?;
    let ln_fact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
    let mut ln_norm = 2.0 * k as f64 * (n as f64).ln() - 2.0 * ln_fact;
    if k % 2 == 1 {
        ln_norm += 4f64.ln();
    }
    Ok((ln_big(&report.qfi) - ln_norm).exp())
}
