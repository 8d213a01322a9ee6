//! Brute-force ground truth.
//!
//! Every basis string of `N` qubits is enumerated and every diagonal term of
//! the generator is evaluated literally. Nothing here uses the closed-form
//! sector eigenvalues, so these routines can check them independently.
//!
//! Basis strings are bit patterns: bit `p` of the pattern is party `p`, with
//! `0` an up spin (`+1` under Pauli-z) and `1` a down spin (`-1`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{check_order, check_unit_interval, QfiError, Result};

/// Largest party count the enumerators accept.
pub const MAX_BRUTE_PARTIES: usize = 12;

/// Absolute tolerance used to merge real eigenvalues.
pub const REAL_TIE_TOLERANCE: f64 = 1e-9;

/// Eigenvalues with multiplicities, sorted by ascending eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMultiset<V> {
    pub n: usize,
    pub description: String,
    pub entries: Vec<(V, u64)>,
}

impl<V: Copy + PartialOrd> SpectrumMultiset<V> {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn min(&self) -> V {
        self.entries[0].0
    }

    pub fn max(&self) -> V {
        self.entries[self.entries.len() - 1].0
    }
}

impl SpectrumMultiset<i64> {
    pub fn multiplicity_of(&self, value: i64) -> u64 {
        self.entries
            .iter()
            .find(|(v, _)| *v == value)
            .map_or(0, |(_, c)| *c)
    }
}

fn check_brute(n: usize, k: usize) -> Result<()> {
    if n > MAX_BRUTE_PARTIES {
        return Err(QfiError::TooLarge {
            n,
            max: MAX_BRUTE_PARTIES,
        });
    }
    check_order(n, k)
}

fn subset_sign(string: u32, subset: u32) -> i64 {
    if (string & subset).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Parses a basis string such as `"0011"` into the bit-pattern convention
/// used here (first character is party 0).
pub fn parse_basis_string(s: &str) -> Option<u32> {
    if s.is_empty() || s.len() > 32 {
        return None;
    }
    s.chars().enumerate().try_fold(0u32, |acc, (p, ch)| match ch {
        '0' => Some(acc),
        '1' => Some(acc | (1 << p)),
        _ => None,
    })
}

/// Number of up spins in a bit-pattern string of `n` parties.
pub fn up_count(n: usize, string: u32) -> usize {
    n - string.count_ones() as usize
}

/// Eigenvalue of `h_k^(N)` on one basis string, by summing all `C(N, k)`
/// terms.
pub fn brute_value(n: usize, k: usize, string: u32) -> i64 {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|subset| subset_sign(string, subset))
        .sum()
}

/// Full spectrum of `h_k^(N)` by enumeration of all `2^N` strings.
pub fn brute_spectrum(n: usize, k: usize) -> Result<SpectrumMultiset<i64>> {
    check_brute(n, k)?;
    let subsets: Vec<u32> = (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .collect();
    let mut counts = BTreeMap::new();
    for string in 0u32..1 << n {
        let value: i64 = subsets.iter().map(|&t| subset_sign(string, t)).sum();
        *counts.entry(value).or_insert(0u64) += 1;
    }
    Ok(SpectrumMultiset {
        n,
        description: format!("h_{k}^({n})"),
        entries: counts.into_iter().collect(),
    })
}

/// `(lambda_max - lambda_min)^2`, the largest QFI any pure probe reaches.
pub fn brute_max_qfi(n: usize, k: usize) -> Result<BigInt> {
    let spectrum = brute_spectrum(n, k)?;
    let range = BigInt::from(spectrum.max() - spectrum.min());
    Ok(&range * &range)
}

/// Eigenvalue of `K_x = sum_i i x^(i-1) h_i^(N)` (orders `1..=k`) on one
/// basis string, by direct term enumeration.
pub fn brute_case2_value(n: usize, k: usize, x: f64, string: u32) -> f64 {
    let mut by_order = vec![0i64; k + 1];
    for subset in 1u32..1 << n {
        let order = subset.count_ones() as usize;
        if order <= k {
            by_order[order] += subset_sign(string, subset);
        }
    }
    (1..=k)
        .map(|i| i as f64 * x.powi(i as i32 - 1) * by_order[i] as f64)
        .sum()
}

/// Spectrum of `K_x`, with eigenvalues within [`REAL_TIE_TOLERANCE`] merged.
pub fn brute_case2_spectrum(n: usize, k: usize, x: f64) -> Result<SpectrumMultiset<f64>> {
    check_brute(n, k)?;
    check_unit_interval("x", x)?;
    let mut values: Vec<f64> = (0u32..1 << n)
        .map(|s| brute_case2_value(n, k, x, s))
        .collect();
    values.sort_by(f64::total_cmp);
    let mut entries: Vec<(f64, u64)> = Vec::new();
    for v in values {
        match entries.last_mut() {
            Some((rep, count)) if (v - *rep).abs() <= REAL_TIE_TOLERANCE => *count += 1,
            _ => entries.push((v, 1)),
        }
    }
    Ok(SpectrumMultiset {
        n,
        description: format!("K_{x} up to order {k}, N = {n}"),
        entries,
    })
}
