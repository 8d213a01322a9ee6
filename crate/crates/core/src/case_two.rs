//! Generators with every interaction order up to `k`:
//! `K_x = sum_{i=1..k} i x^(i-1) h_i^(N)`, the derivative with respect to `x`
//! of `sum_i x^i h_i^(N)`.
//!
//! Sector eigenvalues stay exact integers per order; only the weights `x^i`
//! are real, so extremes are compared with an absolute tie tolerance.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinat::SectorSpectrum;
use crate::error::{check_order, check_sector, check_unit_interval, QfiError, Result};

/// Eigenvalues closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case2Report {
    pub n: usize,
    pub k: usize,
    pub x: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub argmax_sectors: Vec<usize>,
    pub argmin_sectors: Vec<usize>,
    pub qfi: f64,
}

fn check_args(n: usize, k: usize, x: f64) -> Result<()> {
    check_order(n, k)?;
    check_unit_interval("x", x)
}

/// `lambda^K[m]` for `m = 0..=N`.
pub fn case2_sector_values(n: usize, k: usize, x: f64) -> Result<Vec<f64>> {
    check_args(n, k, x)?;
    let mut values = vec![0.0; n + 1];
    for order in 1..=k {
        let weight = order as f64 * x.powi(order as i32 - 1);
        if weight == 0.0 {
            continue;
        }
        let spectrum = SectorSpectrum::compute(n, order)?;
        for (v, exact) in values.iter_mut().zip(&spectrum.values) {
            *v += weight * exact.to_f64().expect("sector eigenvalue fits in f64");
        }
    }
    Ok(values)
}

/// Eigenvalue of `K_x` in sector `m`.
pub fn case2_sector_eigenvalue(n: usize, k: usize, x: f64, m: usize) -> Result<f64> {
    check_sector(n, m)?;
    Ok(case2_sector_values(n, k, x)?[m])
}

/// Exhaustive sector scan; every sector within [`TIE_TOLERANCE`] of an
/// extreme is reported.
pub fn case2_optimal(n: usize, k: usize, x: f64) -> Result<Case2Report> {
    let values = case2_sector_values(n, k, x)?;
    let lambda_max = values.iter().copied().fold(f64::MIN, f64::max);
    let lambda_min = values.iter().copied().fold(f64::MAX, f64::min);
    let near = |target: f64| -> Vec<usize> {
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| (*v - target).abs() <= TIE_TOLERANCE)
            .map(|(m, _)| m)
            .collect()
    };
    let range = lambda_max - lambda_min;
    Ok(Case2Report {
        n,
        k,
        x,
        lambda_max,
        lambda_min,
        argmax_sectors: near(lambda_max),
        argmin_sectors: near(lambda_min),
        qfi: range * range,
    })
}

/// One cell of the dichotomy grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyCell {
    pub k: usize,
    pub n: usize,
    pub argmin_sectors: Vec<usize>,
    pub lambda_min: f64,
}

impl DichotomyCell {
    pub fn minimum_at_zero(&self) -> bool {
        self.argmin_sectors.contains(&0)
    }
}

/// Minimizing sectors of `K_x` for every `k` in `1..=k_max` and every `N` in
/// `k..=n_max`, in `(k, N)` order.
pub fn dichotomy_map(k_max: usize, n_max: usize, x: f64) -> Result<Vec<DichotomyCell>> {
    if k_max == 0 || k_max > n_max {
        return Err(QfiError::InvalidGrid(format!(
            "need 1 <= k_max <= n_max, got k_max = {k_max}, n_max = {n_max}"
        )));
    }
    if !(x > 0.0 && x <= 1.0) {
        return Err(QfiError::OutOfDomain {
            name: "x",
            value: x,
            range: "(0, 1]",
        });
    }
    let mut cells = Vec::new();
    for k in 1..=k_max {
        for n in k..=n_max {
            let report = case2_optimal(n, k, x)?;
            cells.push(DichotomyCell {
                k,
                n,
                argmin_sectors: report.argmin_sectors,
                lambda_min: report.lambda_min,
            });
        }
    }
    Ok(cells)
}
