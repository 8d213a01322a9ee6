//! Least-squares scaling fits `ln F = alpha ln N + beta` with unit weights,
//! standard errors from `(W^T W)^-1` and Student-t marginal intervals.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::combinat::ln_big;
use crate::error::{QfiError, Result};
use crate::qfi_optimal::optimal_qfi;
use crate::qfi_product::sp_qfi_max;

/// Number of fitted parameters.
pub const N_PARAMS: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Fitted exponent.
    pub alpha_hat: f64,
    /// Fitted intercept of `ln F`; the prefactor is `exp(beta_hat)`.
    pub beta_hat: f64,
    pub s_alpha: f64,
    pub s_beta: f64,
    /// `sqrt(chi^2 / (points - params))`.
    pub r_min: f64,
    pub chi2: f64,
    /// Half-width of the interval on `alpha_hat`.
    pub ci_alpha: f64,
    pub ci_beta: f64,
    pub confidence: f64,
    pub t_value: f64,
    pub n_points: usize,
    pub n_params: usize,
}

impl FitResult {
    /// `exp(beta_hat)`, the `beta` of `F ~ beta N^alpha`.
    pub fn prefactor(&self) -> f64 {
        self.beta_hat.exp()
    }
}

/// CDF of Student's t with `dof` degrees of freedom.
pub fn student_t_cdf(t: f64, dof: f64) -> f64 {
    if t == 0.0 {
        return 0.5;
    }
    let tail = 0.5 * beta_reg(0.5 * dof, 0.5, dof / (dof + t * t));
    if t > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Inverse CDF of Student's t, by bisection on [`student_t_cdf`] to `1e-10`.
pub fn student_t_quantile(dof: u64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(QfiError::OutOfDomain {
            name: "p",
            value: p,
            range: "(0, 1)",
        });
    }
    if dof == 0 {
        return Err(QfiError::OutOfDomain {
            name: "dof",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p < 0.5 {
        return student_t_quantile(dof, 1.0 - p).map(|t| -t);
    }
    let dof = dof as f64;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while student_t_cdf(hi, dof) < p {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if student_t_cdf(mid, dof) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Straight-line fit `y = alpha x + beta` where `x` is already `ln N`.
pub fn fit_line(x: &[f64], y: &[f64], confidence: f64) -> Result<FitResult> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 3 {
        return Err(QfiError::TooFewPoints(n));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(QfiError::OutOfDomain {
            name: "confidence",
            value: confidence,
            range: "(0, 1)",
        });
    }
    let nf = n as f64;
    let x_mean = x.iter().sum::<f64>() / nf;
    let y_mean = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - x_mean).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - x_mean) * (b - y_mean)).sum();
    let alpha_hat = sxy / sxx;
    let beta_hat = y_mean - alpha_hat * x_mean;
    let chi2: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - alpha_hat * a - beta_hat).powi(2))
        .sum();
    let dof = n - N_PARAMS;
    let r_min = (chi2 / dof as f64).sqrt();
    // (W^T W)^-1 for W = [ln x_i, 1]; det = n * Sxx
    let sum_x2: f64 = x.iter().map(|v| v * v).sum();
    let inv11 = 1.0 / sxx;
    let inv22 = sum_x2 / (nf * sxx);
    let s_alpha = r_min * inv11.sqrt();
    let s_beta = r_min * inv22.sqrt();
    let nu = 1.0 - confidence;
    let t_value = student_t_quantile(dof as u64, 1.0 - nu / 2.0)?;
    Ok(FitResult {
        alpha_hat,
        beta_hat,
        s_alpha,
        s_beta,
        r_min,
        chi2,
        ci_alpha: s_alpha * t_value,
        ci_beta: s_beta * t_value,
        confidence,
        t_value,
        n_points: n,
        n_params: N_PARAMS,
    })
}

/// Fits `ln F` against `ln N` for points `(N, F)`.
pub fn loglog_fit(points: &[(f64, f64)], confidence: f64) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(QfiError::TooFewPoints(points.len()));
    }
    let mut seen: Vec<f64> = Vec::with_capacity(points.len());
    for &(n, f) in points {
        if !(f > 0.0) {
            return Err(QfiError::NonPositiveValue { n, value: f });
        }
        if !(n > 0.0) {
            return Err(QfiError::NonPositiveValue { n, value: n });
        }
        if seen.contains(&n) {
            return Err(QfiError::DuplicateAbscissa(n));
        }
        seen.push(n);
    }
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    fit_line(&x, &y, confidence)
}

/// Which maximum QFI a scaling fit targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingMode {
    /// Optimum over all probes.
    Optimal,
    /// Optimum over symmetric product probes.
    Product,
}

impl FromStr for ScalingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "optimal" => Ok(ScalingMode::Optimal),
            "product" => Ok(ScalingMode::Product),
            other => Err(format!("unknown mode '{other}' (expected optimal or product)")),
        }
    }
}

impl fmt::Display for ScalingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalingMode::Optimal => "optimal",
            ScalingMode::Product => "product",
        })
    }
}

/// `N_min, N_min + step, ..., <= N_max`.
pub fn n_grid(n_min: usize, n_max: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 || n_min == 0 || n_min > n_max {
        return Err(QfiError::InvalidGrid(format!(
            "need 1 <= n_min <= n_max and step >= 1, got {n_min}..{n_max} step {step}"
        )));
    }
    Ok((n_min..=n_max).step_by(step).collect())
}

/// `ln F` of the chosen maximum QFI at every `N` of the grid, in grid order.
pub fn scaling_log_values(k: usize, mode: ScalingMode, ns: &[usize]) -> Result<Vec<f64>> {
    if let Some(&n) = ns.iter().find(|&&n| n < k) {
        return Err(QfiError::InvalidOrder { n, k });
    }
    ns.par_iter()
        .map(|&n| match mode {
            ScalingMode::Optimal => optimal_qfi(n, k).map(|r| ln_big(&r.qfi)),
            ScalingMode::Product => sp_qfi_max(n, k).map(|m| m.qfi.ln()),
        })
        .collect()
}

/// Log-log fit of the chosen maximum QFI over `N` in `[n_min, n_max]`.
pub fn fit_scaling(
    k: usize,
    mode: ScalingMode,
    n_min: usize,
    n_max: usize,
    step: usize,
    confidence: f64,
) -> Result<FitResult> {
    let ns = n_grid(n_min, n_max, step)?;
    let y = scaling_log_values(k, mode, &ns)?;
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    fit_line(&x, &y, confidence)
}
