//! Arbitrary local dimension.
//!
//! For `sum over k-subsets of H (x) ... (x) H` every eigenvalue is the
//! elementary symmetric polynomial `e_k` of one local eigenvalue per party.
//! `e_k` is affine in each argument, so its extremes sit at assignments that
//! give every party either the largest local eigenvalue `delta_M` or the
//! smallest `delta_m`. Only the count `m` of `delta_M` parties matters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::binom;
use crate::error::{check_order, QfiError, Result};
use crate::probes::{pick_bottom, ProbeState, TieRule};
use num_traits::ToPrimitive;

/// `|delta_M| = |delta_m|` is decided with this absolute tolerance.
pub const SCENARIO_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalExtremes {
    pub delta_max: f64,
    pub delta_min: f64,
}

impl LocalExtremes {
    pub fn new(delta_max: f64, delta_min: f64) -> Result<Self> {
        if !(delta_max > delta_min) {
            return Err(QfiError::DegenerateExtremes {
                delta_max,
                delta_min,
            });
        }
        Ok(Self {
            delta_max,
            delta_min,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    /// Both extremes positive.
    A1,
    /// Both extremes negative.
    A2,
    /// Opposite signs, `|delta_M| > |delta_m|`.
    A3,
    /// Opposite signs, `|delta_M| < |delta_m|`.
    A4,
    /// Opposite signs, equal magnitudes.
    A5,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify_scenario(e: LocalExtremes) -> Result<Scenario> {
    let LocalExtremes {
        delta_max,
        delta_min,
    } = LocalExtremes::new(e.delta_max, e.delta_min)?;
    if delta_max == 0.0 || delta_min == 0.0 {
        return Err(QfiError::ZeroExtreme {
            delta_max,
            delta_min,
        });
    }
    Ok(if delta_min > 0.0 {
        Scenario::A1
    } else if delta_max < 0.0 {
        Scenario::A2
    } else {
        let gap = delta_max.abs() - delta_min.abs();
        if gap.abs() <= SCENARIO_TOLERANCE {
            Scenario::A5
        } else if gap > 0.0 {
            Scenario::A3
        } else {
            Scenario::A4
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HighDimReport {
    pub parties: usize,
    pub k: usize,
    pub extremes: LocalExtremes,
    pub scenario: Scenario,
    /// Eigenvalue with `m` parties at `delta_M`, for `m = 0..=parties`.
    pub values: Vec<f64>,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub argmax_m: Vec<usize>,
    pub argmin_m: Vec<usize>,
    pub qfi: f64,
    /// Branch strings over `M` (`|delta_M>`) and `m` (`|delta_m>`).
    pub probe: ProbeState,
    /// Which sub-branch of the three-body scenarios applies, when relevant.
    pub branch_condition: Option<String>,
}

/// `e_k` with `m` arguments equal to `delta_M` and the rest `delta_m`.
pub fn vertex_eigenvalue(parties: usize, k: usize, e: LocalExtremes, m: usize) -> f64 {
    (0..=k)
        .map(|j| {
            let count = binom(m as u64, j as i64) * binom((parties - m) as u64, (k - j) as i64);
            count.to_f64().expect("finite count")
                * e.delta_max.powi(j as i32)
                * e.delta_min.powi((k - j) as i32)
        })
        .sum()
}

fn tie_tolerance(values: &[f64]) -> f64 {
    1e-9 * values.iter().fold(1.0f64, |a, v| a.max(v.abs()))
}

/// Branch string with `m` parties in `|delta_M>` followed by the rest in
/// `|delta_m>`.
pub fn vertex_string(parties: usize, m: usize) -> String {
    "M".repeat(m) + &"m".repeat(parties - m)
}

fn three_body_condition(scenario: Scenario, e: LocalExtremes) -> Option<String> {
    let (big, small) = (e.delta_max.abs(), e.delta_min.abs());
    let relation = |lhs: f64, rhs: f64| {
        if (lhs - rhs).abs() <= SCENARIO_TOLERANCE {
            "="
        } else if lhs > rhs {
            ">"
        } else {
            "<"
        }
    };
    match scenario {
        Scenario::A3 => Some(format!(
            "|delta_M| {} 2|delta_m|",
            relation(big, 2.0 * small)
        )),
        Scenario::A4 => Some(format!(
            "|delta_M| {} |delta_m|/2",
            relation(big, small / 2.0)
        )),
        _ => None,
    }
}

fn pick_branches(argmax: &[usize], argmin: &[usize], rule: TieRule) -> (usize, usize) {
    if rule == TieRule::PreferProduct {
        for &top in argmax {
            if let Some(&bottom) = argmin.iter().find(|&&b| b.abs_diff(top) == 1) {
                return (top, bottom);
            }
        }
    }
    let top = argmax[argmax.len() - 1];
    (top, pick_bottom(top, argmin, rule))
}

/// Extremes of the vertex eigenvalues, with the default probe.
pub fn extremal_assignment(parties: usize, k: usize, e: LocalExtremes) -> Result<HighDimReport> {
    optimal_probe_highdim_with(parties, k, e, TieRule::PreferProduct)
}

/// Optimal two-branch probe for the given local extremes.
pub fn optimal_probe_highdim(parties: usize, k: usize, e: LocalExtremes) -> Result<HighDimReport> {
    optimal_probe_highdim_with(parties, k, e, TieRule::PreferProduct)
}

pub fn optimal_probe_highdim_with(
    parties: usize,
    k: usize,
    e: LocalExtremes,
    rule: TieRule,
) -> Result<HighDimReport> {
    check_order(parties, k)?;
    let scenario = classify_scenario(e)?;
    let values: Vec<f64> = (0..=parties)
        .map(|m| vertex_eigenvalue(parties, k, e, m))
        .collect();
    let lambda_max = values.iter().copied().fold(f64::MIN, f64::max);
    let lambda_min = values.iter().copied().fold(f64::MAX, f64::min);
    let tol = tie_tolerance(&values);
    let near = |target: f64| -> Vec<usize> {
        (0..=parties)
            .filter(|&m| (values[m] - target).abs() <= tol)
            .collect()
    };
    let argmax_m = near(lambda_max);
    let argmin_m = near(lambda_min);
    let (top, bottom) = pick_branches(&argmax_m, &argmin_m, rule);
    let probe = ProbeState::new(vertex_string(parties, top), vertex_string(parties, bottom))?;
    let branch_condition = if k == 3 && parties == 4 {
        three_body_condition(scenario, e)
    } else {
        None
    };
    let range = lambda_max - lambda_min;
    Ok(HighDimReport {
        parties,
        k,
        extremes: e,
        scenario,
        values,
        lambda_max,
        lambda_min,
        argmax_m,
        argmin_m,
        qfi: range * range,
        probe,
        branch_condition,
    })
}
