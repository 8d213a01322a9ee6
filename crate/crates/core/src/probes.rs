//! Optimal two-branch probes and their entanglement/symmetry class.
//!
//! Every optimum here is `(|s_top> + |s_bottom>)/sqrt(2)` for two basis
//! strings. Parties where the strings agree factor out as pure local kets;
//! the parties where they disagree form a GHZ block. That makes the class a
//! function of the Hamming distance alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QfiError, Result};
use crate::qfi_optimal;

/// Amplitude of each branch.
pub const BRANCH_AMPLITUDE: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "GME")]
    Gme,
    #[serde(rename = "entangled_non_GME")]
    EntangledNonGme,
    #[serde(rename = "product")]
    Product,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Gme => "GME",
            Classification::EntangledNonGme => "entangled_non_GME",
            Classification::Product => "product",
        })
    }
}

/// How to pick the bottom branch when several sectors reach the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// A sector one flip away from the top branch if there is one, else the
    /// smallest.
    #[default]
    PreferProduct,
    SmallestM,
    LargestM,
}

impl FromStr for TieRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "prefer-product" | "prefer_product" => Ok(TieRule::PreferProduct),
            "smallest-m" | "smallest_m" => Ok(TieRule::SmallestM),
            "largest-m" | "largest_m" => Ok(TieRule::LargestM),
            other => Err(format!(
                "unknown tie rule '{other}' (expected prefer-product, smallest-m or largest-m)"
            )),
        }
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieRule::PreferProduct => "prefer-product",
            TieRule::SmallestM => "smallest-m",
            TieRule::LargestM => "largest-m",
        })
    }
}

/// Equal-amplitude superposition of two basis strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeState {
    pub s_top: String,
    pub s_bottom: String,
    pub classification: Classification,
    pub symmetric: bool,
}

impl ProbeState {
    pub fn new(s_top: impl Into<String>, s_bottom: impl Into<String>) -> Result<Self> {
        let s_top = s_top.into();
        let s_bottom = s_bottom.into();
        let (classification, symmetric) = classify_branches(&s_top, &s_bottom)?;
        Ok(Self {
            s_top,
            s_bottom,
            classification,
            symmetric,
        })
    }

    pub fn parties(&self) -> usize {
        self.s_top.chars().count()
    }

    pub fn hamming(&self) -> usize {
        hamming(&self.s_top, &self.s_bottom)
    }
}

fn hamming(a: &str, b: &str) -> usize {
    a.chars().zip(b.chars()).filter(|(x, y)| x != y).count()
}

fn is_constant(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => chars.all(|c| c == first),
        None => true,
    }
}

fn classify_branches(top: &str, bottom: &str) -> Result<(Classification, bool)> {
    let (lt, lb) = (top.chars().count(), bottom.chars().count());
    if lt != lb {
        return Err(QfiError::BranchLengthMismatch(lt, lb));
    }
    let d = hamming(top, bottom);
    if d == 0 {
        return Err(QfiError::IdenticalBranches(top.to_string()));
    }
    let classification = if d == 1 {
        Classification::Product
    } else if d == lt {
        Classification::Gme
    } else {
        Classification::EntangledNonGme
    };
    Ok((classification, is_constant(top) && is_constant(bottom)))
}

/// Re-derives classification and symmetry from the branch strings.
pub fn classify_probe(p: &ProbeState) -> Result<(Classification, bool)> {
    classify_branches(&p.s_top, &p.s_bottom)
}

/// Picks the bottom sector among `argmin` for a top branch in sector `top`.
/// `argmin` must be non-empty and ascending.
pub(crate) fn pick_bottom(top: usize, argmin: &[usize], rule: TieRule) -> usize {
    match rule {
        TieRule::PreferProduct => argmin
            .iter()
            .copied()
            .find(|&m| m.abs_diff(top) == 1)
            .unwrap_or(argmin[0]),
        TieRule::SmallestM => argmin[0],
        TieRule::LargestM => argmin[argmin.len() - 1],
    }
}

/// Qubit basis string with `m` up spins followed by `n - m` down spins.
pub fn sector_string(n: usize, m: usize) -> String {
    "0".repeat(m) + &"1".repeat(n - m)
}

/// Builds the qubit optimum: top branch all up (sector `N`), bottom branch
/// from the minimizing sectors.
pub(crate) fn qubit_probe(n: usize, argmin: &[usize], rule: TieRule) -> ProbeState {
    let m = pick_bottom(n, argmin, rule);
    ProbeState::new(sector_string(n, n), sector_string(n, m))
        .expect("argmin never contains the top sector N")
}

/// Optimal probe for `h_k^(N)` under the given tie rule.
pub fn optimal_probe(n: usize, k: usize, rule: TieRule) -> Result<ProbeState> {
    let report = qfi_optimal::optimal_qfi(n, k)?;
    Ok(qubit_probe(n, &report.argmin_sectors, rule))
}

/// Outcome of the asymmetric-product window check for one even `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWindow {
    pub k: usize,
    /// Inclusive bounds `[k, 2k - 1]`.
    pub window: (usize, usize),
    pub verified_n: Vec<usize>,
}

impl ProductWindow {
    /// Largest party count that still admits a product optimum.
    pub fn n_max(&self) -> usize {
        self.window.1
    }
}

fn has_product_optimum(n: usize, k: usize) -> Result<bool> {
    let report = qfi_optimal::optimal_qfi(n, k)?;
    Ok(report.argmin_sectors.iter().any(|&m| n - m == 1))
}

/// Verifies by exhaustive sector search that every `N` in `[k, 2k - 1]` has
/// an optimal probe with branches one flip apart, and that `N = 2k` does not.
pub fn product_window(k: usize) -> Result<ProductWindow> {
    if k < 2 || k % 2 != 0 {
        return Err(QfiError::OddOrder(k));
    }
    let window = (k, 2 * k - 1);
    let mut verified_n = Vec::with_capacity(k);
    for n in window.0..=window.1 {
        if !has_product_optimum(n, k)? {
            return Err(QfiError::WindowViolation {
                k,
                n,
                reason: "no minimizing sector lies one flip from the top branch",
            });
        }
        verified_n.push(n);
    }
    if has_product_optimum(2 * k, k)? {
        return Err(QfiError::WindowViolation {
            k,
            n: 2 * k,
            reason: "a product optimum exists just past the window",
        });
    }
    Ok(ProductWindow {
        k,
        window,
        verified_n,
    })
}
