//! QFI restricted to symmetric product probes `|phi>^{(x)N}`.
//!
//! With `z = cos^2(theta)` the generator variance is a polynomial in `z`
//! with exact integer coefficients
//! `c_i = C(N,i) C(N-i,i) C(N-2i,k-i)`, minus `C(N,k)^2 z^k` from the squared
//! mean. The relative phase of the local state drops out because the
//! generator is diagonal.
//!
//! Polynomials are evaluated exactly: a finite `f64` is a dyadic rational, so
//! `sum c_i z^i` is a ratio of big integers that is rounded once at the end.
//! This keeps `F_SP(1) = 0` exact and avoids the heavy cancellation between
//! the two terms near the maximum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{binom, with_cache};
use crate::error::{check_order, check_unit_interval, QfiError, Result};

/// Subintervals of `[0, 1]` scanned for sign changes of the derivative.
pub const ROOT_SCAN_INTERVALS: usize = 1024;
/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Exact variance polynomial for symmetric product probes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductProbePolynomial {
    pub n: usize,
    pub k: usize,
    /// `c_i` for `i = 0..=k`.
    pub coeffs: Vec<BigInt>,
    /// `C(N,k)^2`, subtracted from the `z^k` coefficient.
    pub subtractor: BigInt,
}

impl ProductProbePolynomial {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_order(n, k)?;
        let (coeffs, c) = with_cache(|cache| {
            let coeffs = (0..=k)
                .map(|i| {
                    cache.get(n as u64, i as i64)
                        * cache.get((n - i) as u64, i as i64)
                        * cache.get(n.saturating_sub(2 * i) as u64, (k - i) as i64)
                })
                .collect::<Vec<_>>();
            (coeffs, cache.get(n as u64, k as i64))
        });
        Ok(Self {
            n,
            k,
            coeffs,
            subtractor: &c * &c,
        })
    }

    /// Coefficients of the variance `F_SP / 4`, i.e. with the subtraction
    /// folded into the top coefficient.
    pub fn effective(&self) -> Vec<BigInt> {
        let mut eff = self.coeffs.clone();
        eff[self.k] -= &self.subtractor;
        eff
    }

    /// `F_SP(z) = 4 [sum c_i z^i - C(N,k)^2 z^k]`.
    pub fn qfi_at(&self, z: f64) -> f64 {
        4.0 * eval_exact(&self.effective(), z)
    }

    /// `dF_SP/dz`.
    pub fn derivative_at(&self, z: f64) -> f64 {
        4.0 * eval_exact(&derivative(&self.effective()), z)
    }
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `num / 2^shift` rounded to `f64`.
fn ratio_pow2(num: &BigInt, shift: u64) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let bits = num.bits();
    let drop = bits.saturating_sub(64);
    let head = (num >> drop).to_f64().expect("64-bit head");
    let mut e = drop as i64 - shift as i64;
    let mut out = head;
    // split the scaling so intermediate powers of two stay representable
    while e != 0 {
        let step = e.clamp(-1000, 1000);
        out *= 2f64.powi(step as i32);
        e -= step;
    }
    out
}

/// Exact `sum coeffs[i] z^i` for finite non-negative `z`, rounded once.
pub(crate) fn eval_exact(coeffs: &[BigInt], z: f64) -> f64 {
    debug_assert!(z.is_finite() && z >= 0.0);
    if coeffs.is_empty() {
        return 0.0;
    }
    if z == 0.0 {
        return coeffs[0].to_f64().unwrap_or(f64::NAN);
    }
    // z = mant * 2^(-s)
    let bits = z.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1 << 52), exp - 1075)
    };
    let tz = mant.trailing_zeros();
    mant >>= tz;
    e += tz as i64;
    let mant = BigInt::from(mant);
    if e >= 0 {
        let z_big = mant << e as u64;
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &z_big + c;
        }
        return ratio_pow2(&acc, 0);
    }
    let s = (-e) as u64;
    // Horner on scaled numerators: after the loop
    // acc = sum c_i mant^i 2^(s (d - i)) = 2^(s d) * sum c_i z^i
    let degree = coeffs.len() as u64 - 1;
    let mut acc = coeffs[coeffs.len() - 1].clone();
    for (i, c) in coeffs.iter().enumerate().rev().skip(1) {
        acc = acc * &mant + (c << (s * (degree - i as u64)));
    }
    ratio_pow2(&acc, s * degree)
}

fn check_z(z: f64) -> Result<()> {
    check_unit_interval("z", z)
}

/// QFI of the symmetric product probe with `cos^2(theta) = z`.
pub fn sp_qfi_at(n: usize, k: usize, z: f64) -> Result<f64> {
    check_z(z)?;
    Ok(ProductProbePolynomial::new(n, k)?.qfi_at(z))
}

/// `(x)_i` for integer `x`.
fn pochhammer(x: i64, i: usize) -> BigInt {
    (0..i as i64).fold(BigInt::from(1), |acc, j| acc * BigInt::from(x + j))
}

/// Series coefficients of `2F1(a, b; 1; z)` for a non-positive integer `a`,
/// which terminates after `1 - a` terms.
pub fn hyp2f1_unit_c_coefficients(a: i64, b: i64) -> Vec<BigInt> {
    assert!(a <= 0, "series terminates only for non-positive a");
    (0..=(-a) as usize)
        .map(|i| {
            let num = pochhammer(a, i) * pochhammer(b, i);
            let den = pochhammer(1, i) * pochhammer(1, i);
            let (q, r) = num.div_rem(&den);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

/// Same QFI through `4 C(N,k) [2F1(-k, k-N; 1; z) - z^k C(N,k)]`.
pub fn sp_qfi_hypergeom(n: usize, k: usize, z: f64) -> Result<f64> {
    check_order(n, k)?;
    check_z(z)?;
    let c = binom(n as u64, k as i64);
    let mut poly: Vec<BigInt> = hyp2f1_unit_c_coefficients(-(k as i64), k as i64 - n as i64)
        .into_iter()
        .map(|t| t * &c)
        .collect();
    poly[k] -= &c * &c;
    Ok(4.0 * eval_exact(&poly, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductMaximum {
    pub qfi: f64,
    pub z_star: f64,
}

fn bisect_root(poly: &ProductProbePolynomial, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = poly.derivative_at(lo);
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let f_mid = poly.derivative_at(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Stationary points of `F_SP` in `[0, 1]`, found by sign-change bracketing
/// of the derivative followed by bisection.
pub fn stationary_points(poly: &ProductProbePolynomial) -> Vec<f64> {
    let grid: Vec<f64> = (0..=ROOT_SCAN_INTERVALS)
        .map(|j| j as f64 / ROOT_SCAN_INTERVALS as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&z| poly.derivative_at(z)).collect();
    let mut roots = Vec::new();
    for j in 0..ROOT_SCAN_INTERVALS {
        let (a, b) = (values[j], values[j + 1]);
        if a == 0.0 {
            roots.push(grid[j]);
        } else if b != 0.0 && (a > 0.0) != (b > 0.0) {
            roots.push(bisect_root(poly, grid[j], grid[j + 1]));
        }
    }
    if values[ROOT_SCAN_INTERVALS] == 0.0 {
        roots.push(1.0);
    }
    roots
}

/// Global maximum of `F_SP` over `z` in `[0, 1]`. Ties keep the smallest `z`.
pub fn sp_qfi_max(n: usize, k: usize) -> Result<ProductMaximum> {
    let poly = ProductProbePolynomial::new(n, k)?;
    let mut best = ProductMaximum {
        qfi: poly.qfi_at(0.0),
        z_star: 0.0,
    };
    for z in stationary_points(&poly).into_iter().chain([1.0]) {
        let qfi = poly.qfi_at(z);
        if qfi > best.qfi {
            best = ProductMaximum { qfi, z_star: z };
        }
    }
    Ok(best)
}

/// `2N(N-1)^3 / (2N-3)`, the two-body product-probe maximum for `N > 2`.
pub fn sp_qfi_max_closed_k2(n: usize) -> Result<f64> {
    if n <= 2 {
        return Err(QfiError::TooSmall { n, min: 3 });
    }
    let n = n as f64;
    Ok(2.0 * n * (n - 1.0).powi(3) / (2.0 * n - 3.0))
}

/// Three-body product-probe maximum for `N > 3` from the quadratic
/// stationarity condition `gamma_1 + 2 gamma_2 z + 3 gamma_3 z^2 = 0`, where
/// `gamma_3` already includes the `-C(N,3)^2` subtraction.
pub fn sp_qfi_max_closed_k3(n: usize) -> Result<ProductMaximum> {
    if n <= 3 {
        return Err(QfiError::TooSmall { n, min: 4 });
    }
    let poly = ProductProbePolynomial::new(n, 3)?;
    let eff = poly.effective();
    let (g1, g2, g3) = (&eff[1], &eff[2], &eff[3]);
    let disc = g2 * g2 - BigInt::from(3) * g1 * g3;
    let sqrt_disc = disc.to_f64().expect("finite").max(0.0).sqrt();
    let (g1, g2, g3) = (
        g1.to_f64().expect("finite"),
        g2.to_f64().expect("finite"),
        g3.to_f64().expect("finite"),
    );
    // numerically stable pair of roots of 3 g3 z^2 + 2 g2 z + g1
    let q = -(g2 + g2.signum() * sqrt_disc);
    let mut roots = Vec::new();
    if q != 0.0 {
        roots.push(q / (3.0 * g3));
        roots.push(g1 / q);
    } else {
        roots.push(sqrt_disc / (3.0 * g3));
        roots.push(-sqrt_disc / (3.0 * g3));
    }
    roots
        .into_iter()
        .filter(|z| (0.0..=1.0).contains(z))
        .map(|z| ProductMaximum {
            qfi: poly.qfi_at(z),
            z_star: z,
        })
        .max_by(|a, b| a.qfi.total_cmp(&b.qfi))
        .ok_or(QfiError::OutOfDomain {
            name: "stationary point",
            value: f64::NAN,
            range: "[0, 1]",
        })
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
