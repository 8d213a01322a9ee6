//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances and runtime budgets are fixed below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qfi_core::case_two::case2_optimal;
use qfi_core::combinat::binom;
use qfi_core::fit::{fit_scaling, ScalingMode};
use qfi_core::highdim::{
    optimal_probe_highdim, optimal_probe_highdim_with, vertex_eigenvalue, HighDimReport, LocalExtremes,
    Scenario,
};
use qfi_core::oracle::{brute_case2_value, brute_max_qfi, up_count};
use qfi_core::probes::{product_window, Classification, TieRule};
use qfi_core::qfi_optimal::{optimal_qfi, optimal_qfi_closed_k2};
use qfi_core::qfi_product::{sp_qfi_at, sp_qfi_hypergeom, sp_qfi_max};

const FIT_CONFIDENCE: f64 = 0.95;
const ALPHA_TOLERANCE: f64 = 0.05;
const PREFACTOR_RELATIVE_TOLERANCE: f64 = 0.05;
const CLOSED_FORM_RELATIVE_TOLERANCE: f64 = 1e-9;
const K3_ASYMPTOTE_TOLERANCE: f64 = 0.01;
const CASE2_TOLERANCE: f64 = 1e-9;
const HYPERGEOMETRIC_RELATIVE_TOLERANCE: f64 = 1e-9;
const VERTEX_TOLERANCE: f64 = 1e-9;
const RANDOM_DRAWS: usize = 10_000;
const SEED: u64 = 0x5EED_0F15;

type Outcome = std::result::Result<String, Vec<String>>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures)
    }
}

fn oracle_equivalence() -> Outcome {
    let cells: Vec<(usize, usize)> = (2..=12)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(n, k)| {
            let engine = optimal_qfi(n, k).ok()?.qfi;
            let brute = brute_max_qfi(n, k).ok()?;
            (engine != brute).then(|| format!("(N={n}, k={k}): engine {engine}, brute {brute}"))
        })
        .collect();
    finish(failures, format!("{} (N, k) cells exact", cells.len()))
}

fn two_body_closed_form() -> Outcome {
    let failures: Vec<String> = (2..=2000usize)
        .into_par_iter()
        .filter_map(|n| {
            let scan = optimal_qfi(n, 2).unwrap().qfi;
            let closed = optimal_qfi_closed_k2(n).unwrap();
            (scan != closed).then(|| format!("N={n}: scan {scan}, closed {closed}"))
        })
        .collect();
    finish(failures, "N = 2..2000 exact".into())
}

fn optimal_scaling() -> Outcome {
    let table = [(4, 8.005), (6, 12.034), (8, 16.039)];
    let fits: Vec<(usize, f64)> = (2..=8usize)
        .into_par_iter()
        .map(|k| {
            let fit = fit_scaling(k, ScalingMode::Optimal, 200, 2000, 100, FIT_CONFIDENCE).unwrap();
            (k, fit.alpha_hat)
        })
        .collect();
    let mut failures = Vec::new();
    for &(k, alpha) in &fits {
        let target = 2.0 * k as f64;
        if (alpha - target).abs() > ALPHA_TOLERANCE {
            failures.push(format!("k={k}: alpha {alpha:.4} vs 2k = {target}"));
        }
        if let Some(&(_, tabulated)) = table.iter().find(|(tk, _)| *tk == k) {
            if (alpha - tabulated).abs() > ALPHA_TOLERANCE {
                failures.push(format!("k={k}: alpha {alpha:.4} vs tabulated {tabulated}"));
            }
        }
    }
    let summary = fits
        .iter()
        .map(|(k, a)| format!("k={k}:{a:.4}"))
        .collect::<Vec<_>>()
        .join(" ");
    finish(failures, summary)
}

fn product_scaling() -> Outcome {
    let prefactors = [
        (2, 2.0),
        (3, 4.0 / 27.0),
        (4, 0.010873),
        (5, 0.00052667),
        (6, 1.65369e-5),
    ];
    let fits: Vec<(usize, f64, f64)> = (2..=6usize)
        .into_par_iter()
        .map(|k| {
            let fit = fit_scaling(k, ScalingMode::Product, 200, 3000, 100, FIT_CONFIDENCE).unwrap();
            (k, fit.alpha_hat, fit.prefactor())
        })
        .collect();
    let mut failures = Vec::new();
    for &(k, alpha, prefactor) in &fits {
        let target = 2.0 * k as f64 - 1.0;
        if (alpha - target).abs() > ALPHA_TOLERANCE {
            failures.push(format!("k={k}: alpha {alpha:.4} vs 2k-1 = {target}"));
        }
        let expected = prefactors.iter().find(|(pk, _)| *pk == k).unwrap().1;
        let gap = (prefactor - expected).abs() / expected;
        if gap > PREFACTOR_RELATIVE_TOLERANCE {
            failures.push(format!(
                "k={k}: prefactor {prefactor:.6e} vs {expected:.6e} ({:.1}% off)",
                100.0 * gap
            ));
        }
    }
    let summary = fits
        .iter()
        .map(|(k, a, b)| format!("k={k}:{a:.4}/{b:.4e}"))
        .collect::<Vec<_>>()
        .join(" ");
    finish(failures, summary)
}

fn product_closed_forms() -> Outcome {
    let mut failures: Vec<String> = (3..=2000usize)
        .into_par_iter()
        .filter_map(|n| {
            let nf = n as f64;
            let closed = 2.0 * nf * (nf - 1.0).powi(3) / (2.0 * nf - 3.0);
            let max = sp_qfi_max(n, 2).unwrap().qfi;
            (relative(max, closed) > CLOSED_FORM_RELATIVE_TOLERANCE)
                .then(|| format!("N={n}: max {max}, closed {closed}"))
        })
        .collect();
    for (n, k) in [(2, 2), (3, 3)] {
        let max = sp_qfi_max(n, k).unwrap().qfi;
        if max != 4.0 {
            failures.push(format!("(N={n}, k={k}): max {max}, expected 4"));
        }
    }
    let n = 2000.0f64;
    let ratio = sp_qfi_max(2000, 3).unwrap().qfi / (4.0 * n.powi(5) / 27.0);
    if (ratio - 1.0).abs() > K3_ASYMPTOTE_TOLERANCE {
        failures.push(format!("k=3 ratio at N=2000 is {ratio}"));
    }
    finish(failures, format!("k=3 ratio at N=2000: {ratio:.5}"))
}

fn dichotomy_suite() -> Outcome {
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for k in 1..=20usize {
        for n in k.max(2)..=200 {
            cells.push((k, n));
        }
    }
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(k, n)| {
            let r = optimal_qfi(n, k).unwrap();
            let p = &r.probe;
            if k % 2 == 0 {
                let bad_sector = r.argmin_sectors.iter().any(|&m| m == 0 || m == n);
                if bad_sector || p.classification == Classification::Gme || p.symmetric {
                    return Some(format!(
                        "even (N={n}, k={k}): argmin {:?}, {} symmetric={}",
                        r.argmin_sectors, p.classification, p.symmetric
                    ));
                }
            } else {
                let c = binom(n as u64, k as i64);
                let qfi_ok = r.qfi == BigInt::from(4) * &c * &c;
                let ghz = p.classification == Classification::Gme && p.symmetric;
                if r.argmin_sectors != [0] || !ghz || !qfi_ok {
                    return Some(format!(
                        "odd (N={n}, k={k}): argmin {:?}, {} symmetric={} qfi=4C^2:{qfi_ok}",
                        r.argmin_sectors, p.classification, p.symmetric
                    ));
                }
            }
            None
        })
        .collect();
    finish(failures, format!("{} cells", cells.len()))
}

fn product_window_check() -> Outcome {
    let mut failures = Vec::new();
    for k in [2, 4, 6, 8] {
        match product_window(k) {
            Ok(w) => {
                if w.verified_n != (k..2 * k).collect::<Vec<_>>() {
                    failures.push(format!("k={k}: verified {:?}", w.verified_n));
                }
                if k == 2 && w.n_max() != 3 {
                    failures.push(format!("k=2: N_max {}", w.n_max()));
                }
            }
            Err(e) => failures.push(format!("k={k}: {e}")),
        }
    }
    finish(failures, "k in {2,4,6,8}; N_max(2) = 3".into())
}

/// Extremes and their up-counts over every basis string.
fn brute_case2_extremes(n: usize, k: usize, x: f64) -> (f64, f64, Vec<usize>, Vec<usize>) {
    let values: Vec<(usize, f64)> = (0..1u32 << n)
        .map(|s| (up_count(n, s), brute_case2_value(n, k, x, s)))
        .collect();
    let max = values.iter().map(|v| v.1).fold(f64::MIN, f64::max);
    let min = values.iter().map(|v| v.1).fold(f64::MAX, f64::min);
    let sectors = |target: f64| {
        let mut ms: Vec<usize> = values
            .iter()
            .filter(|v| (v.1 - target).abs() <= CASE2_TOLERANCE)
            .map(|v| v.0)
            .collect();
        ms.sort_unstable();
        ms.dedup();
        ms
    };
    (max, min, sectors(max), sectors(min))
}

fn case_two_check() -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for n in 1..=10 {
        for k in 1..=n.min(4) {
            for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let r = case2_optimal(n, k, x).unwrap();
                let (max, min, argmax, argmin) = brute_case2_extremes(n, k, x);
                compared += 1;
                if (r.lambda_max - max).abs() > CASE2_TOLERANCE
                    || (r.lambda_min - min).abs() > CASE2_TOLERANCE
                    || r.argmax_sectors != argmax
                    || r.argmin_sectors != argmin
                {
                    failures.push(format!("oracle mismatch at (N={n}, k={k}, x={x})"));
                }
            }
        }
    }
    for k in 1..=9 {
        for n in k..=60 {
            let r = case2_optimal(n, k, 1.0).unwrap();
            let zero = r.argmin_sectors.contains(&0);
            let ok = if k % 2 == 1 {
                zero
            } else {
                !zero && !r.argmin_sectors.contains(&n)
            };
            if !ok {
                failures.push(format!(
                    "x=1 (N={n}, k={k}): argmin {:?}",
                    r.argmin_sectors
                ));
            }
        }
    }
    finish(failures, format!("{compared} oracle comparisons; x=1 rule on k<=9, N<=60"))
}

fn ext(a: f64, b: f64) -> LocalExtremes {
    LocalExtremes::new(a, b).unwrap()
}

fn branch_counts(r: &HighDimReport) -> (usize, usize) {
    let count = |s: &str| s.chars().filter(|&c| c == 'M').count();
    (count(&r.probe.s_top), count(&r.probe.s_bottom))
}

/// Random extremes inside one scenario.
fn draw(rng: &mut ChaCha8Rng, scenario: Scenario) -> LocalExtremes {
    let u = |rng: &mut ChaCha8Rng| rng.random_range(0.05..5.0f64);
    loop {
        let (a, b) = (u(rng), u(rng));
        let (big, small) = (a.max(b), a.min(b));
        if big - small < 1e-6 && scenario != Scenario::A5 {
            continue;
        }
        return match scenario {
            Scenario::A1 => ext(big, small),
            Scenario::A2 => ext(-small, -big),
            Scenario::A3 => ext(big, -small),
            Scenario::A4 => ext(small, -big),
            Scenario::A5 => ext(a, -a),
        };
    }
}

#[allow(clippy::too_many_arguments)]
fn row(
    failures: &mut Vec<String>,
    label: &str,
    parties: usize,
    e: LocalExtremes,
    scenario: Scenario,
    argmax: &[usize],
    argmin: &[usize],
    class: Classification,
) -> HighDimReport {
    let r = optimal_probe_highdim(parties, parties - 1, e).unwrap();
    if r.scenario != scenario
        || r.argmax_m != argmax
        || r.argmin_m != argmin
        || r.probe.classification != class
    {
        failures.push(format!(
            "{label}: {:?} argmax {:?} argmin {:?} {} ({}, {})",
            r.scenario, r.argmax_m, r.argmin_m, r.probe.classification, r.probe.s_top, r.probe.s_bottom
        ));
    }
    r
}

fn table_rows(failures: &mut Vec<String>) {
    use Classification::*;
    use Scenario::*;
    // two-body, three parties
    let r = row(failures, "2-body A1", 3, ext(2.0, 1.0), A1, &[3], &[0], Gme);
    assert_symmetric_ghz(&r, failures, "2-body A1");
    let r = row(failures, "2-body A2", 3, ext(-1.0, -2.0), A2, &[0], &[3], Gme);
    assert_symmetric_ghz(&r, failures, "2-body A2");
    let r = row(failures, "2-body A3", 3, ext(3.0, -1.0), A3, &[3], &[1], EntangledNonGme);
    expect_counts(&r, (3, 1), failures, "2-body A3 |dM>|phi2>");
    let r = row(failures, "2-body A4", 3, ext(1.0, -3.0), A4, &[0], &[2], EntangledNonGme);
    expect_counts(&r, (0, 2), failures, "2-body A4 |dm>|phi2>");
    row(failures, "2-body A5", 3, ext(1.0, -1.0), A5, &[0, 3], &[1, 2], Product);
    let r = optimal_probe_highdim_with(3, 2, ext(1.0, -1.0), TieRule::SmallestM).unwrap();
    expect_counts(&r, (3, 1), failures, "2-body A5 |dM>|phi2>");
    if r.probe.classification == Gme {
        failures.push("2-body A5 GHZ".into());
    }
    // three-body, four parties
    let r = row(failures, "3-body A1", 4, ext(2.0, 1.0), A1, &[4], &[0], Gme);
    assert_symmetric_ghz(&r, failures, "3-body A1");
    let r = row(failures, "3-body A2", 4, ext(-1.0, -2.0), A2, &[4], &[0], Gme);
    assert_symmetric_ghz(&r, failures, "3-body A2");
    let r = row(failures, "3-body A3 |dM|>2|dm|", 4, ext(3.0, -1.0), A3, &[4], &[2], EntangledNonGme);
    expect_counts(&r, (4, 2), failures, "3-body A3 |dM>^2|phi2>");
    let r = row(failures, "3-body A3 |dM|<2|dm|", 4, ext(1.5, -1.0), A3, &[4], &[0], Gme);
    assert_symmetric_ghz(&r, failures, "3-body A3 below split");
    let r = row(failures, "3-body A4 |dM|<|dm|/2", 4, ext(1.0, -3.0), A4, &[2], &[0], EntangledNonGme);
    expect_counts(&r, (2, 0), failures, "3-body A4 |dm>^2|phi2>");
    let r = row(failures, "3-body A4 |dM|>|dm|/2", 4, ext(1.0, -1.5), A4, &[4], &[0], Gme);
    assert_symmetric_ghz(&r, failures, "3-body A4 above split");
    let r = row(failures, "3-body A5", 4, ext(1.0, -1.0), A5, &[4], &[0], Gme);
    assert_symmetric_ghz(&r, failures, "3-body A5 |phi4>");
    for (e, note) in [
        (ext(3.0, -1.0), "|delta_M| > 2|delta_m|"),
        (ext(1.5, -1.0), "|delta_M| < 2|delta_m|"),
        (ext(2.0, -1.0), "|delta_M| = 2|delta_m|"),
        (ext(1.0, -3.0), "|delta_M| < |delta_m|/2"),
        (ext(1.0, -1.5), "|delta_M| > |delta_m|/2"),
        (ext(1.0, -2.0), "|delta_M| = |delta_m|/2"),
    ] {
        let r = optimal_probe_highdim(4, 3, e).unwrap();
        if r.branch_condition.as_deref() != Some(note) {
            failures.push(format!("branch note {:?}, expected {note}", r.branch_condition));
        }
    }
}

fn assert_symmetric_ghz(
    r: &HighDimReport,
    failures: &mut Vec<String>,
    label: &str,
) {
    if !(r.probe.classification == Classification::Gme && r.probe.symmetric) {
        failures.push(format!("{label}: not a GHZ probe ({}, {})", r.probe.s_top, r.probe.s_bottom));
    }
}

fn expect_counts(
    r: &HighDimReport,
    counts: (usize, usize),
    failures: &mut Vec<String>,
    label: &str,
) {
    if branch_counts(r) != counts {
        failures.push(format!("{label}: branches ({}, {})", r.probe.s_top, r.probe.s_bottom));
    }
}

/// `e_k` of an arbitrary assignment of local eigenvalues.
fn elementary_symmetric(values: &[f64], k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=k).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e[k]
}

fn vertex_property(rng: &mut ChaCha8Rng, failures: &mut Vec<String>) {
    for scenario in [Scenario::A1, Scenario::A2, Scenario::A3, Scenario::A4, Scenario::A5] {
        for draw_index in 0..RANDOM_DRAWS {
            let e = draw(rng, scenario);
            let parties = rng.random_range(2..=5usize);
            let k = rng.random_range(1..=parties);
            let mid = rng.random_range(e.delta_min..e.delta_max);
            let vertices: Vec<f64> = (0..=parties)
                .map(|m| vertex_eigenvalue(parties, k, e, m))
                .collect();
            let hi = vertices.iter().copied().fold(f64::MIN, f64::max);
            let lo = vertices.iter().copied().fold(f64::MAX, f64::min);
            let tol = VERTEX_TOLERANCE * hi.abs().max(lo.abs()).max(1.0);
            let local = [e.delta_min, mid, e.delta_max];
            let mut assignment = vec![0.0; parties];
            for code in 0..3usize.pow(parties as u32) {
                let mut c = code;
                for slot in assignment.iter_mut() {
                    *slot = local[c % 3];
                    c /= 3;
                }
                let v = elementary_symmetric(&assignment, k);
                if v > hi + tol || v < lo - tol {
                    failures.push(format!(
                        "vertex property: {scenario:?} draw {draw_index} P={parties} k={k} value {v} outside [{lo}, {hi}]"
                    ));
                    return;
                }
            }
        }
    }
}

/// Two-body orderings of `a = m3, b = m0, c = m2, d = m1` and the
/// three-body extreme assignments, per scenario.
fn ordering_lemmas(rng: &mut ChaCha8Rng, failures: &mut Vec<String>) {
    for scenario in [Scenario::A1, Scenario::A2, Scenario::A3, Scenario::A4, Scenario::A5] {
        for _ in 0..RANDOM_DRAWS {
            let e = draw(rng, scenario);
            let v2 = |m| vertex_eigenvalue(3, 2, e, m);
            let (a, b, c, d) = (v2(3), v2(0), v2(2), v2(1));
            let (big, small) = (e.delta_max.abs(), e.delta_min.abs());
            let two_body = match scenario {
                Scenario::A1 => a > b && a > c && a > d && b < c && b < d,
                Scenario::A2 => a < b && a < c && a < d && b > c && b > d,
                Scenario::A3 if big > 3.0 * small => a > b && a > c && a > d && d < b && b < c,
                Scenario::A3 => d < c && c < b && b < a,
                Scenario::A4 => b > a && b > c && b > d && c < d && c < a,
                Scenario::A5 => {
                    let t = 1e-9 * a.abs().max(1.0);
                    (a - b).abs() <= t && (c - d).abs() <= t && c < a
                }
            };
            let v3 = |m| vertex_eigenvalue(4, 3, e, m);
            let values: Vec<f64> = (0..=4).map(v3).collect();
            let argmax = (0..=4).max_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
            let argmin = (0..=4).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
            let expected = match scenario {
                Scenario::A1 => (4, 0),
                Scenario::A2 => (4, 0),
                Scenario::A3 if big > 2.0 * small => (4, 2),
                Scenario::A3 => (4, 0),
                Scenario::A4 if big < small / 2.0 => (2, 0),
                Scenario::A4 => (4, 0),
                Scenario::A5 => (4, 0),
            };
            let split = match scenario {
                Scenario::A3 => (big - 2.0 * small).abs() < 1e-9,
                Scenario::A4 => (big - small / 2.0).abs() < 1e-9,
                _ => false,
            };
            if !two_body || (!split && (argmax, argmin) != expected) {
                failures.push(format!(
                    "ordering: {scenario:?} at ({}, {}) two-body ok {two_body}, three-body ({argmax}, {argmin})",
                    e.delta_max, e.delta_min
                ));
                return;
            }
        }
    }
}

fn higher_dimension_check() -> Outcome {
    let mut failures = Vec::new();
    table_rows(&mut failures);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    vertex_property(&mut rng, &mut failures);
    ordering_lemmas(&mut rng, &mut failures);
    finish(
        failures,
        format!("table rows, splits, {RANDOM_DRAWS} draws per scenario"),
    )
}

fn hypergeometric_identity() -> Outcome {
    let cells: Vec<(usize, usize)> = (1..=200usize)
        .flat_map(|n| (1..=n.min(8)).map(move |k| (n, k)))
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .flat_map_iter(|&(n, k)| {
            (0..=10).filter_map(move |i| {
                let z = i as f64 / 10.0;
                let direct = sp_qfi_at(n, k, z).unwrap();
                let hyper = sp_qfi_hypergeom(n, k, z).unwrap();
                (relative(direct, hyper) > HYPERGEOMETRIC_RELATIVE_TOLERANCE)
                    .then(|| format!("(N={n}, k={k}, z={z}): {direct} vs {hyper}"))
            })
        })
        .collect();
    finish(failures, format!("{} grid points", cells.len() * 11))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "oracle equivalence", budget: Duration::from_secs(30), check: oracle_equivalence },
        Criterion { id: 2, name: "two-body closed form", budget: Duration::from_secs(10), check: two_body_closed_form },
        Criterion { id: 3, name: "optimal-probe scaling", budget: Duration::from_secs(60), check: optimal_scaling },
        Criterion { id: 4, name: "symmetric-product scaling", budget: Duration::from_secs(120), check: product_scaling },
        Criterion { id: 5, name: "product-probe closed forms", budget: Duration::MAX, check: product_closed_forms },
        Criterion { id: 6, name: "even/odd dichotomy", budget: Duration::from_secs(60), check: dichotomy_suite },
        Criterion { id: 7, name: "asymmetric product window", budget: Duration::MAX, check: product_window_check },
        Criterion { id: 8, name: "case II", budget: Duration::MAX, check: case_two_check },
        Criterion { id: 9, name: "higher-dimensional table", budget: Duration::MAX, check: higher_dimension_check },
        Criterion { id: 10, name: "hypergeometric identity", budget: Duration::MAX, check: hypergeometric_identity },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let over_budget = elapsed > c.budget;
        let ms = elapsed.as_millis();
        match outcome {
            Ok(summary) if !over_budget => {
                println!("PASS {:>2} {} [{ms} ms] {summary}", c.id, c.name);
            }
            Ok(summary) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {} [{ms} ms] over the {} s budget; {summary}",
                    c.id,
                    c.name,
                    c.budget.as_secs()
                );
            }
            Err(failures) => {
                failed += 1;
                let shown: Vec<&str> = failures.iter().take(4).map(String::as_str).collect();
                let more = failures.len().saturating_sub(shown.len());
                let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
                println!(
                    "FAIL {:>2} {} [{ms} ms] {} failure(s): {}{tail}",
                    c.id,
                    c.name,
                    failures.len(),
                    shown.join("; ")
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
