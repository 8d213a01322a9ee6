//! Exact optimum over all probes for a few (N, k), next to the two-body
//! closed form and the large-N estimate.
//!
//! ```text
//! cargo run --example optimal_qfi
//! ```

use qfi_core::qfi_optimal::{asymptotic_qfi, optimal_qfi, optimal_qfi_closed_k2, scaling_ratio};

fn main() -> qfi_core::Result<()> {
    let r = optimal_qfi(8, 4)?;
    println!("h_4 on 8 parties");
    for (m, v) in qfi_core::SectorSpectrum::compute(8, 4)?.values.iter().enumerate() {
        println!("  m = {m}: lambda = {v}");
    }
    println!(
        "  qfi = {} (max at {:?}, min at {:?})",
        r.qfi, r.argmax_sectors, r.argmin_sectors
    );
    println!("  probe ({}, {}) is {}", r.probe.s_top, r.probe.s_bottom, r.probe.classification);

    println!("\ntwo-body closed form against the sector scan");
    for n in [2, 3, 10, 101, 1000] {
        let scan = optimal_qfi(n, 2)?.qfi;
        println!("  N = {n:>4}: {scan} (closed form {})", optimal_qfi_closed_k2(n)?);
    }

    println!("\nexact / asymptotic and F / (N^2k / (k!)^2)");
    for (n, k) in [(40, 3), (200, 4), (2000, 4), (2000, 6)] {
        let exact = optimal_qfi(n, k)?.qfi;
        let asym = asymptotic_qfi(n, k)?;
        let ratio = qfi_core::combinat::ln_big(&exact) - qfi_core::combinat::ln_big(&asym);
        println!(
            "  N = {n:>4}, k = {k}: exact/asymptotic = {:.6}, scaling ratio = {:.6}",
            ratio.exp(),
            scaling_ratio(n, k)?
        );
    }
    Ok(())
}
