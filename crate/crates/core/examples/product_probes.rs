//! Symmetric product probes `|phi>^N` with `z = cos^2(theta)`.
//!
//! ```text
//! cargo run --example product_probes
//! ```

use qfi_core::qfi_product::{
    sp_qfi_at, sp_qfi_hypergeom, sp_qfi_max, sp_qfi_max_closed_k2, sp_qfi_max_closed_k3,
};

fn main() -> qfi_core::Result<()> {
    println!("F_SP(z) for N = 6, k = 3, direct sum and 2F1 form");
    for i in 0..=10 {
        let z = i as f64 / 10.0;
        println!(
            "  z = {z:.1}: {:>10.4}  {:>10.4}",
            sp_qfi_at(6, 3, z)?,
            sp_qfi_hypergeom(6, 3, z)?
        );
    }

    println!("\nmaximum over z");
    for (n, k) in [(2, 2), (3, 3), (4, 3), (10, 2), (10, 3), (50, 4), (300, 6)] {
        let max = sp_qfi_max(n, k)?;
        println!("  N = {n:>3}, k = {k}: {:.6e} at z* = {:.6}", max.qfi, max.z_star);
    }

    println!("\nclosed forms");
    for n in [3, 10, 100, 2000] {
        println!(
            "  k = 2, N = {n:>4}: {:.6e} vs {:.6e}",
            sp_qfi_max(n, 2)?.qfi,
            sp_qfi_max_closed_k2(n)?
        );
    }
    for n in [4, 10, 100, 2000] {
        let closed = sp_qfi_max_closed_k3(n)?;
        let nf = n as f64;
        println!(
            "  k = 3, N = {n:>4}: {:.6e} at z* = {:.6}, ratio to 4N^5/27 = {:.5}",
            closed.qfi,
            closed.z_star,
            closed.qfi / (4.0 * nf.powi(5) / 27.0)
        );
    }
    Ok(())
}
