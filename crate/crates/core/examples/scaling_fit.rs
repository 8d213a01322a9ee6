//! Log-log least-squares fits of the maximum QFI against N, with standard
//! errors and Student-t confidence half-widths.
//!
//! ```text
//! cargo run --release --example scaling_fit
//! ```

use qfi_core::fit::{fit_scaling, ScalingMode};

fn main() -> qfi_core::Result<()> {
    println!("optimal probes, N in [200, 2000] step 100");
    for k in 2..=8 {
        let f = fit_scaling(k, ScalingMode::Optimal, 200, 2000, 100, 0.95)?;
        println!(
            "  k = {k}: alpha = {:.5} +/- {:.2e}  R = {:.3e}",
            f.alpha_hat, f.ci_alpha, f.r_min
        );
    }
    println!("symmetric product probes, N in [200, 3000] step 100");
    for k in 2..=6 {
        let f = fit_scaling(k, ScalingMode::Product, 200, 3000, 100, 0.95)?;
        println!(
            "  k = {k}: alpha = {:.5} +/- {:.2e}  prefactor = {:.5e}  R = {:.3e}",
            f.alpha_hat,
            f.ci_alpha,
            f.prefactor(),
            f.r_min
        );
    }
    let late = fit_scaling(8, ScalingMode::Optimal, 1000, 2000, 50, 0.95)?;
    println!("k = 8 restricted to N in [1000, 2000]: alpha = {:.5}", late.alpha_hat);
    Ok(())
}
