//! Optimal two-branch probes: GHZ for odd orders, asymmetric and never
//! genuinely multipartite entangled for even orders.
//!
//! ```text
//! cargo run --example probe_structure
//! ```

use qfi_core::probes::{optimal_probe, product_window, TieRule};

fn main() -> qfi_core::Result<()> {
    println!("{:>3} {:>2}  {:<14} {:<14} {:<18} sym", "N", "k", "top", "bottom", "class");
    for (n, k) in [(4, 3), (9, 5), (4, 2), (3, 2), (7, 4), (8, 4), (12, 6), (12, 7)] {
        let p = optimal_probe(n, k, TieRule::PreferProduct)?;
        println!(
            "{n:>3} {k:>2}  {:<14} {:<14} {:<18} {}",
            p.s_top,
            p.s_bottom,
            p.classification.to_string(),
            p.symmetric
        );
    }

    println!("\ntie rules at N = 7, k = 4");
    for rule in [TieRule::PreferProduct, TieRule::SmallestM, TieRule::LargestM] {
        let p = optimal_probe(7, 4, rule)?;
        println!("  {rule:<15} bottom {} ({})", p.s_bottom, p.classification);
    }

    println!("\nparty counts admitting an asymmetric product optimum");
    for k in [2, 4, 6, 8, 10] {
        let w = product_window(k)?;
        println!("  k = {k:>2}: N in {:?}, N_max = {}", w.verified_n, w.n_max());
    }
    Ok(())
}
