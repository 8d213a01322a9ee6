//! Brute-force spectra over every basis string, checked against the
//! sector formula.
//!
//! ```text
//! cargo run --example brute_oracle
//! ```

use qfi_core::oracle::{brute_max_qfi, brute_spectrum};
use qfi_core::qfi_optimal::optimal_qfi;
use qfi_core::SectorSpectrum;

fn main() -> qfi_core::Result<()> {
    let s = brute_spectrum(6, 3)?;
    println!("{}", s.description);
    for (value, count) in &s.entries {
        println!("  {value:>4} x {count}");
    }
    let sectors = SectorSpectrum::compute(6, 3)?;
    for m in 0..=6 {
        println!("  sector m = {m}: {} x {}", sectors.values[m], sectors.multiplicity(m));
    }

    let mut checked = 0;
    for n in 2..=12 {
        for k in 1..=n {
            assert_eq!(brute_max_qfi(n, k)?, optimal_qfi(n, k)?.qfi);
            checked += 1;
        }
    }
    println!("\nbrute force and sector scan agree on {checked} (N, k) pairs");
    Ok(())
}
