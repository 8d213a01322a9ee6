//! Generators with every order up to k, `K_x = sum_i i x^(i-1) h_i`, and
//! the chart of where the minimum eigenvalue sits.
//!
//! ```text
//! cargo run --example case_two -- 0.5
//! ```

use qfi_core::case_two::{case2_optimal, dichotomy_map};

fn main() -> qfi_core::Result<()> {
    let x: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("x must be a number"))
        .unwrap_or(1.0);

    let r = case2_optimal(4, 3, x)?;
    println!(
        "N = 4, k = 3, x = {x}: lambda in [{}, {}], argmin {:?}, qfi {}",
        r.lambda_min, r.lambda_max, r.argmin_sectors, r.qfi
    );

    let (k_max, n_max) = (7, 24);
    let cells = dichotomy_map(k_max, n_max, x)?;
    println!("\nargmin sectors at x = {x} ('0' marks the all-down sector)");
    print!("  k\\N");
    for n in 1..=n_max {
        print!("{n:>3}");
    }
    println!();
    for k in 1..=k_max {
        print!("  {k:>3}");
        for n in 1..=n_max {
            let mark = match cells.iter().find(|c| c.k == k && c.n == n) {
                None => "  .".to_string(),
                Some(c) if c.minimum_at_zero() => "  0".to_string(),
                Some(c) => format!("{:>3}", c.argmin_sectors[0]),
            };
            print!("{mark}");
        }
        println!();
    }
    Ok(())
}
