//! Local dimension above two: only the extreme local eigenvalues matter.
//!
//! ```text
//! cargo run --example higher_dimension
//! cargo run --example higher_dimension -- 4 3 1.5 -1
//! ```

use qfi_core::highdim::{optimal_probe_highdim, LocalExtremes};

fn show(parties: usize, k: usize, e: LocalExtremes) -> qfi_core::Result<()> {
    let r = optimal_probe_highdim(parties, k, e)?;
    println!(
        "P={parties} k={k} ({:>5}, {:>5}) {:?}: probe ({}, {}) {}{}",
        e.delta_max,
        e.delta_min,
        r.scenario,
        r.probe.s_top,
        r.probe.s_bottom,
        r.probe.classification,
        r.branch_condition
            .map(|c| format!(" [{c}]"))
            .unwrap_or_default()
    );
    Ok(())
}

fn main() -> qfi_core::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() == 4 {
        let parse = |i: usize| args[i].parse::<f64>().expect("numeric argument");
        let e = LocalExtremes::new(parse(2), parse(3))?;
        return show(parse(0) as usize, parse(1) as usize, e);
    }
    let rows = [
        (2.0, 1.0),
        (-1.0, -2.0),
        (3.0, -1.0),
        (1.5, -1.0),
        (1.0, -3.0),
        (1.0, -1.5),
        (1.0, -1.0),
    ];
    for (parties, k) in [(3, 2), (4, 3)] {
        for &(big, small) in &rows {
            show(parties, k, LocalExtremes::new(big, small)?)?;
        }
        println!();
    }
    Ok(())
}
