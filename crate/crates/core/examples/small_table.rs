// Exact M(n) for small grids, checked against the known values.

use matilda::harness::reproduce_table;
use matilda::render::render_tiling;
use matilda::solver::{global_min_with, SolverOptions};

pub fn run() -> matilda::Result<()> {
    let opts = SolverOptions::default();
    let report = reproduce_table(6, &opts);
    println!("{report}");
    assert!(report.pass);

    let best = global_min_with(5, &opts).expect("n = 5 is quick");
    println!("\nan optimal 5x5 configuration, {} tiles:", best.min_count);
    println!("{}", render_tiling(&best.best_perm, &best.witness)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
