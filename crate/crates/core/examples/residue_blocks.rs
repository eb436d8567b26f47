// Residue-block hole patterns for n = k^2 and the count k^2 + 2k - 3.

use matilda::render::render_tiling;
use matilda::{conjectured_min, min_partition, residue_permutation, SearchBudget};

pub fn run() -> matilda::Result<()> {
    for k in 2..=4 {
        let perm = residue_permutation(k);
        let predicted = conjectured_min(k as u64).expect("k >= 2");
        let solved = min_partition(&perm, &SearchBudget::unlimited()).expect("n <= 16");
        println!(
            "k={k} n={:>2} {perm}: formula {predicted}, exact {}",
            perm.n(),
            solved.min_count
        );
        assert_eq!(solved.min_count as u64, predicted);
        if k == 3 {
            println!("{}", render_tiling(&perm, &solved.witness)?);
        }
    }
    println!("n=2025: {} tiles", conjectured_min(45).unwrap());
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
