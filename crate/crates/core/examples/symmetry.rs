// The eight grid symmetries map optimal tilings to optimal tilings.

use matilda::{min_partition, random_perm, verify_tiling, SearchBudget, Symmetry};

pub fn run() -> matilda::Result<()> {
    let perm = random_perm(8, 11);
    let base = min_partition(&perm, &SearchBudget::unlimited()).expect("n = 8 is quick");
    println!("{perm}: {} tiles", base.min_count);
    for sym in Symmetry::ALL {
        let image = sym.apply_perm(&perm);
        let moved = sym.apply_tiling(&base.witness);
        assert!(verify_tiling(&image, &moved)?.is_accept());
        let direct = min_partition(&image, &SearchBudget::unlimited()).expect("n = 8 is quick");
        println!("{sym:?}: {image} -> {} tiles", direct.min_count);
        assert_eq!(direct.min_count, base.min_count);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
