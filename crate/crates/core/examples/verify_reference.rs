// The explicit 12-tile covering of the 9x9 residue grid: draw it, check it,
// then break it on purpose.

use matilda::render::render_tiling;
use matilda::{reference_tiling_9, verify_tiling, Tiling, VerifyResult};

pub fn run() -> matilda::Result<()> {
    let (perm, tiling) = reference_tiling_9();
    println!("holes {perm}");
    println!("{}", render_tiling(&perm, &tiling)?);
    println!(
        "{} tiles: {:?}",
        tiling.len(),
        verify_tiling(&perm, &tiling)?
    );
    assert!(verify_tiling(&perm, &tiling)?.is_accept());

    let mut missing = tiling.rects.clone();
    let dropped = missing.pop().expect("non-empty");
    match verify_tiling(&perm, &Tiling::new(9, missing))? {
        VerifyResult::Reject(v) => println!("without {dropped:?}: {v}"),
        VerifyResult::Accept => unreachable!("dropping a tile leaves cells uncovered"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
