// A fooling-set lower bound for the 25x25 residue grid that meets the
// residue upper bound.

use matilda::fooling::{certificate_target, fanning};
use matilda::render::render_fanning;
use matilda::{certify, conjectured_min, residue_permutation, verify_fooling_set};

pub fn run() -> matilda::Result<()> {
    let perm = residue_permutation(5);
    let fan = fanning(&perm);
    println!("increasing chain rows {:?}", fan.lis.rows);
    println!("decreasing chain rows {:?}", fan.lds.rows);
    println!("{}", render_fanning(&perm, &fan)?);

    let cert = certify(&perm);
    assert!(verify_fooling_set(&perm, &cert.cells)?.is_valid());
    println!(
        "size {} (target {}), residue covering uses {}",
        cert.size,
        certificate_target(perm.n()),
        conjectured_min(5).unwrap()
    );
    assert!(cert.size >= 32);
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
