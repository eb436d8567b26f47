mod verify_reference {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/verify_reference.rs"
    ));
}

#[test]
fn verify_reference_example_runs() {
    verify_reference::run().expect("verify_reference example should run");
}

mod small_table {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/small_table.rs"
    ));
}

#[test]
fn small_table_example_runs() {
    small_table::run().expect("small_table example should run");
}

mod refute_conjectures {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/refute_conjectures.rs"
    ));
}

#[test]
fn refute_conjectures_example_runs() {
    refute_conjectures::run().expect("refute_conjectures example should run");
}

mod residue_blocks {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/residue_blocks.rs"
    ));
}

#[test]
fn residue_blocks_example_runs() {
    residue_blocks::run().expect("residue_blocks example should run");
}

mod certify_residue {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/certify_residue.rs"
    ));
}

#[test]
fn certify_residue_example_runs() {
    certify_residue::run().expect("certify_residue example should run");
}

mod random_fanning {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/random_fanning.rs"
    ));
}

#[test]
fn random_fanning_example_runs() {
    random_fanning::run().expect("random_fanning example should run");
}

mod symmetry {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/symmetry.rs"));
}

#[test]
fn symmetry_example_runs() {
    symmetry::run().expect("symmetry example should run");
}
