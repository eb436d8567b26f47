// Natural closed forms for M(n) that exhaustive search rules out.

use matilda::cli::named_formula;
use matilda::solver::{refute_formula, SolverOptions};

pub fn run() -> matilda::Result<()> {
    let opts = SolverOptions::default();
    for name in ["2n-2", "3n/2", "(3n-1)/2"] {
        let formula = named_formula(name).expect("known formula");
        match refute_formula(formula, 2..=6, &opts).expect("small n within budget") {
            Some(c) => println!(
                "{name:>9}: fails at n={} ({} predicted, {} actual)",
                c.n, c.predicted, c.actual
            ),
            None => println!("{name:>9}: agrees for n = 2..6"),
        }
    }
    let c = refute_formula(named_formula("2n-2").unwrap(), 2..=6, &opts)
        .expect("small n")
        .expect("2n-2 is refuted");
    assert_eq!((c.n, c.predicted, c.actual), (4, 6, 5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
