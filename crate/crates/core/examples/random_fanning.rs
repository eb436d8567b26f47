// How the chain-fanning certificate behaves on random hole patterns.

use matilda::fooling::certificate_target;
use matilda::run_experiment;

pub fn run() -> matilda::Result<()> {
    for (n, trials) in [(10, 200), (25, 200), (49, 50)] {
        let report = run_experiment(n, trials, 2025);
        println!("{report}");
        println!(
            "target n + 2*ceil(sqrt n) - 3 = {}\n",
            certificate_target(n)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matilda::Result<()> {
    run()
}
