//! Verify Strassen's scheme three ways: Brent equations, exact random
//! evaluation, and a deliberately broken copy.

use fmm::testing::flip_sign;
use fmm::{brent_check, random_eval_check, strassen_scheme};

fn main() -> fmm::Result<()> {
    let s = strassen_scheme();
    println!("{} {} rank {}", s.name(), s.dims(), s.rank());

    let report = brent_check(&s);
    println!(
        "brent: {} equations, passed = {}",
        report.total_equations, report.passed
    );

    let eval = random_eval_check(&s, 100, 7)?;
    println!(
        "random integer trials: {}, all equal = {}",
        eval.trials, eval.all_equal
    );

    let broken = flip_sign(&s, 3, "gamma", 0, 1);
    let report = brent_check(&broken);
    println!(
        "after one sign flip: passed = {}, {} failing equations",
        report.passed, report.failure_count
    );
    for failure in report.first_failures.iter().take(3) {
        println!("  {failure}");
    }
    Ok(())
}
