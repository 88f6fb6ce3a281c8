//! Save a composed scheme, reload it with verification, and show the
//! first lines of the file format.

use fmm::catalog::{load_scheme_verified, render_scheme, save_scheme};
use fmm::{compose, naive_scheme, strassen_scheme};

fn main() -> fmm::Result<()> {
    let (c, _) = compose(
        2,
        1,
        &strassen_scheme(),
        &naive_scheme(2, 2, 1)?,
        &naive_scheme(1, 1, 2)?,
    )?;
    let path = std::env::temp_dir().join("fmm_example_333.json");
    save_scheme(&c, &path)?;
    let (back, report) = load_scheme_verified(&path)?;
    println!(
        "wrote {} ({} rank {})",
        path.display(),
        back.dims(),
        back.rank()
    );
    println!(
        "brent on load: {} equations, passed = {}",
        report.total_equations, report.passed
    );
    assert!(back.structurally_eq(&c));

    for line in render_scheme(&c).lines().take(8) {
        println!("{line}");
    }
    std::fs::remove_file(&path).ok();
    Ok(())
}
