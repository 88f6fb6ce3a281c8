//! Apply Strassen's scheme recursively to 64x64 matrices and compare
//! against the naive product.

use fmm::bench::run_bench;
use fmm::strassen_scheme;

fn main() -> fmm::Result<()> {
    let s = strassen_scheme();
    for recursive in [false, true] {
        println!("{}", run_bench(&s, 64, 3, recursive, 1)?);
    }
    Ok(())
}
