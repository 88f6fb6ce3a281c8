//! Nested composition: <7,7,7> from (4,3), then <9,9,9> from (6,3) using a
//! Kronecker-built <6,6,6> and naive rectangular pieces.

use fmm::{brent_check, compose, kronecker, naive_scheme, strassen_scheme};

fn main() -> fmm::Result<()> {
    let s = strassen_scheme();
    let six = kronecker(&s, &naive_scheme(3, 3, 3)?);
    println!("<6,6,6> via Strassen x naive<3,3,3>: rank {}", six.rank());

    let (c9, report) = compose(6, 3, &six, &naive_scheme(6, 6, 3)?, &naive_scheme(3, 3, 6)?)?;
    println!("{} rank {}: {}", c9.dims(), c9.rank(), report.arithmetic());
    let check = brent_check(&c9);
    println!(
        "brent: {} equations, passed = {}",
        check.total_equations, check.passed
    );
    Ok(())
}
