//! Tensor products of schemes: Strassen squared, and a mixed-shape product.

use fmm::{brent_check, kronecker, naive_scheme, strassen_scheme};

fn main() -> fmm::Result<()> {
    let s = strassen_scheme();
    let s2 = kronecker(&s, &s);
    println!(
        "{} rank {}, brent {}",
        s2.dims(),
        s2.rank(),
        brent_check(&s2).passed
    );

    let mixed = kronecker(&s, &naive_scheme(1, 2, 3)?);
    println!(
        "{} rank {}, brent {}",
        mixed.dims(),
        mixed.rank(),
        brent_check(&mixed).passed
    );
    Ok(())
}
