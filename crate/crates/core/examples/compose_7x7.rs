//! Build a <7,7,7> scheme of rank 301 from Strassen squared and naive
//! rectangular schemes, then check it end to end.

use fmm::{brent_check, compose, kronecker, naive_scheme, random_eval_check, strassen_scheme};

fn main() -> fmm::Result<()> {
    let s = strassen_scheme();
    let uuu = kronecker(&s, &s);
    let (c, report) = compose(4, 3, &uuu, &naive_scheme(4, 4, 3)?, &naive_scheme(3, 3, 4)?)?;
    println!("{} rank {}", c.dims(), c.rank());
    println!("{}", report.arithmetic());
    println!("brent: passed = {}", brent_check(&c).passed);
    println!(
        "random trials all equal = {}",
        random_eval_check(&c, 20, 11)?.all_equal
    );
    Ok(())
}
