//! Query the bounds table and derive rank bounds by composition and by
//! Kronecker product.

use fmm::catalog::{kron_bound, prop1_bound, BoundsTable};
use fmm::Dims;

fn main() -> fmm::Result<()> {
    let table = BoundsTable::seeded();
    for (u, v, w) in [(3, 4, 3), (4, 3, 3), (9, 9, 9)] {
        let d = Dims::new(u, v, w)?;
        println!("{d} <= {} ({})", table.bound(d), table.query(d).provenance);
    }

    for (u, v) in [(4, 3), (3, 2), (6, 3)] {
        let d = prop1_bound(u, v, &table)?;
        println!("split ({u},{v}): {d}");
    }

    let three = Dims::new(3, 3, 3)?;
    println!("kron: {}", kron_bound(three, three, &table));
    Ok(())
}
