//! Walk a rectangular scheme through all six orientations.

use fmm::{brent_check, naive_scheme, orient, Orientation};

fn main() -> fmm::Result<()> {
    let s = naive_scheme(2, 3, 4)?;
    for o in Orientation::ALL {
        let t = o.apply(&s);
        println!(
            "{:>4} {} rank {} brent {}",
            o.word(),
            t.dims(),
            t.rank(),
            brent_check(&t).passed
        );
    }

    let target = fmm::Dims::new(4, 2, 3)?;
    let t = orient(&s, target)?;
    println!("orient {} -> {}: rank {}", s.dims(), t.dims(), t.rank());
    Ok(())
}
