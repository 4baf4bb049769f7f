//! Subnormality threshold `y² ≤ 1/3` for a two-row shift, found by
//! backward extension and confirmed by moments and Six-point tests.
//!
//! `cargo run --example figure9`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::rat;
use shiftlab::shift2d::{build_figure9, figure9_subnormality};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for y_sq in [rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3)] {
        let grid = build_figure9(y_sq.clone())?;
        let hyp = grid.joint_hyponormal_window(20, 10)?.verdict;
        match figure9_subnormality(&y_sq) {
            Ok(mu) => {
                let agree = (0..6).all(|i| (0..6).all(|j| grid.gamma2((i, j)).map(|g| g == mu.moment(i, j)).unwrap_or(false)));
                writeln!(out, "y² = {y_sq}: subnormal, {} terms, moments agree: {agree}, hyponormal window: {hyp}", mu.terms().len())?;
            }
            Err(e) => writeln!(out, "y² = {y_sq}: not subnormal ({e}), hyponormal window: {hyp}")?,
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
