//! The Six-point Test on tensor and totally flat grids.
//!
//! `cargo run --example six_point`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::{psd2_radical_cross, rat};
use shiftlab::shift1d::WeightSeq;
use shiftlab::shift2d::{build_totallyflat, ShiftGrid2D};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();

    // [[a1, √p − √q], [√p − √q, a2]] ⪰ 0, decided without square roots
    writeln!(out, "[[1, √2−1], [√2−1, 1/5]] psd: {}", psd2_radical_cross(&rat(1, 1), &rat(1, 5), &rat(2, 1), &rat(1, 1))?)?;
    writeln!(out, "[[1, √2−1], [√2−1, 1/6]] psd: {}", psd2_radical_cross(&rat(1, 1), &rat(1, 6), &rat(2, 1), &rat(1, 1))?)?;

    let t = ShiftGrid2D::tensor(WeightSeq::bergman_like(1), WeightSeq::bergman_like(2));
    let sp = t.six_point((0, 0))?;
    writeln!(out, "tensor at (0,0): a1 = {}, a2 = {}, p = {}, q = {}, psd = {}", sp.a1, sp.a2, sp.p, sp.q, sp.psd)?;
    writeln!(out, "tensor window 10×10: {}", t.joint_hyponormal_window(10, 10)?.verdict)?;

    // a totally flat grid is hyponormal only when row 0 is itself flat
    for (name, row) in [("alpha family", WeightSeq::alpha_family()), ("S_a, a² = 1/2", WeightSeq::s_a(rat(1, 2)))] {
        for y_sq in [rat(1, 2), rat(1, 1)] {
            let g = build_totallyflat(row.clone(), y_sq.clone())?;
            let r = g.joint_hyponormal_window(10, 10)?;
            writeln!(out, "totally flat, row 0 {name}, y² = {y_sq}: hyponormal = {}, witness = {:?}", r.verdict, r.witness.map(|w| w.k))?;
        }
    }

    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
