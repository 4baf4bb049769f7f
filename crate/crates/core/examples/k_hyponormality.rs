//! Hankel tests, 2-hyponormality of Bergman-like shifts and a propagation
//! witness for a shift with two equal weights.
//!
//! `cargo run --example k_hyponormality`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::{rat, Rational};
use shiftlab::shift1d::{det_h2_closed, Tail, WeightSeq};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for ell in 1..=3u32 {
        let ws = WeightSeq::bergman_like(ell);
        let g = ws.gamma(10)?;
        let det = ws.hankel_matrix(2, 0)?.det();
        writeln!(
            out,
            "B^({ell}): det H(2;0) = {det}, closed form = {}, 2-hyponormal on [0,50]: {}",
            det_h2_closed(ell, 0, g.get(0)),
            ws.is_k_hyponormal(2, 50)?
        )?;
    }

    // (1/4, 1/4, 1, 1, ...) is hyponormal but not 2-hyponormal
    let ws = WeightSeq::new(vec![rat(1, 4), rat(1, 4)], Tail::Constant { value: Rational::one() })?;
    writeln!(out, "flat-start shift hyponormal: {}", ws.is_hyponormal(20)?)?;
    writeln!(out, "det H(2;0) = {}", ws.hankel_matrix(2, 0)?.det())?;
    writeln!(out, "audit: {:?}", ws.propagation_audit(6, 10)?)?;
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
