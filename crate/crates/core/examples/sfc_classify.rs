//! Classifying symmetrically flat contractive shifts by the thresholds
//! `h²` and `s²`, checked against Six-point tests and backward extension.
//!
//! `cargo run --example sfc_classify`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::rat;
use shiftlab::sfc::{classify, example_family, h_threshold_sq, proflat1_p, s_threshold_sq};
use shiftlab::verify::independent_verdict;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let base = example_family(rat(1, 2), rat(1, 1))?;
    writeln!(out, "a² = 1/2: h² = {}, s² = {}, P = {}", h_threshold_sq(&base)?, s_threshold_sq(&base)?, proflat1_p(&base))?;
    for y in [rat(1, 4), rat(12, 25), rat(9, 10)] {
        let c = classify(&base.with_y0_sq(y.clone())?)?;
        writeln!(out, "  y0² = {y}: {:?}", c.verdict)?;
    }

    writeln!(out, "a² = 1/4, in-class points:")?;
    for y in [rat(1, 5), rat(1, 2), rat(3, 4)] {
        let p = example_family(rat(1, 4), rat(4, 3) * &y)?;
        let c = classify(&p)?;
        writeln!(out, "  y0² = {y}: {:?} (in class: {}, independent: {:?})", c.verdict, p.in_class(), independent_verdict(&p)?)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
