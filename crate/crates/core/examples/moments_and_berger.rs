//! Moments of 1-variable shifts and their Berger measures.
//!
//! `cargo run --example moments_and_berger`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::{rat, Rational};
use shiftlab::measures::Measure1D;
use shiftlab::shift1d::WeightSeq;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let (zero, one) = (Rational::zero(), Rational::one());

    // Bergman shift: α_k² = (k+1)/(k+2), γ_k = 1/(k+1), measure dt on [0,1]
    let bergman = WeightSeq::bergman_like(1);
    let g = bergman.gamma(6)?;
    writeln!(out, "Bergman gammas: {:?}", g.as_slice().iter().map(|r| r.to_string()).collect::<Vec<_>>())?;
    let dt = Measure1D::lebesgue(zero.clone(), one.clone());
    writeln!(out, "Bergman vs dt up to 30: {}", bergman.verify_berger(&dt, 30)?)?;

    // (1/3)(δ₀ + δ_{1/2} + δ₁)
    let xi = Measure1D::dirac(zero.clone())
        .add(&Measure1D::dirac(rat(1, 2)))
        .add(&Measure1D::dirac(one.clone()))
        .scale(&rat(1, 3));
    let alpha = WeightSeq::alpha_family();
    writeln!(out, "alpha family weights²: {:?}", alpha.weights_sq(4)?.iter().map(|r| r.to_string()).collect::<Vec<_>>())?;
    writeln!(out, "alpha family vs ξ up to 30: {}", alpha.verify_berger(&xi, 30)?)?;

    // a weight sequence can be generated from any measure
    let from_xi = WeightSeq::from_berger(xi.clone())?;
    writeln!(out, "weights from ξ agree: {}", from_xi.weights_sq(10)? == alpha.weights_sq(10)?)?;

    for r_sq in [rat(1, 4), rat(1, 2), rat(1, 1)] {
        let ws = WeightSeq::beta_r_family(r_sq.clone());
        let half = &r_sq / rat(2, 1);
        let mu = Measure1D::atom(zero.clone(), &one - &r_sq)
            .add(&dt.scale(&half))
            .add(&Measure1D::atom(one.clone(), half));
        writeln!(out, "beta_r family r²={r_sq}: γ_5 = {}, matches measure: {}", ws.gamma(5)?.get(5), ws.verify_berger(&mu, 30)?)?;
    }

    let s_a = WeightSeq::s_a(rat(1, 4));
    let mu = Measure1D::atom(zero, rat(3, 4)).add(&Measure1D::atom(one, rat(1, 4)));
    writeln!(out, "S_a a²=1/4 vs (3/4)δ₀+(1/4)δ₁: {}", s_a.verify_berger(&mu, 30)?)?;
    writeln!(out, "∫ 1/t dξ over (0,1]: {}", xi.div_t_off_zero()?.total_mass())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
