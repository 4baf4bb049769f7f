//! Backward extensions of Berger measures in one and two variables.
//!
//! `cargo run --example backward_extension`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::{rat, Rational};
use shiftlab::measures::{backward_ext_1var, backward_ext_2var, marginal_x, Measure1D, Measure2D};
use shiftlab::shift1d::WeightSeq;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let (zero, one) = (Rational::zero(), Rational::one());

    // Prepend a weight to the Bergman shift (measure dt); ‖1/t‖ is infinite
    let dt = Measure1D::lebesgue(zero.clone(), one.clone());
    writeln!(out, "dt, β0² = 1/2: {:?}", backward_ext_1var(&dt, &rat(1, 2)).err())?;

    // t dt has ‖1/t‖ = 1: any β0² ≤ 1 works
    let tdt = Measure1D::density(shiftlab::exactnum::Polynomial::monomial(rat(2, 1), 1), zero.clone(), one.clone())?;
    let eta = backward_ext_1var(&tdt, &rat(1, 2))?;
    writeln!(out, "2t dt, β0² = 1/2: atom at 0 = {}", eta.atom_mass(&zero))?;
    let ext = WeightSeq::from_berger(eta)?;
    writeln!(out, "first weights²: {:?}", ext.weights_sq(3)?.iter().map(|r| r.to_string()).collect::<Vec<_>>())?;
    writeln!(out, "2t dt, β0² = 2: {}", backward_ext_1var(&tdt, &rat(2, 1)).unwrap_err())?;

    // Two variables: μ_M = δ₁ × (2t dt), ξ = (1/2)(δ_{1/2} + δ₁)
    let mu_m = Measure2D::product(Measure1D::dirac(one.clone()), tdt);
    let xi = Measure1D::dirac(rat(1, 2)).add(&Measure1D::dirac(one)).scale(&rat(1, 2));
    for b in [rat(1, 4), rat(1, 2), rat(2, 1)] {
        match backward_ext_2var(&mu_m, &xi, &b) {
            Ok(mu) => writeln!(out, "β00² = {b}: mass {}, X-marginal atoms {}", mu.total_mass(), marginal_x(&mu).atoms().len())?,
            Err(e) => writeln!(out, "β00² = {b}: {e}")?,
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
