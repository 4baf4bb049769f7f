//! Exact rationals, principal-minor PSD tests and Sturm-based polynomial
//! positivity.
//!
//! `cargo run --example exact_kernels`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::{poly_nonneg_on_interval, psd_check, rat, Polynomial, Rational, SymMatrix};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let x: Rational = "7/3240".parse()?;
    writeln!(out, "7/3240 ≈ {} ; 1/6+1/100 = {}", x.to_decimal(12), Rational::parse_sum("1/6+1/100")?)?;

    // Hilbert matrix (moments of dt) is positive definite
    let hilbert = SymMatrix::from_fn(4, |i, j| rat(1, (i + j + 1) as i64))?;
    writeln!(out, "Hilbert 4×4: det = {}, psd = {}", hilbert.det(), psd_check(&hilbert))?;
    // singular with a negative 2×2 minor hidden behind a zero pivot
    let tricky = SymMatrix::from_rows(vec![
        vec![rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 1), rat(2, 1)],
        vec![rat(0, 1), rat(2, 1), rat(1, 1)],
    ])?;
    writeln!(out, "zero-pivot matrix psd: {}", psd_check(&tricky))?;

    // (t − 1/2)² ≥ 0 touches zero; t² − 1/4 does not stay nonnegative
    let sq = Polynomial::new(vec![rat(1, 4), rat(-1, 1), rat(1, 1)]);
    let neg = Polynomial::new(vec![rat(-1, 4), rat(0, 1), rat(1, 1)]);
    writeln!(out, "(t−1/2)² ≥ 0 on [0,1]: {}", poly_nonneg_on_interval(&sq, &rat(0, 1), &rat(1, 1)))?;
    writeln!(out, "t²−1/4 ≥ 0 on [0,1]: {}", poly_nonneg_on_interval(&neg, &rat(0, 1), &rat(1, 1)))?;
    writeln!(out, "t²−1/4 ≥ 0 on [1/2,1]: {}", poly_nonneg_on_interval(&neg, &rat(1, 2), &rat(1, 1)))?;
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
