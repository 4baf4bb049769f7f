//! Both thresholds across `a² ∈ (1/6, 1/2]` as CSV.
//!
//! `cargo run --example sfc_scan > scan.csv`

use std::error::Error;

use shiftlab::exactnum::{rat, Rational};
use shiftlab::sfc::{scan_region, write_scan_csv};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let lo = Rational::parse_sum("1/6+1/100")?;
    let rows = scan_region(&lo, &rat(1, 2), 12)?;
    let mut buf = Vec::new();
    write_scan_csv(&rows, 12, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
