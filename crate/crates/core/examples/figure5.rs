//! A propagating 2-variable shift built from Bergman-like rows: the
//! bottom-left weight decides joint hyponormality.
//!
//! `cargo run --example figure5`

use std::error::Error;
use std::fmt::Write;

use shiftlab::exactnum::rat;
use shiftlab::shift2d::{build_figure5, Figure5Options};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let fig = build_figure5(2, rat(1, 4), &Figure5Options::default())?;
    writeln!(out, "rows (bottom first): {:?}, column seeds: {:?}", fig.ells, fig.column_seeds.iter().map(|r| r.to_string()).collect::<Vec<_>>())?;
    for c in &fig.conditions {
        writeln!(out, "  {:<14} {} {} {}  [{}]", c.name, c.lhs, c.relation, c.rhs, if c.holds { "ok" } else { "violated" })?;
    }

    for b in [rat(7, 3240), rat(1, 400), rat(742, 40765), rat(743, 40765)] {
        let opts = Figure5Options { beta0_sq: Some(b.clone()), ..Figure5Options::default() };
        let r = build_figure5(2, rat(1, 4), &opts)?.grid.joint_hyponormal_window(30, 10)?;
        match r.witness {
            None => writeln!(out, "β0² = {b}: hyponormal on 30×10")?,
            Some(w) => writeln!(out, "β0² = {b}: fails at {:?} ({})", w.k, w.condition)?,
        }
    }

    // deeper grids insert Bergman-like rows found by search
    for k2 in [3, 4] {
        let fig = build_figure5(k2, rat(1, 4), &Figure5Options::default())?;
        let r = fig.grid.joint_hyponormal_window(30, 10)?;
        writeln!(out, "k2 = {k2}: rows {:?}, bottom β² = {}, window passes: {}", fig.ells, fig.column_seeds[0], r.verdict)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
