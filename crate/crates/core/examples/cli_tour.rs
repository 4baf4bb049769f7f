//! The command-line interface driven in-process on the bundled specs in
//! `examples/data`. The same commands work through the `shiftlab` binary.
//!
//! `cargo run --example cli_tour`

use std::error::Error;
use std::fmt::Write;

use shiftlab::cli::run_with_precision;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let commands: Vec<Vec<String>> = vec![
        vec!["check-khypo".into(), "--k".into(), "2".into(), "--window".into(), "50".into(), format!("{data}/bergman2.json")],
        vec!["check-khypo".into(), "--k".into(), "2".into(), format!("{data}/flat_start.json")],
        vec!["joint".into(), "--window".into(), "30".into(), "10".into(), format!("{data}/figure5_fail.json")],
        vec!["classify-sfc".into(), format!("{data}/sfc.json"), "--json".into()],
        vec!["scan".into(), "--lo".into(), "1/3".into(), "--hi".into(), "1/2".into(), "--steps".into(), "2".into()],
    ];
    let mut out = String::new();
    for args in commands {
        let o = run_with_precision(std::iter::once("shiftlab".to_string()).chain(args.iter().cloned()), 8);
        let shown: Vec<&str> = args.iter().map(|a| a.strip_prefix(data).map_or(a.as_str(), |s| s.trim_start_matches('/'))).collect();
        writeln!(out, "$ shiftlab {}  (exit {})", shown.join(" "), o.code)?;
        for line in o.stdout.lines().take(8) {
            writeln!(out, "  {line}")?;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("example runs"));
}
