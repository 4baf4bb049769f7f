//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code with everything to print.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exactnum::Rational;
use crate::sfc::{self, SfcInput, SfcParams};
use crate::shift1d::WeightSeq;
use crate::shift2d::{build_figure5, Figure5Options, GridSpec, ShiftGrid2D};
use crate::verify;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const DEFAULT_PRECISION: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "shiftlab", version, about = "Exact moment, hyponormality and subnormality checks for weighted shifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to a file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Moments γ_0..γ_N of a 1-variable shift.
    Moments {
        spec: PathBuf,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// Monotone weights on [0, window].
    CheckHypo {
        spec: PathBuf,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// Hankel matrices H(k; n) for n in [0, window].
    CheckKhypo {
        spec: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// Six-point Test of a 2-variable shift at one index.
    Sixpoint {
        spec: PathBuf,
        #[arg(long, num_args = 2, default_values_t = [0, 0])]
        at: Vec<usize>,
    },
    /// Six-point Test over [0, M] × [0, N].
    Joint {
        spec: PathBuf,
        #[arg(long, num_args = 2, value_names = ["M", "N"], default_values_t = [10, 10])]
        window: Vec<usize>,
    },
    /// Verdict for a symmetrically flat contractive shift.
    ClassifySfc { spec: PathBuf },
    /// CSV of both thresholds across a range of a².
    Scan {
        #[arg(long, value_parser = parse_rational)]
        lo: Rational,
        #[arg(long, value_parser = parse_rational)]
        hi: Rational,
        #[arg(long)]
        steps: usize,
    },
    /// Run the whole check table.
    VerifyPaper,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::parse_sum(s).map_err(|e| e.to_string())
}

/// Exit code and text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Constant {
    pub name: String,
    pub value: Rational,
    pub decimal: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub verdict: String,
    pub witnesses: Vec<Value>,
    pub constants: Vec<Constant>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    pub elapsed_ms: u64,
}

struct Builder {
    command: &'static str,
    precision: usize,
    constants: Vec<Constant>,
    witnesses: Vec<Value>,
    details: Value,
}

impl Builder {
    fn new(command: &'static str, precision: usize) -> Self {
        Builder { command, precision, constants: Vec::new(), witnesses: Vec::new(), details: Value::Null }
    }

    fn constant(&mut self, name: impl Into<String>, value: Rational) {
        let decimal = value.to_decimal(self.precision);
        self.constants.push(Constant { name: name.into(), value, decimal });
    }

    fn finish(self, verdict: impl Into<String>, start: Instant) -> Report {
        Report {
            command: self.command,
            verdict: verdict.into(),
            witnesses: self.witnesses,
            constants: self.constants,
            details: self.details,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, self.verdict);
        for w in &self.witnesses {
            s.push_str(&format!("witness: {w}\n"));
        }
        for c in &self.constants {
            s.push_str(&format!("{} = {} ≈ {}\n", c.name, c.value, c.decimal));
        }
        if !self.details.is_null() {
            s.push_str(&format!("details: {}\n", self.details));
        }
        s
    }
}

/// Decimal digits from `SHIFTLAB_PRECISION`, falling back to 12.
pub fn precision_from_env() -> Result<usize, String> {
    match std::env::var("SHIFTLAB_PRECISION") {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(p) if p >= 1 => Ok(p),
            _ => Err(format!("SHIFTLAB_PRECISION must be a positive integer, got {v:?}")),
        },
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match precision_from_env() {
        Ok(p) => run_with_precision(args, p),
        Err(msg) => Outcome::input_error(msg),
    }
}

pub fn run_with_precision<I, T>(args: I, precision: usize) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS };
            let text = err.render().to_string();
            return if code == EXIT_HOLDS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (code, body) = match execute(&cli, precision) {
        Ok(r) => r,
        Err(msg) => return Outcome::input_error(msg),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: format!("wrote {}\n", path.display()), stderr: String::new() },
            Err(err) => Outcome::input_error(format!("{}: {err}", path.display())),
        },
        None => Outcome { code, stdout: body, stderr: String::new() },
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        // values inside tagged specs are buffered first and lose their position
        let at = match e.line() {
            0 => locate_value(&text, &e.to_string()).map(|(l, c)| format!(" at line {l} column {c}")),
            _ => None,
        };
        format!("{}: {e}{}", path.display(), at.unwrap_or_default())
    })
}

/// Position of the quoted value named at the end of `msg`, if it occurs once.
fn locate_value(text: &str, msg: &str) -> Option<(usize, usize)> {
    let value = msg.rsplit(": ").next()?;
    let needle = format!("\"{value}\"");
    let at = text.find(&needle)?;
    if text[at + 1..].contains(&needle) {
        return None;
    }
    let line = text[..at].matches('\n').count() + 1;
    let col = at - text[..at].rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, col))
}

fn window1(n: usize) -> Result<usize, String> {
    if n >= 1 {
        Ok(n)
    } else {
        Err("window must be at least 1".into())
    }
}

fn window2(w: &[usize]) -> Result<(usize, usize), String> {
    Ok((window1(w[0])?, window1(w[1])?))
}

fn verdict_code(holds: bool) -> (i32, &'static str) {
    if holds {
        (EXIT_HOLDS, "holds")
    } else {
        (EXIT_FAILED, "fails")
    }
}

fn render(report: &Report, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_text()
    }
}

fn execute(cli: &Cli, precision: usize) -> Result<(i32, String), String> {
    let start = Instant::now();
    let e = |err: &dyn std::fmt::Display| err.to_string();
    match &cli.command {
        Command::Moments { spec, window } => {
            let ws: WeightSeq = read_json(spec)?;
            let n = window1(*window)?;
            let mut b = Builder::new("moments", precision);
            let g = ws.gamma(n).map_err(|x| e(&x))?;
            for (k, v) in g.as_slice().iter().enumerate() {
                b.constant(format!("gamma_{k}"), v.clone());
            }
            Ok((EXIT_HOLDS, render(&b.finish("computed", start), cli.json)))
        }
        Command::CheckHypo { spec, window } => {
            let ws: WeightSeq = read_json(spec)?;
            let n = window1(*window)?;
            let mut b = Builder::new("check-hypo", precision);
            let ws_sq = ws.weights_sq(ws.len().map_or(n + 1, |l| l.min(n + 1))).map_err(|x| e(&x))?;
            if let Some(k) = ws_sq.windows(2).position(|p| p[0] > p[1]) {
                b.witnesses.push(json!({ "k": k }));
                b.constant(format!("alpha_{k}^2"), ws_sq[k].clone());
                b.constant(format!("alpha_{}^2", k + 1), ws_sq[k + 1].clone());
            }
            let (code, v) = verdict_code(b.witnesses.is_empty());
            Ok((code, render(&b.finish(v, start), cli.json)))
        }
        Command::CheckKhypo { spec, k, window } => {
            let ws: WeightSeq = read_json(spec)?;
            if !(1..=6).contains(k) {
                return Err(format!("--k must lie in 1..=6, got {k}"));
            }
            let n = window1(*window)?;
            let mut b = Builder::new("check-khypo", precision);
            for base in 0..=n {
                let h = ws.hankel_matrix(*k, base).map_err(|x| e(&x))?;
                if !crate::exactnum::psd_check(&h) {
                    b.witnesses.push(json!({ "order": k, "base": base }));
                    b.constant(format!("det_H({k};{base})"), h.det());
                    break;
                }
            }
            let (code, v) = verdict_code(b.witnesses.is_empty());
            Ok((code, render(&b.finish(v, start), cli.json)))
        }
        Command::Sixpoint { spec, at } => {
            let grid: ShiftGrid2D = read_json(spec)?;
            let k = (at[0], at[1]);
            let sp = grid.six_point(k).map_err(|x| e(&x))?;
            let mut b = Builder::new("sixpoint", precision);
            b.constant("a1", sp.a1.clone());
            b.constant("a2", sp.a2.clone());
            b.constant("p", sp.p.clone());
            b.constant("q", sp.q.clone());
            if !sp.psd {
                b.witnesses.push(json!({ "k": [k.0, k.1] }));
            }
            let (code, v) = verdict_code(sp.psd);
            Ok((code, render(&b.finish(v, start), cli.json)))
        }
        Command::Joint { spec, window } => {
            let gspec: GridSpec = read_json(spec)?;
            let (m, n) = window2(window)?;
            let (grid, conditions) = match &gspec {
                GridSpec::Figure5 { k2, alpha0_sq, beta0_sq } => {
                    let opts = Figure5Options { beta0_sq: beta0_sq.clone(), ..Figure5Options::default() };
                    let fig = build_figure5(*k2, alpha0_sq.clone(), &opts).map_err(|x| e(&x))?;
                    (fig.grid, fig.conditions)
                }
                _ => (ShiftGrid2D::from_spec(gspec.clone()).map_err(|x| e(&x))?, Vec::new()),
            };
            let report = grid.joint_hyponormal_window(m, n).map_err(|x| e(&x))?;
            let mut b = Builder::new("joint", precision);
            if let Some(w) = &report.witness {
                b.witnesses.push(json!({ "k": [w.k.0, w.k.1], "condition": w.condition }));
            }
            for c in &conditions {
                b.constant(format!("{}.lhs", c.name), c.lhs.clone());
                b.constant(format!("{}.rhs", c.name), c.rhs.clone());
            }
            b.details = json!({
                "window": [m, n],
                "conditions": conditions.iter().map(|c| json!({
                    "name": c.name, "relation": c.relation, "holds": c.holds,
                })).collect::<Vec<_>>(),
            });
            let (code, v) = verdict_code(report.verdict);
            Ok((code, render(&b.finish(v, start), cli.json)))
        }
        Command::ClassifySfc { spec } => {
            let input: SfcInput = read_json(spec)?;
            let params = SfcParams::from_input(input).map_err(|x| e(&x))?;
            let c = sfc::classify(&params).map_err(|x| e(&x))?;
            let mut b = Builder::new("classify-sfc", precision);
            b.constant("y0_sq", params.y0_sq.clone());
            b.constant("h_sq", c.h_sq.clone());
            b.constant("s_sq", c.s_sq.clone());
            for (name, v) in [("p", &params.p), ("q", &params.q), ("u", &params.u), ("v", &params.v)] {
                b.constant(name, v.clone());
            }
            b.details = json!({
                "in_class": params.in_class(),
                "membership": params.membership().iter().map(|m| json!({
                    "name": m.name, "lhs": m.lhs, "relation": m.relation, "rhs": m.rhs, "holds": m.holds,
                })).collect::<Vec<_>>(),
            });
            let verdict = serde_json::to_value(c.verdict).expect("verdict serializes");
            let verdict = verdict.as_str().unwrap_or_default().to_string();
            Ok((EXIT_HOLDS, render(&b.finish(verdict, start), cli.json)))
        }
        Command::Scan { lo, hi, steps } => {
            let rows = sfc::scan_region(lo, hi, *steps).map_err(|x| e(&x))?;
            if cli.json {
                let mut b = Builder::new("scan", precision);
                for r in &rows {
                    b.constant(format!("h_sq({})", r.a_sq), r.h_sq.clone());
                    b.constant(format!("s_sq({})", r.a_sq), r.s_sq.clone());
                }
                return Ok((EXIT_HOLDS, render(&b.finish("computed", start), true)));
            }
            let mut buf = Vec::new();
            sfc::write_scan_csv(&rows, precision, &mut buf).map_err(|x| e(&x))?;
            Ok((EXIT_HOLDS, String::from_utf8(buf).expect("csv is utf-8")))
        }
        Command::VerifyPaper => {
            let checks = verify::run_all();
            let all = checks.iter().all(|c| c.pass);
            let code = if all { EXIT_HOLDS } else { EXIT_FAILED };
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&checks).expect("checks serialize");
                s.push('\n');
                s
            } else {
                verify::render_table(&checks)
            };
            Ok((code, body))
        }
    }
}
