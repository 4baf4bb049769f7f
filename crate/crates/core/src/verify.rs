//! The named checks behind `shiftlab verify-paper`.

use serde::Serialize;

use crate::exactnum::{rat, Rational};
use crate::measures::{extremal, Condition, ExtensionError, Measure1D};
use crate::sfc::{self, Verdict};
use crate::shift1d::{det_h2_closed, telescoping_product, Audit, Telescope, WeightSeq};
use crate::shift2d::{build_figure5, build_figure9, figure9_subnormality, Figure5Options, ShiftGrid2D};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Acceptance criterion the check belongs to.
    pub criterion: u8,
    pub name: &'static str,
    /// Label of the statement being reproduced.
    pub label: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(criterion: u8, name: &'static str, label: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    let (pass, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { criterion, name, label, pass, detail }
}

fn ensure(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Result<String, String> {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn berger(ws: &WeightSeq, mu: &Measure1D) -> Result<String, String> {
    let ok = ws.verify_berger(mu, 30).map_err(e)?;
    ensure(ok, "γ_0..γ_30 agree", "moment mismatch")
}

fn figure5_window(beta0: Rational) -> Result<crate::shift2d::WindowReport, String> {
    let opts = Figure5Options { beta0_sq: Some(beta0), ..Figure5Options::default() };
    let fig = build_figure5(2, rat(1, 4), &opts).map_err(e)?;
    fig.grid.joint_hyponormal_window(30, 10).map_err(e)
}

/// Points used for the cross-oracle comparison: `a² ∈ {1/4, 1/5}`, ten values
/// of `y0²` each, spread across all three verdicts and inside the class.
pub fn cross_oracle_points() -> Vec<sfc::SfcParams> {
    let mut out = Vec::new();
    for a_sq in [rat(1, 4), rat(1, 5)] {
        for y0 in [
            rat(1, 10),
            rat(1, 5),
            rat(1, 4),
            rat(3, 10),
            rat(2, 5),
            rat(9, 20),
            rat(1, 2),
            rat(11, 20),
            rat(2, 3),
            rat(3, 4),
        ] {
            let r_sq = rat(4, 3) * &y0;
            out.push(sfc::example_family(a_sq.clone(), r_sq).expect("valid example point"));
        }
    }
    out
}

/// Verdicts by (a) Six-point testing over a window and (b) backward extension.
pub fn independent_verdict(p: &sfc::SfcParams) -> Result<Verdict, String> {
    let hyponormal = p.grid().map_err(e)?.joint_hyponormal_window(8, 4).map_err(e)?.verdict;
    let subnormal = match p.berger_measure() {
        Ok(_) => true,
        Err(sfc::SfcSubnormality::Extension(ExtensionError::Reject(_))) => false,
        Err(other) => return Err(other.to_string()),
    };
    Ok(match (hyponormal, subnormal) {
        (_, true) => Verdict::Subnormal,
        (true, false) => Verdict::HyponormalNotSubnormal,
        (false, false) => Verdict::NotHyponormal,
    })
}

fn closed_h(a_sq: &Rational) -> Rational {
    let d = a_sq - rat(1, 2);
    rat(8, 9) / (Rational::one() + rat(6, 1) * d.square())
}

fn closed_s(a_sq: &Rational) -> Rational {
    Rational::one() / (rat(4, 1) - rat(3, 1) * a_sq)
}

fn path_independent(g: &ShiftGrid2D, m: usize, n: usize) -> Result<bool, String> {
    for k1 in 0..=m {
        for k2 in 0..=n {
            if g.gamma2((k1, k2)).map_err(e)? != g.gamma2_up_right((k1, k2)).map_err(e)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn run_all() -> Vec<Check> {
    let mut out = Vec::new();

    out.push(check(1, "det_h2_closed_form", "2hypo", || {
        for ell in 1..=5u32 {
            let ws = WeightSeq::bergman_like(ell);
            let g = ws.gamma(60).map_err(e)?;
            for k in 0..=50 {
                let direct = ws.hankel_matrix(2, k).map_err(e)?.det();
                if direct != det_h2_closed(ell, k, g.get(k)) {
                    return Err(format!("mismatch at ell={ell}, k={k}"));
                }
            }
        }
        let first = det_h2_closed(1, 0, &Rational::one());
        ensure(first == rat(1, 2160), "255 instances agree; det H(2;0) = 1/2160", format!("ell=1,k=0 gives {first}"))
    }));

    out.push(check(2, "berger_bergman", "Bergman", || {
        berger(&WeightSeq::bergman_like(1), &Measure1D::lebesgue(Rational::zero(), Rational::one()))
    }));
    out.push(check(2, "berger_beta_r_family", "Bergerofgeneral", || {
        for r_sq in [rat(1, 4), rat(1, 2), rat(1, 1)] {
            let ws = WeightSeq::beta_r_family(r_sq.clone());
            let half = &r_sq / rat(2, 1);
            let mu = Measure1D::atom(Rational::zero(), Rational::one() - &r_sq)
                .add(&Measure1D::lebesgue(Rational::zero(), Rational::one()).scale(&half))
                .add(&Measure1D::atom(Rational::one(), half));
            berger(&ws, &mu)?;
            let g = ws.gamma(30).map_err(e)?;
            for n in 1..=30u64 {
                let want = rat((n + 2) as i64, 1) * &r_sq / rat(2 * (n + 1) as i64, 1);
                if *g.get(n as usize) != want {
                    return Err(format!("γ_{n} differs at r² = {r_sq}"));
                }
            }
        }
        Ok("r² ∈ {1/4, 1/2, 1}".into())
    }));
    out.push(check(2, "berger_alpha_family", "alphafamily", || {
        berger(&WeightSeq::alpha_family(), &sfc::example_xi())
    }));
    out.push(check(2, "berger_s_a", "Sa", || {
        for a_sq in [rat(1, 4), rat(1, 2)] {
            let mu = Measure1D::atom(Rational::zero(), Rational::one() - &a_sq).add(&Measure1D::atom(Rational::one(), a_sq.clone()));
            berger(&WeightSeq::s_a(a_sq), &mu)?;
        }
        Ok("a² ∈ {1/4, 1/2}".into())
    }));

    out.push(check(3, "beta_hat_telescoping", "aux", || {
        for n in 0..=200usize {
            let want = rat(3 * (n as i64 + 2), 2 * (n as i64 + 3));
            if telescoping_product(Telescope::BetaHat, n) != want {
                return Err(format!("n = {n}"));
            }
        }
        Ok("n ≤ 200".into())
    }));
    out.push(check(3, "alpha_hat_telescoping", "alphahat", || {
        let vals: Vec<Rational> = (0..=25).map(|n| telescoping_product(Telescope::AlphaHat, n)).collect();
        let increasing = vals.windows(2).all(|w| w[0] < w[1]);
        let gap = (rat(3, 1) - &vals[25]).abs();
        ensure(
            increasing && gap < rat(1, 1_000_000),
            format!("n=25 gives {}", vals[25].to_decimal(12)),
            "not monotone or not within 1e-6 of 3",
        )
    }));

    out.push(check(4, "figure5_passes_7_3240", "Propagation of Induction", || {
        let r = figure5_window(rat(7, 3240))?;
        ensure(r.verdict, "window (30, 10) passes", format!("fails at {:?}", r.witness))
    }));
    out.push(check(4, "figure5_fails_1_400", "Propagation of Induction", || {
        let r = figure5_window(rat(1, 400))?;
        match r.witness {
            Some(w) if w.k == (0, 0) => Ok("witness (0, 0)".into()),
            Some(w) => Err(format!("witness {:?}, expected (0, 0)", w.k)),
            None => Err("window (30, 10) passes; no witness".into()),
        }
    }));
    out.push(check(4, "figure5_f1", "beta2", || {
        let fig = build_figure5(2, rat(1, 4), &Figure5Options::default()).map_err(e)?;
        let c = fig.condition("beta2").ok_or("missing beta2")?;
        ensure(c.rhs == rat(742, 40765), "f(1) = 742/40765", format!("f(1) = {}", c.rhs))
    }));
    out.push(check(4, "figure5_g1", "condition2b", || {
        let fig = build_figure5(2, rat(1, 4), &Figure5Options::default()).map_err(e)?;
        let c = fig.condition("condition2b").ok_or("missing condition2b")?;
        ensure(c.rhs == rat(27, 5), "g(1) = 27/5", format!("g(1) = {}", c.rhs))
    }));

    out.push(check(5, "figure9_subnormal_1_3", "optimalsubnormal", || {
        let mu = figure9_subnormality(&rat(1, 3)).map_err(e)?;
        let g = build_figure9(rat(1, 3)).map_err(e)?;
        for k1 in 0..6 {
            for k2 in 0..6 {
                if mu.moment(k1, k2) != g.gamma2((k1, k2)).map_err(e)? {
                    return Err(format!("moment ({k1}, {k2}) differs"));
                }
            }
        }
        Ok("extension exists and reproduces the moments".into())
    }));
    out.push(check(5, "figure9_rejects_1_2", "optimalsubnormal", || match figure9_subnormality(&rat(1, 2)) {
        Err(ExtensionError::Reject(Condition::MarginalExceeds)) => Ok("rejected by (iii)".into()),
        other => Err(format!("got {other:?}")),
    }));
    out.push(check(5, "figure9_window", "optimalsubnormal", || {
        let r = build_figure9(rat(1, 3)).map_err(e)?.joint_hyponormal_window(20, 10).map_err(e)?;
        ensure(r.verdict, "window (20, 10) passes", format!("fails at {:?}", r.witness))
    }));

    out.push(check(6, "propagation_witness", "quadhypo3", || {
        let ws = WeightSeq::new(vec![rat(1, 4), rat(1, 4)], crate::shift1d::Tail::Constant { value: Rational::one() })
            .map_err(e)?;
        let audit = ws.propagation_audit(6, 10).map_err(e)?;
        let det = ws.hankel_matrix(2, 0).map_err(e)?.det();
        ensure(
            audit == (Audit::Witness { order: 2, base: 0 }) && det == rat(-9, 4096),
            "witness (order 2, base 0), det = -9/4096",
            format!("{audit:?}, det = {det}"),
        )
    }));

    out.push(check(7, "sfc_closed_forms", "numericalex1", || {
        for i in 1..=100i64 {
            // a² = 1/6 + i/300 runs over (1/6, 1/2]
            let a_sq = rat(1, 6) + rat(i, 300);
            let p = sfc::example_family(a_sq.clone(), Rational::one()).map_err(e)?;
            let h = sfc::h_threshold_sq(&p).map_err(e)?;
            let s = sfc::s_threshold_sq(&p).map_err(e)?;
            if h != closed_h(&a_sq) || s != closed_s(&a_sq) {
                return Err(format!("mismatch at a² = {a_sq}"));
            }
            if h <= s {
                return Err(format!("h ≤ s at a² = {a_sq}"));
            }
        }
        Ok("100 samples agree; h > s throughout".into())
    }));
    out.push(check(7, "sfc_endpoint", "numericalex1", || {
        let p = sfc::example_family(rat(1, 2), Rational::one()).map_err(e)?;
        let (h, s) = (sfc::h_threshold_sq(&p).map_err(e)?, sfc::s_threshold_sq(&p).map_err(e)?);
        ensure(h == rat(8, 9) && s == rat(2, 5), "h² = 8/9, s² = 2/5", format!("h² = {h}, s² = {s}"))
    }));
    out.push(check(7, "sfc_transitions", "flatclass", || {
        let p = sfc::example_family(rat(1, 2), Rational::one()).map_err(e)?;
        let eps = rat(1, 1_000_000_000);
        let at = |y: Rational| -> Result<Verdict, String> {
            Ok(sfc::classify(&p.with_y0_sq(y).map_err(e)?).map_err(e)?.verdict)
        };
        let got = [
            at(rat(2, 5))?,
            at(rat(2, 5) + &eps)?,
            at(rat(8, 9))?,
            at(rat(8, 9) + &eps)?,
        ];
        let want = [Verdict::Subnormal, Verdict::HyponormalNotSubnormal, Verdict::HyponormalNotSubnormal, Verdict::NotHyponormal];
        ensure(got == want, "verdict changes exactly at s² and h²", format!("{got:?}"))
    }));

    out.push(check(8, "sfc_cross_oracle", "flathypo, flatsub", || {
        let points = cross_oracle_points();
        let mut disagreements = Vec::new();
        for p in &points {
            let formula = sfc::classify(p).map_err(e)?.verdict;
            if independent_verdict(p)? != formula {
                disagreements.push(format!("a²={}, y0²={}", p.a_sq, p.y0_sq));
            }
        }
        ensure(
            disagreements.is_empty(),
            format!("{} points, no disagreements", points.len()),
            disagreements.join("; "),
        )
    }));

    out.push(check(9, "gamma2_path_independence", "commuting", || {
        let fig5 = build_figure5(2, rat(1, 4), &Figure5Options::default()).map_err(e)?.grid;
        let fig9 = build_figure9(rat(1, 3)).map_err(e)?;
        ensure(
            path_independent(&fig5, 12, 6)? && path_independent(&fig9, 12, 12)?,
            "both paths agree",
            "path dependence found",
        )
    }));
    out.push(check(9, "extremal_mass", "extremal", || {
        let p = sfc::example_family(rat(1, 4), Rational::one()).map_err(e)?;
        let ext = extremal(&p.mu_m().map_err(e)?).map_err(e)?;
        ensure(ext.total_mass() == Rational::one(), "mass 1", format!("mass {}", ext.total_mass()))
    }));

    out.push(check(10, "scan_shape", "Figure 10", || {
        let lo = rat(1, 6) + rat(1, 100);
        let rows = sfc::scan_region(&lo, &rat(1, 2), 50).map_err(e)?;
        let inc = rows.windows(2).all(|w| w[0].h_sq < w[1].h_sq && w[0].s_sq < w[1].s_sq);
        let gap = rows.iter().all(|r| r.gap.is_positive());
        ensure(rows.len() == 50 && inc && gap, "50 rows, both increasing, positive gap", "shape differs")
    }));

    out
}

/// Plain-text table, one row per check.
pub fn render_table(checks: &[Check]) -> String {
    let name_w = checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
    let label_w = checks.iter().map(|c| c.label.chars().count()).max().unwrap_or(5).max(5);
    let mut s = format!("{:<3} {:<name_w$} {:<label_w$} {:<6} detail\n", "#", "check", "label", "result");
    for c in checks {
        let label_pad = label_w - c.label.chars().count() + c.label.len();
        s.push_str(&format!(
            "{:<3} {:<name_w$} {:<label_pad$} {:<6} {}\n",
            c.criterion,
            c.name,
            c.label,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        ));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    s.push_str(&format!("{passed}/{} passed\n", checks.len()));
    s
}
