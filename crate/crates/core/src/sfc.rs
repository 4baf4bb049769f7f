//! Hyponormality and subnormality thresholds for symmetrically flat
//! contractive 2-variable shifts.
//!
//! Such a shift is fixed by the Berger measure `ξ` of row 0, the Berger
//! measure `η` of column 0, the weight `a = α(0,1)` and `y0 = β(0,0)`. It is
//! hyponormal iff `y0² ≤ h²` and subnormal iff `y0² ≤ s²`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::measures::{
    backward_ext_2var, restriction_measure, ExtensionError, Measure1D, Measure2D, MeasureError,
    ProductTerm,
};
use crate::shift2d::{build_sfc_grid, Constraint, GridError, ShiftGrid2D};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SfcError {
    #[error("{0} must be a probability measure on [0, 1]")]
    BadMeasure(&'static str),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("h is undefined: x1² = x0² = a²")]
    Degenerate,
    #[error("‖1/t‖ over η1 is infinite")]
    InfiniteNorm,
    #[error("‖1/t‖ = {norm} does not exceed a² = {a_sq}")]
    NormNotAboveA { norm: Rational, a_sq: Rational },
    #[error("a² = {a_sq} lies outside the window ({lo}, {hi}]")]
    OutOfWindow { a_sq: Rational, lo: Rational, hi: Rational },
    #[error("r² = {0} must lie in (0, 1]")]
    BadRSq(Rational),
    #[error("need at least 2 steps, got {0}")]
    BadSteps(usize),
    #[error("h² = {h_sq} is not above s² = {s_sq} at a² = {a_sq}")]
    GapNotPositive { a_sq: Rational, h_sq: Rational, s_sq: Rational },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Input data, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfcInput {
    pub xi: Measure1D,
    pub eta: Measure1D,
    pub a_sq: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y0_sq: Option<Rational>,
}

/// Parameters with every derived quantity the thresholds use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SfcParams {
    pub xi: Measure1D,
    pub eta: Measure1D,
    pub a_sq: Rational,
    pub y0_sq: Rational,
    /// `ξ({0})`, `ξ({1})`
    pub p: Rational,
    pub q: Rational,
    /// `η({0})`, `η({1})`; carried, never used by the thresholds
    pub u: Rational,
    pub v: Rational,
    pub x0_sq: Rational,
    pub x1_sq: Rational,
    pub eta1: Measure1D,
    pub y1_sq: Rational,
    pub inv_t_norm: Option<Rational>,
}

fn check_measure(m: &Measure1D, name: &'static str) -> Result<(), SfcError> {
    if m.is_probability() && m.supported_in(&Rational::zero(), &Rational::one()) {
        Ok(())
    } else {
        Err(SfcError::BadMeasure(name))
    }
}

impl SfcParams {
    /// `y0_sq` defaults to `∫ t dη`, the first squared weight of the shift
    /// with Berger measure `η`.
    pub fn new(xi: Measure1D, eta: Measure1D, a_sq: Rational, y0_sq: Option<Rational>) -> Result<Self, SfcError> {
        check_measure(&xi, "xi")?;
        check_measure(&eta, "eta")?;
        if !a_sq.is_positive() {
            return Err(SfcError::NonPositive("a_sq"));
        }
        let (zero, one) = (Rational::zero(), Rational::one());
        let x0_sq = xi.moment(1);
        if !x0_sq.is_positive() {
            return Err(SfcError::BadMeasure("xi"));
        }
        let x1_sq = xi.moment(2) / &x0_sq;
        let eta1 = restriction_measure(&eta, 1).map_err(|_| SfcError::BadMeasure("eta"))?;
        let y0_sq = y0_sq.unwrap_or_else(|| eta.moment(1));
        if !y0_sq.is_positive() {
            return Err(SfcError::NonPositive("y0_sq"));
        }
        let y1_sq = eta1.moment(1);
        let inv_t_norm = eta1.inv_t_norm()?.finite();
        Ok(SfcParams {
            p: xi.atom_mass(&zero),
            q: xi.atom_mass(&one),
            u: eta.atom_mass(&zero),
            v: eta.atom_mass(&one),
            xi,
            eta,
            a_sq,
            y0_sq,
            x0_sq,
            x1_sq,
            eta1,
            y1_sq,
            inv_t_norm,
        })
    }

    pub fn from_input(input: SfcInput) -> Result<Self, SfcError> {
        SfcParams::new(input.xi, input.eta, input.a_sq, input.y0_sq)
    }

    pub fn to_input(&self) -> SfcInput {
        SfcInput {
            xi: self.xi.clone(),
            eta: self.eta.clone(),
            a_sq: self.a_sq.clone(),
            y0_sq: Some(self.y0_sq.clone()),
        }
    }

    pub fn with_y0_sq(&self, y0_sq: Rational) -> Result<Self, SfcError> {
        SfcParams::new(self.xi.clone(), self.eta.clone(), self.a_sq.clone(), Some(y0_sq))
    }

    /// Conditions for both coordinates to be subnormal contractions, which
    /// the thresholds presuppose.
    pub fn membership(&self) -> Vec<Constraint> {
        let eta1_top = self.eta1.atom_mass(&Rational::one());
        let mut out = vec![
            // rows n ≥ 1 are S_b with b² = a²/γ_{n-1}(η1) → a²/η1({1})
            Constraint::le("rows_contractive", self.a_sq.clone(), eta1_top),
            // columns k ≥ 1 are S_b with b² = a² y0²/γ_k(ξ) → a² y0²/q
            Constraint::le("columns_contractive", &self.a_sq * &self.y0_sq, self.q.clone()),
        ];
        match &self.inv_t_norm {
            Some(n) => out.push(Constraint::le("column0_subnormal", &self.y0_sq * n, Rational::one())),
            None => out.push(Constraint::le("column0_subnormal", Rational::one(), Rational::zero())),
        }
        out
    }

    pub fn in_class(&self) -> bool {
        self.membership().iter().all(|c| c.holds)
    }

    pub fn grid(&self) -> Result<ShiftGrid2D, SfcError> {
        Ok(build_sfc_grid(
            self.xi.clone(),
            self.eta.clone(),
            self.a_sq.clone(),
            Some(self.y0_sq.clone()),
        )?)
    }

    /// Berger measure of the shift restricted to `k2 ≥ 1`:
    /// `a² δ₁×δ₁ + δ₀×(η1 − a² δ₁)`.
    pub fn mu_m(&self) -> Result<Measure2D, SfcError> {
        let one = Rational::one();
        let rest = self.eta1.checked_sub(&Measure1D::atom(one.clone(), self.a_sq.clone()))?;
        Ok(Measure2D::from_terms(vec![
            ProductTerm {
                coeff: self.a_sq.clone(),
                s_part: Measure1D::dirac(one.clone()),
                t_part: Measure1D::dirac(one),
            },
            ProductTerm { coeff: Rational::one(), s_part: Measure1D::dirac(Rational::zero()), t_part: rest },
        ]))
    }

    /// Berger measure of the whole shift, by backward extension.
    pub fn berger_measure(&self) -> Result<Measure2D, SfcSubnormality> {
        let mu_m = self.mu_m().map_err(SfcSubnormality::Setup)?;
        backward_ext_2var(&mu_m, &self.xi, &self.y0_sq).map_err(SfcSubnormality::Extension)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SfcSubnormality {
    #[error("cannot set up the restricted measure: {0}")]
    Setup(SfcError),
    #[error(transparent)]
    Extension(ExtensionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NotHyponormal,
    HyponormalNotSubnormal,
    Subnormal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub h_sq: Rational,
    pub s_sq: Rational,
}

/// `h² = x0² y1² (x1² − x0²) / (x0² (x1² − x0²) + (a² − x0²)²)`
pub fn h_threshold_sq(p: &SfcParams) -> Result<Rational, SfcError> {
    let dx = &p.x1_sq - &p.x0_sq;
    let den = &p.x0_sq * &dx + (&p.a_sq - &p.x0_sq).square();
    if den.is_zero() {
        return Err(SfcError::Degenerate);
    }
    Ok(&p.x0_sq * &p.y1_sq * dx / den)
}

/// `s² = min(q/a², p/(‖1/t‖ − a²))`
pub fn s_threshold_sq(p: &SfcParams) -> Result<Rational, SfcError> {
    let n = p.inv_t_norm.clone().ok_or(SfcError::InfiniteNorm)?;
    if n <= p.a_sq {
        return Err(SfcError::NormNotAboveA { norm: n, a_sq: p.a_sq.clone() });
    }
    let first = &p.q / &p.a_sq;
    let second = &p.p / (n - &p.a_sq);
    Ok(first.min(second))
}

pub fn classify(p: &SfcParams) -> Result<Classification, SfcError> {
    let h_sq = h_threshold_sq(p)?;
    let s_sq = s_threshold_sq(p)?;
    let verdict = if p.y0_sq <= s_sq {
        Verdict::Subnormal
    } else if p.y0_sq <= h_sq {
        Verdict::HyponormalNotSubnormal
    } else {
        Verdict::NotHyponormal
    };
    Ok(Classification { verdict, h_sq, s_sq })
}

/// Open lower end of the admissible `a²` window for the example family.
pub fn example_window() -> (Rational, Rational) {
    (Rational::new(1, 6), Rational::new(1, 2))
}

/// `ξ = (1/3)(δ₀ + δ_{1/2} + δ₁)`
pub fn example_xi() -> Measure1D {
    Measure1D::dirac(Rational::zero())
        .add(&Measure1D::dirac(Rational::new(1, 2)))
        .add(&Measure1D::dirac(Rational::one()))
        .scale(&Rational::new(1, 3))
}

/// `η = (1 − r²)δ₀ + (r²/2) dt + (r²/2) δ₁`
pub fn example_eta(r_sq: &Rational) -> Measure1D {
    let (zero, one) = (Rational::zero(), Rational::one());
    let half = r_sq / Rational::from_int(2);
    Measure1D::atom(zero.clone(), &one - r_sq)
        .add(&Measure1D::lebesgue(zero, one.clone()).scale(&half))
        .add(&Measure1D::atom(one, half))
}

/// The example family with `y0² = (3/4) r²`.
pub fn example_family(a_sq: Rational, r_sq: Rational) -> Result<SfcParams, SfcError> {
    let (lo, hi) = example_window();
    if !(a_sq > lo && a_sq <= hi) {
        return Err(SfcError::OutOfWindow { a_sq, lo, hi });
    }
    if !(r_sq.is_positive() && r_sq <= Rational::one()) {
        return Err(SfcError::BadRSq(r_sq));
    }
    let y0_sq = Rational::new(3, 4) * &r_sq;
    SfcParams::new(example_xi(), example_eta(&r_sq), a_sq, Some(y0_sq))
}

/// `P = x0² x1² + a² − a² x0² − x0²`
pub fn proflat1_p(p: &SfcParams) -> Rational {
    &p.x0_sq * &p.x1_sq + &p.a_sq - &p.a_sq * &p.x0_sq - &p.x0_sq
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub a_sq: Rational,
    pub h_sq: Rational,
    pub s_sq: Rational,
    pub gap: Rational,
}

/// Both thresholds of the example family at `steps` equally spaced values
/// of `a²` from `lo` to `hi` inclusive.
pub fn scan_region(lo: &Rational, hi: &Rational, steps: usize) -> Result<Vec<ScanRow>, SfcError> {
    if steps < 2 {
        return Err(SfcError::BadSteps(steps));
    }
    let (wlo, whi) = example_window();
    for a in [lo, hi] {
        if !(*a > wlo && *a <= whi) {
            return Err(SfcError::OutOfWindow { a_sq: a.clone(), lo: wlo, hi: whi });
        }
    }
    let step = (hi - lo) / Rational::from_int((steps - 1) as u64);
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let a_sq = lo + &step * Rational::from_int(i as u64);
        let params = example_family(a_sq.clone(), Rational::one())?;
        let h_sq = h_threshold_sq(&params)?;
        let s_sq = s_threshold_sq(&params)?;
        if h_sq <= s_sq {
            return Err(SfcError::GapNotPositive { a_sq, h_sq, s_sq });
        }
        let gap = &h_sq - &s_sq;
        rows.push(ScanRow { a_sq, h_sq, s_sq, gap });
    }
    Ok(rows)
}

/// Writes the scan as CSV with decimal columns at `precision` significant
/// digits.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], precision: usize, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["a_sq", "h_sq", "s_sq", "h_dec", "s_dec", "gap_dec"])?;
    for r in rows {
        w.write_record([
            r.a_sq.to_string(),
            r.h_sq.to_string(),
            r.s_sq.to_string(),
            r.h_sq.to_decimal(precision),
            r.s_sq.to_decimal(precision),
            r.gap.to_decimal(precision),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Checks `∫ s dξ ≥ ξ({1})` and `∫ (1−s) dξ ≥ ξ({0})`, both strict exactly
/// when `ξ({0}) + ξ({1}) < 1`.
pub fn lempq_check(xi: &Measure1D) -> Result<bool, SfcError> {
    check_measure(xi, "xi")?;
    let (zero, one) = (Rational::zero(), Rational::one());
    let (p, q) = (xi.atom_mass(&zero), xi.atom_mass(&one));
    let m1 = xi.moment(1);
    let rest = &one - &m1;
    let weak = m1 >= q && rest >= p;
    let strict = m1 > q && rest > p;
    Ok(weak && strict == (p + q < one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn example_derived_values() {
        let p = example_family(rat(1, 2), rat(1, 1)).unwrap();
        assert_eq!(p.x0_sq, rat(1, 2));
        assert_eq!(p.x1_sq, rat(5, 6));
        assert_eq!(p.y1_sq, rat(8, 9));
        assert_eq!(p.inv_t_norm, Some(rat(4, 3)));
        assert_eq!((p.p.clone(), p.q.clone()), (rat(1, 3), rat(1, 3)));
        let eta1 = Measure1D::density(crate::exactnum::Polynomial::monomial(rat(2, 3), 1), rat(0, 1), rat(1, 1))
            .unwrap()
            .add(&Measure1D::atom(rat(1, 1), rat(2, 3)));
        assert_eq!(p.eta1, eta1);
    }

    #[test]
    fn thresholds() {
        let p = example_family(rat(1, 2), rat(1, 1)).unwrap();
        assert_eq!(h_threshold_sq(&p).unwrap(), rat(8, 9));
        assert_eq!(s_threshold_sq(&p).unwrap(), rat(2, 5));
        let p = example_family(rat(1, 6) + rat(1, 1000), rat(1, 1)).unwrap();
        assert!(h_threshold_sq(&p).unwrap() > s_threshold_sq(&p).unwrap());
        assert!(example_family(rat(1, 6), rat(1, 1)).is_err());
    }

    #[test]
    fn h_equals_y1_when_a_equals_x0() {
        let p = SfcParams::new(example_xi(), example_eta(&rat(1, 2)), rat(1, 2), None).unwrap();
        assert_eq!(h_threshold_sq(&p).unwrap(), p.y1_sq);
    }

    #[test]
    fn classification() {
        let base = example_family(rat(1, 2), rat(16, 25)).unwrap();
        assert_eq!(base.y0_sq, rat(12, 25));
        assert_eq!(classify(&base).unwrap().verdict, Verdict::HyponormalNotSubnormal);
        assert_eq!(classify(&base.with_y0_sq(rat(1, 4)).unwrap()).unwrap().verdict, Verdict::Subnormal);
        assert_eq!(classify(&base.with_y0_sq(rat(9, 10)).unwrap()).unwrap().verdict, Verdict::NotHyponormal);
    }

    #[test]
    fn degenerate_h() {
        let xi = Measure1D::dirac(rat(1, 2));
        let p = SfcParams::new(xi, example_eta(&rat(1, 1)), rat(1, 2), None).unwrap();
        assert_eq!(h_threshold_sq(&p), Err(SfcError::Degenerate));
        let p = SfcParams::new(Measure1D::dirac(rat(1, 2)), example_eta(&rat(1, 1)), rat(1, 3), None).unwrap();
        assert_eq!(h_threshold_sq(&p).unwrap(), rat(0, 1));
    }

    #[test]
    fn scan_rows() {
        let rows = scan_region(&rat(1, 3), &rat(1, 2), 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[1].h_sq.clone(), rows[1].s_sq.clone()), (rat(8, 9), rat(2, 5)));
        assert!(rows[0].h_sq < rows[1].h_sq && rows[0].s_sq < rows[1].s_sq);
        let mut buf = Vec::new();
        write_scan_csv(&rows, 12, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("a_sq,h_sq,s_sq,h_dec,s_dec,gap_dec\n"));
        assert!(text.contains("1/2,8/9,2/5,0.888888888889,0.400000000000,0.488888888889"));
    }

    #[test]
    fn lempq() {
        assert!(lempq_check(&example_xi()).unwrap());
        let ends = Measure1D::atom(rat(0, 1), rat(1, 2)).add(&Measure1D::atom(rat(1, 1), rat(1, 2)));
        assert!(lempq_check(&ends).unwrap());
        assert!(lempq_check(&Measure1D::lebesgue(rat(0, 1), rat(1, 1))).unwrap());
    }

    #[test]
    fn subnormal_measure_reproduces_grid_moments() {
        let p = example_family(rat(1, 4), rat(1, 3)).unwrap();
        let mu = p.berger_measure().unwrap();
        let g = p.grid().unwrap();
        for k1 in 0..5 {
            for k2 in 0..5 {
                assert_eq!(mu.moment(k1, k2), g.gamma2((k1, k2)).unwrap());
            }
        }
    }
}
