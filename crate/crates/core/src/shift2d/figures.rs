//! Constructors for the concrete grid families.

use num_traits::ToPrimitive;

use crate::exactnum::Rational;
use crate::measures::{backward_ext_2var, ExtensionError, Measure1D, Measure2D};
use crate::shift1d::{Tail, WeightSeq};

use super::{flat_row, Constraint, GridError, GridSpec, ShiftGrid2D};

/// `β(0,0)²` used when none is given.
pub const DEFAULT_FIGURE5_BETA0_SQ: (i64, i64) = (1, 512);

/// Recursive tail continuing `w0 < w1 < w2` as the weights of the
/// 2-atomic measure with moments `1, w0, w0w1, w0w1w2`.
pub fn stampfli_tail(w0: &Rational, w1: &Rational, w2: &Rational) -> Result<Tail, GridError> {
    if !(w0.is_positive() && w0 < w1 && w1 < w2) {
        return Err(GridError::Invalid("recursive completion needs 0 < w0 < w1 < w2".into()));
    }
    let phi0 = w0 * w1 * (w1 - w2) / (w1 - w0);
    let phi1 = w1 * (w2 - w0) / (w1 - w0);
    Ok(Tail::Recursive { phi0, phi1 })
}

fn completed_column(seeds: Vec<Rational>) -> Result<WeightSeq, GridError> {
    let n = seeds.len();
    if n < 3 {
        return Err(GridError::Invalid("column needs at least three seeds".into()));
    }
    let tail = stampfli_tail(&seeds[n - 3], &seeds[n - 2], &seeds[n - 1])?;
    Ok(WeightSeq::new(seeds, tail)?)
}

#[derive(Clone, Debug)]
pub struct Figure5Options {
    /// Overrides `β(0,0)²`.
    pub beta0_sq: Option<Rational>,
    /// Columns checked when searching for lower rows and their `β`.
    pub search_window: usize,
}

impl Default for Figure5Options {
    fn default() -> Self {
        Figure5Options { beta0_sq: None, search_window: 40 }
    }
}

/// A built Figure-5 grid together with the evaluated constraints.
#[derive(Clone, Debug)]
pub struct Figure5 {
    pub grid: ShiftGrid2D,
    /// `ℓ` of the Bergman-like rows, bottom row first.
    pub ells: Vec<u32>,
    /// Explicit `β(0,n)²` before the recursive completion.
    pub column_seeds: Vec<Rational>,
    pub conditions: Vec<Constraint>,
}

impl Figure5 {
    pub fn condition(&self, name: &str) -> Option<&Constraint> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn rows_for(ells: &[u32], alpha0_sq: &Rational) -> Result<Vec<WeightSeq>, GridError> {
    let mut rows: Vec<WeightSeq> = ells.iter().map(|&l| WeightSeq::bergman_like(l)).collect();
    rows.push(flat_row(alpha0_sq.clone())?);
    Ok(rows)
}

/// Smallest integer `r > q` with `x_k² z_k² ≥ 9 y_k⁴` for `k ≤ window` and in
/// the limit, where `x, y, z` are `B₊^(p)`, `B₊^(q)`, `B₊^(r)`.
pub fn min_row_ell(p: u32, q: u32, window: usize) -> u32 {
    let x = WeightSeq::bergman_like(p);
    let y = WeightSeq::bergman_like(q);
    let nine = Rational::from_int(9);
    let qr = Rational::from_int(q);
    let mut need = &nine * &qr * &qr / Rational::from_int(p);
    for k in 0..=window {
        let xk = x.weight_sq(k).expect("infinite");
        let yk = y.weight_sq(k).expect("infinite");
        let bound = &nine * yk.square() / xk + Rational::new(1, (k + 2) as i64);
        need = need.max(bound);
    }
    let floor = need.numer() / need.denom();
    let mut r = floor.to_u32().expect("r fits in u32");
    while Rational::from_int(r) < need || r <= q {
        r += 1;
    }
    r
}

/// Figure-5 grid: `k2` Bergman-like rows under rows `S_{α0}`, 0th column
/// seeded and completed recursively.
pub fn build_figure5(k2: usize, alpha0_sq: Rational, opts: &Figure5Options) -> Result<Figure5, GridError> {
    if k2 == 0 {
        return Err(GridError::Invalid("k2 must be at least 1".into()));
    }
    if !(alpha0_sq.is_positive() && alpha0_sq < Rational::one()) {
        return Err(GridError::Invalid(format!("alpha0_sq must lie in (0, 1), got {alpha0_sq}")));
    }
    let default_b0 = Rational::new(DEFAULT_FIGURE5_BETA0_SQ.0, DEFAULT_FIGURE5_BETA0_SQ.1);
    let beta1_sq = alpha0_sq.recip()?;
    let beta2_sq = Rational::from_int(16) * &beta1_sq;

    // top configuration: p = 3 just below the S_{α0} rows, q = 18 below it
    let mut ells: Vec<u32> = if k2 == 1 { vec![3] } else { vec![18, 3] };
    let mut seeds = vec![default_b0, beta1_sq.clone(), beta2_sq.clone()];
    let mut conditions = Vec::new();

    while ells.len() < k2 {
        let (p, q) = (ells[1], ells[0]);
        let r = min_row_ell(p, q, opts.search_window);
        conditions.push(Constraint::ge(
            format!("row_ell(row {})", k2 - ells.len() - 1),
            Rational::from_int(r),
            Rational::from_int(9 * u64::from(q) * u64::from(q)) / Rational::from_int(p),
        ));
        ells.insert(0, r);
        let above = seeds[0].clone();
        let qr = Rational::from_int(q);
        let rr = Rational::from_int(r);
        let two_r = Rational::from_int(2) * &rr - Rational::one();
        let case1 = &above * &two_r / (Rational::from_int(12) * (&rr - &qr).square() + &two_r);
        let chosen = if ells.len() == k2 && opts.beta0_sq.is_some() {
            opts.beta0_sq.clone().expect("checked")
        } else {
            search_lower_beta(&ells, &seeds, &alpha0_sq, &case1, opts.search_window)?
        };
        conditions.push(Constraint::le(format!("row_beta(row {})", k2 - ells.len()), chosen.clone(), case1));
        seeds.insert(0, chosen);
    }
    if ells.len() <= 2 {
        if let Some(b) = &opts.beta0_sq {
            seeds[0] = b.clone();
        }
    }

    let rows = rows_for(&ells, &alpha0_sq)?;
    let column = completed_column(seeds.clone())?;
    conditions.splice(0..0, named_constraints(k2, &rows, &seeds, &alpha0_sq)?);
    let spec = GridSpec::Figure5 { k2, alpha0_sq, beta0_sq: opts.beta0_sq.clone() };
    Ok(Figure5 {
        grid: ShiftGrid2D::with_generator_rows(spec, rows, column),
        ells,
        column_seeds: seeds,
        conditions,
    })
}

/// Largest `1/2^j` below the current bottom `β²` passing the Six-point Test
/// along the new bottom row.
fn search_lower_beta(
    ells: &[u32],
    seeds: &[Rational],
    alpha0_sq: &Rational,
    case1: &Rational,
    window: usize,
) -> Result<Rational, GridError> {
    let rows = rows_for(ells, alpha0_sq)?;
    for j in 1..=256u32 {
        let cand = Rational::pow2(j).recip()?;
        if cand >= seeds[0] || cand > *case1 {
            continue;
        }
        let mut col = vec![cand.clone()];
        col.extend(seeds.iter().cloned());
        let grid = ShiftGrid2D::with_generator_rows(
            GridSpec::Rows { rows: rows.clone(), column: completed_column(col.clone())? },
            rows.clone(),
            completed_column(col)?,
        );
        let mut ok = true;
        for n in 0..=window {
            if !grid.six_point((n, 0))?.psd {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(cand);
        }
    }
    Err(GridError::Invalid("no admissible β found for the lower row".into()))
}

/// Constraints of the `k2 = 1` and `k2 = 2` cases, evaluated on the top
/// Bergman-like rows.
fn named_constraints(
    k2: usize,
    rows: &[WeightSeq],
    seeds: &[Rational],
    alpha0_sq: &Rational,
) -> Result<Vec<Constraint>, GridError> {
    let one = Rational::one();
    let mut out = Vec::new();
    if k2 == 1 {
        let x = &rows[0];
        let (b0, b1) = (&seeds[0], &seeds[1]);
        let x0 = x.weight_sq(0)?;
        out.push(Constraint::le(
            "beta0eq2",
            Rational::from_int(6) * b0 * (alpha0_sq - &x0).square(),
            (b1 - b0) * &x0,
        ));
        let g = x.gamma(5)?;
        for m in 1..=4usize {
            let xm = x.weight_sq(m)?;
            let lhs = b1 * g.get(m) / (alpha0_sq * b0);
            let rhs = &one + Rational::from_int(((m + 2) * (m + 3)) as u64) * (&one - &xm).square() / xm;
            let name = if m == 1 { "beta0eq".to_string() } else { format!("beta0eq(m={m})") };
            out.push(Constraint::ge(name, lhs, rhs));
        }
        return Ok(out);
    }
    // rows k2-2 (y, ℓ = 18) and k2-1 (x, ℓ = 3); seeds aligned so that
    // b0, b1, b2 sit at the same heights as y, x and the first S_{α0} row
    let y = &rows[k2 - 2];
    let x = &rows[k2 - 1];
    let off = seeds.len() - 3;
    let (b0, b1, b2) = (&seeds[off], &seeds[off + 1], &seeds[off + 2]);
    let (x0, x1) = (x.weight_sq(0)?, x.weight_sq(1)?);
    let (y0, y1) = (y.weight_sq(0)?, y.weight_sq(1)?);
    let gap = (&x0 - &y0).square();

    // bound as displayed, with x1² - x0² in the lower corner
    let displayed = &y0 * (&y1 - &y0) * (&x1 - &x0) / &gap;
    out.push(Constraint::le("beta1", b0.clone(), displayed));
    // bound from the Six-point matrix at (0,0), lower corner β1² - β0²
    let exact = &y0 * (&y1 - &y0) * b1 / (&gap + &y0 * (&y1 - &y0));
    out.push(Constraint::le("six_point_00", b0.clone(), exact));

    let gx = x.gamma(6)?;
    let gy = y.gamma(6)?;
    for m in 1..=4usize {
        let (xm, ym, ym1) = (x.weight_sq(m)?, y.weight_sq(m)?, y.weight_sq(m + 1)?);
        let ratio = (&ym - &xm).square() / (&ym * (&ym1 - &ym));
        let f = b1 * alpha0_sq * gy.get(m) / gx.get(m).square() / (&one + ratio);
        let name = if m == 1 { "beta2".to_string() } else { format!("f({m})") };
        out.push(Constraint::le(name, b0.clone(), f));
    }

    out.push(Constraint::le(
        "condition1",
        (alpha0_sq - &x0).square(),
        &x0 * (&x1 - &x0) * (b2 - b1) / b1,
    ));

    for m in 1..=4usize {
        let (xm, xm1) = (x.weight_sq(m)?, x.weight_sq(m + 1)?);
        let g = alpha0_sq * b1 / gx.get(m) * (&one + (&one - &xm).square() / (&xm * (&xm1 - &xm)));
        let name = if m == 1 { "condition2b".to_string() } else { format!("g({m})") };
        out.push(Constraint::ge(name, b2.clone(), g));
    }
    Ok(out)
}

/// Rows `B₊^(r)`, `B₊^(q)`, `B₊^(p)` under rows `S_{α0}`.
pub fn build_lemofhypoflat(
    p: u32,
    q: u32,
    r: u32,
    alpha0_sq: Rational,
    beta_sq: Vec<Rational>,
) -> Result<ShiftGrid2D, GridError> {
    if !(1 <= p && p < q && q < r) {
        return Err(GridError::Invalid("need 1 <= p < q < r".into()));
    }
    if !alpha0_sq.is_positive() {
        return Err(GridError::Invalid("alpha0_sq must be positive".into()));
    }
    let rows = rows_for(&[r, q, p], &alpha0_sq)?;
    let column = completed_column(beta_sq.clone())?;
    let spec = GridSpec::LemOfHypoFlat { p, q, r, alpha0_sq, beta_sq };
    Ok(ShiftGrid2D::with_generator_rows(spec, rows, column))
}

/// Figure-9 grid: row 0 is the alpha family, rows above are `S_{√(1/2)}`,
/// `β(0,0)² = y²` and `β(0,n)² = (n+1)/(n+2)` above.
pub fn build_figure9(y_sq: Rational) -> Result<ShiftGrid2D, GridError> {
    if !y_sq.is_positive() {
        return Err(GridError::Invalid("y_sq must be positive".into()));
    }
    let rows = vec![WeightSeq::alpha_family(), flat_row(Rational::new(1, 2))?];
    let column = WeightSeq::new(vec![y_sq.clone()], Tail::BergmanLike { value: 1 })?;
    Ok(ShiftGrid2D::with_generator_rows(GridSpec::Figure9 { y_sq }, rows, column))
}

/// `(μ_M, ξ)` for the Figure-9 grid: `(δ₀+δ₁)(s) × t dt` and
/// `(1/3)(δ₀+δ_{1/2}+δ₁)`.
pub fn figure9_berger_inputs() -> (Measure2D, Measure1D) {
    let zero = Rational::zero();
    let one = Rational::one();
    let s = Measure1D::dirac(zero.clone()).add(&Measure1D::dirac(one.clone()));
    let t = Measure1D::density(crate::exactnum::Polynomial::monomial(one.clone(), 1), zero.clone(), one.clone())
        .expect("t dt is nonnegative");
    let xi = Measure1D::dirac(zero)
        .add(&Measure1D::dirac(Rational::new(1, 2)))
        .add(&Measure1D::dirac(one))
        .scale(&Rational::new(1, 3));
    (Measure2D::product(s, t), xi)
}

/// Berger measure of the Figure-9 grid, if it is subnormal.
pub fn figure9_subnormality(y_sq: &Rational) -> Result<Measure2D, ExtensionError> {
    let (mu_m, xi) = figure9_berger_inputs();
    backward_ext_2var(&mu_m, &xi, y_sq)
}

/// Row 0 given, every other `α` equal to 1, `β(0,n) = 1` for `n ≥ 1`.
pub fn build_totallyflat(x_row: WeightSeq, y_sq: Rational) -> Result<ShiftGrid2D, GridError> {
    if !y_sq.is_positive() {
        return Err(GridError::Invalid("y_sq must be positive".into()));
    }
    let column = flat_row(y_sq.clone())?;
    let spec = GridSpec::TotallyFlat { x_row: x_row.clone(), y_sq };
    Ok(ShiftGrid2D::with_generator_symflat(spec, x_row, column, Rational::one()))
}

/// Symmetrically flat grid with row-0 measure `xi`, column measure `eta`,
/// `α(0,1)² = a_sq` and `β(0,0)² = y0_sq` (default `∫ t dη`).
pub fn build_sfc_grid(
    xi: Measure1D,
    eta: Measure1D,
    a_sq: Rational,
    y0_sq: Option<Rational>,
) -> Result<ShiftGrid2D, GridError> {
    if !a_sq.is_positive() {
        return Err(GridError::Invalid("a_sq must be positive".into()));
    }
    let row0 = WeightSeq::from_berger(xi.clone())?;
    let y0 = y0_sq.clone().unwrap_or_else(|| eta.moment(1));
    if !y0.is_positive() {
        return Err(GridError::Invalid("y0_sq must be positive".into()));
    }
    let column = WeightSeq::new(vec![y0], Tail::Berger { measure: eta.clone() })?;
    let spec = GridSpec::Sfc { xi, eta, a_sq: a_sq.clone(), y0_sq };
    Ok(ShiftGrid2D::with_generator_symflat(spec, row0, column, a_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::measures::{Condition, ExtensionError};

    #[test]
    fn figure9_weights_and_subnormality() {
        let g = build_figure9(rat(1, 3)).unwrap();
        assert_eq!(g.check_commuting(20, 20).unwrap(), None);
        assert_eq!(g.gamma2((1, 1)).unwrap(), rat(1, 2) * rat(1, 3));
        assert_eq!(g.beta_sq((0, 1)).unwrap(), rat(2, 3));
        assert_eq!(g.alpha_sq((0, 1)).unwrap(), rat(1, 2));
        let sp = g.six_point((0, 0)).unwrap();
        assert_eq!((sp.a1.clone(), sp.a2.clone(), sp.p.clone(), sp.q.clone()), (rat(1, 3), rat(1, 3), rat(1, 6), rat(1, 6)));
        assert!(sp.psd);
        let mu = figure9_subnormality(&rat(1, 3)).unwrap();
        for k1 in 0..6 {
            for k2 in 0..6 {
                assert_eq!(mu.moment(k1, k2), g.gamma2((k1, k2)).unwrap(), "moment ({k1},{k2})");
            }
        }
        assert_eq!(
            figure9_subnormality(&rat(1, 2)),
            Err(ExtensionError::Reject(Condition::MarginalExceeds))
        );
        let f = g.flatness(6, 6).unwrap();
        assert!(f.horizontal && !f.vertical);
    }

    #[test]
    fn figure5_constants() {
        let f = build_figure5(2, rat(1, 4), &Figure5Options::default()).unwrap();
        assert_eq!(f.condition("beta1").unwrap().rhs, rat(7, 3240));
        assert_eq!(f.condition("beta2").unwrap().rhs, rat(742, 40765));
        assert_eq!(f.condition("condition2b").unwrap().rhs, rat(27, 5));
        assert_eq!(f.condition("condition1").unwrap().rhs, rat(25, 4));
        assert_eq!(f.condition("six_point_00").unwrap().rhs, rat(28, 547));
        assert_eq!(f.grid.check_commuting(12, 6).unwrap(), None);
        assert_eq!(f.column_seeds, vec![rat(1, 512), rat(4, 1), rat(64, 1)]);
    }

    #[test]
    fn stampfli_completion_matches_two_atomic_moments() {
        let col = completed_column(vec![rat(1, 4), rat(1, 2), rat(2, 3)]).unwrap();
        let g = col.gamma(8).unwrap();
        let (gs, w) = (g.as_slice(), col.weights_sq(8).unwrap());
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        let d = &gs[2] - gs[1].square();
        let phi0 = (gs[2].square() - &gs[1] * &gs[3]) / &d;
        let phi1 = (&gs[3] - &gs[1] * &gs[2]) / &d;
        for n in 0..6 {
            assert_eq!(gs[n + 2], &phi0 * &gs[n] + &phi1 * &gs[n + 1]);
        }
    }

    #[test]
    fn row_ell_for_the_first_step() {
        let r = min_row_ell(3, 18, 40);
        assert!(r >= 1103);
        let (x, y, z) = (WeightSeq::bergman_like(3), WeightSeq::bergman_like(18), WeightSeq::bergman_like(r));
        for k in 0..=40 {
            let (xk, yk, zk) = (x.weight_sq(k).unwrap(), y.weight_sq(k).unwrap(), z.weight_sq(k).unwrap());
            assert!(xk * zk >= rat(9, 1) * yk.square());
        }
    }

    #[test]
    fn totally_flat_rows() {
        // x0 = x1 = a, α(0,1) = 1: each coordinate is hyponormal, the pair is not
        let a_sq = rat(1, 2);
        let x = WeightSeq::new(vec![a_sq.clone(), a_sq.clone()], Tail::Constant { value: rat(1, 1) }).unwrap();
        let g = build_totallyflat(x, rat(1, 4)).unwrap();
        assert_eq!(g.check_commuting(10, 10).unwrap(), None);
        assert!(!g.six_point((0, 0)).unwrap().psd);
        let rep = g.propagation_consequences(6, 6).unwrap();
        assert!(rep.violations().any(|e| e.k == (0, 0)));
        assert!(rep.consistent());

        let trivial = build_totallyflat(WeightSeq::unilateral(), rat(1, 1)).unwrap();
        assert!(trivial.joint_hyponormal_window(10, 10).unwrap().verdict);
    }
}
