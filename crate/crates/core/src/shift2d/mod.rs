//! Commuting 2-variable weighted shifts given by squared-weight generators.
//!
//! Indices are `(k1, k2)`: `k1` moves right (`T1`, weights `α`), `k2` moves
//! up (`T2`, weights `β`). Every model evaluates `α²` and `β²` at any index;
//! windows are only materialized by the checks.

mod figures;

use serde::{Deserialize, Serialize};

use crate::exactnum::{psd2_radical_cross, NumError, Rational};
use crate::measures::{Measure1D, MeasureError};
use crate::shift1d::{ShiftError, Tail, WeightSeq};

pub use figures::{
    build_figure5, build_figure9, build_lemofhypoflat, build_sfc_grid, build_totallyflat, figure9_berger_inputs,
    figure9_subnormality, min_row_ell, stampfli_tail, Figure5, Figure5Options, DEFAULT_FIGURE5_BETA0_SQ,
};

pub type Index = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("index ({}, {}) lies outside the explicit window", .0.0, .0.1)]
    OutsideWindow(Index),
    #[error("invalid grid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Serializable description of a grid, tagged by `"model"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum GridSpec {
    /// `alpha_sq[k2][k1]`, `beta_sq[k2][k1]`; rows are listed bottom-up.
    Explicit {
        alpha_sq: Vec<Vec<Rational>>,
        beta_sq: Vec<Vec<Rational>>,
    },
    /// `α(k1,k2) = x_{k1}`, `β(k1,k2) = y_{k2}`.
    Tensor { x: WeightSeq, y: WeightSeq },
    /// Row `k2` is `rows[min(k2, last)]`; `column` is the 0th column; the
    /// remaining `β` follow from commutativity.
    Rows { rows: Vec<WeightSeq>, column: WeightSeq },
    Figure5 {
        k2: usize,
        alpha0_sq: Rational,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta0_sq: Option<Rational>,
    },
    Figure9 { y_sq: Rational },
    TotallyFlat { x_row: WeightSeq, y_sq: Rational },
    /// Symmetrically flat contractive shift: 0th row with Berger measure
    /// `xi`, 0th column with Berger measure `eta` (first weight replaced by
    /// `y0_sq` when given), `α(0,1)² = a_sq`.
    Sfc {
        xi: Measure1D,
        eta: Measure1D,
        a_sq: Rational,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y0_sq: Option<Rational>,
    },
    /// Three Bergman-like rows `r` (bottom), `q`, `p` below rows `S_{α0}`,
    /// with the 0th column seeded by `beta_sq` and completed recursively.
    LemOfHypoFlat {
        p: u32,
        q: u32,
        r: u32,
        alpha0_sq: Rational,
        beta_sq: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Generator {
    Explicit {
        alpha_sq: Vec<Vec<Rational>>,
        beta_sq: Vec<Vec<Rational>>,
    },
    Tensor {
        x: WeightSeq,
        y: WeightSeq,
    },
    Rows {
        rows: Vec<WeightSeq>,
        column: WeightSeq,
    },
    /// interior weights 1; `α(0,n)² = a² y0² / γ_n(column)` for `n ≥ 1`
    /// and `β(k,0)² = a² y0² / γ_k(row0)` for `k ≥ 1`
    SymFlat {
        row0: WeightSeq,
        column: WeightSeq,
        a_sq: Rational,
    },
}

/// A commuting 2-variable weighted shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec", into = "GridSpec")]
pub struct ShiftGrid2D {
    spec: GridSpec,
    generator: Generator,
}

impl TryFrom<GridSpec> for ShiftGrid2D {
    type Error = GridError;

    fn try_from(spec: GridSpec) -> Result<Self, Self::Error> {
        ShiftGrid2D::from_spec(spec)
    }
}

impl From<ShiftGrid2D> for GridSpec {
    fn from(g: ShiftGrid2D) -> Self {
        g.spec
    }
}

fn product_ratio(num: &WeightSeq, den: &WeightSeq, k: usize) -> Result<Rational, ShiftError> {
    let a = num.weights_sq(k)?;
    let b = den.weights_sq(k)?;
    Ok(a.iter().zip(&b).map(|(x, y)| x / y).product())
}

impl ShiftGrid2D {
    pub fn from_spec(spec: GridSpec) -> Result<Self, GridError> {
        let generator = match &spec {
            GridSpec::Explicit { alpha_sq, beta_sq } => {
                let positive = alpha_sq.iter().chain(beta_sq).flatten().all(Rational::is_positive);
                if !positive {
                    return Err(GridError::Invalid("squared weights must be positive".into()));
                }
                Generator::Explicit { alpha_sq: alpha_sq.clone(), beta_sq: beta_sq.clone() }
            }
            GridSpec::Tensor { x, y } => Generator::Tensor { x: x.clone(), y: y.clone() },
            GridSpec::Rows { rows, column } => {
                if rows.is_empty() {
                    return Err(GridError::Invalid("at least one row is required".into()));
                }
                Generator::Rows { rows: rows.clone(), column: column.clone() }
            }
            GridSpec::Figure5 { k2, alpha0_sq, beta0_sq } => {
                let opts = Figure5Options { beta0_sq: beta0_sq.clone(), ..Figure5Options::default() };
                return Ok(build_figure5(*k2, alpha0_sq.clone(), &opts)?.grid);
            }
            GridSpec::Figure9 { y_sq } => return build_figure9(y_sq.clone()),
            GridSpec::TotallyFlat { x_row, y_sq } => return build_totallyflat(x_row.clone(), y_sq.clone()),
            GridSpec::Sfc { xi, eta, a_sq, y0_sq } => {
                return build_sfc_grid(xi.clone(), eta.clone(), a_sq.clone(), y0_sq.clone())
            }
            GridSpec::LemOfHypoFlat { p, q, r, alpha0_sq, beta_sq } => {
                return build_lemofhypoflat(*p, *q, *r, alpha0_sq.clone(), beta_sq.clone())
            }
        };
        Ok(ShiftGrid2D { spec, generator })
    }

    pub(crate) fn with_generator_rows(spec: GridSpec, rows: Vec<WeightSeq>, column: WeightSeq) -> Self {
        ShiftGrid2D { spec, generator: Generator::Rows { rows, column } }
    }

    pub(crate) fn with_generator_symflat(spec: GridSpec, row0: WeightSeq, column: WeightSeq, a_sq: Rational) -> Self {
        ShiftGrid2D { spec, generator: Generator::SymFlat { row0, column, a_sq } }
    }

    pub fn tensor(x: WeightSeq, y: WeightSeq) -> Self {
        ShiftGrid2D::from_spec(GridSpec::Tensor { x, y }).expect("tensor grids are always valid")
    }

    pub fn explicit(alpha_sq: Vec<Vec<Rational>>, beta_sq: Vec<Vec<Rational>>) -> Result<Self, GridError> {
        ShiftGrid2D::from_spec(GridSpec::Explicit { alpha_sq, beta_sq })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn alpha_sq(&self, k: Index) -> Result<Rational, GridError> {
        let (k1, k2) = k;
        match &self.generator {
            Generator::Explicit { alpha_sq, .. } => alpha_sq
                .get(k2)
                .and_then(|row| row.get(k1))
                .cloned()
                .ok_or(GridError::OutsideWindow(k)),
            Generator::Tensor { x, .. } => Ok(x.weight_sq(k1)?),
            Generator::Rows { rows, .. } => Ok(rows[k2.min(rows.len() - 1)].weight_sq(k1)?),
            Generator::SymFlat { row0, column, a_sq } => {
                if k2 == 0 {
                    Ok(row0.weight_sq(k1)?)
                } else if k1 > 0 {
                    Ok(Rational::one())
                } else {
                    let g = column.gamma(k2)?;
                    Ok(a_sq * g.get(1) / g.get(k2))
                }
            }
        }
    }

    pub fn beta_sq(&self, k: Index) -> Result<Rational, GridError> {
        let (k1, k2) = k;
        match &self.generator {
            Generator::Explicit { beta_sq, .. } => beta_sq
                .get(k2)
                .and_then(|row| row.get(k1))
                .cloned()
                .ok_or(GridError::OutsideWindow(k)),
            Generator::Tensor { y, .. } => Ok(y.weight_sq(k2)?),
            Generator::Rows { rows, column } => {
                let last = rows.len() - 1;
                let (lower, upper) = (&rows[k2.min(last)], &rows[(k2 + 1).min(last)]);
                let b0 = column.weight_sq(k2)?;
                if k1 == 0 || lower == upper {
                    return Ok(b0);
                }
                Ok(b0 * product_ratio(upper, lower, k1)?)
            }
            Generator::SymFlat { row0, column, a_sq } => {
                if k1 == 0 {
                    Ok(column.weight_sq(k2)?)
                } else if k2 > 0 {
                    Ok(Rational::one())
                } else {
                    let y0 = column.weight_sq(0)?;
                    Ok(a_sq * y0 / row0.gamma(k1)?.get(k1))
                }
            }
        }
    }

    /// First index in `[0,M]×[0,N]` (row-major) where
    /// `β²(k+ε1)·α²(k) ≠ α²(k+ε2)·β²(k)`.
    pub fn check_commuting(&self, m: usize, n: usize) -> Result<Option<Index>, GridError> {
        for k2 in 0..=n {
            for k1 in 0..=m {
                let lhs = self.beta_sq((k1 + 1, k2))? * self.alpha_sq((k1, k2))?;
                let rhs = self.alpha_sq((k1, k2 + 1))? * self.beta_sq((k1, k2))?;
                if lhs != rhs {
                    return Ok(Some((k1, k2)));
                }
            }
        }
        Ok(None)
    }

    /// `γ_k` along the path right along row 0, then up.
    pub fn gamma2(&self, k: Index) -> Result<Rational, GridError> {
        let (k1, k2) = k;
        let mut g = Rational::one();
        for j in 0..k1 {
            g *= self.alpha_sq((j, 0))?;
        }
        for i in 0..k2 {
            g *= self.beta_sq((k1, i))?;
        }
        Ok(g)
    }

    /// `γ_k` along the path up column 0, then right.
    pub fn gamma2_up_right(&self, k: Index) -> Result<Rational, GridError> {
        let (k1, k2) = k;
        let mut g = Rational::one();
        for i in 0..k2 {
            g *= self.beta_sq((0, i))?;
        }
        for j in 0..k1 {
            g *= self.alpha_sq((j, k2))?;
        }
        Ok(g)
    }

    /// The Six-point Test at `k`.
    pub fn six_point(&self, k: Index) -> Result<SixPoint, GridError> {
        let (k1, k2) = k;
        let a_k = self.alpha_sq(k)?;
        let b_k = self.beta_sq(k)?;
        let a1 = self.alpha_sq((k1 + 1, k2))? - &a_k;
        let a2 = self.beta_sq((k1, k2 + 1))? - &b_k;
        let p = self.alpha_sq((k1, k2 + 1))? * self.beta_sq((k1 + 1, k2))?;
        let q = a_k * b_k;
        let psd = psd2_radical_cross(&a1, &a2, &p, &q)?;
        Ok(SixPoint { k, a1, a2, p, q, psd })
    }

    /// Six-point Test at every index of `[0,M]×[0,N]`; the witness is the
    /// first failure in row-major order (`k2` outer).
    pub fn joint_hyponormal_window(&self, m: usize, n: usize) -> Result<WindowReport, GridError> {
        let mut witness = None;
        'outer: for k2 in 0..=n {
            for k1 in 0..=m {
                let sp = self.six_point((k1, k2))?;
                if !sp.psd {
                    witness = Some(Witness { k: (k1, k2), condition: sp.failure_tag().to_string() });
                    break 'outer;
                }
            }
        }
        Ok(WindowReport { verdict: witness.is_none(), window: (m, n), witness, conditions: Vec::new() })
    }

    /// Flatness flags on `[1,M]×[1,N]`.
    pub fn flatness(&self, m: usize, n: usize) -> Result<Flatness, GridError> {
        let a11 = self.alpha_sq((1, 1))?;
        let b11 = self.beta_sq((1, 1))?;
        let mut horizontal = true;
        let mut vertical = true;
        for k2 in 1..=n {
            for k1 in 1..=m {
                horizontal &= self.alpha_sq((k1, k2))? == a11;
                vertical &= self.beta_sq((k1, k2))? == b11;
            }
        }
        let flat = horizontal && vertical;
        Ok(Flatness { horizontal, vertical, flat, symmetric: flat && a11 == b11 })
    }

    /// Wherever `α(k+ε1) = α(k)`, records whether `β(k) = β(k+ε1)`; a
    /// mismatch certifies that the Six-point Test fails at `k`.
    pub fn propagation_consequences(&self, m: usize, n: usize) -> Result<PropagationReport, GridError> {
        let mut entries = Vec::new();
        for k2 in 0..=n {
            for k1 in 0..=m {
                if self.alpha_sq((k1 + 1, k2))? != self.alpha_sq((k1, k2))? {
                    continue;
                }
                let beta_equal = self.beta_sq((k1, k2))? == self.beta_sq((k1 + 1, k2))?;
                let six_point = self.six_point((k1, k2))?.psd;
                entries.push(PropagationEntry { k: (k1, k2), beta_equal, six_point });
            }
        }
        Ok(PropagationReport { entries })
    }
}

/// Data of one Six-point matrix `[[a1, √p − √q], [√p − √q, a2]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SixPoint {
    pub k: Index,
    pub a1: Rational,
    pub a2: Rational,
    pub p: Rational,
    pub q: Rational,
    pub psd: bool,
}

impl SixPoint {
    fn failure_tag(&self) -> &'static str {
        if self.a1.is_negative() {
            "alpha_decreasing"
        } else if self.a2.is_negative() {
            "beta_decreasing"
        } else {
            "six_point"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub k: Index,
    pub condition: String,
}

/// A named inequality `lhs <relation> rhs`, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub name: String,
    pub lhs: Rational,
    pub relation: &'static str,
    pub rhs: Rational,
    pub holds: bool,
}

impl Constraint {
    pub fn le(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs <= rhs;
        Constraint { name: name.into(), lhs, relation: "<=", rhs, holds }
    }

    pub fn ge(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs >= rhs;
        Constraint { name: name.into(), lhs, relation: ">=", rhs, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub verdict: bool,
    pub window: Index,
    pub witness: Option<Witness>,
    pub conditions: Vec<Constraint>,
}

impl WindowReport {
    pub fn with_conditions(mut self, conditions: Vec<Constraint>) -> Self {
        self.conditions = conditions;
        self
    }

    pub fn condition(&self, name: &str) -> Option<&Constraint> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flatness {
    pub horizontal: bool,
    pub vertical: bool,
    pub flat: bool,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationEntry {
    pub k: Index,
    pub beta_equal: bool,
    pub six_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationReport {
    pub entries: Vec<PropagationEntry>,
}

impl PropagationReport {
    pub fn violations(&self) -> impl Iterator<Item = &PropagationEntry> {
        self.entries.iter().filter(|e| !e.beta_equal)
    }

    /// Every violation comes with a failing Six-point Test.
    pub fn consistent(&self) -> bool {
        self.violations().all(|e| !e.six_point)
    }
}

/// `S_a` with the first weight given, as a row.
pub(crate) fn flat_row(first_sq: Rational) -> Result<WeightSeq, ShiftError> {
    WeightSeq::new(vec![first_sq], Tail::Constant { value: Rational::one() })
}
