//! Finite measures built from point masses and polynomial densities, and the
//! backward-extension calculus for 1- and 2-variable shifts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{poly_nonneg_on_interval, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MeasureError {
    #[error("negative mass {mass} at point {point}")]
    NegativeMass { point: Rational, mass: Rational },
    #[error("density is negative somewhere on [{lo}, {hi}]")]
    NegativeDensity { lo: Rational, hi: Rational },
    #[error("segment [{lo}, {hi}] is empty")]
    EmptySegment { lo: Rational, hi: Rational },
    #[error("measure is concentrated at 0")]
    Degenerate,
    #[error("1/t is not integrable")]
    InfiniteNorm,
    #[error("zero 1/t-norm")]
    ZeroNorm,
    #[error("density with nonzero constant term on [{lo}, {hi}] gives a logarithmic 1/t-moment")]
    LogMoment { lo: Rational, hi: Rational },
}

/// Piece of absolutely continuous mass: `density(t) dt` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    #[serde(rename = "coeffs")]
    pub density: Polynomial,
    pub lo: Rational,
    pub hi: Rational,
}

impl Segment {
    pub fn new(density: Polynomial, lo: Rational, hi: Rational) -> Self {
        Segment { density, lo, hi }
    }

    fn moment(&self, n: usize) -> Rational {
        self.density.shift_up(n).integrate(&self.lo, &self.hi)
    }
}

#[derive(Deserialize)]
struct RawMeasure1D {
    #[serde(default)]
    atoms: Vec<(Rational, Rational)>,
    #[serde(default)]
    segments: Vec<Segment>,
}

impl TryFrom<RawMeasure1D> for Measure1D {
    type Error = MeasureError;

    fn try_from(raw: RawMeasure1D) -> Result<Self, Self::Error> {
        Measure1D::from_parts(raw.atoms, raw.segments)
    }
}

/// A finite positive measure on the line, always kept in canonical form:
/// atoms sorted with distinct points and positive masses, segments sorted,
/// non-overlapping, nonzero, and adjacent equal densities merged.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure1D")]
pub struct Measure1D {
    atoms: Vec<(Rational, Rational)>,
    segments: Vec<Segment>,
}

/// Value of `∫ (1/t) dμ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvTNorm {
    Finite(Rational),
    Infinite,
}

impl InvTNorm {
    pub fn finite(self) -> Option<Rational> {
        match self {
            InvTNorm::Finite(v) => Some(v),
            InvTNorm::Infinite => None,
        }
    }
}

impl fmt::Display for InvTNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvTNorm::Finite(v) => write!(f, "{v}"),
            InvTNorm::Infinite => write!(f, "infinite"),
        }
    }
}

impl Measure1D {
    pub fn zero() -> Self {
        Measure1D::default()
    }

    pub fn dirac(point: Rational) -> Self {
        Measure1D::atom(point, Rational::one())
    }

    /// `mass · δ_point`; a zero mass gives the zero measure.
    pub fn atom(point: Rational, mass: Rational) -> Self {
        Measure1D::from_parts(vec![(point, mass)], vec![]).expect("nonnegative atom")
    }

    /// Lebesgue measure on `[lo, hi]`.
    pub fn lebesgue(lo: Rational, hi: Rational) -> Self {
        Measure1D::density(Polynomial::constant(Rational::one()), lo, hi).expect("valid interval")
    }

    pub fn density(p: Polynomial, lo: Rational, hi: Rational) -> Result<Self, MeasureError> {
        Measure1D::from_parts(vec![], vec![Segment::new(p, lo, hi)])
    }

    /// Canonicalizes arbitrary signed parts; fails unless the result is a
    /// nonnegative measure.
    pub fn from_parts(atoms: Vec<(Rational, Rational)>, segments: Vec<Segment>) -> Result<Self, MeasureError> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (x, m) in atoms {
            *merged.entry(x).or_default() += m;
        }
        let mut out_atoms = Vec::new();
        for (point, mass) in merged {
            if mass.is_negative() {
                return Err(MeasureError::NegativeMass { point, mass });
            }
            if !mass.is_zero() {
                out_atoms.push((point, mass));
            }
        }

        for s in &segments {
            if s.lo >= s.hi {
                return Err(MeasureError::EmptySegment { lo: s.lo.clone(), hi: s.hi.clone() });
            }
        }
        let mut cuts: Vec<Rational> = segments.iter().flat_map(|s| [s.lo.clone(), s.hi.clone()]).collect();
        cuts.sort();
        cuts.dedup();
        let mut pieces: Vec<Segment> = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let density = segments
                .iter()
                .filter(|s| s.lo <= *lo && s.hi >= *hi)
                .fold(Polynomial::zero(), |acc, s| acc.add(&s.density));
            if density.is_zero() {
                continue;
            }
            match pieces.last_mut() {
                Some(prev) if prev.hi == *lo && prev.density == density => prev.hi = hi.clone(),
                _ => pieces.push(Segment::new(density, lo.clone(), hi.clone())),
            }
        }
        for s in &pieces {
            if !poly_nonneg_on_interval(&s.density, &s.lo, &s.hi) {
                return Err(MeasureError::NegativeDensity { lo: s.lo.clone(), hi: s.hi.clone() });
            }
        }
        Ok(Measure1D { atoms: out_atoms, segments: pieces })
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.segments.is_empty()
    }

    /// `μ({x})`
    pub fn atom_mass(&self, x: &Rational) -> Rational {
        self.atoms
            .iter()
            .find(|(p, _)| p == x)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_mass(&self) -> Rational {
        self.moment(0)
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }

    /// Smallest closed interval containing the support, if nonzero.
    pub fn support_hull(&self) -> Option<(Rational, Rational)> {
        let pts = self
            .atoms
            .iter()
            .map(|(x, _)| x.clone())
            .chain(self.segments.iter().flat_map(|s| [s.lo.clone(), s.hi.clone()]));
        pts.fold(None, |acc, x| match acc {
            None => Some((x.clone(), x)),
            Some((lo, hi)) => Some((lo.min(x.clone()), hi.max(x))),
        })
    }

    pub fn supported_in(&self, lo: &Rational, hi: &Rational) -> bool {
        self.support_hull().is_none_or(|(a, b)| a >= *lo && b <= *hi)
    }

    /// `∫ t^n dμ`
    pub fn moment(&self, n: usize) -> Rational {
        let exp = i32::try_from(n).expect("moment order fits in i32");
        let atoms: Rational = self.atoms.iter().map(|(x, m)| m * x.pow(exp)).sum();
        let dens: Rational = self.segments.iter().map(|s| s.moment(n)).sum();
        atoms + dens
    }

    pub fn scale(&self, c: &Rational) -> Measure1D {
        assert!(!c.is_negative(), "negative scale factor");
        if c.is_zero() {
            return Measure1D::zero();
        }
        Measure1D {
            atoms: self.atoms.iter().map(|(x, m)| (x.clone(), m * c)).collect(),
            segments: self
                .segments
                .iter()
                .map(|s| Segment::new(s.density.scale(c), s.lo.clone(), s.hi.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Measure1D) -> Measure1D {
        Measure1D::from_parts(
            self.atoms.iter().chain(&other.atoms).cloned().collect(),
            self.segments.iter().chain(&other.segments).cloned().collect(),
        )
        .expect("sum of nonnegative measures")
    }

    /// `self − other`, provided the difference is a nonnegative measure.
    pub fn checked_sub(&self, other: &Measure1D) -> Result<Measure1D, MeasureError> {
        let neg = Rational::from_int(-1);
        Measure1D::from_parts(
            self.atoms
                .iter()
                .cloned()
                .chain(other.atoms.iter().map(|(x, m)| (x.clone(), m * &neg)))
                .collect(),
            self.segments
                .iter()
                .cloned()
                .chain(
                    other
                        .segments
                        .iter()
                        .map(|s| Segment::new(s.density.scale(&neg), s.lo.clone(), s.hi.clone())),
                )
                .collect(),
        )
    }

    /// `t^h dμ(t)`
    pub fn mul_t_pow(&self, h: usize) -> Measure1D {
        let exp = i32::try_from(h).expect("exponent fits in i32");
        Measure1D::from_parts(
            self.atoms.iter().map(|(x, m)| (x.clone(), m * x.pow(exp))).collect(),
            self.segments
                .iter()
                .map(|s| Segment::new(s.density.shift_up(h), s.lo.clone(), s.hi.clone()))
                .collect(),
        )
        .expect("support in [0, ∞)")
    }

    /// `(1/t) dμ(t)` restricted to `t ≠ 0`.
    pub fn div_t_off_zero(&self) -> Result<Measure1D, MeasureError> {
        let mut atoms = Vec::new();
        for (x, m) in &self.atoms {
            if !x.is_zero() {
                atoms.push((x.clone(), m / x));
            }
        }
        let mut segments = Vec::new();
        for s in &self.segments {
            let d = s.density.div_t().ok_or_else(|| MeasureError::LogMoment {
                lo: s.lo.clone(),
                hi: s.hi.clone(),
            })?;
            segments.push(Segment::new(d, s.lo.clone(), s.hi.clone()));
        }
        Measure1D::from_parts(atoms, segments)
    }

    /// `∫ (1/t) dμ`
    pub fn inv_t_norm(&self) -> Result<InvTNorm, MeasureError> {
        if self.atom_mass(&Rational::zero()).is_positive() {
            return Ok(InvTNorm::Infinite);
        }
        let mut total = Rational::zero();
        for (x, m) in &self.atoms {
            total += m / x;
        }
        for s in &self.segments {
            match s.density.div_t() {
                Some(d) => total += d.integrate(&s.lo, &s.hi),
                None if s.lo.is_zero() => return Ok(InvTNorm::Infinite),
                None => return Err(MeasureError::LogMoment { lo: s.lo.clone(), hi: s.hi.clone() }),
            }
        }
        Ok(InvTNorm::Finite(total))
    }
}

impl fmt::Debug for Measure1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.atoms.iter().map(|(x, m)| format!("{m}·δ[{x}]")).collect();
        parts.extend(
            self.segments
                .iter()
                .map(|s| format!("({:?})dt on [{}, {}]", s.density, s.lo, s.hi)),
        );
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Display for Measure1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `∫ t^n dμ`
pub fn moment1(mu: &Measure1D, n: usize) -> Rational {
    mu.moment(n)
}

/// `∫ (1/t) dμ`, or `Infinite` when `μ` charges 0 or has a density not
/// vanishing at 0.
pub fn inv_t_norm(mu: &Measure1D) -> Result<InvTNorm, MeasureError> {
    mu.inv_t_norm()
}

/// Berger measure of the restriction to `M_h`: `(1/γ_h) t^h dξ(t)`.
pub fn restriction_measure(xi: &Measure1D, h: usize) -> Result<Measure1D, MeasureError> {
    let gamma = xi.moment(h);
    if gamma.is_zero() {
        return Err(MeasureError::Degenerate);
    }
    Ok(xi.mul_t_pow(h).scale(&gamma.recip().expect("nonzero")))
}

/// Largest admissible `β₁²` in front of a shift with Berger measure `η_M`:
/// `1 / ‖1/t‖`.
pub fn lembeta1_value(eta_m: &Measure1D) -> Result<Rational, MeasureError> {
    match eta_m.inv_t_norm()? {
        InvTNorm::Infinite => Err(MeasureError::InfiniteNorm),
        InvTNorm::Finite(n) => n.recip().map_err(|_| MeasureError::ZeroNorm),
    }
}

/// True iff `μ(E) ≤ ν(E)` for every Borel set `E`.
pub fn measure_leq(mu: &Measure1D, nu: &Measure1D) -> bool {
    nu.checked_sub(mu).is_ok()
}

/// One product term `coeff · (s-part × t-part)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductTerm {
    pub coeff: Rational,
    #[serde(rename = "s")]
    pub s_part: Measure1D,
    #[serde(rename = "t")]
    pub t_part: Measure1D,
}

#[derive(Deserialize)]
struct RawMeasure2D {
    terms: Vec<ProductTerm>,
}

impl TryFrom<RawMeasure2D> for Measure2D {
    type Error = MeasureError;

    fn try_from(raw: RawMeasure2D) -> Result<Self, Self::Error> {
        for t in &raw.terms {
            if t.coeff.is_negative() {
                return Err(MeasureError::NegativeMass { point: Rational::zero(), mass: t.coeff.clone() });
            }
        }
        Ok(Measure2D::from_terms(raw.terms))
    }
}

/// Finite sum of product measures on the plane.
///
/// Canonical form: one term per atom of the s-coordinate (`δ_x × τ_x`), then
/// one term per distinct atomless s-profile normalized to mass 1, every
/// coefficient folded into the t-part.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure2D")]
pub struct Measure2D {
    terms: Vec<ProductTerm>,
}

impl Measure2D {
    pub fn product(s: Measure1D, t: Measure1D) -> Self {
        Measure2D::from_terms(vec![ProductTerm { coeff: Rational::one(), s_part: s, t_part: t }])
    }

    pub fn from_terms(terms: Vec<ProductTerm>) -> Self {
        let mut by_atom: BTreeMap<Rational, Measure1D> = BTreeMap::new();
        let mut by_profile: Vec<(Measure1D, Measure1D)> = Vec::new();
        for term in terms {
            if term.coeff.is_zero() || term.s_part.is_zero() || term.t_part.is_zero() {
                continue;
            }
            for (x, m) in term.s_part.atoms() {
                let t = term.t_part.scale(&(&term.coeff * m));
                let slot = by_atom.entry(x.clone()).or_default();
                *slot = slot.add(&t);
            }
            let cont = Measure1D::from_parts(vec![], term.s_part.segments().to_vec()).expect("nonnegative");
            let mass = cont.total_mass();
            if mass.is_zero() {
                continue;
            }
            let profile = cont.scale(&mass.recip().expect("nonzero"));
            let t = term.t_part.scale(&(&term.coeff * &mass));
            match by_profile.iter_mut().find(|(p, _)| *p == profile) {
                Some((_, acc)) => *acc = acc.add(&t),
                None => by_profile.push((profile, t)),
            }
        }
        by_profile.sort_by_key(|(p, _)| format!("{p:?}"));
        let terms = by_atom
            .into_iter()
            .map(|(x, t)| (Measure1D::dirac(x), t))
            .chain(by_profile)
            .map(|(s_part, t_part)| ProductTerm { coeff: Rational::one(), s_part, t_part })
            .collect();
        Measure2D { terms }
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn scale(&self, c: &Rational) -> Measure2D {
        Measure2D::from_terms(
            self.terms
                .iter()
                .map(|t| ProductTerm { coeff: &t.coeff * c, ..t.clone() })
                .collect(),
        )
    }

    pub fn add(&self, other: &Measure2D) -> Measure2D {
        Measure2D::from_terms(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    /// `∫ s^i t^j dμ(s, t)`
    pub fn moment(&self, i: usize, j: usize) -> Rational {
        self.terms
            .iter()
            .map(|t| &t.coeff * t.s_part.moment(i) * t.t_part.moment(j))
            .sum()
    }

    pub fn total_mass(&self) -> Rational {
        self.moment(0, 0)
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }

    /// `∫ (1/t) dμ(s, t)`
    pub fn inv_t_norm(&self) -> Result<InvTNorm, MeasureError> {
        let mut total = Rational::zero();
        for t in &self.terms {
            match t.t_part.inv_t_norm()? {
                InvTNorm::Infinite => return Ok(InvTNorm::Infinite),
                InvTNorm::Finite(v) => total += &t.coeff * t.s_part.total_mass() * v,
            }
        }
        Ok(InvTNorm::Finite(total))
    }
}

impl fmt::Debug for Measure2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("[{:?}] × [{:?}]", t.s_part, t.t_part))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Display for Measure2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `dμ_ext := (1 − δ₀(t)) (1 / (t ‖1/t‖)) dμ`
pub fn extremal(mu: &Measure2D) -> Result<Measure2D, MeasureError> {
    let n = match mu.inv_t_norm()? {
        InvTNorm::Infinite => return Err(MeasureError::InfiniteNorm),
        InvTNorm::Finite(n) => n,
    };
    let inv = n.recip().map_err(|_| MeasureError::ZeroNorm)?;
    let mut terms = Vec::new();
    for t in mu.terms() {
        terms.push(ProductTerm {
            coeff: &t.coeff * &inv,
            s_part: t.s_part.clone(),
            t_part: t.t_part.div_t_off_zero()?,
        });
    }
    Ok(Measure2D::from_terms(terms))
}

/// `μ^X = μ ∘ π_X⁻¹`
pub fn marginal_x(mu: &Measure2D) -> Measure1D {
    mu.terms().iter().fold(Measure1D::zero(), |acc, t| {
        acc.add(&t.s_part.scale(&(&t.coeff * t.t_part.total_mass())))
    })
}

/// `μ^Y = μ ∘ π_Y⁻¹`
pub fn marginal_y(mu: &Measure2D) -> Measure1D {
    mu.terms().iter().fold(Measure1D::zero(), |acc, t| {
        acc.add(&t.t_part.scale(&(&t.coeff * t.s_part.total_mass())))
    })
}

/// Which backward-extension condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `1/t ∉ L¹`
    #[serde(rename = "i")]
    NotIntegrable,
    /// `β² ‖1/t‖ > 1`
    #[serde(rename = "ii")]
    NormTooLarge,
    /// `β² ‖1/t‖ (μ_M)_ext^X ≰ ξ`
    #[serde(rename = "iii")]
    MarginalExceeds,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        match self {
            Condition::NotIntegrable => "i",
            Condition::NormTooLarge => "ii",
            Condition::MarginalExceeds => "iii",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error("backward extension rejected by condition ({})", .0.tag())]
    Reject(Condition),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Berger measure of `shift(β₀, W)` where `W` has Berger measure `η_M`:
/// `dη = (β₀²/t) dη_M + (1 − β₀² ‖1/t‖) dδ₀`.
pub fn backward_ext_1var(eta_m: &Measure1D, beta0_sq: &Rational) -> Result<Measure1D, ExtensionError> {
    let n = match eta_m.inv_t_norm()? {
        InvTNorm::Infinite => return Err(ExtensionError::Reject(Condition::NotIntegrable)),
        InvTNorm::Finite(n) => n,
    };
    let c = beta0_sq * &n;
    if c > Rational::one() {
        return Err(ExtensionError::Reject(Condition::NormTooLarge));
    }
    let main = eta_m.div_t_off_zero()?.scale(beta0_sq);
    Ok(main.add(&Measure1D::atom(Rational::zero(), Rational::one() - c)))
}

/// Berger measure of the 2-variable shift obtained by prepending the row with
/// Berger measure `ξ` below a shift with Berger measure `μ_M`, with
/// `β₀₀² = beta00_sq`:
/// `μ = c (μ_M)_ext + (ξ − c (μ_M)_ext^X) × δ₀` with `c = β₀₀² ‖1/t‖`.
pub fn backward_ext_2var(mu_m: &Measure2D, xi: &Measure1D, beta00_sq: &Rational) -> Result<Measure2D, ExtensionError> {
    let n = match mu_m.inv_t_norm()? {
        InvTNorm::Infinite => return Err(ExtensionError::Reject(Condition::NotIntegrable)),
        InvTNorm::Finite(n) => n,
    };
    let c = beta00_sq * &n;
    if c > Rational::one() {
        return Err(ExtensionError::Reject(Condition::NormTooLarge));
    }
    let ext = extremal(mu_m)?.scale(&c);
    let rest = xi
        .checked_sub(&marginal_x(&ext))
        .map_err(|_| ExtensionError::Reject(Condition::MarginalExceeds))?;
    Ok(ext.add(&Measure2D::product(rest, Measure1D::dirac(Rational::zero()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn d(x: Rational) -> Measure1D {
        Measure1D::dirac(x)
    }

    fn lin(c0: Rational, c1: Rational) -> Polynomial {
        Polynomial::new(vec![c0, c1])
    }

    fn leb() -> Measure1D {
        Measure1D::lebesgue(rat(0, 1), rat(1, 1))
    }

    fn xi() -> Measure1D {
        d(rat(0, 1)).add(&d(rat(1, 2))).add(&d(rat(1, 1))).scale(&rat(1, 3))
    }

    fn eta1() -> Measure1D {
        Measure1D::density(lin(rat(0, 1), rat(2, 3)), rat(0, 1), rat(1, 1))
            .unwrap()
            .add(&Measure1D::atom(rat(1, 1), rat(2, 3)))
    }

    #[test]
    fn moments() {
        assert_eq!(d(rat(1, 1)).moment(7), rat(1, 1));
        assert_eq!(leb().moment(2), rat(1, 3));
        assert_eq!(xi().moment(2), rat(5, 12));
        assert_eq!(xi().moment(0), rat(1, 1));
    }

    #[test]
    fn inverse_t_norms() {
        assert_eq!(d(rat(1, 1)).inv_t_norm().unwrap(), InvTNorm::Finite(rat(1, 1)));
        assert_eq!(eta1().inv_t_norm().unwrap(), InvTNorm::Finite(rat(4, 3)));
        let half = d(rat(0, 1)).add(&d(rat(1, 1))).scale(&rat(1, 2));
        assert_eq!(half.inv_t_norm().unwrap(), InvTNorm::Infinite);
        assert_eq!(leb().inv_t_norm().unwrap(), InvTNorm::Infinite);
        let far = Measure1D::lebesgue(rat(1, 2), rat(1, 1));
        assert!(matches!(far.inv_t_norm(), Err(MeasureError::LogMoment { .. })));
    }

    #[test]
    fn restriction() {
        assert_eq!(restriction_measure(&d(rat(1, 1)), 2).unwrap(), d(rat(1, 1)));
        let two_t = Measure1D::density(lin(rat(0, 1), rat(2, 1)), rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(restriction_measure(&leb(), 1).unwrap(), two_t);
        let s_a = Measure1D::atom(rat(0, 1), rat(3, 4)).add(&Measure1D::atom(rat(1, 1), rat(1, 4)));
        assert_eq!(restriction_measure(&s_a, 1).unwrap(), d(rat(1, 1)));
        assert_eq!(restriction_measure(&d(rat(0, 1)), 1), Err(MeasureError::Degenerate));
    }

    #[test]
    fn lembeta1() {
        assert_eq!(lembeta1_value(&d(rat(1, 1))).unwrap(), rat(1, 1));
        assert_eq!(lembeta1_value(&eta1()).unwrap(), rat(3, 4));
        let two_t = Measure1D::density(lin(rat(0, 1), rat(2, 1)), rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(lembeta1_value(&two_t).unwrap(), rat(1, 2));
    }

    #[test]
    fn canonical_form_merges_and_splits() {
        let a = Measure1D::from_parts(
            vec![(rat(1, 2), rat(1, 4)), (rat(1, 2), rat(1, 4)), (rat(0, 1), rat(0, 1))],
            vec![
                Segment::new(Polynomial::constant(rat(1, 1)), rat(0, 1), rat(1, 2)),
                Segment::new(Polynomial::constant(rat(1, 1)), rat(1, 2), rat(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(a, Measure1D::atom(rat(1, 2), rat(1, 2)).add(&leb()));
        assert_eq!(a.segments().len(), 1);
        assert_eq!(a.atoms().len(), 1);
    }

    #[test]
    fn subtraction_must_stay_nonnegative() {
        let diff = eta1().checked_sub(&Measure1D::atom(rat(1, 1), rat(1, 2))).unwrap();
        assert_eq!(diff.atom_mass(&rat(1, 1)), rat(1, 6));
        assert!(eta1().checked_sub(&d(rat(1, 1))).is_err());
        assert!(leb().checked_sub(&Measure1D::density(lin(rat(0, 1), rat(2, 1)), rat(0, 1), rat(1, 1)).unwrap()).is_err());
    }

    #[test]
    fn ordering() {
        assert!(measure_leq(&xi(), &xi()));
        let two = d(rat(0, 1)).add(&d(rat(1, 1))).scale(&rat(1, 3));
        assert!(measure_leq(&two, &xi()));
        assert!(!measure_leq(&xi(), &two));
        assert!(!measure_leq(&d(rat(1, 2)), &leb()));
        assert!(measure_leq(&leb().scale(&rat(1, 2)), &leb()));
    }

    fn mu_m(a_sq: Rational) -> Measure2D {
        let rest = eta1().checked_sub(&Measure1D::atom(rat(1, 1), a_sq.clone())).unwrap();
        Measure2D::from_terms(vec![
            ProductTerm { coeff: a_sq, s_part: d(rat(1, 1)), t_part: d(rat(1, 1)) },
            ProductTerm { coeff: rat(1, 1), s_part: d(rat(0, 1)), t_part: rest },
        ])
    }

    #[test]
    fn extremal_examples() {
        let dd = Measure2D::product(d(rat(1, 1)), d(rat(1, 1)));
        assert_eq!(extremal(&dd).unwrap(), dd);

        let ext = extremal(&mu_m(rat(1, 2))).unwrap();
        let expected = Measure2D::from_terms(vec![
            ProductTerm { coeff: rat(3, 8), s_part: d(rat(1, 1)), t_part: d(rat(1, 1)) },
            ProductTerm {
                coeff: rat(1, 1),
                s_part: d(rat(0, 1)),
                t_part: leb().scale(&rat(1, 2)).add(&Measure1D::atom(rat(1, 1), rat(1, 8))),
            },
        ]);
        assert_eq!(ext, expected);
        assert!(ext.is_probability());
        assert_eq!(
            marginal_x(&ext),
            Measure1D::atom(rat(0, 1), rat(5, 8)).add(&Measure1D::atom(rat(1, 1), rat(3, 8)))
        );

        let fig9 = Measure2D::product(
            d(rat(0, 1)).add(&d(rat(1, 1))),
            Measure1D::density(lin(rat(0, 1), rat(1, 1)), rat(0, 1), rat(1, 1)).unwrap(),
        );
        assert_eq!(fig9.inv_t_norm().unwrap(), InvTNorm::Finite(rat(2, 1)));
        let half = d(rat(0, 1)).add(&d(rat(1, 1))).scale(&rat(1, 2));
        assert_eq!(extremal(&fig9).unwrap(), Measure2D::product(half.clone(), leb()));
        assert_eq!(marginal_x(&Measure2D::product(half.clone(), leb())), half);
    }

    #[test]
    fn one_variable_backward_extension() {
        let two_t = Measure1D::density(lin(rat(0, 1), rat(2, 1)), rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(backward_ext_1var(&two_t, &rat(1, 2)).unwrap(), leb());
        let r1 = leb().scale(&rat(1, 2)).add(&Measure1D::atom(rat(1, 1), rat(1, 2)));
        assert_eq!(backward_ext_1var(&eta1(), &rat(3, 4)).unwrap(), r1);
        let charged = Measure1D::atom(rat(0, 1), rat(1, 2)).add(&Measure1D::atom(rat(1, 1), rat(1, 2)));
        assert_eq!(
            backward_ext_1var(&charged, &rat(1, 2)),
            Err(ExtensionError::Reject(Condition::NotIntegrable))
        );
        assert_eq!(
            backward_ext_1var(&eta1(), &rat(4, 5)),
            Err(ExtensionError::Reject(Condition::NormTooLarge))
        );
    }

    #[test]
    fn two_variable_backward_extension() {
        let dd = Measure2D::product(d(rat(1, 1)), d(rat(1, 1)));
        assert_eq!(backward_ext_2var(&dd, &d(rat(1, 1)), &rat(1, 1)).unwrap(), dd);

        let fig9 = Measure2D::product(
            d(rat(0, 1)).add(&d(rat(1, 1))),
            Measure1D::density(lin(rat(0, 1), rat(1, 1)), rat(0, 1), rat(1, 1)).unwrap(),
        );
        let mu = backward_ext_2var(&fig9, &xi(), &rat(1, 3)).unwrap();
        assert!(mu.is_probability());
        assert_eq!(marginal_x(&mu), xi());
        assert_eq!(
            backward_ext_2var(&fig9, &xi(), &rat(1, 2)),
            Err(ExtensionError::Reject(Condition::MarginalExceeds))
        );
        assert_eq!(
            backward_ext_2var(&fig9, &xi(), &rat(3, 5)),
            Err(ExtensionError::Reject(Condition::NormTooLarge))
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"atoms":[["1","2/3"]],"segments":[{"coeffs":["0","2/3"],"lo":"0","hi":"1"}]}"#;
        let m: Measure1D = serde_json::from_str(text).unwrap();
        assert_eq!(m, eta1());
        assert_eq!(serde_json::to_string(&m).unwrap(), text);
        let bad = r#"{"atoms":[["1","-1"]]}"#;
        assert!(serde_json::from_str::<Measure1D>(bad).is_err());
    }
}
