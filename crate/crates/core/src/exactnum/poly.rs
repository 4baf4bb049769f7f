//! Univariate polynomials over the rationals, with exact sign analysis on
//! intervals via Sturm sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl From<Vec<Rational>> for Polynomial {
    fn from(coeffs: Vec<Rational>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<Rational> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// `t^k · p(t)`
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial::new(coeffs)
    }

    /// `p(t) / t`, defined only when the constant term vanishes.
    pub fn div_t(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(Polynomial::new(self.coeffs[1..].to_vec()))
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant of integration.
    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / Rational::from_int(i as i64 + 1)),
        );
        Polynomial::new(coeffs)
    }

    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Rational {
        let f = self.antiderivative();
        f.eval(hi) - f.eval(lo)
    }

    /// Euclidean division `self = q·d + r`; panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                let delta = &c * dc;
                r[k + i] -= delta;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Rational::is_zero) {
                r.pop();
            }
        }
        (Polynomial::new(q), Polynomial::new(r))
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
            None => Polynomial::zero(),
        }
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The square-free part `p / gcd(p, p')`, which has the same distinct roots.
    pub fn square_free(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&Rational::from_int(-1)));
        }
        SturmChain { chain }
    }

    fn sign_changes(&self, t: &Rational) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| p.eval(t).signum())
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in `(a, b]`; `a` and `b` must not be roots.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Isolating interval `(lo, hi)` holding exactly one root; both ends are non-roots.
#[derive(Clone, Debug)]
struct Isolated {
    lo: Rational,
    hi: Rational,
}

/// Cauchy bound: every real root lies strictly inside `(-bound, bound)`.
fn cauchy_bound(p: &Polynomial) -> Rational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), Rational::max);
    max + Rational::from_int(2)
}

/// A non-root of `p` strictly between `a` and `b`, preferring the midpoint.
fn split_point(p: &Polynomial, a: &Rational, b: &Rational) -> Rational {
    let width = b - a;
    let mut den = 2i64;
    loop {
        for num in 1..den {
            let t = a + &width * Rational::new(num, den);
            if !p.eval(&t).is_zero() {
                return t;
            }
        }
        den += 1;
    }
}

fn isolate_all(q: &Polynomial) -> Vec<Isolated> {
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = SturmChain::new(q);
    let b = cauchy_bound(q);
    let mut out = Vec::new();
    let mut stack = vec![(-&b, b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push(Isolated { lo, hi }),
            _ => {
                let mid = split_point(q, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Where a root sits relative to a closed interval, after refinement.
enum Located {
    Inside(Isolated),
    Endpoint,
    Outside,
}

/// Refines `iso` until it no longer straddles `cut`; `cut` is a root of `q` or not.
fn refine_around(q: &Polynomial, iso: Isolated, cut: &Rational) -> Option<Isolated> {
    if !(iso.lo < *cut && *cut < iso.hi) {
        return Some(iso);
    }
    if q.eval(cut).is_zero() {
        return None;
    }
    let sl = q.eval(&iso.lo).signum();
    let sc = q.eval(cut).signum();
    if sl != sc {
        Some(Isolated { lo: iso.lo, hi: cut.clone() })
    } else {
        Some(Isolated { lo: cut.clone(), hi: iso.hi })
    }
}

fn locate(q: &Polynomial, iso: Isolated, lo: &Rational, hi: &Rational) -> Located {
    let Some(iso) = refine_around(q, iso, lo) else {
        return Located::Endpoint;
    };
    let Some(iso) = refine_around(q, iso, hi) else {
        return Located::Endpoint;
    };
    if iso.lo >= *lo && iso.hi <= *hi {
        Located::Inside(iso)
    } else {
        Located::Outside
    }
}

/// True iff `p(t) ≥ 0` for every `t` in `[lo, hi]`. The zero polynomial is
/// nonnegative.
///
/// Distinct roots of the square-free part inside `(lo, hi)` are isolated with
/// Sturm counts; `p` has constant sign between consecutive roots, so checking
/// `lo`, `hi` and one point in every gap decides the question exactly.
pub fn poly_nonneg_on_interval(p: &Polynomial, lo: &Rational, hi: &Rational) -> bool {
    assert!(lo < hi, "empty interval");
    if p.is_zero() {
        return true;
    }
    if p.eval(lo).is_negative() || p.eval(hi).is_negative() {
        return false;
    }
    let q = p.square_free();
    let mut inside: Vec<Isolated> = isolate_all(&q)
        .into_iter()
        .filter_map(|iso| match locate(&q, iso, lo, hi) {
            Located::Inside(iso) => Some(iso),
            Located::Endpoint | Located::Outside => None,
        })
        .collect();
    inside.sort_by(|x, y| x.lo.cmp(&y.lo));

    // boundaries: lo, isolated roots, hi; sample strictly inside each gap
    let mut bounds: Vec<(Rational, Rational)> = vec![(lo.clone(), lo.clone())];
    bounds.extend(inside.into_iter().map(|iso| (iso.lo, iso.hi)));
    bounds.push((hi.clone(), hi.clone()));
    let two = Rational::from_int(2);
    bounds.windows(2).all(|w| {
        let left = &w[0].1;
        let right = &w[1].0;
        let sample = if left < right {
            (left + right) / &two
        } else {
            // shared isolation endpoint: a non-root lying between the two roots
            left.clone()
        };
        !p.eval(&sample).is_negative()
    })
}
