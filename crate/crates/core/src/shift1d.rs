//! One-variable weighted shifts, stored as squared weights.

use serde::{Deserialize, Deserializer, Serialize};

use crate::exactnum::{psd_check, NumError, Rational, SymMatrix, MAX_ORDER};
use crate::measures::Measure1D;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShiftError {
    #[error("index {index} is past the end of a finite sequence of length {len}")]
    OutOfRange { index: usize, len: usize },
    #[error("squared weight at index {index} is not positive")]
    NonPositive { index: usize },
    #[error("invalid tail: {0}")]
    BadTail(String),
    #[error("Hankel order {0} is outside 1..=7")]
    BadOrder(usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

fn lenient_u32<'de, D: Deserializer<'de>>(d: D) -> Result<u32, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        Num(u32),
        Text(String),
    }
    match Either::deserialize(d)? {
        Either::Num(n) => Ok(n),
        Either::Text(s) => s.trim().parse().map_err(serde::de::Error::custom),
    }
}

/// Rule for the squared weights past the explicit prefix, evaluated at the
/// absolute index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// `c²` forever.
    Constant { value: Rational },
    /// `ℓ − 1/(k+2)`, the squared weights of `B₊^(ℓ)`.
    BergmanLike {
        #[serde(deserialize_with = "lenient_u32")]
        value: u32,
    },
    /// `1/2` at 0, then `(2^k + 1/2)/(2^k + 1)`.
    AlphaFamily,
    /// `(3/4)r²` at 0, then `(n+1)(n+3)/(n+2)²`; `value` is `r²`.
    BetaRFamily { value: Rational },
    /// Finite sequence.
    None,
    /// `w_k = phi1 + phi0 / w_{k-1}`, seeded by the last prefix entry.
    Recursive { phi0: Rational, phi1: Rational },
    /// `γ_{k+1}/γ_k` of the given measure.
    Berger { measure: Measure1D },
}

/// Squared weights `α₀², α₁², …`: an explicit prefix followed by a tail rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWeightSeq")]
pub struct WeightSeq {
    prefix_sq: Vec<Rational>,
    tail: Tail,
    /// how far the tail rule has been shifted by `shifted`
    #[serde(default, skip_serializing_if = "is_zero")]
    offset: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Deserialize)]
struct RawWeightSeq {
    #[serde(default)]
    prefix_sq: Vec<Rational>,
    tail: Tail,
    #[serde(default)]
    offset: usize,
}

impl TryFrom<RawWeightSeq> for WeightSeq {
    type Error = ShiftError;

    fn try_from(raw: RawWeightSeq) -> Result<Self, Self::Error> {
        let mut w = WeightSeq::new(raw.prefix_sq, raw.tail)?;
        w.offset = raw.offset;
        Ok(w)
    }
}

impl WeightSeq {
    pub fn new(prefix_sq: Vec<Rational>, tail: Tail) -> Result<Self, ShiftError> {
        if let Some(index) = prefix_sq.iter().position(|w| !w.is_positive()) {
            return Err(ShiftError::NonPositive { index });
        }
        match &tail {
            Tail::Constant { value } if !value.is_positive() => {
                return Err(ShiftError::BadTail("constant must be positive".into()))
            }
            Tail::BergmanLike { value: 0 } => return Err(ShiftError::BadTail("ℓ must be at least 1".into())),
            Tail::BetaRFamily { value } if !value.is_positive() => {
                return Err(ShiftError::BadTail("r² must be positive".into()))
            }
            Tail::Recursive { .. } if prefix_sq.is_empty() => {
                return Err(ShiftError::BadTail("recursive tail needs a seed".into()))
            }
            Tail::Berger { measure } => {
                let off_zero = measure.checked_sub(&Measure1D::atom(Rational::zero(), measure.atom_mass(&Rational::zero())));
                if !measure.is_probability() || off_zero.is_ok_and(|m| m.is_zero()) {
                    return Err(ShiftError::BadTail("Berger tail needs a probability measure not concentrated at 0".into()));
                }
                if measure.support_hull().is_some_and(|(lo, _)| lo.is_negative()) {
                    return Err(ShiftError::BadTail("Berger measure must live on [0, ∞)".into()));
                }
            }
            _ => {}
        }
        Ok(WeightSeq { prefix_sq, tail, offset: 0 })
    }

    pub fn constant(c_sq: Rational) -> Self {
        WeightSeq::new(vec![], Tail::Constant { value: c_sq }).expect("positive constant")
    }

    /// `U₊`
    pub fn unilateral() -> Self {
        WeightSeq::constant(Rational::one())
    }

    /// `B₊^(ℓ)`
    pub fn bergman_like(ell: u32) -> Self {
        WeightSeq::new(vec![], Tail::BergmanLike { value: ell }).expect("ℓ ≥ 1")
    }

    pub fn alpha_family() -> Self {
        WeightSeq::new(vec![], Tail::AlphaFamily).expect("valid")
    }

    pub fn beta_r_family(r_sq: Rational) -> Self {
        WeightSeq::new(vec![], Tail::BetaRFamily { value: r_sq }).expect("r² > 0")
    }

    /// `S_a = shift(a, 1, 1, …)`, given `a²`.
    pub fn s_a(a_sq: Rational) -> Self {
        WeightSeq::new(vec![a_sq], Tail::Constant { value: Rational::one() }).expect("a² > 0")
    }

    pub fn finite(prefix_sq: Vec<Rational>) -> Result<Self, ShiftError> {
        WeightSeq::new(prefix_sq, Tail::None)
    }

    /// Shift whose Berger measure is `mu`.
    pub fn from_berger(mu: Measure1D) -> Result<Self, ShiftError> {
        WeightSeq::new(vec![], Tail::Berger { measure: mu })
    }

    pub fn with_prefix(mut self, prefix_sq: Vec<Rational>) -> Result<Self, ShiftError> {
        self.prefix_sq = prefix_sq;
        WeightSeq::new(self.prefix_sq, self.tail).map(|mut w| {
            w.offset = self.offset;
            w
        })
    }

    pub fn prefix_sq(&self) -> &[Rational] {
        &self.prefix_sq
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Number of weights, `None` if infinite.
    pub fn len(&self) -> Option<usize> {
        matches!(self.tail, Tail::None).then_some(self.prefix_sq.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn weight_sq(&self, k: usize) -> Result<Rational, ShiftError> {
        if let Some(w) = self.prefix_sq.get(k) {
            return Ok(w.clone());
        }
        let idx = k + self.offset;
        let big = |n: usize| Rational::from_int(n as u64);
        Ok(match &self.tail {
            Tail::Constant { value } => value.clone(),
            Tail::BergmanLike { value } => Rational::from_int(*value) - big(idx + 2).recip()?,
            Tail::AlphaFamily => {
                if idx == 0 {
                    Rational::new(1, 2)
                } else {
                    let p = Rational::pow2(idx as u32);
                    (&p + Rational::new(1, 2)) / (p + Rational::one())
                }
            }
            Tail::BetaRFamily { value } => {
                if idx == 0 {
                    Rational::new(3, 4) * value
                } else {
                    big(idx + 1) * big(idx + 3) / big(idx + 2).square()
                }
            }
            Tail::None => return Err(ShiftError::OutOfRange { index: k, len: self.prefix_sq.len() }),
            Tail::Recursive { phi0, phi1 } => {
                let mut w = self.prefix_sq.last().expect("seeded").clone();
                for _ in self.prefix_sq.len()..=k {
                    w = phi1 + phi0 / &w;
                }
                if !w.is_positive() {
                    return Err(ShiftError::NonPositive { index: k });
                }
                w
            }
            Tail::Berger { measure } => measure.moment(idx + 1) / measure.moment(idx),
        })
    }

    /// Squared weights `0..n`.
    pub fn weights_sq(&self, n: usize) -> Result<Vec<Rational>, ShiftError> {
        match &self.tail {
            Tail::Recursive { phi0, phi1 } => {
                let mut out: Vec<Rational> = self.prefix_sq.iter().take(n).cloned().collect();
                while out.len() < n {
                    let prev = out.last().expect("seeded");
                    let w = phi1 + phi0 / prev;
                    if !w.is_positive() {
                        return Err(ShiftError::NonPositive { index: out.len() });
                    }
                    out.push(w);
                }
                Ok(out)
            }
            _ => (0..n).map(|k| self.weight_sq(k)).collect(),
        }
    }

    /// The shift restricted to `M_h`: weights `α_h, α_{h+1}, …`.
    pub fn shifted(&self, h: usize) -> Result<WeightSeq, ShiftError> {
        if h <= self.prefix_sq.len() && !(h == self.prefix_sq.len() && matches!(self.tail, Tail::Recursive { .. })) {
            return Ok(WeightSeq {
                prefix_sq: self.prefix_sq[h..].to_vec(),
                tail: self.tail.clone(),
                offset: self.offset + h,
            });
        }
        let prefix_sq = match self.tail {
            Tail::Recursive { .. } => vec![self.weight_sq(h)?],
            Tail::None => return Err(ShiftError::OutOfRange { index: h, len: self.prefix_sq.len() }),
            _ => vec![],
        };
        Ok(WeightSeq { prefix_sq, tail: self.tail.clone(), offset: self.offset + h })
    }

    /// Moments `γ₀ = 1, …, γ_up_to`.
    pub fn gamma(&self, up_to: usize) -> Result<MomentTable, ShiftError> {
        let ws = self.weights_sq(up_to)?;
        let mut gammas = Vec::with_capacity(up_to + 1);
        gammas.push(Rational::one());
        for w in ws {
            let next = gammas.last().expect("nonempty") * &w;
            gammas.push(next);
        }
        Ok(MomentTable { gammas })
    }

    /// Squared weights nondecreasing on `[0, window]`.
    pub fn is_hyponormal(&self, window: usize) -> Result<bool, ShiftError> {
        let ws = self.weights_sq(self.clamp(window + 1))?;
        Ok(ws.windows(2).all(|p| p[0] <= p[1]))
    }

    fn clamp(&self, n: usize) -> usize {
        self.len().map_or(n, |len| n.min(len))
    }

    /// `(γ_{base+i+j})_{i,j=0..=order}`
    pub fn hankel_matrix(&self, order: usize, base: usize) -> Result<SymMatrix, ShiftError> {
        if order == 0 || order >= MAX_ORDER {
            return Err(ShiftError::BadOrder(order));
        }
        let g = self.gamma(base + 2 * order)?;
        Ok(SymMatrix::from_fn(order + 1, |i, j| g.get(base + i + j).clone())?)
    }

    pub fn hankel_psd(&self, order: usize, base: usize) -> Result<bool, ShiftError> {
        Ok(psd_check(&self.hankel_matrix(order, base)?))
    }

    /// `hankel_psd(k, base)` for every base in `[0, window]`.
    pub fn is_k_hyponormal(&self, k: usize, window: usize) -> Result<bool, ShiftError> {
        for base in 0..=window {
            if !self.hankel_psd(k, base)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equal squared weights on `[1, window]`.
    pub fn is_flat(&self, window: usize) -> Result<bool, ShiftError> {
        let ws = self.weights_sq(self.clamp(window + 1))?;
        Ok(ws.iter().skip(1).all(|w| *w == ws[1]))
    }

    /// `γ_k == ∫ t^k dμ` for all `k ≤ up_to`.
    pub fn verify_berger(&self, mu: &Measure1D, up_to: usize) -> Result<bool, ShiftError> {
        let g = self.gamma(up_to)?;
        Ok((0..=up_to).all(|k| *g.get(k) == mu.moment(k)))
    }

    /// Looks for a failing Hankel test when the weights contain an equal
    /// consecutive pair but are not flat.
    pub fn propagation_audit(&self, max_order: usize, window: usize) -> Result<Audit, ShiftError> {
        let ws = self.weights_sq(self.clamp(window + 1))?;
        if !ws.windows(2).any(|p| p[0] == p[1]) {
            return Ok(Audit::NoEqualPair);
        }
        if self.is_flat(window)? {
            return Ok(Audit::Flat);
        }
        for order in 2..=max_order.min(MAX_ORDER - 1) {
            for base in 0..=window {
                if !self.hankel_psd(order, base)? {
                    return Ok(Audit::Witness { order, base });
                }
            }
        }
        Ok(Audit::Inconclusive { max_order })
    }
}

/// `γ₀, γ₁, …`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentTable {
    gammas: Vec<Rational>,
}

impl MomentTable {
    pub fn get(&self, k: usize) -> &Rational {
        &self.gammas[k]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.gammas
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.gammas
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Audit {
    Flat,
    NoEqualPair,
    Witness { order: usize, base: usize },
    Inconclusive { max_order: usize },
}

/// `det H(2;k)` for `B₊^(ℓ)`, in closed form.
pub fn det_h2_closed(ell: u32, k: usize, gamma_k: &Rational) -> Rational {
    let l = Rational::from_int(ell);
    let n = |j: usize| Rational::from_int((k + j) as u64);
    let one = Rational::one();
    let num = Rational::from_int(2) * (&l + &one) * (n(2) * &l - &one).square() * (n(3) * &l - &one);
    let den = n(2).pow(3) * n(3).pow(3) * n(4).square() * n(5);
    gamma_k.pow(3) * num / den
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Telescope {
    AlphaHat,
    BetaHat,
}

/// Partial products of squared reciprocal weights:
/// `2·∏_{k=1..n}(2^k+1)/(2^k+1/2)` or `∏_{k=1..n}(k+2)²/((k+3)(k+1))`.
pub fn telescoping_product(kind: Telescope, n: usize) -> Rational {
    let half = Rational::new(1, 2);
    match kind {
        Telescope::AlphaHat => (1..=n).fold(Rational::from_int(2), |acc, k| {
            let p = Rational::pow2(k as u32);
            acc * (&p + Rational::one()) / (p + &half)
        }),
        Telescope::BetaHat => (1..=n).fold(Rational::one(), |acc, k| {
            let k = k as i64;
            acc * Rational::new((k + 2) * (k + 2), (k + 3) * (k + 1))
        }),
    }
}
