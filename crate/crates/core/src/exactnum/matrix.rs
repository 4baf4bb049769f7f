//! Small exact symmetric matrices and positive-semidefiniteness tests.

use super::{NumError, Rational};

/// Largest supported order.
pub const MAX_ORDER: usize = 8;

/// Symmetric matrix of order `1..=8` with exact entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, NumError> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(NumError::MatrixOrder(order));
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(NumError::NotSquare);
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if rows[i][j] != rows[j][i] {
                    return Err(NumError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self, NumError> {
        if order == 0 || order > MAX_ORDER {
            return Err(NumError::MatrixOrder(order));
        }
        let mut entries = vec![Rational::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[j * order + i] = v.clone();
                entries[i * order + j] = v;
            }
        }
        Ok(SymMatrix { order, entries })
    }

    pub fn identity(order: usize) -> Result<Self, NumError> {
        Self::from_fn(order, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn det(&self) -> Rational {
        let idx: Vec<usize> = (0..self.order).collect();
        self.minor(&idx)
    }

    /// Determinant of the principal submatrix on `idx`, by Gaussian elimination.
    pub fn minor(&self, idx: &[usize]) -> Rational {
        let n = idx.len();
        if n == 0 {
            return Rational::one();
        }
        let mut a: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in (col + 1)..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    /// Leading principal minors of orders `1..=order`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        (1..=self.order)
            .map(|k| self.minor(&(0..k).collect::<Vec<_>>()))
            .collect()
    }
}

/// Exact PSD decision: every principal minor is nonnegative.
///
/// Fast path: when the leading minors of orders `1..n-1` are strictly
/// positive the leading block is positive definite, and PSD reduces to
/// `det >= 0` (the nested determinants test).
pub fn psd_check(m: &SymMatrix) -> bool {
    let n = m.order();
    let leading = m.leading_minors();
    if leading[..n - 1].iter().all(Rational::is_positive) {
        return !leading[n - 1].is_negative();
    }
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if m.minor(&idx).is_negative() {
            return false;
        }
    }
    true
}

/// PSD test for `[[a1, √p − √q], [√p − √q, a2]]` without square roots.
///
/// `a1·a2 ≥ (√p − √q)²` is `l ≥ −2√(pq)` with `l = a1·a2 − p − q`, which is
/// immediate for `l ≥ 0` and otherwise equivalent to `l² ≤ 4pq`.
pub fn psd2_radical_cross(a1: &Rational, a2: &Rational, p: &Rational, q: &Rational) -> Result<bool, NumError> {
    if p.is_negative() || q.is_negative() {
        return Err(NumError::NegativeRadicand);
    }
    if a1.is_negative() || a2.is_negative() {
        return Ok(false);
    }
    let l = a1 * a2 - p - q;
    if !l.is_negative() {
        return Ok(true);
    }
    Ok(l.square() <= Rational::from_int(4) * p * q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn m(rows: &[&[Rational]]) -> SymMatrix {
        SymMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn identity_is_psd() {
        assert!(psd_check(&SymMatrix::identity(3).unwrap()));
    }

    #[test]
    fn indefinite_two_by_two() {
        let a = m(&[&[rat(1, 1), rat(2, 1)], &[rat(2, 1), rat(1, 1)]]);
        assert_eq!(a.det(), rat(-3, 1));
        assert!(!psd_check(&a));
    }

    #[test]
    fn hilbert_three() {
        let h = SymMatrix::from_fn(3, |i, j| rat(1, (i + j + 1) as i64)).unwrap();
        // cofactor expansion along the first row
        let e = |i: usize, j: usize| h.get(i, j).clone();
        let cof = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        assert_eq!(cof, rat(1, 2160));
        assert_eq!(h.det(), rat(1, 2160));
        assert!(psd_check(&h));
    }

    #[test]
    fn psd_needs_all_principal_minors() {
        // leading minors are 0, 0, 0 but the (2,2) entry is negative
        let a = m(&[
            &[rat(0, 1), rat(0, 1), rat(0, 1)],
            &[rat(0, 1), rat(0, 1), rat(0, 1)],
            &[rat(0, 1), rat(0, 1), rat(-1, 1)],
        ]);
        assert!(!psd_check(&a));
        let singular = m(&[&[rat(1, 1), rat(1, 1)], &[rat(1, 1), rat(1, 1)]]);
        assert!(psd_check(&singular));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(SymMatrix::from_rows(vec![]), Err(NumError::MatrixOrder(0)));
        assert!(SymMatrix::identity(9).is_err());
        let asym = SymMatrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(1, 1)]]);
        assert_eq!(asym, Err(NumError::NotSymmetric { row: 0, col: 1 }));
    }

    #[test]
    fn radical_cross_examples() {
        let third = rat(1, 3);
        let sixth = rat(1, 6);
        assert!(psd2_radical_cross(&third, &third, &sixth, &sixth).unwrap());
        assert!(!psd2_radical_cross(&third, &rat(0, 1), &sixth, &rat(1, 24)).unwrap());
        assert!(psd2_radical_cross(&rat(0, 1), &rat(5, 1), &sixth, &sixth).unwrap());
        assert_eq!(
            psd2_radical_cross(&third, &third, &rat(-1, 1), &sixth),
            Err(NumError::NegativeRadicand)
        );
        assert!(!psd2_radical_cross(&rat(-1, 1), &third, &sixth, &sixth).unwrap());
    }

    #[test]
    fn radical_cross_boundary_is_exact() {
        // (√2 − √8)² = 2, so a1·a2 = 2 sits exactly on the boundary
        assert!(psd2_radical_cross(&rat(1, 1), &rat(2, 1), &rat(2, 1), &rat(8, 1)).unwrap());
        assert!(!psd2_radical_cross(&rat(1, 1), &rat(1999, 1000), &rat(2, 1), &rat(8, 1)).unwrap());
    }
}
