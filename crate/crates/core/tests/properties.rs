use nalgebra::DMatrix;
use proptest::prelude::*;

use shiftlab::exactnum::{poly_nonneg_on_interval, psd2_radical_cross, psd_check, rat, Polynomial, Rational, SymMatrix};
use shiftlab::measures::{backward_ext_1var, extremal, measure_leq, Measure1D, Measure2D};
use shiftlab::shift1d::{Tail, WeightSeq};
use shiftlab::shift2d::{GridSpec, ShiftGrid2D};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn unit_point() -> impl Strategy<Value = Rational> {
    (1i64..=8, 1i64..=8).prop_map(|(a, b)| rat(a.min(b), a.max(b)))
}

/// Atomic measure on (0, 1] with 1 to 4 atoms.
fn atomic() -> impl Strategy<Value = Measure1D> {
    prop::collection::vec((unit_point(), 1i64..=5), 1..=4).prop_map(|atoms| {
        atoms.into_iter().fold(Measure1D::zero(), |m, (p, w)| m.add(&Measure1D::atom(p, rat(w, 1))))
    })
}

fn probability(m: Measure1D) -> Measure1D {
    let t = m.total_mass();
    m.scale(&t.recip().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn psd_agrees_with_eigenvalues(n in 2usize..=5, entries in prop::collection::vec(-4i64..=4, 25), gram in any::<bool>()) {
        let raw = |i: usize, j: usize| entries[i * 5 + j];
        let sym = |i: usize, j: usize| if gram {
            // BᵀB with B = raw is PSD, often singular
            (0..n).map(|k| raw(k, i) * raw(k, j)).sum::<i64>()
        } else {
            raw(i.min(j), i.max(j))
        };
        let m = SymMatrix::from_fn(n, |i, j| rat(sym(i, j), 1)).unwrap();
        let exact = psd_check(&m);
        if gram {
            prop_assert!(exact);
        }
        let f = DMatrix::from_fn(n, n, |i, j| sym(i, j) as f64);
        let min = f.symmetric_eigen().eigenvalues.min();
        if min.abs() > 1e-9 {
            prop_assert_eq!(exact, min > 0.0);
        }
    }

    #[test]
    fn radical_cross_matches_decimal_oracle(a1 in small_rat(), a2 in small_rat(), p in 0i64..=60, pd in 1i64..=9, q in 0i64..=60, qd in 1i64..=9) {
        let (p, q) = (rat(p, pd), rat(q, qd));
        let got = psd2_radical_cross(&a1, &a2, &p, &q).unwrap();
        if a1.is_negative() || a2.is_negative() {
            prop_assert!(!got);
        } else {
            let ulp = rat(1, 10).pow(50);
            let (sp, sq) = (p.sqrt_floor(50), q.sqrt_floor(50));
            let prod = &a1 * &a2;
            if sp.square() == p && sq.square() == q {
                prop_assert_eq!(got, (&sp - &sq).square() <= prod);
            } else {
                let lo_d = &sp - &sq - &ulp;
                let hi_d = &sp + &ulp - &sq;
                let hi = lo_d.square().max(hi_d.square());
                let lo = if lo_d.is_negative() && hi_d.is_positive() { Rational::zero() } else { lo_d.square().min(hi_d.square()) };
                if hi <= prod {
                    prop_assert!(got);
                } else if lo > prod {
                    prop_assert!(!got);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn squares_are_nonnegative(coeffs in prop::collection::vec(small_rat(), 1..=4), a in small_rat(), w in 1i64..=5) {
        let p = Polynomial::new(coeffs);
        let sq = p.mul(&p);
        let b = &a + rat(w, 2);
        prop_assert!(poly_nonneg_on_interval(&sq, &a, &b));
        let neg = sq.sub(&Polynomial::constant(rat(1, 1000)));
        // p² − 1/1000 is negative wherever p vanishes inside [a, b]
        let x = p.eval(&a);
        if x.is_zero() {
            prop_assert!(!poly_nonneg_on_interval(&neg, &a, &b));
        }
    }

    #[test]
    fn measure_order_is_a_partial_order(x in atomic(), y in atomic(), z in atomic()) {
        prop_assert!(measure_leq(&x, &x));
        let xy = x.add(&y);
        let xyz = xy.add(&z);
        prop_assert!(measure_leq(&x, &xy));
        prop_assert!(measure_leq(&xy, &xyz));
        prop_assert!(measure_leq(&x, &xyz));
        if measure_leq(&x, &y) && measure_leq(&y, &x) {
            prop_assert_eq!(&x, &y);
        }
        prop_assert!(!measure_leq(&xy, &x));
    }

    #[test]
    fn extremal_is_a_probability(s in atomic(), t in atomic(), c in 1i64..=4) {
        let mu = Measure2D::product(probability(s), probability(t)).scale(&rat(c, 3));
        prop_assert_eq!(extremal(&mu).unwrap().total_mass(), Rational::one());
    }

    #[test]
    fn backward_extension_shifts_moments(eta in atomic(), frac in 1i64..=8) {
        let eta = probability(eta);
        let norm = eta.inv_t_norm().unwrap().finite().unwrap();
        // β0² = frac/8 · 1/‖1/t‖ always satisfies the norm bound
        let b = rat(frac, 8) / &norm;
        let ext = backward_ext_1var(&eta, &b).unwrap();
        prop_assert!(ext.is_probability());
        for k in 0..=20 {
            prop_assert_eq!(ext.moment(k + 1), &b * eta.moment(k));
        }
    }

    #[test]
    fn tensor_grids_are_path_independent(ell in 1u32..=4, r in 1i64..=4, k1 in 0usize..25, k2 in 0usize..25) {
        let g = ShiftGrid2D::tensor(WeightSeq::bergman_like(ell), WeightSeq::beta_r_family(rat(r, 4)));
        prop_assert_eq!(g.gamma2((k1, k2)).unwrap(), g.gamma2_up_right((k1, k2)).unwrap());
    }

    #[test]
    fn weight_specs_round_trip(prefix in prop::collection::vec(unit_point(), 0..=3), c in unit_point(), kind in 0u8..4) {
        let tail = match kind {
            0 => Tail::Constant { value: c },
            1 => Tail::BergmanLike { value: 2 },
            2 => Tail::AlphaFamily,
            _ => Tail::BetaRFamily { value: c },
        };
        let ws = WeightSeq::new(prefix, tail).unwrap();
        let text = serde_json::to_string(&ws).unwrap();
        let back: WeightSeq = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.weights_sq(8).unwrap(), ws.weights_sq(8).unwrap());
        prop_assert_eq!(back, ws);
    }

    #[test]
    fn grid_specs_round_trip(a in unit_point(), y in unit_point()) {
        let specs = vec![
            GridSpec::Figure9 { y_sq: y.clone() },
            GridSpec::TotallyFlat { x_row: WeightSeq::s_a(a.clone()), y_sq: y.clone() },
            GridSpec::Tensor { x: WeightSeq::bergman_like(1), y: WeightSeq::s_a(a) },
        ];
        for spec in specs {
            let g = ShiftGrid2D::from_spec(spec).unwrap();
            let text = serde_json::to_string(&g).unwrap();
            let back: ShiftGrid2D = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.spec(), g.spec());
            prop_assert_eq!(back.gamma2((3, 2)).unwrap(), g.gamma2((3, 2)).unwrap());
        }
    }
}
