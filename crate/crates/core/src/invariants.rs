//! Cross-module properties stated over the public API.

use crate::classify::{
    certify_positive_definite, is_double_b, is_double_b_bar, is_dsdd, is_qdsdd, is_quasi_double_b,
    is_quasi_double_b_bar, symmetric_verdict, z_tensor_verdict, BarRoute, PdVerdict, QuasiRule,
};
use crate::heig::{heig_exact_n2, sshopm, ExactOptions, Shift, SshopmOptions};
use crate::inclusion::{all_sets, TildeMode};
use crate::Tensor;
use approx::assert_abs_diff_eq;
use proptest::prelude::*;

fn int_tensor(
    orders: std::ops::RangeInclusive<usize>,
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Tensor> {
    (orders, dims).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-3i32..=3, n.pow(m as u32))
            .prop_map(move |v| Tensor::new(m, n, v.into_iter().map(f64::from).collect()).unwrap())
    })
}

/// Symmetric tensor: each entry copied from its sorted multi-index.
fn symmetrize(t: &Tensor) -> Tensor {
    Tensor::from_fn(t.order(), t.dim(), |idx| {
        let mut s = idx.to_vec();
        s.sort_unstable();
        t.get(&s).unwrap()
    })
    .unwrap()
}

fn sym_tensor(
    orders: &'static [usize],
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Tensor> {
    (proptest::sample::select(orders), dims).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-3i32..=3, n.pow(m as u32)).prop_map(move |v| {
            symmetrize(&Tensor::new(m, n, v.into_iter().map(f64::from).collect()).unwrap())
        })
    })
}

/// Diagonal raised by up to 12 so that the dominance classes are often satisfied.
fn boosted(t: Tensor, boost: Vec<u8>) -> Tensor {
    let mut t = t;
    for i in 0..t.dim() {
        let idx = vec![i; t.order()];
        let v = t.get(&idx).unwrap() + f64::from(boost[i % boost.len()]);
        t.set(&idx, v).unwrap();
    }
    t
}

fn eigenvalues(t: &Tensor) -> Vec<f64> {
    heig_exact_n2(t, &ExactOptions::default())
        .unwrap()
        .iter()
        .map(|p| p.lambda)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plus_transform_is_z(t in int_tensor(1..=4, 1..=3)) {
        prop_assert!(t.plus_transform().is_z_tensor());
    }

    #[test]
    fn sign_normalize_idempotent(t in int_tensor(1..=4, 1..=3)) {
        let once = t.sign_normalize();
        let nonzero_diag = (0..t.dim()).all(|i| t.diag(i) != 0.0);
        let nonneg_diag = (0..t.dim()).all(|i| t.diag(i) >= 0.0);
        if nonzero_diag {
            prop_assert_eq!(once.sign_normalize(), once.clone());
        }
        if nonneg_diag && nonzero_diag {
            prop_assert_eq!(once, t);
        }
    }

    #[test]
    fn apply_power_linear_and_homogeneous(
        a in int_tensor(2..=4, 1..=3),
        seed in proptest::collection::vec(-2.0..2.0f64, 3),
        c in -2.0..2.0f64,
    ) {
        let n = a.dim();
        let x = &seed[..n];
        let b = a.scaled(-2.0).shift_diagonal(1.5);
        let sum = Tensor::new(a.order(), n, a.entries().iter().zip(b.entries()).map(|(p, q)| p + q).collect()).unwrap();
        let lhs = sum.apply_power(x).unwrap();
        let (pa, pb) = (a.apply_power(x).unwrap(), b.apply_power(x).unwrap());
        for k in 0..n {
            assert_abs_diff_eq!(lhs[k], pa[k] + pb[k], epsilon = 1e-9);
        }
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let m = a.order() as i32;
        assert_abs_diff_eq!(a.poly_value(&cx).unwrap(), c.powi(m) * a.poly_value(x).unwrap(), epsilon = 1e-8);
    }

    #[test]
    fn plus_route_matches_bar_classes(t in int_tensor(2..=4, 2..=3), boost in proptest::collection::vec(0u8..12, 3)) {
        let t = boosted(t, boost);
        let plus = t.sign_normalize().plus_transform();
        prop_assert_eq!(is_double_b_bar(&t, BarRoute::ViaAbar).holds, is_double_b(&plus).holds);
        prop_assert_eq!(
            is_quasi_double_b_bar(&t, BarRoute::ViaAbar, QuasiRule::Theorem).holds,
            is_quasi_double_b(&plus, QuasiRule::Theorem).holds
        );
    }

    #[test]
    fn sign_factorization(t in int_tensor(2..=4, 2..=3), boost in proptest::collection::vec(0u8..12, 3)) {
        let t = boosted(t, boost);
        prop_assume!((0..t.dim()).all(|i| t.diag(i) != 0.0));
        let d: Vec<f64> = (0..t.dim()).map(|i| t.diag(i).signum()).collect();
        let b = t.scale_rows_by_signs(&d).unwrap();
        prop_assert_eq!(is_double_b_bar(&t, BarRoute::ViaAlpha).holds, is_double_b(&b).holds);
        for rule in [QuasiRule::Theorem, QuasiRule::Definition] {
            prop_assert_eq!(
                is_quasi_double_b_bar(&t, BarRoute::ViaAlpha, rule).holds,
                is_quasi_double_b(&b, rule).holds
            );
        }
    }

    #[test]
    fn base_classes_are_inside_bar_classes(t in int_tensor(2..=4, 2..=3), boost in proptest::collection::vec(0u8..12, 3)) {
        let t = boosted(t, boost);
        if is_double_b(&t).holds {
            prop_assert!(is_double_b_bar(&t, BarRoute::ViaAlpha).holds);
        }
        for rule in [QuasiRule::Theorem, QuasiRule::Definition] {
            if is_quasi_double_b(&t, rule).holds {
                prop_assert!(is_quasi_double_b_bar(&t, BarRoute::ViaAlpha, rule).holds);
            }
        }
    }

    #[test]
    fn witnesses_reproduce_failures(t in int_tensor(1..=4, 1..=3)) {
        let verdicts = [
            is_double_b(&t),
            is_quasi_double_b(&t, QuasiRule::Theorem),
            is_quasi_double_b(&t, QuasiRule::Definition),
            is_double_b_bar(&t, BarRoute::ViaAbar),
            is_double_b_bar(&t, BarRoute::ViaAlpha),
            is_quasi_double_b_bar(&t, BarRoute::ViaAlpha, QuasiRule::Theorem),
            is_dsdd(&t),
            is_qdsdd(&t),
            z_tensor_verdict(&t),
            symmetric_verdict(&t),
        ];
        for v in verdicts {
            prop_assert_eq!(v.holds, v.witness.is_none());
            if let Some(w) = v.witness {
                prop_assert!(!w.inequality_holds(), "{:?}", w);
            }
        }
    }

    #[test]
    fn sets_shift_and_scale(t in sym_tensor(&[2, 4], 2..=3), c in 1u8..4, s in -3i8..=3) {
        let (c, s) = (f64::from(c), f64::from(s));
        let moved = t.scaled(c).shift_diagonal(s * c);
        for ((name, a), (_, b)) in all_sets(&t, TildeMode::Corrected).iter().zip(all_sets(&moved, TildeMode::Corrected).iter()) {
            let (ha, hb) = (a.hull().unwrap(), b.hull().unwrap());
            let tol = 1e-9 * (1.0 + hb.lo.abs().max(hb.hi.abs()));
            prop_assert!((hb.lo - (c * ha.lo + s * c)).abs() <= tol, "{} lo", name);
            prop_assert!((hb.hi - (c * ha.hi + s * c)).abs() <= tol, "{} hi", name);
        }
    }

    #[test]
    fn sshopm_reports_only_converged_pairs(t in sym_tensor(&[2, 4], 2..=3), seed in 0u64..1000) {
        let opts = SshopmOptions { starts: 4, seed, max_iters: 3000, ..Default::default() };
        let first = sshopm(&t, &opts).unwrap();
        for p in &first {
            prop_assert!(p.residual < opts.tol);
        }
        prop_assert_eq!(first, sshopm(&t, &opts).unwrap());
        let fixed = SshopmOptions { shift: Shift::Fixed(50.0), ..opts };
        for p in sshopm(&t, &fixed).unwrap() {
            prop_assert!(p.residual < opts.tol);
        }
    }

    // Zero diagonals are excluded: see `zero_diagonal_breaks_shared_zero_eigenvalue`.
    #[test]
    fn zero_eigenvalue_shared_with_sign_normalized(
        t in int_tensor(2..=4, 2..=2),
        flip in proptest::bool::ANY,
    ) {
        prop_assume!(t.diag(0) != 0.0 && t.diag(1) != 0.0);
        // make a zero eigenvalue likely: copy row 1 into row 0 up to sign
        let t = if flip {
            let mut data = t.entries().to_vec();
            let half = data.len() / 2;
            for k in 0..half {
                data[k] = -data[half + k];
            }
            match Tensor::new(t.order(), 2, data) {
                Ok(u) if u.diag(0) != 0.0 => u,
                _ => t,
            }
        } else {
            t
        };
        let has_zero = |u: &Tensor| eigenvalues(u).iter().any(|l| l.abs() < 1e-8);
        prop_assert_eq!(has_zero(&t), has_zero(&t.sign_normalize()));
    }

    #[test]
    fn double_b_even_symmetric_has_positive_spectrum(
        t in sym_tensor(&[2, 4, 6], 2..=2),
        boost in proptest::collection::vec(0u8..12, 2),
    ) {
        let t = symmetrize(&boosted(t, boost));
        let classes = is_double_b(&t).holds || is_quasi_double_b(&t, QuasiRule::Theorem).holds;
        if classes {
            let vals = eigenvalues(&t);
            prop_assert!(!vals.is_empty());
            prop_assert!(vals.iter().all(|l| *l > 0.0), "{:?}", vals);
        }
        if certify_positive_definite(&t).verdict == PdVerdict::Certified {
            prop_assert!(eigenvalues(&t).iter().all(|l| *l > 0.0));
        }
    }
}

#[test]
fn zero_diagonal_breaks_shared_zero_eigenvalue() {
    // A-bar zeroes the first row, which creates a zero eigenvalue A lacks
    let t = Tensor::new(2, 2, vec![0.0, 1.0, 1.0, 1.0]).unwrap();
    let has_zero = |u: &Tensor| eigenvalues(u).iter().any(|l| l.abs() < 1e-8);
    assert!(!has_zero(&t));
    assert!(has_zero(&t.sign_normalize()));
}

#[test]
fn dsdd_matrix_without_double_b_bar() {
    // m = 2 waives the row condition of DSDD but not condition (a) of double B
    let t = Tensor::new(2, 2, vec![1.0, -2.0, -1.0, 3.0]).unwrap();
    assert!(t.sign_normalize().is_z_tensor());
    assert!(is_dsdd(&t).holds);
    assert!(!is_double_b_bar(&t, BarRoute::ViaAbar).holds);
}
