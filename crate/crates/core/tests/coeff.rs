use drz::coeff::{fa, fap, fb, fbp, fcp, int, named_factor, rat, CoeffFrac, NamedFactor, ThetaPoly};
use drz::lattice::Weight;
use num_rational::BigRational;
use proptest::prelude::*;

const N: usize = 3;

/// A random coefficient built from sums and products of `θ_ij + c` and
/// `1/(θ_ij + c)`.
fn coeff_strategy() -> impl Strategy<Value = CoeffFrac> {
    let atom = (1..=N, 1..=N, -3i64..=3, any::<bool>(), -4i64..=4).prop_map(|(i, j, c, inv, k)| {
        if i == j {
            CoeffFrac::from_int(N, k)
        } else if inv {
            CoeffFrac::inv_theta_diff(N, i, j, c)
        } else {
            CoeffFrac::theta_diff(N, i, j, c)
        }
    });
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.sub(&b)),
        ]
    })
}

fn point_strategy() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-40i64..40, 1i64..6), N).prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations_agree_with_evaluation(a in coeff_strategy(), b in coeff_strategy(), p in point_strategy()) {
        let (Ok(va), Ok(vb)) = (a.eval(&p), b.eval(&p)) else { return Ok(()) };
        prop_assert_eq!(a.add(&b).eval(&p).unwrap(), &va + &vb);
        prop_assert_eq!(a.sub(&b).eval(&p).unwrap(), &va - &vb);
        prop_assert_eq!(a.mul(&b).eval(&p).unwrap(), &va * &vb);
        // Only products of linear forms are invertible.
        if let Ok(q) = a.div(&b) {
            if let Ok(q) = q.eval(&p) {
                prop_assert_eq!(q * &vb, va);
            }
        }
    }

    #[test]
    fn canonical_form_is_unique(a in coeff_strategy(), b in coeff_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if let Ok(inv) = a.inv() {
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn shift_is_substitution(a in coeff_strategy(), p in point_strategy(), w in prop::collection::vec(-3i32..=3, N)) {
        let moved: Vec<BigRational> = p.iter().zip(&w).map(|(x, d)| x + int(*d as i64)).collect();
        if let Ok(v) = a.eval(&moved) {
            prop_assert_eq!(a.shift(&Weight(w.clone())).eval(&p).unwrap(), v);
        }
    }

    #[test]
    fn permutation_renames_variables(a in coeff_strategy(), p in point_strategy()) {
        // θ_k ↦ θ_{perm[k]}: evaluating the image at p reads p[perm[k]].
        let perm = [1usize, 2, 0];
        let pulled: Vec<BigRational> = (0..N).map(|k| p[perm[k]].clone()).collect();
        if let Ok(v) = a.eval(&pulled) {
            prop_assert_eq!(a.permute(&perm).eval(&p).unwrap(), v);
        }
    }

    #[test]
    fn json_round_trip(a in coeff_strategy()) {
        prop_assert_eq!(CoeffFrac::from_json(N, &a.to_json()).unwrap(), a);
    }
}

#[test]
fn named_factors_are_the_expected_ratios() {
    let n = 3;
    let th = |c: i64| CoeffFrac::theta_diff(n, 1, 2, c);
    let ratio = |a: i64, b: i64| th(a).div(&th(b)).unwrap();
    assert_eq!(fa(n, 1, 2), ratio(0, -1));
    assert_eq!(fap(n, 1, 2), ratio(-1, 0));
    assert_eq!(fb(n, 1, 2), ratio(-1, -2));
    assert_eq!(fbp(n, 1, 2), ratio(-2, -1));
    assert_eq!(fcp(n, 1, 2), ratio(-3, -2));
    assert!(fa(n, 1, 2).mul(&fap(n, 1, 2)).is_one());
    assert!(fb(n, 1, 2).mul(&fbp(n, 1, 2)).is_one());
    assert_eq!(named_factor(n, NamedFactor::CPrime, 1, 2).unwrap(), fcp(n, 1, 2));
    assert!(named_factor(n, NamedFactor::A, 2, 2).is_err());
    assert!(named_factor(n, NamedFactor::A, 1, 4).is_err());
}

#[test]
fn h_variables_are_shifted_thetas() {
    // h_k = θ_k + k
    for k in 1..=3 {
        let d = CoeffFrac::h(3, k).sub(&CoeffFrac::theta(3, k));
        assert_eq!(d.as_constant(), Some(int(k as i64)));
    }
}

#[test]
fn denominators_collect_into_powers() {
    let d = CoeffFrac::inv_theta_diff(2, 1, 2, 0);
    let sq = d.mul(&d);
    assert_eq!(sq.den().len(), 1);
    assert_eq!(sq.den()[0].1, 2);
    assert_eq!(d.pow(-2).unwrap(), CoeffFrac::theta_diff(2, 1, 2, 0).pow(2).unwrap());
    assert!(CoeffFrac::zero(2).inv().is_err());
}

#[test]
fn cancellation_against_numerator() {
    // (θ²−1)/(θ−1) = θ + 1 with θ = θ_1 − θ_2
    let a = CoeffFrac::theta_diff(2, 1, 2, 1).mul(&CoeffFrac::theta_diff(2, 1, 2, -1));
    let q = a.div(&CoeffFrac::theta_diff(2, 1, 2, -1)).unwrap();
    assert_eq!(q, CoeffFrac::theta_diff(2, 1, 2, 1));
    assert!(q.den().is_empty());
}

#[test]
fn polynomial_arithmetic() {
    let x = ThetaPoly::var(2, 0);
    let y = ThetaPoly::var(2, 1);
    let s = x.add(&y);
    let sq = s.mul(&s);
    assert_eq!(sq.total_degree(), 2);
    assert_eq!(sq.terms().len(), 3);
    assert_eq!(sq, s.pow(2));
    assert_eq!(sq.div_linear(&[1, 1], &int(0)), Some(s.clone()));
    assert_eq!(sq.eval(&[int(2), int(3)]), int(25));
    assert!(s.sub(&s).is_zero());
}
