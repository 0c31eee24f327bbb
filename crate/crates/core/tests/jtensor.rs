use drz::coeff::{int, CoeffFrac};
use drz::jtensor::JCache;
use drz::lattice::{TotalOrder, Weight};
use drz::pbw::Pbw;
use drz::Error;

/// `J_{kα}` for `gl_2` is `f^k ⊗ e^k · (−1)^k / (k! Π_{j≤k} (θ_12 + j))`,
/// the closed solution of the one-term recurrence.
#[test]
fn rank_one_components_have_closed_form() {
    let pbw = Pbw::new(TotalOrder::default_for(2));
    let j = JCache::new(2);
    let mut expect = CoeffFrac::one(2);
    for k in 1..=5i64 {
        expect = expect.mul(&CoeffFrac::inv_theta_diff(2, 1, 2, k)).scale_by(&(-int(1) / int(k)));
        let c = j.component(&pbw, &Weight(vec![k as i32, -(k as i32)])).unwrap();
        assert_eq!(c.terms.len(), 1);
        let t = &c.terms[0];
        assert_eq!(t.lower, vec![(2, 1); k as usize]);
        assert_eq!(t.raise, vec![(1, 2); k as usize]);
        assert_eq!(t.coeff, expect, "k = {k}");
    }
    assert_eq!(j.len(), 6);
}

#[test]
fn weights_outside_the_cone_are_rejected() {
    let pbw = Pbw::new(TotalOrder::default_for(3));
    let j = JCache::new(3);
    assert!(matches!(j.component(&pbw, &Weight(vec![-1, 1, 0])), Err(Error::NotInPositiveCone(_))));
    assert!(matches!(j.component(&pbw, &Weight(vec![1, -1])), Err(Error::DimensionMismatch(..))));
    assert!(j.is_empty());
}

#[test]
fn components_are_weight_homogeneous() {
    let pbw = Pbw::new(TotalOrder::default_for(3));
    let j = JCache::new(3);
    let lambda = Weight(vec![2, -1, -1]);
    let c = j.component(&pbw, &lambda).unwrap();
    assert!(!c.terms.is_empty());
    for t in &c.terms {
        let mut w = vec![0i32; 3];
        for &(a, b) in &t.raise {
            w[a as usize - 1] += 1;
            w[b as usize - 1] -= 1;
        }
        assert_eq!(Weight(w), lambda);
        let mut v = vec![0i32; 3];
        for &(a, b) in &t.lower {
            v[a as usize - 1] += 1;
            v[b as usize - 1] -= 1;
        }
        assert_eq!(Weight(v), lambda.neg());
        assert!(t.raise.windows(2).all(|p| p[0] <= p[1]));
    }
}

/// At weight `α_1 + α_2` the three raising words `e_12 e_23`, `e_13`,
/// `e_23 e_12 = e_12 e_23 − e_13` span two PBW monomials on each side.
#[test]
fn highest_root_component_shape() {
    let pbw = Pbw::new(TotalOrder::default_for(3));
    let j = JCache::new(3);
    let c = j.component(&pbw, &Weight(vec![1, 0, -1])).unwrap();
    let raises: std::collections::BTreeSet<_> = c.terms.iter().map(|t| t.raise.clone()).collect();
    assert!(raises.iter().all(|r| r == &vec![(1, 3)] || r == &vec![(1, 2), (2, 3)]));
    assert!(c.terms.len() <= 4);
}
