use drz::coeff::{CoeffFrac, int};
use drz::lattice::{GeneratorId, TotalOrder};
use drz::pbw::mono_weight;
use drz::zalg::*;
use drz::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_coeff(rng: &mut impl Rng, n: usize) -> CoeffFrac {
    let i = rng.gen_range(1..=n);
    let j = rng.gen_range(1..=n);
    let k = rng.gen_range(-3..=3);
    match rng.gen_range(0..3) {
        0 if i != j => CoeffFrac::theta_diff(n, i, j, k),
        1 if i != j => CoeffFrac::inv_theta_diff(n, i, j, k),
        _ => CoeffFrac::from_int(n, k.max(1)),
    }
}

fn random_generator(rng: &mut impl Rng, n: usize) -> GeneratorId {
    GeneratorId::new(rng.gen_range(1..=n), rng.gen_range(1..=n))
}

/// A sum of one or two ordered monomials of length ≤ 2.
fn random_element(rng: &mut impl Rng, alg: &Algebra) -> ZElement {
    let n = alg.n();
    let mut x = ZElement::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let mut m: Vec<GeneratorId> = (0..rng.gen_range(0..=2)).map(|_| random_generator(rng, n)).collect();
        alg.order().sort(&mut m);
        x.add_term(m, random_coeff(rng, n));
    }
    x
}

#[test]
fn product_of_two_raising_generators() {
    let alg = Algebra::default_for(3);
    let x = alg.mul(&alg.z(1, 3), &alg.z(1, 2), Backend::Rewrite).unwrap();
    let expect = ZElement::monomial(
        vec![GeneratorId::z(1, 2), GeneratorId::z(1, 3)],
        CoeffFrac::theta_diff(3, 2, 3, 1).mul(&CoeffFrac::inv_theta_diff(3, 2, 3, 0)),
    );
    assert_eq!(x, expect);
    assert_eq!(alg.mult_oracle(&alg.z(1, 3), &alg.z(1, 2)).unwrap(), expect);
}

#[test]
fn unit_and_coefficients() {
    let alg = Algebra::default_for(2);
    let one = ZElement::one(2);
    let z = alg.z(1, 2);
    for b in [Backend::Oracle, Backend::Rewrite] {
        assert_eq!(alg.mul(&one, &z, b).unwrap(), z);
        assert_eq!(alg.mul(&z, &one, b).unwrap(), z);
    }
    // c · z_12 = z_12 · shift(c, ε_1 − ε_2)
    let c = CoeffFrac::theta(2, 1);
    let left = alg.mul(&alg.scalar(c.clone()), &z, Backend::Rewrite).unwrap();
    assert_eq!(left, z.mul_coeff_right(&CoeffFrac::theta(2, 1).add(&CoeffFrac::one(2))));
}

#[test]
fn oracle_product_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alg = Algebra::default_for(3);
    for _ in 0..12 {
        let a = alg.generator(random_generator(&mut rng, 3));
        let b = alg.generator(random_generator(&mut rng, 3));
        let c = alg.generator(random_generator(&mut rng, 3));
        let ab = alg.mult_oracle(&a, &b).unwrap();
        let bc = alg.mult_oracle(&b, &c).unwrap();
        assert_eq!(alg.mult_oracle(&ab, &c).unwrap(), alg.mult_oracle(&a, &bc).unwrap());
    }
}

#[test]
fn backends_agree_on_generator_pairs() {
    for n in 2..=3 {
        let alg = Algebra::default_for(n);
        for a in GeneratorId::all(n) {
            for b in GeneratorId::all(n) {
                let (x, y) = (alg.generator(a), alg.generator(b));
                assert_eq!(alg.mult_oracle(&x, &y).unwrap(), alg.mult_ordered(&x, &y).unwrap(), "{a} {b}");
            }
        }
    }
}

#[test]
fn backends_agree_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let alg = Algebra::new(TotalOrder::stord());
    for _ in 0..10 {
        let a = random_element(&mut rng, &alg);
        let b = random_element(&mut rng, &alg);
        assert_eq!(alg.mult_oracle(&a, &b).unwrap(), alg.mult_ordered(&a, &b).unwrap());
    }
}

#[test]
fn products_are_weight_graded() {
    let alg = Algebra::default_for(3);
    for a in GeneratorId::all(3) {
        for b in GeneratorId::all(3) {
            let x = alg.mul(&alg.generator(a), &alg.generator(b), Backend::Rewrite).unwrap();
            let w = mono_weight(3, &[a, b]);
            for (m, _) in x.iter() {
                assert_eq!(mono_weight(3, m), w);
                assert!(alg.is_ordered(m));
                assert!(m.len() <= 2);
            }
        }
    }
}

#[test]
fn ordered_pairs_multiply_to_themselves() {
    let alg = Algebra::default_for(3);
    let seq = alg.order().sequence();
    for (k, &a) in seq.iter().enumerate() {
        for &b in &seq[k..] {
            let x = alg.mul(&alg.generator(a), &alg.generator(b), Backend::Oracle).unwrap();
            assert_eq!(x, ZElement::monomial(vec![a, b], CoeffFrac::one(3)), "{a} {b}");
        }
    }
}

#[test]
fn relations_hold_for_small_n() {
    for n in 1..=3 {
        let alg = Algebra::default_for(n);
        for backend in [Backend::Oracle, Backend::Rewrite] {
            let reports = verify_relations(&alg, &Family::ALL, backend).unwrap();
            for r in &reports {
                assert!(r.residual_zero(), "n={n} {}: {:?}", r.label(), r.residual);
            }
        }
    }
}

#[test]
fn family_sizes() {
    // ordered pairs of distinct indices sharing one index; four distinct
    // indices; triples; pairs
    assert_eq!(enumerate(3, Family::One).len(), 6);
    assert_eq!(enumerate(3, Family::Two).len(), 0);
    assert!(!enumerate(4, Family::Two).is_empty());
    assert_eq!(enumerate(3, Family::FourA).len(), 3);
    assert_eq!(enumerate(3, Family::FourB).len(), 6);
    assert!(relation_family(3, Family::FourB, &[1, 4], None).is_err());
    assert_eq!(Family::parse_list("4b,1").unwrap(), vec![Family::One, Family::FourB]);
    assert!(Family::parse_list("5").is_err());
}

#[test]
fn a_broken_relation_is_detected() {
    let alg = Algebra::default_for(2);
    let mut r = relation_family(2, Family::FourB, &[1, 2], None).unwrap();
    r.terms[0].coeff = r.terms[0].coeff.scale_by(&int(2));
    assert!(!check_instance(&alg, &r, Backend::Rewrite).unwrap().residual_zero());
}

#[test]
fn cartan_images_commute() {
    for n in 2..=3 {
        let alg = Algebra::default_for(n);
        for i in 1..=n {
            for j in 1..=n {
                let c = alg.commutator(&tring(n, i), &tring(n, j), Backend::Rewrite).unwrap();
                assert!(c.is_zero(), "n={n} [{i},{j}]");
            }
        }
    }
}

#[test]
fn variable_changes_are_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alg = Algebra::default_for(3);
    for _ in 0..10 {
        let x = random_element(&mut rng, &alg);
        assert_eq!(change_vars_tring(Direction::From, &change_vars_tring(Direction::To, &x)), x);
        assert_eq!(change_vars_hs(Direction::From, &change_vars_hs(Direction::To, &x)), x);
    }
    // t̊_1 = t_1
    assert_eq!(tring(3, 1), ZElement::t(3, 1));
    for (l, row) in t_in_tring(3).iter().enumerate() {
        let back = tring_in_t(3);
        for k in 0..3 {
            let mut s = CoeffFrac::zero(3);
            for (m, c) in row.iter().enumerate() {
                s = s.add(&c.mul(&back[m][k]));
            }
            assert_eq!(s.is_one(), l == k);
            assert!(l == k || s.is_zero());
        }
    }
}

#[test]
fn denominators_are_positive_root_factors() {
    for n in 2..=3 {
        let v = denominator_violations(&Algebra::default_for(n)).unwrap();
        assert!(v.is_empty(), "n={n}: {v:?}");
    }
    assert!(has_admissible_denominator(&CoeffFrac::inv_theta_diff(3, 1, 3, -1)));
    assert!(!has_admissible_denominator(&CoeffFrac::inv_theta_diff(3, 1, 3, -2)));
    assert!(!has_admissible_denominator(&CoeffFrac::inv_theta_diff(3, 3, 1, 2)));
}

#[test]
fn homogeneous_limit_is_commutative() {
    let alg = Algebra::default_for(3);
    let ray = [int(2), int(3), int(5)];
    for a in GeneratorId::all(3) {
        for b in GeneratorId::all(3) {
            let r = homogeneous_limit_check(&alg, a, b, &ray).unwrap();
            assert!(r.passes(), "{a} {b}");
        }
    }
    assert!(matches!(ray_images(3, &[int(1)]), Err(Error::InvalidArgument(_))));
}

#[test]
fn element_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = Algebra::default_for(3);
    for _ in 0..10 {
        let x = random_element(&mut rng, &alg);
        let v = x.to_json();
        assert_eq!(v["n"], 3);
        assert!(v["terms"].is_array());
        assert_eq!(ZElement::from_json(&v).unwrap(), x);
    }
}

#[test]
fn structure_table_is_cached() {
    let alg = Algebra::default_for(2);
    let t = alg.structure_table().unwrap();
    assert_eq!(t.len(), 6);
    let a = alg.structure_constants(GeneratorId::z(1, 2), GeneratorId::z(2, 1)).unwrap();
    let b = alg.structure_constants(GeneratorId::z(1, 2), GeneratorId::z(2, 1)).unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
}
