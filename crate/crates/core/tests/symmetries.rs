use drz::coeff::CoeffFrac;
use drz::lattice::GeneratorId;
use drz::symmetries::*;
use drz::zalg::{tring, Algebra, Backend, ZElement};

const B: Backend = Backend::Rewrite;

fn gens(alg: &Algebra) -> Vec<ZElement> {
    GeneratorId::all(alg.n())
        .map(|g| alg.generator(g))
        .collect()
}

#[test]
fn closed_form_matches_defining_series() {
    for n in 2..=3 {
        let alg = Algebra::default_for(n);
        let mut inputs = gens(&alg);
        inputs.push(alg.mul(&alg.z(1, 2), &alg.z(2, 1), B).unwrap());
        inputs.push(
            alg.z(n, 1)
                .mul_coeff_right(&CoeffFrac::inv_theta_diff(n, 1, n, 2)),
        );
        for i in 1..n {
            for x in &inputs {
                assert_eq!(
                    zhelobenko_fast(&alg, i, x, B).unwrap(),
                    zhelobenko_oracle(&alg, i, x).unwrap()
                );
            }
        }
    }
}

#[test]
fn q_is_multiplicative() {
    let alg = Algebra::default_for(3);
    let g = gens(&alg);
    for i in 1..3 {
        for a in &g {
            for b in &g {
                let ab = alg.mul(a, b, B).unwrap();
                let lhs = zhelobenko_fast(&alg, i, &ab, B).unwrap();
                let qa = zhelobenko_fast(&alg, i, a, B).unwrap();
                let qb = zhelobenko_fast(&alg, i, b, B).unwrap();
                assert_eq!(lhs, alg.mul(&qa, &qb, B).unwrap());
            }
        }
    }
}

#[test]
fn braid_relation_and_inverses() {
    let alg = Algebra::default_for(3);
    let w1: BraidWord = "1,2,1".parse().unwrap();
    let w2: BraidWord = "2,1,2".parse().unwrap();
    for x in gens(&alg) {
        assert_eq!(
            w1.apply(&alg, &x, B).unwrap(),
            w2.apply(&alg, &x, B).unwrap()
        );
        for i in 1..3 {
            let y = zhelobenko_fast(&alg, i, &x, B).unwrap();
            assert_eq!(zhelobenko_inverse(&alg, i, &y, B).unwrap(), x);
            assert_eq!(
                zhelobenko_fast(&alg, i, &zhelobenko_inverse(&alg, i, &x, B).unwrap(), B).unwrap(),
                x
            );
        }
    }
}

#[test]
fn longest_element_closed_form_and_square() {
    let n = 3;
    let alg = Algebra::default_for(n);
    for g in GeneratorId::all(n) {
        let x = alg.generator(g);
        let q = q_longest(&alg, &x, B).unwrap();
        if !g.is_diagonal() {
            assert_eq!(q, q_longest_generator(n, g.i(), g.j()), "{g}");
        }
        assert_eq!(
            q_longest(&alg, &q, B).unwrap(),
            longest_conjugation(&x),
            "{g}"
        );
    }
}

#[test]
fn cartan_images_are_permuted() {
    let alg = Algebra::default_for(3);
    for w in ["1", "2", "1,2", "2,1", "1,2,1", "-1", "2,-1"] {
        let word: BraidWord = w.parse().unwrap();
        for i in 1..=3 {
            let lhs = word.apply(&alg, &tring(3, i), B).unwrap();
            assert_eq!(lhs, tring_image(3, &word, i), "word {w}, i = {i}");
        }
    }
}

#[test]
fn epsilon_is_an_anti_involution() {
    let alg = Algebra::default_for(3);
    let g = gens(&alg);
    for a in &g {
        assert_eq!(epsilon(&alg, &epsilon(&alg, a, B).unwrap(), B).unwrap(), *a);
        for b in &g {
            let ab = alg.mul(a, b, B).unwrap();
            let rhs = alg
                .mul(
                    &epsilon(&alg, b, B).unwrap(),
                    &epsilon(&alg, a, B).unwrap(),
                    B,
                )
                .unwrap();
            assert_eq!(epsilon(&alg, &ab, B).unwrap(), rhs);
        }
    }
}

#[test]
fn omega_is_an_involutive_automorphism() {
    let alg = Algebra::default_for(3);
    let g = gens(&alg);
    for a in &g {
        assert_eq!(omega(&alg, &omega(&alg, a, B).unwrap(), B).unwrap(), *a);
        for b in &g {
            let ab = alg.mul(a, b, B).unwrap();
            let rhs = alg
                .mul(&omega(&alg, a, B).unwrap(), &omega(&alg, b, B).unwrap(), B)
                .unwrap();
            assert_eq!(omega(&alg, &ab, B).unwrap(), rhs);
        }
    }
}

#[test]
fn involutions_intertwine_braid_generators() {
    for n in 2..=4 {
        let alg = Algebra::default_for(n);
        for x in gens(&alg) {
            for i in 1..n {
                let lhs = epsilon(&alg, &zhelobenko_fast(&alg, i, &x, B).unwrap(), B).unwrap();
                // The sign automorphism σ́_i² is needed on letters meeting {i, i+1} once.
                let rhs = zhelobenko_inverse(&alg, i, &epsilon(&alg, &x, B).unwrap(), B).unwrap();
                assert_eq!(lhs, sigma_squared(i, &rhs));
                let lhs = omega(&alg, &zhelobenko_fast(&alg, i, &x, B).unwrap(), B).unwrap();
                let rhs = zhelobenko_fast(&alg, n - i, &omega(&alg, &x, B).unwrap(), B).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn epsilon_needs_the_sign_on_mixed_letters() {
    let alg = Algebra::default_for(3);
    let x = alg.z(1, 2);
    let lhs = epsilon(&alg, &zhelobenko_fast(&alg, 2, &x, B).unwrap(), B).unwrap();
    let plain = zhelobenko_inverse(&alg, 2, &epsilon(&alg, &x, B).unwrap(), B).unwrap();
    assert_eq!(lhs, alg.z(3, 1).neg());
    assert_eq!(plain, alg.z(3, 1));
}

#[test]
fn sl2_family_contains_q() {
    let alg = Algebra::default_for(2);
    let p = Sl2AutParams::zhelobenko();
    for x in gens(&alg) {
        assert_eq!(
            sl2_general_automorphism(&alg, &p, &x, B).unwrap(),
            zhelobenko_fast(&alg, 1, &x, B).unwrap()
        );
    }
}

#[test]
fn sl2_family_members_are_homomorphisms() {
    let alg = Algebra::default_for(2);
    let g = gens(&alg);
    let params = [
        Sl2AutParams::new(1, CoeffFrac::one(2)).unwrap(),
        Sl2AutParams::new(-1, CoeffFrac::theta_diff(2, 1, 2, 3)).unwrap(),
    ];
    for p in &params {
        let f = |x: &ZElement| sl2_general_automorphism(&alg, p, x, B).unwrap();
        for a in &g {
            for b in &g {
                let ab = alg.mul(a, b, B).unwrap();
                assert_eq!(f(&ab), alg.mul(&f(a), &f(b), B).unwrap(), "β = {}", p.beta);
            }
        }
    }
    assert!(Sl2AutParams::new(2, CoeffFrac::one(2)).is_err());
    assert!(Sl2AutParams::new(1, CoeffFrac::zero(2)).is_err());
}

#[test]
fn braid_words_parse_and_print() {
    let w: BraidWord = "1, 2,-1".parse().unwrap();
    assert_eq!(w.0, vec![1, 2, -1]);
    assert_eq!(w.to_string(), "1,2,-1");
    assert!("1,0".parse::<BraidWord>().is_err());
    assert!("a".parse::<BraidWord>().is_err());
    assert_eq!(BraidWord::longest(3).0.len(), 3);
    assert_eq!(BraidWord::longest(4).0.len(), 6);
    let alg = Algebra::default_for(2);
    assert!(zhelobenko_fast(&alg, 2, &alg.t(1), B).is_err());
}
