use drz::center::*;
use drz::coeff::CoeffFrac;
use drz::lattice::GeneratorId;
use drz::zalg::{Algebra, Backend, ZElement};
use drz::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B: Backend = Backend::Rewrite;

#[test]
fn catalog_elements_are_central() {
    for n in 1..=3 {
        let alg = Algebra::default_for(n);
        for id in CentralId::all_for(n) {
            let x = central_element(&alg, id, B).unwrap();
            assert!(is_central(&alg, &x, B).unwrap(), "{id}");
            assert_eq!(x.weight().unwrap(), drz::lattice::Weight::zero(n));
        }
    }
}

#[test]
fn oracle_agrees_on_centrality_for_gl2() {
    let alg = Algebra::default_for(2);
    for id in CentralId::all_for(2) {
        let x = central_element(&alg, id, Backend::Oracle).unwrap();
        assert_eq!(x, central_element(&alg, id, B).unwrap());
        assert!(is_central(&alg, &x, Backend::Oracle).unwrap());
    }
}

#[test]
fn generators_are_not_central() {
    let alg = Algebra::default_for(2);
    assert!(!is_central(&alg, &alg.t(1), B).unwrap());
    assert_eq!(is_central(&alg, &alg.z(1, 2), B), Err(Error::NonzeroWeight));
}

#[test]
fn catalog_ids_round_trip() {
    for n in 1..=4 {
        for id in CentralId::all_for(n) {
            assert_eq!(id.to_string().parse::<CentralId>().unwrap(), id);
            assert_eq!(id.n(), n);
        }
    }
    for bad in ["linear_h(0)", "sl_linear(1)", "cubic(3)", "linear_t"] {
        assert!(bad.parse::<CentralId>().is_err(), "{bad}");
    }
}

fn random_block_word(rng: &mut impl Rng, n: usize, len: usize) -> ZElement {
    let w: Vec<ZElement> = (0..len)
        .map(|_| ZElement::generator(n, GeneratorId::new(rng.gen_range(1..=n), rng.gen_range(1..=n))))
        .collect();
    let alg = Algebra::default_for(n);
    let mut x = alg.product(&w, B).unwrap();
    if rng.gen_bool(0.5) && n >= 2 {
        x = x.mul_coeff_right(&CoeffFrac::theta_diff(n, 1, 2, rng.gen_range(2..5)));
    }
    x
}

fn random_tensor(rng: &mut impl Rng, split: &BlockSplit) -> ZElement {
    // products of higher degree in Z_3 are too slow for a unit test
    let l = rng.gen_range(0..=2);
    let x = random_block_word(rng, split.n(), l);
    let r = rng.gen_range(0..=2 - l);
    let y = random_block_word(rng, split.m(), r);
    split.tensor(&x, &y).unwrap()
}

#[test]
fn stabilization_defect_lies_in_the_ideal() {
    let split = BlockSplit::new(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let x = random_tensor(&mut rng, &split);
        let y = random_tensor(&mut rng, &split);
        let r = split.check_stabilization(&x, &y, B).unwrap();
        assert!(r.in_j, "{x:?} {y:?}");
    }
}

#[test]
fn cut_inverts_the_embedding() {
    let split = BlockSplit::new(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let x = random_tensor(&mut rng, &split);
        assert_eq!(split.pi(&split.iota(&x).unwrap(), B).unwrap(), x);
    }
}

#[test]
fn cut_is_multiplicative_against_a_central_element() {
    let split = BlockSplit::new(2, 1).unwrap();
    let c = central_element(split.full(), CentralId::Quadratic(3), B).unwrap();
    let y = split.full().mul(&split.full().z(3, 1), &split.full().z(1, 2), B).unwrap();
    assert!(split.check_cut_homomorphism(&c, &y, B).unwrap().holds());
    assert_eq!(
        split.check_cut_homomorphism(&split.full().t(1), &y, B).unwrap_err(),
        Error::NotCentral
    );
}

#[test]
fn lifts_and_their_products() {
    let split = BlockSplit::new(1, 2).unwrap();
    let x = ZElement::t(1, 1);
    let y = ZElement::z(2, 1, 2);
    // second-block letters are shifted past the first block
    assert_eq!(split.lift_right(&y).unwrap(), ZElement::z(3, 2, 3));
    let xy = split.tensor(&x, &y).unwrap();
    let yx = split.tensor_mul(&split.lift_right(&y).unwrap(), &split.lift_left(&x).unwrap()).unwrap();
    assert_eq!(xy, yx);
    assert!(split.lift_left(&y).is_err());
    assert!(BlockSplit::new(0, 2).is_err());
}

#[test]
fn cut_coefficients_are_central() {
    let split = BlockSplit::new(2, 1).unwrap();
    for id in [CentralId::Sl3C1, CentralId::Sl3C2, CentralId::Quadratic(3)] {
        let x = central_element(split.full(), id, B).unwrap();
        let cut = split.pi(&x, B).unwrap();
        assert!(split.is_central_tensor(&cut).unwrap(), "{id}");
        let parts = split.coefficients_in_last(&cut).unwrap();
        assert!(!parts.is_empty());
        for (i, j, c) in parts {
            assert!(is_central(split.left(), &c, B).unwrap(), "{id}: t^{i} h^{j}");
        }
    }
    assert!(BlockSplit::new(1, 2).unwrap().coefficients_in_last(&ZElement::one(3)).is_err());
}

#[test]
fn powers_split_a_polynomial() {
    // θ1² θ2 + 3 θ2 − 1
    let t1 = CoeffFrac::theta(2, 1);
    let t2 = CoeffFrac::theta(2, 2);
    let c = t1.mul(&t1).mul(&t2).add(&t2.mul(&CoeffFrac::from_int(2, 3))).sub(&CoeffFrac::one(2));
    let parts = powers_of(&c, 0).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.contains(&(2, t2.clone())));
    assert!(parts.contains(&(0, t2.mul(&CoeffFrac::from_int(2, 3)).sub(&CoeffFrac::one(2)))));
    assert!(powers_of(&CoeffFrac::inv_theta_diff(2, 1, 2, 0), 0).is_err());
}
