use drz::lattice::{cone_compare, default_order_cmp, product_weights, ConeOrdering, GeneratorId, TotalOrder, Weight};
use drz::Error;

fn z(i: usize, j: usize) -> GeneratorId {
    GeneratorId::z(i, j)
}

#[test]
fn roots_and_cone() {
    let a = Weight::root(3, 1, 2);
    let b = Weight::root(3, 2, 3);
    assert_eq!(a.add(&b), Weight::root(3, 1, 3));
    assert!(a.in_positive_cone());
    assert!(!a.neg().in_positive_cone());
    assert!(Weight::zero(3).in_positive_cone());
    assert_eq!(cone_compare(&b, &Weight::root(3, 1, 3)).unwrap(), ConeOrdering::Less);
    assert_eq!(cone_compare(&a, &b).unwrap(), ConeOrdering::Incomparable);
    assert_eq!(cone_compare(&a, &a).unwrap(), ConeOrdering::Equal);
    assert!(matches!(cone_compare(&a, &Weight::zero(2)), Err(Error::DimensionMismatch(..))));
    assert_eq!(Weight::root(3, 1, 3).norm2(), 2);
    assert_eq!(a.to_string(), "(1,-1,0)");
}

#[test]
fn default_order_sequence() {
    let seq = TotalOrder::default_for(3).sequence();
    let names: Vec<String> = seq.iter().map(|g| g.to_string()).collect();
    assert_eq!(
        names,
        ["z[3,1]", "z[3,2]", "z[2,1]", "t[3]", "t[2]", "t[1]", "z[2,3]", "z[1,2]", "z[1,3]"]
    );
    assert_eq!(default_order_cmp(z(1, 2), z(2, 3)), std::cmp::Ordering::Greater);
}

#[test]
fn stord_sequence() {
    let seq: Vec<String> = TotalOrder::stord().sequence().iter().map(|g| g.to_string()).collect();
    assert_eq!(seq, ["z[3,1]", "z[2,1]", "z[3,2]", "t[1]", "t[2]", "t[3]", "z[2,3]", "z[1,2]", "z[1,3]"]);
}

#[test]
fn orders_respect_the_cone() {
    let orders = [
        TotalOrder::default_for(4),
        TotalOrder::block_adapted(4, 2).unwrap(),
        TotalOrder::block_adapted(3, 2).unwrap(),
        TotalOrder::stord(),
    ];
    for ord in &orders {
        let n = ord.n();
        for a in GeneratorId::all(n) {
            for b in GeneratorId::all(n) {
                let wa = Weight::root(n, a.i(), a.j());
                let wb = Weight::root(n, b.i(), b.j());
                if cone_compare(&wa, &wb).unwrap() == ConeOrdering::Less {
                    assert!(ord.rank_of(a) < ord.rank_of(b), "{a} {b} in {:?}", ord.kind());
                }
            }
        }
    }
}

#[test]
fn block_order_groups() {
    let ord = TotalOrder::block_adapted(3, 2).unwrap();
    let seq = ord.sequence();
    let first_two: Vec<GeneratorId> = seq[..2].to_vec();
    assert!(first_two.iter().all(|g| g.i() == 3 && g.j() <= 2));
    assert!(seq[7..].iter().all(|g| g.i() <= 2 && g.j() == 3));
    assert!(TotalOrder::block_adapted(3, 3).is_err());
}

#[test]
fn order_files() {
    let text = "# lowest first\nz[3,1]\nz[2,1]\nz[3,2]\n\nt[1]\nt[2]\nt[3]\nz[2,3]\nz[1,2]\nz[1,3]\n";
    assert_eq!(TotalOrder::parse(3, text).unwrap().sequence(), TotalOrder::stord().sequence());
    let swapped = text.replace("z[3,1]\nz[2,1]", "z[2,1]\nz[3,1]");
    assert!(matches!(TotalOrder::parse(3, &swapped), Err(Error::InvalidOrder(_))));
    let short = "z[2,1]\nt[1]\nt[2]\n";
    assert!(TotalOrder::parse(2, short).is_err());
    assert!(TotalOrder::parse(2, "z[2,1]\nt[1]\nt[2]\nq[1]\n").is_err());
    assert!(TotalOrder::parse(2, "z[2,1]\nt[1]\nt[1]\nz[1,2]\n").is_err());
}

#[test]
fn sorting_monomials() {
    let ord = TotalOrder::default_for(2);
    let mut m = vec![z(1, 2), GeneratorId::t(1), z(2, 1)];
    assert!(!ord.is_sorted(&m));
    ord.sort(&mut m);
    assert_eq!(m, vec![z(2, 1), GeneratorId::t(1), z(1, 2)]);
}

#[test]
fn product_weight_sets() {
    let w1 = product_weights(2, 1);
    assert_eq!(w1.len(), 3);
    let w2 = product_weights(2, 2);
    assert!(w2.contains(&Weight(vec![2, -2])));
    assert!(w2.contains(&Weight::zero(2)));
    assert_eq!(w2.len(), 5);
}
