use drz::coeff::CoeffFrac;
use drz::lattice::{GeneratorId, TotalOrder};
use drz::render::Vars;
use drz::table::*;
use drz::zalg::{Algebra, Backend};

const B: Backend = Backend::Rewrite;

/// `h + c` in the single Cartan variable `h` of the `sl_2` table.
fn h(c: i64) -> CoeffFrac {
    CoeffFrac::theta(1, 1).add(&CoeffFrac::from_int(1, c))
}

fn ratio(p: CoeffFrac, q: CoeffFrac) -> CoeffFrac {
    p.mul(&q.inv().unwrap())
}

#[test]
fn relation_counts() {
    for (target, count) in [("sl2", 3), ("sl3", 28), ("gl1", 0), ("gl2", 6), ("gl3", 36)] {
        let t: Target = target.parse().unwrap();
        let order = if target == "sl3" { TotalOrder::stord() } else { TotalOrder::default_for(t.n()) };
        let table = emit_table(t, &order, B).unwrap();
        assert_eq!(table.relations.len(), count, "{target}");
    }
    assert!("gl4".parse::<Target>().is_err());
    assert!("so3".parse::<Target>().is_err());
}

#[test]
fn sl2_relations() {
    let table = emit_table(Target::Sl2, &TotalOrder::default_for(2), B).unwrap();
    let zp = Letter::Gl(GeneratorId::z(1, 2));
    let zm = Letter::Gl(GeneratorId::z(2, 1));
    let t = Letter::Simple(1);
    let find = |l: Letter, r: Letter| table.relations.iter().find(|x| x.left == l && x.right == r).unwrap();

    let r = find(zp, t);
    assert_eq!(r.rhs.len(), 1);
    assert_eq!(r.coeff_of(&[t, zp]).unwrap(), &ratio(h(4), h(2)));

    let r = find(zp, zm);
    assert_eq!(r.rhs.len(), 3);
    assert_eq!(r.coeff_of(&[]).unwrap(), &h(0));
    assert_eq!(r.coeff_of(&[t, t]).unwrap(), &ratio(CoeffFrac::from_int(1, -1), h(0)));
    let expect = h(0).mul(&h(3)).mul(&h(1).inv().unwrap()).mul(&h(2).inv().unwrap());
    assert_eq!(r.coeff_of(&[zm, zp]).unwrap(), &expect);

    let r = find(t, zm);
    assert_eq!(r.coeff_of(&[zm, t]).unwrap(), &ratio(h(2), h(0)));
}

#[test]
fn gl_tables_are_structure_constants() {
    for n in 2..=3 {
        let order = TotalOrder::default_for(n);
        let alg = Algebra::new(order.clone());
        let table = emit_table(Target::Gl(n), &order, B).unwrap();
        for r in &table.relations {
            let (Letter::Gl(a), Letter::Gl(b)) = (r.left, r.right) else { panic!("sl letter in a gl table") };
            assert_eq!(order.cmp(a, b), std::cmp::Ordering::Greater);
            let x = alg.mul(&alg.generator(a), &alg.generator(b), Backend::Oracle).unwrap();
            let expect: Vec<_> = x.iter().map(|(m, c)| (m.iter().map(|g| Letter::Gl(*g)).collect::<Vec<_>>(), c.clone())).collect();
            assert_eq!(r.rhs.len(), expect.len());
            for (m, c) in expect {
                assert_eq!(r.coeff_of(&m), Some(&c));
            }
        }
    }
}

#[test]
fn sl3_table_under_standard_order() {
    let table = emit_table(Target::Sl3, &TotalOrder::stord(), B).unwrap();
    let first = &table.relations[0];
    assert_eq!(first.left, Letter::Gl(GeneratorId::z(1, 3)));
    assert_eq!(first.right, Letter::Gl(GeneratorId::z(1, 2)));
    // t letters never bring the central element back
    for r in &table.relations {
        assert!(r.rhs.iter().all(|(m, _)| !m.contains(&Letter::Center)), "{:?}", r.left);
    }
    let text = table.to_text(Vars::H);
    assert_eq!(text.lines().count(), 28);
    assert!(text.starts_with("z[a+b]*z[a] = z[a]*z[a+b] * (h[b]+2)/(h[b]+1)"), "{text}");
    assert!(table.to_latex(Vars::Theta).contains("z_{\\alpha+\\beta}"));
}

#[test]
fn tables_round_trip_through_json() {
    for t in [Target::Sl2, Target::Sl3, Target::Gl(2)] {
        let order = if t == Target::Sl3 { TotalOrder::stord() } else { TotalOrder::default_for(t.n()) };
        let table = emit_table(t, &order, B).unwrap();
        let back = Table::from_json(&table.to_json()).unwrap();
        assert_eq!(back, table);
    }
    assert!(Table::from_json(&serde_json::json!({"target": "sl2"})).is_err());
}

#[test]
fn sl_substitution_requires_translation_invariance() {
    // θ1 − θ2 = h + 1 is invariant, θ1 alone is not
    let ok = gl_to_sl_coeff(&CoeffFrac::theta_diff(2, 1, 2, 0)).unwrap();
    assert_eq!(ok, h(1));
    assert!(gl_to_sl_coeff(&CoeffFrac::theta(2, 1)).is_err());
}
