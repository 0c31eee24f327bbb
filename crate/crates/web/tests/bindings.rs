use drz_web::{normal_form, relation_summary, relation_table};

#[test]
fn normal_form_orders_a_product() {
    let s = normal_form(3, "z[1,3]*z[1,2]", "text", "theta").unwrap();
    assert_eq!(s, "z[1,2]*z[1,3] * (theta[2]-theta[3]+1)/(theta[2]-theta[3])");
}

#[test]
fn normal_form_reports_parse_errors() {
    let e = normal_form(2, "z[1,3]", "text", "theta").unwrap_err();
    assert!(e.contains("out of range"), "{e}");
    assert!(normal_form(9, "t[1]", "text", "theta").is_err());
}

#[test]
fn relation_summary_passes_for_gl2() {
    let v: serde_json::Value = serde_json::from_str(&relation_summary(2, "oracle").unwrap()).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn sl2_table_has_three_relations() {
    let s = relation_table("sl2", "text", "h").unwrap();
    assert_eq!(s.lines().count(), 3);
    assert!(s.starts_with("z[+]*t = t*z[+] * (h+4)/(h+2)"), "{s}");
}
