use std::process::{Command, Output};

fn drz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn mul_prints_the_ordered_form() {
    let o = drz(&["mul", "--n", "3", "z[1,3]*z[1,2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "z[1,2]*z[1,3] * (theta[2]-theta[3]+1)/(theta[2]-theta[3])");
    let o = drz(&["mul", "--n", "3", "--backend", "oracle", "--vars", "h", "z[1,3]", "z[1,2]"]);
    assert_eq!(stdout(&o).trim(), "z[1,2]*z[1,3] * (h[2]-h[3]+2)/(h[2]-h[3]+1)");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["mul", "--n", "2", "z[1,3]"][..],
        &["mul", "--n", "2", "z[1,"],
        &["mul", "--n", "2", "t[1] / 0"],
        &["mul", "z[1,2]"],
        &["mul", "--n", "2", "--backend", "magic", "t[1]"],
        &["table", "--target", "so3"],
        &["order", "--n", "3", "--order", "@/nonexistent/order.txt"],
        &["verify", "--n", "2", "--family", "9"],
        &["casimir", "--which", "cubic(2)"],
    ] {
        let o = drz(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn failed_checks_exit_1() {
    // the Z_2 coefficient t[1] of t[1] ⊗ 1 is not central
    let o = drz(&["cut", "--n", "2", "--m", "1", "--coefficients", "t[1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("central: no"));
}

#[test]
fn verify_reports_zero_residuals() {
    let o = drz(&["verify", "--n", "3", "--backend", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all residuals zero"));
    let o = drz(&["verify", "--n", "2", "--family", "4b", "--format", "json", "--all-instances"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["instances"], 2);
    assert_eq!(v["reports"][0]["residual_zero"], true);
}

#[test]
fn orders_and_structure_entries() {
    let o = drz(&["order", "--n", "3", "--order", "stord"]);
    assert_eq!(
        stdout(&o).trim(),
        "z[3,1] < z[2,1] < z[3,2] < t[1] < t[2] < t[3] < z[2,3] < z[1,2] < z[1,3]"
    );
    let dir = std::env::temp_dir().join(format!("drz-order-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("order.txt");
    std::fs::write(&file, "z[2,1] < t[2] < t[1] < z[1,2]\n").unwrap();
    let o = drz(&["order", "--n", "2", "--order", &format!("@{}", file.display())]);
    assert_eq!(stdout(&o).trim(), "z[2,1] < t[2] < t[1] < z[1,2]");
    let o = drz(&["sc", "--n", "3", "--pair", "1,3;1,2"]);
    assert_eq!(stdout(&o).trim(), "z[1,2]*z[1,3] * (theta[2]-theta[3]+1)/(theta[2]-theta[3])");
}

#[test]
fn normal_order_reads_json_files() {
    let o = drz(&["normal-order", "--n", "2", "--format", "json", "z[2,1]*z[1,2]*t[1]"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("drz-elem-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("x.json");
    std::fs::write(&file, &o.stdout).unwrap();
    let back = drz(&["normal-order", "--n", "2", "--format", "json", &format!("@{}", file.display())]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back), stdout(&o));
}

#[test]
fn braid_operators() {
    let o = drz(&["q", "--n", "2", "--i", "1", "z[1,2]"]);
    assert_eq!(stdout(&o).trim(), "z[2,1] * (-theta[1]+theta[2])/(theta[1]-theta[2]-2)");
    let defn = drz(&["q", "--n", "2", "--i", "1", "--definition", "z[1,2]"]);
    assert_eq!(stdout(&defn), stdout(&o));
    let o = drz(&["q", "--n", "3", "--word", "1,-1", "t[2]"]);
    assert_eq!(stdout(&o).trim(), "t[2]");
}

#[test]
fn casimir_checks() {
    let o = drz(&["casimir", "--which", "sl3_C1", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["central: yes", "fixed by q_1: yes", "fixed by q_2: yes", "fixed by epsilon: yes", "fixed by omega: yes"] {
        assert!(text.contains(line), "{line}");
    }
    let o = drz(&["casimir", "--n", "3", "--which", "sl2_C1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cut_of_a_casimir() {
    let o = drz(&["cut", "--n", "2", "--m", "1", "--which", "sl3_C2", "--coefficients", "--vars", "h"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("t[3]^2 h[3]^0: 1/3   central: yes"), "{text}");
    assert!(!text.contains("central: no"));
}

#[test]
fn tables_and_limits() {
    let o = drz(&["table", "--target", "sl2", "--vars", "h"]);
    assert_eq!(
        stdout(&o),
        "z[+]*t = t*z[+] * (h+4)/(h+2)\n\
         z[+]*z[-] = h + z[-]*z[+] * (h^2+3*h)/((h+1)*(h+2)) - t*t * 1/(h)\n\
         t*z[-] = z[-]*t * (h+2)/(h)\n"
    );
    let o = drz(&["table", "--target", "sl3", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(" = ")).count(), 28);
    let o = drz(&["limit", "--n", "3", "--ray", "2,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("PASS")).count(), 81);
}
