use std::process::Command;

fn tameroot(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tameroot"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

const WORKED: &str = "-8,12,8,-8,-8,0,1";

#[test]
fn local_worked_example() {
    let (code, out) = tameroot(&["local", "--f", WORKED, "--p", "13"]);
    assert_eq!(code, 0);
    assert!(out.contains("m_8=1") && out.contains("W = -1"), "{out}");
}

#[test]
fn local_json_round_trips() {
    let (code, out) = tameroot(&["local", "--f", WORKED, "--p", "13", "--json"]);
    assert_eq!(code, 0);
    let r: tameroot_cli::LocalReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap(), out);
}

#[test]
fn global_json_round_trips() {
    let (code, out) = tameroot(&["global", "--f", WORKED, "--conductor", "28561", "--json"]);
    assert_eq!(code, 0);
    let r: tameroot::corpus::ResultRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(r.global_w, Some(tameroot::rootnum::Sign::Minus));
    assert_eq!(serde_json::to_string_pretty(&r).unwrap(), out);
}

#[test]
fn exit_codes() {
    assert_eq!(tameroot(&["local", "--f", "1,0,2,0,1", "--p", "3"]).0, 3);
    assert_eq!(tameroot(&["local", "--f", WORKED, "--p", "2"]).0, 2);
    assert_eq!(tameroot(&["global", "--f", WORKED]).0, 6);
    assert_eq!(
        tameroot(&["global", "--f", WORKED, "--conductor", "57122"]).0,
        2
    );
    assert_eq!(tameroot(&["frobnicate"]).0, 64);
    assert_eq!(
        tameroot(&["twist", "--f", WORKED, "--d", "6", "--conductor", "28561"]).0,
        64
    );
}

#[test]
fn lawful_and_twist() {
    let (code, out) = tameroot(&["lawful", "--f", "1,2,1,2,6,4,1", "--conductor", "169"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("verdict: good\n"), "{out}");
    let (code, out) = tameroot(&[
        "twist",
        "--f",
        "1,2,1,2,6,4,1",
        "--d",
        "5",
        "--conductor",
        "169",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("W twisted by d = 5: +1"), "{out}");
}

#[test]
fn scan_reports_mismatches() {
    let dir = std::env::temp_dir().join(format!("tameroot-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    std::fs::write(
        &path,
        "coeffs;label;conductor;expected\n1,2,1,2,6,4,1;a;169;evil\n",
    )
    .unwrap();
    assert_eq!(tameroot(&["scan", path.to_str().unwrap()]).0, 1);
    std::fs::write(
        &path,
        "coeffs;label;conductor;expected\n1,2,1,2,6,4,1;a;169;good\n",
    )
    .unwrap();
    assert_eq!(tameroot(&["scan", path.to_str().unwrap()]).0, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
