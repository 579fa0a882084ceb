use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn rhpwn(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rhpwn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = rhpwn(args, None);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn nogo_threshold_is_psd() {
    let v = json_ok(&["nogo", "--n", "3", "--mu", "18"]);
    assert_eq!(v["d2_at_mu"], "0");
    assert_eq!(v["threshold"], "18");
    assert_eq!(v["verdict"], "PSD");
    let v = json_ok(&["nogo", "--n", "3", "--mu", "1"]);
    assert_eq!(v["d2_at_mu"], "-1836");
    assert_eq!(v["verdict"], "NOT_PSD");
}

#[test]
fn nogo_out_of_scope_exits_2() {
    let out = rhpwn(&["nogo", "--n", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "domain");
}

#[test]
fn kernel_two_two() {
    let v = json_ok(&["kernel", "--n", "2", "--k", "2"]);
    assert_eq!(strings(&v["pi"]), ["0", "16", "8"]);
    assert_eq!(v["bruteforce_agrees"], true);
}

#[test]
fn stirling_value() {
    assert_eq!(json_ok(&["stirling", "--n", "3", "--k", "2"])["value"], "-3");
}

#[test]
fn commutator_from_stdin_and_file() {
    let payload = r#"{"left":[{"tag":"RHPWN","n":0,"k":2,"pieces":[{"a":"0","b":"1","re":"1"}]}],
                      "right":[{"tag":"RHPWN","n":2,"k":0,"pieces":[{"a":"1/2","b":"3","re":"2","im":"-1"}]}]}"#;
    let out = rhpwn(&["commutator"], Some(payload));
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // [B^0_2(χ), B^2_0(g)] = 4 B^1_1(χ g)
    assert_eq!(v[0]["n"], 1);
    assert_eq!(v[0]["k"], 1);
    assert_eq!(v[0]["pieces"][0]["a"], "1/2");
    assert_eq!(v[0]["pieces"][0]["b"], "1");
    assert_eq!(v[0]["pieces"][0]["re"], "8");
    assert_eq!(v[0]["pieces"][0]["im"], "-4");

    let path = std::env::temp_dir().join(format!("rhpwn-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, payload).unwrap();
    let from_file = rhpwn(&["commutator", "--input", path.to_str().unwrap()], None);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file.stdout, out.stdout);
}

#[test]
fn involution_round_trips() {
    let payload = r#"[{"tag":"WINFTY","n":3,"k":-2,"pieces":[{"a":"1/4","b":"1/3","re":"1/2","im":"5"}]}]"#;
    let once = rhpwn(&["involute", "--json", payload], None);
    assert!(once.status.success());
    let text = String::from_utf8(once.stdout).unwrap();
    let twice = json_ok(&["involute", "--json", &text]);
    let original: Value = serde_json::from_str(payload).unwrap();
    assert_eq!(twice[0]["n"], original[0]["n"]);
    assert_eq!(twice[0]["k"], original[0]["k"]);
    assert_eq!(twice[0]["pieces"][0]["im"], "5");
    assert_eq!(twice[0]["pieces"][0]["re"], "1/2");
}

#[test]
fn schema_error_reports_pointer() {
    let out = rhpwn(
        &["gram", "--json", r#"{"n":2,"fs":[[{"a":"0","b":"1","re":"1/10"}],[{"a":"0","b":"oops","re":"1"}]]}"#],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "schema");
    assert_eq!(e["error"]["pointer"], "/fs/1/0/b");
    assert!(out.stdout.is_empty());
}

#[test]
fn inadmissible_function_is_a_domain_error() {
    let out = rhpwn(&["inner-product", "--json", r#"{"n":2,"f":[{"a":"0","b":"1","re":"1"}],"g":[]}"#], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rhpwn(&["kernel", "--n", "2"], None).status.code(), Some(2));
    assert_eq!(rhpwn(&["no-such-command"], None).status.code(), Some(2));
}

#[test]
fn vacuum_moment_modes_agree_for_n_2() {
    let word = r#"[{"n":0,"k":2},{"n":1,"k":1},{"n":2,"k":0}]"#;
    let u = json_ok(&["vacuum-moment", "--json", &format!(r#"{{"word":{word}}}"#)]);
    let t = json_ok(&["vacuum-moment", "--json", &format!(r#"{{"word":{word},"truncated_order":2}}"#)]);
    assert_eq!(u["mu_poly"], t["mu_poly"]);
    // B^1_1 B^2_0 Φ = (2 + μ/2) B^2_0 Φ and ‖B^2_0 Φ‖² = 2μ
    assert_eq!(strings(&u["mu_poly"]), ["0", "4", "1"]);
}

#[test]
fn gram_and_inner_product_agree() {
    let f = r#"[{"a":"0","b":"1","re":"1/10"},{"a":"1","b":"2","re":"-1/20","im":"1/30"}]"#;
    let g = r#"[{"a":"1/2","b":"3/2","re":"1/15"}]"#;
    let gram = json_ok(&["gram", "--json", &format!(r#"{{"n":3,"fs":[{f},{g}]}}"#)]);
    let ip = json_ok(&["inner-product", "--json", &format!(r#"{{"n":3,"f":{f},"g":{g}}}"#)]);
    assert_eq!(gram["matrix"][0][1]["re"], ip["value"]["re"]);
    assert_eq!(gram["matrix"][0][1]["im"], ip["value"]["im"]);
    assert_eq!(gram["psd"], true);
}

#[test]
fn split_check_passes() {
    let v = json_ok(&["split-check", "--n", "3", "--order", "5"]);
    assert_eq!(v["passed"], true);
    assert!(v["mismatch"].is_null());
}

#[test]
fn mgf_csv_and_singularity() {
    let out = rhpwn(&["mgf", "--n", "2", "--t", "1", "--s-grid", "0:1:0.5"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,closed_form");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "0.0000000000000000e0,1.0000000000000000e0");
    // c = 4 for n = 2, so the MGF blows up at s = π/4; s = 1 lies beyond it
    assert!(lines[3].ends_with(','));
}

#[test]
fn density_is_symmetric() {
    let out = rhpwn(&["density", "--t", "1.5", "--x-grid", "-3:3:1.5", "--format", "json"], None);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let p: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["p"].as_f64().unwrap()).collect();
    assert_eq!(p.len(), 5);
    for i in 0..5 {
        assert!((p[i] - p[4 - i]).abs() < 1e-15);
    }
}

#[test]
fn sampling_is_deterministic() {
    let a = rhpwn(&["sample", "--t", "2", "--count", "50", "--seed", "11"], None);
    let b = rhpwn(&["sample", "--t", "2", "--count", "50", "--seed", "11"], None);
    let c = rhpwn(&["sample", "--t", "2", "--count", "50", "--seed", "12"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 50);
}

#[test]
fn classical_check_witness() {
    let v = json_ok(&[
        "classical-check",
        "--json",
        r#"{"coeffs":[{"n":2,"k":0,"re":"1"},{"n":0,"k":2,"re":"1","im":"1"}],"horizon":["1"]}"#,
    ]);
    assert_eq!(v["classical"], false);
    assert_eq!(v["witness"]["kind"], "not_hermitian");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["nogo", "--n", "4"],
        vec!["kernel", "--n", "3", "--k", "4"],
        vec!["density", "--t", "0.7", "--x-grid", "-1:1:0.25"],
    ] {
        let a = rhpwn(&args, None);
        let b = rhpwn(&args, None);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
