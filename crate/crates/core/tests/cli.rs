use std::process::Command;

fn cyclosum(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclosum"))
        .args(args)
        .env_remove("CYCLOSUM_CACHE")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn compute_prints_exact_values() {
    let (code, out, _) = cyclosum(&["compute", "--p", "19", "--l", "3", "--order", "18", "--i", "0", "--j", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("value: 17\n"), "{out}");

    let (code, out, _) = cyclosum(&["compute", "--p", "19", "--l", "3", "--order", "18", "--i", "0", "--j", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("value: -1\n"), "{out}");
}

#[test]
fn compute_json_and_bad_order() {
    let (code, out, _) =
        cyclosum(&["compute", "--p", "19", "--l", "3", "--order", "9", "--i", "1", "--j", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
    assert_eq!(v["convention"], "shifted");

    let (code, _, err) = cyclosum(&["compute", "--p", "19", "--l", "3", "--order", "4", "--i", "1", "--j", "1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn verify_json_q19() {
    let (code, out, _) = cyclosum(&["verify", "--p", "19", "--l", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 17);
    assert_eq!(v["order_l2"].as_array().unwrap().len(), 8);
    for case in v["cases"].as_array().unwrap() {
        let keys: Vec<&str> = case.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["n", "case", "required", "achieved", "pass"]);
    }
}

#[test]
fn verify_extension_field() {
    let (code, out, _) = cyclosum(&["verify", "--p", "7", "--r", "3", "--l", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all cases pass"));
}

#[test]
fn exit_codes() {
    // 19 is not 1 mod 50
    assert_eq!(cyclosum(&["verify", "--p", "19", "--l", "5"]).0, 2);
    assert_eq!(cyclosum(&["verify", "--p", "21", "--l", "3"]).0, 2);
    assert_eq!(cyclosum(&["sweep", "--l", "3", "--q-min", "20", "--q-max", "30"]).0, 2);
    assert_eq!(cyclosum(&["sweep", "--l", "3", "--q-min", "40", "--q-max", "30"]).0, 2);
    assert_eq!(cyclosum(&["frobnicate"]).0, 2);
    assert_eq!(cyclosum(&["--help"]).0, 0);
}

#[test]
fn sweep_rows() {
    let (code, out, _) = cyclosum(&["sweep", "--l", "3", "--q-min", "2", "--q-max", "200", "--format", "csv"]);
    assert_eq!(code, 0);
    let qs: std::collections::BTreeSet<u64> =
        out.lines().skip(1).map(|row| row.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(qs.into_iter().collect::<Vec<_>>(), [19, 37, 73, 109, 127, 163, 181, 199]);
}

#[test]
fn props_csv() {
    let (code, out, _) = cyclosum(&["props", "--p", "19", "--l", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("q,identity,order,checked,violations,pass,witness"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().all(|r| r.starts_with("19,") && r.contains(",0,true,")), "{out}");
    let names: std::collections::BTreeSet<&str> = rows.iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(names.len(), 8);
}

#[test]
fn cache_dir_from_env_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cyclosum"))
            .args(["verify", "--p", "37", "--l", "3", "--format", "json"])
            .env("CYCLOSUM_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    assert!(files[0].to_string_lossy().starts_with("dlog_p37_r1_l3_g"));
    assert_eq!(run().stdout, first.stdout);
}
