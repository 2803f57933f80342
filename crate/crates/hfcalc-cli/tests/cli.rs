use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn hfcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hfcalc")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let (code, out, err) = hfcalc(&all);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["version"], "1");
    v["result"].clone()
}

#[test]
fn hat_of_l31_has_three_classes_of_rank_one() {
    let l31 = data("l31.diagram");
    let (code, out, _) = hfcalc(&["hf", "--flavor", "hat", &l31]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let r = json(&["hf", "--flavor", "hat", &l31]);
    let classes = r["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    for c in classes {
        let total: u64 = c["homology"]["groups"].as_array().unwrap().iter().map(|g| g["dim"].as_u64().unwrap()).sum();
        assert_eq!(total, 1);
    }
}

#[test]
fn first_blowup_class_pairs_to_one() {
    let (code, out, _) = hfcalc(&["c1", "--triple", &data("mcp.diagram"), "--class", "psi1+"]);
    assert_eq!((code, out.trim()), (0, "1"));
    let r = json(&["c1", "--triple", &data("mcp.diagram"), "--class", "psi2-"]);
    assert_eq!(r["c1"], "-3");
    assert_eq!(r["n_z"], 1);
}

#[test]
fn blowup_shift() {
    let (code, out, _) = hfcalc(&["shift", &data("blowup.pres"), "--c", "3"]);
    assert_eq!((code, out.trim()), (0, "-2"));
    let (code, out, _) = hfcalc(&["shift", &data("blowup.pres"), "--c", "-5"]);
    assert_eq!((code, out.trim()), (0, "-6"));
}

#[test]
fn models_agree_with_documents() {
    let a = json(&["spinc", "model:lens:3"]);
    let b = json(&["spinc", &data("l31.diagram")]);
    assert_eq!(a, b);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "grading", "model:unknot:-3"];
    assert_eq!(hfcalc(&args), hfcalc(&args));
}

#[test]
fn domain_errors_exit_one() {
    for (args, name) in [
        (vec!["shift", &data("blowup.pres"), "--c", "2"], "NotCharacteristic"),
        (vec!["shift", &data("asymmetric.pres")], "InvalidPresentation"),
        (vec!["c1", "--triple", "model:mcp", "--class", "psi0+"], "NoClass"),
        (vec!["adjunction", "--c1", "0", "--self-int", "0", "--genus", "0"], "DomainError"),
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        let (code, out, err) = hfcalc(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert!(err.starts_with(&format!("{name}: ")), "{err}");
        assert!(!err.contains(&format!("{name}: {name}")), "{err}");
    }
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        vec!["validate".to_string(), data("garbage.diagram")],
        vec!["shift".into(), data("unknown_key.pres")],
        vec!["validate".into(), data("missing.diagram")],
        vec!["hf".into(), "--flavor".into(), "sideways".into(), "model:s3".into()],
        vec!["c1".into(), "--triple".into(), data("mcp.diagram"), "--class".into(), "phi1+".into()],
        vec!["validate".into(), "model:lens:0".into()],
        vec!["frobnicate".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = hfcalc(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
    let (_, _, err) = hfcalc(&["shift", &data("unknown_key.pres")]);
    assert!(err.starts_with("ParseError: ") && err.contains("framing"), "{err}");
}

#[test]
fn degenerate_diagram_gets_a_certificate() {
    let r = json(&["admissible", &data("degenerate.diagram")]);
    let v = &r["verdicts"][0]["verdict"];
    assert_eq!(v["admissible"], false);
    assert!(v["certificate"].is_object());
}

#[test]
fn fiber_and_cut() {
    let r = json(&["fiber", &data("hyperbolic.pres"), "--c", "0,2", "--bound", "2"]);
    assert_eq!(r["free_rank"], 1);
    assert_eq!(r["members"].as_array().unwrap().len(), 5);
    let r = json(&["cut", &data("diag11.pres"), "--split", "0"]);
    assert_eq!(r["admissible"], true);
}

#[test]
fn library_entry_point_matches_binary() {
    let args = ["hfcalc", "shift", "--c", "3"];
    let mut v: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    v.insert(2, data("blowup.pres"));
    let out = hfcalc_cli::run(v);
    assert_eq!((out.code, out.stdout.trim()), (0, "-2"));
}
