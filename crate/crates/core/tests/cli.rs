use std::io::Write;
use std::process::{Command, Output, Stdio};

use jsonschema::JSONSchema;
use serde_json::Value;

const SCHEMAS: &[(&str, &str)] = &[
    (
        "presentation.schema.json",
        include_str!("../schemas/presentation.schema.json"),
    ),
    (
        "combinatorial_type.schema.json",
        include_str!("../schemas/combinatorial_type.schema.json"),
    ),
    (
        "blowup_script.schema.json",
        include_str!("../schemas/blowup_script.schema.json"),
    ),
    (
        "blowup_outcome.schema.json",
        include_str!("../schemas/blowup_outcome.schema.json"),
    ),
    (
        "classification.schema.json",
        include_str!("../schemas/classification.schema.json"),
    ),
    (
        "verify_report.schema.json",
        include_str!("../schemas/verify_report.schema.json"),
    ),
];

fn schema(name: &str) -> JSONSchema {
    let mut opts = JSONSchema::options();
    for (id, text) in SCHEMAS {
        opts.with_document(
            format!("urn:curvepi:{}", id.trim_end_matches(".schema.json")),
            serde_json::from_str(text).unwrap(),
        );
    }
    let (_, text) = SCHEMAS.iter().find(|(id, _)| *id == name).unwrap();
    let doc: Value = serde_json::from_str(text).unwrap();
    opts.compile(&doc).expect("schema compiles")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{name}: {msgs:?}");
}

fn curvepi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvepi"))
        .args(args)
        .output()
        .unwrap()
}

fn curvepi_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_curvepi"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(rel: &str) -> String {
    format!("{}/fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn ab_of_the_order_320_group() {
    let o = curvepi(&["ab", "<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Z/5\n");
}

#[test]
fn catalog_piped_into_tc() {
    let cat = curvepi(&["catalog", "gr:2,3,5"]);
    assert!(cat.status.success());
    let tc = curvepi_stdin(&["tc", "--quotient-by", "a^2"], &cat.stdout);
    assert!(
        tc.status.success(),
        "{}",
        String::from_utf8_lossy(&tc.stderr)
    );
    assert_eq!(stdout(&tc), "60\n");
}

#[test]
fn presentation_from_file() {
    let dir = std::env::temp_dir().join(format!("curvepi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a5.txt");
    std::fs::write(&path, "<a,b,c | a^2 = b^3 = c^5 = a b c = 1>\n").unwrap();
    let o = curvepi(&["tc", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "60\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn classify_four_concurrent_lines() {
    let o = curvepi(&["classify", "--type", &fixture("four_concurrent_lines.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "F_3 (case 1.3)\n");
}

#[test]
fn env_budget_overflow_is_a_domain_failure() {
    let o = Command::new(env!("CARGO_BIN_EXE_curvepi"))
        .args(["tc", "<a,b,c | a^2 = b^3 = c^5 = a b c = 1>"])
        .env("CURVEPI_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let flag = Command::new(env!("CARGO_BIN_EXE_curvepi"))
        .args([
            "tc",
            "<a,b,c | a^2 = b^3 = c^5 = a b c = 1>",
            "--max-cosets",
            "100",
        ])
        .env("CURVEPI_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(stdout(&flag), "60\n");
}

#[test]
fn exit_codes() {
    assert_eq!(curvepi(&["ab", "<a | a^>"]).status.code(), Some(2));
    assert_eq!(curvepi(&["ab", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(curvepi(&["verify", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(
        curvepi(&["verify", "--only", "V3", "--max-cosets", "10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(curvepi(&["verify", "--only", "V12"]).status.code(), Some(0));
    let sextic = r#"{"components": [{"id": "C", "degree": 6}]}"#;
    let dir = std::env::temp_dir().join(format!("curvepi-sextic-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sextic.json");
    std::fs::write(&path, sextic).unwrap();
    assert_eq!(
        curvepi(&["classify", "--type", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn shipped_inputs_match_their_schemas() {
    let types = std::fs::read_dir(fixture("types")).unwrap();
    let mut n = 0;
    for e in types {
        let v: Value =
            serde_json::from_str(&std::fs::read_to_string(e.unwrap().path()).unwrap()).unwrap();
        assert_valid("combinatorial_type.schema.json", &v);
        n += 1;
    }
    assert!(n >= 30);
    for e in std::fs::read_dir(fixture("blowups")).unwrap() {
        let v: Value =
            serde_json::from_str(&std::fs::read_to_string(e.unwrap().path()).unwrap()).unwrap();
        assert_valid("blowup_script.schema.json", &v);
    }
}

#[test]
fn schemas_reject_malformed_inputs() {
    let bad = [
        (
            "combinatorial_type.schema.json",
            r#"{"components": [{"id": "C", "degree": 0}]}"#,
        ),
        (
            "combinatorial_type.schema.json",
            r#"{"components": [{"id": "C", "degree": 2}], "points": [{"id": "p", "kind": "Q7", "branches": ["C"]}]}"#,
        ),
        (
            "blowup_script.schema.json",
            r#"{"case": "x", "curves": [], "steps": [], "d": [], "expect": {"self_intersection": 1, "nori": true}}"#,
        ),
        (
            "verify_report.schema.json",
            r#"{"all_passed": false, "reports": [{"id": "V1", "title": "t", "status": "fail", "artifacts": null}]}"#,
        ),
    ];
    for (name, text) in bad {
        let v: Value = serde_json::from_str(text).unwrap();
        assert!(!schema(name).is_valid(&v), "{name} accepted {text}");
    }
}

#[test]
fn json_outputs_match_their_schemas() {
    for f in [
        "types/case_1_3.json",
        "types/case_3_2.json",
        "types/quintic_C4_3A2.json",
        "types/case_2_1_1.json",
    ] {
        let o = curvepi(&["classify", "--type", &fixture(f), "--json"]);
        assert!(o.status.success(), "{f}");
        assert_valid(
            "classification.schema.json",
            &serde_json::from_slice(&o.stdout).unwrap(),
        );
    }
    for f in ["blowups/example_1.json", "blowups/2_2_2.json"] {
        let o = curvepi(&["blowup", "--script", &fixture(f), "--json"]);
        assert!(o.status.success(), "{f}");
        assert_valid(
            "blowup_outcome.schema.json",
            &serde_json::from_slice(&o.stdout).unwrap(),
        );
    }
    let o = curvepi(&["catalog", "artin:3,3,3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("presentation.schema.json", &v["presentation"]);
    let o = curvepi(&["verify", "--json", "--only", "V2,V3", "--max-cosets", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("verify_report.schema.json", &v);
    assert_eq!(v["reports"][1]["status"], "inconclusive");
}

#[test]
fn text_and_json_modes_agree() {
    let path = fixture("types/quintic_C4_3A2.json");
    let text = stdout(&curvepi(&["classify", "--type", &path]));
    let v: Value =
        serde_json::from_slice(&curvepi(&["classify", "--type", &path, "--json"]).stdout).unwrap();
    assert_eq!(
        text.trim(),
        format!(
            "{} ({})",
            v["name"].as_str().unwrap(),
            v["provenance"].as_str().unwrap()
        )
    );
    let ab = stdout(&curvepi(&["ab", "<a,b | a^2, b^4>"]));
    let v: Value =
        serde_json::from_slice(&curvepi(&["ab", "<a,b | a^2, b^4>", "--json"]).stdout).unwrap();
    assert_eq!(ab.trim(), v["text"]);
}
