use std::process::Command;

use serde_json::Value;

fn schema() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/survey-line.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn survey(args: &[&str]) -> Vec<Value> {
    let out = Command::new(env!("CARGO_BIN_EXE_lefschetz")).arg("survey").args(args).output().unwrap();
    String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn survey_lines_match_the_schema() {
    let validator = schema();
    for args in [
        &["--n", "2", "--d", "5", "--count", "8", "--seed", "3"][..],
        &["--n", "3", "--d", "4", "--count", "4"][..],
        &["--n", "2", "--d", "6", "--count", "0"][..],
    ] {
        for line in survey(args) {
            let errors: Vec<String> = validator.iter_errors(&line).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{line}: {errors:?}");
        }
    }
}

#[test]
fn schema_rejects_malformed_lines() {
    let validator = schema();
    let mut line = survey(&["--n", "2", "--d", "5", "--count", "1"]).remove(0);
    line["wlp_verdict"] = Value::from("MAYBE");
    assert!(!validator.is_valid(&line));
    line.as_object_mut().unwrap().remove("wlp_verdict");
    assert!(!validator.is_valid(&line));
    assert!(!validator.is_valid(&serde_json::json!({"summary": {}})));
}
