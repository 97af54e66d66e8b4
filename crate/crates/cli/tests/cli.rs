use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn pipqr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pipqr")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str], file: &str) -> (i32, Value) {
    let path = fixture(file);
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    full.push(path.to_str().unwrap());
    let out = pipqr(&full);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn temp_job(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pipqr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn check_pir_verdicts() {
    let (code, v) = run_json(&["check-pir"], "bicyclic.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["is_pir"], true);
    assert_eq!(v["result"]["repeated_variable"], 1);
    assert_eq!(v["result"]["witness"]["coprime"], true);
    let (code, v) = run_json(&["check-pir"], "kerdock_m3.toml");
    assert_eq!(code, 1);
    assert_eq!(v["result"]["is_pir"], false);
    assert_eq!(v["result"]["class"], "modular-non-pir");
}

#[test]
fn malformed_job_reports_location() {
    let (code, v) = run_json(&["check-pir"], "malformed.toml");
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid-job");
    assert_eq!(v["error"]["line"], 7);
    let out = pipqr(&["check-pir", fixture("malformed.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 7"));
}

#[test]
fn out_of_range_coefficient_is_rejected_with_position() {
    let path = temp_job("range.toml", "[ring]\np = 2\nn = 2\nl = 1\n[ambient]\npolys = [[1, 0, 1], [4, 1]]\n");
    let out = pipqr(&["check-pir", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6, column 22"), "{err}");
    assert!(err.contains("polys[1][0] = 4"), "{err}");
}

#[test]
fn unknown_keys_and_missing_files_are_parse_errors() {
    let path = temp_job("unknown.toml", "[ring]\np = 2\nn = 2\nl = 1\nm = 3\n[ambient]\npolys = [[1, 1]]\n");
    assert_eq!(pipqr(&["check-pir", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pipqr(&["check-pir", "/nonexistent/job.toml"]).status.code(), Some(2));
    let path = temp_job("prime.toml", "[ring]\np = 4\nn = 1\nl = 1\n[ambient]\npolys = [[1, 1]]\n");
    assert_eq!(pipqr(&["check-pir", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn decompose_bicyclic_table() {
    let (code, v) = run_json(&["decompose", "--certify"], "bicyclic.toml");
    assert_eq!(code, 0);
    let rows = v["result"]["summands"].as_array().unwrap();
    let sizes: Vec<&str> = rows.iter().map(|r| r["residue_field_size"].as_str().unwrap()).collect();
    assert_eq!(sizes, ["2", "8", "8"]);
    assert!(rows.iter().all(|r| r["k"] == 2 && r["nilpotency"] == 4));
    assert!(rows.iter().all(|r| r["chain_certificate"]["ok"] == true));
    assert_eq!(v["result"]["log_p_size"], 28);
}

fn flatten(v: &Value, out: &mut Vec<u64>) {
    match v {
        Value::Array(items) => items.iter().for_each(|x| flatten(x, out)),
        x => out.push(x.as_u64().unwrap()),
    }
}

#[test]
fn idempotent_tensors_reassemble_one() {
    for file in ["semisimple.toml", "bicyclic.toml"] {
        let (code, v) = run_json(&["decompose", "--idempotents"], file);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["idempotents_resolve_one"], true);
        let mut sum: Vec<u64> = Vec::new();
        for row in v["result"]["summands"].as_array().unwrap() {
            let mut flat = Vec::new();
            flatten(&row["idempotent"], &mut flat);
            if sum.is_empty() {
                sum = vec![0; flat.len()];
            }
            for (s, c) in sum.iter_mut().zip(flat) {
                *s = (*s + c) % 4;
            }
        }
        assert_eq!(sum[0], 1, "{file}");
        assert!(sum[1..].iter().all(|&c| c == 0), "{file}");
    }
    let (_, v) = run_json(&["decompose"], "semisimple.toml");
    assert!(v["result"]["summands"].as_array().unwrap().iter().all(|r| r["k"] == 1));
}

#[test]
fn enumerate_counts() {
    let (code, v) = run_json(&["enumerate"], "quadratic.toml");
    assert_eq!(code, 0);
    let rows = v["result"]["codes"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let cards: Vec<&str> = rows.iter().map(|r| r["cardinality"].as_str().unwrap()).collect();
    assert_eq!(cards, ["16", "8", "4", "2", "1"]);
    let (code, v) = run_json(&["enumerate"], "bicyclic.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["codes"].as_array().unwrap().len(), 125);
    assert_eq!(v["result"]["count"], "125");
    let (code, v) = run_json(&["enumerate", "--cap", "100"], "bicyclic.toml");
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "cap-exceeded");
}

#[test]
fn distances() {
    let (code, v) = run_json(&["distance", "--method", "both"], "bicyclic_code.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["d"], 4);
    assert_eq!(v["result"]["exhaustive"]["d"], 4);
    assert_eq!(v["result"]["quotient"]["d"], 4);
    assert_eq!(v["result"]["methods_agree"], true);
    assert_eq!(v["result"]["cardinality"], "512");
    let (code, v) = run_json(&["distance", "--method", "exhaustive"], "binary_d8.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["d"], 8);
    assert!(v["result"]["exhaustive"]["codewords_scanned"].as_u64().unwrap() <= 512);
    let (code, v) = run_json(&["distance"], "zero_code.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["d"], "infinite");
    assert_eq!(v["result"]["exhaustive"]["witness"], Value::Null);
    let (code, _) = run_json(&["distance", "--cap", "100"], "bicyclic_code.toml");
    assert_eq!(code, 3);
    let (code, v) = run_json(&["distance"], "gr16_ambient.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["methods_agree"], true);
}

#[test]
fn params_out_of_bounds_is_a_parse_error() {
    let path = temp_job(
        "params.toml",
        "[ring]\np = 2\nn = 2\nl = 1\n[ambient]\npolys = [[1, 0, 1]]\n[code]\nparams = [[0, 5]]\n",
    );
    let out = pipqr(&["distance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 8"));
    let out = pipqr(&["distance", fixture("bicyclic.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(pipqr(&["decompose", fixture("kerdock_m3.toml").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn additive_reports() {
    let (code, v) = run_json(&["additive", "quantum"], "additive_quantum.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["params"], serde_json::json!({"n": 8, "k": 4, "d": 2}));
    assert_eq!(v["result"]["log2_size"], 4);
    assert_eq!(v["result"]["self_orthogonal"], true);
    let (code, v) = run_json(&["additive", "rank"], "additive_quantum.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["generator_rank"], 1);
    let (code, v) = run_json(&["additive", "count"], "additive_toy.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["codes"], "5");
    assert_eq!(v["result"]["single_generator_codes"], "4");
    let (code, v) = run_json(&["additive", "rank"], "additive_toy.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["generator_rank"], 0);
}

#[test]
fn literal_square_gives_dimension_mismatch() {
    let (code, v) = run_json(&["additive", "quantum"], "additive_literal.toml");
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("dimension mismatch"));
    assert!(v["result"].is_null());
}

#[test]
fn non_self_orthogonal_is_negative() {
    let path = temp_job(
        "nso.toml",
        "[ring]\np = 2\nn = 1\nl = 1\n[ambient]\npolys = [[1, 1], [1, 1, 1]]\n[additive]\ngenerators = [[[1, 0]], [[2, 0]]]\n",
    );
    let out = pipqr(&["--json", "additive", "quantum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["self_orthogonal"], false);
}

#[test]
fn reports_embed_job_hash_and_are_deterministic() {
    let path = fixture("bicyclic_code.toml");
    let expected = hex::encode(Sha256::digest(std::fs::read(&path).unwrap()));
    let p = path.to_str().unwrap();
    let a = pipqr(&["--json", "distance", p]);
    let b = pipqr(&["--json", "--threads", "1", "distance", p]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["job_sha256"], expected.as_str());
    assert_eq!(v["schema_version"], 1);
    let text = pipqr(&["distance", p]);
    assert!(String::from_utf8_lossy(&text.stdout).contains(&expected));
    assert_eq!(text.stdout, pipqr(&["--threads", "3", "distance", p]).stdout);
}
