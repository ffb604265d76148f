use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn aparam(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_aparam")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), value, String::from_utf8(out.stderr).unwrap())
}

fn write_param(dir: &Path, name: &str, parity: &str, param: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, format!(r#"{{"parity":"{parity}","param":"{param}"}}"#)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bessel_ratio_of_a_relevant_pair_is_zero() {
    let dir = TempDir::new().unwrap();
    let m = write_param(dir.path(), "m.json", "symplectic", "1:D1:A2");
    let n = write_param(dir.path(), "n.json", "orthogonal", "1:D1:A1");
    let (code, v, _) = aparam(&["lfun", "bessel-ratio", &m, &n]);
    assert_eq!(code, 0);
    assert_eq!(v["signed_order"], 0);
}

#[test]
fn relevance_exit_codes_separate_no_from_errors() {
    let dir = TempDir::new().unwrap();
    let m = write_param(dir.path(), "m.json", "symplectic", "1:D1:A2");
    let yes = write_param(dir.path(), "yes.json", "orthogonal", "1:D1:A1");
    let no = write_param(dir.path(), "no.json", "orthogonal", "1:D1:A5");
    let (code, v, _) = aparam(&["relevance", "check", &m, &yes]);
    assert_eq!((code, v["relevant"].as_bool()), (0, Some(true)));
    let (code, v, _) = aparam(&["relevance", "check", &m, &no]);
    assert_eq!((code, v["relevant"].as_bool()), (2, Some(false)));
    assert!(v["reason"]["deficit"].as_u64().unwrap() > 0);
    let (code, _, err) = aparam(&["relevance", "check", &m, "missing.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.json"));
}

#[test]
fn batch_over_a_directory_finds_the_single_relevant_candidate() {
    let dir = TempDir::new().unwrap();
    let so7 = write_param(dir.path(), "so7.json", "orthogonal", "1:D1:A7");
    let (_, listing, _) = aparam(&["enumerate", "--parity", "symplectic", "--dim", "6"]);
    let cands = dir.path().join("cands");
    fs::create_dir(&cands).unwrap();
    for (k, p) in listing["params"].as_array().unwrap().iter().enumerate() {
        write_param(&cands, &format!("c{k:02}.json"), "symplectic", p.as_str().unwrap());
    }
    let (code, rows, _) = aparam(&["relevance", "check", &so7, cands.to_str().unwrap()]);
    assert_eq!(code, 0);
    let relevant: Vec<&Value> = rows.as_array().unwrap().iter().filter(|r| r["result"]["relevant"] == true).collect();
    assert_eq!(relevant.len(), 1);
    let name = relevant[0]["n"].as_str().unwrap();
    let text = fs::read_to_string(cands.join(name)).unwrap();
    assert!(text.contains("1:D1:A6"));
}

#[test]
fn enumeration_reports_visits_and_nonnegative_relevant_rows() {
    let (code, v, _) = aparam(&["enumerate", "--parity", "symplectic", "--dim", "6", "--partner-dim", "6"]);
    assert_eq!(code, 0);
    assert!(v["visited"].as_u64().unwrap() > 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len() as u64, v["pairs"].as_u64().unwrap());
    for r in rows.iter().filter(|r| r["relevant"] == true) {
        assert!(r["ratio_order"].as_i64().unwrap() >= 0, "{r}");
    }
}

#[test]
fn enumeration_respects_the_budget() {
    let (code, _, err) = aparam(&["enumerate", "--parity", "gl", "--dim", "8", "--budget", "10"]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"));
}

#[test]
fn reproduce_registry() {
    let (code, v, _) = aparam(&["reproduce", "onedim-characters", "--n", "3", "--beta", "nontrivial"]);
    assert_eq!(code, 0);
    assert_eq!(v["actual"]["numerator_order"], 5);
    let (code, v, _) = aparam(&["reproduce", "maj-family", "--n", "2"]);
    assert_eq!((code, v["matches"].as_bool()), (0, Some(true)));
    // The expected denominator 20 is not what the pole rules give; the
    // mismatch is reported with exit status 2.
    let (code, v, _) = aparam(&["reproduce", "bessel-poles"]);
    assert_eq!(code, 2);
    assert_eq!(v["actual"]["numerator_order"], 25);
    assert_eq!(v["actual"]["denominator_order"], 22);
    let (code, _, err) = aparam(&["reproduce", "nonsense"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown example"));
}

#[test]
fn support_comparison_reports_no_match() {
    let (code, v, _) = aparam(&["glbranch", "support", "Z2 x St2@1/2", "--against", "St2@1/2 x Z2"]);
    assert_eq!(code, 0);
    assert_eq!(v["match"]["verdict"], "matched");
    let (code, v, _) = aparam(&["glbranch", "support", "St2 x Z2@1/2", "--against", "Z3 x Z1"]);
    assert_eq!(code, 2);
    assert_eq!(v["match"]["verdict"], "no-match");
    assert_eq!(v["support"]["1"][0]["x"], "-1/2");
}

#[test]
fn glbranch_decide_checks_dimensions() {
    let dir = TempDir::new().unwrap();
    let m = write_param(dir.path(), "m.json", "gl", "1:D1:A2");
    let n = write_param(dir.path(), "n.json", "gl", "1:D1:A1");
    let (code, v, _) = aparam(&["glbranch", "decide", &m, &n]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "decided");
    assert_eq!(v["hom_nonzero"], true);
    let bad = write_param(dir.path(), "bad.json", "gl", "1:D1:A1");
    let (code, _, err) = aparam(&["glbranch", "decide", &bad, &n]);
    assert_eq!(code, 1);
    assert!(err.contains("dimension"));
}

#[test]
fn global_ratio_with_bindings() {
    let dir = TempDir::new().unwrap();
    let symbols = dir.path().join("symbols.json");
    fs::write(
        &symbols,
        r#"{"symbols":[{"id":"V","dim":2,"duality":"symplectic","dual_id":"V"},{"id":"W","dim":1,"duality":"orthogonal","dual_id":"W"}]}"#,
    )
    .unwrap();
    let m = write_param(dir.path(), "m.json", "symplectic", "V:D1:A1 + W:D1:A2");
    let n = write_param(dir.path(), "n.json", "orthogonal", "V:D1:A2 + W:D1:A1");
    let bind = dir.path().join("z.json");
    fs::write(&bind, r#"{"z(V,W)": 2}"#).unwrap();
    let sym = symbols.to_str().unwrap();
    let (code, v, err) = aparam(&["--symbols", sym, "globlfun", "ratio", &m, &n, "--bind", bind.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(v["expression"].as_str().unwrap().contains("z(V,W)"));
    assert_eq!(v["value"].as_i64().unwrap() % 2, 0);
}

#[test]
fn output_is_byte_identical_across_runs_and_out_file() {
    let dir = TempDir::new().unwrap();
    let m = write_param(dir.path(), "m.json", "symplectic", "1:D3:A4 + 1:D5:A4");
    let n = write_param(dir.path(), "n.json", "orthogonal", "1:D3:A3 + 1:D5:A5");
    let out = dir.path().join("report.json");
    let run = |extra: &[&str]| {
        let mut args = vec!["relevance", "check", m.as_str(), n.as_str()];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_aparam")).args(&args).output().unwrap().stdout
    };
    let first = run(&[]);
    assert_eq!(first, run(&[]));
    run(&["--out", out.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn parse_canonicalizes_text() {
    let (code, v, _) = aparam(&["parse", "1:D2:A1 + 1:D1:A2 + 1:D2:A1", "--parity", "symplectic"]);
    assert_eq!(code, 0);
    assert_eq!(v["param"], "1:D1:A2 + 2*1:D2:A1");
    assert_eq!(v["dim"], 6);
}
