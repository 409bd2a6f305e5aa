use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_braidvar"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

/// Run with --json, check the exit code and validate against docs/schemas/<schema>.json.
fn run_json(schema: &str, args: &[&str], code: i32) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (c, out) = run(&all);
    assert_eq!(c, code, "{args:?}:\n{out}");
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join(format!("{schema}.json"))).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&s).unwrap();
    if let Err(errors) = compiled.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{schema} schema: {msgs:?}\n{out}");
    }
    v
}

const INTRO_PAIR: &str = "k=3 u=[1,3,4,2,5,6,7] w=[4,5,1,6,7,2,3]";
const INTRO_F: &str = "k=3 f=[3,5,8,6,7,11,9]";

#[test]
fn convert_pair_to_affine() {
    let (c, out) = run(&["convert", "--from", "pair", "--to", "affine", INTRO_PAIR]);
    assert_eq!(c, 0);
    assert_eq!(out.trim(), INTRO_F);
    let v = run_json("convert", &["convert", "--from", "pair", "--to", "affine", INTRO_PAIR], 0);
    assert_eq!(v["output"]["f"], serde_json::json!([3, 5, 8, 6, 7, 11, 9]));
}

#[test]
fn convert_affine_rank_round_trip() {
    let (_, rank) = run(&["convert", "--from", "affine", "--to", "rank", INTRO_F]);
    let (c, back) = run(&["convert", "--from", "rank", "--to", "affine", rank.trim()]);
    assert_eq!(c, 0);
    assert_eq!(back.trim(), INTRO_F);
    for to in ["pair", "rank", "le"] {
        run_json("convert", &["convert", "--from", "affine", "--to", to, INTRO_F], 0);
    }
}

#[test]
fn convert_pair_to_le_diagram() {
    let pair = "k=4 u=[1,4,2,5,3,6] w=[5,6,1,2,3,4]";
    let (c, out) = run(&["convert", "--from", "pair", "--to", "le", pair]);
    assert_eq!(c, 0);
    assert_eq!(out.trim_end(), "**\n.*\n..\n**");
    let (_, back) = run(&["convert", "--from", "le", "--to", "pair", "--n", "6", "**/.*/../**"]);
    assert_eq!(back.trim(), pair);
}

#[test]
fn convert_reports_violations() {
    let v = run_json("error", &["convert", "--from", "pair", "--to", "le", "k=3 u=[2,1,3] w=[1,2,3]"], 2);
    assert!(v["error"].as_str().unwrap().starts_with("violation:"));
}

#[test]
fn braid_kinds() {
    let (_, j) = run(&["braid", "--from", "affine", "--kind", "juggling", INTRO_F]);
    assert_eq!(j.trim(), "n=3: s2 s1 s2 s2 s2 s1 s1");
    let (_, r) = run(&["braid", "--from", "pair", "--kind", "richardson", INTRO_PAIR]);
    assert_eq!(r.trim(), "n=7: s3 s2 s1 s4 s3 s2 s5 s4 s6 s5 s3^-1 s2^-1");
    let (_, m) = run(&["braid", "--from", "affine", "--kind", "matrix", INTRO_F]);
    assert_eq!(m.trim(), "n=3: s1 s2 s1 s1 s1 s2 s1 s2 s1 s1");
    for kind in ["richardson", "juggling", "juggling-delta", "matrix", "le", "script-j"] {
        run_json("braid", &["braid", "--from", "affine", "--kind", kind, INTRO_F], 0);
    }
}

#[test]
fn reproduce_intro_passes() {
    let (c, out) = run(&["reproduce-intro"]);
    assert_eq!(c, 0, "{out}");
    let v = run_json("reproduce-intro", &["reproduce-intro"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    assert_eq!(v["first_failure"], Value::Null);
    assert_eq!(v["traces"].as_array().unwrap().len(), 2);
}

#[test]
fn reproduce_intro_with_other_f_fails() {
    // a valid but different affine permutation: the reference braids no longer match
    let v = run_json("reproduce-intro", &["reproduce-intro", "--f", "[3,5,8,6,7,9,11]"], 1);
    assert_eq!(v["ok"], false);
    assert_eq!(v["first_failure"], "richardson braid");
    let v = run_json("reproduce-intro", &["reproduce-intro", "--f", "[3,5,8,6,7,10,10]"], 1);
    assert_eq!(v["first_failure"], "affine permutation");
}

#[test]
fn verify_theorems() {
    let v = run_json("verify", &["verify", "--theorem", "main1-ii", "--instance", INTRO_F], 0);
    assert_eq!(v["ok"], true);
    run_json("verify", &["verify", "--theorem", "main1-i", "--instance", INTRO_F], 0);
    let v = run_json("verify", &["verify", "--theorem", "rich-vs-juggling", "--instance", "k=2 n=4", "-q", "2"], 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 33);
    let v = run_json(
        "verify",
        &["verify", "--theorem", "brick-strata", "--instance", "n=3: s1 s2 s1 s2 s1", "-q", "3"],
        0,
    );
    assert_eq!(v["details"]["counts"][0]["total"], 19);
}

#[test]
fn simplify_and_replay_trace() {
    let v = run_json("simplify", &["simplify", "--from", "affine", INTRO_F], 0);
    assert_eq!(v["replayed"], true);
    assert_eq!(v["word"]["strands"], 3);

    let v = run_json("simplify", &["simplify", "n=3: s1 s2 s1", "--to", "n=3: s2 s1 s2"], 0);
    let dir = std::env::temp_dir().join(format!("braidvar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, v["trace"].to_string()).unwrap();
    let r = run_json("verify", &["verify", "--trace", good.to_str().unwrap()], 0);
    assert_eq!(r["ok"], true);

    let mut bad = v["trace"].clone();
    bad["moves"][0]["at"] = 1.into();
    let badp = dir.join("bad.json");
    std::fs::write(&badp, bad.to_string()).unwrap();
    let r = run_json("verify", &["verify", "--trace", badp.to_str().unwrap()], 1);
    assert_eq!(r["ok"], false);
    std::fs::remove_dir_all(&dir).unwrap();

    let (c, out) = run(&["simplify", "n=3: s1 s2 s2^-1 s1^-1 s1"]);
    assert_eq!(c, 0);
    assert!(out.starts_with("n=3: s1\n"));
}

#[test]
fn dga_of_trefoil_with_rii_pair() {
    let word = "n=2: s1 s1^-1 s1 s1 s1 s1";
    let v = run_json("dga", &["dga", "--word", word, "--eliminate"], 0);
    assert_eq!(v["differentials"]["z1"], "w1");
    assert_eq!(v["differentials"]["z2"], "-w1");
    assert_eq!(v["differentials"]["y11"], "t1 + z3 + z3*z4*z5 + z5");
    assert_eq!(v["elimination"]["steps"][0]["z"], 1);
    assert_eq!(v["elimination"]["presentation"]["equations"].as_array().unwrap().len(), 4);
    let v = run_json("dga", &["dga", "--word", word, "--set-t", "pm1"], 0);
    assert_eq!(v["differentials"]["y11"], "-1 + z3 + z3*z4*z5 + z5");
    let v = run_json("dga", &["dga", "--word", word, "--delta"], 0);
    assert_eq!(v["sh_present"], false);
}

#[test]
fn dga_reports_d_squared_failures() {
    let v = run_json("dga", &["dga", "--word", "n=2: s1 s1^-1 s1^-1 s1 s1 s1", "--delta"], 1);
    assert_eq!(v["d_squared_zero"], false);
    assert!(!v["d_squared_failures"].as_array().unwrap().is_empty());
}

#[test]
fn variety_counts() {
    let (c, out) = run(&["variety", "--count", "-q", "2,3", "n=2: s1 s1 s1"]);
    assert_eq!(c, 0);
    assert!(out.contains("q=2: 3\nq=3: 7"), "{out}");
    let v = run_json("variety", &["variety", "--from", "pair", "--count", "-q", "2,3", "k=1 u=[1,2,3] w=[2,1,3]"], 0);
    assert_eq!(v["counts"].as_array().unwrap().len(), 2);
    let one = run_json("variety", &["variety", "--count", "-q", "5", "n=3: s1 s2 s1 s2 s1 s2"], 0);
    let four = run_json("variety", &["--threads", "4", "variety", "--count", "-q", "5", "n=3: s1 s2 s1 s2 s1 s2"], 0);
    assert_eq!(one["counts"], four["counts"]);
    run_json("error", &["variety", "--count", "-q", "4", "n=2: s1"], 2);
}

#[test]
fn brick_stratify_and_count() {
    let v = run_json("brick", &["brick", "--stratify", "--count", "-q", "2", "n=3: s1 s2 s1 s2 s1"], 0);
    assert_eq!(v["total"], 11);
    let strata = v["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 11);
    let sum: u64 = strata.iter().map(|s| s["count"].as_u64().unwrap()).sum();
    assert_eq!(sum, 11);
    let v = run_json("brick", &["brick", "--count", "-q", "3", "--enlarge", "n=3: s1 s1"], 0);
    assert_eq!(v["demazure"], "[3,2,1]");
}

#[test]
fn input_from_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("braidvar-cli-in-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("f.txt");
    std::fs::write(&p, INTRO_F).unwrap();
    let a = run(&["--json", "convert", "--from", "affine", "--to", "le", "--input", p.to_str().unwrap()]);
    let b = run(&["--json", "convert", "--from", "affine", "--to", "le", INTRO_F]);
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schemas_are_not_vacuous() {
    let s: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join("braid.json")).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&s).unwrap();
    let (_, out) = run(&["--json", "braid", "--from", "affine", "--kind", "le", INTRO_F]);
    let mut v: Value = serde_json::from_str(&out).unwrap();
    assert!(compiled.is_valid(&v));
    v["braid"]["letters"] = "s1".into();
    assert!(!compiled.is_valid(&v));
    v["extra"] = 1.into();
    assert!(!compiled.is_valid(&v));
}
