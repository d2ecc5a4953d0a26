use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn votelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_votelab"))
        .args(args)
        .env_remove("VOTELAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(schema_name: &str, v: &Value) {
    let validator = schema(schema_name);
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{v} against {schema_name}: {errors:?}");
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, body: &str) -> String {
        let p = self.0.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }
}

const UNANIMOUS: &str = "3 3\n0 1 2\n0 1 2\n0 1 2\n";
const MAYBE: &str = "3 3\n1 2 0\n1 2 0\n0 1 2\n";
const CYCLE_GRAPH: &str = "3 3\n0 1\n1 2\n2 0\n";

#[test]
fn dodgson_of_unanimous_top_is_zero() {
    let f = Files::new();
    let v = json(&votelab(&["score", "dodgson", "--profile", &f.put("p.txt", UNANIMOUS), "--alt", "0"]));
    assert_eq!(v["score"], 0);
    assert_valid("score_output.schema.json", &v);
}

#[test]
fn kemeny_threshold_reports_decision_and_minimum() {
    let f = Files::new();
    let p = f.put("p.txt", "3 3\n0 1 2\n1 2 0\n2 0 1\n");
    let v = json(&votelab(&["score", "kemeny", "--profile", &p, "--threshold", "4"]));
    assert_eq!((v["decision"].as_str(), v["min_score"].as_u64()), (Some("yes"), Some(4)));
    assert_valid("score_output.schema.json", &v);
    let v = json(&votelab(&["score", "kemeny", "--profile", &p, "--threshold", "3"]));
    assert_eq!(v["decision"], "no");
}

#[test]
fn greedy_maybe_is_not_an_error() {
    let f = Files::new();
    let p = f.put("p.txt", MAYBE);
    for args in [
        vec!["score", "greedy-dodgson", "--profile", &p, "--alt", "0", "--threshold", "9"],
        vec!["greedy-dodgson", "--profile", &p, "--alt", "0", "--threshold", "9"],
    ] {
        let v = json(&votelab(&args));
        assert_eq!(v["certainty"], "maybe");
        assert_eq!(v["decision"], "failure");
        assert_valid("score_output.schema.json", &v);
    }
}

#[test]
fn every_rule_produces_schema_valid_json() {
    let f = Files::new();
    let p = f.put("p.txt", MAYBE);
    let runs: Vec<Vec<&str>> = vec![
        vec!["score", "dodgson", "--profile", &p],
        vec!["score", "young", "--profile", &p, "--threshold", "2"],
        vec!["score", "kemeny", "--profile", &p, "--alt", "2"],
        vec!["score", "cc", "--profile", &p, "--k", "2"],
        vec!["score", "monroe", "--profile", &p, "--k", "2", "--aggregator", "min"],
        vec!["score", "monroe", "--profile", &p, "--committee", "0,2", "--threshold", "-5"],
        vec!["score", "greedy-dodgson", "--profile", &p],
    ];
    for args in runs {
        let v = json(&votelab(&args));
        assert_valid("score_output.schema.json", &v);
    }
}

#[test]
fn committee_scores_match_library() {
    let f = Files::new();
    let p = f.put("p.txt", MAYBE);
    let v = json(&votelab(&["score", "cc", "--profile", &p, "--k", "2"]));
    let profile = votelab::io::parse_profile(MAYBE).unwrap();
    let (c, s) = votelab::rules::best_committee(
        &profile,
        2,
        votelab::rules::CommitteeRule::ChamberlinCourant,
        &votelab::rules::Dpsf::NegatedPosition,
        votelab::rules::Aggregator::Sum,
        &votelab::Budget::default(),
    )
    .unwrap();
    assert_eq!(v["score"], s);
    assert_eq!(v["committee"], serde_json::json!(c.members()));
}

#[test]
fn pretty_prints_a_table() {
    let f = Files::new();
    let out = votelab(&["score", "dodgson", "--profile", &f.put("p.txt", UNANIMOUS), "--alt", "0", "--pretty"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "alternative  0\nscore        0\n");
}

#[test]
fn input_errors_exit_1() {
    let f = Files::new();
    let bad = f.put("bad.txt", "3 2\n0 1 2\n0 1 1\n");
    let good = f.put("p.txt", UNANIMOUS);
    for args in [
        vec!["score", "dodgson", "--profile", bad.as_str()],
        vec!["score", "dodgson", "--profile", good.as_str(), "--alt", "7"],
        vec!["score", "dodgson", "--profile", "/nonexistent/profile.txt"],
        vec!["score", "dodgson", "--profile", good.as_str(), "--frobnicate"],
        vec!["score", "borda", "--profile", good.as_str()],
        vec!["score", "cc", "--profile", good.as_str()],
        vec!["score", "cc", "--profile", good.as_str(), "--k", "2", "--aggregator", "max"],
    ] {
        let out = votelab(&args);
        assert_eq!(code(&out), 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    let line = votelab(&["score", "dodgson", "--profile", bad.as_str()]);
    assert!(String::from_utf8_lossy(&line.stderr).contains("line 3"));
}

#[test]
fn budget_exhaustion_exits_2() {
    let f = Files::new();
    let p = f.put("p.txt", MAYBE);
    let out = votelab(&["--budget", "1", "score", "dodgson", "--profile", &p, "--alt", "0"]);
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_votelab"))
        .args(["score", "dodgson", "--profile", &p, "--alt", "0"])
        .env("VOTELAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    // The flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_votelab"))
        .args(["score", "dodgson", "--profile", &p, "--alt", "0", "--budget", "1000"])
        .env("VOTELAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn alpha_zero_sample_equals_parameters() {
    let f = Files::new();
    let params = f.put("params.txt", MAYBE);
    let out = f.path("s.txt");
    let v = json(&votelab(&[
        "sample", "--model", r#"{"model":"alpha_ic","alpha":"0"}"#, "--parameters", &params, "--seed", "5", "--out", &out,
    ]));
    assert_valid("sample_output.schema.json", &v);
    assert_eq!(fs::read_to_string(&out).unwrap(), MAYBE);
    let sidecar: Value = serde_json::from_str(&fs::read_to_string(format!("{out}.seed.json")).unwrap()).unwrap();
    assert_eq!(sidecar["seed"], 5);
}

#[test]
fn partial_alt_with_k_equal_m_is_identity() {
    let f = Files::new();
    let params = f.put("params.txt", MAYBE);
    let model = f.put("model.json", r#"{"model":"partial_alt","K":3}"#);
    let out = f.path("s.txt");
    json(&votelab(&["sample", "--model", &model, "--parameters", &params, "--seed", "1", "--out", &out]));
    assert_eq!(fs::read_to_string(&out).unwrap(), MAYBE);
}

#[test]
fn sampling_is_deterministic_and_records_seeds() {
    let f = Files::new();
    let params = f.put("params.txt", "5 4\n0 1 2 3 4\n4 3 2 1 0\n2 0 4 1 3\n1 2 3 4 0\n");
    let model = r#"{"model":"alpha_ic","alpha":"1"}"#;
    let run = |name: &str, seed: Option<&str>| {
        let out = f.path(name);
        let mut args = vec!["sample", "--model", model, "--parameters", &params, "--out", &out];
        if let Some(s) = seed {
            args.extend(["--seed", s]);
        }
        let v = json(&votelab(&args));
        (fs::read_to_string(&out).unwrap(), v["seed"].as_u64().unwrap())
    };
    let (a, _) = run("a.txt", Some("42"));
    let (b, _) = run("b.txt", Some("42"));
    assert_eq!(a, b);
    let (c, recorded) = run("c.txt", None);
    let (d, _) = run("d.txt", Some(&recorded.to_string()));
    assert_eq!(c, d);
    // Round trip through the parser.
    let parsed = votelab::io::parse_profile(&a).unwrap();
    assert_eq!(votelab::io::format_profile(&parsed), a);
}

#[test]
fn weighted_parameters_are_autodetected() {
    let f = Files::new();
    let params = f.put("w.txt", "3 2\n2/1 0 1 2\n1/1 2 1 0\n");
    let out = f.path("s.txt");
    let v = json(&votelab(&[
        "sample", "--model", r#"{"model":"alpha_ic","alpha":"0"}"#, "--parameters", &params, "--seed", "0", "--out", &out,
    ]));
    assert_eq!(v["n"], 3);
    assert_eq!(fs::read_to_string(&out).unwrap(), "3 3\n0 1 2\n0 1 2\n2 1 0\n");

    let frac = f.put("frac.txt", "3 1\n1/2 0 1 2\n");
    let out = votelab(&["sample", "--model", r#"{"model":"alpha_ic","alpha":"0"}"#, "--parameters", &frac, "--out", &out_path(&f)]);
    assert_eq!(code(&out), 1);
}

fn out_path(f: &Files) -> String {
    f.path("unused.txt")
}

#[test]
fn malformed_model_spec_exits_1() {
    let f = Files::new();
    let params = f.put("params.txt", MAYBE);
    for model in [
        r#"{"model":"alpha_ic","alpha":"3/2"}"#,
        r#"{"model":"mallows","phi":"1/2"}"#,
        r#"{"model":"partial_alt","K":4}"#,
        r#"{"model":"partial_alt","K":2,"extra":1}"#,
        "not json",
    ] {
        let out = votelab(&["sample", "--model", model, "--parameters", &params, "--seed", "1", "--out", &f.path("s.txt")]);
        assert_eq!(code(&out), 1, "{model}");
    }
}

#[test]
fn x3c_reduction_writes_profile_and_layout() {
    let f = Files::new();
    let inst = f.put("x.txt", "3 1\n0 1 2\n");
    let out = f.path("p.txt");
    let v = json(&votelab(&["reduce", "x3c-dodgson", "--instance", &inst, "--out", &out]));
    assert_valid("reduce_output.schema.json", &v);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("8 1\n"), "{text}");
    let profile = votelab::io::parse_profile(&text).unwrap();
    let direct = votelab::reductions::x3c_to_dodgson(&votelab::io::parse_x3c("3 1\n0 1 2\n").unwrap()).unwrap();
    assert_eq!(profile, direct.profile);
    let layout: Value = serde_json::from_str(&fs::read_to_string(format!("{out}.layout.json")).unwrap()).unwrap();
    assert_eq!(layout["threshold"], 4);
    assert_eq!(layout["layout"]["m"], 8);
}

#[test]
fn mcgarvey_of_empty_graph_has_zero_margins() {
    let f = Files::new();
    let g = f.put("g.txt", "4 0\n");
    let out = f.path("p.txt");
    let v = json(&votelab(&["reduce", "mcgarvey", "--graph", &g, "--out", &out]));
    assert_valid("reduce_output.schema.json", &v);
    let p = votelab::io::parse_profile(&fs::read_to_string(&out).unwrap()).unwrap();
    let w = votelab::wmg(&p);
    assert!((0..4).all(|a| (0..4).all(|b| *w.margin(a, b) == 0)));
}

#[test]
fn mcgarvey_round_trip_doubles_arcs() {
    let f = Files::new();
    let g = f.put("g.txt", CYCLE_GRAPH);
    let out = f.path("p.txt");
    json(&votelab(&["reduce", "mcgarvey", "--graph", &g, "--out", &out]));
    let p = votelab::io::parse_profile(&fs::read_to_string(&out).unwrap()).unwrap();
    let w = votelab::wmg(&p);
    assert_eq!((*w.margin(0, 1), *w.margin(1, 2), *w.margin(2, 0)), (2, 2, 2));
}

#[test]
fn efas_check_on_three_cycle() {
    let f = Files::new();
    let g = f.put("g.txt", CYCLE_GRAPH);
    let yes = json(&votelab(&["reduce", "efas-check", "--graph", &g, "--threshold", "1", "--verify"]));
    assert_eq!((yes["decision"].as_str(), yes["bruteforce"].as_str()), (Some("yes"), Some("yes")));
    assert_valid("reduce_output.schema.json", &yes);
    let no = json(&votelab(&["reduce", "efas-check", "--graph", &g, "--threshold", "0"]));
    assert_eq!(no["decision"], "no");
    let path = f.put("path.txt", "3 2\n0 1\n1 2\n");
    assert_eq!(code(&votelab(&["reduce", "efas-check", "--graph", &path, "--threshold", "0"])), 1);
}

fn run_config(f: &Files, name: &str, config: &str, out_dir: &str) -> Output {
    let cfg = f.put(name, config);
    votelab(&["experiment", "--config", &cfg, "--out", out_dir])
}

fn read_report(dir: &str, claim: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(PathBuf::from(dir).join(format!("{claim}.json"))).unwrap()).unwrap()
}

#[test]
fn claim2_with_full_partial_randomization_passes() {
    let f = Files::new();
    let config = r#"{"claim":"claim2","trials":200,"seed":3,"model":{"model":"partial_alt","K":17},
        "instances":[{"q":6,"subsets":[[0,1,2],[2,3,4],[3,4,5]]},{"q":6,"subsets":[[0,1,2],[0,3,4],[1,3,5],[2,4,5]]}]}"#;
    let dir = f.path("out");
    let v = json(&run_config(&f, "c.json", config, &dir));
    assert_valid("experiment_summary.schema.json", &v);
    assert_eq!(v["passed"], true);
    let report = read_report(&dir, "claim2");
    assert_valid("experiment_report.schema.json", &report);
    for freq in report["frequencies"].as_array().unwrap() {
        assert_eq!(freq["value"], 1.0);
    }
}

#[test]
fn shipped_theorem4_config_passes() {
    let f = Files::new();
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/theorem4.json");
    let dir = f.path("out");
    let v = json(&votelab(&["experiment", "--config", cfg.to_str().unwrap(), "--out", &dir]));
    assert_eq!(v["passed"], true);
    let report = read_report(&dir, "theorem4");
    assert_valid("experiment_report.schema.json", &report);
    let csv = fs::read_to_string(PathBuf::from(&dir).join("theorem4.csv")).unwrap();
    assert_eq!(csv.lines().count(), 10_001);
}

#[test]
fn shipped_configs_match_the_schema() {
    let validator = schema("experiment_config.schema.json");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(validator.is_valid(&v), "{text}");
        votelab::experiments::ExperimentConfig::from_json(&text).unwrap();
        seen += 1;
    }
    assert_eq!(seen, 4);
    let bad: Value = serde_json::from_str(r#"{"claim":"claim2","trials":0,"seed":1,"colour":"red"}"#).unwrap();
    assert!(!validator.is_valid(&bad));
}

#[test]
fn malformed_config_exits_1_with_message() {
    let f = Files::new();
    let dir = f.path("out");
    for config in [r#"{"claim":"claim2","trials":1}"#, r#"{"claim":"theorem4","m":3,"n":10,"model":{"model":"alpha_ic","alpha":"1/3"},"trials":5,"seed":1}"#, "{"] {
        let out = run_config(&f, "bad.json", config, &dir);
        assert_eq!(code(&out), 1, "{config}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("invalid configuration"));
    }
}

#[test]
fn failed_verdict_exits_4() {
    // The greedy decider cannot certify the reduction profiles, so instances
    // without a cover are never answered No.
    let f = Files::new();
    let config = r#"{"claim":"algorithm1","trials":50,"seed":2,"decider":"greedy",
        "instances":[{"q":6,"subsets":[[0,1,2],[2,3,4],[1,4,5]]}]}"#;
    let dir = f.path("out");
    let out = run_config(&f, "c.json", config, &dir);
    assert_eq!(code(&out), 4, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(PathBuf::from(&dir).join("algorithm1.csv").exists());
}

#[test]
fn experiments_are_byte_identical_on_rerun() {
    let f = Files::new();
    let config = r#"{"claim":"claim1","m":4,"n":300,"model":{"model":"alpha_ic","alpha":"3/4"},"trials":500,"seed":77,"adversary":"random"}"#;
    let (a, b) = (f.path("a"), f.path("b"));
    json(&run_config(&f, "c.json", config, &a));
    json(&run_config(&f, "c.json", config, &b));
    for ext in ["csv", "json", "dat"] {
        let x = fs::read(PathBuf::from(&a).join(format!("claim1.{ext}"))).unwrap();
        let y = fs::read(PathBuf::from(&b).join(format!("claim1.{ext}"))).unwrap();
        assert_eq!(x, y, "claim1.{ext}");
    }
}
