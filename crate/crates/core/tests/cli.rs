use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(json: &str) {
    let value: Value = serde_json::from_str(json).expect("output is JSON");
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {:?}\n{}", errors, json);
}

#[test]
fn check_reports_structure() {
    let o = run(&["check", &fixture("h3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Jacobi"), "{}", text);
    assert!(text.contains("1 2 2 1") || text.contains("[1, 2, 2, 1]"), "{}", text);
}

#[test]
fn every_command_emits_schema_valid_json() {
    let chars = fixture("exc_characters.json");
    let runs: Vec<Vec<String>> = vec![
        vec!["check".into(), fixture("filiform4.json")],
        vec!["check".into(), fixture("sl2.json")],
        vec!["nilshadow".into(), fixture("exc.json")],
        vec!["decompose".into(), fixture("h5.json")],
        vec!["decompose".into(), fixture("q_plus_h3.json"), "--characters".into(), chars.clone()],
        vec!["subdga".into(), fixture("q_plus_h3.json"), "--characters".into(), chars.clone()],
        vec!["kuranishi".into(), fixture("h3.json")],
        vec!["kuranishi".into(), fixture("abelian3.json"), "--target".into(), "gl:2".into()],
        vec!["pipeline".into(), fixture("exc.json")],
        vec!["pipeline".into(), fixture("exc.json"), "--characters".into(), chars],
    ];
    for args in runs {
        let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
        full.push("--json");
        let o = run(&full);
        assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
        assert_valid(&stdout(&o));
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["pipeline", &fixture("exc.json"), "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["kuranishi", &fixture("filiform4.json"), "--strategy", "pivot", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn strategies_agree_on_the_germ_of_h3() {
    let grab = |strategy: &str| {
        let o = run(&["--strategy", strategy, "kuranishi", &fixture("h3.json"), "--json"]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["obstructions"].as_array().unwrap().len()
    };
    assert_eq!(grab("metric"), 6);
    assert_eq!(grab("pivot"), 6);
}

#[test]
fn unknown_label_is_a_parse_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"name":"bad","basis":["x","y"],"brackets":[{"left":"x","right":"q","result":[{"coef":"1","basis":"y"}]}]}"#)
        .unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("brackets[0].right") && err.contains("unknown basis label `q`"), "{}", err);
}

#[test]
fn syntax_errors_carry_a_location() {
    let path = scratch("syntax.json");
    std::fs::write(&path, "{\"name\": \"s\",\n \"basis\": [\"x\",]\n}").unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("syntax.json:2:"), "{}", err);
}

#[test]
fn missing_file_is_an_io_error() {
    let o = run(&["check", "/nonexistent/algebra.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jacobi_failure_is_rejected() {
    let path = scratch("nonjacobi.json");
    std::fs::write(
        &path,
        r#"{"name":"nj","basis":["a","b","c"],"brackets":[
            {"left":"a","right":"b","result":[{"coef":"1","basis":"c"}]},
            {"left":"b","right":"c","result":[{"coef":"1","basis":"a"}]},
            {"left":"a","right":"c","result":[{"coef":"1","basis":"a"}]}]}"#,
    )
    .unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Jacobi"));
}

#[test]
fn json_flag_before_the_subcommand_takes_a_path() {
    // an optional value binds greedily, so a bare `--json` must come last
    let o = run(&["--json", "check", &fixture("h3.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn smooth_germ_is_announced() {
    let o = run(&["pipeline", &fixture("exc.json"), "--characters", &fixture("exc_characters.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("germ is smooth at origin"), "{}", stdout(&o));
}

#[test]
fn abelian_base_gives_a_quadratic_germ() {
    let o = run(&["kuranishi", &fixture("abelian3.json"), "--target", "sl2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let obs = v["obstructions"].as_array().unwrap();
    assert!(!obs.is_empty());
    assert!(obs.iter().all(|p| p["degree"] == 2), "{:#}", v["obstructions"]);
}

#[test]
fn germ_file_round_trips_through_mc_check() {
    let germ = scratch("h3_sl2.json");
    let o = run(&["kuranishi", &fixture("h3.json"), "--json", germ.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x∧z⊗e"), "text still goes to stdout");
    assert_valid(&std::fs::read_to_string(&germ).unwrap());

    let pass = run(&["mc-check", germ.to_str().unwrap(), "--point", "t1=1,t3=-1/2", "--json"]);
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
    assert_valid(&stdout(&pass));

    // a = h, b = e do not commute
    let obstructed = run(&["mc-check", germ.to_str().unwrap(), "--point", "t2=1,t4=1"]);
    assert_eq!(obstructed.status.code(), Some(1));
    assert!(stdout(&obstructed).contains("[x∧z⊗e] = 8"), "{}", stdout(&obstructed));

    let unknown = run(&["mc-check", germ.to_str().unwrap(), "--point", "s9=1"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn tampered_germ_file_is_an_invariant_violation() {
    let germ = scratch("tampered.json");
    let o = run(&["kuranishi", &fixture("h3.json"), "--json", germ.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&germ).unwrap()).unwrap();
    v["obstructions"][0]["polynomial"] = Value::String("t1^3".into());
    std::fs::write(&germ, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["mc-check", germ.to_str().unwrap(), "--point", "t1=1"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exc_pipeline_reports_each_stage() {
    let o = run(&["pipeline", &fixture("exc.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for needle in ["[X,Y] = Z", "1 3 4 3 1", "pass"] {
        assert!(text.contains(needle), "missing {:?} in\n{}", needle, text);
    }
}

#[test]
fn conflicting_selections_are_rejected_by_the_parser() {
    let c = fixture("exc_characters.json");
    let o = run(&["decompose", &fixture("exc.json"), "--characters", &c, "--subdga", &c]);
    assert_eq!(o.status.code(), Some(2));
}
