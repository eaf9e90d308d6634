use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn starconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starconf"))
        .args(args)
        .env_remove("STARCONF_SEED")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_starconf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn point_strings(v: &Value) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect())
        .collect();
    pts.sort();
    pts
}

const NINE: [[i64; 3]; 9] = [
    [1, 2, 6],
    [1, 3, 8],
    [1, 4, 10],
    [1, 6, 12],
    [1, 8, 15],
    [1, 12, 20],
    [1, 2, 0],
    [1, 3, 0],
    [1, 6, 2],
];

fn nine_points_json() -> String {
    json!({ "n": 2, "points": NINE }).to_string()
}

#[test]
fn hadamard_star_reproduces_the_nine_points() {
    let v = json_of(&starconf(&[
        "construct", "hadamard-star", "--line", "x+y-z", "--x", "1,2,3,4", "--y", "-1,-2,-3",
    ]));
    let mut expected: Vec<Vec<i64>> = NINE.iter().map(|p| p.to_vec()).collect();
    expected.sort();
    assert_eq!(point_strings(&v["points"]), expected);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 7);
    assert_eq!(v["powers_are_contact_stars"], json!(true));
    assert_eq!(v["conics"].as_array().unwrap().len(), 1);
}

#[test]
fn small_contact_star() {
    let v = json_of(&starconf(&["construct", "contact-star", "--n", "2", "--params", "0,1,2"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 3);
}

#[test]
fn line_power_gives_coordinate_cubes() {
    let v = json_of(&starconf(&["construct", "line-power", "--n", "3", "--through", "1,1,2,0;1,-1,0,-2"]));
    assert_eq!(v["is_rnc"], json!(true));
    // the forms are the cubes of a s + b t with (a, b) the coordinate pairs
    let texts: Vec<&str> = v["forms"].as_array().unwrap().iter().map(|f| f["text"].as_str().unwrap()).collect();
    assert_eq!(texts, ["x^3 + 3*x^2*y + 3*x*y^2 + y^3", "x^3 - 3*x^2*y + 3*x*y^2 - y^3", "8*x^3", "-8*y^3"]);
}

#[test]
fn octagon_construction() {
    let v = json_of(&starconf(&["construct", "octagon", "--seed", "3"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(v["p"].as_array().unwrap().len(), 4);
    assert_eq!(v["gamma"].as_array().unwrap().len(), 4);
}

#[test]
fn construct_rejects_bad_parameters() {
    for args in [
        &["construct", "contact-star", "--params", "0,0,1"][..],
        &["construct", "hadamard-star", "--line", "x+q", "--x", "1,2"],
        &["construct", "hadamard-star", "--x", "1,2"],
        &["construct", "line-power", "--n", "3", "--through", "1,1,2,0"],
        &["construct", "octagon", "--params", "1,2,3"],
    ] {
        let out = starconf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn hvector_of_point_files() {
    let v = json_of(&with_stdin(&["hvector"], &nine_points_json()));
    assert_eq!(v["h"], json!([1, 2, 3, 2, 1]));
    let eight = json!({ "n": 3, "points": [
        [1, 6, 24, 0], [1, 8, 30, 0], [1, 12, 40, 0], [1, 24, 60, 6],
        [1, -6, 0, -24], [1, -8, 0, -30], [1, -12, 0, -40], [1, -24, -6, -60],
    ]});
    let v = json_of(&with_stdin(&["hvector"], &eight.to_string()));
    assert_eq!(v["h"], json!([1, 3, 3, 1]));
    assert_eq!(v["hilbert_function"], json!([1, 4, 7, 8]));
}

#[test]
fn hvector_of_general_double_points() {
    let v = json_of(&starconf(&["hvector", "--fat", "2,2,2,2,2"]));
    assert_eq!(v["h"], json!([1, 2, 3, 4, 4, 1]));
    assert_eq!(v["degree"], json!(15));
}

#[test]
fn malformed_input_exits_with_2() {
    for input in ["not json", r#"{"n": 2}"#, r#"{"n": 2, "points": [["1", "0"]]}"#, r#"{"n": 2, "points": [[0, 0, 0]]}"#] {
        let out = with_stdin(&["hvector"], input);
        assert_eq!(out.status.code(), Some(2), "{input}");
    }
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "thm4.2", "--r", "2..8", "--s", "2..8", "--seed", "7"][..],
        &["verify", "lem3.6", "--r", "6", "--s", "2"],
        &["verify", "prop5.1", "--trials", "20"],
    ] {
        let v = json_of(&starconf(args));
        assert_eq!(v["verdict"], json!("PASS"), "{args:?}");
        assert!(v["negative_controls"].as_u64().unwrap() > 0);
        assert_eq!(v["negative_controls"], v["negative_controls_rejected"]);
        assert!(v.get("minimal_failing_instance").is_none());
    }
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "lem4.1", "--s", "2..3", "--t", "1..2", "--seed", "11"];
    let a = starconf(&args);
    let b = starconf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = starconf(&["verify", "lem4.1", "--s", "2..3", "--t", "1..2", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_starconf"))
        .args(["verify", "brianchon", "--trials", "2"])
        .env("STARCONF_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], json!(99));
    assert_eq!(json_of(&starconf(&["verify", "brianchon", "--trials", "2"]))["seed"], json!(7));
}

#[test]
fn timings_only_on_request() {
    let plain = starconf(&["verify", "brianchon", "--trials", "2"]);
    assert!(!String::from_utf8_lossy(&plain.stdout).contains("wall_time_ms"));
    let timed = starconf(&["verify", "brianchon", "--trials", "2", "--timings"]);
    assert!(String::from_utf8_lossy(&timed.stdout).contains("wall_time_ms"));
}

#[test]
fn verify_usage_errors() {
    for args in [
        &["verify", "thm9.9"][..],
        &["verify", "thm4.2", "--r", "8..2"],
        &["verify", "thm4.2", "--trials", "0"],
        &["verify", "thm3.1d", "--r", "3", "--line", "5"],
        &["verify", "lem3.6", "--r", "3", "--s", "2"],
    ] {
        assert_eq!(starconf(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("starconf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("star.json");
    let out = starconf(&["construct", "contact-star", "--params", "0,1,2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn five_double_points_campaign_reports_the_mismatch() {
    let v = json_of(&starconf(&["explore", "conj4.7", "--s", "5", "--mults", "2"]));
    assert_eq!(v["agreements"], json!(0));
    let c = &v["counterexamples"][0];
    assert_eq!(c["computed"]["contact_stars"], json!([1, 2, 3, 4, 5]));
    assert_eq!(c["expected"]["general_fat_points"], json!([1, 2, 3, 4, 4, 1]));
}

#[test]
fn three_star_cases_agree() {
    // multiplicities (t-1, r-1, s-1) with t in {r+s-1, r+s, r+s+1}
    for mults in ["3,2,1", "4,2,1", "5,2,1", "5,3,3"] {
        let v = json_of(&starconf(&["explore", "conj4.7", "--s", "3", "--mults", mults, "--trials", "2"]));
        assert_eq!(v["agreements"], json!(2), "{mults}");
        assert!(v["counterexamples"].as_array().unwrap().is_empty());
    }
}

#[test]
fn random_small_campaign_records_its_sampling() {
    let v = json_of(&starconf(&["explore", "conj4.7", "--trials", "3", "--m", "1..3"]));
    assert_eq!(v["trials"], json!(9));
    assert_eq!(v["sampling"]["multiplicities"], json!("1..3"));
}

#[test]
fn twisted_cubic_stars_are_gorenstein() {
    let v = json_of(&starconf(&["explore", "conj6.1", "--n", "3", "--r", "4", "--s", "4"]));
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["computed"]["h"], json!([1, 3, 3, 1]));
        assert_eq!(r["computed"]["gorenstein"], json!(true));
    }
}

#[test]
fn explore_usage_errors() {
    assert_eq!(starconf(&["explore", "conj9.9"]).status.code(), Some(2));
    assert_eq!(starconf(&["explore", "conj6.1", "--n", "5"]).status.code(), Some(2));
    assert_eq!(starconf(&["explore", "conj4.7", "--s", "3", "--mults", "1,2"]).status.code(), Some(2));
}

fn count(s: &str, tag: &str) -> usize {
    s.matches(tag).count()
}

fn nine_point_config() -> String {
    let out = starconf(&["construct", "hadamard-star", "--line", "x+y-z", "--x", "1,2,3,4", "--y", "-1,-2,-3"]);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn svg_of_the_nine_point_configuration() {
    let out = with_stdin(&["svg"], &nine_point_config());
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("<?xml"));
    assert_eq!(count(&s, "<circle"), 9);
    assert_eq!(count(&s, "<line "), 7);
    assert!(count(&s, "<polyline") >= 1);
    let again = with_stdin(&["svg"], &nine_point_config());
    assert_eq!(again.stdout, s.as_bytes());
}

#[test]
fn svg_of_two_contact_stars() {
    let config = starconf(&["construct", "contact-star", "--params", "0,1,-1,3;2,-2,5,-4"]);
    let out = with_stdin(&["svg"], &String::from_utf8(config.stdout).unwrap());
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(count(&s, "<line "), 8);
    assert!(count(&s, "<circle") <= 12);
    assert!(count(&s, "<polyline") >= 1);
}

#[test]
fn svg_edge_cases() {
    let empty = with_stdin(&["svg"], r#"{"n": 2, "points": []}"#);
    assert!(empty.status.success());
    let s = String::from_utf8(empty.stdout).unwrap();
    assert!(s.contains("<svg") && s.contains("</svg>"));
    assert_eq!(count(&s, "<circle"), 0);
    let space = with_stdin(&["svg"], r#"{"n": 3, "points": []}"#);
    assert_eq!(space.status.code(), Some(2));
}
