//! End-to-end checks of the command-line interface: documented examples,
//! byte-exact rerun determinism, CSV/JSON equivalence, placement round
//! trips, validation exit codes, and SVG output.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_walkway-cli"))
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("walkway-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = temp_path(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// Run expecting success; returns (stdout, stderr).
fn run_ok(args: &[&str]) -> (String, String) {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {args:?} failed with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Run expecting failure; returns (exit code, stderr).
fn run_err(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    assert!(
        !out.status.success(),
        "command {args:?} unexpectedly succeeded: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout.trim()).expect("stdout must be one JSON document")
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing number {key} in {v}"))
}

/// A small labelled planar document shared by several tests: alternating
/// red/blue points plus demand pairs.
fn labelled_doc() -> String {
    let pts: Vec<(f64, f64)> = (0..14)
        .map(|i| {
            let t = i as f64;
            (t * 0.7 + (t * 2.3).sin(), (t * 1.3).cos() * 2.0 + 2.5)
        })
        .collect();
    let points: Vec<String> = pts.iter().map(|(x, y)| format!("[{x},{y}]")).collect();
    let labels: Vec<String> = (0..14)
        .map(|i| format!("\"{}\"", if i % 2 == 0 { "red" } else { "blue" }))
        .collect();
    format!(
        "{{\"points\":[{}],\"labels\":[{}],\"pairs\":[[0,1],[2,3],[4,5],[6,7]]}}",
        points.join(","),
        labels.join(",")
    )
}

#[test]
fn locate1d_matches_the_documented_example() {
    let input = write_temp("two_scalars.json", r#"{"points":[0,1]}"#);
    let (stdout, _) = run_ok(&["locate1d", "--input", input.to_str().unwrap(), "--v", "2"]);
    let doc = parse(&stdout);
    assert_eq!(doc["command"], "locate1d");
    assert_eq!(num(&doc, "value"), 0.5);
    assert_eq!(doc["placement"]["a"], serde_json::json!([0.0, 0.0]));
    assert_eq!(doc["placement"]["b"], serde_json::json!([1.0, 0.0]));
}

#[test]
fn decide2d_prints_a_bare_feasibility_document() {
    let input = write_temp("two_points.json", r#"{"points":[[0,0],[10,0]]}"#);
    for (budget, expected) in [("2", "{\"feasible\":true}\n"), ("1.9", "{\"feasible\":false}\n")] {
        let (stdout, _) = run_ok(&[
            "decide2d", "--input", input.to_str().unwrap(), "--ax", "1", "--ay", "0", "--bx",
            "9", "--by", "0", "--v", "inf", "--y", budget,
        ]);
        assert_eq!(stdout, expected);
    }
}

#[test]
fn fixed_walkway_diameters_match_hand_values() {
    let line = write_temp("line_ends.json", r#"{"points":[0,10]}"#);
    let (stdout, _) = run_ok(&[
        "diam1d", "--input", line.to_str().unwrap(), "--v", "inf", "--a", "1", "--b", "9",
    ]);
    // walk 1 to the start, ride free, walk 1 from the end
    assert_eq!(num(&parse(&stdout), "value"), 2.0);

    let plane = write_temp("plane_ends.json", r#"{"points":[[0,0],[10,0]]}"#);
    let (stdout, _) = run_ok(&[
        "diam2d", "--input", plane.to_str().unwrap(), "--v", "inf", "--ax", "1", "--ay", "0",
        "--bx", "9", "--by", "0",
    ]);
    assert_eq!(num(&parse(&stdout), "value"), 2.0);
}

#[test]
fn every_randomized_command_is_byte_identical_across_reruns() {
    let input = write_temp("labelled.json", &labelled_doc());
    let path = input.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["locate-pairs", "--input", path, "--v", "2", "--seed", "5"],
        vec!["locate-horizontal", "--input", path, "--v", "2", "--seed", "5"],
        vec!["locate-approx", "--input", path, "--v", "2", "--eps", "0.5", "--seed", "5"],
        vec!["unidirectional", "--input", path, "--v", "2", "--seed", "5"],
        vec!["escalator", "--input", path, "--v", "2", "--seed", "5"],
        vec!["elevator", "--input", path, "--seed", "5"],
    ];
    for args in &commands {
        let (first, _) = run_ok(args);
        let (second, _) = run_ok(args);
        assert_eq!(first, second, "{} must print byte-identical results", args[0]);
        let doc = parse(&first);
        assert_eq!(doc["seed"], 5, "{} must echo its seed", args[0]);
    }
}

#[test]
fn csv_and_json_inputs_agree() {
    let pts: Vec<(f64, f64, &str)> = vec![
        (0.0, 0.0, "red"),
        (4.0, 1.0, "blue"),
        (1.0, 3.0, "red"),
        (5.0, 2.5, "blue"),
        (2.0, 0.5, "red"),
        (3.0, 4.0, "blue"),
    ];
    let json_doc = format!(
        "{{\"points\":[{}],\"labels\":[{}]}}",
        pts.iter()
            .map(|(x, y, _)| format!("[{x},{y}]"))
            .collect::<Vec<_>>()
            .join(","),
        pts.iter()
            .map(|(_, _, l)| format!("\"{l}\""))
            .collect::<Vec<_>>()
            .join(",")
    );
    let csv_doc = pts
        .iter()
        .map(|(x, y, l)| format!("{x},{y},{l}\n"))
        .collect::<String>();
    let json_path = write_temp("same.json", &json_doc);
    let csv_path = write_temp("same.csv", &csv_doc);
    let txt_path = write_temp("same.txt", &csv_doc);

    for cmd in ["locate-horizontal", "escalator"] {
        let (from_json, _) = run_ok(&[cmd, "--input", json_path.to_str().unwrap(), "--v", "3"]);
        let (from_csv, _) = run_ok(&[cmd, "--input", csv_path.to_str().unwrap(), "--v", "3"]);
        let (from_txt, _) = run_ok(&[
            cmd, "--input", txt_path.to_str().unwrap(), "--format", "csv", "--v", "3",
        ]);
        assert_eq!(from_json, from_csv, "{cmd}: JSON and CSV inputs must agree");
        assert_eq!(from_csv, from_txt, "{cmd}: --format must override the extension");
    }

    let line_json = write_temp("line.json", r#"{"points":[0,2.5,7,10]}"#);
    let line_csv = write_temp("line.csv", "0\n2.5\n7\n10\n");
    let (a, _) = run_ok(&["locate1d", "--input", line_json.to_str().unwrap(), "--v", "2"]);
    let (b, _) = run_ok(&["locate1d", "--input", line_csv.to_str().unwrap(), "--v", "2"]);
    assert_eq!(a, b, "scalar documents must agree between JSON and CSV");
}

#[test]
fn reported_placements_round_trip_through_the_diameter_commands() {
    let input = write_temp("roundtrip.json", &labelled_doc());
    let path = input.to_str().unwrap();

    let (stdout, _) = run_ok(&["locate-horizontal", "--input", path, "--v", "2"]);
    let doc = parse(&stdout);
    let (a, b) = (&doc["placement"]["a"], &doc["placement"]["b"]);
    let coord = |v: &Value, i: usize| v[i].as_f64().unwrap().to_string();
    let (stdout, _) = run_ok(&[
        "diam2d", "--input", path, "--v", "2",
        "--ax", &coord(a, 0), "--ay", &coord(a, 1),
        "--bx", &coord(b, 0), "--by", &coord(b, 1),
    ]);
    let rechecked = num(&parse(&stdout), "value");
    assert!(
        (rechecked - num(&doc, "value")).abs() <= 1e-6,
        "re-evaluated diameter {rechecked} must match reported value {}",
        num(&doc, "value")
    );

    let line = write_temp("roundtrip_line.json", r#"{"points":[0,1,3.5,8,10]}"#);
    let (stdout, _) = run_ok(&["locate1d", "--input", line.to_str().unwrap(), "--v", "2"]);
    let doc = parse(&stdout);
    let (stdout, _) = run_ok(&[
        "diam1d", "--input", line.to_str().unwrap(), "--v", "2",
        "--a", &coord(&doc["placement"]["a"], 0),
        "--b", &coord(&doc["placement"]["b"], 0),
    ]);
    assert_eq!(
        num(&parse(&stdout), "value"),
        num(&doc, "value"),
        "shortest round-trip numbers must reproduce the line diameter exactly"
    );
}

#[test]
fn k_elevators_reports_the_worst_pair() {
    let input = write_temp(
        "kelev.json",
        r#"{"points":[[0,0],[10,0]],"labels":["red","blue"],"elevators":[[0,0]]}"#,
    );
    let (stdout, _) = run_ok(&["k-elevators", "--input", input.to_str().unwrap()]);
    let doc = parse(&stdout);
    assert_eq!(num(&doc, "value"), 10.0);
    assert_eq!(doc["witness"], serde_json::json!([[0.0, 0.0], [10.0, 0.0]]));
    assert!(doc.get("placement").is_none(), "elevator sites are inputs, not placements");
}

#[test]
fn validation_failures_exit_with_code_2() {
    let planar = write_temp("planar.json", r#"{"points":[[0,0],[1,1]]}"#);
    let scalar = write_temp("scalar.json", r#"{"points":[0,1]}"#);
    let cases: Vec<Vec<String>> = vec![
        // malformed JSON
        vec!["locate1d".into(), "--input".into(),
             write_temp("broken.json", "{\"points\":[").to_str().unwrap().into(),
             "--v".into(), "2".into()],
        // planar document to a line command and vice versa
        vec!["locate1d".into(), "--input".into(), planar.to_str().unwrap().into(), "--v".into(), "2".into()],
        vec!["locate-horizontal".into(), "--input".into(), scalar.to_str().unwrap().into(), "--v".into(), "2".into()],
        // speed at most 1
        vec!["locate1d".into(), "--input".into(), scalar.to_str().unwrap().into(), "--v".into(), "0.5".into()],
        // non-positive approximation parameter
        vec!["locate-approx".into(), "--input".into(), planar.to_str().unwrap().into(), "--v".into(), "2".into(), "--eps=-0.5".into()],
        // labelled commands without labels
        vec!["escalator".into(), "--input".into(), planar.to_str().unwrap().into(), "--v".into(), "2".into()],
        // pair and elevator lists missing
        vec!["locate-pairs".into(), "--input".into(), planar.to_str().unwrap().into(), "--v".into(), "2".into()],
        vec!["k-elevators".into(), "--input".into(),
             write_temp("no_elev.json", r#"{"points":[[0,0],[1,1]],"labels":["red","blue"]}"#)
                 .to_str().unwrap().into()],
        // schema violations
        vec!["locate1d".into(), "--input".into(),
             write_temp("extra.json", r#"{"points":[0,1],"bogus":3}"#).to_str().unwrap().into(),
             "--v".into(), "2".into()],
        vec!["escalator".into(), "--input".into(),
             write_temp("short_labels.json", r#"{"points":[[0,0],[1,1]],"labels":["red"]}"#)
                 .to_str().unwrap().into(),
             "--v".into(), "2".into()],
        vec!["escalator".into(), "--input".into(),
             write_temp("bad_label.json", r#"{"points":[[0,0],[1,1]],"labels":["red","green"]}"#)
                 .to_str().unwrap().into(),
             "--v".into(), "2".into()],
        vec!["locate-pairs".into(), "--input".into(),
             write_temp("bad_pair.json", r#"{"points":[[0,0],[1,1]],"pairs":[[0,7]]}"#)
                 .to_str().unwrap().into(),
             "--v".into(), "2".into()],
        // CSV with a non-numeric coordinate
        vec!["locate-horizontal".into(), "--input".into(),
             write_temp("bad.csv", "1,oops\n").to_str().unwrap().into(),
             "--v".into(), "2".into()],
    ];
    for case in &cases {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        let (code, stderr) = run_err(&args);
        assert_eq!(code, 2, "{args:?} must exit with code 2, stderr: {stderr}");
        assert!(!stderr.is_empty(), "{args:?} must explain the failure on stderr");
    }
}

#[test]
fn elapsed_time_goes_to_stderr_only() {
    let input = write_temp("timing.json", &labelled_doc());
    let (stdout, stderr) = run_ok(&[
        "locate-horizontal", "--input", input.to_str().unwrap(), "--v", "2",
    ]);
    assert!(stderr.contains("elapsed_ms"), "stderr must report the elapsed time");
    assert!(!stdout.contains("elapsed"), "stdout must stay free of timing noise");
}

#[test]
fn svg_files_render_the_scene() {
    let input = write_temp("svg_points.json", &labelled_doc());
    let svg_path = temp_path("placement.svg");
    run_ok(&[
        "locate-horizontal", "--input", input.to_str().unwrap(), "--v", "2",
        "--svg", svg_path.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"), "file must open with an svg element");
    assert!(svg.contains("<circle"), "points must be drawn");
    assert!(svg.contains("<line"), "the walkway segment must be drawn");

    let kelev = write_temp(
        "svg_kelev.json",
        r#"{"points":[[0,0],[10,0]],"labels":["red","blue"],"elevators":[[2,1]]}"#,
    );
    let svg_path = temp_path("elevators.svg");
    run_ok(&[
        "k-elevators", "--input", kelev.to_str().unwrap(),
        "--svg", svg_path.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.contains("<rect x="), "elevator sites must be drawn as squares");
}
