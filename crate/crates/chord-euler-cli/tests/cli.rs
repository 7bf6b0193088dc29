use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chord_euler_cli::files::{parse_polygon, parse_sidecar, print_polygon};
use chord_euler_cli::{EXIT_CAP, EXIT_GENERATOR, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chord-euler")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn analyze_json(file: &Path, classes: bool) -> Value {
    let mut args = vec!["analyze", file.to_str().unwrap(), "--fvector", "--chi", "--json"];
    if classes {
        args.push("--classes");
    }
    let o = cli(&args);
    assert_eq!(code(&o), EXIT_OK, "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn analyze_dart() {
    let v = analyze_json(&fixture("dart.json"), false);
    assert_eq!(v["chi_d"], 0);
    assert_eq!(v["chi_e"], 0);
    assert_eq!(v["reflex"], serde_json::json!([2]));
    assert_eq!(v["theorem1"]["passed"], true);
}

#[test]
fn analyze_hexagon() {
    let v = analyze_json(&fixture("hexagon.json"), true);
    assert_eq!(v["d_fvector"], serde_json::json!([1, 9, 21, 14]));
    assert_eq!(v["convex"], true);
    assert_eq!(v["classes"][0]["memberships"], serde_json::json!(["convex"]));
}

#[test]
fn analyze_text() {
    let o = cli(&["analyze", fixture("dart.json").to_str().unwrap(), "--chi"]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(stdout(&o).contains("chi(M_d)  0"));
}

#[test]
fn input_errors() {
    let cases = [
        ("bowtie.json", "self-intersection (0-1, 2-3)"),
        ("collinear.json", "collinear triple (0, 1, 2)"),
        ("malformed.json", "parse error"),
        ("bad_scalar.json", "not a rational"),
        ("missing.json", "missing.json"),
    ];
    for (f, msg) in cases {
        let o = cli(&["analyze", fixture(f).to_str().unwrap()]);
        assert_eq!(code(&o), EXIT_INPUT, "{f}");
        assert!(stderr(&o).contains(msg), "{f}: {}", stderr(&o));
    }
    let o = cli(&["analyze"]);
    assert_eq!(code(&o), EXIT_INPUT);
    // Class detection is defined from five vertices on.
    let o = cli(&["analyze", fixture("dart.json").to_str().unwrap(), "--classes"]);
    assert_eq!(code(&o), EXIT_INPUT);
    let o = cli(&["render", fixture("dart.json").to_str().unwrap(), "--chords", fixture("bad.chords.json").to_str().unwrap()]);
    assert_eq!(code(&o), EXIT_INPUT);
}

#[test]
fn caps_and_generator_failures() {
    assert_eq!(code(&cli(&["verify", "theorem1", "--n", "3..40"])), EXIT_CAP);
    assert_eq!(code(&cli(&["verify", "zigzag", "--l", "-50..50"])), EXIT_CAP);
    assert_eq!(code(&cli(&["generate", "class1", "--n", "3"])), EXIT_GENERATOR);
    assert_eq!(code(&cli(&["generate", "zigzag", "--l", "1"])), EXIT_GENERATOR);
}

#[test]
fn verify_campaigns_pass() {
    for args in [
        &["verify", "theorem1", "--n", "3..9", "--random", "1000"][..],
        &["verify", "catalan", "--n", "1..10", "--a", "1..4"],
        &["verify", "zigzag", "--l", "-5..5"],
        &["verify", "theorem3", "--n", "5..7", "--random", "50", "--seed", "3"],
        &["verify", "lemmae", "--n", "4..7", "--random", "20"],
        &["verify", "theorem2", "--n", "4..6", "--random", "5"],
    ] {
        let o = cli(args);
        assert_eq!(code(&o), EXIT_OK, "{args:?}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains(", 0 failures"), "{args:?}");
    }
}

#[test]
fn catalan_value() {
    let o = cli(&["catalan", "--n", "2", "--k", "1", "--a", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (EXIT_OK, "5"));
}

#[test]
fn generate_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z.json");
    let o = cli(&["generate", "zigzag", "--l", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), EXIT_OK, "{}", stderr(&o));
    let side = parse_sidecar(&std::fs::read_to_string(dir.path().join("z.chords.json")).unwrap()).unwrap();
    assert_eq!(side.chords().unwrap().len(), 3);
    assert_eq!(side.labels.len(), 3);

    let svg = dir.path().join("z.svg");
    let o = cli(&[
        "render",
        out.to_str().unwrap(),
        "--chords",
        dir.path().join("z.chords.json").to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), EXIT_OK);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="diagonal""#).count(), 3);

    for (kind, extra) in [("convex", &["--n", "7"][..]), ("class2", &["--inner", "4", "--i", "0"])] {
        let mut args = vec!["generate", kind];
        args.extend_from_slice(extra);
        let o = cli(&args);
        assert_eq!(code(&o), EXIT_OK, "{kind}");
        parse_polygon(&stdout(&o)).unwrap();
    }
}

#[test]
fn render_dart() {
    let dart = fixture("dart.json");
    let o = cli(&["render", dart.to_str().unwrap(), "--chords", fixture("dart.chords.json").to_str().unwrap()]);
    assert_eq!(code(&o), EXIT_OK);
    let s = stdout(&o);
    assert_eq!(s.matches(r#"class="diagonal""#).count(), 1);
    assert_eq!(s.matches(r#"class="epigonal""#).count(), 1);
    assert_eq!(s.matches("<circle").count(), 4);

    let bare = stdout(&cli(&["render", dart.to_str().unwrap()]));
    assert!(!bare.contains("<line"));
}

#[test]
fn deterministic_and_round_trip() {
    for args in [
        &["generate", "random", "--n", "9", "--seed", "7"][..],
        &["generate", "class6", "--n", "8", "--i", "2"],
        &["generate", "zigzag", "--l", "-3"],
        &["verify", "theorem3", "--n", "5..6", "--random", "20"],
        &["analyze", fixture("hexagon.json").to_str().unwrap(), "--classes", "--json"],
    ] {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(code(&a), EXIT_OK, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        if args[0] == "generate" {
            let p = parse_polygon(&stdout(&a)).unwrap();
            assert_eq!(print_polygon(&p), stdout(&a));
        }
    }
}
