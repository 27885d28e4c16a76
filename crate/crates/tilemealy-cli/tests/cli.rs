//! End-to-end tests against the real binary: exit codes, file round-trips,
//! report determinism, and the environment override.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tilemealy::format::{parse_automaton, print_automaton};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tilemealy"));
    // Keep tests hermetic against an ambient override.
    c.env_remove("TILEMEALY_DEFAULT_BUDGET");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn nw_check_exit_codes() {
    let ok = run(&["nw-check", fixture("mono.tiles").to_str().unwrap()]);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    assert!(stdout(&ok).contains("yes"));

    let conflict = run(&["nw-check", fixture("nw_conflict.tiles").to_str().unwrap()]);
    assert_eq!(code(&conflict), 1);
    assert!(stdout(&conflict).contains("`a`") && stdout(&conflict).contains("`a2`"));

    let bad = run(&["nw-check", fixture("bad_color.tiles").to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    let err = stderr(&bad);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");
    assert!(err.contains("unknown color"), "{err}");

    let missing = run(&["nw-check", "/definitely/not/here.tiles"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn reduce_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("mono.mealy");
    let reduce = run(&[
        "reduce",
        fixture("mono.tiles").to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&reduce), 0, "{}", stderr(&reduce));

    let text = std::fs::read_to_string(&out_path).unwrap();
    let machine = parse_automaton(&text).expect("emitted file parses");
    assert_eq!(print_automaton(&machine), text, "round trip must be bit-exact");
    // Two letters, four rule lines.
    assert_eq!(machine.states().len(), 2);
    assert_eq!(text.lines().count(), 2 + 4);

    // Every output of the vert machine is the bottom letter.
    let vert = run(&["reduce", fixture("vert.tiles").to_str().unwrap()]);
    assert_eq!(code(&vert), 0);
    for line in stdout(&vert).lines().skip(2) {
        assert!(line.ends_with("/ _bot"), "{line}");
    }

    let conflict = run(&["reduce", fixture("nw_conflict.tiles").to_str().unwrap()]);
    assert_eq!(code(&conflict), 1);
}

#[test]
fn solver_commands_and_reports() {
    let stripes = fixture("stripes.tiles");
    let out = run(&["tile", stripes.to_str().unwrap(), "4", "4", "--json", "-"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"outcome\": \"found\""));

    let out = run(&["torus", fixture("vert.tiles").to_str().unwrap(), "--max-px", "3", "--max-py", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no torus tiling"));

    let out = run(&["least-n", fixture("vert.tiles").to_str().unwrap(), "--max-n", "3", "--json", "-"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"n\": 1"));

    let out = run(&["tile", stripes.to_str().unwrap(), "0", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_and_order() {
    let dir = tempfile::tempdir().unwrap();
    let vert_sink = dir.path().join("vert_sink.mealy");
    let mono_sink = dir.path().join("mono_sink.mealy");
    assert_eq!(
        code(&run(&[
            "reduce",
            fixture("vert.tiles").to_str().unwrap(),
            "--with-sink",
            "-o",
            vert_sink.to_str().unwrap(),
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "reduce",
            fixture("mono.tiles").to_str().unwrap(),
            "--with-sink",
            "-o",
            mono_sink.to_str().unwrap(),
        ])),
        0
    );

    let out = run(&["enumerate", vert_sink.to_str().unwrap(), "--json", "-"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"verdict\": \"finite\""));

    let out = run(&["order", vert_sink.to_str().unwrap(), "-f", "_bot", "-g", "_c"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("f^1 = g"));

    let out = run(&[
        "order",
        mono_sink.to_str().unwrap(),
        "-f",
        "_bot",
        "-g",
        "_c",
        "--max-n",
        "50",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no n ≤ 50"));

    let out = run(&["order", mono_sink.to_str().unwrap(), "-f", "nope", "-g", "_c"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verification_commands() {
    let out = run(&[
        "verify-lemma1",
        fixture("mono.tiles").to_str().unwrap(),
        "--m-max",
        "8",
        "--n-max",
        "8",
        "--prefix-len",
        "32",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("pass"));

    let out = run(&["verify-claim", fixture("vert.tiles").to_str().unwrap(), "--prefix-len", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("64 evaluations"));

    // The plane is tileable for mono, so the claim's hypothesis can never
    // be certified: distinct from a lemma failure.
    let out = run(&["verify-claim", fixture("mono.tiles").to_str().unwrap()]);
    assert_eq!(code(&out), 3);

    // And no torus exists for vert, so the shift check has no hypothesis.
    let out = run(&["verify-lemma1", fixture("vert.tiles").to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn semidecide_codes_and_starvation() {
    let out = run(&["semidecide", fixture("stripes.tiles").to_str().unwrap(), "--json", "-"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("infinite_certified"));

    let out = run(&["semidecide", fixture("vert.tiles").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("finite"));

    let out = run(&[
        "semidecide",
        fixture("stripes.tiles").to_str().unwrap(),
        "--budget-nodes",
        "1",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("unknown"));
}

#[test]
fn render_pipeline_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("tile.json");
    let svg = dir.path().join("tile.svg");
    let out = run(&[
        "tile",
        fixture("stripes.tiles").to_str().unwrap(),
        "3",
        "2",
        "--json",
        report.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));

    let rendered = dir.path().join("again.svg");
    let out = run(&[
        "render",
        fixture("stripes.tiles").to_str().unwrap(),
        "--tiling",
        report.to_str().unwrap(),
        "--svg",
        rendered.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(std::fs::read_to_string(&rendered).unwrap(), svg_text);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["semidecide", fixture("stripes.tiles").to_str().unwrap(), "--json", "-"],
        vec!["semidecide", fixture("vert.tiles").to_str().unwrap(), "--json", "-"],
        vec!["torus", fixture("stripes.tiles").to_str().unwrap(), "--json", "-"],
        vec!["verify-lemma1", fixture("mono.tiles").to_str().unwrap(), "--json", "-"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(code(&first), code(&second));
        assert_eq!(stdout(&first), stdout(&second), "args: {args:?}");
    }
}

#[test]
fn env_var_overrides_default_budget() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("mono.mealy");
    assert_eq!(
        code(&run(&[
            "reduce",
            fixture("mono.tiles").to_str().unwrap(),
            "-o",
            mono.to_str().unwrap(),
        ])),
        0
    );

    let mut cmd = bin();
    cmd.args(["enumerate", mono.to_str().unwrap(), "--json", "-"])
        .env("TILEMEALY_DEFAULT_BUDGET", "120");
    let out = cmd.output().unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"verdict\": \"budget_exceeded\""), "{text}");
    assert!(text.contains("\"max_elements\": 120"), "{text}");

    // An explicit flag wins over the environment.
    let mut cmd = bin();
    cmd.args([
        "enumerate",
        mono.to_str().unwrap(),
        "--budget-elements",
        "60",
        "--json",
        "-",
    ])
    .env("TILEMEALY_DEFAULT_BUDGET", "120");
    let out = cmd.output().unwrap();
    assert!(stdout(&out).contains("\"max_elements\": 60"));
}
