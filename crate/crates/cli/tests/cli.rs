//! End-to-end checks of the `ca2d` binary: worked examples through files,
//! determinism of seeded generation, and the error surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ca2d"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

const FIG2: &str = "P1\n4 3\n0 0 1 0\n1 1 1 0\n1 0 1 1\n";

#[test]
fn step_reproduces_the_worked_example() {
    let dir = workdir("step-example");
    let input = dir.join("in.pbm");
    let output = dir.join("out.pbm");
    std::fs::write(&input, FIG2).unwrap();
    let out = run(&[
        "step",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--rule",
        "170",
    ]);
    assert_ok(&out);
    let grid = ca2d::read_image(&output).unwrap();
    assert_eq!(
        grid.to_rows(),
        vec![vec![1, 0, 1, 1], vec![0, 0, 1, 0], vec![1, 1, 0, 1]]
    );
}

#[test]
fn identity_rule_survives_many_steps() {
    let dir = workdir("step-identity");
    let input = dir.join("in.pbm");
    let output = dir.join("out.pbm");
    std::fs::write(&input, FIG2).unwrap();
    let out = run(&[
        "step",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--rule",
        "1",
        "--steps",
        "7",
    ]);
    assert_ok(&out);
    assert_eq!(
        ca2d::read_image(&output).unwrap(),
        ca2d::read_image(&input).unwrap()
    );
}

#[test]
fn hybrid_rows_step_through_a_rules_file() {
    let dir = workdir("step-hybrid");
    let input = dir.join("in.pbm");
    let rules = dir.join("rows.rules");
    let output = dir.join("out.pbm");
    std::fs::write(&input, FIG2).unwrap();
    std::fs::write(&rules, "2 2 2 2\n3 3 3 3\n4 4 4 4\n").unwrap();
    let out = run(&[
        "step",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--rules-file",
        rules.to_str().unwrap(),
    ]);
    assert_ok(&out);
    assert_eq!(
        ca2d::read_image(&output).unwrap().to_rows(),
        vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 0]]
    );
}

#[test]
fn matrix_block_and_direct_agree_and_apply_through_a_file() {
    let dir = workdir("matrix");
    let direct = run(&["matrix", "-m", "3", "-n", "4", "--rule", "170"]);
    let block = run(&["matrix", "-m", "3", "-n", "4", "--rule", "170", "--block"]);
    assert_ok(&direct);
    assert_eq!(direct.stdout, block.stdout);

    let matrix_path = dir.join("m170.txt");
    std::fs::write(&matrix_path, &direct.stdout).unwrap();
    let input = dir.join("in.pbm");
    let output = dir.join("out.pbm");
    std::fs::write(&input, FIG2).unwrap();
    let out = run(&[
        "step",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--matrix-file",
        matrix_path.to_str().unwrap(),
    ]);
    assert_ok(&out);
    assert_eq!(
        ca2d::read_image(&output).unwrap().to_rows(),
        vec![vec![1, 0, 1, 1], vec![0, 0, 1, 0], vec![1, 1, 0, 1]]
    );
}

#[test]
fn matrix_emits_dependency_lists_that_round_trip() {
    let dir = workdir("matrix-deps");
    let deps = run(&[
        "matrix", "-m", "3", "-n", "3", "--rule", "2", "--emit", "deps",
    ]);
    assert_ok(&deps);
    let deps_path = dir.join("rule2.deps");
    std::fs::write(&deps_path, &deps.stdout).unwrap();
    let rebuilt = run(&[
        "matrix",
        "-m",
        "3",
        "-n",
        "3",
        "--deps-file",
        deps_path.to_str().unwrap(),
    ]);
    assert_ok(&rebuilt);
    let direct = run(&["matrix", "-m", "3", "-n", "3", "--rule", "2"]);
    assert_eq!(rebuilt.stdout, direct.stdout);
}

#[test]
fn verify_reports_and_exits_zero() {
    let dir = workdir("verify");
    let report = dir.join("report.txt");
    let out = run(&[
        "verify",
        "--sizes",
        "2..4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("classic 31-rule reversible list: all contained"));
    assert!(stdout.contains("matches exactly"));
    let table = std::fs::read_to_string(&report).unwrap();
    assert_eq!(table.lines().count(), 513);
    assert!(table.starts_with("rule group verdict"));
}

#[test]
fn transform_round_trip_through_files() {
    let dir = workdir("transform");
    let seed = dir.join("seed.pbm");
    let thick = dir.join("thick.pbm");
    let back = dir.join("back.pbm");
    assert_ok(&run(&[
        "gen",
        "shape",
        "--shape",
        "rect",
        "--height",
        "50",
        "--width",
        "70",
        "--size",
        "100x100",
        "--output",
        seed.to_str().unwrap(),
    ]));
    assert_ok(&run(&[
        "transform",
        "thicken",
        "--input",
        seed.to_str().unwrap(),
        "--axis",
        "horizontal",
        "--output",
        thick.to_str().unwrap(),
    ]));
    assert_ok(&run(&[
        "transform",
        "thin",
        "--input",
        thick.to_str().unwrap(),
        "--axis",
        "h",
        "--output",
        back.to_str().unwrap(),
    ]));
    assert_eq!(
        std::fs::read(&seed).unwrap(),
        std::fs::read(&back).unwrap(),
        "thicken then thin must restore the file byte-for-byte"
    );
}

#[test]
fn replicate_check_accepts_good_runs_and_rejects_clipped_ones() {
    let dir = workdir("replicate");
    let out_path = dir.join("out.pbm");
    let good = run(&[
        "transform",
        "replicate",
        "--shape",
        "square",
        "--side",
        "5",
        "--size",
        "64x64",
        "--rule",
        "7",
        "--k",
        "3",
        "--check",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_ok(&good);
    let grid = ca2d::read_image(&out_path).unwrap();
    assert_eq!(grid.count_ones(), 3 * 25);

    let clipped = run(&[
        "transform",
        "replicate",
        "--shape",
        "square",
        "--side",
        "5",
        "--size",
        "16x16",
        "--rule",
        "7",
        "--k",
        "4",
        "--check",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(!clipped.status.success());
    assert!(String::from_utf8_lossy(&clipped.stderr).contains("out of frame"));
}

#[test]
fn sweep_dumps_frames_and_conserves_population() {
    let dir = workdir("sweep");
    let scatter = dir.join("scatter.pbm");
    let swept = dir.join("swept.pbm");
    let frames = dir.join("frames");
    assert_ok(&run(&[
        "gen",
        "random",
        "--size",
        "60x48",
        "--density",
        "0.02",
        "--seed",
        "11",
        "--output",
        scatter.to_str().unwrap(),
    ]));
    assert_ok(&run(&[
        "sweep",
        "--input",
        scatter.to_str().unwrap(),
        "--output",
        swept.to_str().unwrap(),
        "--dest",
        "30,24",
        "--iters",
        "80",
        "--frames",
        frames.to_str().unwrap(),
    ]));
    let before = ca2d::read_image(&scatter).unwrap();
    let after = ca2d::read_image(&swept).unwrap();
    assert_eq!(before.count_ones(), after.count_ones());
    let metrics = std::fs::read_to_string(frames.join("metrics.tsv")).unwrap();
    assert_eq!(metrics.lines().count(), 82, "header plus 81 snapshots");
    assert!(frames.join("frame-0080.pbm").exists());
}

#[test]
fn runs_are_bit_identical_for_identical_flags() {
    let dir = workdir("determinism");
    let a = dir.join("a.pbm");
    let b = dir.join("b.pbm");
    for path in [&a, &b] {
        assert_ok(&run(&[
            "gen",
            "random",
            "--size",
            "33x19",
            "--density",
            "0.4",
            "--seed",
            "123",
            "--output",
            path.to_str().unwrap(),
        ]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn render_prints_ascii() {
    let dir = workdir("render");
    let input = dir.join("in.pbm");
    std::fs::write(&input, FIG2).unwrap();
    let out = run(&["render", "--input", input.to_str().unwrap()]);
    assert_ok(&out);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "..#.\n###.\n#.##\n");
}

#[test]
fn malformed_images_fail_with_a_diagnostic() {
    let dir = workdir("errors");
    let bad = dir.join("bad.pbm");
    // 13 bits declared 4x3.
    std::fs::write(&bad, "P1\n4 3\n0 0 1 0 1 1 1 0 1 0 1 1 0\n").unwrap();
    let out = run(&[
        "step",
        "--input",
        bad.to_str().unwrap(),
        "--output",
        dir.join("out.pbm").to_str().unwrap(),
        "--rule",
        "1",
    ]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("trailing data"), "stderr: {stderr}");

    let out = run(&[
        "step",
        "--input",
        dir.join("missing.pbm").to_str().unwrap(),
        "--output",
        dir.join("out.pbm").to_str().unwrap(),
        "--rule",
        "1",
    ]);
    assert!(!out.status.success());
}

#[test]
fn rule_numbers_are_validated() {
    let out = run(&["matrix", "-m", "2", "-n", "2", "--rule", "512"]);
    assert!(!out.status.success());
}

#[test]
fn version_and_help_are_available_everywhere() {
    for args in [
        vec!["--version"],
        vec!["--help"],
        vec!["step", "--help"],
        vec!["matrix", "--help"],
        vec!["verify", "--help"],
        vec!["transform", "--help"],
        vec!["transform", "zoom-in", "--help"],
        vec!["sweep", "--help"],
        vec!["render", "--help"],
        vec!["gen", "--help"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?} must succeed");
    }
}
