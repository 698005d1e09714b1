//! End-to-end checks of the command-line surface: exit codes, frozen
//! output lines, configuration layering, determinism, and the
//! machine-readable formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn peforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peforge"))
        .args(args)
        .env_remove("PEFORGE_PRECISION")
        .output()
        .expect("the binary runs")
}

fn peforge_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peforge"))
        .args(args)
        .env(key, value)
        .output()
        .expect("the binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn scratch_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("peforge-test-{}-{name}", std::process::id()))
}

#[test]
fn qpoly_prints_the_factored_form() {
    let out = peforge(&["qpoly", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("(1/3)(r-1)^3(r+3)"), "got: {}", stdout(&out));
}

#[test]
fn qpoly_rejects_index_zero() {
    assert_eq!(exit_code(&peforge(&["qpoly", "0"])), 2);
}

#[test]
fn ppoly_prints_the_factored_form() {
    let out = peforge(&["ppoly", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("(r-1)^3(r+3) + 4u(r-1)^2"), "got: {}", stdout(&out));
}

#[test]
fn ppoly_rejects_dimension_one() {
    assert_eq!(exit_code(&peforge(&["ppoly", "1"])), 2);
}

#[test]
fn missing_dimension_is_a_usage_error() {
    assert_eq!(exit_code(&peforge(&["verify"])), 2);
    assert_eq!(exit_code(&peforge(&["limit-inf"])), 2);
}

#[test]
fn nonpositive_parameter_is_a_config_error() {
    assert_eq!(exit_code(&peforge(&["verify", "--n", "2", "--c", "-1"])), 2);
    assert_eq!(exit_code(&peforge(&["verify", "--n", "2", "--c", "0"])), 2);
}

#[test]
fn unknown_chart_and_unknown_flag_are_usage_errors() {
    assert_eq!(exit_code(&peforge(&["profile", "--n", "2", "--c", "1", "--chart", "q"])), 2);
    assert_eq!(exit_code(&peforge(&["verify", "--n", "2", "--frobnicate"])), 2);
}

#[test]
fn verify_passes_formally_and_at_rational_parameters() {
    for args in [
        vec!["verify", "--n", "3"],
        vec!["verify", "--n", "2", "--c", "1"],
        vec!["verify", "--n", "2", "--c", "1/10"],
    ] {
        let out = peforge(&args);
        assert_eq!(exit_code(&out), 0, "args {args:?}: {}", stdout(&out));
        assert!(stdout(&out).contains("verify: PASS"));
    }
}

#[test]
fn structural_controls_fail_verification() {
    for control in ["gamma2-plus-r", "p-plus-r", "beta2-times-2"] {
        let out = peforge(&["verify", "--n", "2", "--c", "1", "--perturb", control]);
        assert_eq!(exit_code(&out), 1, "{control}: {}", stdout(&out));
        assert!(stdout(&out).contains("verify: FAIL"));
    }
}

#[test]
fn the_integration_constant_control_is_caught_at_the_center() {
    let out = peforge(&["verify", "--n", "2", "--c", "1", "--perturb", "p-plus-r"]);
    let text = stdout(&out);
    assert!(text.contains("center gate") && text.contains("FAIL"), "got: {text}");
    // Away from the center the shifted profile still solves the curvature
    // equations, so the residual lines stay green; the gate is the detector.
    assert!(text.contains("transverse curvature residual vanishes: PASS"), "got: {text}");
}

#[test]
fn oracle_needs_the_four_dimensional_member_and_a_numeric_parameter() {
    assert_eq!(exit_code(&peforge(&["verify", "--n", "3", "--c", "1", "--oracle"])), 2);
    assert_eq!(exit_code(&peforge(&["verify", "--n", "2", "--oracle"])), 2);
    let out = peforge(&["verify", "--n", "2", "--c", "2", "--oracle"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("finite-difference convergence order"));
}

#[test]
fn limit_inf_prints_the_normalization_line() {
    let out = peforge(&["limit-inf", "--n", "3", "--grid", "20"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("g_inf = (4/5) g_CH3: PASS"), "got: {}", stdout(&out));
}

#[test]
fn limit_zero_prints_the_limit_metric_line() {
    let out = peforge(&["limit-zero", "--n", "3", "--grid", "20"]);
    assert_eq!(exit_code(&out), 0);
    assert!(
        stdout(&out).contains("limit metric: dt^2/(t^2+2) + t^2 g_CP2: PASS"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn limit_zero_fiber_column_shrinks_in_csv() {
    let out = peforge(&[
        "limit-zero", "--n", "2", "--R", "5", "--c-list", "1e-2,1e-4", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("c,sup_alpha,sup_beta_or_fiber,sup_gamma"));
    let fiber: Vec<f64> = lines
        .map(|line| line.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(fiber.len(), 2);
    assert!(fiber[0] > fiber[1], "fiber sups {fiber:?} must shrink");
}

#[test]
fn csv_is_reserved_for_the_limit_tables() {
    for command in [vec!["qpoly", "2"], vec!["verify", "--n", "2"], vec!["report", "--n", "2"]] {
        let mut args = command.clone();
        args.extend(["--format", "csv"]);
        assert_eq!(exit_code(&peforge(&args)), 2, "args {args:?}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = peforge(&["limit-inf", "--n", "2", "--grid", "15"]);
    let second = peforge(&["limit-inf", "--n", "2", "--grid", "15"]);
    assert_eq!(first.stdout, second.stdout);
    let first = peforge(&["verify", "--n", "2", "--c", "1", "--format", "json"]);
    let second = peforge(&["verify", "--n", "2", "--c", "1", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn report_json_validates_against_the_shipped_schema() {
    let out = peforge(&["report", "--n", "2", "--grid", "15", "--format", "json"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let document: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    // The binary already refuses to emit a nonconforming report; check
    // again here against the file on disk so a stale schema cannot hide.
    let schema_text = fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas/report.schema.json"),
    )
    .expect("schema ships with the crate");
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    peforge_cli::schema::validate(&schema, &document).expect("report conforms");
    assert_eq!(document["passed"], serde_json::json!(true));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let path = scratch_path("config.toml");
    fs::write(&path, "n = 2\nc = \"1\"\nformat = \"json\"\n").unwrap();
    let out = peforge(&["verify", "--config", path.to_str().unwrap(), "--n", "3"]);
    let document: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json via config");
    assert_eq!(document["n"], serde_json::json!(3));
    assert_eq!(document["c"], serde_json::json!("1"));
    fs::remove_file(&path).ok();
}

#[test]
fn broken_config_files_are_config_errors() {
    let path = scratch_path("broken.toml");
    fs::write(&path, "banana = 1\n").unwrap();
    assert_eq!(exit_code(&peforge(&["verify", "--config", path.to_str().unwrap()])), 2);
    fs::remove_file(&path).ok();
    assert_eq!(exit_code(&peforge(&["verify", "--config", "/nonexistent/x.toml"])), 2);
}

#[test]
fn environment_precision_is_a_default_curbed_by_the_flag() {
    let args = ["verify", "--n", "2", "--c", "1", "--format", "json"];
    let out = peforge_env(&args, "PEFORGE_PRECISION", "10");
    let document: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(document["precision"], serde_json::json!(10));

    let mut with_flag = args.to_vec();
    with_flag.extend(["--precision", "12"]);
    let out = peforge_env(&with_flag, "PEFORGE_PRECISION", "10");
    let document: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(document["precision"], serde_json::json!(12));
}

#[test]
fn out_writes_the_same_bytes_as_stdout() {
    let path = scratch_path("qpoly.txt");
    let piped = peforge(&["qpoly", "3"]);
    let filed = peforge(&["qpoly", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&filed), 0);
    assert!(filed.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), piped.stdout);
    fs::remove_file(&path).ok();
}

#[test]
fn chart_profiles_cover_the_square_root_constraint() {
    // A perfect-square parameter admits the collapse chart; a non-square
    // one is a configuration error for it but fine elsewhere.
    assert_eq!(exit_code(&peforge(&["profile", "--n", "2", "--c", "4", "--chart", "t"])), 0);
    assert_eq!(exit_code(&peforge(&["profile", "--n", "2", "--c", "2", "--chart", "t"])), 2);
    assert_eq!(exit_code(&peforge(&["profile", "--n", "2", "--c", "2", "--chart", "rho"])), 0);
    assert_eq!(exit_code(&peforge(&["profile", "--n", "3", "--chart", "t"])), 0);
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(exit_code(&peforge(&["--help"])), 0);
    assert_eq!(exit_code(&peforge(&["--version"])), 0);
    assert_eq!(exit_code(&peforge(&["limit-inf", "--help"])), 0);
}
