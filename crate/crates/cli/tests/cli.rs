//! End-to-end tests of the `sympcliff` binary: output pinning, JSON
//! shapes, exit codes, and seed handling.

use std::process::{Command, Output};

fn sympcliff() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sympcliff"));
    // Keep the ambient environment from influencing seed defaults.
    cmd.env_remove("SYMPCLIFF_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    sympcliff().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout is JSON")
}

#[test]
fn bracket_pinned_example() {
    let out = run(&["bracket", "{q*p, p^2/2}"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "p^2\n");
}

#[test]
fn bracket_erratum_value() {
    let out = run(&["bracket", "{q*p, q^2/2}"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "-q^2\n");
}

#[test]
fn tables_text_pinned() {
    let out = run(&["tables", "--algebra", "process"]);
    assert!(out.status.success());
    let expected = "\
process unit table (row * column):
         e        [P0P1]   [P0P2]   [P1P2]
e        e        [P0P1]   [P0P2]   [P1P2]
[P0P1]   [P0P1]   -e       -[P1P2]  [P0P2]
[P0P2]   [P0P2]   [P1P2]   -e       -[P0P1]
[P1P2]   [P1P2]   -[P0P2]  [P0P1]   -e
";
    assert_eq!(stdout_of(&out), expected);

    let out = run(&["tables", "--algebra", "quaternion"]);
    let text = stdout_of(&out);
    assert!(text.contains("i   i   -e  k   -j"));

    let out = run(&["tables", "--algebra", "endf"]);
    let text = stdout_of(&out);
    assert!(text.contains("A    A    B    id   J"));
    assert!(text.contains("B    B    -A   -J   id"));
}

#[test]
fn tables_json_shape() {
    let out = run(&["tables", "--algebra", "endf", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "table");
    assert_eq!(v["algebra"], "endf");
    assert_eq!(v["units"].as_array().unwrap().len(), 4);
    let products = v["products"].as_array().unwrap();
    assert_eq!(products.len(), 4);
    for row in products {
        assert_eq!(row.as_array().unwrap().len(), 4);
    }
    // Reflections square to +id as matrices.
    assert_eq!(products[2][2], "id");
    assert_eq!(products[3][3], "id");
}

#[test]
fn bracket_json_shape() {
    let out = run(&["bracket", "{q*p, p^2/2}", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "polynomial");
    assert_eq!(v["display"], "p^2");
    assert_eq!(v["coefficients"]["p^2"], "1");
    assert_eq!(v["coefficients"]["q^2"], "0");
}

#[test]
fn ham_outputs() {
    let out = run(&["ham", "q^2/2 + p^2/2"]);
    assert_eq!(stdout_of(&out), "[[0, 1], [-1, 0]]\n");

    let out = run(&["ham", "q*p", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "matrix");
    assert_eq!(v["rows"][0][0], "1");
    assert_eq!(v["rows"][1][1], "-1");
}

#[test]
fn quantize_outputs() {
    let out = run(&["quantize", "q*p"]);
    assert_eq!(stdout_of(&out), "-1/2 - i*q*p\n");

    let out = run(&["quantize", "q^2/2 + p^2/2", "--fock-dim", "4"]);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "operator line plus four matrix rows");
    assert!(lines[1].starts_with("[-0.4999999999999999i"));

    let out = run(&["quantize", "q*p", "--fock-dim", "4", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "operator");
    assert!(v["terms"].as_array().unwrap().len() >= 2);
    assert_eq!(v["matrix"]["dim"], 4);
    assert_eq!(v["matrix"]["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn spectrum_outputs_sorted() {
    let out = run(&["spectrum", "q^2/2 + p^2/2", "--fock-dim", "8"]);
    assert!(out.status.success());
    let values: Vec<f64> = stdout_of(&out)
        .lines()
        .map(|l| l.parse().expect("each line is a number"))
        .collect();
    assert_eq!(values.len(), 8);
    for pair in values.windows(2) {
        assert!(pair[0] <= pair[1], "eigenvalues sorted ascending");
    }
    assert!((values[0] - 0.5).abs() < 1e-10);

    let out = run(&["spectrum", "q^2/2 + p^2/2", "--fock-dim", "8", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "spectrum");
    assert_eq!(v["dim"], 8);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 8);
}

#[test]
fn decompose_outputs() {
    let out = run(&["decompose", "--particles", "2"]);
    let text = stdout_of(&out);
    assert!(text.contains("particles: 2"));
    assert!(text.contains("planes: 6 (3 per particle)"));
    assert!(text.contains("phase-space dimension: 12"));

    let out = run(&["decompose", "--particles", "2", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "phase-space");
    assert_eq!(v["dimension"], 12);
    assert_eq!(v["planes"].as_array().unwrap().len(), 6);
    assert_eq!(v["planes"][0]["kappa"], "1");
    assert_eq!(v["planes"][0]["omega"][0][1], "1");
    assert_eq!(v["planes"][0]["omega"][1][0], "-1");
}

#[test]
fn eval_modes() {
    let out = run(&["eval", "--mode", "quaternion", "i*j"]);
    assert_eq!(stdout_of(&out), "k\n");

    let out = run(&["eval", "--mode", "endf", "[A, B]"]);
    assert_eq!(stdout_of(&out), "[[0, 2], [-2, 0]]\n");

    let out = run(&["eval", "--mode", "poly", "cross(q^2/2, p^2/2)", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "polynomial");
    assert_eq!(v["coefficients"]["q*p"], "-1/2");
}

#[test]
fn exit_code_evaluation_error() {
    let out = run(&["bracket", "{q, q^3}"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).starts_with("error:"));
    assert!(stdout_of(&out).is_empty());

    let out = run(&["ham", "q + p"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("homogeneous quadratic"));
}

#[test]
fn exit_code_usage_error() {
    let out = run(&["tables", "--algebra", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr_of(&out).is_empty(), "usage errors explain themselves");

    let out = run(&["spectrum", "q^2"]);
    assert_eq!(out.status.code(), Some(2), "missing required --fock-dim");

    let out = run(&["spectrum", "q^2", "--fock-dim", "2"]);
    assert_eq!(out.status.code(), Some(2), "dimension below the supported range");

    let out = run(&["spectrum", "q^2", "--fock-dim", "100"]);
    assert_eq!(out.status.code(), Some(2), "dimension above the supported range");

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_report_and_exit_code() {
    let dir = std::env::temp_dir().join("sympcliff-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let report_path = dir.join("report.json");
    let out = sympcliff()
        .args(["verify", "--seed", "7", "--cases", "5", "--report"])
        .arg(&report_path)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let file_bytes = std::fs::read(&report_path).unwrap();
    assert_eq!(file_bytes, out.stdout, "report file holds the stdout bytes");

    let v: serde_json::Value = serde_json::from_slice(&file_bytes).unwrap();
    assert_eq!(v["suite"], "sympcliff");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["summary"]["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 30);
    let names: Vec<&str> = checks
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted, "checks are sorted by name");
    std::fs::remove_file(&report_path).ok();
}

#[test]
fn verify_seed_sources() {
    // Default seed is zero when neither flag nor environment supplies one.
    let out = run(&["verify", "--cases", "2"]);
    assert_eq!(json_of(&out)["seed"], 0);

    // The environment variable supplies the default...
    let out = sympcliff()
        .env("SYMPCLIFF_SEED", "11")
        .args(["verify", "--cases", "2"])
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], 11);

    // ...and the flag wins over it.
    let out = sympcliff()
        .env("SYMPCLIFF_SEED", "11")
        .args(["verify", "--seed", "3", "--cases", "2"])
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], 3);

    // A malformed environment value is a usage error.
    let out = sympcliff()
        .env("SYMPCLIFF_SEED", "zebra")
        .args(["verify", "--cases", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("SYMPCLIFF_SEED"));
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let a = run(&["verify", "--seed", "5", "--cases", "3"]);
    let b = run(&["verify", "--seed", "5", "--cases", "3"]);
    assert_eq!(a.stdout, b.stdout, "same seed, same bytes");

    let c = run(&["verify", "--seed", "6", "--cases", "3"]);
    assert_ne!(a.stdout, c.stdout, "different seed, different report bytes");
}

#[test]
fn erratum_checks_always_reported() {
    for seed in ["0", "99"] {
        let out = run(&["verify", "--seed", seed, "--cases", "2"]);
        let v = json_of(&out);
        let errata: Vec<&str> = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["status"] == "erratum-documented")
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert_eq!(
            errata,
            ["erratum.hermitian-convention", "erratum.quadratic-bracket-sign"],
            "both documented discrepancies appear in every report"
        );
    }
}
