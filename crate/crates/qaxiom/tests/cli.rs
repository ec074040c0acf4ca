//! Exit-code contract, JSON determinism, and file-format handling of the
//! command dispatch, plus one spawn of the installed binary.

use std::process::Command;

use qaxiom::frontend::{dispatch_args, render_json};

#[test]
fn exit_codes_follow_the_contract() {
    // (args, expected exit code)
    let table: Vec<(Vec<&str>, i32)> = vec![
        (vec!["commute", "[P1,Q1]", "--algebra", "heisenberg2"], 0),
        (vec!["normal-order", "P1*Q1", "--algebra", "magnetic2"], 0),
        (vec!["jacobi", "--algebra", "magnetic2"], 0),
        (vec!["dims", "--algebra", "magnetic2"], 0),
        (vec!["dims", "--algebra", "magnetic2", "--dim", "B=0"], 1),
        (vec!["equiv", "--algebra", "magnetic2", "--subst", "preset:eq5"], 1),
        (vec!["equiv", "--algebra", "magnetic2", "--subst", "identity"], 0),
        (vec!["mixed", "--mode", "momentum"], 0),
        (vec!["commute", "[P1,Q1", "--algebra", "heisenberg2"], 2),
        (vec!["commute", "[P3,Q1]", "--algebra", "heisenberg2"], 2),
        (vec!["nosuchcmd"], 2),
        (vec!["spectrum", "--ntrunc", "1"], 2),
        (
            vec!["flux", "--path", "circle:r=1.4142135623730951,n=20000", "--gauge", "symmetric"],
            0,
        ),
        (vec!["flux", "--path", "circle:r=1,n=20000", "--gauge", "symmetric"], 1),
        (vec!["scan", "--quantity", "magnetic-length", "--values", "1,-2"], 2),
    ];
    for (args, expected) in table {
        let result = dispatch_args(&args);
        assert_eq!(
            result.exit_code, expected,
            "args {args:?} gave exit {} with text:\n{}",
            result.exit_code, result.text
        );
    }
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["commute", "[P1,P2]", "--algebra", "magnetic2", "--json"];
    let first = render_json(&dispatch_args(&args).json);
    let second = render_json(&dispatch_args(&args).json);
    assert_eq!(first, second);
    // Keys come out sorted at every level.
    let value: serde_json::Value = serde_json::from_str(&first).unwrap();
    let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn commute_reports_the_magnetic_momentum_bracket() {
    let result = dispatch_args(&["commute", "[P1,P2]", "--algebra", "magnetic2", "--json"]);
    assert_eq!(result.exit_code, 0);
    assert_eq!(
        result.json["report"]["result"].as_str().unwrap(),
        "-i*hbar*e*B"
    );
    // Flipping the sign convention flips the table entry.
    let flipped = dispatch_args(&[
        "commute",
        "[P1,P2]",
        "--algebra",
        "magnetic2",
        "--epsilon12",
        "+1",
    ]);
    assert!(flipped.text.contains("i*hbar*e*B"));
    assert!(!flipped.text.contains("-i*hbar*e*B"));
}

#[test]
fn input_echo_is_carried_in_json() {
    let result = dispatch_args(&["jacobi", "--algebra", "heisenberg2", "--json"]);
    let argv = result.json["input"]["argv"].as_array().unwrap();
    assert_eq!(argv[0], "jacobi");
    assert!(argv.iter().any(|v| v == "heisenberg2"));
}

#[test]
fn algebra_and_substitution_files_round_trip_through_cli() {
    let dir = std::env::temp_dir().join(format!("qaxiom-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let algebra_path = dir.join("flipped.alg");
    std::fs::write(
        &algebra_path,
        "# magnetic table with the position-position sign flipped\n\
         k = 2\n\
         epsilon12 = +1\n\
         comm P1 Q1 = -i*hbar\n\
         comm P2 Q2 = -i*hbar\n\
         comm P1 P2 = i*eps12*hbar*e*B\n\
         comm Q1 Q2 = i*eps12*hbar*(e*B)^-1\n",
    )
    .unwrap();
    let subst_path = dir.join("rule.subst");
    std::fs::write(&subst_path, "P1 = e*B*Q2\nP2 = -e*B*Q1\n").unwrap();

    // This variant is exactly self-consistent under its own momentum rule.
    let result = dispatch_args(&[
        "equiv",
        "--algebra",
        algebra_path.to_str().unwrap(),
        "--subst",
        subst_path.to_str().unwrap(),
    ]);
    assert_eq!(result.exit_code, 0, "text:\n{}", result.text);
    assert!(result.text.contains("CONSISTENT"));

    // A duplicate declaration is rejected with its line number.
    let dup_path = dir.join("dup.alg");
    std::fs::write(&dup_path, "comm P1 Q1 = -i*hbar\ncomm Q1 P1 = i*hbar\n").unwrap();
    let result = dispatch_args(&["jacobi", "--algebra", dup_path.to_str().unwrap()]);
    assert_eq!(result.exit_code, 2);
    assert!(result.text.contains("line 2"), "text: {}", result.text);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn csv_path_flux_through_cli() {
    let dir = std::env::temp_dir().join(format!("qaxiom-csv-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.csv");
    // Unit square: area 1, flux B·area = 2π at B = 2π => one quantum.
    std::fs::write(&path, "0,0\n1,0\n1,1\n0,1\n").unwrap();
    let result = dispatch_args(&[
        "flux",
        "--path",
        path.to_str().unwrap(),
        "--gauge",
        "symmetric",
        "--B",
        "6.283185307179586",
        "--json",
    ]);
    assert_eq!(result.exit_code, 0, "text:\n{}", result.text);
    assert_eq!(result.json["report"]["quantization"]["nearestN"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn binary_emits_json_and_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_qaxiom");
    let output = Command::new(exe)
        .args(["commute", "[P1,Q1]", "--algebra", "heisenberg2", "--json"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("stdout is one JSON document");
    assert_eq!(value["report"]["result"], "-i*hbar");

    let failing = Command::new(exe)
        .args(["equiv", "--algebra", "magnetic2", "--subst", "preset:eq5"])
        .output()
        .expect("binary runs");
    assert_eq!(failing.status.code(), Some(1));

    let usage = Command::new(exe).arg("nosuchcmd").output().expect("binary runs");
    assert_eq!(usage.status.code(), Some(2));
}
