use std::process::Command as Process;

use serde_json::{json, Value};
use shintani::Exec;
use shintani_cli::{run, Command, JobSpec, EXIT_MATH, EXIT_OK, EXIT_SCHEMA, EXIT_TRUNCATION};

fn job(command: Command, input: Value) -> JobSpec {
    JobSpec { input: Some(input), ..JobSpec::new(command) }
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_shintani")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn eval_sigma_reflection() {
    let out = run(&job(
        Command::EvalSigma,
        json!({"alphas": [[["1","0"],["0","1"]], [["-1","0"],["0","1"]]], "w": ["3","2"]}),
    ));
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.body, json!({"value": 1}));
}

#[test]
fn eval_sigma_accepts_integers_and_fractions() {
    let out = run(&job(
        Command::EvalSigma,
        json!({"alphas": [[[1,0],[0,1]], [["1/2",1],[1,3]]], "w": ["1/3", 0]}),
    ));
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.body);
}

#[test]
fn quadratic_zeta_of_sqrt5() {
    let out = run(&job(Command::LvalueQuad, json!({"field": {"D": 5}, "r": 1})));
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.body["value"], json!("1/30"));
    assert_eq!(out.body["route"], json!("cocycle"));
    assert_eq!(out.body["Dmax"], json!(6));
}

#[test]
fn quadratic_twist_by_norm_character() {
    // An odd character composed with the norm vanishes on a field with a unit of norm -1.
    let out = run(&job(Command::LvalueQuad, json!({"field": {"D": 5}, "char": {"modulus": 3, "values": [0, 1, -1]}, "r": 1})));
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.body);
    assert_eq!(out.body["value"], json!("0"));
}

#[test]
fn verify_cocycle_clean_run() {
    let mut j = JobSpec::new(Command::VerifyCocycle);
    j.dim = Some(3);
    j.trials = Some(60);
    j.seed = Some(7);
    let out = run(&j);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.body["failures"], json!(0));
    assert_eq!(out.body["trials"], json!(60));
}

#[test]
fn verify_cocycle_needs_seed() {
    let out = run(&JobSpec::new(Command::VerifyCocycle));
    assert_eq!(out.exit_code, EXIT_SCHEMA);
    assert_eq!(out.body["error"]["code"], json!("schema"));
}

#[test]
fn output_does_not_depend_on_threads() {
    let mut a = JobSpec::new(Command::VerifyCocycle);
    a.trials = Some(40);
    a.seed = Some(3);
    let mut b = a.clone();
    b.exec = Exec::Sequential;
    assert_eq!(run(&a).body.to_string(), run(&b).body.to_string());
}

#[test]
fn dirichlet_routes_agree() {
    let out = run(&job(Command::LvalueQ, json!({"char": {"modulus": 3, "index": 1}, "r": 1})));
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.body["value"], json!("1/3"));
    assert_eq!(out.body["closed_form_agrees"], json!(true));
    let out = run(&job(Command::LvalueQ, json!({"r": 2, "route": "closed"})));
    assert_eq!(out.body["value"], json!("-1/12"));
}

#[test]
fn pairing_of_a_ray_with_a_character() {
    let out = run(&job(
        Command::Pair,
        json!({
            "combo": {"n": 1, "cones": [{"coeff": "1", "generators": [["1"]]}]},
            "phi": {"n": 1, "f": 3, "values": [{"class": [1], "value": "1"}, {"class": [2], "value": "-1"}]},
            "Dmax": 2
        }),
    ));
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.body);
    let series = out.body["power_series"].as_array().expect("poles cancel");
    assert_eq!(series[0], json!({"deg": [0], "value": "1/3"}));
}

#[test]
fn decomposition_of_the_unit_cone() {
    let out = run(&job(Command::Decompose, json!({"alphas": [[[1,0],[0,1]], [[1,1],[1,2]]]})));
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.body["cones"], json!(2));
    assert_eq!(out.body["combo"]["n"], json!(2));
}

#[test]
fn s_coeffs_reproduce_the_value() {
    // Sum zero along every line through the origin that matters, so no poles survive.
    let mut values = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            let v = if (x + y) % 3 == 0 { "2" } else { "-1" };
            values.push(json!({"class": [x, y], "value": v}));
        }
    }
    let phi = json!({"n": 2, "f": 3, "values": values});
    let s = run(&job(Command::SCoeffs, json!({"field": {"D": 5}, "phi": phi, "rmax": 1})));
    assert_eq!(s.exit_code, EXIT_OK, "{}", s.body);
    let direct = run(&job(Command::LvalueQuad, json!({"field": {"D": 5}, "phi": phi, "r": 1})));
    assert_eq!(direct.exit_code, EXIT_OK, "{}", direct.body);
    assert_eq!(s.body["L"][0]["value"], direct.body["value"]);
}

#[test]
fn error_codes() {
    let out = run(&job(Command::EvalSigma, json!({"alphas": [], "w": [], "extra": 1})));
    assert_eq!(out.exit_code, EXIT_SCHEMA);

    let out = run(&job(Command::EvalSigma, json!({"alphas": [[[1,0],[0,0]], [[1,0],[0,1]]], "w": [1, 1]})));
    assert_eq!(out.exit_code, EXIT_MATH);
    assert_eq!(out.body["error"]["code"], json!("singular_matrix"));

    let mut j = job(Command::LvalueQuad, json!({"field": {"D": 2}, "r": 2}));
    j.dmax = Some(3);
    let out = run(&j);
    assert_eq!(out.exit_code, EXIT_TRUNCATION);

    let out = run(&job(Command::LvalueQuad, json!({"field": {"D": 4}, "r": 1})));
    assert_eq!(out.body["error"]["code"], json!("not_square_free"));

    let out = run(&job(Command::LvalueQuad, json!({"field": {"D": 3}, "r": 1})));
    assert_eq!(out.body["error"]["code"], json!("narrow_class_number_not_one"));
}

#[test]
fn pairing_errors_name_the_cone() {
    // The ray through (0, 1) is fine, but a constant term needs a function vanishing near 0.
    let out = run(&job(
        Command::Pair,
        json!({
            "combo": {"n": 2, "constant": "1", "cones": [{"coeff": "1", "generators": [["0","1"]]}]},
            "phi": {"n": 2, "values": [{"class": [0, 0], "value": "1"}]}
        }),
    ));
    assert_eq!(out.exit_code, EXIT_MATH);
    assert_eq!(out.body["error"]["code"], json!("constant_against_non_vanishing"));
}

#[test]
fn binary_examples() {
    let (code, out) = binary(&[
        "eval-sigma",
        "--input",
        r#"{"alphas":[[["1","0"],["0","1"]],[["-1","0"],["0","1"]]],"w":["3","2"]}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"value":1}"#);

    let (code, out) = binary(&["lvalue-quad", "--input", r#"{"field":{"D":5},"r":1}"#]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], json!("1/30"));
}

#[test]
fn binary_is_deterministic() {
    let args = ["verify-cocycle", "--dim", "2", "--trials", "50", "--seed", "11"];
    let (c1, a) = binary(&args);
    let (c2, b) = binary(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn binary_reads_input_files() {
    let dir = std::env::temp_dir().join(format!("shintani-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeta.json");
    std::fs::write(&path, r#"{"char": {"modulus": 1}, "r": 4}"#).unwrap();
    let (code, out) = binary(&["lvalue-q", "--input", path.to_str().unwrap(), "--pretty"]);
    assert_eq!(code, 0);
    assert!(out.contains('\n'));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], json!("1/120"));

    let (code, out) = binary(&["lvalue-q", "--input", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 64);
    assert!(out.contains("\"schema\""));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn binary_usage_errors() {
    let (code, out) = binary(&["no-such-command"]);
    assert_eq!(code, 64);
    assert!(out.contains("\"error\""));
}
