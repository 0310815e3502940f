use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kmweights"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn jv_of_the_two_ray_module() {
    let v = json(&[
        "jv",
        "--algebra",
        "A1xA1",
        "--lambda",
        "0,0",
        "--relations",
        "[[[0,1],[1,1]]]",
        "--height",
        "8",
    ]);
    assert_eq!(v["jv"], serde_json::json!([0, 1]));
    assert_eq!(v["verified_height"], 8);
}

#[test]
fn decomposition_check_in_a2() {
    let args = [
        "check",
        "thmC",
        "--algebra",
        "A2",
        "--lambda",
        "0,0",
        "--relations",
        "[[[0,2],[1,1]]]",
        "--J",
        "0",
        "--height",
        "8",
    ];
    let v = json(&args);
    assert_eq!(v["holds"], true);
    assert_eq!(v["jv"], serde_json::json!([]));
    assert_eq!(v["verified_height"], 8);
}

#[test]
fn decomposition_fails_below_jv() {
    let v = json(&[
        "check",
        "thmC",
        "--algebra",
        "A1xA1",
        "--lambda",
        "0,0",
        "--relations",
        "[[[0,1],[1,1]]]",
        "--J",
        "0",
        "--height",
        "6",
    ]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["consistent"], true);
    assert!(v["counterexample"].is_array());
}

#[test]
fn simple_weights_of_sl2() {
    let v = json(&[
        "weights",
        "simple",
        "--algebra",
        "A1",
        "--lambda",
        "3",
        "--height",
        "6",
    ]);
    assert_eq!(v["depths"], serde_json::json!([[0], [1], [2], [3]]));
}

#[test]
fn module_weights_report_dimensions() {
    let v = json(&[
        "weights",
        "module",
        "--algebra",
        "A2",
        "--lambda",
        "0,0",
        "--relations",
        "[[[0,2],[1,1]]]",
        "--height",
        "3",
    ]);
    let dims = v["dims"].as_array().unwrap();
    let at = |d: Value| dims.iter().find(|x| x["depth"] == d).unwrap()["dim"].clone();
    assert_eq!(at(serde_json::json!([1, 1])), 2);
    assert_eq!(at(serde_json::json!([2, 1])), 1);
    assert_eq!(dims.len(), 10);
}

#[test]
fn enumeration_trace() {
    let v = json(&[
        "enumerate",
        "--algebra",
        "A3",
        "--lambda",
        "0,0,0",
        "--free-nodes",
        "0,1,2",
        "--c",
        "2,5,1",
    ]);
    let plans = v["plans"].as_array().unwrap();
    assert_eq!(plans.len(), 1);
    assert_eq!(plans[0]["ordering"], serde_json::json!([0, 2, 1]));
    assert_eq!(plans[0]["terminal_independent"], serde_json::json!([1]));
}

#[test]
fn bound_in_sl2() {
    let v = json(&[
        "bound",
        "--algebra",
        "A1",
        "--lambda",
        "3",
        "--mu",
        "5",
        "--height",
        "6",
    ]);
    assert_eq!(v["bound"], 1);
    assert_eq!(v["engine_dim"], 1);
    let v = json(&[
        "bound",
        "--algebra",
        "A1~",
        "--lambda",
        "3,0",
        "--jv",
        "",
        "--mu",
        "1,1",
    ]);
    assert_eq!(v["membership_only"], true);
}

#[test]
fn roots_of_affine_sl2() {
    let v = json(&["roots", "--algebra", "A1~", "--height", "4"]);
    let kinds: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    assert_eq!(
        kinds,
        ["Real", "Real", "Imaginary", "Real", "Real", "Imaginary"]
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "slices",
        "--algebra",
        "A2",
        "--lambda",
        "1,0",
        "--relations",
        "[[[0,2]]]",
        "--J",
        "0,1",
        "--height",
        "5",
    ];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["jv", "--algebra", "A2", "--lambda", "x,0", "--height", "3"]).0,
        1
    );
    assert_eq!(
        run(&["roots", "--algebra", "[[2,1],[1,2]]", "--height", "3"]).0,
        1
    );
    assert_eq!(run(&["nonsense"]).0, 1);
    // J must contain J_V for a slice decomposition
    let (code, _, err) = run(&[
        "slices",
        "--algebra",
        "A1xA1",
        "--lambda",
        "0,0",
        "--relations",
        "[[[0,1],[1,1]]]",
        "--J",
        "0",
        "--height",
        "4",
    ]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(
        run(&[
            "jv",
            "--algebra",
            "A2",
            "--lambda",
            "0,0",
            "--relations",
            "[[]]",
            "--height",
            "3"
        ])
        .0,
        2
    );
}

#[test]
fn text_format() {
    let (code, out, _) = run(&[
        "weights",
        "integrable",
        "--algebra",
        "A1",
        "--lambda",
        "2",
        "--J",
        "0",
        "--height",
        "5",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "λ = (2)  (verified to height 5)\n  λ\n  λ - [1]\n  λ - [2]\n"
    );
}

#[test]
fn builtin_suite_passes() {
    let v = json(&["verify-suite", "--height", "5"]);
    assert_eq!(v["failed"], 0);
    assert!(v["total"].as_u64().unwrap() > 50);
}
