use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn info_reports_classical_exponents() {
    let out = run(&["info", "--type", "D", "--rank", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"classical_exponents\":[1,3,3,5]"));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["root_system"]["type"], "D");
    assert_eq!(v["root_system"]["rank"], 4);
    assert_eq!(v["result"]["components"].as_array().unwrap().len(), 3);

    let text = stdout(&run(&["info", "--type", "D", "--rank", "4"]));
    assert!(text.contains("classical exponents: 1 3 3 5"));
}

#[test]
fn pair_exponents_d4() {
    let out = run(&["exponents", "--type", "D", "--rank", "4", "--rep", "pair:1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "t^2 + t^4 + t^6");
}

#[test]
fn coeff_at_q0() {
    let out = run(&[
        "coeff", "--type", "A", "--rank", "2", "--lambda", "1,1", "--q0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "t^2 - t");
}

#[test]
fn text_and_json_agree() {
    for args in [
        &["coeff", "--type", "B", "--rank", "2", "--lambda", "-1,-2"][..],
        &[
            "coeff",
            "--type",
            "G",
            "--rank",
            "2",
            "--lambda",
            "2,1",
            "--strategy",
            "solver",
        ],
        &[
            "coeff", "--type", "A", "--rank", "3", "--lambda", "0,-1,0", "--q0",
        ],
    ] {
        let text = stdout(&run(args));
        let v = json(args);
        assert_eq!(
            v["result"]["value"].as_str().unwrap(),
            text.trim(),
            "{args:?}"
        );
    }
    for args in [
        &["exponents", "--type", "C", "--rank", "4", "--rep", "pair:1"][..],
        &[
            "exponents",
            "--type",
            "B",
            "--rank",
            "3",
            "--rep",
            "theta_s",
        ],
        &[
            "exponents",
            "--type",
            "A",
            "--rank",
            "2",
            "--rep",
            "lambda:2,2",
        ],
    ] {
        let text = stdout(&run(args));
        let v = json(args);
        assert_eq!(
            v["result"]["string"].as_str().unwrap(),
            text.trim(),
            "{args:?}"
        );
        let total: u64 = v["result"]["exponents"]
            .as_object()
            .unwrap()
            .values()
            .map(|c| c.as_u64().unwrap())
            .sum();
        assert_eq!(
            total,
            v["result"]["dimension_of_zero_weight_space"]
                .as_u64()
                .unwrap()
        );
    }
}

#[test]
fn exponent_methods_agree() {
    let base = [
        "exponents",
        "--type",
        "D",
        "--rank",
        "5",
        "--rep",
        "pair:2",
        "--method",
    ];
    let outs: Vec<String> = ["dual", "scalar", "oracle"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.push(m);
            stdout(&run(&args))
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
    assert_eq!(
        outs[0].trim(),
        "t^2 + t^3 + t^4 + t^5 + 2*t^6 + t^7 + t^8 + t^9 + t^10"
    );
}

#[test]
fn coefficient_strings_parse_back() {
    let v = json(&["coeff", "--type", "C", "--rank", "3", "--lambda", "1,2,1"]);
    let s = v["result"]["value"].as_str().unwrap();
    let parsed: cherednik_core::RatQT = s.parse().unwrap();
    assert_eq!(parsed.to_string(), s);
}

#[test]
fn orbit_listing() {
    let v = json(&["orbit", "--type", "A", "--rank", "3", "--lambda", "1,2,1"]);
    let elems = v["result"]["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 6);
    for e in elems {
        let d = e["d"].as_i64().unwrap();
        assert_eq!(d, e["d_s"].as_i64().unwrap() + e["d_l"].as_i64().unwrap());
    }
    let text = stdout(&run(&[
        "orbit", "--type", "A", "--rank", "3", "--lambda", "1,2,1",
    ]));
    assert_eq!(text.lines().count(), 2 + 6);
}

#[test]
fn table_output() {
    let text = stdout(&run(&["table", "--type", "D", "--rank", "6"]));
    assert!(text.contains("t^2 + t^4 + t^6 + t^8 + t^10"));
    assert!(text.contains("t^2 + 2*t^4 + 3*t^6 + 3*t^8 + 3*t^10 + 2*t^12 + t^14"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["info", "--type", "H", "--rank", "2"][..],
        &["info", "--type", "A", "--rank", "9"],
        &["info", "--type", "D", "--rank", "3"],
        &["coeff", "--type", "A", "--rank", "2"],
        &["coeff", "--type", "A", "--rank", "2", "--lambda", "1,1,1"],
        &[
            "coeff",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "2,2",
            "--strategy",
            "closed",
        ],
        &[
            "coeff",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "1,1",
            "--strategy",
            "fast",
        ],
        &["exponents", "--type", "B", "--rank", "2", "--rep", "pair:1"],
        &[
            "exponents",
            "--type",
            "A",
            "--rank",
            "3",
            "--rep",
            "lambda:1,0,0",
        ],
        &["table", "--type", "B", "--rank", "3"],
        &["verify", "--suite", "huge"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_exceeded_exits_3() {
    for args in [
        &[
            "coeff", "--type", "A", "--rank", "2", "--lambda", "5,5", "--budget", "10",
        ][..],
        &[
            "exponents",
            "--type",
            "A",
            "--rank",
            "2",
            "--rep",
            "lambda:4,4",
            "--budget",
            "4",
        ],
        &[
            "orbit", "--type", "B", "--rank", "2", "--lambda", "3,3", "--budget", "1",
        ],
    ] {
        assert_eq!(run(args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn verify_small_is_deterministic() {
    let a = run(&["verify", "--suite", "small"]);
    let b = run(&["verify", "--suite", "small"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text
        .lines()
        .all(|l| l.starts_with("PASS ") || l.ends_with(" failed")));

    let v = json(&["verify", "--suite", "small"]);
    assert_eq!(v["result"]["failed"], 0);
    assert!(v["root_system"].is_null());
}

#[test]
fn verify_full_reports_failures() {
    let out = run(&["verify", "--suite", "full"]);
    let text = stdout(&out);
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL ")).collect();
    // Only the two A-series pair tables disagree with the computed exponents.
    assert_eq!(failed.len(), 2, "{failed:?}");
    assert!(failed.iter().all(|l| l.starts_with("FAIL pair table A")));
    assert_eq!(out.status.code(), Some(1));
}
