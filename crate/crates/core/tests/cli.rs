//! Command line behavior through `run_cli`.

use berkhasse::cli::commands::{run_cli, Outcome, RUN_ERROR, USAGE_ERROR};

fn run(args: &[&str]) -> Outcome {
    run_cli(std::iter::once("berkhasse").chain(args.iter().copied()))
}

fn conclusion(out: &Outcome) -> String {
    let v: serde_json::Value = serde_json::from_str(&out.stdout).expect("json report");
    v["conclusion"]["kind"]
        .as_str()
        .expect("conclusion kind")
        .to_string()
}

#[test]
fn exit_codes_follow_the_conclusion() {
    assert_eq!(
        run(&["-p", "3", "analyze", "--no-global-search", "1, -1, T"]).code,
        0
    );
    assert_eq!(
        run(&["-p", "3", "analyze", "--no-global-search", "1,-2,T,-2*T"]).code,
        1
    );
    assert_eq!(
        run(&["-p", "3", "analyze", "--no-global-search", "1, -(T^2+2), 3"]).code,
        2
    );
    assert_eq!(run(&["-p", "3", "example183"]).code, 0);
}

#[test]
fn usage_and_run_errors_are_distinct() {
    let bad = run(&["bogus"]);
    assert_eq!(bad.code, USAGE_ERROR);
    assert!(bad.stdout.is_empty() && !bad.stderr.is_empty());
    let parse = run(&["analyze", "1,,T"]);
    assert_eq!(parse.code, RUN_ERROR);
    assert!(parse.stderr.contains("parse error"));
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("analyze"));
}

#[test]
fn even_prime_is_rejected() {
    let out = run(&["-p", "2", "analyze", "1, T"]);
    assert_eq!(out.code, RUN_ERROR);
    assert!(out.stderr.contains("odd prime"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["-p", "3", "--format", "json", "--seed", "7", "example183"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
    assert_eq!(conclusion(&a), "local_everywhere");
}

#[test]
fn obstruction_report_matches_golden_file() {
    let out = run(&["-p", "3", "--format", "json", "analyze", "1,-2,T,-2*T"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, include_str!("golden/obstruction_p3.json"));
}

#[test]
fn refining_the_vertex_set_keeps_the_conclusion() {
    let forms = [
        "1, -(1+3*T), T, -(T+3)",
        "1, -1, T",
        "1,-2,T,-2*T",
        "1, T, 3",
        "1, -3*T, T+1",
    ];
    let extras = ["eta(0,1)", "eta(1,2)", "eta(2,0)", "eta(1/3,-1)"];
    for form in forms {
        let base = run(&[
            "-p",
            "3",
            "--format",
            "json",
            "analyze",
            "--no-global-search",
            form,
        ]);
        let kind = conclusion(&base);
        for variant in ["c2", "c3"] {
            for s0 in extras {
                let out = run(&[
                    "-p",
                    "3",
                    "--format",
                    "json",
                    "--variant",
                    variant,
                    "analyze",
                    "--no-global-search",
                    "--s0",
                    s0,
                    form,
                ]);
                assert_eq!(
                    conclusion(&out),
                    kind,
                    "{} with {} and s0 = {}",
                    form,
                    variant,
                    s0
                );
                assert_eq!(out.code, base.code);
            }
        }
    }
}

#[test]
fn berk_and_model_commands_succeed() {
    let eval = run(&["berk", "eval", "eta(0,1)", "T^2 + 9"]);
    assert_eq!(eval.code, 0);
    assert!(eval.stdout.contains("-log_p |f| = 2"));
    let join = run(&["berk", "join", "rigid(0)", "rigid(9)"]);
    assert_eq!(join.code, 0);
    assert!(join.stdout.contains("eta(0,2)"));
    let show = run(&[
        "--format", "dot", "model", "show", "-v", "eta(0,0)", "-v", "eta(0,1)",
    ]);
    assert_eq!(show.code, 0);
    assert!(show.stdout.starts_with("graph") || show.stdout.starts_with("digraph"));
}
