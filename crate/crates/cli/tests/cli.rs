//! End-to-end tests against the installed binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordtree"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    // Feed stdin from a thread: writing everything up front would deadlock
    // once both pipe buffers fill.
    let mut stdin = child.stdin.take().expect("stdin piped");
    let input = input.to_vec();
    let feeder = std::thread::spawn(move || stdin.write_all(&input));
    let output = child.wait_with_output().expect("binary finishes");
    feeder.join().expect("feeder thread").expect("write stdin");
    output
}

fn stdout_of(args: &[&str]) -> String {
    let output = run(args);
    assert!(output.status.success(), "{args:?}: {}", String::from_utf8_lossy(&output.stderr));
    String::from_utf8(output.stdout).expect("utf-8 output")
}

#[test]
fn count_examples() {
    assert_eq!(stdout_of(&["count", "--formula", "class", "-n", "3", "-k", "1", "-l", "1"]), "2\n");
    assert_eq!(stdout_of(&["count", "--formula", "catalan", "-n", "3"]), "5\n");
    assert_eq!(
        stdout_of(&["count", "--formula", "cumulative", "-n", "1", "-k", "1", "-l", "1"]),
        "0\n"
    );
    assert_eq!(stdout_of(&["count", "--formula", "total-vertices", "-n", "3"]), "20\n");
    assert_eq!(stdout_of(&["count", "--formula", "half-vertices", "-n", "6"]), "462\n");
    assert_eq!(stdout_of(&["count", "--formula", "by-degree", "-n", "3", "-k", "2"]), "3\n");
    assert_eq!(stdout_of(&["count", "--formula", "by-level", "-n", "3", "-l", "2"]), "4\n");
    assert_eq!(
        stdout_of(&["count", "--formula", "outdeg-level", "-n", "3", "-k", "0", "-l", "1"]),
        "5\n"
    );
    // Exact arithmetic well past machine words.
    assert_eq!(
        stdout_of(&["count", "--formula", "catalan", "-n", "100"]),
        "896519947090131496687170070074100632420837521538745909320\n"
    );
    assert_eq!(
        stdout_of(&["count", "--formula", "class", "-n", "3", "-k", "1", "-l", "1", "--format", "csv"]),
        "n,k,l,statistic,count\n3,1,1,class,2\n"
    );
    let json = stdout_of(&["count", "--formula", "catalan", "-n", "3", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed[0]["statistic"], "catalan");
    assert_eq!(parsed[0]["count"], "5");
}

#[test]
fn count_usage_errors() {
    let output = run(&["count", "--formula", "class", "-n", "3", "-k", "1"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["count", "--formula", "class", "-n", "3", "-k", "1", "-l", "0"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["count", "--formula", "catalan", "-n", "3", "-k", "1"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["count", "--formula", "nope", "-n", "3"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn map_examples() {
    assert_eq!(stdout_of(&["map", "A-D", "-k", "2", "-l", "1", "((()))@1"]), "()(())@0\n");
    assert_eq!(
        stdout_of(&["map", "A-D", "--inverse", "-k", "2", "-l", "1", "()(())@0"]),
        "((()))@1\n"
    );
    assert_eq!(stdout_of(&["map", "A-C", "-k", "2", "-l", "1", "((()))@1"]), "()()()@2\n");
    assert_eq!(stdout_of(&["map", "B-D", "-k", "3", "-l", "1", "()()()@0"]), "()()()@0\n");

    let output = run(&["map", "A-D", "-k", "2", "-l", "1", "()(())@2"]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not a first-child"), "stderr: {stderr}");

    let output = run(&["map", "A-E", "-k", "2", "-l", "1", "()@1"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn phi_map_examples() {
    assert_eq!(stdout_of(&["phi-map", "-k", "1", "-l", "1", "(())@1"]), "DDD@(1,1)\n");
    assert_eq!(
        stdout_of(&["phi-map", "--inverse", "-n", "2", "-k", "1", "-l", "1", "DDD@(1,1)"]),
        "(())@1\n"
    );
    assert_eq!(stdout_of(&["phi-map", "-k", "0", "-l", "1", "()@1"]), "DD\n");

    let output = run(&["phi-map", "-k", "1", "-l", "1", "()@1"]);
    assert_eq!(output.status.code(), Some(3));

    // Inverse without the edge count is a usage error.
    let output = run(&["phi-map", "--inverse", "-k", "1", "-l", "1", "DDD@(1,1)"]);
    assert_eq!(output.status.code(), Some(2));

    // A path outside the target set is a membership error.
    let output = run(&["phi-map", "--inverse", "-n", "2", "-k", "1", "-l", "1", "UUU@(1,1)"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn enumerate_output() {
    assert_eq!(stdout_of(&["enumerate", "-n", "0"]), "\n");
    assert_eq!(
        stdout_of(&["enumerate", "-n", "3"]),
        "((()))\n(()())\n(())()\n()(())\n()()()\n"
    );
}

#[test]
fn encode_decode_single_literals() {
    assert_eq!(stdout_of(&["encode", "--codec", "phi", "()(()())(())"]), "UDUUDUDDUUDD\n");
    assert_eq!(stdout_of(&["encode", "--codec", "psi", "()(()())(())"]), "UUUDDUUDDDUD\n");
    assert_eq!(stdout_of(&["decode", "--codec", "phi", "UDUUDUDDUUDD"]), "()(()())(())\n");
    assert_eq!(stdout_of(&["decode", "--codec", "psi", "UUUDDUUDDDUD"]), "()(()())(())\n");

    let output = run(&["decode", "--codec", "phi", "UDD"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["encode", "--codec", "phi", "(()"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn cli_codec_round_trip_to_n_10() {
    for codec in ["phi", "psi"] {
        for n in 0..=10u32 {
            let n = n.to_string();
            let trees = stdout_of(&["enumerate", "-n", &n]);
            let encoded = run_with_stdin(&["encode", "--codec", codec], trees.as_bytes());
            assert!(encoded.status.success());
            let decoded = run_with_stdin(&["decode", "--codec", codec], &encoded.stdout);
            assert!(decoded.status.success());
            assert_eq!(
                String::from_utf8(decoded.stdout).unwrap(),
                trees,
                "codec {codec} at n={n}"
            );
        }
    }
}

#[test]
fn batch_map_round_trip() {
    // Pipe every outdegree-2 root through D -> C and back.
    let input = "()(())@0\n(())()@0\n";
    let forward = run_with_stdin(&["map", "D-C", "-k", "2", "-l", "1"], input.as_bytes());
    assert!(forward.status.success());
    let back = run_with_stdin(&["map", "D-C", "--inverse", "-k", "2", "-l", "1"], &forward.stdout);
    assert!(back.status.success());
    assert_eq!(String::from_utf8(back.stdout).unwrap(), input);
}

#[test]
fn verify_examples() {
    let output = run(&["verify", "--counts", "-n", "8"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("suite: counts"));
    assert!(stdout.contains("result: PASS"));

    let output = run(&["verify", "--all", "-n", "1"]);
    assert_eq!(output.status.code(), Some(0));

    let dir = std::env::temp_dir().join("ordtree-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let json_path = dir.join("phi-report.json");
    let output = run(&["verify", "--phi", "-n", "7", "--json", json_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let body = std::fs::read_to_string(&json_path).unwrap();
    let reports: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(reports[0]["suite"], "phi");
    assert!(reports[0]["scope"].as_str().unwrap().contains("n <= 7"));
    assert_eq!(reports[0]["failures"].as_array().unwrap().len(), 0);
    std::fs::remove_file(&json_path).ok();

    let output = run(&["verify", "--counts", "-n", "0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn table_csv_header_is_fixed() {
    let csv = stdout_of(&["table", "--formula", "tally", "-n", "3", "--format", "csv"]);
    assert!(csv.starts_with("n,k,l,statistic,count\n"));
    assert!(csv.contains("3,,,leaves,10\n"));
    assert!(csv.contains("3,1,1,class_a,2\n"));

    let csv = stdout_of(&["table", "--formula", "by-degree", "-n", "3", "--format", "csv"]);
    assert_eq!(csv, "n,k,l,statistic,count\n3,1,,by_degree,6\n3,2,,by_degree,3\n3,3,,by_degree,1\n");
}
