//! CLI behavior: exit codes, output shapes, format parity, and the
//! structured-output round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kuzeta"))
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn value_sphere_at_minus_eleven() {
    let out = run(&["value", &data("sphere.toml"), "--at", "-11"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("691/32760"));
}

#[test]
fn builtin_shorthands_work_without_files() {
    let out = run(&["value", "sphere", "--at", "-11"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("691/32760"));
    let out = run(&["describe", "moore21"]);
    assert!(out.status.success());
    let out = run(&["describe", "cpn4"]);
    assert!(out.status.success());
}

#[test]
fn orders_output_lines() {
    let out = run(&["orders", &data("moore21.toml"), "--degrees", "-13..-13"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-13: 21 (modulo primes {2})"));

    let out = run(&["orders", &data("sphere.toml"), "--degrees", "4..4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4: 1 (trivial)"));

    // out-of-range degrees become rows, not table failures
    let out = run(&["orders", &data("sphere.toml"), "--degrees", "-2..4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-1: outside theorem range"));
    assert!(text.contains("0: outside theorem range"));
    assert!(text.contains("3: 3 (modulo primes {2})"));
}

#[test]
fn exit_codes() {
    // 1: unknown subcommand / bad flag
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["value", &data("sphere.toml"), "--no-such-flag"]).status.code(),
        Some(1)
    );
    // 2: malformed input (the failing invariant is named on stderr)
    let out = run(&["describe", &data("bad_torsion9.toml")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("square-free"));
    let out = run(&["describe", &data("no_two.toml")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2"));
    let out = run(&["describe", &data("missing-file-and-not-a-builtin.toml")]);
    assert_eq!(out.status.code(), Some(2));
    // 3: out-of-range queries
    assert_eq!(
        run(&["value", &data("sphere.toml"), "--at", "2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["value", &data("cpn3.toml"), "--at", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["limit", &data("sphere.toml"), "--at", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["orders", &data("moore3_unknown.toml"), "--degrees", "-5..-5"])
            .status
            .code(),
        Some(3)
    );
    // 0: success
    assert_eq!(
        run(&["value", &data("sphere.toml"), "--at", "-11"]).status.code(),
        Some(0)
    );
}

#[test]
fn structured_describe_round_trips() {
    let out = run(&["describe", &data("moore21.toml"), "--format", "structured"]);
    assert!(out.status.success());
    let first = stdout(&out);

    let dir = std::env::temp_dir().join("kuzeta-roundtrip-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roundtrip.toml");
    std::fs::write(&path, &first).unwrap();

    let out2 = run(&["describe", path.to_str().unwrap(), "--format", "structured"]);
    assert!(out2.status.success());
    assert_eq!(first, stdout(&out2), "structured describe is a fixed point");
}

#[test]
fn structured_round_trip_for_combinators() {
    // wedge and suspend documents resolve to explicit data that round-trip
    for file in ["wedge_sphere_moore3.toml", "suspended_cpn2.toml"] {
        let out = run(&["describe", &data(file), "--format", "structured"]);
        assert!(out.status.success(), "{file}");
        let first = stdout(&out);
        let dir = std::env::temp_dir().join("kuzeta-roundtrip-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(file);
        std::fs::write(&path, &first).unwrap();
        let out2 = run(&["describe", path.to_str().unwrap(), "--format", "structured"]);
        assert_eq!(first, stdout(&out2), "{file}");
    }
}

#[test]
fn text_and_structured_value_share_fraction_strings() {
    let text = stdout(&run(&["value", &data("moore21.toml"), "--at", "-5"]));
    let structured = stdout(&run(&[
        "value",
        &data("moore21.toml"),
        "--at",
        "-5",
        "--format",
        "structured",
    ]));
    for fraction in [
        "1409884/3",
        "1448428968939581787932808098954336691322688/7",
        "291730975492059047071122744826590861672685235456/3",
    ] {
        assert!(text.contains(fraction), "text misses {fraction}");
        assert!(structured.contains(fraction), "structured misses {fraction}");
    }
}

#[test]
fn wedge_and_suspend_documents_parse() {
    let out = run(&["describe", &data("wedge_sphere_moore3.toml")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("torsion_order 3"));

    let out = run(&["describe", &data("suspended_cpn2.toml")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("weight 1") && text.contains("weight 3"));
}

#[test]
fn verify_commands_report_small_residuals() {
    let out = run(&["verify", "euler", &data("sphere.toml"), "--s", "4", "--bound", "20000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let diff: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("|difference| = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(diff < 1e-6, "difference {diff}");

    let out = run(&["verify", "funceq", &data("moore3.toml"), "--s", "1.7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sign: +1"));
    let resid: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("residual = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(resid < 1e-8, "residual {resid}");

    // complex s parses
    let out = run(&["verify", "funceq", &data("cpn3.toml"), "--s", "2.2+0.4i"]);
    assert!(out.status.success());
}
