//! Drives the compiled binary: exit codes, output formats, config files.

use std::process::{Command, Output};

use ie_mirror::verify::ReportRecord;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ie-mirror"));
    cmd.env_remove("IE_MIRROR_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_small_range_exits_zero() {
    let o = run(&[
        "verify",
        "--genus",
        "2..6",
        "--checks",
        "tms-kappa,perverse-kappa",
        "--sides",
        "dolbeault,betti",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# verify: 15 reports"), "{text}");
    assert!(text.contains("summary: 15 reports, 15 as expected, 0 unexpected"));
}

#[test]
fn genus_below_two_is_a_usage_error() {
    let o = run(&["verify", "--genus", "1..3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("genus must be ≥ 2"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["verify", "--mode", "guess"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--genus", "5..3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["show", "nope", "--genus", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_mode_notes_agreement() {
    let o = run(&[
        "verify",
        "--genus",
        "2..4",
        "--mode",
        "enumerate",
        "--checks",
        "tms-total",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("closed form agrees: true").count(), 6);
}

#[test]
fn enumerate_bound_exceeded_suggests_closed_form() {
    let o = run(&[
        "verify",
        "--genus",
        "2..6",
        "--mode",
        "enumerate",
        "--checks",
        "tms-total",
        "--enumerate-bound",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("closed_form"));
}

#[test]
fn default_sweep_flags_rhl_as_observed() {
    let o = run(&["sweep", "--genus", "2..10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<_> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with("summary"))
        .collect();
    assert_eq!(rows.len(), 9 * 8);
    for row in rows {
        if row.contains("rhl-kappa") {
            assert!(row.contains("observed"), "{row}");
        } else {
            assert!(row.contains(" pass "), "{row}");
        }
    }
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let args = [
        "sweep",
        "--genus",
        "2..4",
        "--format",
        "json",
        "--no-timing",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let records: Vec<ReportRecord> = serde_json::from_str(&a).unwrap();
    assert_eq!(records.len(), 3 * 8);
    for r in &records {
        assert_eq!(r.elapsed_ms, 0.0);
        let diff: ie_mirror::LaurentPoly = r.difference.parse().unwrap();
        assert_eq!(r.passed, diff.is_zero());
    }
    let value: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in [
        "identity",
        "genus",
        "side",
        "passed",
        "difference",
        "elapsed_ms",
        "provenance",
    ] {
        assert!(value[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn timed_json_reports_milliseconds() {
    let o = run(&[
        "verify",
        "--genus",
        "2",
        "--checks",
        "tms-kappa",
        "--format",
        "json",
    ]);
    let records: Vec<ReportRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r.elapsed_ms >= 0.0));
}

#[test]
fn show_formats() {
    assert_eq!(
        stdout(&run(&["show", "ie_dol_sl2_kappa", "--genus", "2"])),
        "u^4 v^4 + u^3 v^3\n"
    );
    assert_eq!(
        stdout(&run(&[
            "show",
            "ie_dol_sl2_kappa",
            "--genus",
            "2",
            "--format",
            "canonical"
        ])),
        "1 * u^4 v^4 q^0 + 1 * u^3 v^3 q^0\n"
    );
    assert_eq!(
        stdout(&run(&["show", "fermionic_shift", "--genus", "4"])),
        "6\n"
    );
    assert_eq!(
        stdout(&run(&[
            "show",
            "total_dimension",
            "--r",
            "2",
            "--genus",
            "3"
        ])),
        "12\n"
    );
    let with_prov = stdout(&run(&[
        "show",
        "ie_betti_sl2_kappa",
        "--genus",
        "2",
        "--show-provenance",
    ]));
    assert!(with_prov.contains("provenance: IE(M_B(C,SL2))_k"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "show",
        "pie_fixed_quotient",
        "--genus",
        "2",
        "--format",
        "json",
    ])))
    .unwrap();
    assert_eq!(json["value"], "1 * u^2 v^2 q^4 + 1 * u^1 v^1 q^2");
}

#[test]
fn config_file_and_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        "genus_min = 3\ngenus_max = 4\nchecks = [\"ordinary-failure\"]\noutput = \"json\"\n",
    )
    .unwrap();
    let o = bin()
        .env("IE_MIRROR_CONFIG", &path)
        .args(["verify", "--no-timing"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<ReportRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        records.iter().map(|r| r.genus).collect::<Vec<_>>(),
        vec![Some(3), Some(4)]
    );

    // flags override the file
    let o = bin()
        .env("IE_MIRROR_CONFIG", &path)
        .args(["verify", "--genus", "2", "--format", "table"])
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("# verify: 1 reports"));

    std::fs::write(&path, "genus_minimum = 3\n").unwrap();
    let o = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unexpected_verdict_exits_one() {
    // rhl-symmetry is an expected-pass check; on the κ-piece it fails.
    let o = run(&["verify", "--genus", "2", "--checks", "rhl-symmetry"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}
