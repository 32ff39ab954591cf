use std::path::Path;
use std::process::{Command, Output};

fn rkp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rkp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn tree_depth_three_matches_both_figures() {
    let o = rkp(&["tree", "--depth", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("1/4  2/5  3/5  3/4  4/3  5/3  5/2  4/1"));
    assert!(text.contains("5/3  7/3  4/1  7/1  -7/1  -4/1  -7/3  -5/3"));
}

#[test]
fn tree_depth_zero_has_both_roots() {
    let text = stdout(&rkp(&["tree", "--depth", "0"]));
    assert_eq!(text, "Stern-Brocot tree\n1/1\n\ntransformed tree\n∞\n");
}

#[test]
fn tree_depth_overflow_is_usage_error() {
    assert_eq!(code(&rkp(&["tree", "--depth", "31"])), 2);
    assert_eq!(code(&rkp(&["tree", "--depth", "30", "--format", "svg"])), 2);
}

#[test]
fn tree_csv_depth_two() {
    let rows = csv_rows(&stdout(&rkp(&["tree", "--depth", "2", "--format", "csv"])));
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[3], ["2", "0", "00", "1", "3", "2/1"]);
}

#[test]
fn profile_at_minus_two_reports_corners() {
    let o = rkp(&["profile", "--energy", "-2"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    let corner = |name: &str| {
        rows.iter()
            .find(|r| r[2] == name)
            .map(|r| f(&r[0]))
            .unwrap()
    };
    assert!((corner("corner_a") - 0.2258).abs() < 1e-4);
    assert!((corner("corner_b") - 0.2985).abs() < 1e-4);
    assert!(rows.iter().any(|r| r[2] == "bounded"));
    assert!(rows.iter().any(|r| r[2] == "unbounded"));
}

#[test]
fn profile_above_critical_is_connected() {
    let rows = csv_rows(&stdout(&rkp(&["profile", "--energy", "-1"])));
    assert!(rows
        .iter()
        .all(|r| r[2] != "bounded" && r[2] != "unbounded"));
    assert!(rows.iter().any(|r| r[2] == "connected"));
}

#[test]
fn profile_svg_touches_at_critical_energy() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("crit.svg");
    let o = rkp(&[
        "profile",
        "--energy",
        "-1.5",
        "--format",
        "svg",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"class="singular" cx="0.500000" cy="0.500000""#));
    assert!(text.contains("class=\"bounded\"") && text.contains("class=\"unbounded\""));

    // The sibling CSV carries exactly the plotted samples.
    let csv = std::fs::read_to_string(svg.with_extension("csv")).unwrap();
    let samples: Vec<_> = csv_rows(&csv)
        .into_iter()
        .filter(|r| !r[2].starts_with("corner"))
        .collect();
    assert_eq!(samples.len(), 2 * 201);
    for r in &samples {
        let point = format!("{:.6},{:.6}", f(&r[0]), -f(&r[1]));
        assert!(text.contains(&point), "{point} not plotted");
    }
}

#[test]
fn profile_rejects_text_format() {
    assert_eq!(
        code(&rkp(&["profile", "--energy", "-2", "--format", "text"])),
        2
    );
    assert_eq!(code(&rkp(&["profile"])), 2);
}

#[test]
fn orbits_window_flags() {
    let o = rkp(&["orbits", "--max-sum", "3", "--energy", "-1.55"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    let flagged: Vec<_> = rows
        .iter()
        .filter(|r| r[7] == "true")
        .map(|r| (r[0].as_str(), r[1].as_str()))
        .collect();
    assert_eq!(flagged, [("1", "2"), ("2", "1")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(1,2) (2,1)"));
}

#[test]
fn orbits_critical_window_edge() {
    let rows = csv_rows(&stdout(&rkp(&["orbits", "--max-sum", "2"])));
    assert_eq!(rows.len(), 1);
    assert_eq!(f(&rows[0][4]), -1.5);
    let rows = csv_rows(&stdout(&rkp(&[
        "orbits",
        "--max-sum",
        "5",
        "--energy",
        "2",
    ])));
    assert!(rows.iter().all(|r| r[7] == "false"));
}

#[test]
fn flow_equilibrium_rows_are_constant() {
    let o = rkp(&[
        "flow", "--field", "K", "--q", "1,0", "--p", "0,-1", "--T", "5",
    ]);
    assert_eq!(code(&o), 0);
    for r in csv_rows(&stdout(&o)) {
        assert!((f(&r[1]) - 1.0).abs() < 1e-12 && f(&r[2]).abs() < 1e-12);
        assert!((f(&r[7]) + 1.5).abs() < 1e-12);
    }
}

#[test]
fn flow_circular_orbit_closes() {
    let o = rkp(&[
        "flow",
        "--field",
        "H",
        "--q",
        "1,0",
        "--p",
        "0,1",
        "--T",
        "6.283185307179586",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("# status = complete"));
    let last = csv_rows(&text).pop().unwrap();
    assert!((f(&last[1]) - 1.0).abs() < 1e-9 && f(&last[2]).abs() < 1e-9);
}

#[test]
fn flow_second_kind_orbit_reports_symmetry() {
    let o = rkp(&["flow", "--orbit", "2,1", "--rotating"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("# symmetry_residual = "))
        .unwrap();
    assert!(f(line) < 1e-6);
    assert!(text.contains("# frame = rotating"));
}

#[test]
fn flow_collision_is_truncated() {
    let o = rkp(&[
        "flow", "--field", "H", "--q", "1,0", "--p", "0,0", "--T", "3",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("# status = truncated"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn flow_argument_errors() {
    assert_eq!(
        code(&rkp(&["flow", "--field", "H", "--q", "1,0", "--p", "0,1"])),
        2
    );
    assert_eq!(
        code(&rkp(&[
            "flow", "--field", "H", "--q", "1", "--p", "0,1", "--T", "1"
        ])),
        2
    );
    assert_eq!(code(&rkp(&["flow", "--orbit", "2,4"])), 2);
    assert_eq!(code(&rkp(&["flow"])), 2);
}

#[test]
fn verify_default_run_flags_only_literal_bracket_rows() {
    let o = rkp(&["verify", "--seed", "42"]);
    assert_eq!(code(&o), 1);
    let failed: Vec<_> = csv_rows(&stdout(&o))
        .into_iter()
        .filter(|r| r[4] == "false")
        .map(|r| r[0].clone())
        .collect();
    assert_eq!(failed, ["poisson_l_a1", "poisson_l_a2"]);
}

#[test]
fn verify_subset_passes() {
    let o = rkp(&["verify", "--only", "tree"]);
    assert_eq!(code(&o), 0);
    assert_eq!(csv_rows(&stdout(&o)).len(), 6);
}

#[test]
fn verify_tight_symplectic_tolerance_fails() {
    let o = rkp(&[
        "verify",
        "--only",
        "regularization",
        "--tol",
        "symplectic=1e-12",
    ]);
    assert_eq!(code(&o), 1);
    let rows = csv_rows(&stdout(&o));
    let ls = rows.iter().find(|r| r[0] == "ls_symplectic").unwrap();
    assert_eq!(ls[4], "false");
    assert_eq!(f(&ls[3]), 1e-12);
}

#[test]
fn verify_unknown_inputs_are_usage_errors() {
    assert_eq!(code(&rkp(&["verify", "--tol", "nonsense=1"])), 2);
    assert_eq!(code(&rkp(&["verify", "--tol", "symplectic"])), 2);
    assert_eq!(code(&rkp(&["verify", "--only", "astrology"])), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["verify", "--seed", "7"][..],
        &["profile", "--energy", "-1.7"],
        &["tree", "--depth", "6", "--format", "csv"],
        &["flow", "--orbit", "3,2", "--ecc", "0.2"],
    ] {
        assert_eq!(rkp(args).stdout, rkp(args).stdout, "{args:?}");
    }
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("rkp.conf");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "# defaults\ndepth = 1\nformat = csv\n");
    let rows = csv_rows(&stdout(&rkp(&["--config", &cfg, "tree"])));
    assert_eq!(rows.len(), 3);
    let rows = csv_rows(&stdout(&rkp(&["tree", "--depth", "2", "--config", &cfg])));
    assert_eq!(rows.len(), 7);

    let cfg = write_config(dir.path(), "depth = 40\n");
    assert_eq!(code(&rkp(&["--config", &cfg, "tree"])), 2);
    let cfg = write_config(dir.path(), "colour = red\n");
    assert_eq!(code(&rkp(&["--config", &cfg, "tree"])), 2);
}
