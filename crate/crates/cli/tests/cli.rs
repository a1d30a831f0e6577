use std::path::Path;
use std::process::{Command, Output};

fn actionvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actionvar"))
        .args(args)
        .env_remove("ACTIONVAR_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn cell(rows: &[Vec<String>], row: usize, name: &str) -> f64 {
    let j = rows[0].iter().position(|h| h == name || h.starts_with(&format!("{name} ["))).unwrap();
    rows[row][j].parse().unwrap()
}

#[test]
fn table1_csv_file_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.csv");
    let out = actionvar(&["table1", "--eps", "0,0.01,0.1", "--csv", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    assert!(rows[0][1].contains("[E/w0]"));
    for name in ["fullrel_pdx", "fullrel_xdp", "wr_pdx", "wr_xdp"] {
        assert_eq!(cell(&rows, 1, name), 1.0);
    }
    assert_eq!(cell(&rows, 3, "wr_pdx"), 1.01875);
    assert_eq!(cell(&rows, 3, "wr_xdp"), 1.01875);
    assert!((cell(&rows, 3, "fullrel_pdx") - 1.01856).abs() < 5e-6);
    assert!((cell(&rows, 3, "fullrel_xdp") - 1.01858).abs() < 5e-6);
    let table = stdout(&out);
    assert!(table.contains("1.018750"));
}

#[test]
fn csv_is_deterministic() {
    let args = ["table2", "--ratio", "0.001", "--nmax", "3", "--format", "csv"];
    let a = actionvar(&args);
    let b = actionvar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(csv_rows(&stdout(&a)).len(), 5);
}

#[test]
fn table2_ground_state_row() {
    let out = actionvar(&["table2", "--ratio", "0.01", "--nmax", "1", "--format", "csv"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(cell(&rows, 1, "quantum_pdx"), 0.0);
    assert!((cell(&rows, 1, "quantum_xdp") + 7.96875e-3).abs() < 1e-15);
    assert!((cell(&rows, 1, "jwkb") + 4.6875e-4).abs() < 2e-6);
    assert!((cell(&rows, 1, "rs") + 9.375e-4).abs() < 1e-15);
    assert_eq!(rows[1][10], "");
}

#[test]
fn table2_zero_ratio_is_all_zero() {
    let out = actionvar(&["table2", "--ratio", "0", "--nmax", "4", "--format", "csv"]);
    assert!(out.status.success());
    for row in &csv_rows(&stdout(&out))[1..] {
        for c in &row[1..] {
            assert!(c.is_empty() || c == "0", "{row:?}");
        }
    }
}

#[test]
fn frequency_report() {
    let out = actionvar(&["freq", "--eps", "0,0.01", "--format", "csv"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    for name in ["omega_first_order", "omega_rk4_wr", "omega_rk4_fullrel"] {
        assert_eq!(cell(&rows, 1, name), 1.0);
    }
    let shift = cell(&rows, 2, "shift_rk4_wr");
    assert!((shift - 0.375).abs() <= 0.02 * 0.375, "{shift}");
}

#[test]
fn levels_examples() {
    let rows = csv_rows(&stdout(&actionvar(&["levels", "--scheme", "sho", "--nmax", "3", "--format", "csv"])));
    let energies: Vec<f64> = (1..=4).map(|i| cell(&rows, i, "energy")).collect();
    assert_eq!(energies, vec![0.5, 1.5, 2.5, 3.5]);
    assert_eq!(rows[0], ["n", "energy [hbar w0]", "correction [hbar w0]", "oracle_energy [hbar w0]", "rel_diff", "within_tol"]);

    let rows = csv_rows(&stdout(&actionvar(&[
        "levels", "--scheme", "wr-pdx", "--ratio", "0.01", "--nmax", "1", "--format", "csv",
    ])));
    assert_eq!(cell(&rows, 2, "energy"), 1.491875);

    let rows = csv_rows(&stdout(&actionvar(&[
        "levels", "--scheme", "aho", "--delta", "0.001", "--nmax", "0", "--format", "csv",
    ])));
    assert!((cell(&rows, 1, "energy") - 0.5007506).abs() < 1e-7);
}

#[test]
fn show_scheme_names_columns() {
    let out = actionvar(&["table1", "--eps", "0.1", "--show-scheme"]);
    let text = stdout(&out);
    assert!(text.contains("# wr_pdx: ClassicalWR_pdx"));
    assert!(text.contains("# fullrel_xdp: ClassicalFullRel_xdp"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# run\neps = 0.01, 0.02, 0.05\nformat = csv\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let rows = csv_rows(&stdout(&actionvar(&["table1", "--config", cfg])));
    assert_eq!(rows.len(), 4);
    let rows = csv_rows(&stdout(&actionvar(&["table1", "--config", cfg, "--eps", "0.1"])));
    assert_eq!(rows.len(), 2);
}

#[test]
fn tolerance_from_environment() {
    let run = |tol: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_actionvar"));
        c.args(["levels", "--scheme", "wr-pdx", "--ratio", "0.01", "--nmax", "3", "--format", "csv"]);
        match tol {
            Some(t) => c.env("ACTIONVAR_TOL", t),
            None => c.env_remove("ACTIONVAR_TOL"),
        };
        stdout(&c.output().unwrap())
    };
    let strict = run(Some("1e-9"));
    let loose = run(Some("0.5"));
    assert!(strict.contains("false"));
    assert!(!loose.contains("false"));
    assert_eq!(run(None).lines().count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(actionvar(&["--help"]).status.code(), Some(0));
    assert_eq!(actionvar(&["table1", "--bogus"]).status.code(), Some(1));
    assert_eq!(actionvar(&["table1", "--eps", "0.7"]).status.code(), Some(1));
    assert_eq!(actionvar(&["levels", "--scheme", "nonsense"]).status.code(), Some(1));
    assert_eq!(actionvar(&["levels", "--scheme", "fullrel-pdx"]).status.code(), Some(1));
    assert_eq!(actionvar(&["table1", "--config", "/nonexistent/run.cfg"]).status.code(), Some(3));
    let missing_dir = Path::new("/nonexistent/dir/out.csv");
    assert_eq!(actionvar(&["table1", "--csv", missing_dir.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(actionvar(&["table2", "--ratio", "0.001", "--nmax", "200"]).status.code(), Some(2));
}
