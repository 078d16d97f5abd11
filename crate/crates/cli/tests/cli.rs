use std::process::{Command, Output};

fn fflcu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fflcu"))
        .args(args)
        .env_remove("FFLCU_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Rows of a CSV without a metadata line, as (header, rows).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn qubit_table_row_endpoints() {
    let o = fflcu(&[
        "resources",
        "--D",
        "1",
        "--eps",
        "0.1",
        "--C",
        "1,100",
        "--no-metadata",
    ]);
    assert!(o.status.success());
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["D", "epsilon", "C", "qubits"]);
    let q: Vec<&str> = rows.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(q, ["30", "40"]);
}

#[test]
fn lcu_sweep_slope_from_emitted_data() {
    let o = fflcu(&[
        "sweep-lcu",
        "--m-min",
        "4",
        "--m-max",
        "12",
        "--no-metadata",
    ]);
    assert!(o.status.success());
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["M", "betaP", "op_error"]);
    let m: Vec<f64> = column(&rows, 0).iter().map(|v| v.ln()).collect();
    let e: Vec<f64> = column(&rows, 2).iter().map(|v| v.ln()).collect();
    let n = m.len() as f64;
    let (mx, my) = (m.iter().sum::<f64>() / n, e.iter().sum::<f64>() / n);
    let sxy: f64 = m.iter().zip(&e).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = m.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    assert!((-0.43..=-0.23).contains(&slope), "slope {slope}");
}

#[test]
fn heat1d_columns_and_error_column() {
    let o = fflcu(&[
        "heat1d",
        "--n",
        "5",
        "--m",
        "4",
        "--t",
        "0.005",
        "--ic",
        "paper",
        "--no-metadata",
    ]);
    assert!(o.status.success());
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["x", "evolved_amp", "exact_amp", "abs_err"]);
    assert_eq!(rows.len(), 32);
    for r in &rows {
        let v: Vec<f64> = r.iter().map(|c| c.parse().unwrap()).collect();
        assert!(((v[1] - v[2]).abs() - v[3]).abs() < 1e-12);
        // rescaled by √(2^(n-1)) the deviation stays at the few-percent level
        assert!(v[3] * 4.0 < 0.1);
    }
}

#[test]
fn floats_round_trip_through_csv() {
    let o = fflcu(&[
        "cost-ratio",
        "--K",
        "10,500",
        "--alpha",
        "0.1,1",
        "--no-metadata",
    ]);
    let (_, rows) = parse_csv(&stdout(&o));
    for r in rows {
        let (k, a, v): (f64, f64, f64) = (
            r[0].parse().unwrap(),
            r[1].parse().unwrap(),
            r[2].parse().unwrap(),
        );
        assert_eq!(v, fflcu::pricing::cost_ratio(k, a));
    }
}

#[test]
fn output_is_deterministic_without_metadata() {
    let args = [
        "trig-gauss",
        "--sigma",
        "0.3,0.7",
        "--eps",
        "1e-3",
        "--no-metadata",
    ];
    assert_eq!(fflcu(&args).stdout, fflcu(&args).stdout);
    let args = [
        "sweep-grid",
        "--n-min",
        "5",
        "--n-max",
        "7",
        "--no-metadata",
    ];
    assert_eq!(fflcu(&args).stdout, fflcu(&args).stdout);
}

#[test]
fn metadata_line_is_first_and_optional() {
    let with = stdout(&fflcu(&["cost-ratio", "--K", "10", "--alpha", "1"]));
    let without = stdout(&fflcu(&[
        "cost-ratio",
        "--K",
        "10",
        "--alpha",
        "1",
        "--no-metadata",
    ]));
    let (first, rest) = with.split_once('\n').unwrap();
    assert!(first.starts_with("# fflcu"));
    assert_eq!(rest, without);
    assert!(!without.contains('\r'));
}

#[test]
fn json_output_parses() {
    let o = fflcu(&["resources", "--D", "3", "--eps", "0.01", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["rows"][0]["qubits"], 140);
    assert_eq!(doc["rows"][1]["qubits"], 164);
    assert!(doc["metadata"]["tool"]
        .as_str()
        .unwrap()
        .starts_with("fflcu"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# resource table\nD = 7\neps = 1e-4\nC = 1, 100\n").unwrap();
    let out = dir.path().join("table.csv");
    let o = fflcu(&[
        "resources",
        "--config",
        cfg.to_str().unwrap(),
        "--C",
        "100",
        "--out",
        out.to_str().unwrap(),
        "--no-metadata",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let (_, rows) = parse_csv(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "7");
    assert_eq!(rows[0][3], "650");
}

#[test]
fn configuration_errors_exit_2_with_one_json_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "m-max = 6\nnot_a_key = 1\n").unwrap();
    for args in [
        vec!["heat1d", "--bogus", "1"],
        vec!["heat1d", "--t", "-1"],
        vec!["sweep-lcu", "--points", "1000"],
        vec!["sweep-lcu", "--config", cfg.to_str().unwrap()],
        vec!["price-basket", "--vols", "0.2,0.3"],
        vec!["trig-gauss", "--sigma", "1.5"],
        vec!["resources", "--format", "xml"],
    ] {
        let o = fflcu(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "config");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn thread_cap_is_validated() {
    let bad = Command::new(env!("CARGO_BIN_EXE_fflcu"))
        .args(["cost-ratio", "--K", "10", "--alpha", "1"])
        .env("FFLCU_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_fflcu"))
        .args(["cost-ratio", "--K", "10", "--alpha", "1", "--no-metadata"])
        .env("FFLCU_THREADS", "1")
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn bermudan_noise_rows() {
    let o = fflcu(&[
        "price-bermudan",
        "--n",
        "7",
        "--m",
        "12",
        "--domain-factor",
        "4",
        "--dates",
        "2",
        "--noise",
        "0,1e-3",
        "--seeds",
        "2",
        "--lattice-steps",
        "500",
        "--no-metadata",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header[..5], ["dates", "noise", "seed", "value", "shift"]);
    assert_eq!(rows.len(), 3);
    let shift = column(&rows, 4);
    assert_eq!(shift[0], 0.0);
    assert!(shift[1..].iter().all(|s| s.abs() <= 2.0 * 5.0 * 1e-3));
}

#[test]
fn basket_prices_within_a_percent_of_closed_form() {
    let o = fflcu(&["price-basket", "--no-metadata"]);
    assert!(o.status.success());
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header[..4], ["kind", "value", "closed_form", "rel_err"]);
    assert_eq!(rows.len(), 2);
    for r in column(&rows, 3) {
        assert!(r.abs() < 0.01);
    }
}

#[test]
fn self_test_passes() {
    let o = fflcu(&["self-test", "--no-metadata"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let (_, rows) = parse_csv(&stdout(&o));
    assert!(rows.iter().all(|r| r[1] == "true"));
}

#[test]
fn help_lists_parameters() {
    let o = fflcu(&["heat1d", "--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in ["--n", "--m", "--t", "--ic", "--scheme"] {
        assert!(text.contains(key));
    }
}
