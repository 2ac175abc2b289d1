// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn geodiscord(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodiscord"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn write_state(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["write-state"];
    full.extend_from_slice(args);
    let p = path.to_str().unwrap().to_owned();
    full.extend_from_slice(&["--out", &p]);
    let o = geodiscord(&full, dir);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn measure_examples() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write_state(
        dir.path(),
        "theta.txt",
        &["--family", "theta", "--theta", "0.7853981633974483"],
    );
    let o = geodiscord(&["measure", "--state", &theta], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("d1,d2,sqrt_d2,negativity,d1_method\n"));
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let expect = [0.5, 0.25, 0.5, 0.20710678118654752];
    for (cell, e) in row.iter().zip(expect) {
        assert!((cell.parse::<f64>().unwrap() - e).abs() < 1e-12, "{text}");
    }
    assert_eq!(row[4], "closed-x");

    let mixed = dir.path().join("mixed.txt");
    let lines: Vec<&str> = (0..16)
        .map(|k| if k % 5 == 0 { "0.25,0" } else { "0,0" })
        .collect();
    std::fs::write(&mixed, lines.join("\n")).unwrap();
    let o = geodiscord(&["measure", "--state", mixed.to_str().unwrap()], dir.path());
    assert_eq!(stdout(&o).lines().nth(1), Some("0,0,0,0,closed-x"));

    let h = 0.5;
    let bell: Vec<String> = (0..16)
        .map(|k| match k {
            0 | 3 | 12 | 15 => format!("{h},0"),
            _ => "0,0".into(),
        })
        .collect();
    let bell_path = dir.path().join("bell.txt");
    std::fs::write(&bell_path, format!("# |Phi+>\n{}\n", bell.join("\n"))).unwrap();
    let o = geodiscord(
        &["measure", "--state", bell_path.to_str().unwrap()],
        dir.path(),
    );
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "oracle");
    assert!((row[0].parse::<f64>().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1,0\n0,0\n").unwrap();
    assert_eq!(
        geodiscord(&["measure", "--state", bad.to_str().unwrap()], dir.path())
            .status
            .code(),
        Some(2)
    );

    let trace2: Vec<&str> = (0..16)
        .map(|k| if k % 5 == 0 { "0.5,0" } else { "0,0" })
        .collect();
    let t2 = dir.path().join("trace2.txt");
    std::fs::write(&t2, trace2.join("\n")).unwrap();
    let o = geodiscord(&["measure", "--state", t2.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("trace"), "{err}");

    let missing = geodiscord(&["measure", "--state", "no-such-file"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(
        geodiscord(&["figure", "7"], dir.path()).status.code(),
        Some(4)
    );
    assert_eq!(
        geodiscord(
            &[
                "evolve",
                "--family",
                "discordant",
                "--w",
                "0.2",
                "--s",
                "0.9"
            ],
            dir.path()
        )
        .status
        .code(),
        Some(4)
    );
    assert_eq!(
        geodiscord(&["frobnicate"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn evolve_classical_state() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--tmax",
        "0.6931471805599453",
        "--points",
        "2",
        "evolve",
        "--family",
        "classical",
        "--w",
        "0.25",
        "--s",
        "0.25",
        "--side",
        "A",
    ];
    let o = geodiscord(&args, dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("gt,d1,d2,sqrt_d2,negativity\n"));
    let rows = parse_rows(&text);
    assert!(rows[0].iter().all(|&v| v == 0.0), "{text}");
    assert!((rows[1][1] - 0.408248290463863).abs() < 1e-9);
    assert!((rows[1][2] - 0.125).abs() < 1e-12);

    let state = write_state(
        dir.path(),
        "x.txt",
        &["--family", "discordant", "--w", "0.3", "--s", "0.2"],
    );
    let o = geodiscord(
        &["--points", "51", "evolve", "--state", &state, "--side", "B"],
        dir.path(),
    );
    let rows = parse_rows(&stdout(&o));
    assert_eq!(rows.len(), 51);
    assert!(rows.windows(2).all(|p| p[1][1] <= p[0][1] + 1e-12));
}

#[test]
fn figures_are_deterministic_with_lf_endings() {
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=6 {
        let o = geodiscord(&["--points", "201", "figure", &n.to_string()], dir.path());
        assert!(
            o.status.success(),
            "fig {n}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let first = std::fs::read(dir.path().join(format!("fig{n}.csv"))).unwrap();
        let other = dir.path().join("again.csv");
        let o = geodiscord(
            &[
                "--points",
                "201",
                "figure",
                &n.to_string(),
                "--out",
                other.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert!(o.status.success());
        assert_eq!(first, std::fs::read(&other).unwrap(), "fig {n}");
        assert!(!first.contains(&b'\r'));
    }
    let fig1 = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    assert!(fig1.starts_with("theta,negativity,sqrt_d2,d1\n"));
    let mid = &parse_rows(&fig1)[100];
    let expect = [std::f64::consts::FRAC_PI_4, 0.20710678118654752, 0.5, 0.5];
    for (v, e) in mid.iter().zip(expect) {
        assert!((v - e).abs() < 1e-12, "{mid:?}");
    }
    let fig6 = std::fs::read_to_string(dir.path().join("fig6.csv")).unwrap();
    assert!(fig6.starts_with("gt,sqrt_d2_sideA,sqrt_d2_sideB\n"));
    let fig3 = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    assert!(fig3.starts_with("gt,d1,sqrt_d2\n"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# short run\npoints = 3\ntmax = 2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = geodiscord(
        &[
            "--config", c, "evolve", "--family", "theta", "--theta", "0.5",
        ],
        dir.path(),
    );
    let rows = parse_rows(&stdout(&o));
    assert_eq!(
        rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
        vec![0.0, 1.0, 2.0]
    );
    let o = geodiscord(
        &[
            "--config", c, "--points", "5", "evolve", "--family", "theta", "--theta", "0.5",
        ],
        dir.path(),
    );
    assert_eq!(parse_rows(&stdout(&o)).len(), 5);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    let o = geodiscord(&["--config", c, "critical"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn critical_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = geodiscord(&["critical", "--tol", "1e-6"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let value = |key: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(key)).unwrap();
        line.split('=')
            .nth(1)
            .unwrap()
            .split_whitespace()
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((value("w_c =") - (2.0 - 2f64.sqrt()) / 8.0).abs() < 1e-12);
    let wbar = value("w_bar_c =");
    assert!((0.0772..=0.0782).contains(&wbar), "{text}");
    assert!(text.contains("w_bar_c > w_c: true"));
}

#[test]
fn sweep_rows() {
    let dir = tempfile::tempdir().unwrap();
    let wc = format!("{}", (2.0 - 2f64.sqrt()) / 8.0);
    let o = geodiscord(
        &["sweep", "--w-from", &wc, "--w-to", "0.25", "--steps", "10"],
        dir.path(),
    );
    let text = stdout(&o);
    assert!(text.starts_with("w,s,d2_inc_A,d1_inc_A,d2_inc_B,t_zero\n"));
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[2] == "true" && r[5].is_empty()));

    let o = geodiscord(
        &[
            "sweep",
            "--w-from",
            "0",
            "--w-to",
            &wc,
            "--steps",
            "8",
            "--s-policy",
            "fixed",
            "--s",
            "0.05",
        ],
        dir.path(),
    );
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[2] == "false"));
    // Cells whose s_max is below 0.05 are skipped with a warning.
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(
        rows.len() + err.lines().filter(|l| l.starts_with("warning")).count(),
        8
    );

    let again = geodiscord(
        &[
            "sweep",
            "--w-from",
            "0",
            "--w-to",
            &wc,
            "--steps",
            "8",
            "--s-policy",
            "fixed",
            "--s",
            "0.05",
        ],
        dir.path(),
    );
    assert_eq!(stdout(&again), text);
}

#[test]
fn sample_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&geodiscord(
        &["--seed", "5", "sample", "--kind", "bell-diagonal"],
        dir.path(),
    ));
    let b = stdout(&geodiscord(
        &["--seed", "5", "sample", "--kind", "bell-diagonal"],
        dir.path(),
    ));
    let c = stdout(&geodiscord(
        &["--seed", "6", "sample", "--kind", "bell-diagonal"],
        dir.path(),
    ));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let path = dir.path().join("s.txt");
    std::fs::write(&path, &a).unwrap();
    assert!(
        geodiscord(&["measure", "--state", path.to_str().unwrap()], dir.path())
            .status
            .success()
    );
}
