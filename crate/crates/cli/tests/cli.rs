use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn intdel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intdel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_gr(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> PathBuf {
    let mut s = format!("p tw {n} {}\n", edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    let path = dir.join(name);
    fs::write(&path, s).unwrap();
    path
}

fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn deletions(o: &Output) -> usize {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix("deletions "))
        .expect("deletions line")
        .parse()
        .unwrap()
}

fn solve(class: &str, graph: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["solve", "--class", class, "--graph", graph.to_str().unwrap()];
    args.extend_from_slice(extra);
    intdel(&args)
}

#[test]
fn six_vertex_interval_graph_needs_no_deletions() {
    let dir = TempDir::new().unwrap();
    let g = write_gr(
        dir.path(),
        "six.gr",
        6,
        &[(0, 1), (0, 3), (1, 4), (2, 4), (2, 5), (4, 5)],
    );
    let o = solve("interval", &g, &["--certificate"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(deletions(&o), 0);
    assert!(stdout(&o).contains("representation "));
}

#[test]
fn four_cycle_agrees_with_oracle() {
    let dir = TempDir::new().unwrap();
    let g = write_gr(dir.path(), "c4.gr", 4, &cycle(4));
    let o = solve("interval", &g, &["--oracle-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(deletions(&o), 1);
    assert!(stdout(&o).contains("oracle 1 (agrees)"));
}

#[test]
fn cycles_per_class() {
    let dir = TempDir::new().unwrap();
    let g = write_gr(dir.path(), "c5.gr", 5, &cycle(5));
    for (class, want) in [
        ("circular-arc", 0),
        ("interval", 1),
        ("proper-interval", 1),
        ("permutation", 1),
        ("trivially-perfect", 2),
        ("threshold", 3),
    ] {
        let o = solve(class, &g, &["--oracle-check"]);
        assert_eq!(o.status.code(), Some(0), "{class}");
        assert_eq!(deletions(&o), want, "{class}");
    }
}

#[test]
fn long_path_is_interval() {
    let dir = TempDir::new().unwrap();
    let edges: Vec<_> = (0..299).map(|i| (i, i + 1)).collect();
    let g = write_gr(dir.path(), "path.gr", 300, &edges);
    let o = solve("proper-interval", &g, &["--stats"]);
    assert!(o.status.success());
    assert_eq!(deletions(&o), 0);
    assert!(stdout(&o).contains("node kind bag table"));
}

#[test]
fn trivial_graphs() {
    let dir = TempDir::new().unwrap();
    let k1 = write_gr(dir.path(), "k1.gr", 1, &[]);
    let empty = write_gr(dir.path(), "e5.gr", 5, &[]);
    for class in ["threshold", "circular-arc", "permutation"] {
        assert_eq!(deletions(&solve(class, &k1, &[])), 0, "{class}");
        assert_eq!(deletions(&solve(class, &empty, &[])), 0, "{class}");
    }
}

#[test]
fn json_report() {
    let dir = TempDir::new().unwrap();
    let g = write_gr(dir.path(), "c4.gr", 4, &cycle(4));
    let o = solve("threshold", &g, &["--json", "--certificate", "--oracle-check"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "intdel.solve.v1");
    assert_eq!(v["class"], "threshold");
    assert_eq!(v["n"], 4);
    assert_eq!(v["deletions"], 2);
    assert_eq!(v["certificate"]["deleted_edges"].as_array().unwrap().len(), 2);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn explicit_decomposition() {
    let dir = TempDir::new().unwrap();
    let g = write_gr(dir.path(), "p3.gr", 3, &[(0, 1), (1, 2)]);
    let td = dir.path().join("p3.td");
    fs::write(&td, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
    let o = solve("interval", &g, &["--td", td.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(deletions(&o), 0);
    assert!(stdout(&o).contains("width 1"));

    fs::write(&td, "s td 1 2 3\nb 1 1 2\n").unwrap();
    assert_eq!(
        solve("interval", &g, &["--td", td.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn state_limit_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let edges: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
    let g = write_gr(dir.path(), "k6.gr", 6, &edges);
    assert_eq!(solve("interval", &g, &["--max-states", "10"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.gr");
    fs::write(&bad, "p tw 2 1\n1 7\n").unwrap();
    assert_eq!(solve("interval", &bad, &[]).status.code(), Some(2));
    assert_eq!(
        solve("interval", &dir.path().join("missing.gr"), &[]).status.code(),
        Some(2)
    );
    let g = write_gr(dir.path(), "k2.gr", 2, &[(0, 1)]);
    assert_eq!(solve("chordal", &g, &[]).status.code(), Some(2));
}

#[test]
fn verify_reports_membership() {
    let dir = TempDir::new().unwrap();
    let g = write_gr(dir.path(), "c5.gr", 5, &cycle(5));
    let o = intdel(&["verify", "--graph", g.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("circular-arc in-class true min-deletions 0"), "{out}");
    assert!(out.contains("permutation in-class false min-deletions 1"), "{out}");
    assert_eq!(out.lines().count(), 6);

    let o = intdel(&["verify", "--class", "threshold", "--graph", g.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "threshold in-class false min-deletions 3");

    let big = write_gr(
        dir.path(),
        "p12.gr",
        12,
        &(0..11).map(|i| (i, i + 1)).collect::<Vec<_>>(),
    );
    assert_eq!(
        intdel(&["verify", "--graph", big.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let o = intdel(&["bench", dir.path().to_str().unwrap(), "--class", "interval"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "instance,n,m,width,deletions,wall_ms,max_table,total_generated,error"
    );

    write_gr(dir.path(), "a.gr", 4, &cycle(4));
    write_gr(dir.path(), "b.gr", 3, &[(0, 1)]);
    fs::write(dir.path().join("c.gr"), "garbage\n").unwrap();
    let o = intdel(&["bench", dir.path().to_str().unwrap(), "--class", "interval"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][0], "a");
    assert_eq!(&rows[0][4], "1");
    assert_eq!(&rows[1][4], "0");
    assert!(!rows[2][8].is_empty());
}
