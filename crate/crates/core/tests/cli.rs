use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dpcolor::format::{parse_cover, write_cover, write_lists, write_multigraph};
use dpcolor::{build_bad_complete, build_bad_cycle, Multigraph};
use tempfile::TempDir;

fn dpcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpcolor"))
        .args(args)
        .env_remove("DPCOLOR_MAX_LIST_SUM")
        .env_remove("DPCOLOR_NODE_BUDGET")
        .env_remove("DPCOLOR_MAX_PAIR_CHOICES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn bowtie() -> Multigraph {
    Multigraph::from_edges(5, [(1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)]).unwrap()
}

#[test]
fn chi_dp_of_cycles_and_formats() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "c5", &write_multigraph(&Multigraph::cycle(5)));
    let o = dpcolor(&["chi-dp", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    let o = dpcolor(&["--format", "lines", "chi-dp", s(&g)]);
    assert_eq!(stdout(&o), "chi_dp 3\n");
}

#[test]
fn constructed_cover_validates_and_is_uncolorable() {
    let dir = TempDir::new().unwrap();
    let o = dpcolor(&["construct", "complete", "3", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_cover(&stdout(&o), None).unwrap(), build_bad_complete(3, 2).unwrap());
    let cover = put(&dir, "cover", &stdout(&o));
    let o = dpcolor(&["validate", s(&cover)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "valid\n"));

    let g = put(&dir, "g", &write_multigraph(&Multigraph::complete(3).power(2).unwrap()));
    let o = dpcolor(&["solve", s(&g), s(&cover)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "UNCOLORABLE\n"));
}

#[test]
fn violation_exits_one_and_strict_exits_two() {
    let dir = TempDir::new().unwrap();
    // color 1 of vertex 1 matched twice across a simple edge
    let cover = put(&dir, "bad", "2\n2 2\n1 1 2 1\n1 1 2 2\n");
    let o = dpcolor(&["--format", "lines", "validate", s(&cover)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("degree-exceeded"));
    let o = dpcolor(&["--strict", "validate", s(&cover)]);
    assert_eq!(o.status.code(), Some(2));

    // the same cross edges are fine over a double edge
    let g = put(&dir, "k2k2", "2\n1 2 2\n");
    let o = dpcolor(&["validate", "--graph", s(&g), s(&cover)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let empty = put(&dir, "empty", "");
    for args in [vec!["chi-dp", s(&empty)], vec!["validate", s(&empty)]] {
        let o = dpcolor(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    }
    let o = dpcolor(&["chi-dp", "/nonexistent/graph"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = put(&dir, "loop", "3\n1 1 1\n");
    assert_eq!(dpcolor(&["chi-dp", s(&bad)]).status.code(), Some(2));
    assert_eq!(dpcolor(&["--node-budget", "0", "chi-dp", s(&bad)]).status.code(), Some(2));
}

#[test]
fn exhausted_caps_exit_three() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "c5", &write_multigraph(&Multigraph::cycle(5)));
    let o = dpcolor(&["--max-list-sum", "4", "chi-dp", s(&g)]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_dpcolor"))
        .args(["chi-dp", s(&g)])
        .env("DPCOLOR_MAX_LIST_SUM", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bowtie_witness_round_trips() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "bowtie", &write_multigraph(&bowtie()));
    let w = dir.path().join("witness");
    let o = dpcolor(&["degree-colorable", s(&g), "--witness", s(&w), "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("NOT-DEGREE-COLORABLE\n"), "{text}");
    assert_eq!(text.matches("block K_3^1").count(), 2);
    assert!(text.contains("oracle agrees"));

    let cover = parse_cover(&fs::read_to_string(&w).unwrap(), Some(&bowtie())).unwrap();
    assert!(cover.is_degree_cover());
    assert_eq!(dpcolor(&["validate", "--graph", s(&g), s(&w)]).status.code(), Some(0));
    let o = dpcolor(&["--format", "lines", "solve", s(&g), s(&w)]);
    assert_eq!(stdout(&o), "uncolorable\n");
}

#[test]
fn degree_colorable_graph_has_no_witness() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "k4e", &write_multigraph(&Multigraph::complete(4).without_edge(1, 2).unwrap()));
    let w = dir.path().join("witness");
    let o = dpcolor(&["--format", "lines", "degree-colorable", s(&g), "--witness", s(&w)]);
    assert!(stdout(&o).starts_with("degree-colorable\nblock other"));
    assert!(!w.exists());
}

#[test]
fn reduce_then_solve() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "c4", &write_multigraph(&Multigraph::cycle(4)));
    let lists = put(&dir, "lists", &write_lists(&[vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2]]));
    let out = dir.path().join("cover");
    assert_eq!(dpcolor(&["reduce", s(&g), s(&lists), "-o", s(&out)]).status.code(), Some(0));
    let o = dpcolor(&["solve", s(&g), s(&out)]);
    assert!(stdout(&o).starts_with("COLORABLE\n"), "{}", stdout(&o));

    // every list {1} on an edge cannot be colored
    let g = put(&dir, "k2", &write_multigraph(&Multigraph::path(2)));
    let lists = put(&dir, "ones", "2\n1\n1\n");
    let o = dpcolor(&["reduce", s(&g), s(&lists)]);
    let cover = put(&dir, "c", &stdout(&o));
    assert_eq!(stdout(&dpcolor(&["solve", s(&g), s(&cover)])), "UNCOLORABLE\n");
}

#[test]
fn check_critical_reports_bounds() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "k4", &write_multigraph(&Multigraph::complete(4)));
    let o = dpcolor(&["check-critical", s(&g), "--k", "4"]);
    assert_eq!(stdout(&o), "CRITICAL chi_dp=4\nmultigraph bound slack 0/1\n");
    let g = put(&dir, "c4", &write_multigraph(&Multigraph::cycle(4)));
    let o = dpcolor(&["--format", "lines", "check-critical", s(&g), "--k", "4"]);
    assert_eq!(stdout(&o), "not-critical 3 - -4/1 -56/13\n");
}

#[test]
fn census_lines() {
    let o = dpcolor(&["--format", "lines", "census", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(
        lines,
        [
            "1: 1 0 1 0/1 critical,not-degree-colorable",
            "2:1 2 2 2 0/1 critical,not-degree-colorable",
            "3:011 3 4 2 1/1 not-critical,not-degree-colorable",
            "3:111 3 6 3 0/1 critical,not-degree-colorable",
        ]
    );
    let o = dpcolor(&["census", "--max-n", "5", "--gdp-bound", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("# graph-id n 2E k slack verdict\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(" holds")));
}

#[test]
fn construct_cycle_matches_library() {
    let o = dpcolor(&["construct", "cycle", "5", "2"]);
    assert_eq!(stdout(&o), write_cover(&build_bad_cycle(5, 2).unwrap()));
    assert_eq!(dpcolor(&["construct", "cycle", "2", "1"]).status.code(), Some(2));
}
