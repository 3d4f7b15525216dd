use std::path::Path;
use std::process::{Command, Output};

fn wex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wex"))
        .args(args)
        .output()
        .expect("run wex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn spider(dir: &Path, family: &str, n: usize, k: usize, seed: u64) -> String {
    let path = dir.join(format!("{family}-{n}-{k}-{seed}.txt"));
    let path = path.to_str().unwrap().to_owned();
    let o = wex(&[
        "gen",
        "--family",
        family,
        "--n",
        &n.to_string(),
        "--k",
        &k.to_string(),
        "--seed",
        &seed.to_string(),
        "-o",
        &path,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

#[test]
fn gen_spider_unique_is_a_tree() {
    let dir = tempfile::tempdir().unwrap();
    let path = spider(dir.path(), "spider-unique", 50, 6, 3);
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("50 49"));
    assert_eq!(lines.count(), 49);
}

#[test]
fn gen_reports_witness_counts() {
    let o = wex(&["gen", "--family", "spider-unique", "--n", "40", "--k", "5"]);
    assert!(stderr(&o).contains("witnesses: unique"), "{}", stderr(&o));
    let o = wex(&[
        "gen",
        "--family",
        "spider-many",
        "--n",
        "60",
        "--k",
        "5",
        "--seed",
        "1",
    ]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("witnesses: 406"), "{}", stderr(&o));
}

#[test]
fn gen_rejects_too_many_edges() {
    let o = wex(&["gen", "--family", "random", "--n", "10", "--m", "46"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at most 45 edges"));
}

#[test]
fn decide_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = spider(dir.path(), "spider-unique", 50, 6, 3);
    let yes = wex(&[
        "decide",
        "-i",
        &g,
        "--k",
        "6",
        "--backend",
        "lookup",
        "--q",
        "7",
    ]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("answer YES"));
    let no = wex(&[
        "decide",
        "-i",
        &g,
        "--k",
        "7",
        "--backend",
        "clmul",
        "--reps",
        "3",
    ]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("answer NO"));
}

#[test]
fn decide_rejects_oversized_lookup_table() {
    let dir = tempfile::tempdir().unwrap();
    let g = spider(dir.path(), "spider-unique", 20, 5, 0);
    let o = wex(&[
        "decide",
        "-i",
        &g,
        "--k",
        "5",
        "--backend",
        "lookup",
        "--q",
        "26",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("q <= 12"));
}

#[test]
fn missing_file_is_an_error() {
    let o = wex(&["decide", "-i", "/nonexistent/graph.txt", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extract_finds_the_planted_path_with_both_algorithms() {
    let dir = tempfile::tempdir().unwrap();
    let g = spider(dir.path(), "spider-unique", 50, 6, 3);
    let fifo = wex(&["extract", "-i", &g, "--k", "6"]);
    assert!(fifo.status.success(), "{}", stderr(&fifo));
    let fifo_out = stdout(&fifo);
    assert!(fifo_out.contains("verified true"));
    let hklr = wex(&[
        "extract", "-i", &g, "--k", "6", "--algo", "hklr", "--phases", "one",
    ]);
    assert!(hklr.status.success(), "{}", stderr(&hklr));
    let first = |s: &str| s.lines().next().unwrap().to_owned();
    let sorted = |line: String| {
        let mut v: Vec<u32> = line
            .split_whitespace()
            .skip(1)
            .map(|t| t.parse().unwrap())
            .collect();
        v.sort_unstable();
        v
    };
    assert_eq!(sorted(first(&fifo_out)), sorted(first(&stdout(&hklr))));
}

#[test]
fn extract_without_witness_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = spider(dir.path(), "spider-unique", 50, 6, 3);
    let o = wex(&["extract", "-i", &g, "--k", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "no witness");
}

#[test]
fn extract_writes_csv_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let g = spider(dir.path(), "spider-unique", 40, 5, 2);
    let csv = dir.path().join("runs.csv");
    let trace = dir.path().join("trace.csv");
    for _ in 0..2 {
        let o = wex(&[
            "extract",
            "-i",
            &g,
            "--k",
            "5",
            "--csv",
            csv.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let rows = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = rows.lines().collect();
    assert!(lines[0].starts_with("# master_seed="));
    assert!(lines[1].starts_with("kind,n,m,k,algo"));
    assert_eq!(lines.len(), 4);
    assert!(lines[2..]
        .iter()
        .all(|l| l.starts_with("run,40,39,5,fifo,") && l.ends_with(",true")));

    let trace = std::fs::read_to_string(&trace).unwrap();
    assert!(trace.lines().skip(1).any(|l| l.starts_with("vertex,")));
}

#[test]
fn bench_empty_sweep_writes_header_only() {
    let o = wex(&["bench", "--k", ""]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let args = [
        "bench",
        "--n",
        "60,80",
        "--k",
        "5..=6",
        "--backend",
        "lookup",
        "--q",
        "8",
        "--seed",
        "11",
    ];
    let strip = |o: Output| -> Vec<String> {
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
            .lines()
            .skip(2)
            .map(|l| {
                let mut cols: Vec<&str> = l.split(',').collect();
                cols.remove(11);
                cols.join(",")
            })
            .collect()
    };
    let a = strip(wex(&args));
    assert_eq!(a.len(), 2 * 2 * 6);
    assert_eq!(a, strip(wex(&args)));
}

#[test]
fn selftest_quick_passes() {
    let o = wex(&["selftest", "--quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("[FAIL]"));
}

#[test]
fn selftest_detects_corrupt_table() {
    let o = wex(&["selftest", "--quick", "--corrupt-table"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("[FAIL] backend-equivalence"),
        "{}",
        stdout(&o)
    );
}
