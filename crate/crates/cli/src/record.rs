//! Benchmark rows and their CSV form.

use std::io::Write;

use serde::Serialize;

/// Column order of every CSV the harness writes.
pub const HEADER: [&str; 13] = [
    "kind",
    "n",
    "m",
    "k",
    "algo",
    "backend",
    "q",
    "reps",
    "seed",
    "queries",
    "field_ops",
    "wall_time_ms",
    "verified",
];

/// One measured run, or the median of several.
///
/// `algo` is `fifo` or `hklr` for extraction, `decide` for a decision
/// call and `mul` for a raw multiplication loop. `verified` means the
/// checker accepted the extracted path (extraction), the oracle answered
/// YES (decision; a YES is never wrong), or the backend agreed with the
/// reference multiplication on every timed input (`mul`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    /// `run` or `median`.
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub algo: String,
    pub backend: String,
    pub q: u32,
    pub reps: u32,
    pub seed: u64,
    pub queries: u64,
    pub field_ops: u64,
    pub wall_time_ms: f64,
    pub verified: bool,
}

fn median_by<T: Copy, F: Fn(&T, &T) -> std::cmp::Ordering>(mut xs: Vec<T>, cmp: F) -> T {
    xs.sort_by(cmp);
    xs[(xs.len() - 1) / 2]
}

/// Median of `queries`, `field_ops` and `wall_time_ms` (each taken on its
/// own), with the first run's identifying columns. `verified` only if every
/// run was.
///
/// # Panics
/// On an empty slice.
pub fn median(runs: &[BenchRecord]) -> BenchRecord {
    assert!(!runs.is_empty(), "median of no runs");
    let first = &runs[0];
    BenchRecord {
        kind: "median".into(),
        queries: median_by(runs.iter().map(|r| r.queries).collect(), Ord::cmp),
        field_ops: median_by(runs.iter().map(|r| r.field_ops).collect(), Ord::cmp),
        wall_time_ms: median_by(
            runs.iter().map(|r| r.wall_time_ms).collect(),
            f64::total_cmp,
        ),
        verified: runs.iter().all(|r| r.verified),
        ..first.clone()
    }
}

/// A `# master_seed=...` comment line, the header, then the rows.
pub fn write_csv<W: Write>(out: W, master_seed: u64, rows: &[BenchRecord]) -> csv::Result<()> {
    let mut out = out;
    writeln!(out, "# master_seed={master_seed}")?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(queries: u64, ms: f64, verified: bool) -> BenchRecord {
        BenchRecord {
            kind: "run".into(),
            n: 10,
            m: 9,
            k: 5,
            algo: "fifo".into(),
            backend: "lookup".into(),
            q: 7,
            reps: 1,
            seed: 1,
            queries,
            field_ops: queries * 10,
            wall_time_ms: ms,
            verified,
        }
    }

    #[test]
    fn median_of_five() {
        let runs = [
            row(5, 1.0, true),
            row(1, 9.0, true),
            row(4, 2.0, true),
            row(2, 8.0, true),
            row(3, 3.0, true),
        ];
        let m = median(&runs);
        assert_eq!(m.kind, "median");
        assert_eq!(m.queries, 3);
        assert_eq!(m.field_ops, 30);
        assert_eq!(m.wall_time_ms, 3.0);
        assert!(m.verified);
        assert!(!median(&[row(1, 1.0, true), row(2, 1.0, false)]).verified);
    }

    #[test]
    fn csv_layout() {
        let mut out = Vec::new();
        write_csv(&mut out, 42, &[row(7, 1.5, true)]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# master_seed=42");
        assert_eq!(lines[1], HEADER.join(","));
        assert_eq!(lines[2], "run,10,9,5,fifo,lookup,7,1,1,7,70,1.5,true");
        assert!(!text.contains('\r'));

        let mut empty = Vec::new();
        write_csv(&mut empty, 0, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().lines().count(), 2);
    }
}
