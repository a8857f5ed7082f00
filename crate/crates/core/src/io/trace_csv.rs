use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::{SweepResult, TraceRecord};

/// CSV with header `step,correctness,cover_rate[,community_1,...]`. Floats
/// use the shortest representation that parses back exactly. The objective
/// column is not part of the schema.
pub fn trace_csv(trace: &[TraceRecord]) -> Result<String> {
    let first = trace.first().ok_or_else(|| Error::EmptyInput("trace has no records".into()))?;
    let k = first.per_community.as_ref().map_or(0, Vec::len);
    let mut s = String::from("step,correctness,cover_rate");
    for c in 1..=k {
        let _ = write!(s, ",community_{c}");
    }
    s.push('\n');
    for r in trace {
        let per = r.per_community.as_deref().unwrap_or(&[]);
        if per.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: per.len() });
        }
        let _ = write!(s, "{},{},{}", r.step, r.correctness, r.cover_rate);
        for c in per {
            let _ = write!(s, ",{c}");
        }
        s.push('\n');
    }
    Ok(s)
}

/// Writes [`trace_csv`] to `path`; nothing is written for an empty trace.
pub fn write_trace_csv(trace: &[TraceRecord], path: &Path) -> Result<()> {
    let text = trace_csv(trace)?;
    std::fs::write(path, text)?;
    Ok(())
}

/// Parses [`trace_csv`] output. Parsed records have objective 0.
pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::EmptyInput("empty CSV".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 3 || columns[..3] != ["step", "correctness", "cover_rate"] {
        return Err(Error::Parse { line: 1, msg: format!("unexpected header {header:?}") });
    }
    let k = columns.len() - 3;
    let mut out = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != columns.len() {
            return Err(Error::Parse { line, msg: format!("expected {} fields, got {}", columns.len(), fields.len()) });
        }
        let float = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("invalid number {s:?}") });
        let step = fields[0].parse::<u64>().map_err(|_| Error::Parse { line, msg: format!("invalid step {:?}", fields[0]) })?;
        let per = fields[3..].iter().map(|s| float(s)).collect::<Result<Vec<_>>>()?;
        out.push(TraceRecord {
            step,
            correctness: float(fields[1])?,
            cover_rate: float(fields[2])?,
            per_community: (k > 0).then_some(per),
            objective: 0,
        });
    }
    if out.is_empty() {
        return Err(Error::EmptyInput("CSV has no data rows".into()));
    }
    Ok(out)
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

/// One row per (size, replicate, β, series) with the estimated `t̂`, where
/// the series is `global` or `community_k`; `NA` marks no anonymization.
pub fn summary_csv(result: &SweepResult) -> String {
    let mut s = String::from("n,replicate,cadence,steps_run,cover_time,beta,series,t_hat\n");
    for size in &result.sizes {
        for rep in &size.replicates {
            for (b, &beta) in result.config.betas.iter().enumerate() {
                let mut row = |series: String, t: Option<u64>| {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{beta},{series},{}",
                        size.n,
                        rep.replicate,
                        size.cadence,
                        rep.steps_run,
                        opt(rep.cover_time),
                        opt(t)
                    );
                };
                row("global".into(), rep.global_t_hat(b));
                for k in 0..rep.per_community.len() {
                    row(format!("community_{}", k + 1), rep.community_t_hat(k, b));
                }
            }
        }
    }
    s
}
