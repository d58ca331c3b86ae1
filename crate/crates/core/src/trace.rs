//! Run traces: fixed-interval checkpoints plus the final population.
//!
//! The CSV layout is the batch tool's interchange format: header
//! `fe,igd,min_cv,feasible_count`, one row per checkpoint, `inf` marking the
//! no-feasible-member sentinel. Floats are printed with Rust's shortest
//! round-trip formatting, so reading a written trace reproduces it exactly.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::individual::Individual;
use crate::scalar::Real;

pub const TRACE_HEADER: &str = "fe,igd,min_cv,feasible_count";

/// Solution-quality snapshot after a fixed number of evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint<R> {
    pub fe: usize,
    /// Distance indicator of the feasible nondominated subset at this point;
    /// infinite when nothing was feasible yet.
    pub igd: R,
    /// Smallest aggregated violation in the set.
    pub min_cv: R,
    /// Number of members with zero violation.
    pub feasible_count: usize,
}

/// Everything one run produces.
#[derive(Debug, Clone)]
pub struct RunTrace<R> {
    pub checkpoints: Vec<Checkpoint<R>>,
    /// Final population; empty on traces read back from CSV, which only
    /// stores checkpoints.
    pub final_population: Vec<Individual<R>>,
}

impl<R: Real> RunTrace<R> {
    /// Writes the checkpoint table.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "{TRACE_HEADER}")?;
        for c in &self.checkpoints {
            writeln!(w, "{},{},{},{}", c.fe, c.igd, c.min_cv, c.feasible_count)?;
        }
        Ok(())
    }

    /// Writes the final population: decision variables, then objectives,
    /// then the aggregated violation, one member per row.
    pub fn write_final_population_csv(&self, mut w: impl Write) -> Result<()> {
        let dim = self.final_population.first().map_or(0, |i| i.x.len());
        let n_obj = self.final_population.first().map_or(0, |i| i.f.len());
        let mut header: Vec<String> = (1..=dim).map(|k| format!("x{k}")).collect();
        header.extend((1..=n_obj).map(|k| format!("f{k}")));
        header.push("cv".into());
        writeln!(w, "{}", header.join(","))?;
        for ind in &self.final_population {
            let mut row: Vec<String> = ind.x.iter().map(|v| format!("{v}")).collect();
            row.extend(ind.f.iter().map(|v| format!("{v}")));
            row.push(format!("{}", ind.cv));
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Reads a checkpoint table written by [`write_csv`](Self::write_csv).
    /// `source_name` labels parse errors.
    pub fn read_csv(r: impl BufRead, source_name: &str) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line?,
            None => return Err(Error::Format(format!("{source_name}: empty trace file"))),
        };
        if header.trim() != TRACE_HEADER {
            return Err(Error::Format(format!(
                "{source_name}: bad header '{}', expected '{TRACE_HEADER}'",
                header.trim()
            )));
        }
        let mut checkpoints: Vec<Checkpoint<R>> = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    format!("expected 4 fields, found {}", fields.len()),
                ));
            }
            let fe: usize = fields[0].trim().parse().map_err(|_| {
                Error::parse(source_name, line_no, format!("bad fe '{}'", fields[0]))
            })?;
            let igd: R = parse_scalar(fields[1], source_name, line_no, "igd")?;
            let min_cv: R = parse_scalar(fields[2], source_name, line_no, "min_cv")?;
            let feasible_count: usize = fields[3].trim().parse().map_err(|_| {
                Error::parse(
                    source_name,
                    line_no,
                    format!("bad feasible_count '{}'", fields[3]),
                )
            })?;
            if let Some(prev) = checkpoints.last() {
                if fe <= prev.fe {
                    return Err(Error::parse(
                        source_name,
                        line_no,
                        format!("fe {fe} does not increase over {}", prev.fe),
                    ));
                }
            }
            checkpoints.push(Checkpoint {
                fe,
                igd,
                min_cv,
                feasible_count,
            });
        }
        if checkpoints.is_empty() {
            return Err(Error::Format(format!(
                "{source_name}: trace contains no checkpoints"
            )));
        }
        Ok(RunTrace {
            checkpoints,
            final_population: Vec::new(),
        })
    }
}

fn parse_scalar<R: Real>(tok: &str, source: &str, line: usize, what: &str) -> Result<R> {
    let t = tok.trim();
    t.parse().map_err(|_| {
        Error::parse(source, line, format!("bad {what} '{t}'"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_trace() -> RunTrace<f64> {
        RunTrace {
            checkpoints: vec![
                Checkpoint {
                    fe: 200,
                    igd: f64::INFINITY,
                    min_cv: 0.125,
                    feasible_count: 0,
                },
                Checkpoint {
                    fe: 400,
                    igd: 0.031251,
                    min_cv: 0.0,
                    feasible_count: 17,
                },
            ],
            final_population: vec![Individual::evaluated(
                vec![0.5, 0.25],
                vec![0.5, 0.75],
                0.0,
            )],
        }
    }

    #[test]
    fn roundtrip_preserves_checkpoints_including_infinity() {
        let trace = sample_trace();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("fe,igd,min_cv,feasible_count\n"));
        assert!(text.contains("200,inf,0.125,0"));
        let back = RunTrace::<f64>::read_csv(&buf[..], "mem").unwrap();
        assert_eq!(back.checkpoints, trace.checkpoints);
        assert!(back.final_population.is_empty());
    }

    #[test]
    fn read_rejects_bad_inputs_with_line_numbers() {
        let bad_header = "fe,igd\n1,2\n";
        assert!(RunTrace::<f64>::read_csv(bad_header.as_bytes(), "t").is_err());

        let bad_row = "fe,igd,min_cv,feasible_count\n200,0.5,0.0,3\n400,oops,0.0,3\n";
        match RunTrace::<f64>::read_csv(bad_row.as_bytes(), "t").unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("oops"));
            }
            other => panic!("unexpected error {other}"),
        }

        let non_monotone = "fe,igd,min_cv,feasible_count\n400,0.5,0.0,3\n200,0.5,0.0,3\n";
        assert!(RunTrace::<f64>::read_csv(non_monotone.as_bytes(), "t").is_err());

        let empty = "fe,igd,min_cv,feasible_count\n";
        assert!(RunTrace::<f64>::read_csv(empty.as_bytes(), "t").is_err());
    }

    #[test]
    fn final_population_csv_shape() {
        let trace = sample_trace();
        let mut buf = Vec::new();
        trace.write_final_population_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x1,x2,f1,f2,cv");
        assert_eq!(lines.next().unwrap(), "0.5,0.25,0.5,0.75,0");
    }
}
