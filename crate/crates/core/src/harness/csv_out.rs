use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::experiments::ResultRow;

pub const CSV_HEADER: [&str; 8] = ["experiment", "n", "nodes", "rho", "method", "error", "rate", "time_s"];

fn real(v: f64) -> String {
    format!("{v:.12e}")
}

/// Writes rows with the fixed header; floats carry 13 significant digits,
/// absent values are empty fields, lines end in LF.
pub fn write_rows<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.n.to_string(),
            r.nodes.to_string(),
            r.rho.map(real).unwrap_or_default(),
            r.method.clone(),
            real(r.error),
            r.rate.map(real).unwrap_or_default(),
            real(r.time_s),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(rows: &[ResultRow], path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    write_rows(rows, io::BufWriter::new(file))
}

/// Reads a file produced by [`write_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let bad = |what: &str, v: &str| Error::Config(format!("bad {what} field `{v}`"));
    let opt = |v: &str| -> Result<Option<f64>> {
        if v.is_empty() {
            Ok(None)
        } else {
            v.parse().map(Some).map_err(|_| bad("real", v))
        }
    };
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        rows.push(ResultRow {
            experiment: f(0).to_string(),
            n: f(1).parse().map_err(|_| bad("n", f(1)))?,
            nodes: f(2).parse().map_err(|_| bad("nodes", f(2)))?,
            rho: opt(f(3))?,
            method: f(4).to_string(),
            error: f(5).parse().map_err(|_| bad("error", f(5)))?,
            rate: opt(f(6))?,
            time_s: f(7).parse().map_err(|_| bad("time_s", f(7)))?,
        });
    }
    Ok(rows)
}
