//! Iterate traces as CSV: header `k,x1,...,xd,value,best_value`, `\n` line
//! endings, floats in shortest round-trip form.

use std::io::{Read, Write};

use fermat_core::solver::TraceRow;

use crate::error::CliError;

fn csv_error(path: &str, e: csv::Error) -> CliError {
    CliError::invalid(path, e.to_string())
}

fn float(x: f64, buf: &mut ryu::Buffer) -> String {
    buf.format(x).to_owned()
}

pub fn header(dim: usize) -> Vec<String> {
    let mut h = vec!["k".to_owned()];
    h.extend((1..=dim).map(|i| format!("x{i}")));
    h.push("value".to_owned());
    h.push("best_value".to_owned());
    h
}

pub fn write_trace<W: Write>(out: W, dim: usize, rows: &[TraceRow]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header(dim))
        .map_err(|e| csv_error("trace", e))?;
    let mut buf = ryu::Buffer::new();
    for row in rows {
        let mut rec = Vec::with_capacity(dim + 3);
        rec.push(row.k.to_string());
        rec.extend(row.point.iter().map(|x| float(*x, &mut buf)));
        rec.push(float(row.value, &mut buf));
        rec.push(float(row.best_value, &mut buf));
        w.write_record(&rec).map_err(|e| csv_error("trace", e))?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: "trace".to_owned(),
        source,
    })
}

/// A parsed trace row: `(k, point, value, best_value)`.
pub type ParsedRow = (usize, Vec<f64>, f64, f64);

pub fn read_trace<R: Read>(input: R) -> Result<(Vec<String>, Vec<ParsedRow>), CliError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header: Vec<String> = r
        .headers()
        .map_err(|e| csv_error("trace", e))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.len() < 4 {
        return Err(CliError::invalid("trace", "header too short"));
    }
    let dim = header.len() - 3;
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_error("trace", e))?;
        let bad = |_| CliError::invalid(format!("trace row {}", i + 1), "not a number");
        let k: usize = rec[0].parse().map_err(|_| bad(()))?;
        let nums = (1..rec.len())
            .map(|j| rec[j].parse::<f64>().map_err(|_| bad(())))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((k, nums[..dim].to_vec(), nums[dim], nums[dim + 1]));
    }
    Ok((header, rows))
}
