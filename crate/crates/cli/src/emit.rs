//! Deterministic CSV emission: fixed header, fixed-point values, one row
//! per grid point. Identical configs produce byte-identical output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub fn writer(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn write_csv<W: Write>(
    out: &mut W,
    header: &str,
    rows: impl Iterator<Item = Vec<f64>>,
    precision: usize,
) -> io::Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                write!(out, ",")?;
            }
            write!(out, "{v:.precision$}")?;
            first = false;
        }
        writeln!(out)?;
    }
    out.flush()
}
