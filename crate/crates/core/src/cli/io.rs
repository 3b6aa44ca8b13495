//! CSV input and output.

use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use num_complex::Complex64;
use std::io::Write;
use std::path::Path;

/// Reads `x,re[,im]` rows on a uniform symmetric grid.
pub fn read_function(path: &Path) -> Result<SampledFunction> {
    let rows = read_complex_rows(path)?;
    if rows.len() < 3 {
        return Err(Error::Config(format!("{}: need at least 3 rows", path.display())));
    }
    let step = rows[1].0 - rows[0].0;
    let n = rows.len() - 1;
    let radius = -rows[0].0;
    for (i, (x, _)) in rows.iter().enumerate() {
        let want = -radius + i as f64 * step;
        if (x - want).abs() > 1e-9 * radius.max(1.0) {
            return Err(Error::Config(format!("{}: row {} at x = {x}, expected {want}", path.display(), i + 2)));
        }
    }
    if n % 2 != 0 || (rows[n].0 - radius).abs() > 1e-9 * radius.max(1.0) {
        return Err(Error::Config(format!("{}: grid is not symmetric about 0", path.display())));
    }
    SampledFunction::new(step, rows.into_iter().map(|r| r.1).collect())
}

/// Reads `(first column, re + i·im)`; a missing `im` column means 0.
pub fn read_complex_rows(path: &Path) -> Result<Vec<(f64, Complex64)>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let width = rdr.headers()?.len();
    if !(2..=3).contains(&width) {
        return Err(Error::Config(format!("{}: expected 2 or 3 columns, found {width}", path.display())));
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |j: usize| -> Result<f64> {
            rec.get(j)
                .unwrap_or("0")
                .trim()
                .parse()
                .map_err(|e| Error::Config(format!("{}: line {}, column {}: {e}", path.display(), i + 2, j + 1)))
        };
        out.push((field(0)?, Complex64::new(field(1)?, if width == 3 { field(2)? } else { 0.0 })));
    }
    Ok(out)
}

/// Writes a header and rows of numbers.
pub fn write_table<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| format_number(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-tripping form; exponent notation for very small or large magnitudes.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

pub fn function_rows(f: &SampledFunction) -> Vec<Vec<f64>> {
    f.xs().zip(f.values()).map(|(x, v)| vec![x, v.re, v.im]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_round_trips_through_csv() {
        let f = SampledFunction::from_fn(1.0, 0.25, |x| Complex64::new(x * x, -x)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        write_table(std::fs::File::create(&path).unwrap(), &["x", "re", "im"], function_rows(&f)).unwrap();
        let g = read_function(&path).unwrap();
        assert_eq!(g.values(), f.values());
        assert_eq!(g.step(), f.step());
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -0.5, 1.0 / 3.0, 3.661994478102499e-12, -2.5e17, 1e-4] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_number(-3.5e-12), "-3.5e-12");
        assert_eq!(format_number(0.25), "0.25");
    }

    #[test]
    fn rejects_ragged_grids() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        std::fs::write(&path, "x,re\n-1,0\n0,1\n0.5,0\n").unwrap();
        assert!(read_function(&path).is_err());
        std::fs::write(&path, "x,re\n-1,0\n0,zz\n1,0\n").unwrap();
        let msg = read_function(&path).unwrap_err().to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }
}
