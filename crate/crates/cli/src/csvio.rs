//! CSV emission helpers: every file starts with a comment line recording the
//! fully resolved configuration, floats print with six significant digits,
//! and identical configurations produce byte-identical output (timings are
//! opt-in columns for that reason).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Six significant digits.
pub fn fmt6(x: f64) -> String {
    format!("{x:.5e}")
}

pub struct CsvWriter {
    out: Box<dyn Write>,
}

impl CsvWriter {
    pub fn create(path: Option<&Path>) -> std::io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => {
                if let Some(dir) = p.parent() {
                    if !dir.as_os_str().is_empty() {
                        std::fs::create_dir_all(dir)?;
                    }
                }
                Box::new(BufWriter::new(File::create(p)?))
            }
            None => Box::new(std::io::stdout()),
        };
        Ok(Self { out })
    }

    pub fn comment(&mut self, text: &str) -> std::io::Result<()> {
        writeln!(self.out, "# {text}")
    }

    pub fn row(&mut self, fields: &[String]) -> std::io::Result<()> {
        writeln!(self.out, "{}", fields.join(","))
    }

    pub fn header(&mut self, fields: &[&str]) -> std::io::Result<()> {
        writeln!(self.out, "{}", fields.join(","))
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}

/// Write `x y value` triples.
pub fn write_point_data(
    path: &Path,
    comment: &str,
    rows: impl Iterator<Item = (f64, f64, Vec<f64>)>,
) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {comment}")?;
    for (x, y, vals) in rows {
        write!(out, "{} {}", fmt6(x), fmt6(y))?;
        for v in vals {
            write!(out, " {}", fmt6(v))?;
        }
        writeln!(out)?;
    }
    out.flush()
}
