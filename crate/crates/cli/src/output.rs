use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::ScenarioConfig;
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy)]
pub enum Field<'a> {
    Float(f64),
    Int(u64),
    Text(&'a str),
    Empty,
}

/// Comma-separated table with a `#` metadata block, one header row and
/// floats in scientific notation at a fixed precision.
pub struct CsvTable {
    buf: String,
    precision: usize,
    width: usize,
}

impl CsvTable {
    pub fn new(config: &ScenarioConfig, columns: &[&str]) -> Self {
        let mut buf = format!("# hom-sim {VERSION}\n");
        for line in config.to_config_string().lines() {
            buf.push_str("# ");
            buf.push_str(line);
            buf.push('\n');
        }
        buf.push_str(&columns.join(","));
        buf.push('\n');
        Self {
            buf,
            precision: config.float_precision,
            width: columns.len(),
        }
    }

    pub fn row(&mut self, fields: &[Field<'_>]) {
        debug_assert_eq!(fields.len(), self.width);
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            match *f {
                Field::Float(v) => write!(self.buf, "{:.*e}", self.precision, v).unwrap(),
                Field::Int(v) => write!(self.buf, "{v}").unwrap(),
                Field::Text(s) => self.buf.push_str(s),
                Field::Empty => {}
            }
        }
        self.buf.push('\n');
    }

    pub fn floats(&mut self, values: &[f64]) {
        let fields: Vec<Field<'_>> = values.iter().map(|&v| Field::Float(v)).collect();
        self.row(&fields);
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn table_layout() {
        let mut c = parse_config("scenario = ideal\nprecision = 3").unwrap();
        c.output_path = "out".into();
        let mut t = CsvTable::new(&c, &["a", "b", "c", "d"]);
        t.row(&[Field::Float(1234.5), Field::Int(7), Field::Text("x"), Field::Empty]);
        t.floats(&[0.0, -1e-20, 0.5, 1.0]);
        let expected = "# hom-sim 0.1.0\n# scenario = ideal\n# output = out\n# precision = 3\na,b,c,d\n\
                        1.234e3,7,x,\n0.000e0,-1.000e-20,5.000e-1,1.000e0\n";
        assert_eq!(t.as_str(), expected);
    }
}
