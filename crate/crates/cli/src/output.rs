use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::{CliError, CliResult};

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-5, 1e16)`. With `precision`, the value is first rounded to that many
/// significant digits.
pub fn real(v: f64, precision: Option<usize>) -> String {
    let v = round(v, precision);
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a == 0.0 {
        return "0".into();
    }
    if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn round(v: f64, precision: Option<usize>) -> f64 {
    match precision {
        Some(d) if v.is_finite() => format!("{:.*e}", d.max(1) - 1, v).parse().unwrap_or(v),
        _ => v,
    }
}

pub fn complex(z: Complex64, precision: Option<usize>) -> String {
    if z.im == 0.0 {
        return real(z.re, precision);
    }
    let im = real(z.im.abs(), precision);
    let sign = if z.im < 0.0 { '-' } else { '+' };
    if z.re == 0.0 {
        format!("{}{im}i", if z.im < 0.0 { "-" } else { "" })
    } else {
        format!("{}{sign}{im}i", real(z.re, precision))
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Missing,
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Real)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, precision: Option<usize>) -> CliResult<String> {
        match format {
            Format::Csv => self.csv(precision),
            Format::Json => Ok(self.json(precision)),
        }
    }

    fn csv(&self, precision: Option<usize>) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            let fields = row.iter().map(|c| match c {
                Cell::Int(v) => v.to_string(),
                Cell::Real(v) => real(*v, precision),
                Cell::Text(s) => s.clone(),
                Cell::Missing => String::new(),
            });
            w.write_record(fields).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    fn json(&self, precision: Option<usize>) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| {
                        let v = match c {
                            Cell::Int(v) => Value::from(*v),
                            Cell::Real(v) => json_real(*v, precision),
                            Cell::Text(s) => Value::from(s.as_str()),
                            Cell::Missing => Value::Null,
                        };
                        ((*h).to_owned(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s =
            serde_json::to_string_pretty(&Value::Array(rows)).expect("json values serialize");
        s.push('\n');
        s
    }
}

pub fn json_real(v: f64, precision: Option<usize>) -> Value {
    serde_json::Number::from_f64(round(v, precision) + 0.0).map_or(Value::Null, Value::Number)
}

/// Writes to `out`, or stdout when absent.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())
                .and_then(|()| so.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_forms() {
        assert_eq!(real(0.5, None), "0.5");
        assert_eq!(real(1.0, None), "1");
        assert_eq!(real(0.1 + 0.2, None), "0.30000000000000004");
        assert_eq!(real(1e-30, None), "1e-30");
        assert_eq!(real(-2.5e20, None), "-2.5e20");
        assert_eq!(real(std::f64::consts::PI, Some(5)), "3.1416");
        assert_eq!(real(0.30000000000000004, Some(3)), "0.3");
        for v in [0.1, 1.0 / 3.0, 1e-7, 123456.789, 6.02e23] {
            assert_eq!(real(v, None).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn complex_forms() {
        assert_eq!(complex(Complex64::new(1.0, -0.5), None), "1-0.5i");
        assert_eq!(complex(Complex64::new(0.0, 2.0), None), "2i");
        assert_eq!(complex(Complex64::new(-3.0, 0.0), None), "-3");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["n", "x", "value", "note"]);
        t.push(vec![2u32.into(), 0.5.into(), Cell::Missing, "a,b".into()]);
        assert_eq!(
            t.render(Format::Csv, None).unwrap(),
            "n,x,value,note\n2,0.5,,\"a,b\"\n"
        );
        let j = t.render(Format::Json, None).unwrap();
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v[0]["value"], Value::Null);
        assert_eq!(v[0]["x"], 0.5);
    }
}
