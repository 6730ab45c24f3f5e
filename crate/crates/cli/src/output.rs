//! Rendering of matrices and sweeps.

use std::io::Write;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::value::RawValue;
use slfock::qarith::format_rational;
use slfock::statistics::PartitionFunction;
use slfock::{GradedMatrix, LaurentPoly, Scalar, Signature};

/// Fixed 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("valid JSON number")
}

pub trait Render: Scalar {
    fn json(&self) -> Box<RawValue>;
    /// Whitespace separated fields for the coordinate format.
    fn text(&self) -> String;
}

impl Render for LaurentPoly {
    fn json(&self) -> Box<RawValue> {
        serde_json::value::to_raw_value(self).expect("serializable")
    }
    fn text(&self) -> String {
        self.terms().rev().map(|(e, c)| format!("{e}:{}", format_rational(c))).collect::<Vec<_>>().join(",")
    }
}

impl Render for BigRational {
    fn json(&self) -> Box<RawValue> {
        serde_json::value::to_raw_value(&format_rational(self)).expect("serializable")
    }
    fn text(&self) -> String {
        format_rational(self)
    }
}

impl Render for Complex64 {
    fn json(&self) -> Box<RawValue> {
        raw(format!("[{},{}]", float(self.re), float(self.im)))
    }
    fn text(&self) -> String {
        format!("{} {}", float(self.re), float(self.im))
    }
}

#[derive(Serialize)]
struct MatrixDoc<'a> {
    operator: &'a str,
    signature: &'a Signature,
    dim: usize,
    degree: u8,
    entries: Vec<(usize, usize, Box<RawValue>)>,
}

pub fn matrix_json<S: Render>(name: &str, sig: &Signature, m: &GradedMatrix<S>) -> String {
    let doc = MatrixDoc {
        operator: name,
        signature: sig,
        dim: m.dim(),
        degree: m.degree().as_u8(),
        entries: m.entries().map(|(r, c, v)| (r, c, v.json())).collect(),
    };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}

/// `dim nnz` followed by one `row col value` line per entry, 0-based.
pub fn matrix_coord<S: Render>(m: &GradedMatrix<S>) -> String {
    let mut out = format!("{} {}\n", m.dim(), m.nnz());
    for (r, c, v) in m.entries() {
        out.push_str(&format!("{r} {c} {}\n", v.text()));
    }
    out
}

pub fn matrix_csv<S: Render>(m: &GradedMatrix<S>) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["row", "col", "value"])?;
    for (r, c, v) in m.entries() {
        w.write_record([r.to_string(), c.to_string(), v.text()])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
}

pub fn sweep_csv(rows: &[PartitionFunction], n: usize) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["beta".to_string(), "Z".to_string()];
    header.extend((1..=n).map(|i| format!("mean_occ_{i}")));
    w.write_record(&header)?;
    for row in rows {
        let mut rec = vec![float(row.beta), float(row.z)];
        rec.extend(row.mean_occupations.iter().map(|&x| float(x)));
        w.write_record(&rec)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
}

#[derive(Serialize)]
struct SweepRow {
    beta: Box<RawValue>,
    #[serde(rename = "Z")]
    z: Box<RawValue>,
    mean_occupations: Vec<Box<RawValue>>,
}

pub fn sweep_json(rows: &[PartitionFunction]) -> String {
    let doc: Vec<SweepRow> = rows
        .iter()
        .map(|row| SweepRow {
            beta: raw(float(row.beta)),
            z: raw(float(row.z)),
            mean_occupations: row.mean_occupations.iter().map(|&x| raw(float(x))).collect(),
        })
        .collect();
    serde_json::to_string(&doc).expect("serializable") + "\n"
}

pub fn emit(text: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
