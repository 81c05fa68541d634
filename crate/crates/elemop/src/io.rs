//! Wire formats: matrix and family JSON, atom lists, CSV tables, and a JSON
//! writer that prints every float with 17 significant digits so decimal
//! round-trips are bit-exact.

use std::io::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Tolerance};
use crate::op::{CoefficientFamily, ElementaryOperator};
use crate::schur::Atom;

/// Matrix JSON object: `{"rows": m, "cols": n, "re": [[..]], "im": [[..]]}`,
/// row-major rows of reals; `im` optional and defaults to zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireMatrix {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl WireMatrix {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let grid = |pick: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| pick(&m[(i, j)])).collect())
                .collect()
        };
        let im_grid = grid(|z| z.im);
        let all_real = im_grid.iter().flatten().all(|&x| x == 0.0);
        WireMatrix {
            rows: m.rows(),
            cols: m.cols(),
            re: grid(|z| z.re),
            im: if all_real { None } else { Some(im_grid) },
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let take = |grid: &Vec<Vec<f64>>, what: &str| -> Result<Vec<f64>> {
            if grid.len() != self.rows {
                return Err(Error::Parse(format!(
                    "matrix {what} part has {} rows, header says {}",
                    grid.len(),
                    self.rows
                )));
            }
            let mut flat = Vec::with_capacity(self.rows * self.cols);
            for (i, row) in grid.iter().enumerate() {
                if row.len() != self.cols {
                    return Err(Error::Parse(format!(
                        "matrix {what} row {i} has {} entries, header says {}",
                        row.len(),
                        self.cols
                    )));
                }
                flat.extend_from_slice(row);
            }
            Ok(flat)
        };
        let re = take(&self.re, "re")?;
        let im = match &self.im {
            Some(grid) => take(grid, "im")?,
            None => vec![0.0; self.rows * self.cols],
        };
        CMatrix::new(
            self.rows,
            self.cols,
            re.into_iter().zip(im).map(|(r, i)| Complex64::new(r, i)).collect(),
        )
    }
}

/// Family JSON: `{"terms": [{"A": <matrix>, "B": <matrix>}, ...]}`;
/// `B` may be omitted and defaults to `A`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireFamily {
    pub terms: Vec<WireTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireTerm {
    #[serde(rename = "A")]
    pub a: WireMatrix,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<WireMatrix>,
}

impl WireFamily {
    pub fn from_family(f: &CoefficientFamily) -> Self {
        WireFamily {
            terms: f
                .terms()
                .iter()
                .map(|(a, b)| WireTerm {
                    a: WireMatrix::from_matrix(a),
                    b: Some(WireMatrix::from_matrix(b)),
                })
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<CoefficientFamily> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let a = t.a.to_matrix()?;
            let b = match &t.b {
                Some(w) => w.to_matrix()?,
                None => a.clone(),
            };
            terms.push((a, b));
        }
        CoefficientFamily::new(terms)
    }
}

/// Parse a family JSON document into an operator.
pub fn family_from_json(text: &str) -> Result<ElementaryOperator> {
    let wire: WireFamily = serde_json::from_str(text)?;
    Ok(ElementaryOperator::new(wire.to_family()?))
}

/// Atom list JSON: `[{"c_re": .., "c_im": .., "x": ..}, ...]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireAtom {
    pub c_re: f64,
    #[serde(default)]
    pub c_im: f64,
    pub x: f64,
}

pub fn atoms_from_json(text: &str) -> Result<Vec<Atom>> {
    let wires: Vec<WireAtom> = serde_json::from_str(text)?;
    if wires.is_empty() {
        return Err(Error::Parse("atom list is empty".into()));
    }
    Ok(wires
        .into_iter()
        .map(|w| Atom { c: Complex64::new(w.c_re, w.c_im), x: w.x })
        .collect())
}

/// Run provenance embedded in every output.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub seed: u64,
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl Meta {
    pub fn new(seed: u64, tol: Tolerance) -> Self {
        Meta { version: env!("CARGO_PKG_VERSION"), seed, tol_abs: tol.abs, tol_rel: tol.rel }
    }

    pub fn csv_comment(&self) -> String {
        format!(
            "# elemop {} seed={} tol_abs={} tol_rel={}\n",
            self.version,
            self.seed,
            fmt_f64(self.tol_abs),
            fmt_f64(self.tol_rel)
        )
    }
}

/// A float printed with 17 significant digits (scientific), enough for a
/// bit-exact decimal round-trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Complex number as a `[re, im]` JSON pair.
pub fn complex_value(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

/// Finite float as a JSON number.
pub fn num(x: f64) -> Value {
    debug_assert!(x.is_finite(), "non-finite value in JSON output");
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize to JSON with 17-significant-digit floats and a trailing
/// newline. Key order is the serializer's (sorted for `Value` maps), so
/// identical inputs give byte-identical output.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

/// Write text to the path, or to stdout when no path is given.
pub fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)?;
            f.write_all(text.as_bytes())?;
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
