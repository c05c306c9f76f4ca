//! Kernel JSON: `{"measures": ["1/4", ...], "matrix": [["3/10", "0", ...], ...]}`.
//!
//! Values are `"a/b"` or decimal strings, parsed exactly; plain JSON integers are also
//! accepted. Asymmetric matrices are rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::StepKernel;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::Kernel;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelJson {
    pub measures: Vec<Value>,
    pub matrix: Vec<Vec<Value>>,
}

fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!(
            "expected a rational string, found {other}"
        ))),
    }
}

impl KernelJson {
    pub fn from_kernel(kernel: &Kernel) -> Self {
        let s = |r: &Rational| Value::String(format_rational(r));
        Self {
            measures: kernel.measures().iter().map(s).collect(),
            matrix: kernel.matrix().rows().map(|row| row.iter().map(s).collect()).collect(),
        }
    }

    pub fn to_kernel(&self) -> Result<Kernel> {
        let measures = self
            .measures
            .iter()
            .map(value_to_rational)
            .collect::<Result<Vec<_>>>()?;
        let rows = self
            .matrix
            .iter()
            .map(|row| row.iter().map(value_to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))?;
        StepKernel::new(measures, matrix).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn kernel_from_json(text: &str) -> Result<Kernel> {
    let raw: KernelJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_kernel()
}

pub fn kernel_to_json(kernel: &Kernel) -> String {
    serde_json::to_string_pretty(&KernelJson::from_kernel(kernel)).expect("kernel serializes")
}
