//! Exact cone membership for step kernels.
//!
//! With strictly positive block measures, a step kernel is copositive (resp. PSD)
//! exactly when its matrix is, and a witness `x` for the matrix becomes the block
//! function `f_i = x_i / μ_i` for the kernel.

mod copositive;
mod cutnorm;
mod psd;
mod spectrum;

use serde_json::{json, Value};

pub use copositive::{min_simplex_quadratic, SimplexMinimum, COPOSITIVE_CAP};
pub use cutnorm::{cut_norm, CUT_NORM_CAP};
pub use psd::psd_witness;
pub use spectrum::{jacobi_eigen, spectrum, SpectrumReport, MAX_SWEEPS, RELATIVE_TOLERANCE, SPECTRUM_CAP};

use crate::error::Result;
use crate::kernels::{BlockFunction, StepKernel};
use crate::scalar::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct ConeVerdict {
    pub holds: bool,
    pub witness: Option<BlockFunction<Rational>>,
    /// Quadratic form of the witness, or the simplex minimum for copositivity when it was
    /// computed.
    pub value: Option<Rational>,
}

impl ConeVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "witness": self
                .witness
                .as_ref()
                .map(|w| w.values().iter().map(format_rational).collect::<Vec<_>>()),
            "value": self.value.as_ref().map(format_rational),
        })
    }
}

fn to_kernel_function(kernel: &StepKernel<Rational>, x: Vec<Rational>) -> BlockFunction<Rational> {
    BlockFunction::new(
        x.into_iter()
            .zip(kernel.measures())
            .map(|(xi, mu)| xi / mu)
            .collect(),
    )
}

/// Copositivity of `kernel`; `value` is `min ∫∫ f W f` over nonnegative `f` with `∫ f = 1`.
///
/// A PSD kernel is accepted without enumerating supports, and then `value` is `None`.
/// Use [`min_simplex_quadratic`] when the minimum itself is needed.
pub fn is_copositive(kernel: &StepKernel<Rational>) -> Result<ConeVerdict> {
    if psd_witness(kernel.matrix()).is_none() {
        return Ok(ConeVerdict {
            holds: true,
            witness: None,
            value: None,
        });
    }
    let SimplexMinimum { value, argmin } = min_simplex_quadratic(kernel.matrix())?;
    let holds = value >= Rational::from_integer(0.into());
    let witness = (!holds).then(|| to_kernel_function(kernel, argmin));
    Ok(ConeVerdict {
        holds,
        witness,
        value: Some(value),
    })
}

pub fn is_psd(kernel: &StepKernel<Rational>) -> ConeVerdict {
    match psd_witness(kernel.matrix()) {
        None => ConeVerdict {
            holds: true,
            witness: None,
            value: None,
        },
        Some(v) => {
            let value = kernel.matrix().quadratic_form(&v);
            ConeVerdict {
                holds: false,
                witness: Some(to_kernel_function(kernel, v)),
                value: Some(value),
            }
        }
    }
}

/// `p`-local density of a graphon, decided as copositivity of `W − p`.
pub fn is_locally_dense(kernel: &StepKernel<Rational>, p: &Rational) -> Result<ConeVerdict> {
    kernel.ensure_graphon()?;
    is_copositive(&kernel.shift(&-p))
}
