//! Built-in kernels addressable by name.

use super::StepKernel;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, parse_rational, Rational};
use crate::Kernel;

/// The 4-block graphon on equal blocks with values
/// `3p` on the first diagonal block, `p` on the other diagonal blocks, `2p` between
/// distinct blocks among the last three, and `0` between the first block and the rest.
///
/// Edge density is `9p/8`. It is only `3p/4`-locally dense: the first block has no edges
/// to the rest, so mixing it with the second block in ratio 1:3 lowers the density.
pub fn counterexample_4x4(p: &Rational) -> Result<Kernel> {
    let pattern = [[3, 0, 0, 0], [0, 1, 2, 2], [0, 2, 1, 2], [0, 2, 2, 1]];
    let matrix = Matrix::from_fn(4, |i, j| p * int(pattern[i][j]));
    StepKernel::uniform(matrix)
}

/// A rank-two positive semidefinite 0-regular kernel on five equal blocks that gives some
/// 6-vertex graphs a negative homomorphism density.
pub fn counterexample_5x5() -> Kernel {
    let rows: [[i64; 5]; 5] = [
        [18, -12, 12, -12, -6],
        [-12, 35, 28, -19, -32],
        [12, 28, 56, -44, -52],
        [-12, -19, -44, 35, 40],
        [-6, -32, -52, 40, 50],
    ];
    StepKernel::uniform(Matrix::from_fn(5, |i, j| int(rows[i][j]))).expect("symmetric")
}

/// Resolves `paper-4x4@p`, `paper-5x5` and `constant@p`; `None` for other names.
pub fn resolve_named(name: &str) -> Option<Result<Kernel>> {
    let (head, arg) = match name.split_once('@') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let need_arg = |a: Option<&str>| {
        a.ok_or_else(|| Error::Parse(format!("{head} needs a value, as in {head}@1/5")))
            .and_then(parse_rational)
    };
    match head {
        "paper-4x4" => Some(need_arg(arg).and_then(|p| counterexample_4x4(&p))),
        "paper-5x5" => Some(match arg {
            None => Ok(counterexample_5x5()),
            Some(_) => Err(Error::Parse("paper-5x5 takes no value".into())),
        }),
        "constant" => Some(need_arg(arg).and_then(StepKernel::constant)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn named_lookup() {
        assert_eq!(
            resolve_named("paper-4x4@1/5").unwrap().unwrap(),
            counterexample_4x4(&ratio(1, 5)).unwrap()
        );
        assert_eq!(resolve_named("paper-5x5").unwrap().unwrap(), counterexample_5x5());
        assert_eq!(
            resolve_named("constant@0.5").unwrap().unwrap(),
            Kernel::constant(ratio(1, 2)).unwrap()
        );
        assert!(resolve_named("paper-4x4").unwrap().is_err());
        assert!(resolve_named("paper-5x5@1").unwrap().is_err());
        assert!(resolve_named("kernel.json").is_none());
    }
}
