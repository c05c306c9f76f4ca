//! Scalar abstraction shared by the kernel algebra and density engines.
//!
//! Everything that only needs field arithmetic is generic over [`Scalar`]; the exact
//! cone tests and certification work on [`Rational`] specifically.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::homdensity::engine::{self, HomSum, Method};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Commutative ring operations by reference. Blanket-implemented for every type with
/// by-reference `*` and `+=`, which covers `f32`, `f64`, `BigInt` and `BigRational`.
pub trait Ring: Clone + Zero + One + Send + Sync {
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
}

impl<T> Ring for T
where
    T: Clone + Zero + One + Send + Sync + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    #[inline]
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    #[inline]
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// An ordered field usable as the entry type of a step kernel.
pub trait Scalar:
    Ring + Num + Signed + PartialOrd + Debug + Display + 'static
{
    /// True when arithmetic is exact, so equality tests are meaningful.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality used when validating structure (symmetry, unit mass, regularity).
    /// Exact for rationals, relative tolerance for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    /// Weighted homomorphism sum `Σ_φ Π_v w_v(φ(v)) Π_uv A[φ(u), φ(v)]`.
    fn hom_sum(problem: &HomSum<'_, Self>, method: Method) -> Self {
        engine::hom_sum(problem, method)
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn approx_eq(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $tol * scale
            }
        }
    };
}

impl_float_scalar!(f64, 1e-9);
impl_float_scalar!(f32, 1e-4);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        ratio(num, den)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator or denominator overflows f64; fall back to scaled division
            let shift = self.denom().bits().max(self.numer().bits()).saturating_sub(1000);
            let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// Clears denominators and runs the engine over integers, which avoids a gcd per
    /// multiplication. The result is identical to summing over rationals.
    fn hom_sum(problem: &HomSum<'_, Self>, method: Method) -> Self {
        let (matrix_int, matrix_den) = clear_denominators(problem.matrix);
        let mut weight_ints = Vec::with_capacity(problem.weights.len());
        let mut denominator = BigInt::one();
        for w in problem.weights {
            let (ints, den) = clear_denominators(w);
            denominator *= den;
            weight_ints.push(ints);
        }
        let int_problem = HomSum {
            vertex_count: problem.vertex_count,
            edges: problem.edges,
            blocks: problem.blocks,
            matrix: &matrix_int,
            weights: &weight_ints,
        };
        let total = engine::hom_sum(&int_problem, method);
        denominator *= num_traits::pow(matrix_den, problem.edges.len());
        Rational::new(total, denominator)
    }
}

/// Rewrites `values` as integers over a common (least) denominator.
pub fn clear_denominators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    (ints, den)
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"a/b"`, an integer, or a plain decimal such as `"-0.25"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// `a/b`, or just `a` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering with `digits` places after the point, rounded half away from zero.
pub fn format_decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued-fraction convergents and semiconvergents.
pub fn approximate(x: f64, max_den: u64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("cannot round non-finite value {x}")));
    }
    let max_den = max_den.max(1);
    let exact = Rational::from_f64(x)
        .ok_or_else(|| Error::InvalidArgument(format!("cannot represent {x}")))?;
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let bound = BigInt::from(max_den);
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > bound {
            // best semiconvergent within the bound, compared against the last convergent
            let k = (&bound - &q0) / &q1;
            let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = Rational::new(p1.clone(), q1.clone());
            let better = if (&semi - &exact).abs() < (&conv - &exact).abs() {
                semi
            } else {
                conv
            };
            return Ok(better);
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            return Ok(Rational::new(p1, q1));
        }
        rest = frac.recip();
    }
}

pub fn rational_pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3/10").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("0.2").unwrap(), ratio(1, 5));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!(format_rational(&ratio(9, 40)), "9/40");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_decimal(&ratio(9, 40), 12), "0.225000000000");
        assert_eq!(format_decimal(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(format_decimal(&ratio(2, 3), 2), "0.67");
        assert_eq!(format_decimal(&ratio(-1, 1000), 2), "0.00");
    }

    #[test]
    fn continued_fraction_rounding() {
        assert_eq!(approximate(0.5, 10).unwrap(), ratio(1, 2));
        assert_eq!(approximate(std::f64::consts::PI, 1000).unwrap(), ratio(355, 113));
        assert_eq!(approximate(-0.333333333, 100).unwrap(), ratio(-1, 3));
        assert_eq!(approximate(0.0, 10).unwrap(), int(0));
        let r = approximate(1.23456789, 10_000).unwrap();
        assert!(r.denom() <= &BigInt::from(10_000));
        assert!((Scalar::to_f64(&r) - 1.23456789).abs() < 1e-7);
        assert!(approximate(f64::NAN, 10).is_err());
    }

    #[test]
    fn clearing_denominators() {
        let (ints, den) = clear_denominators(&[ratio(1, 2), ratio(1, 3), int(2)]);
        assert_eq!(den, BigInt::from(6));
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(2), BigInt::from(12)]);
    }
}
