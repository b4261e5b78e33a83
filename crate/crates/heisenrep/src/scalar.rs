//! Scalar tower shared by every operator realization.
//!
//! Two scalar kinds back the whole crate: exact Gaussian rationals
//! (`CRat`, complex numbers with `BigRational` parts) for polynomial
//! operator identities, and `C64` for checks that involve Gamma, Bessel
//! or exponential factors. Identities over `CRat` are asserted with no
//! tolerance at all; a nonzero residual there is a hard failure.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::CoreError;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Exact complex scalar with rational real and imaginary parts.
pub type CRat = num::complex::Complex<BigRational>;

/// IEEE-754 complex scalar.
pub type C64 = Complex64;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest f64 to an exact rational.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse exact rational text such as `-1/4` or `3`.
///
/// Decimal notation is refused so that exact-mode checks never launder
/// floating-point input.
pub fn parse_rational(text: &str) -> Result<Rat, CoreError> {
    let trimmed = text.trim();
    if trimmed.contains('.') {
        return Err(CoreError::DecimalRefused {
            input: trimmed.to_string(),
        });
    }
    Rat::from_str(trimmed).map_err(|_| CoreError::BadRational {
        input: trimmed.to_string(),
    })
}

/// Entry type usable in sparse operators.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// True when arithmetic in this scalar is exact and residuals carry
    /// no rounding.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Magnitude as f64, used for residual reporting.
    fn abs(&self) -> f64;
    /// Nearest complex float.
    fn to_c64(&self) -> C64;
}

impl Scalar for CRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        CRat::new(Rat::zero(), Rat::zero())
    }
    fn one() -> Self {
        CRat::new(Rat::one(), Rat::zero())
    }
    fn i() -> Self {
        CRat::new(Rat::zero(), Rat::one())
    }
    fn from_rat(r: &Rat) -> Self {
        CRat::new(r.clone(), Rat::zero())
    }
    fn from_int(n: i64) -> Self {
        CRat::new(rat(n, 1), Rat::zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::INFINITY);
        let im = self.im.to_f64().unwrap_or(f64::INFINITY);
        re.hypot(im)
    }
    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn i() -> Self {
        C64::new(0.0, 1.0)
    }
    fn from_rat(r: &Rat) -> Self {
        C64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        C64::new(self.re, -self.im)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

/// Spin parameter λ, carried exactly.
///
/// Most constructions require λ in general position, i.e. 2λ not an
/// integer, so that no block of the graded tower degenerates to a
/// half-integer spin.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinParameter {
    value: Rat,
    general_position: bool,
}

impl SpinParameter {
    /// A λ that must avoid all half-integers. Rejects k/2.
    pub fn general(value: Rat) -> Result<Self, CoreError> {
        if is_half_integer(&value) {
            return Err(CoreError::NotGeneralPosition {
                lambda: value.to_string(),
            });
        }
        Ok(SpinParameter {
            value,
            general_position: true,
        })
    }

    /// A λ without the general-position requirement.
    pub fn any(value: Rat) -> Self {
        let general_position = !is_half_integer(&value);
        SpinParameter {
            value,
            general_position,
        }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// 2λ as an exact rational.
    pub fn two_lambda(&self) -> Rat {
        &self.value * rat(2, 1)
    }

    /// Block spin Λ = λ + p/2.
    pub fn block_spin(&self, p: i64) -> Rat {
        &self.value + rat(p, 2)
    }
}

impl fmt::Display for SpinParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn is_half_integer(r: &Rat) -> bool {
    (r * rat(2, 1)).denom().abs() == BigInt::one()
}
