//! Exact scalar fields.
//!
//! Two concrete fields are provided: [`Quad`], elements of the multiquadratic
//! extension of the rationals written as rational combinations of square
//! roots of squarefree integers, and [`Fp2`], the quadratic extension of the
//! prime field of an odd characteristic. Both implement [`Field`], which is
//! what the algebra and module code is generic over.

mod any;
mod fp2;
mod quad;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

pub use any::AnyScalar;
pub use fp2::{least_nonresidue, Fp2};
pub use quad::{squarefree_part, Quad};

/// Rational numbers used for the coefficients of [`Quad`].
pub type Rational = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert the multi-term value {0}")]
    MultiTermInverse(String),
    #[error("square root of the negative rational {0}")]
    NegativeRadicand(String),
    #[error("square root requested for {0}, which is not in the prime subfield")]
    NotInPrimeSubfield(String),
    #[error("malformed scalar: {0}")]
    Malformed(String),
    #[error("characteristic {0} is not supported (expected 0 or an odd prime up to 31)")]
    UnsupportedCharacteristic(u32),
}

/// An exact field with the handful of operations the constructions need.
pub trait Field:
    Clone + Debug + Display + Eq + Hash + Send + Sync + 'static + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    /// 0 for the multiquadratic field, `p` for the quadratic extension of F_p.
    const CHARACTERISTIC: u32;

    fn from_int(v: i64) -> Self;

    /// `num / den`; fails if `den` vanishes in the field.
    fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        Self::from_int(den).try_inv().map(|inv| Self::from_int(num) * inv)
    }

    fn try_inv(&self) -> Result<Self, ScalarError>;

    /// Square root of an element of the prime subfield.
    fn sqrt_prime(&self) -> Result<Self, ScalarError>;

    /// Rough size used to prefer cheap pivots during elimination.
    fn cost(&self) -> usize {
        1
    }

    /// Rescale a row of a linear system by a nonzero factor to keep entries small.
    /// Only the row space matters to callers.
    fn normalize_row(_row: &mut [(usize, Self)]) {}

    fn to_any(&self) -> AnyScalar;

    fn from_any(value: &AnyScalar) -> Result<Self, ScalarError>;
}

/// `i(i+1)` as an element of the field.
pub fn q_value<F: Field>(i: u32) -> F {
    F::from_int(i as i64 * (i as i64 + 1))
}

/// Positive (or canonical) square root of `q(i)`.
pub fn sqrt_q<F: Field>(i: u32) -> F {
    q_value::<F>(i).sqrt_prime().expect("q(i) has a square root in the field")
}

/// Odd primes for which [`Fp2`] is instantiated by the runtime dispatch.
pub const SUPPORTED_PRIMES: [u32; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Run `$body` with `$F` bound to the field type of characteristic `$p`.
///
/// Evaluates to `Err(ScalarError::UnsupportedCharacteristic)` (converted with
/// `From`) when `$p` is neither 0 nor a supported prime.
#[macro_export]
macro_rules! with_field {
    ($p:expr, $F:ident => $body:expr) => {{
        use $crate::scalars::{Fp2, Quad};
        match $p {
            0 => {
                type $F = Quad;
                $body
            }
            3 => {
                type $F = Fp2<3>;
                $body
            }
            5 => {
                type $F = Fp2<5>;
                $body
            }
            7 => {
                type $F = Fp2<7>;
                $body
            }
            11 => {
                type $F = Fp2<11>;
                $body
            }
            13 => {
                type $F = Fp2<13>;
                $body
            }
            17 => {
                type $F = Fp2<17>;
                $body
            }
            19 => {
                type $F = Fp2<19>;
                $body
            }
            23 => {
                type $F = Fp2<23>;
                $body
            }
            29 => {
                type $F = Fp2<29>;
                $body
            }
            31 => {
                type $F = Fp2<31>;
                $body
            }
            other => Err($crate::scalars::ScalarError::UnsupportedCharacteristic(other).into()),
        }
    }};
}
