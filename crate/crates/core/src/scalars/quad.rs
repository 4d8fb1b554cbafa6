use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{AnyScalar, Field, Rational, ScalarError};

/// Split `n = s² · f` with `f` squarefree; returns `(s, f)`.
pub fn squarefree_part(mut n: u128) -> (u128, u128) {
    assert!(n > 0, "squarefree part of zero");
    let (mut s, mut f) = (1u128, 1u128);
    let mut d = 2u128;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        s *= d.pow(e / 2);
        if e % 2 == 1 {
            f *= d;
        }
        d += 1;
    }
    (s, f * n)
}

/// A finite sum `Σ r_d √d` over distinct squarefree radicands `d ≥ 1`.
///
/// Terms are kept sorted by radicand with nonzero coefficients, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quad {
    terms: SmallVec<[(u64, Rational); 2]>,
}

impl Quad {
    pub fn rational(r: Rational) -> Self {
        Self::term(1, r)
    }

    /// `r · √d` for squarefree `d`.
    pub fn term(d: u64, r: Rational) -> Self {
        let mut terms = SmallVec::new();
        if !r.is_zero() {
            terms.push((d, r));
        }
        Quad { terms }
    }

    /// `√n` for a nonnegative integer `n`.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            return Quad::zero();
        }
        let (s, f) = squarefree_part(n as u128);
        Quad::term(f as u64, Rational::from_integer(s as i128))
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    /// The value as a rational number, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(1, r)] => Some(*r),
            _ => None,
        }
    }

    fn from_unsorted(mut raw: SmallVec<[(u64, Rational); 2]>) -> Self {
        raw.sort_unstable_by_key(|t| t.0);
        let mut terms: SmallVec<[(u64, Rational); 2]> = SmallVec::new();
        for (d, r) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == d => last.1 = rat_add(&last.1, &r),
                _ => terms.push((d, r)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        Quad { terms }
    }

    fn scale_rational(&mut self, r: Rational) {
        for t in self.terms.iter_mut() {
            t.1 = rat_mul(&t.1, &r);
        }
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, r)) in self.terms.iter().enumerate() {
            let neg = r.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = r.abs();
            match (*d, a.is_one()) {
                (1, _) => write!(f, "{a}")?,
                (d, true) => write!(f, "√{d}")?,
                (d, false) => write!(f, "{a}√{d}")?,
            }
        }
        Ok(())
    }
}

fn small(r: &Rational) -> Option<(i64, i64)> {
    Some((i64::try_from(*r.numer()).ok()?, i64::try_from(*r.denom()).ok()?))
}

/// Product of reduced fractions, with machine-word division when the parts fit.
fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => {
            if an == 0 || bn == 0 {
                return Rational::zero();
            }
            let g1 = an.gcd(&bd);
            let g2 = bn.gcd(&ad);
            let n = (an / g1) as i128 * (bn / g2) as i128;
            let d = (ad / g2) as i128 * (bd / g1) as i128;
            Rational::new_raw(n, d)
        }
        _ => a * b,
    }
}

/// Sum of reduced fractions, with machine-word division when the parts fit.
fn rat_add(a: &Rational, b: &Rational) -> Rational {
    match (small(a), small(b)) {
        (Some((an, 1)), Some((bn, 1))) => Rational::from_integer(an as i128 + bn as i128),
        (Some((an, ad)), Some((bn, bd))) => {
            let g = ad.gcd(&bd);
            let n = an as i128 * (bd / g) as i128 + bn as i128 * (ad / g) as i128;
            if n == 0 {
                return Rational::zero();
            }
            // Any common factor of n and the denominator divides g.
            let h = ((n % g as i128) as i64).gcd(&g);
            let d = (ad / g) as i128 * bd as i128;
            Rational::new_raw(n / h as i128, d / h as i128)
        }
        _ => a + b,
    }
}

impl Add for Quad {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if o.terms.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            return o;
        }
        if let ([(d1, r1)], [(d2, r2)]) = (self.terms.as_slice(), o.terms.as_slice()) {
            if d1 == d2 {
                return Quad::term(*d1, rat_add(r1, r2));
            }
        }
        let mut raw = self.terms;
        raw.extend(o.terms);
        Quad::from_unsorted(raw)
    }
}

impl Sub for Quad {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Quad {
    type Output = Self;
    fn neg(mut self) -> Self {
        for t in self.terms.iter_mut() {
            t.1 = -t.1;
        }
        self
    }
}

impl Mul for Quad {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Quad::zero();
        }
        if let ([(d1, r1)], [(d2, r2)]) = (self.terms.as_slice(), o.terms.as_slice()) {
            let r = rat_mul(r1, r2);
            return match (*d1, *d2) {
                (1, d) | (d, 1) => Quad::term(d, r),
                (a, b) if a == b => Quad::term(1, rat_mul(&r, &Rational::from_integer(a as i128))),
                _ => {
                    let g = d1.gcd(d2);
                    Quad::term((d1 / g) * (d2 / g), rat_mul(&r, &Rational::from_integer(g as i128)))
                }
            };
        }
        let mut raw = SmallVec::new();
        for (d1, r1) in &self.terms {
            for (d2, r2) in &o.terms {
                let g = d1.gcd(d2);
                let d = (d1 / g) * (d2 / g);
                raw.push((d, rat_mul(&rat_mul(r1, r2), &Rational::from_integer(g as i128))));
            }
        }
        Quad::from_unsorted(raw)
    }
}

impl Zero for Quad {
    fn zero() -> Self {
        Quad { terms: SmallVec::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Quad {
    fn one() -> Self {
        Quad::rational(Rational::one())
    }
}

impl Field for Quad {
    const CHARACTERISTIC: u32 = 0;

    fn from_int(v: i64) -> Self {
        Quad::rational(Rational::from_integer(v as i128))
    }

    fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Quad::rational(Rational::new(num as i128, den as i128)))
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        match self.terms.as_slice() {
            [] => Err(ScalarError::DivisionByZero),
            [(d, r)] => Ok(Quad::term(*d, (r * Rational::from_integer(*d as i128)).recip())),
            _ => Err(ScalarError::MultiTermInverse(self.to_string())),
        }
    }

    fn sqrt_prime(&self) -> Result<Self, ScalarError> {
        let r = self.as_rational().ok_or_else(|| ScalarError::NotInPrimeSubfield(self.to_string()))?;
        if r.is_negative() {
            return Err(ScalarError::NegativeRadicand(r.to_string()));
        }
        if r.is_zero() {
            return Ok(Quad::zero());
        }
        let (num, den) = (*r.numer() as u128, *r.denom() as u128);
        let (s, f) = squarefree_part(num * den);
        Ok(Quad::term(f as u64, Rational::new(s as i128, den as i128)))
    }

    fn cost(&self) -> usize {
        self.terms.len()
    }

    fn normalize_row(row: &mut [(usize, Self)]) {
        let mut num_gcd = 0i128;
        let mut den_lcm = 1i128;
        for (_, v) in row.iter() {
            for (_, r) in &v.terms {
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        }
        if num_gcd == 0 {
            return;
        }
        let factor = Rational::new(den_lcm, num_gcd);
        if !factor.is_one() {
            for (_, v) in row.iter_mut() {
                v.scale_rational(factor);
            }
        }
    }

    fn to_any(&self) -> AnyScalar {
        AnyScalar::Quad(self.clone())
    }

    fn from_any(value: &AnyScalar) -> Result<Self, ScalarError> {
        match value {
            AnyScalar::Quad(q) => Ok(q.clone()),
            AnyScalar::Fp { p, .. } => Err(ScalarError::CharacteristicMismatch(*p, 0)),
        }
    }
}
