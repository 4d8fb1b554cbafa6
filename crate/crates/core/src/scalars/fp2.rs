use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AnyScalar, Field, ScalarError};

const fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Least quadratic nonresidue modulo the odd prime `p`.
pub const fn least_nonresidue(p: u32) -> u32 {
    let mut n = 2u32;
    while n < p {
        if pow_mod(n as u64, (p as u64 - 1) / 2, p as u64) == p as u64 - 1 {
            return n;
        }
        n += 1;
    }
    panic!("no quadratic nonresidue: modulus is not an odd prime")
}

pub(super) fn is_residue(v: u32, p: u32) -> bool {
    v % p == 0 || pow_mod(v as u64, (p as u64 - 1) / 2, p as u64) == 1
}

/// Tonelli-Shanks square root of a quadratic residue mod `p`.
pub(super) fn sqrt_mod(v: u32, p: u32) -> u32 {
    let (v, p64) = (v as u64 % p as u64, p as u64);
    if v == 0 {
        return 0;
    }
    let (mut q, mut s) = (p64 - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = least_nonresidue(p) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p64);
    let mut t = pow_mod(v, q, p64);
    let mut r = pow_mod(v, (q + 1) / 2, p64);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p64;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p64);
        m = i;
        c = b * b % p64;
        t = t * c % p64;
        r = r * b % p64;
    }
    r as u32
}

pub(super) fn mul_raw(p: u32, n: u32, x: (u32, u32), y: (u32, u32)) -> (u32, u32) {
    let (p64, n) = (p as u64, n as u64);
    let (a, b, c, d) = (x.0 as u64, x.1 as u64, y.0 as u64, y.1 as u64);
    (((a * c + b * d % p64 * n) % p64) as u32, ((a * d + b * c) % p64) as u32)
}

pub(super) fn inv_raw(p: u32, n: u32, x: (u32, u32)) -> Result<(u32, u32), ScalarError> {
    let (p64, n) = (p as u64, n as u64);
    let (a, b) = (x.0 as u64, x.1 as u64);
    let norm = (a * a + (p64 - b * b % p64 * n % p64)) % p64;
    if norm == 0 {
        return Err(ScalarError::DivisionByZero);
    }
    let ninv = pow_mod(norm, p64 - 2, p64);
    Ok(((a * ninv % p64) as u32, ((p64 - b) % p64 * ninv % p64) as u32))
}

/// The square root chosen for an element `(v, 0)` of the prime field: the
/// lexicographically smaller of the two roots `(a, b)`.
pub(super) fn sqrt_raw(p: u32, v: u32) -> (u32, u32) {
    let v = v % p;
    if v == 0 {
        return (0, 0);
    }
    if is_residue(v, p) {
        let r = sqrt_mod(v, p);
        (r.min(p - r), 0)
    } else {
        let n = least_nonresidue(p);
        let (ninv, _) = inv_raw(p, n, (n, 0)).expect("nonresidue is nonzero");
        let s = sqrt_mod(((v as u64 * ninv as u64) % p as u64) as u32, p);
        (0, s.min(p - s))
    }
}

/// `a + b·δ` in `F_{p²}`, where `δ² ` is the least quadratic nonresidue mod `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp2<const P: u32> {
    a: u32,
    b: u32,
}

impl<const P: u32> Fp2<P> {
    /// The value `δ²` defining the extension.
    pub const DELTA_SQUARED: u32 = least_nonresidue(P);

    pub fn new(a: i64, b: i64) -> Self {
        let p = P as i64;
        Fp2 { a: a.rem_euclid(p) as u32, b: b.rem_euclid(p) as u32 }
    }

    /// The generator `δ`.
    pub fn delta() -> Self {
        Fp2 { a: 0, b: 1 }
    }

    pub fn parts(&self) -> (u32, u32) {
        (self.a, self.b)
    }
}

impl<const P: u32> fmt::Debug for Fp2<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const P: u32> fmt::Display for Fp2<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "δ"),
            (0, b) => write!(f, "{b}δ"),
            (a, 1) => write!(f, "{a}+δ"),
            (a, b) => write!(f, "{a}+{b}δ"),
        }
    }
}

impl<const P: u32> Add for Fp2<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp2 { a: (self.a + o.a) % P, b: (self.b + o.b) % P }
    }
}

impl<const P: u32> Sub for Fp2<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp2 { a: (self.a + P - o.a) % P, b: (self.b + P - o.b) % P }
    }
}

impl<const P: u32> Neg for Fp2<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp2 { a: (P - self.a) % P, b: (P - self.b) % P }
    }
}

impl<const P: u32> Mul for Fp2<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = mul_raw(P, Self::DELTA_SQUARED, (self.a, self.b), (o.a, o.b));
        Fp2 { a, b }
    }
}

impl<const P: u32> Zero for Fp2<P> {
    fn zero() -> Self {
        Fp2 { a: 0, b: 0 }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl<const P: u32> One for Fp2<P> {
    fn one() -> Self {
        Fp2 { a: 1 % P, b: 0 }
    }
}

impl<const P: u32> Field for Fp2<P> {
    const CHARACTERISTIC: u32 = P;

    fn from_int(v: i64) -> Self {
        Fp2::new(v, 0)
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        inv_raw(P, Self::DELTA_SQUARED, (self.a, self.b)).map(|(a, b)| Fp2 { a, b })
    }

    fn sqrt_prime(&self) -> Result<Self, ScalarError> {
        if self.b != 0 {
            return Err(ScalarError::NotInPrimeSubfield(self.to_string()));
        }
        let (a, b) = sqrt_raw(P, self.a);
        Ok(Fp2 { a, b })
    }

    fn normalize_row(row: &mut [(usize, Self)]) {
        if let Some(inv) = row.first().and_then(|(_, v)| v.try_inv().ok()) {
            for (_, v) in row.iter_mut() {
                *v = *v * inv;
            }
        }
    }

    fn to_any(&self) -> AnyScalar {
        AnyScalar::Fp { p: P, a: self.a, b: self.b }
    }

    fn from_any(value: &AnyScalar) -> Result<Self, ScalarError> {
        match value {
            AnyScalar::Fp { p, a, b } if *p == P => Ok(Fp2::new(*a as i64, *b as i64)),
            AnyScalar::Fp { p, .. } => Err(ScalarError::CharacteristicMismatch(*p, P)),
            AnyScalar::Quad(_) => Err(ScalarError::CharacteristicMismatch(0, P)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_nonresidue(p: u32) -> u32 {
        (2..p).find(|n| (1..p).all(|x| x * x % p != *n)).unwrap()
    }

    #[test]
    fn nonresidues_match_brute_force() {
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            assert_eq!(least_nonresidue(p), brute_nonresidue(p), "p={p}");
        }
    }

    #[test]
    fn sqrt_of_two_mod_five_is_delta() {
        assert_eq!(Fp2::<5>::DELTA_SQUARED, 2);
        assert_eq!(Fp2::<5>::from_int(2).sqrt_prime().unwrap(), Fp2::<5>::delta());
    }

    #[test]
    fn sqrt_picks_smaller_root() {
        // 4 = 2² = 3² mod 5; the smaller residue wins.
        assert_eq!(Fp2::<5>::from_int(4).sqrt_prime().unwrap(), Fp2::<5>::from_int(2));
        // 3 = 2·4 is a nonresidue mod 5: roots ±2δ, tie broken towards 2δ.
        assert_eq!(Fp2::<5>::from_int(3).sqrt_prime().unwrap(), Fp2::<5>::new(0, 2));
    }

    #[test]
    fn sqrt_squares_back_for_every_residue_class() {
        fn check<const P: u32>() {
            for v in 0..P as i64 {
                let x = Fp2::<P>::from_int(v);
                let r = x.sqrt_prime().unwrap();
                assert_eq!(r * r, x, "p={P} v={v}");
            }
        }
        check::<3>();
        check::<5>();
        check::<7>();
        check::<11>();
        check::<13>();
        check::<31>();
    }

    #[test]
    fn inverse_by_exhaustion() {
        for a in 0..7 {
            for b in 0..7 {
                let x = Fp2::<7>::new(a, b);
                if x.is_zero() {
                    assert_eq!(x.try_inv(), Err(ScalarError::DivisionByZero));
                    continue;
                }
                let inv = x.try_inv().unwrap();
                assert_eq!(x * inv, Fp2::one());
                // Independent search for the inverse.
                let found = (0..7)
                    .flat_map(|c| (0..7).map(move |d| Fp2::<7>::new(c, d)))
                    .find(|y| x * *y == Fp2::one())
                    .unwrap();
                assert_eq!(inv, found);
            }
        }
    }

    #[test]
    fn sqrt_rejects_extension_elements() {
        assert!(Fp2::<5>::delta().sqrt_prime().is_err());
    }
}
