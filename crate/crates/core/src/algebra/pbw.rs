//! Elements of the affine Hecke-Clifford superalgebra in the PBW basis
//! `x^α c^β w`.
//!
//! Products are formed by multiplying an element already in normal form on
//! the right by one generator at a time. Right multiplication by `s_k`
//! composes permutations, by `c_k` moves `c_{w(k)}` through the Clifford
//! part with a sign, and by `x_k` uses the expansion of `w · x_k`, computed
//! recursively from `s_i x_i = x_{i+1} s_i - (1 + c_i c_{i+1})` and
//! `s_i x_{i+1} = x_i s_i + (1 - c_i c_{i+1})`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::Field;

/// A generator, with 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    S(usize),
    X(usize),
    C(usize),
}

impl Generator {
    pub fn is_odd(self) -> bool {
        matches!(self, Generator::C(_))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S(k) => write!(f, "s{k}"),
            Generator::X(k) => write!(f, "x{k}"),
            Generator::C(k) => write!(f, "c{k}"),
        }
    }
}

/// `x^α c^β w` with `w` in one-line notation (1-based values).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub alpha: Vec<u32>,
    /// Bit `k-1` set iff `c_k` occurs.
    pub beta: u32,
    pub perm: Vec<u8>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial { alpha: vec![0; n], beta: 0, perm: (1..=n as u8).collect() }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn parity(&self) -> bool {
        self.beta.count_ones() % 2 == 1
    }

    /// Generators whose product, left to right, is this monomial.
    pub fn word(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for (k, a) in self.alpha.iter().enumerate() {
            out.extend(std::iter::repeat_n(Generator::X(k + 1), *a as usize));
        }
        for k in 0..self.n() {
            if self.beta & (1 << k) != 0 {
                out.push(Generator::C(k + 1));
            }
        }
        out.extend(reduced_word(&self.perm).into_iter().map(Generator::S));
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, a) in self.alpha.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", k + 1)),
                a => parts.push(format!("x{}^{a}", k + 1)),
            }
        }
        for k in 0..self.n() {
            if self.beta & (1 << k) != 0 {
                parts.push(format!("c{}", k + 1));
            }
        }
        if self.perm.iter().enumerate().any(|(k, v)| *v as usize != k + 1) {
            let w: Vec<String> = self.perm.iter().map(u8::to_string).collect();
            parts.push(format!("[{}]", w.join("")));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// A reduced word `[i_1, …, i_r]` with `w = s_{i_1} ⋯ s_{i_r}`.
pub fn reduced_word(perm: &[u8]) -> Vec<usize> {
    let mut w = perm.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|i| w[*i] > w[i + 1]) {
        w.swap(i, i + 1);
        rev.push(i + 1);
    }
    rev.reverse();
    rev
}

/// Sign of `c^β · c^γ` relative to `c^{β ⊕ γ}`.
fn clifford_sign(beta: u32, gamma: u32) -> bool {
    let mut odd = false;
    let mut g = gamma;
    while g != 0 {
        let j = g.trailing_zeros();
        let above = beta >> (j + 1);
        odd ^= above.count_ones() % 2 == 1;
        g &= g - 1;
    }
    odd
}

type IntTerms = Vec<(Monomial, i64)>;

thread_local! {
    static PERM_X: RefCell<HashMap<(Vec<u8>, usize), IntTerms>> = RefCell::new(HashMap::new());
}

fn add_int(acc: &mut BTreeMap<Monomial, i64>, m: Monomial, c: i64) {
    let e = acc.entry(m).or_insert(0);
    *e += c;
}

/// Normal form of `w · x_k`, integer coefficients.
fn perm_times_x(perm: &[u8], k: usize) -> IntTerms {
    let key = (perm.to_vec(), k);
    if let Some(v) = PERM_X.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let n = perm.len();
    let result: IntTerms = match (0..n - 1).find(|i| perm[*i] > perm[i + 1]) {
        None => {
            let mut m = Monomial::identity(n);
            m.alpha[k - 1] = 1;
            vec![(m, 1)]
        }
        Some(i0) => {
            let i = i0 + 1;
            let mut shorter = perm.to_vec();
            shorter.swap(i0, i0 + 1);
            let mut acc = BTreeMap::new();
            let times_s = |terms: IntTerms, acc: &mut BTreeMap<Monomial, i64>| {
                for (mut m, c) in terms {
                    m.perm.swap(i0, i0 + 1);
                    add_int(acc, m, c);
                }
            };
            // w' c_i c_{i+1} = c_{w'(i)} c_{w'(i+1)} w'
            let cc_term = |target_perm: Vec<u8>| -> (Monomial, i64) {
                let (a, b) = (shorter[i0] as u32 - 1, shorter[i0 + 1] as u32 - 1);
                let sign = if a > b { -1 } else { 1 };
                let m = Monomial { alpha: vec![0; n], beta: (1 << a) | (1 << b), perm: target_perm };
                (m, sign)
            };
            if k != i && k != i + 1 {
                times_s(perm_times_x(&shorter, k), &mut acc);
            } else if k == i {
                times_s(perm_times_x(&shorter, i + 1), &mut acc);
                add_int(&mut acc, Monomial { alpha: vec![0; n], beta: 0, perm: shorter.clone() }, -1);
                let (m, s) = cc_term(shorter.clone());
                add_int(&mut acc, m, -s);
            } else {
                times_s(perm_times_x(&shorter, i), &mut acc);
                add_int(&mut acc, Monomial { alpha: vec![0; n], beta: 0, perm: shorter.clone() }, 1);
                let (m, s) = cc_term(shorter.clone());
                add_int(&mut acc, m, -s);
            }
            acc.into_iter().filter(|(_, c)| *c != 0).collect()
        }
    };
    PERM_X.with(|c| c.borrow_mut().insert(key, result.clone()));
    result
}

/// A linear combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<F> {
    n: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Element<F> {
    pub fn zero(n: usize) -> Self {
        Element { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Monomial::identity(n), F::one())
    }

    pub fn scalar(n: usize, v: F) -> Self {
        Self::monomial(Monomial::identity(n), v)
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut e = Element::zero(m.n());
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        Element::one(n).mul_gen(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let v = old + c;
                if !v.is_zero() {
                    self.terms.insert(m, v);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Element::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    /// `self · g`.
    pub fn mul_gen(&self, g: Generator) -> Self {
        let mut out = Element::zero(self.n);
        for (m, c) in &self.terms {
            match g {
                Generator::S(k) => {
                    let mut m = m.clone();
                    m.perm.swap(k - 1, k);
                    out.add_term(m, c.clone());
                }
                Generator::C(k) => {
                    let j = m.perm[k - 1] as u32 - 1;
                    let neg = clifford_sign(m.beta, 1 << j);
                    let mut m2 = m.clone();
                    m2.beta ^= 1 << j;
                    out.add_term(m2, if neg { -c.clone() } else { c.clone() });
                }
                Generator::X(k) => {
                    for (t, tc) in perm_times_x(&m.perm, k) {
                        // x^α c^β · x^α' c^β' σ
                        let mut neg = clifford_sign(m.beta, t.beta);
                        for (j, a) in t.alpha.iter().enumerate() {
                            if a % 2 == 1 && m.beta & (1 << j) != 0 {
                                neg = !neg;
                            }
                        }
                        let alpha = m.alpha.iter().zip(&t.alpha).map(|(a, b)| a + b).collect();
                        let mono = Monomial { alpha, beta: m.beta ^ t.beta, perm: t.perm };
                        let v = c.clone() * F::from_int(tc);
                        out.add_term(mono, if neg { -v } else { v });
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "rank mismatch");
        let mut out = Element::zero(self.n);
        for (m, c) in &o.terms {
            let mut part = self.clone();
            for g in m.word() {
                part = part.mul_gen(g);
            }
            for (pm, pc) in part.terms {
                out.add_term(pm, pc * c.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Element::one(self.n), |acc, _| acc.mul(self))
    }
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Normal form of a word in the generators.
pub fn normal_form<F: Field>(n: usize, word: &[Generator]) -> Element<F> {
    word.iter().fold(Element::one(n), |acc, g| acc.mul_gen(*g))
}

/// Shorthand constructors used by the identity checks.
pub fn s<F: Field>(n: usize, k: usize) -> Element<F> {
    Element::generator(n, Generator::S(k))
}
pub fn x<F: Field>(n: usize, k: usize) -> Element<F> {
    Element::generator(n, Generator::X(k))
}
pub fn c<F: Field>(n: usize, k: usize) -> Element<F> {
    Element::generator(n, Generator::C(k))
}

/// The element of the symmetric group with the given one-line notation.
pub fn permutation<F: Field>(perm: &[u8]) -> Element<F> {
    Element::monomial(Monomial { alpha: vec![0; perm.len()], beta: 0, perm: perm.to_vec() }, F::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::scalars::Quad;

    type E = Element<Quad>;

    fn nf(n: usize, w: &[Generator]) -> E {
        normal_form(n, w)
    }

    use Generator::*;

    #[test]
    fn defining_relations_in_normal_form() {
        let n = 3;
        let one = E::one(n);
        // s_1 x_1 = x_2 s_1 - 1 - c_1 c_2
        let lhs = nf(n, &[S(1), X(1)]);
        let rhs = nf(n, &[X(2), S(1)]).sub(&one).sub(&nf(n, &[C(1), C(2)]));
        assert_eq!(lhs, rhs);
        // x_1 c_1 = -c_1 x_1 and c_1 c_2 = -c_2 c_1
        assert_eq!(nf(n, &[X(1), C(1)]), nf(n, &[C(1), X(1)]).scale(&-Quad::one()));
        assert_eq!(nf(n, &[C(2), C(1)]), nf(n, &[C(1), C(2)]).scale(&-Quad::one()));
        // s_1 c_1 = c_2 s_1, s_1 c_3 = c_3 s_1
        assert_eq!(nf(n, &[S(1), C(1)]), nf(n, &[C(2), S(1)]));
        assert_eq!(nf(n, &[S(1), C(3)]), nf(n, &[C(3), S(1)]));
        assert_eq!(nf(n, &[C(1), C(1)]), one);
        assert_eq!(nf(n, &[S(2), S(2)]), one);
        assert_eq!(nf(n, &[S(1), S(2), S(1)]), nf(n, &[S(2), S(1), S(2)]));
    }

    #[test]
    fn s_times_upper_x() {
        // s_1 x_2 = x_1 s_1 + 1 - c_1 c_2
        let n = 2;
        let lhs = nf(n, &[S(1), X(2)]);
        let rhs = nf(n, &[X(1), S(1)]).add(&E::one(n)).sub(&nf(n, &[C(1), C(2)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn squares_of_x_through_s() {
        // x_1² s_1 = s_1 x_2² - (x_1(1 - c_1c_2) + (1 - c_1c_2) x_2)
        let n = 2;
        let lhs = nf(n, &[X(1), X(1), S(1)]);
        let one = E::one(n);
        let cc = nf(n, &[C(1), C(2)]);
        let t = x(n, 1).mul(&one.sub(&cc)).add(&one.sub(&cc).mul(&x(n, 2)));
        let rhs = nf(n, &[S(1), X(2), X(2)]).sub(&t);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_of_example_word() {
        let e = nf(2, &[X(1), S(1)]);
        assert_eq!(e.terms().count(), 1);
        let (m, c) = e.terms().next().unwrap();
        assert_eq!(m.alpha, vec![1, 0]);
        assert_eq!(m.perm, vec![2, 1]);
        assert_eq!(*c, Quad::one());
    }

    #[test]
    fn reduced_words_rebuild_permutations() {
        let perm = vec![3u8, 1, 4, 2];
        let w = reduced_word(&perm);
        assert_eq!(w.len(), 3);
        let e: E = nf(4, &w.iter().map(|k| S(*k)).collect::<Vec<_>>());
        assert_eq!(e, permutation(&perm));
    }
}
