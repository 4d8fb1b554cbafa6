//! Intertwining elements, Jucys-Murphy elements, and exact identity checks.

use serde::Serialize;

use super::pbw::{c, permutation, s, x, Element};
use crate::scalars::Field;

/// `Φ_k = s_k(x_k² - x_{k+1}²) + (x_k + x_{k+1}) + c_k c_{k+1}(x_k - x_{k+1})`.
pub fn intertwiner<F: Field>(n: usize, k: usize) -> Element<F> {
    let (xk, xk1) = (x::<F>(n, k), x::<F>(n, k + 1));
    let sq = xk.mul(&xk).sub(&xk1.mul(&xk1));
    s(n, k).mul(&sq).add(&xk.add(&xk1)).add(&c(n, k).mul(&c(n, k + 1)).mul(&xk.sub(&xk1)))
}

/// `L_k = Σ_{j<k} (1 + c_j c_k)(j k)`.
pub fn jucys_murphy<F: Field>(n: usize, k: usize) -> Element<F> {
    let mut acc = Element::zero(n);
    for j in 1..k {
        let mut perm: Vec<u8> = (1..=n as u8).collect();
        perm.swap(j - 1, k - 1);
        let t = permutation::<F>(&perm);
        let one = Element::one(n);
        acc = acc.add(&one.add(&c(n, j).mul(&c(n, k))).mul(&t));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// Number of PBW terms in `lhs - rhs` when the identity fails.
    pub residual_terms: usize,
}

fn check<F: Field>(name: String, lhs: Element<F>, rhs: Element<F>) -> IdentityCheck {
    let d = lhs.sub(&rhs);
    IdentityCheck { name, holds: d.is_zero(), residual_terms: d.terms().count() }
}

/// Every intertwiner identity on `n` strands, evaluated in normal form.
pub fn intertwiner_identities<F: Field>(n: usize) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let phi: Vec<Element<F>> = (1..n).map(|k| intertwiner::<F>(n, k)).collect();
    let two = F::one() + F::one();
    for k in 1..n {
        let p = &phi[k - 1];
        let (xk, xk1) = (x::<F>(n, k), x::<F>(n, k + 1));
        let (xk2, xk12) = (xk.mul(&xk), xk1.mul(&xk1));
        let diff = xk2.sub(&xk12);
        let rhs = xk2.add(&xk12).scale(&two).sub(&diff.mul(&diff));
        out.push(check(format!("Φ_{k}² = 2(x_{k}² + x_{}²) - (x_{k}² - x_{}²)²", k + 1, k + 1), p.mul(p), rhs));
        for l in 1..=n {
            let target = match l {
                l if l == k => k + 1,
                l if l == k + 1 => k,
                l => l,
            };
            out.push(check(format!("Φ_{k} x_{l} = x_{target} Φ_{k}"), p.mul(&x(n, l)), x(n, target).mul(p)));
            out.push(check(format!("Φ_{k} c_{l} = c_{target} Φ_{k}"), p.mul(&c(n, l)), c(n, target).mul(p)));
        }
    }
    for j in 1..n {
        for k in j + 2..n {
            let (a, b) = (&phi[j - 1], &phi[k - 1]);
            out.push(check(format!("Φ_{j} Φ_{k} = Φ_{k} Φ_{j}"), a.mul(b), b.mul(a)));
        }
    }
    for k in 1..n.saturating_sub(1) {
        let (a, b) = (&phi[k - 1], &phi[k]);
        out.push(check(
            format!("Φ_{k} Φ_{} Φ_{k} = Φ_{} Φ_{k} Φ_{}", k + 1, k + 1, k + 1),
            a.mul(b).mul(a),
            b.mul(a).mul(b),
        ));
    }
    out
}
