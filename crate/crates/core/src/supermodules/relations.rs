//! The defining relations checked as exact matrix identities.

use serde::Serialize;

use super::{Matrix, SuperModule};
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    /// Relation family: `braid`, `poly`, `clifford`, `px1`, `px2`, `pc`,
    /// `xc`, or `parity`.
    pub family: &'static str,
    pub relation: String,
    pub holds: bool,
    /// First entry where the two sides differ.
    pub witness: Option<String>,
}

fn compare<F: Field>(family: &'static str, relation: String, lhs: &Matrix<F>, rhs: &Matrix<F>) -> RelationCheck {
    let d = lhs.first_difference(rhs);
    RelationCheck {
        family,
        relation,
        holds: d.is_none(),
        witness: d.map(|(r, c, a, b)| format!("entry ({r},{c}): lhs {a}, rhs {b}")),
    }
}

/// Every defining relation whose generators act on `m`, plus parity
/// homogeneity of the generator matrices.
pub fn check_relations<F: Field>(m: &SuperModule<F>) -> Vec<RelationCheck> {
    let n = m.n();
    let dim = m.dim();
    let id = Matrix::<F>::identity(dim);
    let mut out = Vec::new();

    let parity = m.parity_violation();
    out.push(RelationCheck {
        family: "parity",
        relation: "s, x even and c odd".into(),
        holds: parity.is_none(),
        witness: parity.map(|(g, r, c)| format!("{g} has entry ({r},{c}) across the grading")),
    });

    for k in 1..n {
        let Some(s) = m.s(k) else { continue };
        out.push(compare("braid", format!("s{k}² = 1"), &s.mul(s), &id));
        for l in k + 2..n {
            if let Some(t) = m.s(l) {
                out.push(compare("braid", format!("s{k} s{l} = s{l} s{k}"), &s.mul(t), &t.mul(s)));
            }
        }
        if let Some(t) = m.s(k + 1) {
            out.push(compare(
                "braid",
                format!("s{k} s{} s{k} = s{} s{k} s{}", k + 1, k + 1, k + 1),
                &s.mul(t).mul(s),
                &t.mul(s).mul(t),
            ));
        }
    }
    for j in 1..=n {
        for k in j + 1..=n {
            let (a, b) = (m.x(j), m.x(k));
            out.push(compare("poly", format!("x{j} x{k} = x{k} x{j}"), &a.mul(b), &b.mul(a)));
        }
    }
    for j in 1..=n {
        let cj = m.c(j);
        out.push(compare("clifford", format!("c{j}² = 1"), &cj.mul(cj), &id));
        for k in j + 1..=n {
            let ck = m.c(k);
            out.push(compare("clifford", format!("c{j} c{k} = -c{k} c{j}"), &cj.mul(ck), &ck.mul(cj).scale(&-F::one())));
        }
    }
    for i in 1..n {
        let Some(s) = m.s(i) else { continue };
        let cc = m.c(i).mul(m.c(i + 1));
        out.push(compare(
            "px1",
            format!("s{i} x{i} = x{} s{i} - (1 + c{i} c{})", i + 1, i + 1),
            &s.mul(m.x(i)),
            &m.x(i + 1).mul(s).sub(&id.add(&cc)),
        ));
        for j in (1..=n).filter(|j| *j != i && *j != i + 1) {
            out.push(compare("px2", format!("s{i} x{j} = x{j} s{i}"), &s.mul(m.x(j)), &m.x(j).mul(s)));
        }
        out.push(compare("pc", format!("s{i} c{i} = c{} s{i}", i + 1), &s.mul(m.c(i)), &m.c(i + 1).mul(s)));
        out.push(compare("pc", format!("s{i} c{} = c{i} s{i}", i + 1), &s.mul(m.c(i + 1)), &m.c(i).mul(s)));
        for j in (1..=n).filter(|j| *j != i && *j != i + 1) {
            out.push(compare("pc", format!("s{i} c{j} = c{j} s{i}"), &s.mul(m.c(j)), &m.c(j).mul(s)));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let (x, c) = (m.x(i), m.c(j));
            if i == j {
                out.push(compare("xc", format!("x{i} c{i} = -c{i} x{i}"), &x.mul(c), &c.mul(x).scale(&-F::one())));
            } else {
                out.push(compare("xc", format!("x{i} c{j} = c{j} x{i}"), &x.mul(c), &c.mul(x)));
            }
        }
    }
    out
}
