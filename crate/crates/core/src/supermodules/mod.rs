//! Super vector spaces with explicit generator matrices, the module
//! constructions, and their analysis.
//!
//! A [`SuperModule`] stores one sparse matrix per generator. Matrices for
//! `s_k` may be absent, which is how modules over parabolic subalgebras
//! (the inputs of induction) are represented.

mod analysis;
mod builders;
mod json;
mod matrix;
mod relations;

use std::collections::{BTreeSet, HashMap};

pub use analysis::{
    end_dimension, is_x_semisimple, is_x_squared_semisimple, minimal_polynomial, phi_hat, weight_decomposition,
    weight_space_indices, x_minimal_polynomials, EndoReport, MinimalPolynomial,
};
pub use builders::{
    basic_spin, boxtimes, build_d, build_induced, build_l, build_v001, build_v100, build_v2, induced_v00_l, kato_module,
    omega, weight_module, xi_operator,
};
pub use json::{ModuleFile, SCHEMA_VERSION};
pub use matrix::{rank, SparseMatrix};
pub use relations::{check_relations, RelationCheck};

use crate::algebra::{reduced_word, Element, Generator};
use crate::combinatorics::CombinatoricsError;
use crate::scalars::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SupermoduleError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error("weight {weight} is not in W′: {reason}")]
    NotInWprime { weight: String, reason: String },
    #[error("index {index} is outside the index set for p = {p}")]
    IndexOutOfRange { index: u32, p: u32 },
    #[error("generator {0} has no action on this module")]
    MissingGenerator(String),
    #[error("matrix for {name} is {rows}x{cols}, expected {dim}x{dim}")]
    BadShape { name: String, rows: usize, cols: usize, dim: usize },
    #[error("x_{k}² - x_{}² does not act as a nonzero scalar", k + 1)]
    NotScalarDifference { k: usize },
    #[error("x_{k}² and x_{l}² do not commute")]
    NonCommuting { k: usize, l: usize },
    #[error("the eigenvalues of {0} are not among the expected candidates")]
    SpectrumNotCovered(String),
    #[error("x_{0}² is not diagonal; the weight spaces are not coordinate subspaces")]
    NotDiagonal(usize),
    #[error("s_{k} is not admissible for {weight}")]
    NotAdmissible { k: usize, weight: String },
    #[error("weight space {0} is zero")]
    EmptyWeightSpace(String),
    #[error("block sizes {blocks:?} do not sum to {n}")]
    BadComposition { blocks: Vec<usize>, n: usize },
    #[error("malformed module file: {0}")]
    Malformed(String),
}

pub type Matrix<F> = SparseMatrix<F>;

/// A module over the affine superalgebra on `n` strands, or over a
/// parabolic subalgebra of it when some `s_k` are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperModule<F> {
    n: usize,
    labels: Vec<String>,
    parity: Vec<bool>,
    s: Vec<Option<Matrix<F>>>,
    x: Vec<Matrix<F>>,
    c: Vec<Matrix<F>>,
    /// Indices `i` whose `q(i)` may occur as eigenvalues of the `x_k²`.
    indices: BTreeSet<u32>,
}

impl<F: Field> SuperModule<F> {
    pub fn new(
        labels: Vec<String>,
        parity: Vec<bool>,
        s: Vec<Option<Matrix<F>>>,
        x: Vec<Matrix<F>>,
        c: Vec<Matrix<F>>,
        indices: BTreeSet<u32>,
    ) -> Result<Self, SupermoduleError> {
        let n = x.len();
        let dim = labels.len();
        if parity.len() != dim || c.len() != n || s.len() != n.saturating_sub(1) {
            return Err(SupermoduleError::Malformed(format!(
                "{} labels, {} parities, {} s, {} x, {} c",
                dim,
                parity.len(),
                s.len(),
                x.len(),
                c.len()
            )));
        }
        let m = SuperModule { n, labels, parity, s, x, c, indices };
        for (g, mat) in m.generators() {
            if mat.rows() != dim || mat.cols() != dim {
                return Err(SupermoduleError::BadShape {
                    name: g.to_string(),
                    rows: mat.rows(),
                    cols: mat.cols(),
                    dim,
                });
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self) -> &[bool] {
        &self.parity
    }

    pub fn indices(&self) -> &BTreeSet<u32> {
        &self.indices
    }

    pub fn characteristic(&self) -> u32 {
        F::CHARACTERISTIC
    }

    pub fn s(&self, k: usize) -> Option<&Matrix<F>> {
        self.s.get(k.wrapping_sub(1)).and_then(Option::as_ref)
    }

    pub fn x(&self, k: usize) -> &Matrix<F> {
        &self.x[k - 1]
    }

    pub fn c(&self, k: usize) -> &Matrix<F> {
        &self.c[k - 1]
    }

    /// Whether every `s_k` acts.
    pub fn is_full(&self) -> bool {
        self.s.iter().all(Option::is_some)
    }

    pub fn generator(&self, g: Generator) -> Option<&Matrix<F>> {
        match g {
            Generator::S(k) => self.s(k),
            Generator::X(k) if (1..=self.n).contains(&k) => Some(self.x(k)),
            Generator::C(k) if (1..=self.n).contains(&k) => Some(self.c(k)),
            _ => None,
        }
    }

    /// The generators that act, in the order s, x, c.
    pub fn generators(&self) -> Vec<(Generator, &Matrix<F>)> {
        let mut out = Vec::new();
        for (k, m) in self.s.iter().enumerate() {
            if let Some(m) = m {
                out.push((Generator::S(k + 1), m));
            }
        }
        out.extend(self.x.iter().enumerate().map(|(k, m)| (Generator::X(k + 1), m)));
        out.extend(self.c.iter().enumerate().map(|(k, m)| (Generator::C(k + 1), m)));
        out
    }

    pub fn set_s(&mut self, k: usize, m: Matrix<F>) {
        self.s[k - 1] = Some(m);
    }

    pub fn set_x(&mut self, k: usize, m: Matrix<F>) {
        self.x[k - 1] = m;
    }

    /// `diag((-1)^{|v|})`.
    pub fn parity_operator(&self) -> Matrix<F> {
        Matrix::diagonal(self.parity.iter().map(|p| if *p { -F::one() } else { F::one() }).collect())
    }

    /// The parity-shifted module `ΠM`: same matrices, opposite grading.
    pub fn parity_shift(&self) -> Self {
        let mut out = self.clone();
        out.parity.iter_mut().for_each(|p| *p = !*p);
        out
    }

    /// Matrix of a permutation, through a reduced word in the `s_k`.
    pub fn permutation_matrix(&self, perm: &[u8]) -> Result<Matrix<F>, SupermoduleError> {
        let mut acc = Matrix::identity(self.dim());
        for k in reduced_word(perm) {
            let s = self.s(k).ok_or_else(|| SupermoduleError::MissingGenerator(format!("s{k}")))?;
            acc = acc.mul(s);
        }
        Ok(acc)
    }

    /// Matrix by which an algebra element acts.
    pub fn act(&self, e: &Element<F>) -> Result<Matrix<F>, SupermoduleError> {
        let dim = self.dim();
        let mut total = Matrix::zeros(dim, dim);
        let mut perms: HashMap<Vec<u8>, Matrix<F>> = HashMap::new();
        for (mono, coeff) in e.terms() {
            let mut acc = Matrix::identity(dim);
            for (k, a) in mono.alpha.iter().enumerate() {
                for _ in 0..*a {
                    acc = acc.mul(self.x(k + 1));
                }
            }
            for k in 0..self.n {
                if mono.beta & (1 << k) != 0 {
                    acc = acc.mul(self.c(k + 1));
                }
            }
            if !perms.contains_key(&mono.perm) {
                perms.insert(mono.perm.clone(), self.permutation_matrix(&mono.perm)?);
            }
            acc = acc.mul(&perms[&mono.perm]);
            total = total.add(&acc.scale(coeff));
        }
        Ok(total)
    }

    /// Is every generator homogeneous: `s`, `x` parity preserving, `c` parity reversing?
    pub fn parity_violation(&self) -> Option<(Generator, usize, usize)> {
        for (g, m) in self.generators() {
            for (r, c, v) in m.triplets() {
                if v.is_zero() {
                    continue;
                }
                let flips = self.parity[r] != self.parity[c];
                if flips != g.is_odd() {
                    return Some((g, r, c));
                }
            }
        }
        None
    }
}

impl<F: Field> SuperModule<F> {
    /// `x_k²` for each `k`.
    pub fn x_squares(&self) -> Vec<Matrix<F>> {
        self.x.iter().map(|m| m.mul(m)).collect()
    }
}
