//! Weight spaces, semisimplicity of the polynomial generators, the
//! endomorphism superalgebra, and the normalized intertwiners on weight
//! spaces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::{rank, Matrix, SuperModule, SupermoduleError};
use crate::combinatorics::Characteristic;
use crate::scalars::{q_value, sqrt_q, Field};

/// `∏ (t - λ)^e` over the listed roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial<F> {
    pub roots: Vec<(F, u32)>,
}

impl<F: Field> MinimalPolynomial<F> {
    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|(_, e)| e).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.roots.iter().all(|(_, e)| *e <= 1)
    }

    pub fn exponent(&self, root: &F) -> u32 {
        self.roots.iter().find(|(r, _)| r == root).map_or(0, |(_, e)| *e)
    }
}

impl<F: Field> fmt::Display for MinimalPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .roots
            .iter()
            .map(|(r, e)| {
                let base = if r.is_zero() { "t".to_string() } else { format!("(t - {r})") };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

fn candidate_indices<F: Field>(m: &SuperModule<F>) -> Vec<u32> {
    match Characteristic::new(F::CHARACTERISTIC).ok().and_then(|p| p.index_max()) {
        Some(h) => (0..=h).collect(),
        None => m.indices().iter().copied().collect(),
    }
}

/// Dimension of the generalized eigenspace of `a` at `lambda` and the size
/// of the largest Jordan block there.
fn generalized<F: Field>(a: &Matrix<F>, lambda: &F) -> (usize, u32) {
    let b = a.sub(&Matrix::scalar(a.rows(), lambda.clone()));
    let mut nul = b.nullity();
    if nul == 0 {
        return (0, 0);
    }
    let mut power = b.clone();
    let mut e = 1;
    loop {
        power = power.mul(&b);
        let next = power.nullity();
        if next == nul {
            return (nul, e);
        }
        nul = next;
        e += 1;
    }
}

/// Minimal polynomial of `a`, assuming its eigenvalues lie among `candidates`.
pub fn minimal_polynomial<F: Field>(
    a: &Matrix<F>,
    candidates: &[F],
    name: &str,
) -> Result<MinimalPolynomial<F>, SupermoduleError> {
    let mut roots = Vec::new();
    let mut covered = 0;
    for lambda in candidates {
        if roots.iter().any(|(r, _)| r == lambda) {
            continue;
        }
        let (g, e) = generalized(a, lambda);
        if g > 0 {
            covered += g;
            roots.push((lambda.clone(), e));
        }
    }
    if covered != a.rows() {
        return Err(SupermoduleError::SpectrumNotCovered(name.to_string()));
    }
    Ok(MinimalPolynomial { roots })
}

fn x_candidates<F: Field>(m: &SuperModule<F>) -> Vec<F> {
    let mut out = Vec::new();
    for i in candidate_indices(m) {
        let r = sqrt_q::<F>(i);
        out.push(-r.clone());
        out.push(r);
    }
    out
}

fn x2_candidates<F: Field>(m: &SuperModule<F>) -> Vec<F> {
    candidate_indices(m).into_iter().map(q_value::<F>).collect()
}

/// Minimal polynomials of `x_1, …, x_n`.
pub fn x_minimal_polynomials<F: Field>(m: &SuperModule<F>) -> Result<Vec<MinimalPolynomial<F>>, SupermoduleError> {
    let cands = x_candidates(m);
    (1..=m.n()).map(|k| minimal_polynomial(m.x(k), &cands, &format!("x{k}"))).collect()
}

/// Do `x_1, …, x_n` act semisimply?
pub fn is_x_semisimple<F: Field>(m: &SuperModule<F>) -> Result<bool, SupermoduleError> {
    Ok(x_minimal_polynomials(m)?.iter().all(MinimalPolynomial::is_squarefree))
}

/// Do `x_1², …, x_n²` act semisimply?
pub fn is_x_squared_semisimple<F: Field>(m: &SuperModule<F>) -> Result<bool, SupermoduleError> {
    let cands = x2_candidates(m);
    for (k, sq) in m.x_squares().iter().enumerate() {
        if !minimal_polynomial(sq, &cands, &format!("x{}²", k + 1))?.is_squarefree() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_commuting<F: Field>(squares: &[Matrix<F>]) -> Result<(), SupermoduleError> {
    for k in 0..squares.len() {
        for l in k + 1..squares.len() {
            if squares[k].mul(&squares[l]) != squares[l].mul(&squares[k]) {
                return Err(SupermoduleError::NonCommuting { k: k + 1, l: l + 1 });
            }
        }
    }
    Ok(())
}

/// Dimensions of the simultaneous generalized eigenspaces of the `x_k²`,
/// keyed by the weight `(i_1, …, i_n)` with `x_k² ~ q(i_k)`.
pub fn weight_decomposition<F: Field>(m: &SuperModule<F>) -> Result<BTreeMap<Vec<u32>, usize>, SupermoduleError> {
    let squares = m.x_squares();
    check_commuting(&squares)?;
    let indices = candidate_indices(m);
    let q_to_index: HashMap<F, u32> = indices.iter().map(|i| (q_value::<F>(*i), *i)).collect();
    let mut out = BTreeMap::new();
    if squares.iter().all(Matrix::is_diagonal) {
        for a in 0..m.dim() {
            let mut w = Vec::with_capacity(m.n());
            for (k, sq) in squares.iter().enumerate() {
                let v = sq.get(a, a);
                let i = q_to_index.get(&v).ok_or_else(|| SupermoduleError::SpectrumNotCovered(format!("x{}²", k + 1)))?;
                w.push(*i);
            }
            *out.entry(w).or_insert(0) += 1;
        }
        return Ok(out);
    }
    // Per generator, the power of (x_k² - q(i)) whose kernel is the generalized eigenspace.
    let mut options: Vec<Vec<(u32, Matrix<F>)>> = Vec::new();
    for sq in &squares {
        let mut opts = Vec::new();
        for i in &indices {
            let q = q_value::<F>(*i);
            let (g, e) = generalized(sq, &q);
            if g > 0 {
                opts.push((*i, sq.sub(&Matrix::scalar(sq.rows(), q)).pow(e)));
            }
        }
        options.push(opts);
    }
    fn rec<F: Field>(
        options: &[Vec<(u32, Matrix<F>)>],
        chosen: &mut Vec<u32>,
        stack: &mut Vec<Matrix<F>>,
        out: &mut BTreeMap<Vec<u32>, usize>,
        dim: usize,
    ) {
        let k = chosen.len();
        let nul = if stack.is_empty() { dim } else { Matrix::vstack(stack).nullity() };
        if nul == 0 {
            return;
        }
        if k == options.len() {
            out.insert(chosen.clone(), nul);
            return;
        }
        for (i, p) in &options[k] {
            chosen.push(*i);
            stack.push(p.clone());
            rec(options, chosen, stack, out, dim);
            stack.pop();
            chosen.pop();
        }
    }
    rec(&options, &mut Vec::new(), &mut Vec::new(), &mut out, m.dim());
    if out.values().sum::<usize>() != m.dim() {
        return Err(SupermoduleError::SpectrumNotCovered("x²".into()));
    }
    Ok(out)
}

/// Coordinates spanning the weight space `w`, for modules on which every
/// `x_k²` is diagonal.
pub fn weight_space_indices<F: Field>(m: &SuperModule<F>, w: &[u32]) -> Result<Vec<usize>, SupermoduleError> {
    let squares = m.x_squares();
    for (k, sq) in squares.iter().enumerate() {
        if !sq.is_diagonal() {
            return Err(SupermoduleError::NotDiagonal(k + 1));
        }
    }
    let q: Vec<F> = w.iter().map(|i| q_value::<F>(*i)).collect();
    Ok((0..m.dim()).filter(|a| squares.iter().zip(&q).all(|(sq, v)| sq.get(*a, *a) == *v)).collect())
}

/// The normalized intertwiner `(s_k - Ξ_k) Ω_k⁻¹` from the weight space `w`
/// to the weight space `s_k · w`, as a matrix in the coordinates of
/// [`weight_space_indices`].
pub fn phi_hat<F: Field>(m: &SuperModule<F>, w: &[u32], k: usize) -> Result<Matrix<F>, SupermoduleError> {
    let (a, b) = (w[k - 1], w[k]);
    if a == b || a == b + 1 || b == a + 1 {
        return Err(SupermoduleError::NotAdmissible { k, weight: format!("{w:?}") });
    }
    let src = weight_space_indices(m, w)?;
    if src.is_empty() {
        return Err(SupermoduleError::EmptyWeightSpace(format!("{w:?}")));
    }
    let mut swapped = w.to_vec();
    swapped.swap(k - 1, k);
    let tgt = weight_space_indices(m, &swapped)?;
    let s = m.s(k).ok_or_else(|| SupermoduleError::MissingGenerator(format!("s{k}")))?;
    let d = q_value::<F>(a) - q_value::<F>(b);
    let (xk, xk1) = (m.x(k), m.x(k + 1));
    let numer = xk.add(xk1).add(&m.c(k).mul(m.c(k + 1)).mul(&xk.sub(xk1)));
    let xi = numer.scale(&-d.try_inv()?);
    let om_inv = super::omega::<F>(a, b)?.try_inv()?;
    let full = s.sub(&xi).scale(&om_inv);
    let all: Vec<usize> = (0..m.dim()).collect();
    let cols = full.restrict(&all, &src);
    let inside = cols.restrict(&tgt, &(0..src.len()).collect::<Vec<_>>());
    if inside.nnz() != cols.nnz() {
        return Err(SupermoduleError::Malformed(format!("Φ̂_{k} leaves the weight space {swapped:?}")));
    }
    Ok(inside)
}

/// Dimensions of the even and odd parts of the endomorphism superalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EndoReport {
    pub even: usize,
    pub odd: usize,
}

impl EndoReport {
    pub fn total(&self) -> usize {
        self.even + self.odd
    }
}

/// Solve `T g = (-1)^{|T||g|} g T` for every generator `g`, separately for
/// even and odd `T`. Unknowns that a diagonal even generator forces to zero
/// are dropped before elimination.
pub fn end_dimension<F: Field>(m: &SuperModule<F>) -> EndoReport {
    let dim = m.dim();
    let gens = m.generators();
    let diag: Vec<&Matrix<F>> = gens.iter().filter(|(g, a)| !g.is_odd() && a.is_diagonal()).map(|(_, a)| *a).collect();
    let signature: Vec<Vec<F>> = (0..dim).map(|a| diag.iter().map(|d| d.get(a, a)).collect()).collect();
    let solve = |odd: bool| -> usize {
        let mut var: HashMap<(usize, usize), usize> = HashMap::new();
        for a in 0..dim {
            for b in 0..dim {
                if (m.parity()[a] != m.parity()[b]) == odd && signature[a] == signature[b] {
                    let id = var.len();
                    var.insert((a, b), id);
                }
            }
        }
        let mut rows: Vec<Vec<(usize, F)>> = Vec::new();
        for (g, a) in &gens {
            if !g.is_odd() && a.is_diagonal() {
                continue;
            }
            let eps = if odd && g.is_odd() { -F::one() } else { F::one() };
            let at = a.transpose();
            for i in 0..dim {
                for j in 0..dim {
                    let mut row: BTreeMap<usize, F> = BTreeMap::new();
                    for (l, v) in a.column(j) {
                        if let Some(id) = var.get(&(i, *l)) {
                            let e = row.entry(*id).or_insert_with(F::zero);
                            *e = e.clone() + v.clone();
                        }
                    }
                    for (l, v) in at.column(i) {
                        if let Some(id) = var.get(&(*l, j)) {
                            let e = row.entry(*id).or_insert_with(F::zero);
                            *e = e.clone() - eps.clone() * v.clone();
                        }
                    }
                    let row: Vec<(usize, F)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        var.len() - rank(rows, var.len())
    };
    EndoReport { even: solve(false), odd: solve(true) }
}
