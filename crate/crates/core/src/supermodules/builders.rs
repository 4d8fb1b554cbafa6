//! Constructions of modules: the rank-one modules `L(i)`, their outer
//! tensor products, the seminormal modules `D^i`, induced modules, and the
//! small non-splittable examples.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Matrix, SuperModule, SupermoduleError};
use crate::algebra::{jucys_murphy, permutation, Generator};
use crate::combinatorics::{Characteristic, Weight};
use crate::scalars::{q_value, sqrt_q, Field, ScalarError};

fn characteristic<F: Field>() -> Result<Characteristic, SupermoduleError> {
    Ok(Characteristic::new(F::CHARACTERISTIC)?)
}

fn bit(b: usize, n: usize, k: usize) -> bool {
    (b >> (n - k)) & 1 == 1
}

fn bits_label(b: usize, n: usize) -> String {
    (1..=n).map(|k| if bit(b, n, k) { '1' } else { '0' }).collect()
}

/// The outer tensor product `L(i_1) ⊠ ⋯ ⊠ L(i_n)` as a module over the
/// polynomial-Clifford subalgebra (no `s_k` act). Basis vectors are bit
/// vectors `b`, with `b_1` the most significant bit.
pub fn weight_module<F: Field>(entries: &[u32]) -> Result<SuperModule<F>, SupermoduleError> {
    let p = characteristic::<F>()?;
    for i in entries {
        if !p.contains(*i) {
            return Err(SupermoduleError::IndexOutOfRange { index: *i, p: p.get() });
        }
    }
    let n = entries.len();
    let dim = 1usize << n;
    let roots: Vec<F> = entries.iter().map(|i| sqrt_q::<F>(*i)).collect();
    let x = (1..=n)
        .map(|k| {
            Matrix::diagonal(
                (0..dim).map(|b| if bit(b, n, k) { -roots[k - 1].clone() } else { roots[k - 1].clone() }).collect(),
            )
        })
        .collect();
    let c = (1..=n)
        .map(|k| {
            Matrix::from_triplets(
                dim,
                dim,
                (0..dim).map(|b| {
                    let before = (1..k).filter(|j| bit(b, n, *j)).count();
                    let v = if before % 2 == 1 { -F::one() } else { F::one() };
                    (b ^ (1 << (n - k)), b, v)
                }),
            )
        })
        .collect();
    SuperModule::new(
        (0..dim).map(|b| bits_label(b, n)).collect(),
        (0..dim).map(|b| b.count_ones() % 2 == 1).collect(),
        vec![None; n.saturating_sub(1)],
        x,
        c,
        entries.iter().copied().collect(),
    )
}

/// `L(i)`: `x_1 v_0 = √q(i) v_0`, `x_1 v_1 = -√q(i) v_1`, `c_1` swaps.
pub fn build_l<F: Field>(i: u32) -> Result<SuperModule<F>, SupermoduleError> {
    weight_module(&[i])
}

/// `A ⊠ B`. Generators of `B` pick up the sign `(-1)^{|g||a|}`.
pub fn boxtimes<F: Field>(a: &SuperModule<F>, b: &SuperModule<F>) -> Result<SuperModule<F>, SupermoduleError> {
    let (ia, ib) = (Matrix::identity(a.dim()), Matrix::identity(b.dim()));
    let pa = a.parity_operator();
    let mut s = Vec::new();
    s.extend(a.s.iter().map(|m| m.as_ref().map(|m| m.kron(&ib))));
    if a.n() > 0 && b.n() > 0 {
        s.push(None);
    }
    s.extend(b.s.iter().map(|m| m.as_ref().map(|m| ia.kron(m))));
    let mut x: Vec<Matrix<F>> = a.x.iter().map(|m| m.kron(&ib)).collect();
    x.extend(b.x.iter().map(|m| ia.kron(m)));
    let mut c: Vec<Matrix<F>> = a.c.iter().map(|m| m.kron(&ib)).collect();
    c.extend(b.c.iter().map(|m| pa.kron(m)));
    let mut labels = Vec::new();
    let mut parity = Vec::new();
    for (la, pa) in a.labels.iter().zip(&a.parity) {
        for (lb, pb) in b.labels.iter().zip(&b.parity) {
            labels.push(format!("{la}⊗{lb}"));
            parity.push(pa ^ pb);
        }
    }
    SuperModule::new(labels, parity, s, x, c, a.indices.union(&b.indices).copied().collect())
}

/// `Ξ_k = -((x_k + x_{k+1}) + c_k c_{k+1}(x_k - x_{k+1})) / (x_k² - x_{k+1}²)`
/// on a module where the denominator acts as a nonzero scalar.
pub fn xi_operator<F: Field>(m: &SuperModule<F>, k: usize) -> Result<Matrix<F>, SupermoduleError> {
    let (xk, xk1) = (m.x(k), m.x(k + 1));
    let d = xk.mul(xk).sub(&xk1.mul(xk1)).as_scalar().ok_or(SupermoduleError::NotScalarDifference { k })?;
    let inv = d.try_inv().map_err(|_| SupermoduleError::NotScalarDifference { k })?;
    Ok(xi_numerator(xk, xk1, m.c(k), m.c(k + 1)).scale(&-inv))
}

fn xi_numerator<F: Field>(xk: &Matrix<F>, xk1: &Matrix<F>, ck: &Matrix<F>, ck1: &Matrix<F>) -> Matrix<F> {
    xk.add(xk1).add(&ck.mul(ck1).mul(&xk.sub(xk1)))
}

/// `Ω = √(1 - 2(q(a) + q(b)) / (q(a) - q(b))²)`.
pub fn omega<F: Field>(a: u32, b: u32) -> Result<F, SupermoduleError> {
    let (qa, qb) = (a as i64 * (a as i64 + 1), b as i64 * (b as i64 + 1));
    let d2 = (qa - qb) * (qa - qb);
    let v = F::from_ratio(d2 - 2 * (qa + qb), d2)?;
    Ok(v.sqrt_prime()?)
}

/// The seminormal module `D^w`: one copy of the thick weight module per
/// member of the class of `w`, with `s_k` acting by `Ξ_k` on each copy plus
/// `Ω_k` times the identification with the copy of `s_k · j` when `s_k` is
/// admissible.
pub fn build_d<F: Field>(w: &Weight) -> Result<SuperModule<F>, SupermoduleError> {
    if w.p().get() != F::CHARACTERISTIC {
        return Err(ScalarError::CharacteristicMismatch(w.p().get(), F::CHARACTERISTIC).into());
    }
    if let Some(v) = w.wprime_violation() {
        return Err(SupermoduleError::NotInWprime { weight: w.to_string(), reason: v.to_string() });
    }
    let n = w.len();
    let block = 1usize << n;
    let base = weight_module::<F>(w.entries())?;
    let class = w.class();
    let index: BTreeMap<&[u32], usize> = class.iter().enumerate().map(|(a, m)| (m.weight.entries(), a)).collect();
    let dim = block * class.len();

    let mut x_trip: Vec<Vec<(usize, usize, F)>> = vec![Vec::new(); n];
    let mut c_trip: Vec<Vec<(usize, usize, F)>> = vec![Vec::new(); n];
    let mut s_trip: Vec<Vec<(usize, usize, F)>> = vec![Vec::new(); n.saturating_sub(1)];
    let mut labels = Vec::with_capacity(dim);
    let mut parity = Vec::with_capacity(dim);
    for (a, member) in class.iter().enumerate() {
        let off = a * block;
        let mut tau_inv = vec![0usize; n];
        for (m, t) in member.tau.iter().enumerate() {
            tau_inv[t - 1] = m + 1;
        }
        let xs: Vec<&Matrix<F>> = (1..=n).map(|k| base.x(tau_inv[k - 1])).collect();
        let cs: Vec<&Matrix<F>> = (1..=n).map(|k| base.c(tau_inv[k - 1])).collect();
        for k in 0..n {
            x_trip[k].extend(xs[k].triplets().map(|(r, c, v)| (r + off, c + off, v.clone())));
            c_trip[k].extend(cs[k].triplets().map(|(r, c, v)| (r + off, c + off, v.clone())));
        }
        let j = member.weight.entries();
        for k in 1..n {
            let d = q_value::<F>(j[k - 1]) - q_value::<F>(j[k]);
            let xi = xi_numerator(xs[k - 1], xs[k], cs[k - 1], cs[k]).scale(&-d.try_inv()?);
            s_trip[k - 1].extend(xi.triplets().map(|(r, c, v)| (r + off, c + off, v.clone())));
            if member.weight.admissible(k) {
                let target = index[member.weight.swapped(k).entries()] * block;
                let om = omega::<F>(j[k - 1], j[k])?;
                s_trip[k - 1].extend((0..block).map(|b| (target + b, off + b, om.clone())));
            }
        }
        for b in 0..block {
            labels.push(format!("{}|{}", member.weight, bits_label(b, n)));
            parity.push(base.parity()[b]);
        }
    }
    let mk = |t: Vec<(usize, usize, F)>| Matrix::from_triplets(dim, dim, t);
    SuperModule::new(
        labels,
        parity,
        s_trip.into_iter().map(|t| Some(mk(t))).collect(),
        x_trip.into_iter().map(mk).collect(),
        c_trip.into_iter().map(mk).collect(),
        base.indices().clone(),
    )
}

/// The rank-two module `V(i,j)`: `L(i) ⊠ L(j)` with `s_1 = Ξ_1` when
/// `i = j ± 1`, and the module induced from `L(i) ⊠ L(j)` otherwise.
pub fn build_v2<F: Field>(i: u32, j: u32) -> Result<SuperModule<F>, SupermoduleError> {
    let mut base = weight_module::<F>(&[i, j])?;
    if i == j + 1 || j == i + 1 {
        let xi = xi_operator(&base, 1)?;
        base.set_s(1, xi);
        Ok(base)
    } else {
        build_induced(&base, &[1, 1])
    }
}

/// `V(0,0) ⊠ L(1)` with `s_2 = Ξ_2`.
pub fn build_v001<F: Field>() -> Result<SuperModule<F>, SupermoduleError> {
    let mut m = boxtimes(&build_v2::<F>(0, 0)?, &build_l::<F>(1)?)?;
    let xi = xi_operator(&m, 2)?;
    m.set_s(2, xi);
    Ok(m)
}

/// `L(1) ⊠ V(0,0)` with `s_1 = Ξ_1`.
pub fn build_v100<F: Field>() -> Result<SuperModule<F>, SupermoduleError> {
    let mut m = boxtimes(&build_l::<F>(1)?, &build_v2::<F>(0, 0)?)?;
    let xi = xi_operator(&m, 1)?;
    m.set_s(1, xi);
    Ok(m)
}

/// Induction from `V(0,0) ⊠ L(j)` over the parabolic subalgebra of shape `(2,1)`.
pub fn induced_v00_l<F: Field>(j: u32) -> Result<SuperModule<F>, SupermoduleError> {
    build_induced(&boxtimes(&build_v2::<F>(0, 0)?, &build_l::<F>(j)?)?, &[2, 1])
}

/// Induction of `L(0) ⊠ ⋯ ⊠ L(0)` from the polynomial-Clifford subalgebra.
pub fn kato_module<F: Field>(n: usize) -> Result<SuperModule<F>, SupermoduleError> {
    build_induced(&weight_module::<F>(&vec![0; n])?, &vec![1; n])
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|v| a[*v as usize - 1]).collect()
}

fn inverse(a: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len()];
    for (m, v) in a.iter().enumerate() {
        out[*v as usize - 1] = m as u8 + 1;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8 + 1);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Sort the one-line notation within each block: the minimal representative
/// of `σ S_μ`.
fn minimal_rep(sigma: &[u8], blocks: &[usize]) -> Vec<u8> {
    let mut out = sigma.to_vec();
    let mut start = 0;
    for b in blocks {
        out[start..start + b].sort_unstable();
        start += b;
    }
    out
}

/// `ind` from the parabolic subalgebra of shape `blocks` (which must act on
/// `base`) to the full algebra. Basis `w ⊗ m` over minimal left coset
/// representatives `w`.
///
/// `g·w` is brought to the form `Σ σ x^α c^β` by applying the
/// anti-automorphism fixing every generator to the normal form of `w⁻¹·g`;
/// then `σ = w'u` with `u` in the parabolic subgroup.
pub fn build_induced<F: Field>(base: &SuperModule<F>, blocks: &[usize]) -> Result<SuperModule<F>, SupermoduleError> {
    let n = base.n();
    if blocks.iter().sum::<usize>() != n || blocks.contains(&0) {
        return Err(SupermoduleError::BadComposition { blocks: blocks.to_vec(), n });
    }
    let mut start = 0;
    for b in blocks {
        for k in start + 1..start + b {
            if base.s(k).is_none() {
                return Err(SupermoduleError::MissingGenerator(format!("s{k}")));
            }
        }
        start += b;
    }
    let reps: Vec<Vec<u8>> = permutations(n).into_iter().filter(|w| minimal_rep(w, blocks) == *w).collect();
    let rep_index: HashMap<Vec<u8>, usize> = reps.iter().enumerate().map(|(a, w)| (w.clone(), a)).collect();
    let bd = base.dim();
    let dim = bd * reps.len();

    let mut pc_cache: HashMap<(Vec<u32>, u32), Matrix<F>> = HashMap::new();
    let mut u_cache: HashMap<Vec<u8>, Matrix<F>> = HashMap::new();
    let mut matrix_of = |g: Generator| -> Result<Matrix<F>, SupermoduleError> {
        let mut trip = Vec::new();
        for (r, w) in reps.iter().enumerate() {
            let e = permutation::<F>(&inverse(w)).mul_gen(g);
            for (mono, coeff) in e.terms() {
                let sigma = inverse(&mono.perm);
                let wmin = minimal_rep(&sigma, blocks);
                let u = compose(&inverse(&wmin), &sigma);
                let k = mono.beta.count_ones();
                let flips = (k * (k.saturating_sub(1)) / 2) as usize
                    + (0..n).filter(|b| mono.beta & (1 << b) != 0).map(|b| mono.alpha[b] as usize).sum::<usize>();
                let coeff = if flips % 2 == 1 { -coeff.clone() } else { coeff.clone() };
                let key = (mono.alpha.clone(), mono.beta);
                if !pc_cache.contains_key(&key) {
                    let mut acc = Matrix::identity(bd);
                    for (j, a) in mono.alpha.iter().enumerate() {
                        for _ in 0..*a {
                            acc = acc.mul(base.x(j + 1));
                        }
                    }
                    for j in 0..n {
                        if mono.beta & (1 << j) != 0 {
                            acc = acc.mul(base.c(j + 1));
                        }
                    }
                    pc_cache.insert(key.clone(), acc);
                }
                if !u_cache.contains_key(&u) {
                    u_cache.insert(u.clone(), base.permutation_matrix(&u)?);
                }
                let blockm = u_cache[&u].mul(&pc_cache[&key]);
                let target = rep_index[&wmin] * bd;
                let off = r * bd;
                trip.extend(blockm.triplets().map(|(a, b, v)| (target + a, off + b, v.clone() * coeff.clone())));
            }
        }
        Ok(Matrix::from_triplets(dim, dim, trip))
    };
    let s = (1..n).map(|k| matrix_of(Generator::S(k)).map(Some)).collect::<Result<Vec<_>, _>>()?;
    let x = (1..=n).map(|k| matrix_of(Generator::X(k))).collect::<Result<Vec<_>, _>>()?;
    let c = (1..=n).map(|k| matrix_of(Generator::C(k))).collect::<Result<Vec<_>, _>>()?;
    let mut labels = Vec::with_capacity(dim);
    let mut parity = Vec::with_capacity(dim);
    for w in &reps {
        let ws: String = w.iter().map(u8::to_string).collect();
        for (l, p) in base.labels().iter().zip(base.parity()) {
            labels.push(format!("[{ws}]⊗{l}"));
            parity.push(*p);
        }
    }
    SuperModule::new(labels, parity, s, x, c, base.indices().clone())
}

/// The basic spin module of the finite superalgebra, with basis `c^β` and
/// `x_k` acting through the Jucys-Murphy elements `L_k`.
pub fn basic_spin<F: Field>(n: usize) -> Result<SuperModule<F>, SupermoduleError> {
    let dim = 1usize << n;
    let c = (1..=n)
        .map(|k| {
            Matrix::from_triplets(
                dim,
                dim,
                (0..dim).map(|b| {
                    let before = (1..k).filter(|j| bit(b, n, *j)).count();
                    (b ^ (1 << (n - k)), b, if before % 2 == 1 { -F::one() } else { F::one() })
                }),
            )
        })
        .collect();
    let s = (1..n)
        .map(|i| {
            Some(Matrix::from_triplets(
                dim,
                dim,
                (0..dim).map(|b| {
                    let (bi, bj) = (bit(b, n, i), bit(b, n, i + 1));
                    let mut t = b;
                    if bi != bj {
                        t ^= (1 << (n - i)) | (1 << (n - i - 1));
                    }
                    (t, b, if bi && bj { -F::one() } else { F::one() })
                }),
            ))
        })
        .collect();
    let indices: BTreeSet<u32> = match characteristic::<F>()?.index_max() {
        Some(h) => (0..=h).collect(),
        None => (0..=n as u32).collect(),
    };
    let mut m = SuperModule::new(
        (0..dim).map(|b| format!("c^{}", bits_label(b, n))).collect(),
        (0..dim).map(|b| b.count_ones() % 2 == 1).collect(),
        s,
        vec![Matrix::zeros(dim, dim); n],
        c,
        indices,
    )?;
    for k in 2..=n {
        let l = m.act(&jucys_murphy::<F>(n, k))?;
        m.set_x(k, l);
    }
    Ok(m)
}
