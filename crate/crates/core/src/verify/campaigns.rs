use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{Check, Report, VerifyError};
use crate::algebra::{intertwiner_identities, jucys_murphy};
use crate::combinatorics::weights::{classes_of, enumerate_wprime};
use crate::combinatorics::{
    classify, classify_finite, strict_partitions, Characteristic, Classified, CombinatoricsError,
    ModuleType, Weight,
};
use crate::scalars::{q_value, Field};
use crate::supermodules::{
    build_d, build_v001, build_v100, build_v2, check_relations, end_dimension, induced_v00_l, is_x_semisimple,
    is_x_squared_semisimple, kato_module, weight_decomposition, x_minimal_polynomials, Matrix, SuperModule,
    SupermoduleError,
};
use crate::with_field;

const RELATIONS: &str = "defining relations of the affine superalgebra";
const PARITY: &str = "s and x are even, c is odd";
const SQUARES_COMMUTE: &str = "the x_k² commute";
const IN_WPRIME: &str = "weights of completely splittable simples form W′";
const SPLITTABLE: &str = "seminormal modules are completely splittable";
const WEIGHT_CLOSURE: &str = "weights of D(w) are the class of w, each weight space of thick dimension 2ⁿ";
const CLASS_SIZE: &str = "class size equals the number of (p-)standard tableaux";
const THICK_DIM: &str = "thick dimension 2ⁿ·f";
const SIMPLE_DIM: &str = "simple dimension 2^(n-⌊γ₀/2⌋)·f, type by parity of γ₀";
const COMMUTANT: &str = "endomorphisms of the thick module have dimension 2^γ₀ in the type's pattern";
const DISJOINT: &str = "distinct labels give non-isomorphic simples (disjoint weight sets)";
const COMPLETE: &str = "labels are in bijection with classes of W′";
const EMPTY: &str = "no completely splittable modules beyond (p+1)(p+3)/8 strands";
const X1_ZERO: &str = "x₁ acts by zero on modules of the finite superalgebra";
const JM: &str = "x_k acts as the Jucys-Murphy element L_k";
const FINITE_COUNT: &str = "finite labels are the admissible strict partitions";
const FINITE_DIM: &str = "dim D(λ) = 2^(n-⌊l(λ)/2⌋)·f";
const INTERTWINERS: &str = "intertwiner identities in the PBW basis";
const DICHOTOMY: &str = "x² is semisimple on V(i,j) iff i ≠ j or i = j = 0";
const NILPOTENT_PAIR: &str = "((1+c₁c₂)x₁+(1-c₁c₂)x₂) = 0 and x₁x₂ = 0 on V(0,0)";
const THREE_STRAND: &str = "x² acts semisimply on the three-strand non-splittable simples";
const INDUCED_ANNIHILATOR: &str = "x_k²(x_k² - q(j)) = 0 on the induced module";
const KATO: &str = "every Jordan block of x₁ on the Kato module has size 3";
const WEIGHT_PATTERNS: &str = "weight constraints for x²-semisimple simples";

/// Bounds for the desk-scale campaigns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest content in characteristic 0; `None` means `n`.
    pub max_content: Option<u32>,
    /// Largest rank for which the commutant is computed.
    pub end_bound: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_content: None, end_bound: 4 }
    }
}

fn relations_check<F: Field>(prefix: &str, m: &SuperModule<F>) -> Check {
    let failed: Vec<String> = check_relations(m)
        .into_iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} ({})", c.relation, c.witness.unwrap_or_default()))
        .collect();
    Check::new(format!("{prefix}/relations"), RELATIONS, failed.is_empty(), || failed.join("; "))
}

fn err_check(name: String, anchor: &'static str, e: impl std::fmt::Display) -> Check {
    Check { name, anchor, passed: false, witness: Some(e.to_string()) }
}

/// Relation families, parity discipline, and commuting squares of `x`.
pub fn verify_module<F: Field>(m: &SuperModule<F>) -> Report {
    let mut checks: Vec<Check> = check_relations(m)
        .into_iter()
        .map(|r| {
            let anchor = if r.family == "parity" { PARITY } else { RELATIONS };
            let name = format!("module/{}/{}", r.family, r.relation);
            Check { name, anchor, passed: r.holds, witness: r.witness }
        })
        .collect();
    let sq = m.x_squares();
    let mut bad = None;
    'outer: for k in 0..sq.len() {
        for l in k + 1..sq.len() {
            if sq[k].mul(&sq[l]) != sq[l].mul(&sq[k]) {
                bad = Some((k + 1, l + 1));
                break 'outer;
            }
        }
    }
    checks.push(Check::new("module/squares commute", SQUARES_COMMUTE, bad.is_none(), || {
        let (k, l) = bad.unwrap();
        format!("x{k}² x{l}² ≠ x{l}² x{k}²")
    }));
    Report::new("module", checks)
}

/// Is a commutant of total dimension `2^g` split as the type predicts?
fn commutant_pattern(g: usize, even: usize, odd: usize) -> bool {
    if even + odd != 1 << g {
        return false;
    }
    if g % 2 == 1 {
        return even == odd;
    }
    // Type M: End = M(a|b) with a + b = 2^(g/2).
    let m = 1usize << (g / 2);
    (0..=m).any(|a| a * a + (m - a) * (m - a) == even && 2 * a * (m - a) == odd)
}

fn label_checks<F: Field>(n: usize, c: &Classified, config: &VerifyConfig, prefix: &str) -> Vec<Check> {
    let w = &c.weight;
    let mut out = Vec::new();
    out.push(Check::new(format!("{prefix}/in W′"), IN_WPRIME, w.in_wprime(), || {
        w.wprime_violation().map(|v| v.to_string()).unwrap_or_default()
    }));
    let class = w.class();
    out.push(Check::new(format!("{prefix}/class size"), CLASS_SIZE, class.len() as u64 == c.tableaux, || {
        format!("class has {} members, {} tableaux", class.len(), c.tableaux)
    }));
    let simple = (1u64 << (n - c.zero_count / 2)) * c.tableaux;
    let typed = ModuleType::from_zero_count(w.zero_count());
    out.push(Check::new(
        format!("{prefix}/simple dimension"),
        SIMPLE_DIM,
        c.dimension == simple && c.zero_count == w.zero_count() && c.module_type == typed,
        || format!("dimension {} vs {simple}, type {:?} vs {typed:?}", c.dimension, c.module_type),
    ));
    let m = match build_d::<F>(w) {
        Ok(m) => m,
        Err(e) => {
            out.push(err_check(format!("{prefix}/relations"), RELATIONS, e));
            return out;
        }
    };
    out.push(relations_check(prefix, &m));
    let thick = (1usize << n) * c.tableaux as usize;
    out.push(Check::new(format!("{prefix}/thick dimension"), THICK_DIM, m.dim() == thick, || {
        format!("dimension {} vs {thick}", m.dim())
    }));
    out.push(match is_x_semisimple(&m) {
        Ok(ok) => Check::new(format!("{prefix}/x semisimple"), SPLITTABLE, ok, || "a Jordan block of size >1".into()),
        Err(e) => err_check(format!("{prefix}/x semisimple"), SPLITTABLE, e),
    });
    let expected: BTreeMap<Vec<u32>, usize> = class.iter().map(|m| (m.weight.entries().to_vec(), 1 << n)).collect();
    out.push(match weight_decomposition(&m) {
        Ok(found) => Check::new(format!("{prefix}/weights"), WEIGHT_CLOSURE, found == expected, || {
            format!("found {found:?}")
        }),
        Err(e) => err_check(format!("{prefix}/weights"), WEIGHT_CLOSURE, e),
    });
    if n <= config.end_bound {
        let e = end_dimension(&m);
        let g = w.zero_count();
        out.push(Check::new(format!("{prefix}/commutant"), COMMUTANT, commutant_pattern(g, e.even, e.odd), || {
            format!("even {}, odd {}, γ₀ = {g}", e.even, e.odd)
        }));
    }
    out
}

fn max_content(n: usize, p: Characteristic, config: &VerifyConfig) -> u32 {
    p.index_max().unwrap_or_else(|| config.max_content.unwrap_or(n as u32))
}

fn classification_impl<F: Field>(n: usize, p: Characteristic, config: &VerifyConfig) -> Result<Report, VerifyError> {
    let base = format!("classification/p={}/n={n}", p.get());
    let max = max_content(n, p, config);
    let labels = match classify(n, p, max) {
        Ok(l) => l,
        Err(CombinatoricsError::EmptyClassification { bound, .. }) => {
            let wprime = enumerate_wprime(n, p, max);
            let check = Check::new(format!("{base}/empty"), EMPTY, n > bound && wprime.is_empty(), || {
                format!("{} weights in W′", wprime.len())
            });
            return Ok(Report::new(base, vec![check]));
        }
        Err(e) => return Err(e.into()),
    };
    let mut checks: Vec<Check> = labels
        .par_iter()
        .flat_map_iter(|c| label_checks::<F>(n, c, config, &format!("{base}/{}", c.weight)))
        .collect();

    let mut seen: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut clash = None;
    for (idx, c) in labels.iter().enumerate() {
        for m in c.weight.class() {
            if let Some(prev) = seen.insert(m.weight.clone(), idx) {
                clash.get_or_insert((prev, idx, m.weight));
            }
        }
    }
    checks.push(Check::new(format!("{base}/disjoint"), DISJOINT, clash.is_none(), || {
        let (a, b, w) = clash.clone().unwrap();
        format!("{w} occurs for labels {} and {}", labels[a].weight, labels[b].weight)
    }));
    let classes = classes_of(&enumerate_wprime(n, p, max));
    let covered: BTreeSet<&Weight> = seen.keys().collect();
    let all: BTreeSet<&Weight> = classes.iter().flatten().collect();
    checks.push(Check::new(
        format!("{base}/complete"),
        COMPLETE,
        classes.len() == labels.len() && covered == all,
        || format!("{} labels, {} classes", labels.len(), classes.len()),
    ));
    Ok(Report::new(base, checks))
}

/// Construct the seminormal module of every label on `n` strands and check
/// relations, weights, dimensions, and types against the classification.
pub fn verify_classification(n: usize, p: u32, config: &VerifyConfig) -> Result<Report, VerifyError> {
    let ch = Characteristic::new(p)?;
    with_field!(p, F => classification_impl::<F>(n, ch, config))
}

/// Strict partitions of `n` admitted in characteristic `p`, computed
/// directly from the conditions on the first two parts.
fn admissible_strict_partitions(n: usize, p: u32) -> Vec<Vec<u32>> {
    strict_partitions(n as u32)
        .into_iter()
        .filter(|l| {
            if p == 0 {
                return true;
            }
            let (a, b) = (l[0], l.get(1).copied().unwrap_or(0));
            a <= (p + 1) / 2 || (1..=(p - 3) / 2).any(|u| a == p - u && b <= u)
        })
        .collect()
}

fn finite_label_checks<F: Field>(n: usize, c: &Classified, prefix: &str) -> Vec<Check> {
    let w = &c.weight;
    let mut out = Vec::new();
    let rows: BTreeSet<i32> = c.label.diagram().components()[0].cells.iter().map(|cell| cell.0).collect();
    let len = rows.len();
    let simple = (1u64 << (n - len / 2)) * c.tableaux;
    out.push(Check::new(format!("{prefix}/dimension"), FINITE_DIM, c.dimension == simple && w.zero_count() == len, || {
        format!("dimension {} vs {simple}, {} zeros vs {len} rows", c.dimension, w.zero_count())
    }));
    out.push(Check::new(format!("{prefix}/finite weight"), JM, w.in_wyn(), || format!("{w} does not start at 0")));
    let m = match build_d::<F>(w) {
        Ok(m) => m,
        Err(e) => {
            out.push(err_check(format!("{prefix}/relations"), RELATIONS, e));
            return out;
        }
    };
    out.push(relations_check(prefix, &m));
    let thick = (1usize << n) * c.tableaux as usize;
    out.push(Check::new(format!("{prefix}/thick dimension"), THICK_DIM, m.dim() == thick, || {
        format!("dimension {} vs {thick}", m.dim())
    }));
    out.push(Check::new(format!("{prefix}/x1 = 0"), X1_ZERO, m.x(1).is_zero(), || format!("{} nonzero entries", m.x(1).nnz())));
    for k in 2..=n {
        let name = format!("{prefix}/x{k} = L{k}");
        out.push(match m.act(&jucys_murphy::<F>(n, k)) {
            Ok(l) => {
                let d = l.first_difference(m.x(k));
                Check::new(name, JM, d.is_none(), || {
                    let (r, col, a, b) = d.clone().unwrap();
                    format!("entry ({r},{col}): L{k} {a}, x{k} {b}")
                })
            }
            Err(e) => err_check(name, JM, e),
        });
    }
    out
}

fn finite_impl<F: Field>(n: usize, p: Characteristic) -> Result<Report, VerifyError> {
    let base = format!("finite/p={}/n={n}", p.get());
    let expected = admissible_strict_partitions(n, p.get());
    let labels = match classify_finite(n, p) {
        Ok(l) => l,
        Err(CombinatoricsError::EmptyClassification { .. }) => {
            let check = Check::new(format!("{base}/count"), FINITE_COUNT, expected.is_empty(), || {
                format!("{} admissible partitions", expected.len())
            });
            return Ok(Report::new(base, vec![check]));
        }
        Err(e) => return Err(e.into()),
    };
    let mut checks: Vec<Check> = labels
        .par_iter()
        .flat_map_iter(|c| finite_label_checks::<F>(n, c, &format!("{base}/{}", c.weight)))
        .collect();
    checks.push(Check::new(format!("{base}/count"), FINITE_COUNT, labels.len() == expected.len(), || {
        format!("{} labels, {} admissible partitions", labels.len(), expected.len())
    }));
    Ok(Report::new(base, checks))
}

/// Modules of the finite superalgebra: `x₁ = 0`, `x_k = L_k`, label count
/// and dimensions.
pub fn verify_finite(n: usize, p: u32) -> Result<Report, VerifyError> {
    let ch = Characteristic::new(p)?;
    with_field!(p, F => finite_impl::<F>(n, ch))
}

fn intertwiners_impl<F: Field>(n: usize, p: u32) -> Result<Report, VerifyError> {
    let base = format!("intertwiners/p={p}/n={n}");
    let checks = intertwiner_identities::<F>(n)
        .into_iter()
        .map(|c| {
            let residual = c.residual_terms;
            Check::new(format!("{base}/{}", c.name), INTERTWINERS, c.holds, || format!("{residual} residual terms"))
        })
        .collect();
    Ok(Report::new(base, checks))
}

/// The intertwiner identities as exact PBW identities.
pub fn verify_intertwiners(n: usize, p: u32) -> Result<Report, VerifyError> {
    Characteristic::new(p)?;
    with_field!(p, F => intertwiners_impl::<F>(n, p))
}

/// Weight-pattern constraints for an x²-semisimple simple with weight set `weights`.
fn pattern_violation(weights: &BTreeSet<Vec<u32>>, p: u32) -> Option<String> {
    for w in weights {
        let n = w.len();
        for k in 0..n.saturating_sub(1) {
            let (a, b) = (w[k], w[k + 1]);
            if a.abs_diff(b) != 1 {
                let mut v = w.clone();
                v.swap(k, k + 1);
                if !weights.contains(&v) {
                    return Some(format!("{w:?}: s{} admissible but {v:?} is not a weight", k + 1));
                }
            }
            if a == b && a != 0 {
                return Some(format!("{w:?}: equal adjacent entries {a} at {}", k + 1));
            }
        }
        for k in 0..n.saturating_sub(2) {
            if w[k] == w[k + 1] && w[k + 1] == w[k + 2] {
                return Some(format!("{w:?}: three equal entries at {}", k + 1));
            }
            if w[k] == w[k + 2] {
                let ok = w[k] == 0 || (p >= 3 && w[k] == (p - 3) / 2 && w[k + 1] == (p - 1) / 2);
                if !ok {
                    return Some(format!("{w:?}: i_{} = i_{} = {}", k + 1, k + 3, w[k]));
                }
            }
        }
    }
    None
}

fn larger_module_checks<F: Field>(
    prefix: &str,
    m: &Result<SuperModule<F>, SupermoduleError>,
    p: u32,
    checks: &mut Vec<Check>,
) -> Option<BTreeSet<Vec<u32>>> {
    let m = match m {
        Ok(m) => m,
        Err(e) => {
            checks.push(err_check(format!("{prefix}/relations"), RELATIONS, e));
            return None;
        }
    };
    checks.push(relations_check(prefix, m));
    let semisimple = is_x_squared_semisimple(m);
    checks.push(match &semisimple {
        Ok(ok) => Check::new(format!("{prefix}/x² semisimple"), THREE_STRAND, *ok, || "x² has a nontrivial Jordan block".into()),
        Err(e) => err_check(format!("{prefix}/x² semisimple"), THREE_STRAND, e),
    });
    let weights = weight_decomposition(m).ok().map(|d| d.into_keys().collect::<BTreeSet<_>>());
    if let Some(ws) = &weights {
        let bad = pattern_violation(ws, p);
        checks.push(Check::new(format!("{prefix}/weight patterns"), WEIGHT_PATTERNS, bad.is_none(), || bad.clone().unwrap()));
    }
    weights
}

fn larger_impl<F: Field>(p: Characteristic) -> Result<Report, VerifyError> {
    let pv = p.get();
    let base = format!("larger/p={pv}");
    let top = p.index_max().unwrap_or(4);
    let mut checks = Vec::new();

    let grid: Vec<(u32, u32)> = (0..=top).flat_map(|i| (0..=top).map(move |j| (i, j))).collect();
    let rank_two: Vec<Vec<Check>> = grid
        .par_iter()
        .map(|&(i, j)| {
            let prefix = format!("{base}/V({i},{j})");
            let m = match build_v2::<F>(i, j) {
                Ok(m) => m,
                Err(e) => return vec![err_check(format!("{prefix}/relations"), RELATIONS, e)],
            };
            let expect = i != j || i == 0;
            let semisimple = is_x_squared_semisimple(&m);
            let dichotomy = match semisimple {
                Ok(ok) => Check::new(format!("{prefix}/dichotomy"), DICHOTOMY, ok == expect, || {
                    format!("x² semisimple = {ok}, expected {expect}")
                }),
                Err(e) => err_check(format!("{prefix}/dichotomy"), DICHOTOMY, e),
            };
            vec![relations_check(&prefix, &m), dichotomy]
        })
        .collect();
    checks.extend(rank_two.into_iter().flatten());

    match build_v2::<F>(0, 0) {
        Ok(m) => {
            let cc = m.c(1).mul(m.c(2));
            let id = Matrix::<F>::identity(m.dim());
            let first = id.add(&cc).mul(m.x(1)).add(&id.sub(&cc).mul(m.x(2)));
            let second = m.x(1).mul(m.x(2));
            checks.push(Check::new(
                format!("{base}/V(0,0)/nilpotent pair"),
                NILPOTENT_PAIR,
                first.is_zero() && second.is_zero(),
                || format!("{} and {} nonzero entries", first.nnz(), second.nnz()),
            ));
        }
        Err(e) => checks.push(err_check(format!("{base}/V(0,0)/nilpotent pair"), NILPOTENT_PAIR, e)),
    }

    larger_module_checks(&format!("{base}/V(0,0,1)"), &build_v001::<F>(), pv, &mut checks);
    larger_module_checks(&format!("{base}/V(1,0,0)"), &build_v100::<F>(), pv, &mut checks);

    let js: Vec<u32> = if pv == 0 { vec![2, 3] } else { (2..=top).collect() };
    for j in js {
        let prefix = format!("{base}/ind V(0,0)⊛L({j})");
        let m = induced_v00_l::<F>(j);
        larger_module_checks(&prefix, &m, pv, &mut checks);
        if let Ok(m) = &m {
            let q = q_value::<F>(j);
            let id = Matrix::<F>::identity(m.dim());
            let bad: Vec<usize> = (1..=3)
                .filter(|&k| {
                    let sq = m.x(k).mul(m.x(k));
                    !sq.mul(&sq.sub(&id.scale(&q))).is_zero()
                })
                .collect();
            checks.push(Check::new(format!("{prefix}/annihilator"), INDUCED_ANNIHILATOR, bad.is_empty(), || {
                format!("fails for k in {bad:?}")
            }));
        }
    }

    let prefix = format!("{base}/Kato");
    match kato_module::<F>(3) {
        Ok(m) => {
            checks.push(relations_check(&prefix, &m));
            checks.push(match x_minimal_polynomials(&m) {
                Ok(polys) => {
                    let x1 = &polys[0];
                    let ok = x1.roots.len() == 1 && x1.roots[0].0.is_zero() && x1.roots[0].1 == 3;
                    Check::new(format!("{prefix}/min poly x1"), KATO, ok, || format!("minimal polynomial {x1}"))
                }
                Err(e) => err_check(format!("{prefix}/min poly x1"), KATO, e),
            });
        }
        Err(e) => checks.push(err_check(format!("{prefix}/relations"), RELATIONS, e)),
    }
    Ok(Report::new(base, checks))
}

/// Two- and three-strand modules on which only the `x_k²` act semisimply.
pub fn verify_larger(p: u32) -> Result<Report, VerifyError> {
    let ch = Characteristic::new(p)?;
    with_field!(p, F => larger_impl::<F>(ch))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutant_patterns() {
        assert!(commutant_pattern(0, 1, 0));
        assert!(commutant_pattern(1, 1, 1));
        assert!(commutant_pattern(2, 2, 2));
        assert!(commutant_pattern(2, 4, 0));
        assert!(!commutant_pattern(2, 3, 1));
        assert!(commutant_pattern(3, 4, 4));
        assert!(!commutant_pattern(3, 8, 0));
    }

    #[test]
    fn admissible_partitions_for_three() {
        assert_eq!(admissible_strict_partitions(3, 3), vec![vec![2, 1]]);
        assert_eq!(admissible_strict_partitions(4, 0).len(), 2);
    }

    #[test]
    fn small_campaigns_pass() {
        let cfg = VerifyConfig::default();
        for p in [0, 3, 5] {
            let r = verify_classification(3, p, &cfg).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            let r = verify_finite(3, p).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
        let r = verify_classification(4, 3, &cfg).unwrap();
        assert!(r.passed() && r.checks.len() == 1);
        assert!(verify_intertwiners(3, 5).unwrap().passed());
    }

    #[test]
    fn larger_category_in_char_zero() {
        let r = verify_larger(0).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.find("larger/p=0/Kato/min poly x1").is_some_and(|c| c.passed));
    }
}
