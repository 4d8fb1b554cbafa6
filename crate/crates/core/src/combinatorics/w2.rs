//! Weights in odd characteristic whose repeated entries are separated by a
//! chain through the top index, and their extended tableaux.

use serde::Serialize;

use super::bijection::grow_tableau;
use super::diagrams::{linear_extensions, count_linear_extensions, PlacedDiagram, PlacedTableau};
use super::weights::Weight;
use super::CombinatoricsError;

/// The chain of a weight in the second family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    /// Least `u ≥ 1` repeated without `u-1` between the repeats.
    pub u: u32,
    /// 1-based positions `r_0 < r_1 < … < r_m < q < t_m < … < t_0`.
    pub chain: Vec<usize>,
    /// 1-based positions kept in the reduced vector (`r_0` and everything off the chain).
    pub kept: Vec<usize>,
    /// The reduced vector.
    pub reduced: Vec<u32>,
}

fn has_unseparated_repeat(e: &[u32], u: u32) -> bool {
    (0..e.len()).any(|k| (k + 1..e.len()).any(|l| e[k] == u && e[l] == u && !e[k + 1..l].contains(&(u - 1))))
}

/// Membership in the second family: in W′ (odd characteristic) with some
/// `1 ≤ u ≤ (p-3)/2` repeated and `u-1` absent between the repeats.
pub fn in_w2(w: &Weight) -> bool {
    let Some(h) = w.p().index_max() else { return false };
    w.in_wprime() && (1..h).any(|u| has_unseparated_repeat(w.entries(), u))
}

/// Locate the chain and the reduced vector.
pub fn decompose(w: &Weight) -> Result<ChainDecomposition, CombinatoricsError> {
    if !in_w2(w) {
        return Err(CombinatoricsError::NotInSecondFamily(w.to_string()));
    }
    let h = w.p().index_max().expect("odd characteristic");
    let e = w.entries();
    let u = (1..h).find(|u| has_unseparated_repeat(e, *u)).expect("member of the second family");
    // Off the chain every entry is below u, so the chain is exactly the set of
    // positions with entries ≥ u, reading u, u+1, …, h, …, u+1, u.
    let chain: Vec<usize> = (0..e.len()).filter(|k| e[*k] >= u).collect();
    let pattern: Vec<u32> = (u..=h).chain((u..h).rev()).collect();
    let values: Vec<u32> = chain.iter().map(|k| e[*k]).collect();
    if values != pattern {
        return Err(CombinatoricsError::Internal(format!("entries ≥ {u} of {w} do not form the chain {pattern:?}")));
    }
    let (first, last) = (chain[0], *chain.last().expect("nonempty"));
    if e[first..=last].contains(&(u - 1)) {
        return Err(CombinatoricsError::Internal(format!("{} occurs inside the chain of {w}", u - 1)));
    }
    let kept: Vec<usize> = (0..e.len()).filter(|k| !chain[1..].contains(k)).collect();
    Ok(ChainDecomposition {
        u,
        chain: chain.iter().map(|k| k + 1).collect(),
        reduced: kept.iter().map(|k| e[*k]).collect(),
        kept: kept.iter().map(|k| k + 1).collect(),
    })
}

/// A tableau on a placed diagram with exactly one box `A` of the maximal
/// content `u`, extended by `p-2u-1` boxes to the right of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtendedTableau {
    pub base: PlacedTableau,
    pub u: u32,
    /// Labels of the appended boxes, left to right.
    pub extra: Vec<u32>,
}

/// Position of the unique box of content `u` in the canonical box order,
/// and the index of the box directly below it, if any.
fn corner_box(d: &PlacedDiagram, u: u32) -> Result<(usize, Option<usize>), CombinatoricsError> {
    let boxes = d.boxes();
    let hits: Vec<usize> = (0..boxes.len()).filter(|k| boxes[*k].2 == u as i32).collect();
    if hits.len() != 1 || d.max_content() != u as i32 {
        return Err(CombinatoricsError::Internal(format!("diagram {d} needs a unique box of maximal content {u}")));
    }
    let a = hits[0];
    let (comp, (r, c), _) = boxes[a];
    let below = boxes.iter().position(|b| b.0 == comp && b.1 == (r + 1, c));
    Ok((a, below))
}

/// Order constraints for the extended shape: the base constraints, the
/// appended boxes after `A` in a row, and the box below `A` (if any) after
/// the last appended box.
fn extended_predecessors(d: &PlacedDiagram, u: u32, extra: usize) -> Result<Vec<Vec<usize>>, CombinatoricsError> {
    let (a, below) = corner_box(d, u)?;
    let m = d.size();
    let mut preds = d.predecessors();
    for k in 0..extra {
        preds.push(vec![if k == 0 { a } else { m + k - 1 }]);
    }
    if let Some(b) = below {
        preds[b].push(m + extra - 1);
    }
    Ok(preds)
}

fn extra_count(p: u32, u: u32) -> usize {
    (p - 2 * u - 1) as usize
}

/// All p-standard extended tableaux on `d` (labels `1..=|d| + p-2u-1`).
pub fn p_standard_tableaux(d: &PlacedDiagram, u: u32, p: u32) -> Result<Vec<ExtendedTableau>, CombinatoricsError> {
    let extra = extra_count(p, u);
    let preds = extended_predecessors(d, u, extra)?;
    let m = d.size();
    Ok(linear_extensions(&preds)
        .into_iter()
        .map(|labels| {
            let boxes: Vec<_> = d.boxes().iter().zip(&labels).map(|(b, l)| (b.1, b.0, b.2, *l)).collect();
            let far: Vec<_> = boxes.iter().map(|(c, k, v, l)| ((c.0 + 1000 * *k as i32, c.1 + 1000 * *k as i32), *v, *l)).collect();
            ExtendedTableau { base: PlacedTableau::from_labeled_boxes(&far), u, extra: labels[m..].to_vec() }
        })
        .collect())
}

/// Number of p-standard extended tableaux on `d`.
pub fn count_p_standard(d: &PlacedDiagram, u: u32, p: u32) -> Result<u64, CombinatoricsError> {
    Ok(count_linear_extensions(&extended_predecessors(d, u, extra_count(p, u))?))
}

impl ExtendedTableau {
    pub fn size(&self) -> usize {
        self.base.labels().len() + self.extra.len()
    }

    pub fn is_p_standard(&self, p: u32) -> bool {
        let d = self.base.diagram();
        let Ok(preds) = extended_predecessors(d, self.u, extra_count(p, self.u)) else { return false };
        if self.extra.len() != extra_count(p, self.u) {
            return false;
        }
        let labels: Vec<u32> = self.base.labels().iter().chain(&self.extra).copied().collect();
        preds.iter().enumerate().all(|(k, ps)| ps.iter().all(|j| labels[*j] < labels[k]))
    }

    pub fn render(&self) -> String {
        let extra: Vec<String> = self.extra.iter().map(u32::to_string).collect();
        format!("{} + [{}]", self.base.render_labels(), extra.join(","))
    }
}

/// Contents read in label order, with the appended boxes contributing
/// `u+1, …, (p-1)/2, …, u+1, u`.
pub fn map_f2(t: &ExtendedTableau, p: u32) -> Result<Vec<u32>, CombinatoricsError> {
    if !t.is_p_standard(p) {
        return Err(CombinatoricsError::NotStandard(t.render()));
    }
    let h = (p - 1) / 2;
    let mut pairs: Vec<(u32, u32)> =
        t.base.labels().iter().copied().zip(t.base.diagram().contents().into_iter().map(|c| c as u32)).collect();
    let tail: Vec<u32> = (t.u + 1..=h).chain((t.u..h).rev()).collect();
    pairs.extend(t.extra.iter().copied().zip(tail));
    pairs.sort();
    let labels: Vec<u32> = pairs.iter().map(|p| p.0).collect();
    if labels != (1..=pairs.len() as u32).collect::<Vec<_>>() {
        return Err(CombinatoricsError::NotStandard(t.render()));
    }
    Ok(pairs.into_iter().map(|p| p.1).collect())
}

/// Weight of the second family to its p-standard extended tableau.
pub fn map_g2(w: &Weight) -> Result<ExtendedTableau, CombinatoricsError> {
    let dec = decompose(w)?;
    let steps: Vec<(u32, u32)> = dec.kept.iter().zip(&dec.reduced).map(|(k, v)| (*k as u32, *v)).collect();
    let base = grow_tableau(&steps)?;
    let extra = dec.chain[1..].iter().map(|k| *k as u32).collect();
    let t = ExtendedTableau { base, u: dec.u, extra };
    if !t.is_p_standard(w.p().get()) {
        return Err(CombinatoricsError::Internal(format!("extended tableau {} is not p-standard", t.render())));
    }
    Ok(t)
}

/// Placed diagrams with `m` boxes, contents at most `u`, and exactly one
/// box of content `u`.
pub fn starred_diagrams(m: usize, u: u32) -> Vec<PlacedDiagram> {
    super::diagrams::placed_diagrams(m, u)
        .into_iter()
        .filter(|d| d.contents().iter().filter(|c| **c == u as i32).count() == 1)
        .collect()
}
