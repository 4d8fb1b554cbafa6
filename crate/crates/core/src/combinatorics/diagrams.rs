//! Placed skew shifted diagrams and their standard tableaux.
//!
//! A placed diagram is stored as a sorted list of edge-connected pieces.
//! Each piece is translated so that its northwest box (leftmost box of the
//! top row) sits at `(0, 0)`; the content of a box `(r, c)` is then
//! `content0 + c - r`. Two diagrams are equal iff their pieces agree, which
//! identifies diagrams that differ only by moving pieces apart.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

/// `(row, col)`.
pub type Cell = (i32, i32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Component {
    /// Content of the northwest box.
    pub content0: i32,
    /// Boxes sorted by `(row, col)`; the first one is `(0, 0)`.
    pub cells: Vec<Cell>,
}

impl Component {
    pub fn content(&self, cell: Cell) -> i32 {
        self.content0 + cell.1 - cell.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlacedDiagram {
    components: Vec<Component>,
}

/// Group labeled boxes into connected pieces and translate each.
fn normalize_pieces<T: Clone + Ord>(boxes: &[(Cell, i32, T)]) -> Vec<(Component, Vec<T>)> {
    let index: HashMap<Cell, usize> = boxes.iter().enumerate().map(|(k, b)| (b.0, k)).collect();
    let mut seen = vec![false; boxes.len()];
    let mut pieces = Vec::new();
    for start in 0..boxes.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut members = Vec::new();
        seen[start] = true;
        while let Some(k) = stack.pop() {
            members.push(k);
            let (r, c) = boxes[k].0;
            for nb in [(r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)] {
                if let Some(&j) = index.get(&nb) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        members.sort_by_key(|k| boxes[*k].0);
        let (r0, c0) = boxes[members[0]].0;
        let content0 = boxes[members[0]].1;
        let cells = members.iter().map(|k| (boxes[*k].0 .0 - r0, boxes[*k].0 .1 - c0)).collect();
        let tags = members.iter().map(|k| boxes[*k].2.clone()).collect();
        pieces.push((Component { content0, cells }, tags));
    }
    pieces.sort();
    pieces
}

impl PlacedDiagram {
    /// From boxes with their contents, given in any common coordinate frame.
    pub fn from_boxes(boxes: &[(Cell, i32)]) -> Self {
        let tagged: Vec<(Cell, i32, ())> = boxes.iter().map(|(c, v)| (*c, *v, ())).collect();
        PlacedDiagram { components: normalize_pieces(&tagged).into_iter().map(|(c, _)| c).collect() }
    }

    /// `λ/μ` for strict partitions `μ ⊆ λ`, with contents `col - row` in
    /// shifted coordinates (the main diagonal has content 0).
    pub fn skew(lambda: &[u32], mu: &[u32]) -> Self {
        PlacedDiagram::from_boxes(&skew_boxes(lambda, mu))
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.cells.len()).sum()
    }

    /// Boxes in canonical order (piece, then row, then column) with contents.
    pub fn boxes(&self) -> Vec<(usize, Cell, i32)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, comp)| comp.cells.iter().map(move |c| (k, *c, comp.content(*c))))
            .collect()
    }

    pub fn contents(&self) -> Vec<i32> {
        self.boxes().into_iter().map(|b| b.2).collect()
    }

    pub fn max_content(&self) -> i32 {
        self.contents().into_iter().max().unwrap_or(0)
    }

    /// Number of boxes of content 0.
    pub fn zero_count(&self) -> usize {
        self.contents().into_iter().filter(|c| *c == 0).count()
    }

    /// Order constraints of a standard filling: each box comes after the
    /// box to its left and the box above it, within its piece.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let boxes = self.boxes();
        let index: HashMap<(usize, Cell), usize> = boxes.iter().enumerate().map(|(k, b)| ((b.0, b.1), k)).collect();
        boxes
            .iter()
            .map(|(comp, (r, c), _)| {
                [(*r, c - 1), (r - 1, *c)].iter().filter_map(|nb| index.get(&(*comp, *nb)).copied()).collect()
            })
            .collect()
    }

    /// Check the placement conditions: contents constant along diagonals
    /// and stepping by one between neighbours (built in), and content 0 at
    /// every box `A` that has boxes to its right and below-right but none below.
    pub fn is_placed(&self) -> bool {
        self.components.iter().all(|comp| {
            let set: BTreeSet<Cell> = comp.cells.iter().copied().collect();
            comp.cells.iter().all(|&(r, c)| {
                let corner = set.contains(&(r, c + 1)) && set.contains(&(r + 1, c + 1)) && !set.contains(&(r + 1, c));
                !corner || comp.content((r, c)) == 0
            }) && comp.cells.iter().all(|c| comp.content(*c) >= 0)
        })
    }

    pub fn standard_tableaux(&self) -> Vec<PlacedTableau> {
        linear_extensions(&self.predecessors())
            .into_iter()
            .map(|labels| PlacedTableau { diagram: self.clone(), labels })
            .collect()
    }

    /// Number of standard tableaux.
    pub fn count_standard(&self) -> u64 {
        count_linear_extensions(&self.predecessors())
    }

    /// Row-reading tableau: labels increase along rows, pieces in order.
    pub fn row_reading_tableau(&self) -> PlacedTableau {
        PlacedTableau { diagram: self.clone(), labels: (1..=self.size() as u32).collect() }
    }

    /// Rows of each piece as strings, `·` for gaps, contents as digits or `[n]`.
    pub fn render_contents(&self) -> String {
        let contents = self.contents();
        render(self, |k| fmt_cell(contents[k] as i64))
    }
}

impl fmt::Display for PlacedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_contents())
    }
}

fn fmt_cell(v: i64) -> String {
    if (0..10).contains(&v) {
        v.to_string()
    } else {
        format!("[{v}]")
    }
}

fn render(d: &PlacedDiagram, cell: impl Fn(usize) -> String) -> String {
    let boxes = d.boxes();
    let mut pieces = Vec::new();
    let mut k = 0;
    for comp in d.components() {
        let min_c = comp.cells.iter().map(|c| c.1).min().unwrap_or(0);
        let mut rows: BTreeMap<i32, Vec<(i32, String)>> = BTreeMap::new();
        for c in &comp.cells {
            rows.entry(c.0).or_default().push((c.1, cell(k)));
            k += 1;
        }
        let lines: Vec<String> = rows
            .values()
            .map(|row| {
                let mut s = "·".repeat((row[0].0 - min_c) as usize);
                for (_, t) in row {
                    s.push_str(t);
                }
                s
            })
            .collect();
        pieces.push(lines.join("/"));
    }
    debug_assert_eq!(k, boxes.len());
    pieces.join(" | ")
}

/// Boxes of shifted `λ/μ` with canonical contents.
pub fn skew_boxes(lambda: &[u32], mu: &[u32]) -> Vec<(Cell, i32)> {
    let mut out = Vec::new();
    for (r, &l) in lambda.iter().enumerate() {
        let m = mu.get(r).copied().unwrap_or(0);
        let r = r as i32;
        for c in (r + m as i32)..(r + l as i32) {
            out.push(((r, c), c - r));
        }
    }
    out
}

/// Strictly decreasing sequences of positive integers with parts at most `max_part`.
pub fn strict_partitions_bounded(max_part: u32) -> Vec<Vec<u32>> {
    (0u32..(1 << max_part))
        .map(|mask| (1..=max_part).rev().filter(|k| mask & (1 << (k - 1)) != 0).collect())
        .collect()
}

/// Strict partitions of `n`, in decreasing lexicographic order.
pub fn strict_partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur.push(part);
            rec(rem - part, part - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All placed diagrams with `n` boxes whose contents are at most `max_content`,
/// each obtained as a skew shifted diagram with canonical contents.
pub fn placed_diagrams(n: usize, max_content: u32) -> Vec<PlacedDiagram> {
    // Deleting empty top rows preserves the diagram, so the first row may be
    // assumed nonempty; its last box has content λ_1 - 1.
    let parts = strict_partitions_bounded(max_content + 1);
    let mut out = BTreeSet::new();
    for lambda in &parts {
        let total: u32 = lambda.iter().sum();
        if (total as usize) < n {
            continue;
        }
        for mu in &parts {
            let fits = mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(m, l)| m <= l);
            if !fits || (total - mu.iter().sum::<u32>()) as usize != n {
                continue;
            }
            out.insert(PlacedDiagram::skew(lambda, mu));
        }
    }
    out.into_iter().collect()
}

/// A filling of a placed diagram by distinct positive labels, stored in the
/// diagram's canonical box order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlacedTableau {
    diagram: PlacedDiagram,
    labels: Vec<u32>,
}

impl PlacedTableau {
    /// From labeled boxes with contents in a common frame.
    ///
    /// Identical pieces are ordered by their labels so the result is canonical.
    pub fn from_labeled_boxes(boxes: &[(Cell, i32, u32)]) -> Self {
        let pieces = normalize_pieces(boxes);
        let labels = pieces.iter().flat_map(|(_, t)| t.iter().copied()).collect();
        let components = pieces.into_iter().map(|(c, _)| c).collect();
        PlacedTableau { diagram: PlacedDiagram { components }, labels }
    }

    /// Skew shape `λ/μ` filled row by row with the given label rows.
    pub fn skew_from_rows(lambda: &[u32], mu: &[u32], rows: &[Vec<u32>]) -> Self {
        let boxes = skew_boxes(lambda, mu);
        let mut labeled = Vec::new();
        let mut k = 0;
        for row in rows {
            for l in row {
                let (cell, content) = boxes[k];
                labeled.push((cell, content, *l));
                k += 1;
            }
        }
        assert_eq!(k, boxes.len(), "label rows do not cover λ/μ");
        PlacedTableau::from_labeled_boxes(&labeled)
    }

    pub fn diagram(&self) -> &PlacedDiagram {
        &self.diagram
    }

    /// Labels aligned with `diagram().boxes()`.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Rows increase to the right and columns increase downwards.
    pub fn is_standard(&self) -> bool {
        self.diagram
            .predecessors()
            .iter()
            .enumerate()
            .all(|(k, preds)| preds.iter().all(|j| self.labels[*j] < self.labels[k]))
    }

    /// Contents read in increasing label order: the weight of the tableau.
    pub fn reading_contents(&self) -> Vec<i32> {
        let contents = self.diagram.contents();
        let mut pairs: Vec<(u32, i32)> = self.labels.iter().copied().zip(contents).collect();
        pairs.sort();
        pairs.into_iter().map(|p| p.1).collect()
    }

    /// Label of the box in piece `comp` at `cell`.
    pub fn label_at(&self, comp: usize, cell: Cell) -> Option<u32> {
        self.diagram.boxes().iter().position(|b| b.0 == comp && b.1 == cell).map(|k| self.labels[k])
    }

    pub fn render_labels(&self) -> String {
        render(&self.diagram, |k| fmt_cell(self.labels[k] as i64))
    }
}

impl fmt::Display for PlacedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_labels())
    }
}

/// All labelings `1..=n` of a poset on `0..n` (given by predecessor lists)
/// that increase along every constraint, in lexicographic order of the
/// sequence of positions receiving labels 1, 2, ….
pub fn linear_extensions(preds: &[Vec<usize>]) -> Vec<Vec<u32>> {
    fn rec(preds: &[Vec<usize>], labels: &mut Vec<u32>, next: u32, out: &mut Vec<Vec<u32>>) {
        if next as usize > preds.len() {
            out.push(labels.clone());
            return;
        }
        for k in 0..preds.len() {
            if labels[k] == 0 && preds[k].iter().all(|j| labels[*j] != 0) {
                labels[k] = next;
                rec(preds, labels, next + 1, out);
                labels[k] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(preds, &mut vec![0; preds.len()], 1, &mut out);
    out
}

/// Number of linear extensions, by memoized counting over filled subsets.
pub fn count_linear_extensions(preds: &[Vec<usize>]) -> u64 {
    assert!(preds.len() < 64, "poset too large to count");
    let masks: Vec<u64> = preds.iter().map(|ps| ps.iter().fold(0u64, |m, j| m | (1 << j))).collect();
    fn rec(filled: u64, masks: &[u64], memo: &mut HashMap<u64, u64>) -> u64 {
        if filled.count_ones() as usize == masks.len() {
            return 1;
        }
        if let Some(v) = memo.get(&filled) {
            return *v;
        }
        let mut total = 0;
        for (k, m) in masks.iter().enumerate() {
            if filled & (1 << k) == 0 && filled & m == *m {
                total += rec(filled | (1 << k), masks, memo);
            }
        }
        memo.insert(filled, total);
        total
    }
    rec(0, &masks, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_example_contents() {
        let d = PlacedDiagram::skew(&[9, 8, 5, 2, 1], &[7, 5, 4]);
        assert_eq!(d.size(), 9);
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.render_contents(), "01/·0 | ·78/567/4");
        assert!(d.is_placed());
    }

    #[test]
    fn strict_partition_counts() {
        // Number of partitions of n into distinct parts.
        let counts: Vec<usize> = (1..=8).map(|n| strict_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 2, 3, 4, 5, 6]);
    }

    /// `n!/∏λ_i! · ∏_{i<j} (λ_i-λ_j)/(λ_i+λ_j)` for shifted shapes.
    fn product_formula(lambda: &[u32]) -> u64 {
        use num_rational::Ratio;
        let n: u32 = lambda.iter().sum();
        let fact = |k: u32| (1..=k as i128).product::<i128>();
        let mut v = Ratio::new(fact(n), lambda.iter().map(|l| fact(*l)).product());
        for i in 0..lambda.len() {
            for j in i + 1..lambda.len() {
                v *= Ratio::new((lambda[i] - lambda[j]) as i128, (lambda[i] + lambda[j]) as i128);
            }
        }
        assert!(v.is_integer());
        v.to_integer() as u64
    }

    #[test]
    fn shifted_counts_match_product_formula() {
        for n in 1..=9 {
            for lambda in strict_partitions(n) {
                assert_eq!(PlacedDiagram::skew(&lambda, &[]).count_standard(), product_formula(&lambda), "{lambda:?}");
            }
        }
    }

    #[test]
    fn counting_matches_enumeration() {
        for d in placed_diagrams(5, 4) {
            let all = d.standard_tableaux();
            assert_eq!(all.len() as u64, d.count_standard());
            assert!(all.iter().all(PlacedTableau::is_standard));
        }
    }

    #[test]
    fn single_boxes() {
        let ds = placed_diagrams(1, 3);
        let contents: Vec<Vec<i32>> = ds.iter().map(PlacedDiagram::contents).collect();
        assert_eq!(contents, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn pieces_far_apart_are_identified() {
        let a = PlacedDiagram::from_boxes(&[((0, 0), 2), ((5, 1), 0)]);
        let b = PlacedDiagram::from_boxes(&[((9, 9), 0), ((-3, 4), 2)]);
        assert_eq!(a, b);
    }
}
