//! The bijection between splittable vectors and standard tableaux on placed
//! skew shifted diagrams.

use std::collections::HashMap;

use super::diagrams::{Cell, PlacedTableau};
use super::weights::is_splittable;
use super::CombinatoricsError;

/// A piece under construction, in its own coordinate frame.
struct Piece {
    offset: i32,
    cells: HashMap<Cell, u32>,
}

impl Piece {
    fn content(&self, c: Cell) -> i32 {
        self.offset + c.1 - c.0
    }
}

/// Grow a tableau one box at a time from `(label, content)` pairs given in
/// increasing label order.
///
/// A new box of content `u` starts a new piece when neither `u-1` nor `u+1`
/// is present, goes right of the last box of content `u-1` when only that is
/// present, below the last box of content `u+1` when only that is present,
/// and into the corner right of the former and below the latter otherwise.
pub fn grow_tableau(steps: &[(u32, u32)]) -> Result<PlacedTableau, CombinatoricsError> {
    let mut pieces: Vec<Option<Piece>> = Vec::new();
    for &(label, u) in steps {
        let u = u as i32;
        let last_with = |pieces: &[Option<Piece>], v: i32| -> Option<(usize, Cell, u32)> {
            pieces
                .iter()
                .enumerate()
                .filter_map(|(k, p)| p.as_ref().map(|p| (k, p)))
                .flat_map(|(k, p)| p.cells.iter().filter(move |(c, _)| p.content(**c) == v).map(move |(c, l)| (k, *c, *l)))
                .max_by_key(|t| t.2)
        };
        let left = last_with(&pieces, u - 1);
        let above = last_with(&pieces, u + 1);
        let clash = || CombinatoricsError::Internal(format!("box for label {label} collides"));
        match (left, above) {
            (None, None) => {
                pieces.push(Some(Piece { offset: u, cells: HashMap::from([((0, 0), label)]) }));
            }
            (Some((k, (r, c), _)), None) => {
                let p = pieces[k].as_mut().expect("live piece");
                if p.cells.insert((r, c + 1), label).is_some() {
                    return Err(clash());
                }
            }
            (None, Some((k, (r, c), _))) => {
                let p = pieces[k].as_mut().expect("live piece");
                if p.cells.insert((r + 1, c), label).is_some() {
                    return Err(clash());
                }
            }
            (Some((kd, d, _)), Some((kc, c, _))) => {
                let target = (d.0, d.1 + 1);
                if kd != kc {
                    // Bring the upper piece into the frame of the left one.
                    let moved = pieces[kc].take().expect("live piece");
                    let shift = (target.0 - (c.0 + 1), target.1 - c.1);
                    let dst = pieces[kd].as_mut().expect("live piece");
                    for (cell, l) in moved.cells {
                        if dst.cells.insert((cell.0 + shift.0, cell.1 + shift.1), l).is_some() {
                            return Err(clash());
                        }
                    }
                } else if (c.0 + 1, c.1) != target {
                    return Err(CombinatoricsError::Internal(format!(
                        "no corner for label {label}: neighbours are not diagonally placed"
                    )));
                }
                let dst = pieces[kd].as_mut().expect("live piece");
                if dst.cells.insert(target, label).is_some() {
                    return Err(clash());
                }
            }
        }
    }
    let mut boxes = Vec::new();
    for (k, p) in pieces.iter().flatten().enumerate() {
        for (cell, l) in &p.cells {
            // Separate frames so pieces never touch.
            let far = (k as i32) * 1000;
            boxes.push(((cell.0 + far, cell.1 + far), p.content(*cell), *l));
        }
    }
    Ok(PlacedTableau::from_labeled_boxes(&boxes))
}

/// Splittable vector to standard tableau (box `k` holds label `k`).
pub fn map_g(entries: &[u32]) -> Result<PlacedTableau, CombinatoricsError> {
    if !is_splittable(entries) {
        return Err(CombinatoricsError::NotSplittable(entries.to_vec()));
    }
    let steps: Vec<(u32, u32)> = entries.iter().enumerate().map(|(k, u)| (k as u32 + 1, *u)).collect();
    grow_tableau(&steps)
}

/// Standard tableau to its reading vector of contents.
pub fn map_f(t: &PlacedTableau) -> Result<Vec<u32>, CombinatoricsError> {
    if !t.is_standard() {
        return Err(CombinatoricsError::NotStandard(t.render_labels()));
    }
    let n = t.labels().len() as u32;
    let mut sorted = t.labels().to_vec();
    sorted.sort();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(CombinatoricsError::NotStandard(t.render_labels()));
    }
    Ok(t.reading_contents().into_iter().map(|c| c as u32).collect())
}
