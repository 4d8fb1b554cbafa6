//! Labels of the irreducible completely splittable modules, with their
//! dimensions, types, and a representative weight for each.

use serde::Serialize;

use super::bijection::map_f;
use super::diagrams::{placed_diagrams, strict_partitions, PlacedDiagram};
use super::w2::{count_p_standard, map_f2, p_standard_tableaux, starred_diagrams};
use super::weights::{Characteristic, Weight};
use super::CombinatoricsError;

/// Super type of a simple module: `M` if its endomorphisms are the scalars,
/// `Q` if they also contain an odd involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModuleType {
    M,
    Q,
}

impl ModuleType {
    /// Type from the number of zero entries of a weight.
    pub fn from_zero_count(z: usize) -> Self {
        if z % 2 == 0 {
            ModuleType::M
        } else {
            ModuleType::Q
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    /// A placed diagram read through standard tableaux.
    Diagram { diagram: PlacedDiagram },
    /// A placed diagram with unique maximal content `u`, read through
    /// p-standard tableaux on its extension.
    Extended { diagram: PlacedDiagram, u: u32 },
}

impl Label {
    pub fn diagram(&self) -> &PlacedDiagram {
        match self {
            Label::Diagram { diagram } | Label::Extended { diagram, .. } => diagram,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Label::Diagram { diagram } => diagram.render_contents(),
            Label::Extended { diagram, u } => format!("{} (extended at content {u})", diagram.render_contents()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub label: Label,
    pub weight: Weight,
    /// Number of (p-)standard tableaux, equal to the number of weights in the class.
    pub tableaux: u64,
    pub zero_count: usize,
    pub dimension: u64,
    pub module_type: ModuleType,
}

fn dimension(n: usize, zeros: usize, tableaux: u64) -> u64 {
    (1u64 << (n - zeros / 2)) * tableaux
}

/// Largest `n` with nonempty classification in odd characteristic `p`.
pub fn size_bound(p: u32) -> usize {
    ((p + 1) * (p + 3) / 8) as usize
}

fn plain(n: usize, p: Characteristic, d: PlacedDiagram) -> Result<Classified, CombinatoricsError> {
    let t = d.standard_tableaux().into_iter().next().expect("a diagram has a standard tableau");
    let weight = Weight::new(map_f(&t)?, p)?;
    let tableaux = d.count_standard();
    let zeros = d.zero_count();
    Ok(Classified {
        weight,
        tableaux,
        zero_count: zeros,
        dimension: dimension(n, zeros, tableaux),
        module_type: ModuleType::from_zero_count(zeros),
        label: Label::Diagram { diagram: d },
    })
}

fn extended(n: usize, p: Characteristic, d: PlacedDiagram, u: u32) -> Result<Classified, CombinatoricsError> {
    let t = p_standard_tableaux(&d, u, p.get())?.into_iter().next().expect("an extended tableau exists");
    let weight = Weight::new(map_f2(&t, p.get())?, p)?;
    let tableaux = count_p_standard(&d, u, p.get())?;
    let zeros = d.zero_count();
    Ok(Classified {
        weight,
        tableaux,
        zero_count: zeros,
        dimension: dimension(n, zeros, tableaux),
        module_type: ModuleType::from_zero_count(zeros),
        label: Label::Extended { diagram: d, u },
    })
}

/// Irreducible completely splittable modules of the affine superalgebra on
/// `n` strands. In characteristic 0 contents are bounded by `max_content`.
pub fn classify(n: usize, p: Characteristic, max_content: u32) -> Result<Vec<Classified>, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::EmptyRank);
    }
    let mut out = Vec::new();
    match p.index_max() {
        None => {
            for d in placed_diagrams(n, max_content) {
                out.push(plain(n, p, d)?);
            }
        }
        Some(h) => {
            for d in placed_diagrams(n, h) {
                out.push(plain(n, p, d)?);
            }
            for u in 1..h {
                let extra = (p.get() - 2 * u - 1) as usize;
                if n <= extra {
                    continue;
                }
                for d in starred_diagrams(n - extra, u) {
                    out.push(extended(n, p, d, u)?);
                }
            }
            if out.is_empty() {
                return Err(CombinatoricsError::EmptyClassification { n, p: p.get(), bound: size_bound(p.get()) });
            }
        }
    }
    Ok(out)
}

/// Irreducible completely splittable modules of the finite superalgebra on
/// `n` strands, labeled by strict partitions (as one-piece diagrams).
pub fn classify_finite(n: usize, p: Characteristic) -> Result<Vec<Classified>, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::EmptyRank);
    }
    let mut out = Vec::new();
    for lambda in strict_partitions(n as u32) {
        let first = lambda[0];
        match p.index_max() {
            None => out.push(plain(n, p, PlacedDiagram::skew(&lambda, &[]))?),
            Some(h) if first <= h + 1 => out.push(plain(n, p, PlacedDiagram::skew(&lambda, &[]))?),
            Some(h) => {
                let u = p.get() - first;
                if u >= 1 && u < h && lambda.get(1).copied().unwrap_or(0) <= u {
                    let mut hat = lambda.clone();
                    hat[0] = u + 1;
                    out.push(extended(n, p, PlacedDiagram::skew(&hat, &[]), u)?);
                }
            }
        }
    }
    if out.is_empty() {
        return Err(CombinatoricsError::EmptyClassification { n, p: p.get(), bound: size_bound(p.get()) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(p: u32) -> Characteristic {
        Characteristic::new(p).unwrap()
    }

    #[test]
    fn single_strand() {
        let c = classify(1, ch(0), 3).unwrap();
        let dims: Vec<(u32, u64, ModuleType)> = c.iter().map(|m| (m.weight.at(1), m.dimension, m.module_type)).collect();
        assert_eq!(
            dims,
            vec![(0, 2, ModuleType::Q), (1, 2, ModuleType::M), (2, 2, ModuleType::M), (3, 2, ModuleType::M)]
        );
    }

    #[test]
    fn empty_beyond_bound() {
        assert_eq!(size_bound(3), 3);
        assert_eq!(size_bound(5), 6);
        assert_eq!(size_bound(7), 10);
        assert!(matches!(classify(4, ch(3), 0), Err(CombinatoricsError::EmptyClassification { .. })));
        assert!(classify(3, ch(3), 0).is_ok());
    }

    #[test]
    fn finite_labels_in_char_zero() {
        let c = classify_finite(4, ch(0)).unwrap();
        assert_eq!(c.len(), 2);
        // (4): f = 1, l = 1; (3,1): f = 2, l = 2.
        assert_eq!(c[0].dimension, 16);
        assert_eq!(c[1].dimension, 16);
    }

    #[test]
    fn finite_labels_in_char_five() {
        // λ_1 ≤ 3, or λ_1 = 4 with λ_2 ≤ 1.
        let firsts: Vec<u32> = classify_finite(5, ch(5)).unwrap().iter().map(|c| c.weight.at(1)).collect();
        assert!(firsts.iter().all(|f| *f == 0));
        let shapes = classify_finite(5, ch(5)).unwrap().len();
        // Strict partitions of 5: (5), (4,1), (3,2); (5) is excluded.
        assert_eq!(shapes, 2);
    }
}
