//! JSON form of a module: basis labels with parities and sparse triplets
//! for each generator that acts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Matrix, SuperModule, SupermoduleError};
use crate::scalars::{AnyScalar, Field};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    /// `s1`, `x2`, `c3`, …
    pub name: String,
    /// `(row, column, value)`, column-major.
    pub entries: Vec<(usize, usize, AnyScalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub schema_version: u32,
    pub n: usize,
    pub p: u32,
    pub dimension: usize,
    pub indices: Vec<u32>,
    pub basis: Vec<BasisEntry>,
    pub generators: Vec<GeneratorEntry>,
}

impl ModuleFile {
    pub fn from_module<F: Field>(m: &SuperModule<F>) -> Self {
        ModuleFile {
            schema_version: SCHEMA_VERSION,
            n: m.n(),
            p: F::CHARACTERISTIC,
            dimension: m.dim(),
            indices: m.indices().iter().copied().collect(),
            basis: m
                .labels()
                .iter()
                .zip(m.parity())
                .map(|(l, p)| BasisEntry { label: l.clone(), parity: *p as u8 })
                .collect(),
            generators: m
                .generators()
                .into_iter()
                .map(|(g, a)| GeneratorEntry {
                    name: g.to_string(),
                    entries: a.triplets().map(|(r, c, v)| (r, c, v.to_any())).collect(),
                })
                .collect(),
        }
    }

    pub fn to_module<F: Field>(&self) -> Result<SuperModule<F>, SupermoduleError> {
        let bad = |msg: String| SupermoduleError::Malformed(msg);
        if self.schema_version != SCHEMA_VERSION {
            return Err(bad(format!("schema version {} (expected {SCHEMA_VERSION})", self.schema_version)));
        }
        if self.p != F::CHARACTERISTIC {
            return Err(crate::scalars::ScalarError::CharacteristicMismatch(self.p, F::CHARACTERISTIC).into());
        }
        if self.basis.len() != self.dimension {
            return Err(bad(format!("{} basis entries for dimension {}", self.basis.len(), self.dimension)));
        }
        let (n, dim) = (self.n, self.dimension);
        let mut s: Vec<Option<Matrix<F>>> = vec![None; n.saturating_sub(1)];
        let mut x: Vec<Option<Matrix<F>>> = vec![None; n];
        let mut c: Vec<Option<Matrix<F>>> = vec![None; n];
        for g in &self.generators {
            let (kind, idx) = g.name.split_at(1);
            let k: usize = idx.parse().map_err(|_| bad(format!("generator name {}", g.name)))?;
            let slot = match kind {
                "s" if (1..n).contains(&k) => &mut s[k - 1],
                "x" if (1..=n).contains(&k) => &mut x[k - 1],
                "c" if (1..=n).contains(&k) => &mut c[k - 1],
                _ => return Err(bad(format!("generator name {}", g.name))),
            };
            let mut trip = Vec::with_capacity(g.entries.len());
            for (r, col, v) in &g.entries {
                if *r >= dim || *col >= dim {
                    return Err(bad(format!("entry ({r},{col}) of {} outside dimension {dim}", g.name)));
                }
                trip.push((*r, *col, F::from_any(v)?));
            }
            *slot = Some(Matrix::from_triplets(dim, dim, trip));
        }
        let required = |v: Vec<Option<Matrix<F>>>, kind: &str| -> Result<Vec<Matrix<F>>, SupermoduleError> {
            v.into_iter()
                .enumerate()
                .map(|(k, m)| m.ok_or_else(|| SupermoduleError::MissingGenerator(format!("{kind}{}", k + 1))))
                .collect()
        };
        SuperModule::new(
            self.basis.iter().map(|b| b.label.clone()).collect(),
            self.basis.iter().map(|b| b.parity == 1).collect(),
            s,
            required(x, "x")?,
            required(c, "c")?,
            self.indices.iter().copied().collect::<BTreeSet<u32>>(),
        )
    }
}
