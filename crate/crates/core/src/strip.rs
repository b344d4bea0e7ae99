//! Classification of the integers `1..=limit` against a numerical semigroup,
//! the data behind a molecule strip chart.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numsgp::NumericalSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Atom,
    MoleculeNonAtom,
    NonMolecule,
    Gap,
}

impl PointClass {
    pub const ALL: [PointClass; 4] = [
        PointClass::Atom,
        PointClass::MoleculeNonAtom,
        PointClass::NonMolecule,
        PointClass::Gap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PointClass::Atom => "atom",
            PointClass::MoleculeNonAtom => "molecule_non_atom",
            PointClass::NonMolecule => "non_molecule",
            PointClass::Gap => "gap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripRow {
    pub label: String,
    /// `points[i]` classifies `i + 1`.
    pub points: Vec<PointClass>,
}

impl StripRow {
    pub fn limit(&self) -> u64 {
        self.points.len() as u64
    }

    /// The integers in a class, ascending.
    pub fn members(&self, class: PointClass) -> Vec<u64> {
        (1..=self.limit())
            .filter(|&x| self.points[x as usize - 1] == class)
            .collect()
    }
}

pub fn classify(n: &NumericalSemigroup, x: u64) -> PointClass {
    if !n.contains(x) {
        PointClass::Gap
    } else if n.atoms().binary_search(&x).is_ok() {
        PointClass::Atom
    } else if n.is_molecule(x) {
        PointClass::MoleculeNonAtom
    } else {
        PointClass::NonMolecule
    }
}

/// One row labelled by the semigroup, covering `1..=limit`.
pub fn strip_row(n: &NumericalSemigroup, limit: u64) -> Result<StripRow> {
    if limit == 0 {
        return Err(Error::OutOfRange("strip limit must be at least 1".into()));
    }
    Ok(StripRow {
        label: n.to_string(),
        points: (1..=limit).map(|x| classify(n, x)).collect(),
    })
}
