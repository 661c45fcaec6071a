use serde::Serialize;

use crate::setcore::{Subset, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub name: String,
    #[serde(skip)]
    pub subset: Subset,
    pub set: Vec<String>,
}

/// Verdict for one universally quantified condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub condition: String,
    pub holds: bool,
    pub witness: Option<Vec<WitnessEntry>>,
    pub instances_checked: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub(crate) fn new(subject: &str, condition: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.to_string(),
            condition: condition.into(),
            holds: true,
            witness: None,
            instances_checked: 0,
            notes: Vec::new(),
        }
    }

    pub(crate) fn fail(&mut self, u: &Universe, names: &[&str], sets: &[u64]) {
        debug_assert_eq!(names.len(), sets.len());
        self.holds = false;
        self.witness = Some(witness(u, names, sets));
    }

    pub fn witness_set(&self, name: &str) -> Option<Subset> {
        self.witness.as_ref()?.iter().find(|w| w.name == name).map(|w| w.subset)
    }

    pub fn witness_sets(&self) -> Vec<Subset> {
        self.witness.iter().flatten().map(|w| w.subset).collect()
    }
}

pub(crate) fn witness(u: &Universe, names: &[&str], sets: &[u64]) -> Vec<WitnessEntry> {
    names
        .iter()
        .zip(sets)
        .map(|(n, &m)| {
            let subset = Subset::raw(m, u.width());
            WitnessEntry { name: n.to_string(), subset, set: u.labels_of(&subset) }
        })
        .collect()
}

/// Names for a tuple `prefix1..prefixN`.
pub(crate) fn indexed(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}
