use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// Graded dimensions `h_0..h_d` of an artinian algebra; `d` is the socle
/// degree. Entries past `d` are zero and not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector {
    entries: Vec<usize>,
}

impl HVector {
    pub fn new(entries: Vec<usize>) -> Self {
        HVector { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// Index of the last entry; `None` when empty.
    pub fn socle_degree(&self) -> Option<usize> {
        self.entries.len().checked_sub(1)
    }

    /// `h_i`, zero beyond the stored range.
    pub fn at(&self, i: usize) -> usize {
        self.entries.get(i).copied().unwrap_or(0)
    }

    /// Componentwise `self <= other`, padding the shorter with zeros.
    pub fn le_componentwise(&self, other: &HVector) -> bool {
        let n = self.entries.len().max(other.entries.len());
        (0..n).all(|i| self.at(i) <= other.at(i))
    }
}

impl Deref for HVector {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.entries
    }
}

impl From<Vec<usize>> for HVector {
    fn from(entries: Vec<usize>) -> Self {
        HVector { entries }
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
