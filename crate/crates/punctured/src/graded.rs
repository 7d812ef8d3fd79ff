//! Graded basis spaces: the carrier of every hom space and complex term.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::KitError;

/// One basis element with an integer (or mod-2) degree and an optional
/// integer weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub id: String,
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
}

/// A finite-basis graded vector space (the field lives in the container).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasisSpace {
    pub basis: Vec<BasisElement>,
}

impl GradedBasisSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self, KitError> {
        let mut seen = BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.id.clone()) {
                return Err(KitError::Schema(format!("duplicate basis id `{}`", b.id)));
            }
        }
        Ok(GradedBasisSpace { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.id == id)
    }

    pub fn get(&self, id: &str) -> Option<&BasisElement> {
        self.basis.iter().find(|b| b.id == id)
    }
}
