use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactalg::{Field, Ring, RingRef, Variable};
use crate::{Error, Result};

/// A group by its polynomial cohomology: generator names and even degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    name: String,
    generators: Vec<(String, u32)>,
    weyl_order: Option<u64>,
}

impl GroupPresentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<(String, u32)>,
        weyl_order: Option<u64>,
    ) -> Result<GroupPresentation> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        for (g, d) in &generators {
            if *d == 0 || d % 2 == 1 {
                return Err(Error::Invalid(format!(
                    "generator `{g}` of {name} has degree {d}; degrees must be even and positive"
                )));
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::Invalid(format!("generator `{g}` of {name} is listed twice")));
            }
            if g.is_empty() || g.contains('\'') {
                return Err(Error::Invalid(format!("invalid generator name `{g}` in {name}")));
            }
        }
        if weyl_order == Some(0) {
            return Err(Error::Invalid(format!("Weyl order of {name} must be positive")));
        }
        Ok(GroupPresentation { name, generators, weyl_order })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.generators.iter().map(|(_, d)| *d)
    }

    pub fn weyl_order(&self) -> Option<u64> {
        self.weyl_order
    }

    /// Real dimension, `Σ (deg − 1)`.
    pub fn dimension(&self) -> u32 {
        self.degrees().map(|d| d - 1).sum()
    }

    /// The polynomial ring on the generators.
    pub fn ring(&self, field: Field) -> RingRef {
        Ring::new(field, self.generators.iter().map(|(n, d)| Variable::new(n.clone(), 0, *d)).collect())
            .expect("generators validated")
    }
}
