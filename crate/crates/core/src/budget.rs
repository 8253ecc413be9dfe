use serde::{Deserialize, Serialize};

/// Search ceilings for the instance generators and witness searches.
///
/// Enumeration is deterministic; exceeding a ceiling yields an
/// `INCONCLUSIVE` verdict or a resource error, never a silent pass.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Budget {
    /// Objects of size up to this bound are catalogued as check instances.
    pub max_size: usize,
    /// Size bound for objects introduced by existential witness searches
    /// (the `B`, `Z`, `C` vertices of (C), (R) and (F) diagrams).
    pub search_size: usize,
    /// Hard cap on the number of instances swept per axiom.
    pub max_instances: usize,
    /// Cap on a single hom-set enumeration.
    pub hom_cap: usize,
    /// Cap on the size of a tabulated subobject lattice.
    pub lattice_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_size: 4,
            search_size: 4,
            max_instances: 2_000_000,
            hom_cap: 200_000,
            lattice_cap: 1 << 16,
        }
    }
}

impl Budget {
    pub fn with_size(max_size: usize) -> Self {
        Budget { max_size, search_size: max_size, ..Budget::default() }
    }
}
