//! Canonical hereditarily finite sets: sorted, deduplicated member lists,
//! so value equality is extensional equality and the braces notation prints
//! deterministically.

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Hf(Vec<Hf>);

impl Hf {
    pub fn empty() -> Hf {
        Hf(Vec::new())
    }

    pub fn from_members(mut members: Vec<Hf>) -> Hf {
        members.sort();
        members.dedup();
        Hf(members)
    }

    pub fn singleton(x: Hf) -> Hf {
        Hf(vec![x])
    }

    pub fn members(&self) -> &[Hf] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn card(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: &Hf) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn subset_of(&self, other: &Hf) -> bool {
        self.0.iter().all(|m| other.contains(m))
    }

    pub fn union<I: IntoIterator<Item = Hf>>(sets: I) -> Hf {
        let mut members = Vec::new();
        for s in sets {
            members.extend(s.0);
        }
        Hf::from_members(members)
    }

    pub fn insert(&self, x: Hf) -> Hf {
        let mut members = self.0.clone();
        members.push(x);
        Hf::from_members(members)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|m| m.rank() + 1).max().unwrap_or(0)
    }

    /// All subsets, as sets.
    pub fn powerset(&self) -> Vec<Hf> {
        assert!(self.0.len() <= 20, "powerset bound");
        let n = self.0.len();
        (0u32..(1u32 << n))
            .map(|mask| {
                Hf::from_members(
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i].clone()).collect(),
                )
            })
            .collect()
    }
}

impl std::fmt::Display for Hf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", m)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_deduplicates() {
        let a = Hf::from_members(vec![Hf::empty(), Hf::empty()]);
        assert_eq!(a.card(), 1);
        assert_eq!(a, Hf::singleton(Hf::empty()));
    }

    #[test]
    fn braces_notation() {
        let zero = Hf::empty();
        let one = Hf::singleton(zero.clone());
        let two = Hf::from_members(vec![zero.clone(), one.clone()]);
        assert_eq!(zero.to_string(), "{}");
        assert_eq!(one.to_string(), "{{}}");
        assert_eq!(two.to_string(), "{{}, {{}}}");
    }

    #[test]
    fn rank_counts_nesting() {
        let zero = Hf::empty();
        let one = Hf::singleton(zero.clone());
        let two = Hf::from_members(vec![zero.clone(), one.clone()]);
        assert_eq!(zero.rank(), 0);
        assert_eq!(one.rank(), 1);
        assert_eq!(two.rank(), 2);
    }
}
