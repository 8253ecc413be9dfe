//! Rank-truncated cumulative hierarchy: the desk-scale surrogate of the
//! initial ZF-algebra. No finite universal small map exists (the (R) verdict
//! documents this), so each stage takes all subsets of the previous stage;
//! the order is inclusion, successor is singleton, suprema are unions, and
//! membership defined by `x ε y := s x ≤ y` coincides with extensional
//! membership.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::hf::Hf;

#[derive(Clone, Debug)]
pub struct VApprox {
    pub rank: usize,
    /// all elements of `V_rank`, ordered by (birth rank, set order)
    pub elems: Vec<Hf>,
    /// birth stage of each element
    pub births: Vec<usize>,
    index: BTreeMap<Hf, usize>,
}

/// Builds `V_rank` by iterating the powerset: `V_0 = ∅`,
/// `V_{k+1} = all subsets of V_k`. Element counts explode at rank 5.
pub fn build_v(rank: usize) -> Result<VApprox> {
    if rank > 4 {
        return Err(Error::resource(
            "building the cumulative hierarchy",
            format!("rank {} requested; counts explode at rank 5", rank),
        ));
    }
    let mut stage: Vec<Hf> = Vec::new();
    let mut elems: Vec<Hf> = Vec::new();
    let mut births: Vec<usize> = Vec::new();
    let mut index = BTreeMap::new();
    for k in 1..=rank {
        let current = Hf::from_members(stage.clone());
        let mut next: Vec<Hf> = current.powerset();
        next.sort();
        for s in &next {
            if !index.contains_key(s) {
                index.insert(s.clone(), elems.len());
                births.push(k);
                elems.push(s.clone());
            }
        }
        stage = next;
    }
    Ok(VApprox { rank, elems, births, index })
}

impl VApprox {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, h: &Hf) -> Option<usize> {
        self.index.get(h).copied()
    }

    pub fn birth_rank(&self, i: usize) -> usize {
        self.births[i]
    }

    /// The ZF-algebra order: inclusion.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.elems[i].subset_of(&self.elems[j])
    }

    /// Successor as a value; always defined, even when the singleton falls
    /// outside the table at the top rank.
    pub fn succ_value(&self, i: usize) -> Hf {
        Hf::singleton(self.elems[i].clone())
    }

    pub fn succ_index(&self, i: usize) -> Option<usize> {
        self.index_of(&self.succ_value(i))
    }

    /// Small suprema: unions of element families.
    pub fn sup_value(&self, indices: &[usize]) -> Hf {
        Hf::union(indices.iter().map(|&i| self.elems[i].clone()))
    }

    /// Membership via the ZF-algebra definition `x ε y := s x ≤ y`.
    pub fn mem_via_succ(&self, i: usize, j: usize) -> bool {
        self.succ_value(i).subset_of(&self.elems[j])
    }

    /// Direct extensional membership.
    pub fn mem_direct(&self, i: usize, j: usize) -> bool {
        self.elems[j].contains(&self.elems[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_counts_follow_powerset_iteration() {
        let counts: Vec<usize> = (0..=4).map(|r| build_v(r).unwrap().len()).collect();
        assert_eq!(counts, vec![0, 1, 2, 4, 16]);
    }

    #[test]
    fn rank_five_is_a_resource_error() {
        assert!(build_v(5).is_err());
    }

    #[test]
    fn successor_and_membership_definitions() {
        let v = build_v(3).unwrap();
        let empty = v.index_of(&Hf::empty()).unwrap();
        let one = v.index_of(&Hf::singleton(Hf::empty())).unwrap();
        assert_eq!(v.succ_index(empty), Some(one));
        assert!(v.mem_via_succ(empty, one));
        assert!(v.mem_direct(empty, one));
    }

    #[test]
    fn membership_definitions_agree_exhaustively() {
        let v = build_v(4).unwrap();
        for i in 0..v.len() {
            for j in 0..v.len() {
                assert_eq!(v.mem_via_succ(i, j), v.mem_direct(i, j));
            }
        }
    }

    #[test]
    fn stages_embed_coherently() {
        let v3 = build_v(3).unwrap();
        let v4 = build_v(4).unwrap();
        for (i, e) in v3.elems.iter().enumerate() {
            let j = v4.index_of(e).expect("V_3 embeds in V_4");
            assert_eq!(v3.birth_rank(i), v4.birth_rank(j));
            // order, successor and membership agree along the embedding
            for (i2, e2) in v3.elems.iter().enumerate() {
                let j2 = v4.index_of(e2).unwrap();
                assert_eq!(v3.le(i, i2), v4.le(j, j2));
                assert_eq!(v3.mem_direct(i, i2), v4.mem_direct(j, j2));
            }
            assert_eq!(v3.succ_value(i), v4.succ_value(j));
        }
    }

    #[test]
    fn sup_is_least_upper_bound() {
        let v = build_v(3).unwrap();
        // exhaustive over families from V_3
        let n = v.len();
        for mask in 0u32..(1 << n) {
            let fam: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let sup = v.sup_value(&fam);
            for &i in &fam {
                assert!(v.elems[i].subset_of(&sup));
            }
            for z in 0..n {
                if fam.iter().all(|&i| v.elems[i].subset_of(&v.elems[z])) {
                    assert!(sup.subset_of(&v.elems[z]));
                }
            }
        }
    }
}
