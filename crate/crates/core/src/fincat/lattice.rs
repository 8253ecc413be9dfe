//! Tabulated subobject lattices.
//!
//! The lattice is built from the canonical subobject enumeration and the
//! order alone; meets, joins, implication and negation are recovered by
//! scanning, and the Heyting adjunction is verified on every triple while
//! the implication table is filled in. A presentation whose subobjects do
//! not form a Heyting algebra is rejected.

use super::{leq_sub, Category};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SubobjectLattice<C: Category> {
    pub base: C::Obj,
    pub elems: Vec<C::Arr>,
    pub leq: Vec<Vec<bool>>,
    pub top: usize,
    pub bot: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
}

impl<C: Category> SubobjectLattice<C> {
    pub fn build(cat: &C, x: &C::Obj, cap: usize) -> Result<Self> {
        let elems = cat.subobjects(x)?;
        let n = elems.len();
        if n > cap {
            return Err(Error::resource(
                "tabulating a subobject lattice",
                format!("{} subobjects exceed the cap {}", n, cap),
            ));
        }
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = leq_sub(cat, &elems[i], &elems[j]);
            }
        }
        let top = (0..n)
            .find(|&i| (0..n).all(|j| leq[j][i]))
            .ok_or_else(|| Error::Malformed("subobject poset has no top".into()))?;
        let bot = (0..n)
            .find(|&i| (0..n).all(|j| leq[i][j]))
            .ok_or_else(|| Error::Malformed("subobject poset has no bottom".into()))?;

        let glb = |i: usize, j: usize| -> Result<usize> {
            let lower: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
            let m = *lower
                .iter()
                .find(|&&k| lower.iter().all(|&l| leq[l][k]))
                .ok_or_else(|| Error::Malformed("subobject poset is not a meet-semilattice".into()))?;
            Ok(m)
        };
        let lub = |i: usize, j: usize| -> Result<usize> {
            let upper: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
            let m = *upper
                .iter()
                .find(|&&k| upper.iter().all(|&l| leq[k][l]))
                .ok_or_else(|| Error::Malformed("subobject poset is not a join-semilattice".into()))?;
            Ok(m)
        };

        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[i][j] = glb(i, j)?;
                join[i][j] = lub(i, j)?;
            }
        }

        let mut imp = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                // largest k with k ∧ i <= j, verified to satisfy the adjunction
                let mut best = bot;
                for k in 0..n {
                    if leq[meet[k][i]][j] {
                        best = join[best][k];
                    }
                }
                for k in 0..n {
                    let lhs = leq[meet[k][i]][j];
                    let rhs = leq[k][best];
                    if lhs != rhs {
                        return Err(Error::Malformed(format!(
                            "subobject lattice of {:?} is not Heyting at ({}, {})",
                            x, i, j
                        )));
                    }
                }
                imp[i][j] = best;
            }
        }
        let neg = (0..n).map(|i| imp[i][bot]).collect();

        Ok(SubobjectLattice { base: x.clone(), elems, leq, top, bot, meet, join, imp, neg })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, m: &C::Arr) -> Option<usize> {
        self.elems.iter().position(|e| e == m)
    }

    /// Every lattice is Boolean iff double negation is the identity.
    pub fn is_boolean(&self) -> bool {
        (0..self.len()).all(|i| self.neg[self.neg[i]] == i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::finset::SkeletalFinSet;

    #[test]
    fn finset_lattices_are_boolean_powersets() {
        let c = SkeletalFinSet;
        let l = SubobjectLattice::build(&c, &3, 1 << 16).unwrap();
        assert_eq!(l.len(), 8);
        assert!(l.is_boolean());
        let l0 = SubobjectLattice::build(&c, &0, 1 << 16).unwrap();
        assert_eq!(l0.len(), 1);
        assert_eq!(l0.top, l0.bot);
    }

    #[test]
    fn heyting_adjunction_holds_on_all_triples() {
        let c = SkeletalFinSet;
        let l = SubobjectLattice::build(&c, &3, 1 << 16).unwrap();
        for s in 0..l.len() {
            for t in 0..l.len() {
                for u in 0..l.len() {
                    let lhs = l.leq[l.meet[s][t]][u];
                    let rhs = l.leq[s][l.imp[t][u]];
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
