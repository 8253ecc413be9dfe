//! Depth-truncated W-types: well-founded trees over a polynomial signature,
//! enumerated by iterating the polynomial functor on the initial object.
//! When the iteration stabilizes, the enumeration is the initial algebra and
//! the structure map is an isomorphism, which the tests verify against
//! sampled algebras.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::util::choice_vectors;

use super::poly::PolynomialSignature;

/// A well-founded tree: a root constructor and one subtree per element of
/// the root's arity fibre, in fibre order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WTree {
    pub root: usize,
    pub children: Vec<WTree>,
}

impl WTree {
    pub fn leaf(root: usize) -> WTree {
        WTree { root, children: Vec::new() }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

/// Enumerates all trees of depth ≤ `depth` by iterating `P_f` on the initial
/// object; `converged` is true when the iteration stabilizes at or before
/// the bound. Overflow produces a resource error carrying the partial
/// census.
pub fn wtype(sig: &PolynomialSignature, depth: usize) -> Result<(Vec<WTree>, bool)> {
    let mut current: BTreeSet<WTree> = BTreeSet::new();
    let mut converged = false;
    for _ in 0..depth {
        let next = apply_functor(sig, &current)?;
        if next == current {
            converged = true;
            break;
        }
        current = next;
    }
    if !converged && depth > 0 {
        // one more application to detect stabilization exactly at the bound
        let next = apply_functor(sig, &current)?;
        if next == current {
            converged = true;
        }
    }
    if depth == 0 {
        let next = apply_functor(sig, &current)?;
        converged = next == current;
    }
    Ok((current.into_iter().collect(), converged))
}

/// Cumulative census per depth from 1 to `depth`.
pub fn wtype_census(sig: &PolynomialSignature, depth: usize) -> Result<Vec<usize>> {
    let mut current: BTreeSet<WTree> = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..depth {
        current = apply_functor(sig, &current)?;
        out.push(current.len());
    }
    Ok(out)
}

fn apply_functor(sig: &PolynomialSignature, trees: &BTreeSet<WTree>) -> Result<BTreeSet<WTree>> {
    let pool: Vec<&WTree> = trees.iter().collect();
    let mut out = BTreeSet::new();
    for y in 0..sig.constructors() {
        let arity = sig.arities[y];
        let slots = vec![pool.len(); arity];
        for choice in choice_vectors(&slots) {
            let children: Vec<WTree> = choice.iter().map(|&i| pool[i].clone()).collect();
            out.insert(WTree { root: y, children });
            if out.len() > 100_000 {
                return Err(Error::resource(
                    "enumerating a W-type",
                    format!("more than 100000 trees; partial census {}", out.len()),
                ));
            }
        }
    }
    Ok(out)
}

/// A finite algebra for the polynomial functor: a carrier `{0..n-1}` and a
/// structure table assigning an element to every `(constructor, argument
/// tuple)` pair.
#[derive(Clone, Debug)]
pub struct PfAlgebra {
    pub carrier: usize,
    /// table indexed in the enumeration order of `pf_elements`
    pub table: Vec<usize>,
}

/// Enumerates `P_f(A)` for a carrier of the given size: pairs of a
/// constructor and a tuple of carrier elements indexed by its fibre.
pub fn pf_elements(sig: &PolynomialSignature, carrier: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for y in 0..sig.constructors() {
        let slots = vec![carrier; sig.arities[y]];
        for choice in choice_vectors(&slots) {
            out.push((y, choice));
        }
    }
    out
}

/// Folds a tree through an algebra.
pub fn fold_tree(sig: &PolynomialSignature, alg: &PfAlgebra, tree: &WTree) -> Result<usize> {
    let folded: Vec<usize> = tree
        .children
        .iter()
        .map(|c| fold_tree(sig, alg, c))
        .collect::<Result<_>>()?;
    let elems = pf_elements(sig, alg.carrier);
    let idx = elems
        .iter()
        .position(|(y, args)| *y == tree.root && *args == folded)
        .ok_or_else(|| Error::Malformed("tree does not match the signature".into()))?;
    Ok(alg.table[idx])
}

/// Counts algebra morphisms from the (converged) W-type to an algebra by
/// exhausting all functions and filtering the homomorphism law.
pub fn algebra_morphism_count(
    sig: &PolynomialSignature,
    trees: &[WTree],
    alg: &PfAlgebra,
) -> Result<usize> {
    let n = trees.len();
    let slots = vec![alg.carrier; n];
    let elems = pf_elements(sig, alg.carrier);
    let index_of = |t: &WTree| trees.iter().position(|u| u == t);
    let mut count = 0;
    'next: for h in choice_vectors(&slots) {
        for (i, t) in trees.iter().enumerate() {
            let args: Vec<usize> = t
                .children
                .iter()
                .map(|c| index_of(c).map(|j| h[j]))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Malformed("subtree missing from enumeration".into()))?;
            let idx = elems
                .iter()
                .position(|(y, a)| *y == t.root && *a == args)
                .ok_or_else(|| Error::Malformed("algebra element missing".into()))?;
            if h[i] != alg.table[idx] {
                continue 'next;
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Whether the structure map `P_f(W) -> W` of a converged enumeration is a
/// bijection.
pub fn structure_map_is_iso(sig: &PolynomialSignature, trees: &[WTree]) -> bool {
    let mut seen = BTreeSet::new();
    let pool: BTreeSet<&WTree> = trees.iter().collect();
    for y in 0..sig.constructors() {
        let slots = vec![trees.len(); sig.arities[y]];
        for choice in choice_vectors(&slots) {
            let t = WTree {
                root: y,
                children: choice.iter().map(|&i| trees[i].clone()).collect(),
            };
            if !pool.contains(&t) {
                return false; // not surjective onto W, or W not closed
            }
            if !seen.insert(t) {
                return false; // not injective
            }
        }
    }
    seen.len() == trees.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::finset::FinArrow;

    fn sig(dom: usize, cod: usize, table: &[usize]) -> PolynomialSignature {
        PolynomialSignature::new(FinArrow::new(dom, cod, table.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn single_nullary_constructor_gives_one_leaf() {
        let s = sig(0, 1, &[]);
        let (trees, converged) = wtype(&s, 5).unwrap();
        assert_eq!(trees.len(), 1);
        assert!(converged);
        assert!(structure_map_is_iso(&s, &trees));
    }

    #[test]
    fn single_unary_constructor_has_no_trees() {
        let s = sig(1, 1, &[0]);
        let (trees, converged) = wtype(&s, 5).unwrap();
        assert!(trees.is_empty());
        assert!(converged);
    }

    #[test]
    fn nullary_plus_unary_census_grows_linearly() {
        // constructor 0 is nullary, constructor 1 is unary
        let s = sig(1, 2, &[1]);
        let census = wtype_census(&s, 4).unwrap();
        assert_eq!(census, vec![1, 2, 3, 4]);
        let (_, converged) = wtype(&s, 4).unwrap();
        assert!(!converged);
    }
}
