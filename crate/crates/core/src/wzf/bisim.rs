//! Extensional bisimulation on well-founded trees: two trees are identified
//! exactly when their children collapse to equal sets, recursively. Root
//! constructor labels only index arities and do not survive the collapse,
//! matching the construction of the set-theoretic universe from trees.

use super::hf::Hf;
use super::wtree::WTree;

/// Recursive set-collapse of a tree: the set of collapses of its children.
pub fn collapse(tree: &WTree) -> Hf {
    Hf::from_members(tree.children.iter().map(collapse).collect())
}

/// Canonical representatives under extensional bisimulation: one tree per
/// collapse value, the least in tree order; output ordered by collapse.
/// Idempotent by construction.
pub fn bisim_quotient(trees: &[WTree]) -> Vec<WTree> {
    let mut classes: std::collections::BTreeMap<Hf, WTree> = std::collections::BTreeMap::new();
    for t in trees {
        let key = collapse(t);
        match classes.get(&key) {
            Some(existing) if existing <= t => {}
            _ => {
                classes.insert(key, t.clone());
            }
        }
    }
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_extensions_stay_distinct() {
        // {∅} and {∅, {∅}} as trees over a two-constructor signature
        let leaf = WTree::leaf(0);
        let one = WTree { root: 1, children: vec![leaf.clone()] };
        let two = WTree { root: 1, children: vec![leaf.clone(), one.clone()] };
        let q = bisim_quotient(&[one.clone(), two.clone()]);
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn duplicated_subtrees_are_identified() {
        let leaf = WTree::leaf(0);
        let single = WTree { root: 1, children: vec![leaf.clone()] };
        let doubled = WTree { root: 2, children: vec![leaf.clone(), leaf.clone()] };
        assert_eq!(collapse(&single), collapse(&doubled));
        let q = bisim_quotient(&[single, doubled]);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn empty_input_empty_output_and_idempotent() {
        assert!(bisim_quotient(&[]).is_empty());
        let leaf = WTree::leaf(0);
        let one = WTree { root: 1, children: vec![leaf.clone()] };
        let q1 = bisim_quotient(&[leaf, one]);
        let q2 = bisim_quotient(&q1);
        assert_eq!(q1, q2);
    }
}
