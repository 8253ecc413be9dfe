//! Skeletal finite sets: objects are natural numbers `n` standing for
//! `{0, .., n-1}`, arrows are function tables. Decidable equality, canonical
//! forms and cheap enumeration make this the reference instance for the
//! whole axiom suite.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{Capabilities, Category, Cospan, Span};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SkeletalFinSet;

/// A function table `{0..dom-1} -> {0..cod-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinArrow {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

impl FinArrow {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom || table.iter().any(|&v| v >= cod) {
            return Err(Error::Malformed(format!(
                "table {:?} is not a function {} -> {}",
                table, dom, cod
            )));
        }
        Ok(FinArrow { dom, cod, table })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// Canonical mono presenting a sorted subset of `{0..base-1}`.
pub fn subset_mono(base: usize, elems: &[usize]) -> FinArrow {
    debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
    FinArrow { dom: elems.len(), cod: base, table: elems.to_vec() }
}

/// Elements of the subset presented by a canonical mono.
pub fn mono_subset(m: &FinArrow) -> Vec<usize> {
    m.table.clone()
}

/// All function tables `dom -> cod` in lexicographic order.
pub fn all_tables(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    if dom == 0 {
        return vec![vec![]];
    }
    if cod == 0 {
        return vec![];
    }
    let mut out = Vec::with_capacity(cod.pow(dom as u32));
    let mut cur = vec![0usize; dom];
    loop {
        out.push(cur.clone());
        let mut i = dom;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < cod {
                break;
            }
            cur[i] = 0;
        }
    }
}

impl Category for SkeletalFinSet {
    type Obj = usize;
    type Arr = FinArrow;

    fn name(&self) -> String {
        "SkeletalFinSet".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::all()
    }

    fn dom(&self, f: &FinArrow) -> usize {
        f.dom
    }

    fn cod(&self, f: &FinArrow) -> usize {
        f.cod
    }

    fn identity(&self, x: &usize) -> FinArrow {
        FinArrow { dom: *x, cod: *x, table: (0..*x).collect() }
    }

    fn compose(&self, g: &FinArrow, f: &FinArrow) -> Result<FinArrow> {
        if f.cod != g.dom {
            return Err(Error::CompositionMismatch {
                inner: format!("{:?}", f),
                outer: format!("{:?}", g),
            });
        }
        Ok(FinArrow {
            dom: f.dom,
            cod: g.cod,
            table: f.table.iter().map(|&x| g.table[x]).collect(),
        })
    }

    fn obj_size(&self, x: &usize) -> usize {
        *x
    }

    fn objects_up_to(&self, size: usize) -> Vec<usize> {
        (0..=size).collect()
    }

    fn hom(&self, x: &usize, y: &usize) -> Result<Vec<FinArrow>> {
        Ok(all_tables(*x, *y)
            .into_iter()
            .map(|table| FinArrow { dom: *x, cod: *y, table })
            .collect())
    }

    fn is_mono(&self, f: &FinArrow) -> bool {
        let mut seen = vec![false; f.cod];
        for &v in &f.table {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    fn is_cover(&self, f: &FinArrow) -> bool {
        let mut seen = vec![false; f.cod];
        for &v in &f.table {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    fn terminal(&self) -> Result<usize> {
        Ok(1)
    }

    fn initial(&self) -> Result<usize> {
        Ok(0)
    }

    fn product(&self, x: &usize, y: &usize) -> Result<Span<Self>> {
        // pair (i, j) is encoded as i * y + j
        let obj = x * y;
        let left = FinArrow { dom: obj, cod: *x, table: (0..obj).map(|p| p / y).collect() };
        let right = FinArrow { dom: obj, cod: *y, table: (0..obj).map(|p| p % y).collect() };
        Ok(Span { obj, left, right })
    }

    fn pair(&self, f: &FinArrow, g: &FinArrow) -> Result<FinArrow> {
        if f.dom != g.dom {
            return Err(Error::Precondition("pair needs a shared domain".into()));
        }
        let y = g.cod;
        Ok(FinArrow {
            dom: f.dom,
            cod: f.cod * y,
            table: (0..f.dom).map(|z| f.table[z] * y + g.table[z]).collect(),
        })
    }

    fn coproduct(&self, x: &usize, y: &usize) -> Result<Cospan<Self>> {
        let obj = x + y;
        let left = FinArrow { dom: *x, cod: obj, table: (0..*x).collect() };
        let right = FinArrow { dom: *y, cod: obj, table: (0..*y).map(|j| x + j).collect() };
        Ok(Cospan { obj, left, right })
    }

    fn copair(&self, f: &FinArrow, g: &FinArrow) -> Result<FinArrow> {
        if f.cod != g.cod {
            return Err(Error::Precondition("copair needs a shared codomain".into()));
        }
        let mut table = f.table.clone();
        table.extend_from_slice(&g.table);
        Ok(FinArrow { dom: f.dom + g.dom, cod: f.cod, table })
    }

    fn equalizer(&self, f: &FinArrow, g: &FinArrow) -> Result<FinArrow> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::Precondition("equalizer needs a parallel pair".into()));
        }
        let elems: Vec<usize> = (0..f.dom).filter(|&x| f.table[x] == g.table[x]).collect();
        Ok(subset_mono(f.dom, &elems))
    }

    fn coequalizer(&self, f: &FinArrow, g: &FinArrow) -> Result<FinArrow> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::Precondition("coequalizer needs a parallel pair".into()));
        }
        // union-find over cod, classes numbered by least representative
        let mut parent: Vec<usize> = (0..f.cod).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for x in 0..f.dom {
            let a = find(&mut parent, f.table[x]);
            let b = find(&mut parent, g.table[x]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        let mut class_of = vec![usize::MAX; f.cod];
        let mut next = 0;
        for i in 0..f.cod {
            let r = find(&mut parent, i);
            if class_of[r] == usize::MAX {
                class_of[r] = next;
                next += 1;
            }
            class_of[i] = class_of[r];
        }
        Ok(FinArrow { dom: f.cod, cod: next, table: class_of })
    }

    fn image(&self, f: &FinArrow) -> Result<(FinArrow, FinArrow)> {
        let mut elems: Vec<usize> = f.table.clone();
        elems.sort_unstable();
        elems.dedup();
        let mono = subset_mono(f.cod, &elems);
        let pos = |v: usize| elems.binary_search(&v).unwrap();
        let cover = FinArrow {
            dom: f.dom,
            cod: elems.len(),
            table: f.table.iter().map(|&v| pos(v)).collect(),
        };
        Ok((cover, mono))
    }

    fn factor_through_mono(&self, m: &FinArrow, h: &FinArrow) -> Option<FinArrow> {
        if m.cod != h.cod {
            return None;
        }
        let mut index = vec![usize::MAX; m.cod];
        for (i, &v) in m.table.iter().enumerate() {
            index[v] = i;
        }
        let mut table = Vec::with_capacity(h.dom);
        for &v in &h.table {
            if index[v] == usize::MAX {
                return None;
            }
            table.push(index[v]);
        }
        Some(FinArrow { dom: h.dom, cod: m.dom, table })
    }

    fn factor_through_cover(&self, c: &FinArrow, h: &FinArrow) -> Option<FinArrow> {
        if c.dom != h.dom || !self.is_cover(c) {
            return None;
        }
        let mut table = vec![usize::MAX; c.cod];
        for x in 0..c.dom {
            let q = c.table[x];
            if table[q] == usize::MAX {
                table[q] = h.table[x];
            } else if table[q] != h.table[x] {
                return None;
            }
        }
        Some(FinArrow { dom: c.cod, cod: h.cod, table })
    }

    fn subobjects(&self, x: &usize) -> Result<Vec<FinArrow>> {
        if *x > 20 {
            return Err(Error::resource(
                "enumerating subobjects",
                format!("2^{} subsets exceed the configured bound", x),
            ));
        }
        let mut subs = Vec::with_capacity(1 << *x);
        for mask in 0u32..(1u32 << *x) {
            let elems: Vec<usize> = (0..*x).filter(|&i| mask & (1 << i) != 0).collect();
            subs.push(subset_mono(*x, &elems));
        }
        Ok(subs)
    }

    fn forall_sub(&self, f: &FinArrow, s: &FinArrow) -> Result<FinArrow> {
        if s.cod != f.dom {
            return Err(Error::Precondition("forall_sub: subobject not over dom f".into()));
        }
        let mut in_s = vec![false; f.dom];
        for &v in &s.table {
            in_s[v] = true;
        }
        let mut ok = vec![true; f.cod];
        for x in 0..f.dom {
            if !in_s[x] {
                ok[f.table[x]] = false;
            }
        }
        let elems: Vec<usize> = (0..f.cod).filter(|&y| ok[y]).collect();
        Ok(subset_mono(f.cod, &elems))
    }

    fn equivalence_relations(&self, x: &usize) -> Result<Vec<FinArrow>> {
        // partitions of {0..x-1}, each presented as the canonical mono of
        // its relation into x × x under the product encoding i*x + j
        let n = *x;
        let mut out = Vec::new();
        for classes in crate::util::partitions(n) {
            let mut elems = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if classes[i] == classes[j] {
                        elems.push(i * n + j);
                    }
                }
            }
            elems.sort_unstable();
            out.push(subset_mono(n * n, &elems));
        }
        Ok(dedup_sorted(out))
    }

    fn dependent_product(&self, f: &FinArrow, p: &FinArrow) -> Result<Option<FinArrow>> {
        if p.cod != f.dom {
            return Err(Error::Precondition("dependent_product: p must land in dom f".into()));
        }
        // fibre of Π_f p over y is the product of the p-fibres over f^{-1}(y)
        let mut table = Vec::new();
        for y in 0..f.cod {
            let mut size: usize = 1;
            for x in 0..f.dom {
                if f.table[x] == y {
                    let fibre = p.table.iter().filter(|&&v| v == x).count();
                    size = size.saturating_mul(fibre);
                }
            }
            for _ in 0..size {
                table.push(y);
            }
        }
        let dom = table.len();
        Ok(Some(FinArrow { dom, cod: f.cod, table }))
    }

    fn fibre_census(&self, f: &FinArrow) -> Result<Vec<usize>> {
        let mut counts = vec![0usize; f.cod];
        for &v in &f.table {
            counts[v] += 1;
        }
        Ok(counts)
    }

    fn arrow_iso_key(&self, f: &FinArrow) -> Option<u64> {
        let mut census = self.fibre_census(f).ok()?;
        census.sort_unstable();
        let mut h = DefaultHasher::new();
        census.hash(&mut h);
        Some(h.finish())
    }

    fn bang(&self, x: &usize) -> Result<FinArrow> {
        Ok(FinArrow { dom: *x, cod: 1, table: vec![0; *x] })
    }

    fn representability_fill(
        &self,
        pi: &FinArrow,
        f: &FinArrow,
        _search_size: usize,
        _hom_cap: usize,
        strong: bool,
    ) -> Option<bool> {
        // A diagram exists iff every f-fibre is matched by some pi-fibre:
        // with B = Y and p = id, choose u pointwise; conversely any diagram
        // restricts to such a pointwise match along the cover p.
        let pi_census = self.fibre_census(pi).ok()?;
        let f_census = self.fibre_census(f).ok()?;
        let compat = |a: usize, q: usize| -> bool {
            if strong {
                a == q
            } else {
                (a == 0 && q == 0) || (q >= 1 && a >= q)
            }
        };
        Some(f_census.iter().all(|&q| pi_census.iter().any(|&a| compat(a, q))))
    }

    fn wtype_census(&self, f: &FinArrow, depth: usize) -> Option<(Vec<usize>, bool)> {
        let arities = self.fibre_census(f).ok()?;
        let mut counts = Vec::new();
        let mut current: usize = 0;
        let mut converged = false;
        for _ in 0..depth {
            let next: usize = arities
                .iter()
                .map(|&a| current.checked_pow(a as u32).unwrap_or(usize::MAX))
                .fold(0usize, |acc, v| acc.saturating_add(v));
            counts.push(next);
            if next == current {
                converged = true;
                break;
            }
            if next > 1_000_000 {
                break;
            }
            current = next;
        }
        Some((counts, converged))
    }

    fn arrow_with_fibres(&self, fibres: &[usize], cod: &usize) -> Option<FinArrow> {
        if fibres.len() != *cod {
            return None;
        }
        let mut table = Vec::new();
        for (y, &n) in fibres.iter().enumerate() {
            for _ in 0..n {
                table.push(y);
            }
        }
        Some(FinArrow { dom: table.len(), cod: *cod, table })
    }
}

fn dedup_sorted(mut v: Vec<FinArrow>) -> Vec<FinArrow> {
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{self, Category};

    fn arr(dom: usize, cod: usize, t: &[usize]) -> FinArrow {
        FinArrow::new(dom, cod, t.to_vec()).unwrap()
    }

    #[test]
    fn compose_unit_and_tables() {
        let c = SkeletalFinSet;
        let f = arr(3, 2, &[0, 1, 0]);
        let id2 = c.identity(&2);
        assert_eq!(c.compose(&id2, &f).unwrap(), f);
        let g = arr(2, 1, &[0, 0]);
        assert_eq!(c.compose(&g, &f).unwrap(), arr(3, 1, &[0, 0, 0]));
    }

    #[test]
    fn compose_mismatch_errors() {
        let c = SkeletalFinSet;
        let f = arr(2, 1, &[0, 0]);
        let g = arr(3, 2, &[0, 1, 0]);
        assert!(c.compose(&g, &f).is_err());
    }

    #[test]
    fn pullback_over_terminal_is_product() {
        let c = SkeletalFinSet;
        let f = arr(2, 1, &[0, 0]);
        let g = arr(3, 1, &[0, 0, 0]);
        let pb = fincat::pullback(&c, &f, &g).unwrap();
        assert_eq!(pb.obj, 6);
    }

    #[test]
    fn pullback_of_identity_is_domain() {
        let c = SkeletalFinSet;
        let g = arr(3, 2, &[0, 1, 1]);
        let pb = fincat::pullback(&c, &c.identity(&2), &g).unwrap();
        assert_eq!(pb.obj, 3);
        // projection to the right leg is an iso onto dom g
        assert!(c.is_iso(&pb.to_right));
    }

    #[test]
    fn pullback_of_disjoint_points_is_empty() {
        let c = SkeletalFinSet;
        let p0 = arr(1, 2, &[0]);
        let p1 = arr(1, 2, &[1]);
        let pb = fincat::pullback(&c, &p0, &p1).unwrap();
        assert_eq!(pb.obj, 0);
    }

    #[test]
    fn image_of_constant_map() {
        let c = SkeletalFinSet;
        let f = arr(3, 2, &[0, 0, 0]);
        let (cover, mono) = c.image(&f).unwrap();
        assert_eq!(cover, arr(3, 1, &[0, 0, 0]));
        assert_eq!(mono, arr(1, 2, &[0]));
        assert!(c.is_cover(&cover) && c.is_mono(&mono));
        assert_eq!(c.compose(&mono, &cover).unwrap(), f);
    }

    #[test]
    fn image_of_identity() {
        let c = SkeletalFinSet;
        let id = c.identity(&3);
        let (cover, mono) = c.image(&id).unwrap();
        assert_eq!(cover, id);
        assert_eq!(mono, id);
    }

    #[test]
    fn forall_examples() {
        let c = SkeletalFinSet;
        // f: X -> 1 with S full: top of Sub(1)
        let f = arr(3, 1, &[0, 0, 0]);
        let full = subset_mono(3, &[0, 1, 2]);
        assert_eq!(c.forall_sub(&f, &full).unwrap(), subset_mono(1, &[0]));
        // f: 2 -> 1 with S = {0}: bottom of Sub(1)
        let f = arr(2, 1, &[0, 0]);
        let s = subset_mono(2, &[0]);
        assert_eq!(c.forall_sub(&f, &s).unwrap(), subset_mono(1, &[]));
    }

    #[test]
    fn subobjects_of_three_form_powerset() {
        let c = SkeletalFinSet;
        assert_eq!(c.subobjects(&3).unwrap().len(), 8);
        assert_eq!(c.subobjects(&0).unwrap().len(), 1);
    }

    #[test]
    fn coequalizer_collapses() {
        let c = SkeletalFinSet;
        let f = arr(1, 2, &[0]);
        let g = arr(1, 2, &[1]);
        let q = c.coequalizer(&f, &g).unwrap();
        assert_eq!(q.cod, 1);
        assert!(c.is_cover(&q));
    }

    #[test]
    fn equivalence_relations_count_is_bell_number() {
        let c = SkeletalFinSet;
        assert_eq!(c.equivalence_relations(&0).unwrap().len(), 1);
        assert_eq!(c.equivalence_relations(&1).unwrap().len(), 1);
        assert_eq!(c.equivalence_relations(&2).unwrap().len(), 2);
        assert_eq!(c.equivalence_relations(&3).unwrap().len(), 5);
        assert_eq!(c.equivalence_relations(&4).unwrap().len(), 15);
    }

    #[test]
    fn dependent_product_multiplies_fibres() {
        let c = SkeletalFinSet;
        // f: 2 -> 1, p over dom f with fibres 2 and 3: 6 over the point
        let f = arr(2, 1, &[0, 0]);
        let p = arr(5, 2, &[0, 0, 1, 1, 1]);
        let q = c.dependent_product(&f, &p).unwrap().unwrap();
        assert_eq!(q.dom, 6);
        // f = id: dependent product is the identity on the slice
        let idf = c.identity(&2);
        let q = c.dependent_product(&idf, &p).unwrap().unwrap();
        assert_eq!(c.fibre_census(&q).unwrap(), c.fibre_census(&p).unwrap());
    }

    #[test]
    fn quasi_pullback_detects_cover_comparison() {
        let c = SkeletalFinSet;
        // genuine pullback square: comparison is an iso, hence a cover
        let f = arr(2, 1, &[0, 0]);
        let g = arr(3, 1, &[0, 0, 0]);
        let pb = fincat::pullback(&c, &f, &g).unwrap();
        assert!(fincat::quasi_pullback_check(&c, &pb.to_left, &pb.to_right, &f, &g).unwrap());
        // square with non-surjective comparison: 1 over (2 x_1 2)
        let z_left = arr(1, 2, &[0]);
        let id1 = c.identity(&1);
        let p = arr(2, 1, &[0, 0]);
        let q = c.compose(&p, &z_left).unwrap();
        assert!(!fincat::quasi_pullback_check(&c, &z_left, &q, &p, &id1).unwrap());
    }
}
