//! The completion interface: the embedding of finite sets, the completed
//! class of small maps characterized by quasi-pullback witnesses, the
//! embedding verification report and stable quotients of bounded
//! equivalence relations.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::finset::{FinArrow, SkeletalFinSet};
use crate::fincat::{exact_diagram_check, pullback, pullback_mediator, quasi_pullback_check, Category};
use crate::smallmaps::MapClass;

use super::excat::{ExArr, ExCat, ExObj};

/// The embedding on objects: a finite set with the discrete relation.
pub fn y_obj(n: usize) -> ExObj {
    ExObj::discrete(n)
}

/// The embedding on arrows.
pub fn y_arr(f: &FinArrow) -> ExArr {
    ExArr::from_function(y_obj(f.dom), y_obj(f.cod), &f.table)
        .expect("functions respect discrete relations")
}

/// Recovers the underlying function of an arrow between embedded objects.
pub fn y_preimage(g: &ExArr) -> Option<FinArrow> {
    if g.dom.rel != super::excat::Rel::identity(g.dom.size)
        || g.cod.rel != super::excat::Rel::identity(g.cod.size)
    {
        return None;
    }
    let mut table = Vec::with_capacity(g.dom.size);
    for x in 0..g.dom.size {
        let mut hits = (0..g.cod.size).filter(|&y| g.rel.get(x, y));
        let y = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        table.push(y);
    }
    FinArrow::new(g.dom.size, g.cod.size, table).ok()
}

/// The completed class: an arrow of the completion is small iff it fits into
/// a quasi-pullback square over the image of a small base map, with covers
/// on the horizontal edges. Membership is decided by a bounded witness
/// search; the bound lives in the class value.
pub fn completed_class(base: &MapClass<SkeletalFinSet>, budget: &Budget) -> MapClass<ExCat> {
    let inner = base.clone();
    let search = budget.search_size;
    MapClass::from_fn(format!("{}-completed", base.name), move |cat: &ExCat, g: &ExArr| {
        // fast path: arrows between embedded objects with a small preimage
        if let Some(f0) = y_preimage(g) {
            let fin = SkeletalFinSet;
            if inner.contains(&fin, &f0) {
                return true;
            }
        }
        completed_witness_search(cat, &inner, g, search).unwrap_or(false)
    })
}

fn completed_witness_search(
    cat: &ExCat,
    base: &MapClass<SkeletalFinSet>,
    g: &ExArr,
    search: usize,
) -> Result<bool> {
    let fin = SkeletalFinSet;
    let b_obj = g.dom.clone();
    let a_obj = g.cod.clone();
    for d in 0..=search {
        for c in 0..=search {
            for f in fin.hom(&d, &c)? {
                if !base.contains(&fin, &f) {
                    continue;
                }
                let yf = y_arr(&f);
                let rs: Vec<ExArr> = cat
                    .hom(&yf.dom, &b_obj)?
                    .into_iter()
                    .filter(|r| cat.is_cover(r))
                    .collect();
                if rs.is_empty() {
                    continue;
                }
                let qs: Vec<ExArr> = cat
                    .hom(&yf.cod, &a_obj)?
                    .into_iter()
                    .filter(|q| cat.is_cover(q))
                    .collect();
                for r in &rs {
                    for q in &qs {
                        let lhs = cat.compose(g, r)?;
                        let rhs = cat.compose(q, &yf)?;
                        if lhs != rhs {
                            continue;
                        }
                        if quasi_pullback_check(cat, r, &yf, g, q)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Builds the completion of skeletal finite sets relative to a class: the
/// category together with the completed class.
pub fn ex_complete(
    base: &MapClass<SkeletalFinSet>,
    budget: &Budget,
) -> (ExCat, MapClass<ExCat>) {
    (ExCat, completed_class(base, budget))
}

/// The canonical isomorphism from an object of the completion to the image
/// of its actual quotient set.
pub fn collapse_iso(cat: &ExCat, e: &ExObj) -> Result<ExArr> {
    let classes = e.classes();
    let mut class_of = vec![0usize; e.size];
    for (i, cls) in classes.iter().enumerate() {
        for &x in cls {
            class_of[x] = i;
        }
    }
    let target = y_obj(classes.len());
    let arr = ExArr::from_function(e.clone(), target, &class_of)?;
    if !cat.is_iso(&arr) {
        return Err(Error::Malformed("collapse map is not an isomorphism".into()));
    }
    Ok(arr)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub objects_checked: usize,
    pub fully_faithful: bool,
    pub subobject_bijective: bool,
    pub heyting_preserved: bool,
    pub sums_preserved: bool,
    pub covers_preserved: bool,
    pub smallness_preserved_and_reflected: bool,
    pub detail: Vec<String>,
}

impl EmbeddingReport {
    pub fn all_ok(&self) -> bool {
        self.fully_faithful
            && self.subobject_bijective
            && self.heyting_preserved
            && self.sums_preserved
            && self.covers_preserved
            && self.smallness_preserved_and_reflected
    }
}

/// Checks the embedding properties on all objects up to the budget size:
/// full faithfulness, subobject bijectivity, preservation of the Heyting
/// operations and sums, and preservation and reflection of smallness for
/// the supplied class.
pub fn verify_embedding(
    base: &MapClass<SkeletalFinSet>,
    comp: &MapClass<ExCat>,
    budget: &Budget,
) -> Result<EmbeddingReport> {
    let fin = SkeletalFinSet;
    let cat = ExCat;
    let mut detail = Vec::new();
    let bound = budget.max_size;

    let mut fully_faithful = true;
    for x in 0..=bound {
        for y in 0..=bound {
            let fin_hom = fin.hom(&x, &y)?;
            let ex_hom = cat.hom(&y_obj(x), &y_obj(y))?;
            let mut images: Vec<ExArr> = fin_hom.iter().map(y_arr).collect();
            images.sort();
            images.dedup();
            if images.len() != fin_hom.len() || ex_hom.len() != fin_hom.len() {
                fully_faithful = false;
                detail.push(format!(
                    "hom({}, {}): {} in the base, {} embedded, {} in the completion",
                    x,
                    y,
                    fin_hom.len(),
                    images.len(),
                    ex_hom.len()
                ));
            }
        }
    }

    let mut subobject_bijective = true;
    for x in 0..=bound {
        let fin_subs = fin.subobjects(&x)?;
        let ex_subs = cat.subobjects(&y_obj(x))?;
        if fin_subs.len() != ex_subs.len() {
            subobject_bijective = false;
            detail.push(format!(
                "Sub({}): {} in the base, {} in the completion",
                x,
                fin_subs.len(),
                ex_subs.len()
            ));
        }
    }

    // Heyting structure: meets, joins and implication of subobjects commute
    // with the embedding on a sampled object
    let mut heyting_preserved = true;
    {
        let x = bound.min(3);
        let fin_subs = fin.subobjects(&x)?;
        let embed = |s: &FinArrow| -> Result<ExArr> { cat.canon_sub(&y_arr(s)) };
        for s in &fin_subs {
            for t in &fin_subs {
                let ms = crate::fincat::meet_sub(&fin, s, t)?;
                let js = crate::fincat::join_sub(&fin, s, t)?;
                let is = crate::fincat::imp_sub(&fin, s, t)?;
                let em = crate::fincat::meet_sub(&cat, &embed(s)?, &embed(t)?)?;
                let ej = crate::fincat::join_sub(&cat, &embed(s)?, &embed(t)?)?;
                let ei = crate::fincat::imp_sub(&cat, &embed(s)?, &embed(t)?)?;
                if embed(&ms)? != em || embed(&js)? != ej || embed(&is)? != ei {
                    heyting_preserved = false;
                    detail.push(format!("Heyting operations differ at subobjects of {}", x));
                }
            }
        }
    }

    let mut sums_preserved = true;
    for x in 0..=bound.min(3) {
        for y in 0..=bound.min(3) {
            let fin_co = fin.coproduct(&x, &y)?;
            let iso = cat.copair(&y_arr(&fin_co.left), &y_arr(&fin_co.right))?;
            if !cat.is_iso(&iso) {
                sums_preserved = false;
                detail.push(format!("y({} + {}) is not the completion coproduct", x, y));
            }
        }
    }

    let mut covers_preserved = true;
    for f in crate::smallmaps::catalog_arrows(&fin, bound.min(3))? {
        if fin.is_cover(&f) && !cat.is_cover(&y_arr(&f)) {
            covers_preserved = false;
            detail.push(format!("cover {:?} not preserved", f));
        }
    }

    let mut smallness = true;
    for f in crate::smallmaps::catalog_arrows(&fin, bound)? {
        let in_base = base.contains(&fin, &f);
        let in_comp = comp.contains(&cat, &y_arr(&f));
        if in_base != in_comp {
            smallness = false;
            detail.push(format!(
                "smallness not preserved/reflected at {:?}: base {}, completion {}",
                f, in_base, in_comp
            ));
        }
    }

    Ok(EmbeddingReport {
        objects_checked: bound + 1,
        fully_faithful,
        subobject_bijective,
        heyting_preserved,
        sums_preserved,
        covers_preserved,
        smallness_preserved_and_reflected: smallness,
        detail,
    })
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub quotient: ExObj,
    pub map: ExArr,
    pub exact: bool,
    pub stable_failures: Vec<ExArr>,
    pub pullbacks_checked: usize,
}

impl QuotientReport {
    pub fn stable(&self) -> bool {
        self.exact && self.stable_failures.is_empty()
    }
}

/// Quotient of a bounded equivalence relation in the completion: the
/// coequalizing object with exactness and stability checked against sampled
/// pullbacks.
pub fn quotient_in_completion(
    class: &MapClass<ExCat>,
    e: &ExObj,
    rel: &ExArr,
    budget: &Budget,
) -> Result<QuotientReport> {
    let cat = ExCat;
    if !class.contains(&cat, rel) {
        return Err(Error::Precondition(format!(
            "the equivalence relation is not bounded for class {}",
            class.name
        )));
    }
    let prod = cat.product(e, e)?;
    let r0 = cat.compose(&prod.left, rel)?;
    let r1 = cat.compose(&prod.right, rel)?;
    let q = cat.coequalizer(&r0, &r1)?;
    let exact = exact_diagram_check(&cat, &r0, &r1, &q)?;
    let mut stable_failures = Vec::new();
    let mut pullbacks_checked = 0;
    'outer: for p_obj in cat.objects_up_to(budget.search_size) {
        for p in cat.hom(&p_obj, &cat.cod(&q))? {
            pullbacks_checked += 1;
            if !stable_along_ex(&cat, &r0, &r1, &q, &p)? {
                stable_failures.push(p);
            }
            if pullbacks_checked >= 64 {
                break 'outer;
            }
        }
    }
    Ok(QuotientReport { quotient: cat.cod(&q), map: q, exact, stable_failures, pullbacks_checked })
}

fn stable_along_ex(
    cat: &ExCat,
    r0: &ExArr,
    r1: &ExArr,
    q: &ExArr,
    p: &ExArr,
) -> Result<bool> {
    let qr0 = cat.compose(q, r0)?;
    let x_pb = pullback(cat, q, p)?;
    let r_pb = pullback(cat, &qr0, p)?;
    let q_pulled = x_pb.to_right.clone();
    let r0_l = cat.compose(r0, &r_pb.to_left)?;
    let r1_l = cat.compose(r1, &r_pb.to_left)?;
    let r0p = pullback_mediator(cat, q, p, &r0_l, &r_pb.to_right)?
        .ok_or_else(|| Error::Malformed("pulled relation leg does not mediate".into()))?;
    let r1p = pullback_mediator(cat, q, p, &r1_l, &r_pb.to_right)?
        .ok_or_else(|| Error::Malformed("pulled relation leg does not mediate".into()))?;
    exact_diagram_check(cat, &r0p, &r1p, &q_pulled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts_match_through_embedding() {
        let fin = SkeletalFinSet;
        let cat = ExCat;
        assert_eq!(fin.hom(&2, &3).unwrap().len(), 9);
        assert_eq!(cat.hom(&y_obj(2), &y_obj(3)).unwrap().len(), 9);
    }

    #[test]
    fn every_object_collapses_to_an_embedded_one() {
        let cat = ExCat;
        for e in cat.objects_up_to(3) {
            let iso = collapse_iso(&cat, &e).unwrap();
            assert_eq!(iso.cod.size, e.class_count());
        }
    }

    #[test]
    fn smallness_preserved_and_reflected_for_fibre_class() {
        let base = MapClass::builtin("fibre<3").unwrap();
        let budget = Budget::with_size(3);
        let (cat, comp) = ex_complete(&base, &budget);
        let fin = SkeletalFinSet;
        // in the class: 2 -> 1
        let small = FinArrow::new(2, 1, vec![0, 0]).unwrap();
        assert!(base.contains(&fin, &small));
        assert!(comp.contains(&cat, &y_arr(&small)));
        // not in the class: 3 -> 1
        let big = FinArrow::new(3, 1, vec![0, 0, 0]).unwrap();
        assert!(!base.contains(&fin, &big));
        assert!(!comp.contains(&cat, &y_arr(&big)));
    }
}
