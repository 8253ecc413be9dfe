//! The fullness axiom (F): for small `A -> X` and `B -> X` there is, after
//! passing to a cover of `X`, a small family of multi-valued functions from
//! `A` to `B` such that every multi-valued function contains a pulled-back
//! member of the family. The quantifier nest is searched within tight
//! bounds; the inner quantifier reads as written, with `D` ranging over the
//! slice over the cover.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{leq_sub, pullback, pullback_mediator, pullback_sub, Category};

use super::{AxiomId, AxiomVerdict, Evidence, MapClass, Outcome};

/// A multi-valued function from `A` to `B` over a base `W`: a jointly monic
/// span presented as a canonical subobject of the fibred product
/// `A ×_W B`, with the leg to `A` a cover and the apex small over `W`.
#[derive(Clone, Debug)]
pub struct MultiValuedSpan<C: Category> {
    pub sub: C::Arr,
}

/// Object over `E` pulled back along `x: E -> W` from `a: A -> W`, with the
/// comparison back to `A`. The object is the canonical pullback, so two
/// transports along the same arrow agree on the nose.
fn pull_over<C: Category>(cat: &C, x: &C::Arr, a: &C::Arr) -> Result<(C::Arr, C::Arr)> {
    let pb = pullback(cat, a, x)?;
    Ok((pb.to_right, pb.to_left))
}

/// Enumerates the poset `M_W(A, B)` of multi-valued spans for objects
/// `a: A -> W`, `b: B -> W`.
pub fn mv_spans<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    a: &C::Arr,
    b: &C::Arr,
) -> Result<Vec<MultiValuedSpan<C>>> {
    let fp = pullback(cat, a, b)?;
    let to_w = cat.compose(a, &fp.to_left)?;
    let mut out = Vec::new();
    for sub in cat.subobjects(&fp.obj)? {
        let leg_a = cat.compose(&fp.to_left, &sub)?;
        if !cat.is_cover(&leg_a) {
            continue;
        }
        let apex_over_w = cat.compose(&to_w, &sub)?;
        if !class.contains(cat, &apex_over_w) {
            continue;
        }
        out.push(MultiValuedSpan { sub });
    }
    Ok(out)
}

/// Transports a span over `dom v` to the canonical fibred product over
/// `dom w`, along `x: dom w -> dom v` with `w = v ∘ x`. `ap`, `bp` are the
/// ambient objects over the shared base. Both sides of the fullness
/// comparison are routed through this so they land in the same canonical
/// ambient and can be compared as subobjects.
fn transport_span<C: Category>(
    cat: &C,
    ap: &C::Arr,
    bp: &C::Arr,
    v: &C::Arr,
    x: &C::Arr,
    w: &C::Arr,
    span: &MultiValuedSpan<C>,
) -> Result<C::Arr> {
    let (a_v, _) = pull_over(cat, v, ap)?;
    let (b_v, _) = pull_over(cat, v, bp)?;
    let (a_w, ka) = pull_over(cat, w, ap)?;
    let (b_w, kb) = pull_over(cat, w, bp)?;
    let nu_a = pullback_mediator(cat, ap, v, &ka, &cat.compose(x, &a_w)?)?
        .ok_or_else(|| Error::Malformed("span transport: a-side cone does not mediate".into()))?;
    let nu_b = pullback_mediator(cat, bp, v, &kb, &cat.compose(x, &b_w)?)?
        .ok_or_else(|| Error::Malformed("span transport: b-side cone does not mediate".into()))?;
    let fp_w = pullback(cat, &a_w, &b_w)?;
    let mu = pullback_mediator(
        cat,
        &a_v,
        &b_v,
        &cat.compose(&nu_a, &fp_w.to_left)?,
        &cat.compose(&nu_b, &fp_w.to_right)?,
    )?
    .ok_or_else(|| Error::Malformed("span transport: comparison does not mediate".into()))?;
    pullback_sub(cat, &mu, &span.sub)
}

/// (F) checker over tiny sampled instances.
pub fn check_fullness<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let size = budget.max_size.min(2);
    let mut instances = 0;
    let mut unwitnessed = 0;
    for x in cat.objects_up_to(1) {
        for a in arrows_into(cat, &x, size)? {
            if !class.contains(cat, &a) {
                continue;
            }
            for b in arrows_into(cat, &x, size)? {
                if !class.contains(cat, &b) {
                    continue;
                }
                instances += 1;
                if !fullness_witness(cat, class, &x, &a, &b, budget)? {
                    unwitnessed += 1;
                }
            }
        }
    }
    if unwitnessed > 0 {
        Ok(AxiomVerdict {
            axiom: AxiomId::F,
            outcome: Outcome::Inconclusive,
            evidence: Evidence::Census {
                instances,
                detail: format!("{} instances had no generic family within the bound", unwitnessed),
            },
            instances,
        })
    } else {
        Ok(AxiomVerdict {
            axiom: AxiomId::F,
            outcome: Outcome::PassedSampled,
            evidence: Evidence::Census {
                instances,
                detail: "every sampled instance admitted a generic small family".into(),
            },
            instances,
        })
    }
}

fn arrows_into<C: Category>(cat: &C, x: &C::Obj, size: usize) -> Result<Vec<C::Arr>> {
    let mut out = Vec::new();
    for d in cat.objects_up_to(size) {
        out.extend(cat.hom(&d, x)?);
    }
    Ok(out)
}

fn fullness_witness<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    x: &C::Obj,
    a: &C::Arr,
    b: &C::Arr,
    budget: &Budget,
) -> Result<bool> {
    let c_bound = budget.search_size.min(4);
    for xp in cat.objects_up_to(budget.search_size.min(2)) {
        for p in cat.hom(&xp, x)?.into_iter().filter(|p| cat.is_cover(p)) {
            let (ap, _) = pull_over(cat, &p, a)?;
            let (bp, _) = pull_over(cat, &p, b)?;
            for cobj in cat.objects_up_to(c_bound) {
                for f in cat.hom(&cobj, &xp)?.into_iter().filter(|f| class.contains(cat, f)) {
                    let (af, _) = pull_over(cat, &f, &ap)?;
                    let (bf, _) = pull_over(cat, &f, &bp)?;
                    for cand in mv_spans(cat, class, &af, &bf)? {
                        if generic_for_all(cat, class, &xp, &ap, &bp, &f, &cand, budget)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Does the candidate family refine every multi-valued span over every
/// `g: D -> X'` in the catalogued slice?
fn generic_for_all<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    xp: &C::Obj,
    ap: &C::Arr,
    bp: &C::Arr,
    f: &C::Arr,
    cand: &MultiValuedSpan<C>,
    budget: &Budget,
) -> Result<bool> {
    let d_bound = budget.max_size.min(2);
    for dobj in cat.objects_up_to(d_bound) {
        for g in cat.hom(&dobj, xp)? {
            let (ag, _) = pull_over(cat, &g, ap)?;
            let (bg, _) = pull_over(cat, &g, bp)?;
            for q in mv_spans(cat, class, &ag, &bg)? {
                if !exists_refinement(cat, ap, bp, f, &g, &q, cand, budget)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Searches for a cover `x: E -> D` and `y: E -> C` with `g ∘ x = f ∘ y`
/// such that `x*Q ≥ y*P`, compared inside the canonical fibred product
/// over `E`.
fn exists_refinement<C: Category>(
    cat: &C,
    ap: &C::Arr,
    bp: &C::Arr,
    f: &C::Arr,
    g: &C::Arr,
    q: &MultiValuedSpan<C>,
    p_span: &MultiValuedSpan<C>,
    budget: &Budget,
) -> Result<bool> {
    let dobj = cat.dom(g);
    let e_bound = budget.search_size.min(3);
    for eobj in cat.objects_up_to(e_bound) {
        for xcov in cat.hom(&eobj, &dobj)?.into_iter().filter(|xc| cat.is_cover(xc)) {
            let gx = cat.compose(g, &xcov)?;
            for y in cat.hom(&eobj, &cat.dom(f))? {
                if cat.compose(f, &y)? != gx {
                    continue;
                }
                let xq = transport_span(cat, ap, bp, g, &xcov, &gx, q)?;
                let yp = transport_span(cat, ap, bp, f, &y, &gx, p_span)?;
                if leq_sub(cat, &yp, &xq) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
