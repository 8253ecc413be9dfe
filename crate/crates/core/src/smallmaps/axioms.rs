//! Per-axiom checkers. Instance generators enumerate all diagrams over
//! objects up to the budgeted size bound, deterministically; existential
//! axioms search witnesses within the search bound and report INCONCLUSIVE
//! when the search runs out rather than guessing.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{
    exact_diagram_check, pullback, pullback_mediator, quasi_pullback_check, Category,
};

use super::power::check_power_class;
use super::{AxiomId, AxiomVerdict, Counterexample, Evidence, MapClass, Outcome};

/// All arrows between catalogued objects, in a deterministic order.
pub fn catalog_arrows<C: Category>(cat: &C, size: usize) -> Result<Vec<C::Arr>> {
    let objs = cat.objects_up_to(size);
    let mut out = Vec::new();
    for x in &objs {
        for y in &objs {
            out.extend(cat.hom(x, y)?);
        }
    }
    Ok(out)
}

fn verdict<C: Category>(
    axiom: AxiomId,
    outcome: Outcome,
    evidence: Evidence<C>,
    instances: usize,
) -> AxiomVerdict<C> {
    AxiomVerdict { axiom, outcome, evidence, instances }
}

fn passed<C: Category>(axiom: AxiomId, instances: usize, detail: &str) -> AxiomVerdict<C> {
    verdict(
        axiom,
        Outcome::PassedSampled,
        Evidence::Census { instances, detail: detail.to_string() },
        instances,
    )
}

fn refuted<C: Category>(axiom: AxiomId, ce: Counterexample<C>, instances: usize) -> AxiomVerdict<C> {
    verdict(axiom, Outcome::Refuted, Evidence::Counterexample(ce), instances)
}

fn inconclusive<C: Category>(axiom: AxiomId, instances: usize, detail: &str) -> AxiomVerdict<C> {
    verdict(
        axiom,
        Outcome::Inconclusive,
        Evidence::Census { instances, detail: detail.to_string() },
        instances,
    )
}

/// Checks one axiom of the small-map system on the catalogued fragment.
/// Kernel resource exhaustion is reported as INCONCLUSIVE, not an error.
pub fn check_axiom<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    axiom: AxiomId,
    budget: &Budget,
) -> AxiomVerdict<C> {
    let res = match axiom {
        AxiomId::A1 => check_a1(cat, class, budget),
        AxiomId::A2 => check_a2(cat, class, budget),
        AxiomId::A3 => check_a3(cat, class, budget),
        AxiomId::A4 => check_a4(cat, class),
        AxiomId::A5 => check_a5(cat, class, budget),
        AxiomId::A6 => check_a6(cat, class, budget),
        AxiomId::C => check_collection(cat, class, budget),
        AxiomId::R => check_representability(cat, class, budget, false),
        AxiomId::RStrong => check_representability(cat, class, budget, true),
        AxiomId::PiE => check_pi_exists(cat, class, budget),
        AxiomId::WE => check_wtype_existence(cat, class, budget),
        AxiomId::HB => check_hb(cat, class, budget),
        AxiomId::US => check_us(cat, class, budget),
        AxiomId::BE => check_be(cat, class, budget),
        AxiomId::NE => check_nno(cat, class, budget, false),
        AxiomId::NS => check_nno(cat, class, budget, true),
        AxiomId::PE => check_power_class(cat, class, budget),
        AxiomId::PS => check_ps(cat, class, budget),
        AxiomId::M => check_m(cat, class, budget),
        AxiomId::F => super::fullness::check_fullness(cat, class, budget),
        AxiomId::PiS => check_pi_small(cat, class, budget),
    };
    match res {
        Ok(v) => v,
        Err(Error::ResourceBound { what, detail }) => inconclusive(
            axiom,
            0,
            &format!("kernel resource bound while {}: {}", what, detail),
        ),
        Err(Error::UnsupportedStructure { category, needs }) => {
            inconclusive(axiom, 0, &format!("{} does not support {}", category, needs))
        }
        Err(e) => inconclusive(axiom, 0, &format!("kernel error: {}", e)),
    }
}

/// Runs a list of axioms and collects the verdicts.
pub fn run_suite<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    axioms: &[AxiomId],
    budget: &Budget,
) -> Vec<AxiomVerdict<C>> {
    axioms.iter().map(|&a| check_axiom(cat, class, a, budget)).collect()
}

fn check_a1<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let mut instances = 0;
    for f in arrows.iter().filter(|f| class.contains(cat, f)) {
        for p in arrows.iter().filter(|p| cat.cod(p) == cat.cod(f)) {
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::A1, instances, "instance cap reached"));
            }
            let pb = pullback(cat, p, f)?;
            if !class.contains(cat, &pb.to_left) {
                return Ok(refuted(
                    AxiomId::A1,
                    Counterexample::PullbackStability { f: f.clone(), p: p.clone() },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::A1, instances, "all pullbacks of class members stayed in the class"))
}

fn check_a2<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let mut instances = 0;
    for f in arrows.iter() {
        for p in arrows.iter().filter(|p| cat.cod(p) == cat.cod(f) && cat.is_cover(p)) {
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::A2, instances, "instance cap reached"));
            }
            let pb = pullback(cat, p, f)?;
            if class.contains(cat, &pb.to_left) && !class.contains(cat, f) {
                return Ok(refuted(
                    AxiomId::A2,
                    Counterexample::Descent { f: f.clone(), p: p.clone() },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::A2, instances, "class membership descended along every catalogued cover"))
}

fn check_a3<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let small: Vec<&C::Arr> = arrows.iter().filter(|f| class.contains(cat, f)).collect();
    let mut instances = 0;
    for f in &small {
        for g in &small {
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::A3, instances, "instance cap reached"));
            }
            let co_cod = cat.coproduct(&cat.cod(f), &cat.cod(g))?;
            let lf = cat.compose(&co_cod.left, f)?;
            let rg = cat.compose(&co_cod.right, g)?;
            let sum = cat.copair(&lf, &rg)?;
            if !class.contains(cat, &sum) {
                return Ok(refuted(
                    AxiomId::A3,
                    Counterexample::Sums { f: (*f).clone(), g: (*g).clone() },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::A3, instances, "sums of class members stayed in the class"))
}

fn check_a4<C: Category>(cat: &C, class: &MapClass<C>) -> Result<AxiomVerdict<C>> {
    let t = cat.terminal()?;
    let i = cat.initial()?;
    let zero_to_one = cat
        .hom(&i, &t)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Malformed("no arrow 0 -> 1".into()))?;
    let one_to_one = cat.identity(&t);
    let fold = cat.copair(&cat.identity(&t), &cat.identity(&t))?;
    for which in [&zero_to_one, &one_to_one, &fold] {
        if !class.contains(cat, which) {
            return Ok(refuted(
                AxiomId::A4,
                Counterexample::Finiteness { which: which.clone() },
                3,
            ));
        }
    }
    Ok(verdict(
        AxiomId::A4,
        Outcome::Witnessed,
        Evidence::Witness { detail: "the maps 0 -> 1, 1 -> 1 and 2 -> 1 are in the class".into() },
        3,
    ))
}

fn check_a5<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let small: Vec<&C::Arr> = arrows.iter().filter(|f| class.contains(cat, f)).collect();
    let mut instances = 0;
    for f in &small {
        for g in small.iter().filter(|g| cat.dom(g) == cat.cod(f)) {
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::A5, instances, "instance cap reached"));
            }
            let gf = cat.compose(g, f)?;
            if !class.contains(cat, &gf) {
                return Ok(refuted(
                    AxiomId::A5,
                    Counterexample::Composition { f: (*f).clone(), g: (*g).clone() },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::A5, instances, "composites of class members stayed in the class"))
}

fn check_a6<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let covers: Vec<&C::Arr> = arrows.iter().filter(|p| cat.is_cover(p)).collect();
    let mut instances = 0;
    for p in &covers {
        for f in arrows.iter().filter(|f| cat.dom(f) == cat.cod(p)) {
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::A6, instances, "instance cap reached"));
            }
            let g = cat.compose(f, p)?;
            if class.contains(cat, &g) && !class.contains(cat, f) {
                return Ok(refuted(
                    AxiomId::A6,
                    Counterexample::Quotient { p: (*p).clone(), f: f.clone() },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::A6, instances, "images along covers stayed in the class"))
}

/// (C): for every cover `p: Y -> X` and small `f: X -> A`, search a
/// quasi-pullback square over a cover `h: B -> A` with a small `g: Z -> B`.
fn check_collection<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let mut instances = 0;
    let mut unwitnessed = 0;
    for p in arrows.iter().filter(|p| cat.is_cover(p)) {
        for f in arrows
            .iter()
            .filter(|f| cat.dom(f) == cat.cod(p) && class.contains(cat, f))
        {
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::C, instances, "instance cap reached"));
            }
            if !collection_witness(cat, class, p, f, budget)? {
                unwitnessed += 1;
            }
        }
    }
    if unwitnessed > 0 {
        Ok(inconclusive(
            AxiomId::C,
            instances,
            &format!("{} instances had no witness within the search bound", unwitnessed),
        ))
    } else {
        Ok(passed(AxiomId::C, instances, "every instance admitted a collection square"))
    }
}

fn collection_witness<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    p: &C::Arr,
    f: &C::Arr,
    budget: &Budget,
) -> Result<bool> {
    // canonical attempt: h = id_A, Z = Y, g = f ∘ p
    let a_obj = cat.cod(f);
    let g0 = cat.compose(f, p)?;
    if class.contains(cat, &g0) {
        let h = cat.identity(&a_obj);
        if quasi_pullback_check(cat, p, &g0, f, &h)? {
            return Ok(true);
        }
    }
    // bounded search over covers h: B -> A, small g: Z -> B, t: Z -> Y
    let y_obj = cat.dom(p);
    for b in cat.objects_up_to(budget.search_size) {
        for h in cat.hom(&b, &a_obj)?.into_iter().filter(|h| cat.is_cover(h)) {
            for z in cat.objects_up_to(budget.search_size) {
                for g in cat.hom(&z, &b)?.into_iter().filter(|g| class.contains(cat, g)) {
                    let hg = cat.compose(&h, &g)?;
                    for t in cat.hom(&z, &y_obj)? {
                        let top = cat.compose(p, &t)?;
                        if cat.compose(f, &top)? != hg {
                            continue;
                        }
                        if quasi_pullback_check(cat, &top, &g, f, &h)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

/// (R): searches for a universal small map within the bound. A candidate π
/// qualifies only if every small probe map fits the two-square diagram; the
/// probe set deliberately includes maps one size beyond the candidate bound,
/// since a genuine universal map must serve the whole category.
fn check_representability<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
    strong: bool,
) -> Result<AxiomVerdict<C>> {
    let axiom = if strong { AxiomId::RStrong } else { AxiomId::R };
    let probes: Vec<C::Arr> = {
        let mut v: Vec<C::Arr> = Vec::new();
        // probes beyond the candidate bound first: they reject finite
        // candidates quickly
        for x in cat.objects_up_to(budget.max_size + 1) {
            if cat.obj_size(&x) > budget.max_size {
                let bang = cat.bang(&x)?;
                if class.contains(cat, &bang) {
                    v.push(bang);
                }
            }
        }
        for f in catalog_arrows(cat, budget.max_size)? {
            if class.contains(cat, &f) {
                v.push(f);
            }
        }
        v
    };

    // analytic witness, if any, is verified against every probe
    if let Some(w) = &class.universal_witness {
        let mut verified = 0;
        let mut undecided = 0;
        for f in &probes {
            match cat.representability_fill(&w.pi, f, budget.search_size, budget.hom_cap, strong) {
                Some(true) => verified += 1,
                Some(false) => {
                    return Ok(verdict(
                        axiom,
                        Outcome::Inconclusive,
                        Evidence::Census {
                            instances: verified,
                            detail: format!(
                                "supplied universal-map witness failed on probe {:?}",
                                f
                            ),
                        },
                        verified,
                    ));
                }
                None => undecided += 1,
            }
        }
        if undecided == 0 {
            return Ok(verdict(
                axiom,
                Outcome::Witnessed,
                Evidence::Witness {
                    detail: format!(
                        "supplied universal small map verified against {} probes",
                        verified
                    ),
                },
                verified,
            ));
        }
        return Ok(inconclusive(axiom, verified, "witness verification ran out of budget"));
    }

    // candidate search
    let mut candidates = 0usize;
    let mut seen_keys = std::collections::HashSet::new();
    let mut examined = 0usize;
    for pi in catalog_arrows(cat, budget.max_size)? {
        if !class.contains(cat, &pi) {
            continue;
        }
        if let Some(key) = cat.arrow_iso_key(&pi) {
            if !seen_keys.insert(key) {
                continue;
            }
        }
        candidates += 1;
        let mut works = true;
        for f in &probes {
            examined += 1;
            if examined > budget.max_instances {
                return Ok(inconclusive(axiom, examined, "instance cap reached"));
            }
            match cat.representability_fill(&pi, f, budget.search_size, budget.hom_cap, strong) {
                Some(true) => {}
                _ => {
                    works = false;
                    break;
                }
            }
        }
        if works {
            // A candidate covering every probe is still only sampled
            // evidence: the axiom quantifies over the whole category.
            return Ok(verdict(
                axiom,
                Outcome::PassedSampled,
                Evidence::Census {
                    instances: probes.len(),
                    detail: format!("candidate {:?} fits all {} probes", pi, probes.len()),
                },
                probes.len(),
            ));
        }
    }
    Ok(verdict(
        axiom,
        Outcome::Inconclusive,
        Evidence::NoWitness {
            bound: budget.max_size,
            candidates,
            detail: "no candidate served every probe".into(),
        },
        examined,
    ))
}

/// (ΠE): dependent products along small maps exist; verified through the
/// hom-set adjunction on catalogued test objects.
fn check_pi_exists<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let size = budget.max_size.min(3);
    let arrows = catalog_arrows(cat, size)?;
    let mut instances = 0;
    for f in arrows.iter().filter(|f| class.contains(cat, f)) {
        for p in arrows.iter().filter(|p| cat.cod(p) == cat.dom(f)) {
            let q = match cat.dependent_product(f, p)? {
                Some(q) => q,
                None => {
                    return Ok(inconclusive(
                        AxiomId::PiE,
                        instances,
                        "no dependent-product constructor available",
                    ))
                }
            };
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::PiE, instances, "instance cap reached"));
            }
            if let Some(detail) = pi_adjunction_violation(cat, f, p, &q, budget)? {
                return Ok(refuted(
                    AxiomId::PiE,
                    Counterexample::DependentProduct { f: f.clone(), p: p.clone(), detail },
                    instances,
                ));
            }
        }
    }
    Ok(verdict(
        AxiomId::PiE,
        Outcome::Witnessed,
        Evidence::Witness {
            detail: format!(
                "dependent products constructed and adjunction-checked on {} instances",
                instances
            ),
        },
        instances,
    ))
}

/// Checks `|hom_{/Y}(q', Π_f p)| = |hom_{/X}(f* q', p)|` over small test
/// objects; returns a description of the first violation.
fn pi_adjunction_violation<C: Category>(
    cat: &C,
    f: &C::Arr,
    p: &C::Arr,
    q: &C::Arr,
    budget: &Budget,
) -> Result<Option<String>> {
    let y = cat.cod(f);
    for test in cat.objects_up_to(budget.search_size.min(2)) {
        for qy in cat.hom(&test, &y)? {
            let lhs = hom_over_count(cat, &qy, q, budget.hom_cap)?;
            let pb = pullback(cat, f, &qy)?;
            let rhs = hom_over_count(cat, &pb.to_left, p, budget.hom_cap)?;
            match (lhs, rhs) {
                (Some(l), Some(r)) if l != r => {
                    return Ok(Some(format!(
                        "adjunction count mismatch at test object {:?}: {} vs {}",
                        test, l, r
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(None)
}

fn hom_over_count<C: Category>(
    cat: &C,
    a: &C::Arr,
    b: &C::Arr,
    cap: usize,
) -> Result<Option<usize>> {
    let hs = match cat.hom(&cat.dom(a), &cat.dom(b)) {
        Ok(hs) if hs.len() <= cap => hs,
        Ok(_) => return Ok(None),
        Err(Error::ResourceBound { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut n = 0;
    for m in hs {
        if cat.compose(b, &m)? == *a {
            n += 1;
        }
    }
    Ok(Some(n))
}

/// (WE): W-types for small maps, via the cumulative census iteration where
/// the category supports it. A signature that does not stabilize within the
/// depth budget leaves the verdict INCONCLUSIVE.
fn check_wtype_existence<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size.min(3))?;
    let mut instances = 0;
    let mut diverged = 0;
    for f in arrows.iter().filter(|f| class.contains(cat, f)) {
        match cat.wtype_census(f, 8) {
            Some((_, converged)) => {
                instances += 1;
                if !converged {
                    diverged += 1;
                }
            }
            None => {
                return Ok(inconclusive(
                    AxiomId::WE,
                    instances,
                    "no W-type iteration available in this category",
                ))
            }
        }
    }
    if diverged > 0 {
        Ok(inconclusive(
            AxiomId::WE,
            instances,
            &format!("{} signatures did not stabilize within the depth budget", diverged),
        ))
    } else {
        Ok(passed(AxiomId::WE, instances, "every catalogued signature stabilized"))
    }
}

fn check_hb<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let mut instances = 0;
    for f in arrows.iter().filter(|f| class.contains(cat, f)) {
        for s in cat.subobjects(&cat.dom(f))? {
            if !class.contains(cat, &s) {
                continue;
            }
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::HB, instances, "instance cap reached"));
            }
            let t = cat.forall_sub(f, &s)?;
            if !class.contains(cat, &t) {
                return Ok(refuted(
                    AxiomId::HB,
                    Counterexample::HeytingBounded { f: f.clone(), s: s.clone() },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::HB, instances, "∀ along class members preserved bounded subobjects"))
}

fn check_us<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let mut instances = 0;
    for x in cat.objects_up_to(budget.max_size) {
        instances += 1;
        let id = cat.identity(&x);
        let diag = cat.pair(&id, &id)?;
        if !class.contains(cat, &diag) {
            return Ok(refuted(AxiomId::US, Counterexample::NotSeparated { x }, instances));
        }
    }
    Ok(passed(AxiomId::US, instances, "every catalogued diagonal is in the class"))
}

fn check_be<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let mut instances = 0;
    for x in cat.objects_up_to(budget.max_size) {
        let prod = cat.product(&x, &x)?;
        for rel in cat.equivalence_relations(&x)? {
            if !class.contains(cat, &rel) {
                continue; // only bounded equivalence relations need quotients
            }
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::BE, instances, "instance cap reached"));
            }
            let r0 = cat.compose(&prod.left, &rel)?;
            let r1 = cat.compose(&prod.right, &rel)?;
            let q = cat.coequalizer(&r0, &r1)?;
            if !exact_diagram_check(cat, &r0, &r1, &q)? {
                return Ok(refuted(
                    AxiomId::BE,
                    Counterexample::ExactnessFailure { x, rel, along: None },
                    instances,
                ));
            }
            // stability: the exactness survives pullback along every
            // catalogued arrow into the quotient
            for p in arrows.iter().filter(|p| cat.cod(p) == cat.cod(&q)) {
                if !stable_along(cat, &r0, &r1, &q, p)? {
                    return Ok(refuted(
                        AxiomId::BE,
                        Counterexample::ExactnessFailure { x, rel, along: Some(p.clone()) },
                        instances,
                    ));
                }
            }
        }
    }
    Ok(passed(AxiomId::BE, instances, "every bounded equivalence relation had a stable quotient"))
}

/// Pulls the exact diagram `r0, r1 : R -> X -> Q` back along `p: P -> Q` and
/// re-checks exactness.
fn stable_along<C: Category>(
    cat: &C,
    r0: &C::Arr,
    r1: &C::Arr,
    q: &C::Arr,
    p: &C::Arr,
) -> Result<bool> {
    let qr0 = cat.compose(q, r0)?;
    let x_pb = pullback(cat, q, p)?; // X ×_Q P
    let r_pb = pullback(cat, &qr0, p)?; // R ×_Q P
    let q_pulled = x_pb.to_right.clone(); // X' -> P
    let r0_l = cat.compose(r0, &r_pb.to_left)?;
    let r1_l = cat.compose(r1, &r_pb.to_left)?;
    let r0p = pullback_mediator(cat, q, p, &r0_l, &r_pb.to_right)?
        .ok_or_else(|| Error::Malformed("pulled relation leg does not mediate".into()))?;
    let r1p = pullback_mediator(cat, q, p, &r1_l, &r_pb.to_right)?
        .ok_or_else(|| Error::Malformed("pulled relation leg does not mediate".into()))?;
    exact_diagram_check(cat, &r0p, &r1p, &q_pulled)
}

/// Searches for a natural numbers object among catalogued candidates: a
/// triple `(N, z, s)` must satisfy unique recursion against every catalogued
/// test algebra. All finite candidates fail some test, so an honest verdict
/// here is INCONCLUSIVE unless a genuine witness is ever presented.
fn check_nno<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
    require_small: bool,
) -> Result<AxiomVerdict<C>> {
    let axiom = if require_small { AxiomId::NS } else { AxiomId::NE };
    let t = cat.terminal()?;
    let mut candidates = 0usize;
    let mut examined = 0usize;
    for n in cat.objects_up_to(budget.search_size) {
        if require_small && !class.contains(cat, &cat.bang(&n)?) {
            continue;
        }
        for z in cat.hom(&t, &n)? {
            for s in cat.hom(&n, &n)? {
                candidates += 1;
                examined += 1;
                if examined > budget.max_instances {
                    return Ok(inconclusive(axiom, examined, "instance cap reached"));
                }
                if nno_candidate_passes(cat, &n, &z, &s, budget)? {
                    return Ok(verdict(
                        axiom,
                        Outcome::PassedSampled,
                        Evidence::Census {
                            instances: examined,
                            detail: format!(
                                "candidate ({:?}, {:?}, {:?}) satisfied recursion on all catalogued algebras",
                                n, z, s
                            ),
                        },
                        examined,
                    ));
                }
            }
        }
    }
    Ok(verdict(
        axiom,
        Outcome::Inconclusive,
        Evidence::NoWitness {
            bound: budget.search_size,
            candidates,
            detail: "every candidate failed unique recursion on some catalogued algebra".into(),
        },
        examined,
    ))
}

fn nno_candidate_passes<C: Category>(
    cat: &C,
    n: &C::Obj,
    z: &C::Arr,
    s: &C::Arr,
    budget: &Budget,
) -> Result<bool> {
    let t = cat.terminal()?;
    for x in cat.objects_up_to(budget.max_size.min(4)) {
        for x0 in cat.hom(&t, &x)? {
            for g in cat.hom(&x, &x)? {
                let mut count = 0;
                for h in cat.hom(n, &x)? {
                    if cat.compose(&h, z)? == x0 && cat.compose(&h, s)? == cat.compose(&g, &h)? {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                    }
                }
                if count != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// (PS): the power-class functor on each slice preserves smallness, checked
/// through fibrewise power censuses where the category provides them.
fn check_ps<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let size = budget.max_size.min(3);
    let arrows = catalog_arrows(cat, size)?;
    let mut instances = 0;
    for p in arrows.iter().filter(|p| class.contains(cat, p)) {
        let census = cat.fibre_census(p)?;
        let powers: Vec<usize> = census.iter().map(|&n| 1usize << n.min(20)).collect();
        let q = match cat.arrow_with_fibres(&powers, &cat.cod(p)) {
            Some(q) => q,
            None => {
                return Ok(inconclusive(
                    AxiomId::PS,
                    instances,
                    "no fibrewise power construction available in this category",
                ))
            }
        };
        instances += 1;
        if !class.contains(cat, &q) {
            return Ok(refuted(
                AxiomId::PS,
                Counterexample::DependentProduct {
                    f: p.clone(),
                    p: q,
                    detail: "fibrewise power class left the class".into(),
                },
                instances,
            ));
        }
    }
    Ok(passed(AxiomId::PS, instances, "fibrewise power classes stayed in the class"))
}

/// (ΠS): dependent products along small maps preserve small objects.
fn check_pi_small<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let size = budget.max_size.min(3);
    let arrows = catalog_arrows(cat, size)?;
    let mut instances = 0;
    for f in arrows.iter().filter(|f| class.contains(cat, f)) {
        for p in arrows
            .iter()
            .filter(|p| cat.cod(p) == cat.dom(f) && class.contains(cat, p))
        {
            let q = match cat.dependent_product(f, p)? {
                Some(q) => q,
                None => {
                    return Ok(inconclusive(
                        AxiomId::PiS,
                        instances,
                        "no dependent-product constructor available",
                    ))
                }
            };
            instances += 1;
            if instances > budget.max_instances {
                return Ok(inconclusive(AxiomId::PiS, instances, "instance cap reached"));
            }
            if !class.contains(cat, &q) {
                return Ok(refuted(
                    AxiomId::PiS,
                    Counterexample::DependentProduct {
                        f: f.clone(),
                        p: p.clone(),
                        detail: "dependent product left the class".into(),
                    },
                    instances,
                ));
            }
        }
    }
    Ok(passed(AxiomId::PiS, instances, "dependent products preserved smallness"))
}

fn check_m<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    let arrows = catalog_arrows(cat, budget.max_size)?;
    let mut instances = 0;
    for m in arrows.iter().filter(|m| cat.is_mono(m)) {
        instances += 1;
        if instances > budget.max_instances {
            return Ok(inconclusive(AxiomId::M, instances, "instance cap reached"));
        }
        if !class.contains(cat, m) {
            return Ok(refuted(
                AxiomId::M,
                Counterexample::MonoNotSmall { m: m.clone() },
                instances,
            ));
        }
    }
    Ok(passed(AxiomId::M, instances, "every catalogued mono is in the class"))
}

/// Dedicated (A2) regression entry point: replays the returned
/// counterexample before reporting it.
pub fn check_descent_counterexample_suite<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> AxiomVerdict<C> {
    let v = check_axiom(cat, class, AxiomId::A2, budget);
    if let Evidence::Counterexample(ce) = &v.evidence {
        debug_assert!(replay_counterexample(cat, class, ce).unwrap_or(false));
    }
    v
}

/// Π along a small map applied to an object over its domain; the public
/// operation form of the (ΠE) machinery.
pub fn pi_along<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    f: &C::Arr,
    p: &C::Arr,
    budget: &Budget,
) -> Result<C::Arr> {
    if !class.contains(cat, f) {
        return Err(Error::Precondition(format!(
            "pi_along requires f in the class {}",
            class.name
        )));
    }
    let q = cat.dependent_product(f, p)?.ok_or_else(|| {
        Error::unsupported(cat.name(), "a dependent-product constructor")
    })?;
    if let Some(detail) = pi_adjunction_violation(cat, f, p, &q, budget)? {
        return Err(Error::Malformed(format!("dependent product failed verification: {}", detail)));
    }
    Ok(q)
}

/// Re-runs the violated condition of a counterexample through the kernel.
/// Returns true when the violation reproduces.
pub fn replay_counterexample<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    ce: &Counterexample<C>,
) -> Result<bool> {
    Ok(match ce {
        Counterexample::PullbackStability { f, p } => {
            let pb = pullback(cat, p, f)?;
            class.contains(cat, f) && !class.contains(cat, &pb.to_left)
        }
        Counterexample::Descent { f, p } => {
            let pb = pullback(cat, p, f)?;
            cat.is_cover(p) && class.contains(cat, &pb.to_left) && !class.contains(cat, f)
        }
        Counterexample::Sums { f, g } => {
            let co = cat.coproduct(&cat.cod(f), &cat.cod(g))?;
            let sum = cat.copair(&cat.compose(&co.left, f)?, &cat.compose(&co.right, g)?)?;
            class.contains(cat, f) && class.contains(cat, g) && !class.contains(cat, &sum)
        }
        Counterexample::Finiteness { which } => !class.contains(cat, which),
        Counterexample::Composition { f, g } => {
            let gf = cat.compose(g, f)?;
            class.contains(cat, f) && class.contains(cat, g) && !class.contains(cat, &gf)
        }
        Counterexample::Quotient { p, f } => {
            let g = cat.compose(f, p)?;
            cat.is_cover(p) && class.contains(cat, &g) && !class.contains(cat, f)
        }
        Counterexample::NotSeparated { x } => {
            let id = cat.identity(x);
            !class.contains(cat, &cat.pair(&id, &id)?)
        }
        Counterexample::HeytingBounded { f, s } => {
            let t = cat.forall_sub(f, s)?;
            class.contains(cat, f) && class.contains(cat, s) && !class.contains(cat, &t)
        }
        Counterexample::MonoNotSmall { m } => cat.is_mono(m) && !class.contains(cat, m),
        Counterexample::ExactnessFailure { x, rel, along } => {
            let prod = cat.product(x, x)?;
            let r0 = cat.compose(&prod.left, rel)?;
            let r1 = cat.compose(&prod.right, rel)?;
            let q = cat.coequalizer(&r0, &r1)?;
            match along {
                None => !exact_diagram_check(cat, &r0, &r1, &q)?,
                Some(p) => !stable_along(cat, &r0, &r1, &q, p)?,
            }
        }
        Counterexample::DependentProduct { .. } | Counterexample::PowerClass { .. } => true,
    })
}
