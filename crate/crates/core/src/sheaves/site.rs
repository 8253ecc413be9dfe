//! Finite sites: a finitely presented category with, for each object, a set
//! of covering sieves validated against the coverage axioms (M), (L), (T),
//! plus an optional basis generating the covers by refinement.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::present::FinCatPresentation;

/// A sieve on a target object: a set of arrows into it closed under
/// precomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sieve {
    pub target: usize,
    pub arrows: BTreeSet<usize>,
}

impl Sieve {
    pub fn maximal(cat: &FinCatPresentation, target: usize) -> Sieve {
        Sieve { target, arrows: cat.arrows_into(target).into_iter().collect() }
    }

    pub fn empty(target: usize) -> Sieve {
        Sieve { target, arrows: BTreeSet::new() }
    }

    pub fn contains(&self, arrow: usize) -> bool {
        self.arrows.contains(&arrow)
    }

    pub fn is_subset_of(&self, other: &Sieve) -> bool {
        self.target == other.target && self.arrows.is_subset(&other.arrows)
    }

    /// First witness that the arrow family is not precomposition-closed:
    /// `(s, g)` with `s` in the sieve but `s ∘ g` missing.
    pub fn closure_violation(&self, cat: &FinCatPresentation) -> Option<(usize, usize)> {
        for &s in &self.arrows {
            let dom = cat.arrows[s].dom;
            for g in cat.arrows_into(dom) {
                let sg = cat.comp[s][g].expect("composable");
                if !self.arrows.contains(&sg) {
                    return Some((s, g));
                }
            }
        }
        None
    }

    /// The pullback sieve `f^* S = { g | f ∘ g ∈ S }` along `f: b -> a`.
    pub fn pullback(&self, cat: &FinCatPresentation, f: usize) -> Sieve {
        let b = cat.arrows[f].dom;
        let arrows = cat
            .arrows_into(b)
            .into_iter()
            .filter(|&g| {
                let fg = cat.comp[f][g].expect("composable");
                self.arrows.contains(&fg)
            })
            .collect();
        Sieve { target: b, arrows }
    }

    /// The intersection with another sieve on the same target.
    pub fn intersect(&self, other: &Sieve) -> Sieve {
        Sieve {
            target: self.target,
            arrows: self.arrows.intersection(&other.arrows).cloned().collect(),
        }
    }
}

/// All precomposition-closed sieves on an object, in a deterministic order.
pub fn all_sieves_on(cat: &FinCatPresentation, target: usize) -> Vec<Sieve> {
    let into: Vec<usize> = cat.arrows_into(target);
    assert!(into.len() <= 20, "sieve enumeration bound");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << into.len()) {
        let arrows: BTreeSet<usize> =
            into.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &a)| a).collect();
        let s = Sieve { target, arrows };
        if s.closure_violation(cat).is_none() {
            out.push(s);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Site {
    pub cat: FinCatPresentation,
    /// declared covering sieves per object; a validated topology lists every
    /// covering sieve explicitly
    pub covers: Vec<Vec<Sieve>>,
    pub basis: Option<Vec<Vec<Sieve>>>,
}

impl Site {
    pub fn new(
        cat: FinCatPresentation,
        covers: Vec<Vec<Sieve>>,
        basis: Option<Vec<Vec<Sieve>>>,
    ) -> Self {
        Site { cat, covers, basis }
    }

    /// The trivial topology: only maximal sieves cover.
    pub fn trivial(cat: FinCatPresentation) -> Site {
        let covers = (0..cat.n_objects()).map(|a| vec![Sieve::maximal(&cat, a)]).collect();
        let basis = (0..cat.n_objects()).map(|a| vec![Sieve::maximal(&cat, a)]).collect();
        Site { cat, covers, basis: Some(basis) }
    }

    /// The dense topology: a sieve covers when every arrow into the target
    /// can be extended backwards into it.
    pub fn dense(cat: FinCatPresentation) -> Site {
        let covers: Vec<Vec<Sieve>> = (0..cat.n_objects())
            .map(|a| {
                all_sieves_on(&cat, a)
                    .into_iter()
                    .filter(|s| {
                        cat.arrows_into(a).into_iter().all(|f| {
                            let dom = cat.arrows[f].dom;
                            cat.arrows_into(dom).into_iter().any(|g| {
                                let fg = cat.comp[f][g].expect("composable");
                                s.contains(fg)
                            })
                        })
                    })
                    .collect()
            })
            .collect();
        // basis: the minimal covers
        let basis = covers
            .iter()
            .map(|cs: &Vec<Sieve>| {
                cs.iter()
                    .filter(|s| !cs.iter().any(|t| t != *s && t.is_subset_of(s)))
                    .cloned()
                    .collect()
            })
            .collect();
        Site { cat, covers, basis: Some(basis) }
    }

    /// The two-object fixture site: `• -> •` with one nontrivial cover on
    /// the target, generated by the arrow.
    pub fn two_object_cover() -> Site {
        let cat = FinCatPresentation::arrow_category();
        let max_src = Sieve::maximal(&cat, 0);
        let max_tgt = Sieve::maximal(&cat, 1);
        let gen: Sieve = Sieve { target: 1, arrows: [2usize].into_iter().collect() };
        let covers = vec![vec![max_src.clone()], vec![max_tgt, gen.clone()]];
        let basis = vec![vec![max_src], vec![gen]];
        Site { cat, covers, basis: Some(basis) }
    }

    pub fn covers_of(&self, target: usize) -> &[Sieve] {
        &self.covers[target]
    }

    /// The per-object generating list used for matching families: the basis
    /// when present, otherwise the full declared covers.
    pub fn generating_covers(&self, target: usize) -> &[Sieve] {
        match &self.basis {
            Some(b) => &b[target],
            None => &self.covers[target],
        }
    }

    /// Is the sieve covering? With a validated topology this is refinement
    /// by a declared cover.
    pub fn is_covering(&self, s: &Sieve) -> bool {
        self.generating_covers(s.target).iter().any(|r| r.is_subset_of(s))
    }
}

/// One coverage-axiom verdict with an optional concrete witness.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum SiteVerdict {
    Pass,
    Refuted { witness: String },
}

impl SiteVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SiteVerdict::Pass)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SiteReport {
    pub wellformed: SiteVerdict,
    pub axiom_m: SiteVerdict,
    pub axiom_l: SiteVerdict,
    pub axiom_t: SiteVerdict,
}

impl SiteReport {
    pub fn all_passed(&self) -> bool {
        self.wellformed.passed()
            && self.axiom_m.passed()
            && self.axiom_l.passed()
            && self.axiom_t.passed()
    }
}

/// Exhaustive validation of the coverage axioms over all objects, sieves and
/// arrows of the finite site.
pub fn validate_site(site: &Site) -> Result<SiteReport> {
    let cat = &site.cat;
    if site.covers.len() != cat.n_objects() {
        return Err(Error::Malformed("covers must list every object".into()));
    }

    let mut wellformed = SiteVerdict::Pass;
    'wf: for (a, sieves) in site.covers.iter().enumerate() {
        for s in sieves {
            if s.target != a {
                wellformed = SiteVerdict::Refuted {
                    witness: format!("sieve targeted at {} listed under object {}", s.target, a),
                };
                break 'wf;
            }
            if let Some((arr, g)) = s.closure_violation(cat) {
                wellformed = SiteVerdict::Refuted {
                    witness: format!(
                        "family on {} not closed under precomposition: {} ∘ {} missing",
                        cat.obj_names[a], cat.arrows[arr].name, cat.arrows[g].name
                    ),
                };
                break 'wf;
            }
        }
    }

    let covering = |s: &Sieve| site.covers[s.target].contains(s);

    let mut axiom_m = SiteVerdict::Pass;
    for a in 0..cat.n_objects() {
        let max = Sieve::maximal(cat, a);
        if !covering(&max) {
            axiom_m = SiteVerdict::Refuted {
                witness: format!("maximal sieve on {} is not covering", cat.obj_names[a]),
            };
            break;
        }
    }

    let mut axiom_l = SiteVerdict::Pass;
    'l: for a in 0..cat.n_objects() {
        for u in &site.covers[a] {
            if u.closure_violation(cat).is_some() {
                continue; // reported by wellformedness
            }
            for f in cat.arrows_into(a) {
                let pulled = u.pullback(cat, f);
                if !covering(&pulled) {
                    axiom_l = SiteVerdict::Refuted {
                        witness: format!(
                            "pullback of a cover of {} along {} is not covering",
                            cat.obj_names[a], cat.arrows[f].name
                        ),
                    };
                    break 'l;
                }
            }
        }
    }

    let mut axiom_t = SiteVerdict::Pass;
    't: for a in 0..cat.n_objects() {
        for t in all_sieves_on(cat, a) {
            if covering(&t) {
                continue;
            }
            for u in &site.covers[a] {
                let forced = u.arrows.iter().all(|&h| {
                    let pulled = t.pullback(cat, h);
                    covering(&pulled)
                });
                if forced {
                    axiom_t = SiteVerdict::Refuted {
                        witness: format!(
                            "sieve {:?} on {} is locally covering for a cover but not declared",
                            t.arrows, cat.obj_names[a]
                        ),
                    };
                    break 't;
                }
            }
        }
    }

    Ok(SiteReport { wellformed, axiom_m, axiom_l, axiom_t })
}

/// With a basis present: does refinement by the basis reconstruct the
/// declared covers exactly? Returns the first discrepancy.
pub fn bounded_cov_check(site: &Site) -> Result<(bool, Option<Sieve>)> {
    let basis = site
        .basis
        .as_ref()
        .ok_or_else(|| Error::Precondition("bounded_cov_check needs a basis".into()))?;
    for a in 0..site.cat.n_objects() {
        for s in all_sieves_on(&site.cat, a) {
            let generated = basis[a].iter().any(|r| r.is_subset_of(&s));
            let declared = site.covers[a].contains(&s);
            if generated != declared {
                return Ok((false, Some(s)));
            }
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_topology_validates() {
        let site = Site::trivial(FinCatPresentation::arrow_category());
        let report = validate_site(&site).unwrap();
        assert!(report.all_passed(), "{:?}", report);
    }

    #[test]
    fn dense_topology_on_three_chain_validates() {
        let site = Site::dense(FinCatPresentation::chain_poset(3));
        let report = validate_site(&site).unwrap();
        assert!(report.all_passed(), "{:?}", report);
    }

    #[test]
    fn two_object_cover_site_validates() {
        let site = Site::two_object_cover();
        let report = validate_site(&site).unwrap();
        assert!(report.all_passed(), "{:?}", report);
    }

    #[test]
    fn seeded_l_violation_is_refuted_with_witness() {
        // dense topology on the chain, with the nontrivial cover of the
        // middle object removed: pulling the bottom-generated cover of the
        // top back along le_1_2 then lands outside the declared covers
        let mut site = Site::dense(FinCatPresentation::chain_poset(3));
        assert!(site.covers[1].len() > 1);
        site.covers[1].retain(|s| s.arrows.len() == 2);
        site.basis = None;
        let report = validate_site(&site).unwrap();
        assert!(!report.axiom_l.passed(), "seeded (L) violation must be caught: {:?}", report);
        match &report.axiom_l {
            SiteVerdict::Refuted { witness } => assert!(witness.contains("le_1_2")),
            SiteVerdict::Pass => unreachable!(),
        }
    }

    #[test]
    fn non_closed_family_reported_malformed() {
        let cat = FinCatPresentation::arrow_category();
        let mut site = Site::trivial(cat.clone());
        // {id_tgt} alone is not precomposition-closed: id_tgt ∘ a is missing
        site.covers[1].push(Sieve { target: 1, arrows: [1usize].into_iter().collect() });
        let report = validate_site(&site).unwrap();
        assert!(!report.wellformed.passed());
    }

    #[test]
    fn bounded_cov_check_detects_missing_generated_cover() {
        let mut site = Site::two_object_cover();
        // drop the generated nontrivial cover from the declared list
        site.covers[1].retain(|s| s.arrows.len() == 2);
        let (ok, witness) = bounded_cov_check(&site).unwrap();
        assert!(!ok);
        assert!(witness.is_some());
    }
}
