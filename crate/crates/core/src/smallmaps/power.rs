//! Power classes: for an object `C`, the object `P_s(C)` of small subobjects
//! together with the membership relation `∈_C ⊆ C × P_s(C)`, classifying
//! small relations by unique pullback squares. `Ω_b = P_s(1)` classifies the
//! bounded subobjects.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{pullback_sub, Category};

use super::{AxiomId, AxiomVerdict, Counterexample, Evidence, MapClass, Outcome};

/// Power-class data for one base object.
#[derive(Clone, Debug)]
pub struct PowerClassData<C: Category> {
    pub base: C::Obj,
    pub carrier: C::Obj,
    /// canonical mono `∈_C -> C × P_s(C)` in the canonical product encoding
    pub membership: C::Arr,
}

/// Builds the power class of `c` from the class's analytic witness and
/// verifies the unique-classification property on sampled small relations.
pub fn power_class<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    c: &C::Obj,
    budget: &Budget,
) -> Result<PowerClassData<C>> {
    let w = class.power_witness.as_ref().ok_or_else(|| {
        Error::resource(
            "building a power class",
            format!("class {} carries no power-class witness and search is exhausted", class.name),
        )
    })?;
    let data = w(cat, c)?;
    if let Some(err) = classification_violation(cat, class, &data, budget)? {
        return Err(Error::Malformed(format!("power class failed verification: {}", err)));
    }
    Ok(data)
}

/// The bounded subobject classifier `Ω_b = P_s(1)`.
pub fn omega_b<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<PowerClassData<C>> {
    let t = cat.terminal()?;
    power_class(cat, class, &t, budget)
}

/// A relation `R ⊆ C × D` is small when its composite to `D` is in the class.
fn is_small_relation<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    r: &C::Arr,
    proj_d: &C::Arr,
) -> Result<bool> {
    let to_d = cat.compose(proj_d, r)?;
    Ok(class.contains(cat, &to_d))
}

/// Searches `hom(D, P_s(C))` for maps classifying `r`; the classification
/// square must be a pullback, which with canonical subobjects means
/// `(1 × ρ)^* ∈_C = r`.
pub fn classifying_maps<C: Category>(
    cat: &C,
    data: &PowerClassData<C>,
    r: &C::Arr,
    d: &C::Obj,
) -> Result<Vec<C::Arr>> {
    let prod_cd = cat.product(&data.base, d)?;
    let mut out = Vec::new();
    for rho in cat.hom(d, &data.carrier)? {
        let one_times_rho =
            cat.pair(&prod_cd.left, &cat.compose(&rho, &prod_cd.right)?)?;
        let pulled = pullback_sub(cat, &one_times_rho, &data.membership)?;
        if pulled == *r {
            out.push(rho);
        }
    }
    Ok(out)
}

/// Returns a description of the first classification violation, or `None`.
fn classification_violation<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    data: &PowerClassData<C>,
    budget: &Budget,
) -> Result<Option<String>> {
    let d_bound = budget.max_size.min(2);
    for d in cat.objects_up_to(d_bound) {
        let prod = cat.product(&data.base, &d)?;
        for r in cat.subobjects(&prod.obj)? {
            if !is_small_relation(cat, class, &r, &prod.right)? {
                continue;
            }
            let n = classifying_maps(cat, data, &r, &d)?.len();
            if n != 1 {
                return Ok(Some(format!(
                    "relation {:?} over {:?} has {} classifying maps",
                    r, d, n
                )));
            }
        }
    }
    Ok(None)
}

/// Functorial action `P_s(g): P_s(C) -> P_s(C')` recovered by classifying
/// the direct-image relation of `g` against `∈_C`.
pub fn power_map<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    g: &C::Arr,
    budget: &Budget,
) -> Result<C::Arr> {
    let from = power_class(cat, class, &cat.dom(g), budget)?;
    let to = power_class(cat, class, &cat.cod(g), budget)?;
    // direct image of ∈_C along g × id: a relation ⊆ C' × P_s(C)
    let p_old = &from.carrier;
    let prod_old = cat.product(&cat.dom(g), p_old)?;
    let g_x_id = cat.pair(
        &cat.compose(g, &prod_old.left)?,
        &prod_old.right,
    )?;
    let moved = cat.canon_sub(&cat.compose(&g_x_id, &from.membership)?)?;
    let mut rhos = classifying_maps(cat, &to, &moved, p_old)?;
    if rhos.len() != 1 {
        return Err(Error::Malformed(format!(
            "power-map classification of {:?} yielded {} maps",
            g,
            rhos.len()
        )));
    }
    Ok(rhos.pop().unwrap())
}

/// (PE) checker: witness-backed construction plus the classification,
/// functoriality and Ω_b sampling.
pub fn check_power_class<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<AxiomVerdict<C>> {
    if class.power_witness.is_none() {
        return Ok(AxiomVerdict {
            axiom: AxiomId::PE,
            outcome: Outcome::Inconclusive,
            evidence: Evidence::NoWitness {
                bound: budget.search_size,
                candidates: 0,
                detail: "no power-class witness supplied; search not attempted".into(),
            },
            instances: 0,
        });
    }
    let c_bound = budget.max_size.min(3);
    let mut instances = 0;
    for c in cat.objects_up_to(c_bound) {
        match power_class(cat, class, &c, budget) {
            Ok(_) => instances += 1,
            Err(e) => {
                return Ok(AxiomVerdict {
                    axiom: AxiomId::PE,
                    outcome: Outcome::Refuted,
                    evidence: Evidence::Counterexample(Counterexample::PowerClass {
                        detail: format!("at object {:?}: {}", c, e),
                    }),
                    instances,
                })
            }
        }
    }
    // functoriality on sampled arrows: identities and composites
    let f_bound = budget.max_size.min(2);
    for x in cat.objects_up_to(f_bound) {
        let pid = power_map(cat, class, &cat.identity(&x), budget)?;
        instances += 1;
        if pid != cat.identity(&cat.dom(&pid)) {
            return Ok(AxiomVerdict {
                axiom: AxiomId::PE,
                outcome: Outcome::Refuted,
                evidence: Evidence::Counterexample(Counterexample::PowerClass {
                    detail: format!("P_s(id) is not the identity at {:?}", x),
                }),
                instances,
            });
        }
    }
    let sample = super::axioms::catalog_arrows(cat, f_bound)?;
    for f in &sample {
        for g in sample.iter().filter(|g| cat.dom(g) == cat.cod(f)) {
            let gf = cat.compose(g, f)?;
            let lhs = power_map(cat, class, &gf, budget)?;
            let rhs =
                cat.compose(&power_map(cat, class, g, budget)?, &power_map(cat, class, f, budget)?)?;
            instances += 1;
            if lhs != rhs {
                return Ok(AxiomVerdict {
                    axiom: AxiomId::PE,
                    outcome: Outcome::Refuted,
                    evidence: Evidence::Counterexample(Counterexample::PowerClass {
                        detail: format!("P_s(g ∘ f) differs from P_s(g) ∘ P_s(f) at {:?}, {:?}", f, g),
                    }),
                    instances,
                });
            }
        }
    }
    // Ω_b classifies bounded subobjects on sampled objects
    let om = omega_b(cat, class, budget)?;
    for x in cat.objects_up_to(budget.max_size.min(3)) {
        let bounded: Vec<C::Arr> = cat
            .subobjects(&x)?
            .into_iter()
            .filter(|s| class.contains(cat, s))
            .collect();
        let mut classified = 0;
        for s in &bounded {
            // view s as a relation ⊆ 1 × X via the canonical iso
            let rel = sub_as_terminal_relation(cat, &x, s)?;
            let n = classifying_maps(cat, &om, &rel, &x)?.len();
            if n != 1 {
                return Ok(AxiomVerdict {
                    axiom: AxiomId::PE,
                    outcome: Outcome::Refuted,
                    evidence: Evidence::Counterexample(Counterexample::PowerClass {
                        detail: format!(
                            "bounded subobject {:?} of {:?} has {} classifying maps to Ω_b",
                            s, x, n
                        ),
                    }),
                    instances,
                });
            }
            classified += 1;
        }
        instances += classified;
    }
    Ok(AxiomVerdict {
        axiom: AxiomId::PE,
        outcome: Outcome::Witnessed,
        evidence: Evidence::Witness {
            detail: format!(
                "power classes built and classification verified on {} instances",
                instances
            ),
        },
        instances,
    })
}

/// Transports a subobject of `x` across the canonical iso `1 × x ≅ x`.
fn sub_as_terminal_relation<C: Category>(cat: &C, _x: &C::Obj, s: &C::Arr) -> Result<C::Arr> {
    let into_prod = cat.pair(&cat.bang(&cat.dom(s))?, s)?;
    cat.canon_sub(&into_prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::finset::{subset_mono, SkeletalFinSet};

    #[test]
    fn power_class_of_two_has_four_elements() {
        let cat = SkeletalFinSet;
        let class = MapClass::builtin("all").unwrap();
        let b = Budget::default();
        let data = power_class(&cat, &class, &2, &b).unwrap();
        assert_eq!(data.carrier, 4);
    }

    #[test]
    fn power_class_of_empty_is_singleton() {
        let cat = SkeletalFinSet;
        let class = MapClass::builtin("all").unwrap();
        let data = power_class(&cat, &class, &0, &Budget::default()).unwrap();
        assert_eq!(data.carrier, 1);
    }

    #[test]
    fn sampled_relation_has_unique_classifier() {
        let cat = SkeletalFinSet;
        let class = MapClass::builtin("all").unwrap();
        let b = Budget::default();
        let data = power_class(&cat, &class, &2, &b).unwrap();
        // R ⊆ 2×3: relate (0, d) for every d, plus (1, 0)
        let elems: Vec<usize> = vec![0, 1, 2, 3]; // pairs c*3 + d
        let r = subset_mono(6, &elems);
        let rhos = classifying_maps(&cat, &data, &r, &3).unwrap();
        assert_eq!(rhos.len(), 1);
    }
}
