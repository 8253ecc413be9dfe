//! The axiom schemas of the constructive set theories, generated as closed
//! formulas over a single set sort `V` with the membership atom `in`.
//! Schema parameters are user formulas with designated free variables;
//! binder names are chosen fresh so the side conditions ("`a` does not occur
//! in φ") hold by construction.

use crate::error::{Error, Result};

use super::ast::{Formula, Term};

pub const SET_SORT: &str = "V";

/// Schema identifiers. Parameterized schemas carry their formula parameter:
/// the designated free variables are `y` for the separation schemas, `x`
/// for epsilon induction, `x, y` for strong collection, and `x, y, z` for
/// subset collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomSchemaId {
    Extensionality,
    EmptySet,
    Pairing,
    Union,
    EpsilonInduction(Formula),
    BoundedSeparation(Formula),
    StrongCollection(Formula),
    Infinity,
    FullSeparation(Formula),
    PowerSet,
    SubsetCollection(Formula),
    Fullness,
}

impl AxiomSchemaId {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomSchemaId::Extensionality => "extensionality",
            AxiomSchemaId::EmptySet => "empty-set",
            AxiomSchemaId::Pairing => "pairing",
            AxiomSchemaId::Union => "union",
            AxiomSchemaId::EpsilonInduction(_) => "epsilon-induction",
            AxiomSchemaId::BoundedSeparation(_) => "bounded-separation",
            AxiomSchemaId::StrongCollection(_) => "strong-collection",
            AxiomSchemaId::Infinity => "infinity",
            AxiomSchemaId::FullSeparation(_) => "full-separation",
            AxiomSchemaId::PowerSet => "power-set",
            AxiomSchemaId::SubsetCollection(_) => "subset-collection",
            AxiomSchemaId::Fullness => "fullness",
        }
    }
}

fn fresh(base: &str, avoid: &std::collections::BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let mut n = 0usize;
    loop {
        let cand = format!("{}{}", base, n);
        if !avoid.contains(&cand) {
            return cand;
        }
        n += 1;
    }
}

/// Universal closure over the remaining free variables, in sorted order.
pub fn universal_closure(phi: Formula) -> Formula {
    let mut out = phi;
    for var in out.free_vars().into_iter().rev() {
        out = Formula::forall(var, SET_SORT, out);
    }
    out
}

trait PipeClose {
    fn pipe_close(self) -> Formula;
}

impl PipeClose for Formula {
    fn pipe_close(self) -> Formula {
        universal_closure(self)
    }
}

fn v(t: &str) -> Term {
    Term::var(t)
}

/// `s ⊆ t` for set terms: every member of `s` is a member of `t`.
pub fn subset_of(s: &str, t: &str, fresh_var: &str) -> Formula {
    Formula::forall_in(fresh_var, v(s), Formula::mem(fresh_var, t))
}

/// Instantiates a schema to a closed formula over the set sort.
pub fn instantiate_schema(id: &AxiomSchemaId) -> Result<Formula> {
    match id {
        AxiomSchemaId::Extensionality => Ok(Formula::forall(
            "a",
            SET_SORT,
            Formula::forall(
                "b",
                SET_SORT,
                Formula::implies(
                    Formula::forall(
                        "x",
                        SET_SORT,
                        Formula::iff(Formula::mem("x", "a"), Formula::mem("x", "b")),
                    ),
                    Formula::eq("a", "b"),
                ),
            ),
        )),
        AxiomSchemaId::EmptySet => Ok(Formula::exists(
            "x",
            SET_SORT,
            Formula::forall("y", SET_SORT, Formula::not(Formula::mem("y", "x"))),
        )),
        AxiomSchemaId::Pairing => Ok(Formula::forall(
            "a",
            SET_SORT,
            Formula::forall(
                "b",
                SET_SORT,
                Formula::exists(
                    "x",
                    SET_SORT,
                    Formula::forall(
                        "y",
                        SET_SORT,
                        Formula::iff(
                            Formula::mem("y", "x"),
                            Formula::or(Formula::eq("y", "a"), Formula::eq("y", "b")),
                        ),
                    ),
                ),
            ),
        )),
        AxiomSchemaId::Union => Ok(Formula::forall(
            "a",
            SET_SORT,
            Formula::exists(
                "x",
                SET_SORT,
                Formula::forall(
                    "y",
                    SET_SORT,
                    Formula::iff(
                        Formula::mem("y", "x"),
                        Formula::exists_in("z", v("a"), Formula::mem("y", "z")),
                    ),
                ),
            ),
        )),
        AxiomSchemaId::EpsilonInduction(phi) => {
            let fv = phi.free_vars();
            let y = fresh("y", &fv);
            let phi_y = phi.subst("x", &v(&y));
            Ok(Formula::implies(
                Formula::forall(
                    "x",
                    SET_SORT,
                    Formula::implies(
                        Formula::forall_in(&y, v("x"), phi_y),
                        phi.clone(),
                    ),
                ),
                Formula::forall("x", SET_SORT, phi.clone()),
            )
            .pipe_close())
        }
        AxiomSchemaId::BoundedSeparation(phi) => {
            if !phi.is_bounded() {
                return Err(Error::Sort(
                    "bounded-separation parameter must be a bounded formula".into(),
                ));
            }
            separation_formula(phi)
        }
        AxiomSchemaId::FullSeparation(phi) => separation_formula(phi),
        AxiomSchemaId::StrongCollection(phi) => {
            let fv = phi.free_vars();
            let a = fresh("a", &fv);
            let b = fresh("b", &fv);
            Ok(Formula::forall(
                &a,
                SET_SORT,
                Formula::implies(
                    Formula::forall_in(
                        "x",
                        v(&a),
                        Formula::exists("y", SET_SORT, phi.clone()),
                    ),
                    Formula::exists(
                        &b,
                        SET_SORT,
                        Formula::biquant("x", &a, "y", &b, phi.clone()),
                    ),
                ),
            )
            .pipe_close())
        }
        AxiomSchemaId::Infinity => Ok(Formula::exists(
            "a",
            SET_SORT,
            Formula::and(
                Formula::exists("x", SET_SORT, Formula::mem("x", "a")),
                Formula::forall_in(
                    "x",
                    v("a"),
                    Formula::exists_in("y", v("a"), Formula::mem("x", "y")),
                ),
            ),
        )),
        AxiomSchemaId::PowerSet => Ok(Formula::forall(
            "a",
            SET_SORT,
            Formula::exists(
                "x",
                SET_SORT,
                Formula::forall(
                    "y",
                    SET_SORT,
                    Formula::iff(Formula::mem("y", "x"), subset_of("y", "a", "z")),
                ),
            ),
        )),
        AxiomSchemaId::SubsetCollection(phi) => {
            let fv = phi.free_vars();
            let a = fresh("a", &fv);
            let b = fresh("b", &fv);
            let c = fresh("c", &fv);
            let d = fresh("d", &fv);
            Ok(Formula::forall(
                &a,
                SET_SORT,
                Formula::forall(
                    &b,
                    SET_SORT,
                    Formula::exists(
                        &c,
                        SET_SORT,
                        Formula::forall(
                            "z",
                            SET_SORT,
                            Formula::implies(
                                Formula::forall_in(
                                    "x",
                                    v(&a),
                                    Formula::exists_in("y", v(&b), phi.clone()),
                                ),
                                Formula::exists_in(
                                    &d,
                                    v(&c),
                                    Formula::biquant("x", &a, "y", &d, phi.clone()),
                                ),
                            ),
                        ),
                    ),
                ),
            )
            .pipe_close())
        }
        AxiomSchemaId::Fullness => Ok(fullness_formula()),
    }
}

fn separation_formula(phi: &Formula) -> Result<Formula> {
    let mut fv = phi.free_vars();
    fv.insert("y".into());
    let a = fresh("a", &fv);
    let x = fresh("x", &fv);
    Ok(Formula::forall(
        &a,
        SET_SORT,
        Formula::exists(
            &x,
            SET_SORT,
            Formula::forall(
                "y",
                SET_SORT,
                Formula::iff(
                    Formula::mem("y", &x),
                    Formula::and(Formula::mem("y", &a), phi.clone()),
                ),
            ),
        ),
    )
    .pipe_close())
}

/// `q = {x}` in the membership language.
fn is_singleton(q: &str, x: &str, r: &str) -> Formula {
    Formula::and(
        Formula::mem(x, q),
        Formula::forall_in(r, v(q), Formula::eq(r, x)),
    )
}

/// `q = {x, y}`.
fn is_unordered_pair(q: &str, x: &str, y: &str, r: &str) -> Formula {
    Formula::and(
        Formula::and(Formula::mem(x, q), Formula::mem(y, q)),
        Formula::forall_in(
            r,
            v(q),
            Formula::or(Formula::eq(r, x), Formula::eq(r, y)),
        ),
    )
}

/// `p = <x, y>` with the Kuratowski pairing `{{x}, {x, y}}`.
pub fn is_ordered_pair(p: &str, x: &str, y: &str) -> Formula {
    Formula::and(
        Formula::and(
            Formula::exists_in("q", v(p), is_singleton("q", x, "r")),
            Formula::exists_in("q", v(p), is_unordered_pair("q", x, y, "r")),
        ),
        Formula::forall_in(
            "q",
            v(p),
            Formula::or(is_singleton("q", x, "r"), is_unordered_pair("q", x, y, "r")),
        ),
    )
}

/// `v` is a multi-valued function from `a` to `b`: a relation made of
/// ordered pairs below `a × b`, total on `a`.
pub fn is_mv(rel: &str, a: &str, b: &str) -> Formula {
    Formula::and(
        Formula::forall_in(
            "p",
            v(rel),
            Formula::exists_in(
                "x",
                v(a),
                Formula::exists_in("y", v(b), is_ordered_pair("p", "x", "y")),
            ),
        ),
        Formula::forall_in(
            "x",
            v(a),
            Formula::exists_in(
                "y",
                v(b),
                Formula::exists_in("p", v(rel), is_ordered_pair("p", "x", "y")),
            ),
        ),
    )
}

/// Fullness: there is a full subset of the multi-valued functions from `a`
/// to `b`, with the `mv` class expanded in the membership language.
fn fullness_formula() -> Formula {
    let u_sub_mv = Formula::forall_in("w", v("u"), is_mv("w", "a", "b"));
    let refines = Formula::exists_in("w", v("u"), subset_of("w", "v0", "s"));
    Formula::forall(
        "a",
        SET_SORT,
        Formula::forall(
            "b",
            SET_SORT,
            Formula::exists(
                "u",
                SET_SORT,
                Formula::and(
                    u_sub_mv,
                    Formula::forall(
                        "v0",
                        SET_SORT,
                        Formula::implies(is_mv("v0", "a", "b"), refines),
                    ),
                ),
            ),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensionality_matches_statement() {
        let phi = instantiate_schema(&AxiomSchemaId::Extensionality).unwrap();
        let expected = Formula::forall(
            "a",
            SET_SORT,
            Formula::forall(
                "b",
                SET_SORT,
                Formula::implies(
                    Formula::forall(
                        "x",
                        SET_SORT,
                        Formula::iff(Formula::mem("x", "a"), Formula::mem("x", "b")),
                    ),
                    Formula::eq("a", "b"),
                ),
            ),
        );
        assert_eq!(phi, expected);
    }

    #[test]
    fn empty_set_matches_statement() {
        let phi = instantiate_schema(&AxiomSchemaId::EmptySet).unwrap();
        assert_eq!(
            phi,
            Formula::exists(
                "x",
                SET_SORT,
                Formula::forall("y", SET_SORT, Formula::not(Formula::mem("y", "x")))
            )
        );
    }

    #[test]
    fn fullness_contains_mv_expansion() {
        let phi = instantiate_schema(&AxiomSchemaId::Fullness).unwrap();
        let text = phi.to_string();
        // the mv(a, b) subformula appears through its expansion
        let mv = is_mv("w", "a", "b").to_string();
        assert!(text.contains(&mv), "fullness must contain the mv expansion");
    }

    #[test]
    fn schemas_are_closed() {
        for id in [
            AxiomSchemaId::Extensionality,
            AxiomSchemaId::EmptySet,
            AxiomSchemaId::Pairing,
            AxiomSchemaId::Union,
            AxiomSchemaId::Infinity,
            AxiomSchemaId::PowerSet,
            AxiomSchemaId::Fullness,
        ] {
            let phi = instantiate_schema(&id).unwrap();
            assert!(phi.free_vars().is_empty(), "{} is not closed", id.name());
        }
    }

    #[test]
    fn bounded_separation_rejects_unbounded_parameter() {
        let phi = Formula::exists("z", SET_SORT, Formula::mem("z", "y"));
        assert!(instantiate_schema(&AxiomSchemaId::BoundedSeparation(phi)).is_err());
    }

    #[test]
    fn parameter_side_condition_respected() {
        // φ mentioning `a` free: the separation binder must avoid it, and
        // the universal closure then binds it outermost
        let phi = Formula::exists_in("z", Term::var("y"), Formula::eq("z", "a"));
        let inst = instantiate_schema(&AxiomSchemaId::FullSeparation(phi)).unwrap();
        assert!(inst.free_vars().is_empty());
        match &inst {
            Formula::Forall(closure_binder, _, body) => {
                assert_eq!(closure_binder, "a");
                match &**body {
                    Formula::Forall(sep_binder, _, _) => assert_ne!(sep_binder, "a"),
                    other => panic!("expected the separation binder, got {}", other),
                }
            }
            _ => panic!("expected a universal closure"),
        }
    }
}
