//! Set-axiom checking on the truncated hierarchy. Quantifiers follow the
//! headroom discipline: universally quantified inputs range over ranks up to
//! `n - h` so that the constructors a schema demands (pair, union, power
//! set) still produce elements inside `V_n`, while existential witnesses
//! range over all of `V_n`. A schema needing more headroom than supplied
//! reports out-of-headroom, never a false failure.

use crate::error::{Error, Result};
use crate::fincat::finset::{subset_mono, SkeletalFinSet};
use crate::logic::ast::{Formula, Term};
use crate::logic::env::{Environment, RelInterp};
use crate::logic::eval::kripke_joyal_eval;
use crate::logic::schema::{instantiate_schema, AxiomSchemaId, SET_SORT};

use super::vmodel::VApprox;

const LOW: &str = "low";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetAxiomVerdict {
    Holds,
    Fails { witness: Vec<(String, String)> },
    OutOfHeadroom { needed: usize },
}

impl SetAxiomVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SetAxiomVerdict::Holds)
    }
}

/// Rank slack each schema needs so its constructors stay inside the table.
pub fn needed_headroom(id: &AxiomSchemaId) -> usize {
    match id {
        AxiomSchemaId::Extensionality => 0,
        AxiomSchemaId::EmptySet => 0,
        AxiomSchemaId::Pairing => 1,
        AxiomSchemaId::Union => 1,
        AxiomSchemaId::EpsilonInduction(_) => 0,
        AxiomSchemaId::BoundedSeparation(_) => 0,
        AxiomSchemaId::StrongCollection(_) => 1,
        AxiomSchemaId::Infinity => 0,
        AxiomSchemaId::FullSeparation(_) => 0,
        AxiomSchemaId::PowerSet => 1,
        AxiomSchemaId::SubsetCollection(_) => 2,
        AxiomSchemaId::Fullness => 4,
    }
}

fn needed_rank(id: &AxiomSchemaId) -> usize {
    match id {
        AxiomSchemaId::EmptySet => 1,
        _ => 0,
    }
}

/// Polarity-aware relativization: positive universals and negative
/// existentials are guarded by the low-rank predicate, the dual quantifiers
/// range over the whole table. Bounded quantifiers already range over
/// members and stay untouched.
pub fn relativize(phi: &Formula, positive: bool) -> Formula {
    match phi {
        Formula::True
        | Formula::False
        | Formula::Eq(..)
        | Formula::Mem(..)
        | Formula::Rel(..) => phi.clone(),
        Formula::And(a, b) => Formula::and(relativize(a, positive), relativize(b, positive)),
        Formula::Or(a, b) => Formula::or(relativize(a, positive), relativize(b, positive)),
        Formula::Implies(a, b) => {
            Formula::implies(relativize(a, !positive), relativize(b, positive))
        }
        Formula::Not(a) => Formula::not(relativize(a, !positive)),
        Formula::Forall(x, sort, body) => {
            let inner = relativize(body, positive);
            if positive {
                Formula::forall(
                    x.clone(),
                    sort.clone(),
                    Formula::implies(Formula::Rel(LOW.into(), vec![Term::var(x)]), inner),
                )
            } else {
                Formula::forall(x.clone(), sort.clone(), inner)
            }
        }
        Formula::Exists(x, sort, body) => {
            let inner = relativize(body, positive);
            if positive {
                Formula::exists(x.clone(), sort.clone(), inner)
            } else {
                Formula::exists(
                    x.clone(),
                    sort.clone(),
                    Formula::and(Formula::Rel(LOW.into(), vec![Term::var(x)]), inner),
                )
            }
        }
        Formula::ForallIn(x, a, body) => {
            Formula::ForallIn(x.clone(), a.clone(), Box::new(relativize(body, positive)))
        }
        Formula::ExistsIn(x, a, body) => {
            Formula::ExistsIn(x.clone(), a.clone(), Box::new(relativize(body, positive)))
        }
    }
}

fn quantifier_depth(phi: &Formula) -> usize {
    match phi {
        Formula::True | Formula::False | Formula::Eq(..) | Formula::Mem(..) | Formula::Rel(..) => 0,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            quantifier_depth(a).max(quantifier_depth(b))
        }
        Formula::Not(a) => quantifier_depth(a),
        Formula::Forall(_, _, b)
        | Formula::Exists(_, _, b)
        | Formula::ForallIn(_, _, b)
        | Formula::ExistsIn(_, _, b) => 1 + quantifier_depth(b),
    }
}

/// The evaluation environment for a truncated hierarchy: one sort `V`, the
/// membership relation as a subobject of `V × V`, and the low-rank guard.
pub fn v_environment(v: &VApprox, headroom: usize) -> Environment<SkeletalFinSet> {
    let n = v.len();
    let mut env = Environment::new();
    env.sorts.insert(SET_SORT.into(), n);
    let mut eps_elems = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if v.mem_direct(i, j) {
                eps_elems.push(i * n + j);
            }
        }
    }
    eps_elems.sort_unstable();
    env.eps = Some(RelInterp {
        arg_sorts: vec![SET_SORT.into(), SET_SORT.into()],
        sub: subset_mono(n * n, &eps_elems),
    });
    let cutoff = v.rank.saturating_sub(headroom);
    let low: Vec<usize> = (0..n).filter(|&i| v.birth_rank(i) <= cutoff).collect();
    env.rels.insert(
        LOW.into(),
        RelInterp { arg_sorts: vec![SET_SORT.into()], sub: subset_mono(n, &low) },
    );
    env
}

/// Evaluates a schema on the truncated hierarchy under the headroom
/// discipline.
pub fn check_set_axiom(
    id: &AxiomSchemaId,
    v: &VApprox,
    headroom: usize,
) -> Result<SetAxiomVerdict> {
    let needed = needed_headroom(id);
    if headroom < needed || v.rank < needed_rank(id) {
        return Ok(SetAxiomVerdict::OutOfHeadroom { needed });
    }
    let phi = instantiate_schema(id)?;
    let depth = quantifier_depth(&phi);
    let states = (v.len().max(1) as f64).powi(depth as i32);
    if states > 2.0e7 {
        return Err(Error::resource(
            "evaluating a set axiom",
            format!("context of about {:e} assignments at rank {}", states, v.rank),
        ));
    }
    let rel = relativize(&phi, true);
    let env = v_environment(v, headroom);
    let cat = SkeletalFinSet;
    let sub = kripke_joyal_eval(&cat, &env, &rel)?;
    if sub.dom == 1 {
        Ok(SetAxiomVerdict::Holds)
    } else {
        let witness = find_failure_witness(&cat, &env, v, &rel);
        Ok(SetAxiomVerdict::Fails { witness })
    }
}

/// Walks outer universal structure of a failed closed formula, substituting
/// elements to locate a concrete failing assignment.
fn find_failure_witness(
    cat: &SkeletalFinSet,
    env: &Environment<SkeletalFinSet>,
    v: &VApprox,
    phi: &Formula,
) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut current = phi.clone();
    let mut env = env.clone();
    let mut counter = 0usize;
    loop {
        match current.clone() {
            Formula::Forall(x, _, body) => {
                let mut found = false;
                for i in 0..v.len() {
                    let cname = format!("w_{}", counter);
                    let elem = crate::fincat::finset::FinArrow {
                        dom: 1,
                        cod: v.len(),
                        table: vec![i],
                    };
                    let mut env2 = env.clone();
                    env2.consts.insert(cname.clone(), (SET_SORT.into(), elem));
                    let inst = body.subst(&x, &Term::var(&cname));
                    match kripke_joyal_eval(cat, &env2, &inst) {
                        Ok(sub) if sub.dom == 0 => {
                            out.push((x.clone(), v.elems[i].to_string()));
                            env = env2;
                            current = inst;
                            counter += 1;
                            found = true;
                            break;
                        }
                        _ => {}
                    }
                }
                if !found {
                    return out;
                }
            }
            Formula::Implies(a, b) => {
                let hyp_holds = kripke_joyal_eval(cat, &env, &a)
                    .map(|s| s.dom == 1)
                    .unwrap_or(false);
                if hyp_holds {
                    current = *b;
                } else {
                    return out;
                }
            }
            _ => return out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wzf::vmodel::build_v;

    #[test]
    fn pairing_needs_headroom() {
        let v = build_v(3).unwrap();
        assert_eq!(
            check_set_axiom(&AxiomSchemaId::Pairing, &v, 0).unwrap(),
            SetAxiomVerdict::OutOfHeadroom { needed: 1 }
        );
    }

    #[test]
    fn extensionality_holds_on_small_ranks() {
        let v = build_v(3).unwrap();
        assert!(check_set_axiom(&AxiomSchemaId::Extensionality, &v, 1).unwrap().holds());
    }

    #[test]
    fn infinity_fails_with_witness() {
        let v = build_v(3).unwrap();
        match check_set_axiom(&AxiomSchemaId::Infinity, &v, 0).unwrap() {
            SetAxiomVerdict::Fails { .. } => {}
            other => panic!("expected failure, got {:?}", other),
        }
    }
}
