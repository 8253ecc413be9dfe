//! Internal bounded separation: when a formula's atoms are bounded and its
//! quantifiers run along class members, the subobject it carves out is
//! class-bounded. The precondition is a syntactic check; the conclusion is
//! verified by evaluating the formula and testing the resulting mono.

use crate::error::{Error, Result};
use crate::fincat::Category;
use crate::logic::ast::Formula;
use crate::logic::env::Environment;
use crate::logic::eval::kripke_joyal_eval;

use super::MapClass;

/// Syntactic precondition: every typed quantifier ranges over a small sort,
/// every atom's relation is bounded. Bounded quantifiers pass by
/// construction, since they run along the membership relation, whose
/// boundedness is checked once.
fn check_syntactic<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    env: &Environment<C>,
    phi: &Formula,
) -> Result<()> {
    match phi {
        Formula::True | Formula::False => Ok(()),
        Formula::Eq(s, t) => {
            // equality is bounded when the diagonal of the sort is small
            let sort = env.term_sort(s, &env.context)?;
            let _ = env.term_sort(t, &env.context);
            let obj = env.sort_obj(&sort)?;
            let id = cat.identity(obj);
            let diag = cat.pair(&id, &id)?;
            if !class.contains(cat, &diag) {
                return Err(Error::Precondition(format!(
                    "equality at sort `{}` is not bounded: its diagonal is outside the class",
                    sort
                )));
            }
            Ok(())
        }
        Formula::Mem(..) => {
            let eps = env
                .eps
                .as_ref()
                .ok_or_else(|| Error::Sort("no `in` relation named".into()))?;
            if !class.contains(cat, &eps.sub) {
                return Err(Error::Precondition(
                    "the membership relation is not a bounded subobject".into(),
                ));
            }
            Ok(())
        }
        Formula::Rel(r, _) => {
            let interp = env
                .rels
                .get(r)
                .ok_or_else(|| Error::Sort(format!("relation `{}` is not declared", r)))?;
            if !class.contains(cat, &interp.sub) {
                return Err(Error::Precondition(format!(
                    "relation `{}` is not a bounded subobject",
                    r
                )));
            }
            Ok(())
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            check_syntactic(cat, class, env, a)?;
            check_syntactic(cat, class, env, b)
        }
        Formula::Not(a) => check_syntactic(cat, class, env, a),
        Formula::Forall(_, sort, body) | Formula::Exists(_, sort, body) => {
            let obj = env.sort_obj(sort)?;
            let bang = cat.bang(obj)?;
            if !class.contains(cat, &bang) {
                return Err(Error::Precondition(format!(
                    "quantifier ranges along `{}`, which is not a small map",
                    sort
                )));
            }
            check_syntactic(cat, class, env, body)
        }
        Formula::ForallIn(_, _, body) | Formula::ExistsIn(_, _, body) => {
            let eps = env
                .eps
                .as_ref()
                .ok_or_else(|| Error::Sort("no `in` relation named".into()))?;
            if !class.contains(cat, &eps.sub) {
                return Err(Error::Precondition(
                    "bounded quantifier over an unbounded membership relation".into(),
                ));
            }
            check_syntactic(cat, class, env, body)
        }
    }
}

/// Evaluates `{x ∈ context | φ}` and reports whether the carved-out
/// subobject is class-bounded. Errors when the syntactic precondition on φ
/// fails.
pub fn bounded_separation_check<C: Category>(
    cat: &C,
    class: &MapClass<C>,
    env: &Environment<C>,
    phi: &Formula,
) -> Result<bool> {
    check_syntactic(cat, class, env, phi)?;
    let sub = kripke_joyal_eval(cat, env, phi)?;
    Ok(class.contains(cat, &sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::finset::{subset_mono, SkeletalFinSet};
    use crate::logic::env::RelInterp;
    use crate::logic::Formula;

    fn small_env() -> Environment<SkeletalFinSet> {
        let mut env = Environment::new();
        env.sorts.insert("X".into(), 3);
        env.sorts.insert("Big".into(), 4);
        // membership on X × X: i in j iff i < j
        let mut elems = Vec::new();
        for i in 0..3usize {
            for j in 0..3usize {
                if i < j {
                    elems.push(i * 3 + j);
                }
            }
        }
        elems.sort_unstable();
        env.eps = Some(RelInterp { arg_sorts: vec!["X".into(), "X".into()], sub: subset_mono(9, &elems) });
        env.context = vec![("x".into(), "X".into())];
        env
    }

    #[test]
    fn top_is_bounded_for_all_maps() {
        let cat = SkeletalFinSet;
        let class = MapClass::builtin("all").unwrap();
        let env = small_env();
        assert!(bounded_separation_check(&cat, &class, &env, &Formula::True).unwrap());
    }

    #[test]
    fn small_bounded_exists_is_bounded() {
        let cat = SkeletalFinSet;
        let class = MapClass::builtin("all").unwrap();
        let env = small_env();
        let phi = crate::logic::parse("exists y in x. true").unwrap();
        assert!(bounded_separation_check(&cat, &class, &env, &phi).unwrap());
    }

    #[test]
    fn quantifier_along_non_small_sort_rejected() {
        let cat = SkeletalFinSet;
        let class = MapClass::builtin("fibre<3").unwrap();
        let env = small_env();
        // Big has 4 elements: Big -> 1 has fibre 4, not < 3
        let phi = crate::logic::parse("forall y : Big. true").unwrap();
        let err = bounded_separation_check(&cat, &class, &env, &phi).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
