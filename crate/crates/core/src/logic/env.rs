//! Interpretation environments: sorts name objects of the ambient category,
//! relations name canonical subobjects of the left-nested products of their
//! argument sorts, and the membership atom `in` is interpreted by an
//! explicitly named binary relation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fincat::Category;

use super::ast::{Formula, Term};

#[derive(Clone, Debug)]
pub struct RelInterp<C: Category> {
    pub arg_sorts: Vec<String>,
    /// canonical mono into the left-nested product of the argument sorts
    pub sub: C::Arr,
}

#[derive(Clone, Debug)]
pub struct Environment<C: Category> {
    pub sorts: BTreeMap<String, C::Obj>,
    pub rels: BTreeMap<String, RelInterp<C>>,
    /// interpretation of the `in` atom; the environment must name it
    /// explicitly, there is no implicit membership
    pub eps: Option<RelInterp<C>>,
    /// free-variable context, in order: (variable, sort)
    pub context: Vec<(String, String)>,
    /// named global elements `1 -> sort`
    pub consts: BTreeMap<String, (String, C::Arr)>,
}

impl<C: Category> Environment<C> {
    pub fn new() -> Self {
        Environment {
            sorts: BTreeMap::new(),
            rels: BTreeMap::new(),
            eps: None,
            context: Vec::new(),
            consts: BTreeMap::new(),
        }
    }

    pub fn sort_obj(&self, name: &str) -> Result<&C::Obj> {
        self.sorts
            .get(name)
            .ok_or_else(|| Error::Sort(format!("sort `{}` is not declared", name)))
    }

    /// Sort of a term under the context extended by quantifier binders.
    pub fn term_sort(&self, t: &Term, scope: &[(String, String)]) -> Result<String> {
        let name = t.name();
        if let Some((_, sort)) = scope.iter().rev().find(|(v, _)| v == name) {
            return Ok(sort.clone());
        }
        if let Some((sort, _)) = self.consts.get(name) {
            return Ok(sort.clone());
        }
        Err(Error::Sort(format!("variable `{}` is not in scope", name)))
    }

    /// The element sort of the membership relation, for bounded binders.
    pub fn eps_elem_sort(&self) -> Result<String> {
        let eps = self
            .eps
            .as_ref()
            .ok_or_else(|| Error::Sort("no membership relation named in the environment".into()))?;
        if eps.arg_sorts.len() != 2 {
            return Err(Error::Sort("membership relation must be binary".into()));
        }
        Ok(eps.arg_sorts[0].clone())
    }

    /// Well-sortedness of a formula whose free variables are covered by the
    /// environment context.
    pub fn check_sorted(&self, phi: &Formula) -> Result<()> {
        let mut scope = self.context.clone();
        self.check_inner(phi, &mut scope)
    }

    fn check_inner(&self, phi: &Formula, scope: &mut Vec<(String, String)>) -> Result<()> {
        match phi {
            Formula::True | Formula::False => Ok(()),
            Formula::Eq(s, t) => {
                let ss = self.term_sort(s, scope)?;
                let ts = self.term_sort(t, scope)?;
                if ss != ts {
                    return Err(Error::Sort(format!(
                        "equality between sorts `{}` and `{}`",
                        ss, ts
                    )));
                }
                Ok(())
            }
            Formula::Mem(s, t) => {
                let eps = self.eps.as_ref().ok_or_else(|| {
                    Error::Sort("membership atom used but no `in` relation named".into())
                })?;
                let ss = self.term_sort(s, scope)?;
                let ts = self.term_sort(t, scope)?;
                if eps.arg_sorts != vec![ss.clone(), ts.clone()] {
                    return Err(Error::Sort(format!(
                        "membership atom at sorts ({}, {}) but `in` is declared at ({}, {})",
                        ss, ts, eps.arg_sorts[0], eps.arg_sorts[1]
                    )));
                }
                Ok(())
            }
            Formula::Rel(r, args) => {
                let interp = self
                    .rels
                    .get(r)
                    .ok_or_else(|| Error::Sort(format!("relation `{}` is not declared", r)))?;
                if interp.arg_sorts.len() != args.len() {
                    return Err(Error::Sort(format!(
                        "relation `{}` expects {} arguments, got {}",
                        r,
                        interp.arg_sorts.len(),
                        args.len()
                    )));
                }
                for (t, want) in args.iter().zip(&interp.arg_sorts) {
                    let got = self.term_sort(t, scope)?;
                    if &got != want {
                        return Err(Error::Sort(format!(
                            "argument `{}` of `{}` has sort `{}`, expected `{}`",
                            t.name(),
                            r,
                            got,
                            want
                        )));
                    }
                }
                Ok(())
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.check_inner(a, scope)?;
                self.check_inner(b, scope)
            }
            Formula::Not(a) => self.check_inner(a, scope),
            Formula::Forall(x, sort, body) | Formula::Exists(x, sort, body) => {
                self.sort_obj(sort)?;
                scope.push((x.clone(), sort.clone()));
                let r = self.check_inner(body, scope);
                scope.pop();
                r
            }
            Formula::ForallIn(x, a, body) | Formula::ExistsIn(x, a, body) => {
                let elem = self.eps_elem_sort()?;
                let container = self
                    .eps
                    .as_ref()
                    .map(|e| e.arg_sorts[1].clone())
                    .expect("eps checked above");
                let got = self.term_sort(a, scope)?;
                if got != container {
                    return Err(Error::Sort(format!(
                        "bounded quantifier over `{}` of sort `{}`, expected `{}`",
                        a.name(),
                        got,
                        container
                    )));
                }
                scope.push((x.clone(), elem));
                let r = self.check_inner(body, scope);
                scope.pop();
                r
            }
        }
    }
}

impl<C: Category> Default for Environment<C> {
    fn default() -> Self {
        Environment::new()
    }
}
