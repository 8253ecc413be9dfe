//! Kripke-Joyal evaluation: a formula denotes a canonical subobject of the
//! context object, built by the standard clauses — atoms via equalizers and
//! pullbacks of the named relations, connectives via the Heyting operations,
//! `exists` as image along the context projection and `forall` via the right
//! adjoint. Evaluation is structural with memoization keyed on the
//! subformula and the context shape; everything stays pure.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{
    bottom_sub, exists_sub, imp_sub, join_sub, meet_sub, neg_sub, pullback_sub, top_sub, Category,
};

use super::ast::{Formula, Term};
use super::env::Environment;

struct Ctx<C: Category> {
    /// (variable, sort name, sort object), innermost last
    entries: Vec<(String, String, C::Obj)>,
    /// left-nested product of the entry sorts over the terminal object
    obj: C::Obj,
    /// projections from `obj` to each entry sort
    projections: Vec<C::Arr>,
}

impl<C: Category> Ctx<C> {
    fn empty(cat: &C) -> Result<Self> {
        Ok(Ctx { entries: Vec::new(), obj: cat.terminal()?, projections: Vec::new() })
    }

    fn extend(&self, cat: &C, var: &str, sort: &str, sort_obj: &C::Obj) -> Result<Self> {
        let prod = cat.product(&self.obj, sort_obj)?;
        let mut projections = Vec::with_capacity(self.projections.len() + 1);
        for p in &self.projections {
            projections.push(cat.compose(p, &prod.left)?);
        }
        projections.push(prod.right);
        let mut entries = self.entries.clone();
        entries.push((var.to_string(), sort.to_string(), sort_obj.clone()));
        Ok(Ctx { entries, obj: prod.obj, projections })
    }

    fn shape(&self) -> Vec<(String, String)> {
        self.entries.iter().map(|(v, s, _)| (v.clone(), s.clone())).collect()
    }
}

pub struct Evaluator<'a, C: Category> {
    cat: &'a C,
    env: &'a Environment<C>,
    memo: HashMap<(Formula, Vec<(String, String)>), C::Arr>,
}

impl<'a, C: Category> Evaluator<'a, C> {
    pub fn new(cat: &'a C, env: &'a Environment<C>) -> Self {
        Evaluator { cat, env, memo: HashMap::new() }
    }

    /// Evaluates a formula against the environment's declared context.
    /// The result is a canonical subobject of the context product.
    pub fn eval(&mut self, phi: &Formula) -> Result<C::Arr> {
        self.env.check_sorted(phi)?;
        let mut ctx = Ctx::empty(self.cat)?;
        for (var, sort) in self.env.context.clone() {
            let obj = self.env.sort_obj(&sort)?.clone();
            ctx = ctx.extend(self.cat, &var, &sort, &obj)?;
        }
        self.eval_in(phi, &ctx)
    }

    /// The context object the evaluation lands in.
    pub fn context_object(&self) -> Result<C::Obj> {
        let mut ctx = Ctx::empty(self.cat)?;
        for (var, sort) in self.env.context.clone() {
            let obj = self.env.sort_obj(&sort)?.clone();
            ctx = ctx.extend(self.cat, &var, &sort, &obj)?;
        }
        Ok(ctx.obj)
    }

    fn interp_term(&self, t: &Term, ctx: &Ctx<C>) -> Result<(String, C::Arr)> {
        let name = t.name();
        if let Some(idx) = ctx.entries.iter().rposition(|(v, _, _)| v == name) {
            return Ok((ctx.entries[idx].1.clone(), ctx.projections[idx].clone()));
        }
        if let Some((sort, elem)) = self.env.consts.get(name) {
            let bang = self.cat.bang(&ctx.obj)?;
            return Ok((sort.clone(), self.cat.compose(elem, &bang)?));
        }
        Err(Error::Sort(format!("variable `{}` is not in scope", name)))
    }

    /// Tuple arrow into the left-nested product of the argument sorts:
    /// a unary relation lives in its sort, a binary one in `X × Y`, and so
    /// on with left nesting.
    fn tuple(&self, args: &[(String, C::Arr)]) -> Result<C::Arr> {
        let mut iter = args.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Sort("relations need at least one argument".into()))?;
        let mut acc = first.1.clone();
        for (_, a) in iter {
            acc = self.cat.pair(&acc, a)?;
        }
        Ok(acc)
    }

    fn eval_in(&mut self, phi: &Formula, ctx: &Ctx<C>) -> Result<C::Arr> {
        let key = (phi.clone(), ctx.shape());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let cat = self.cat;
        let result = match phi {
            Formula::True => top_sub(cat, &ctx.obj)?,
            Formula::False => bottom_sub(cat, &ctx.obj)?,
            Formula::Eq(s, t) => {
                let (_, is) = self.interp_term(s, ctx)?;
                let (_, it) = self.interp_term(t, ctx)?;
                cat.canon_sub(&cat.equalizer(&is, &it)?)?
            }
            Formula::Mem(s, t) => {
                let eps = self
                    .env
                    .eps
                    .clone()
                    .ok_or_else(|| Error::Sort("no `in` relation named".into()))?;
                let s_i = self.interp_term(s, ctx)?;
                let t_i = self.interp_term(t, ctx)?;
                let tuple = self.tuple(&[s_i, t_i])?;
                pullback_sub(cat, &tuple, &eps.sub)?
            }
            Formula::Rel(r, args) => {
                let interp = self
                    .env
                    .rels
                    .get(r)
                    .cloned()
                    .ok_or_else(|| Error::Sort(format!("relation `{}` is not declared", r)))?;
                let interped: Vec<(String, C::Arr)> =
                    args.iter().map(|t| self.interp_term(t, ctx)).collect::<Result<_>>()?;
                let tuple = self.tuple(&interped)?;
                pullback_sub(cat, &tuple, &interp.sub)?
            }
            Formula::And(a, b) => {
                let sa = self.eval_in(a, ctx)?;
                let sb = self.eval_in(b, ctx)?;
                meet_sub(cat, &sa, &sb)?
            }
            Formula::Or(a, b) => {
                let sa = self.eval_in(a, ctx)?;
                let sb = self.eval_in(b, ctx)?;
                join_sub(cat, &sa, &sb)?
            }
            Formula::Implies(a, b) => {
                let sa = self.eval_in(a, ctx)?;
                let sb = self.eval_in(b, ctx)?;
                imp_sub(cat, &sa, &sb)?
            }
            Formula::Not(a) => {
                let sa = self.eval_in(a, ctx)?;
                neg_sub(cat, &sa)?
            }
            Formula::Exists(x, sort, body) => {
                let sort_obj = self.env.sort_obj(sort)?.clone();
                let inner = ctx.extend(cat, x, sort, &sort_obj)?;
                let s = self.eval_in(body, &inner)?;
                let proj = cat.product(&ctx.obj, &sort_obj)?.left;
                exists_sub(cat, &proj, &s)?
            }
            Formula::Forall(x, sort, body) => {
                let sort_obj = self.env.sort_obj(sort)?.clone();
                let inner = ctx.extend(cat, x, sort, &sort_obj)?;
                let s = self.eval_in(body, &inner)?;
                let proj = cat.product(&ctx.obj, &sort_obj)?.left;
                cat.forall_sub(&proj, &s)?
            }
            Formula::ForallIn(x, a, body) => {
                let elem_sort = self.env.eps_elem_sort()?;
                let desugared = Formula::forall(
                    x.clone(),
                    elem_sort,
                    Formula::implies(Formula::Mem(Term::var(x), a.clone()), (**body).clone()),
                );
                self.eval_in(&desugared, ctx)?
            }
            Formula::ExistsIn(x, a, body) => {
                let elem_sort = self.env.eps_elem_sort()?;
                let desugared = Formula::exists(
                    x.clone(),
                    elem_sort,
                    Formula::and(Formula::Mem(Term::var(x), a.clone()), (**body).clone()),
                );
                self.eval_in(&desugared, ctx)?
            }
        };
        self.memo.insert(key, result.clone());
        Ok(result)
    }
}

/// One-shot evaluation entry point.
pub fn kripke_joyal_eval<C: Category>(
    cat: &C,
    env: &Environment<C>,
    phi: &Formula,
) -> Result<C::Arr> {
    Evaluator::new(cat, env).eval(phi)
}
