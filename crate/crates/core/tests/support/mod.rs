//! Shared test oracles, independent of the library's evaluation paths:
//! a classical two-valued evaluator over finite-set environments, a
//! deterministic formula generator, and a plain powerset iterator for the
//! cumulative hierarchy counts.

use std::collections::{BTreeMap, BTreeSet};

use astw_core::fincat::finset::mono_subset;
use astw_core::fincat::finset::FinArrow;
use astw_core::logic::ast::{Formula, Term};

/// A finite-set environment mirrored in plain data: sorts are sizes,
/// relations are tuple sets.
#[derive(Clone, Debug, Default)]
pub struct ClassicalEnv {
    pub sorts: BTreeMap<String, usize>,
    pub rels: BTreeMap<String, (Vec<String>, BTreeSet<Vec<usize>>)>,
    pub eps: Option<(Vec<String>, BTreeSet<Vec<usize>>)>,
    pub context: Vec<(String, String)>,
    pub consts: BTreeMap<String, (String, usize)>,
}

impl ClassicalEnv {
    fn sort_size(&self, name: &str) -> usize {
        self.sorts[name]
    }

    fn term_value(&self, t: &Term, scope: &[(String, String, usize)]) -> (String, usize) {
        let name = t.name();
        if let Some((_, sort, v)) = scope.iter().rev().find(|(n, _, _)| n == name) {
            return (sort.clone(), *v);
        }
        let (sort, v) = &self.consts[name];
        (sort.clone(), *v)
    }

    fn eval(&self, phi: &Formula, scope: &mut Vec<(String, String, usize)>) -> bool {
        match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(s, t) => self.term_value(s, scope).1 == self.term_value(t, scope).1,
            Formula::Mem(s, t) => {
                let (_, sv) = self.term_value(s, scope);
                let (_, tv) = self.term_value(t, scope);
                self.eps.as_ref().map(|(_, set)| set.contains(&vec![sv, tv])).unwrap_or(false)
            }
            Formula::Rel(r, args) => {
                let tuple: Vec<usize> =
                    args.iter().map(|t| self.term_value(t, scope).1).collect();
                self.rels[r].1.contains(&tuple)
            }
            Formula::And(a, b) => self.eval(a, scope) && self.eval(b, scope),
            Formula::Or(a, b) => self.eval(a, scope) || self.eval(b, scope),
            Formula::Implies(a, b) => !self.eval(a, scope) || self.eval(b, scope),
            Formula::Not(a) => !self.eval(a, scope),
            Formula::Forall(x, sort, body) => (0..self.sort_size(sort)).all(|v| {
                scope.push((x.clone(), sort.clone(), v));
                let r = self.eval(body, scope);
                scope.pop();
                r
            }),
            Formula::Exists(x, sort, body) => (0..self.sort_size(sort)).any(|v| {
                scope.push((x.clone(), sort.clone(), v));
                let r = self.eval(body, scope);
                scope.pop();
                r
            }),
            Formula::ForallIn(x, a, body) => {
                let (elem_sort, _) = self
                    .eps
                    .as_ref()
                    .map(|(sorts, _)| (sorts[0].clone(), sorts[1].clone()))
                    .expect("membership declared");
                let (_, av) = self.term_value(a, scope);
                (0..self.sort_size(&elem_sort)).all(|v| {
                    let member = self
                        .eps
                        .as_ref()
                        .map(|(_, set)| set.contains(&vec![v, av]))
                        .unwrap_or(false);
                    if !member {
                        return true;
                    }
                    scope.push((x.clone(), elem_sort.clone(), v));
                    let r = self.eval(body, scope);
                    scope.pop();
                    r
                })
            }
            Formula::ExistsIn(x, a, body) => {
                let (elem_sort, _) = self
                    .eps
                    .as_ref()
                    .map(|(sorts, _)| (sorts[0].clone(), sorts[1].clone()))
                    .expect("membership declared");
                let (_, av) = self.term_value(a, scope);
                (0..self.sort_size(&elem_sort)).any(|v| {
                    let member = self
                        .eps
                        .as_ref()
                        .map(|(_, set)| set.contains(&vec![v, av]))
                        .unwrap_or(false);
                    if !member {
                        return false;
                    }
                    scope.push((x.clone(), elem_sort.clone(), v));
                    let r = self.eval(body, scope);
                    scope.pop();
                    r
                })
            }
        }
    }

    /// The truth subset of the context, encoded exactly like the library's
    /// left-nested context product: the empty context is a single point and
    /// extending multiplies by the sort size.
    pub fn truth_set(&self, phi: &Formula) -> Vec<usize> {
        let sizes: Vec<usize> =
            self.context.iter().map(|(_, s)| self.sort_size(s)).collect();
        let total: usize = sizes.iter().product();
        let mut out = Vec::new();
        for idx in 0..total {
            // decode the left-nested index
            let mut vals = vec![0usize; sizes.len()];
            let mut rest = idx;
            for i in (0..sizes.len()).rev() {
                vals[i] = rest % sizes[i];
                rest /= sizes[i];
            }
            let mut scope: Vec<(String, String, usize)> = self
                .context
                .iter()
                .zip(&vals)
                .map(|((n, s), &v)| (n.clone(), s.clone(), v))
                .collect();
            if self.eval(phi, &mut scope) {
                out.push(idx);
            }
        }
        out
    }
}

/// The canonical subobject's subset of the context object.
pub fn mono_elems(m: &FinArrow) -> Vec<usize> {
    mono_subset(m)
}

/// A deterministic corpus of formulas over a two-sort signature with a
/// unary and a binary relation, at least `n` of them.
pub fn formula_corpus(n: usize) -> Vec<Formula> {
    let atoms: Vec<Formula> = vec![
        Formula::Rel("P".into(), vec![Term::var("x")]),
        Formula::Rel("R".into(), vec![Term::var("x"), Term::var("y")]),
        Formula::eq("x", "x'"),
        Formula::True,
        Formula::False,
    ];
    let mut pool: Vec<Formula> = Vec::new();
    for a in &atoms {
        for b in &atoms {
            pool.push(Formula::and(a.clone(), b.clone()));
            pool.push(Formula::or(a.clone(), b.clone()));
            pool.push(Formula::implies(a.clone(), b.clone()));
            pool.push(Formula::iff(a.clone(), b.clone()));
        }
        pool.push(Formula::not(a.clone()));
    }
    let mut out = Vec::new();
    for body in &pool {
        out.push(Formula::forall("y", "Y", body.clone()));
        out.push(Formula::exists("y", "Y", body.clone()));
        out.push(Formula::not(Formula::exists("y", "Y", body.clone())));
        out.push(Formula::forall(
            "x'",
            "X",
            Formula::implies(Formula::eq("x", "x'"), body.clone()),
        ));
        if out.len() >= n + 16 {
            break;
        }
    }
    out.truncate(n.max(out.len().min(n + 16)));
    out
}

/// Plain powerset iteration for the hierarchy counts: returns the element
/// counts of the first `rank + 1` stages.
pub fn powerset_iteration_counts(rank: usize) -> Vec<usize> {
    let mut counts = vec![0usize];
    let mut current: usize = 0;
    for _ in 0..rank {
        let next = 1usize << current;
        counts.push(next);
        current = next;
    }
    counts
}
