//! Abstract syntax for multi-sorted first-order formulas with bounded
//! quantifiers and set-theoretic atoms. Bounded quantifiers are primitive
//! nodes so the bounded-separation check can inspect them syntactically;
//! evaluation desugars them through the membership relation.

use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    /// `s in t`, the set-theoretic membership atom.
    Mem(Term, Term),
    Rel(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    /// `forall x : Sort. body`
    Forall(String, String, Box<Formula>),
    Exists(String, String, Box<Formula>),
    /// `forall x in a. body`, primitive bounded quantifier.
    ForallIn(String, Term, Box<Formula>),
    ExistsIn(String, Term, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    /// `a <-> b` as the conjunction of both implications.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn forall(x: impl Into<String>, sort: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), sort.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, sort: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), sort.into(), Box::new(body))
    }

    pub fn forall_in(x: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::ForallIn(x.into(), bound, Box::new(body))
    }

    pub fn exists_in(x: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::ExistsIn(x.into(), bound, Box::new(body))
    }

    pub fn mem(x: impl Into<String>, y: impl Into<String>) -> Formula {
        Formula::Mem(Term::var(x), Term::var(y))
    }

    pub fn eq(x: impl Into<String>, y: impl Into<String>) -> Formula {
        Formula::Eq(Term::var(x), Term::var(y))
    }

    /// The biquantifier `B(x in a, y in b) φ`: both directions of the
    /// back-and-forth condition.
    pub fn biquant(x: &str, a: &str, y: &str, b: &str, phi: Formula) -> Formula {
        Formula::and(
            Formula::forall_in(x, Term::var(a), Formula::exists_in(y, Term::var(b), phi.clone())),
            Formula::forall_in(y, Term::var(b), Formula::exists_in(x, Term::var(a), phi)),
        )
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut Vec::new());
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>, bound: &mut Vec<String>) {
        let term = |t: &Term, out: &mut BTreeSet<String>, bound: &Vec<String>| {
            if !bound.contains(&t.name().to_string()) {
                out.insert(t.name().to_string());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(s, t) | Formula::Mem(s, t) => {
                term(s, out, bound);
                term(t, out, bound);
            }
            Formula::Rel(_, args) => {
                for t in args {
                    term(t, out, bound);
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(out, bound);
                b.collect_free(out, bound);
            }
            Formula::Not(a) => a.collect_free(out, bound),
            Formula::Forall(x, _, body) | Formula::Exists(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(out, bound);
                bound.pop();
            }
            Formula::ForallIn(x, a, body) | Formula::ExistsIn(x, a, body) => {
                term(a, out, bound);
                bound.push(x.clone());
                body.collect_free(out, bound);
                bound.pop();
            }
        }
    }

    /// Bounded formula: every quantifier it contains is a bounded one.
    pub fn is_bounded(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Mem(..) | Formula::Rel(..) => {
                true
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_bounded() && b.is_bounded()
            }
            Formula::Not(a) => a.is_bounded(),
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::ForallIn(_, _, body) | Formula::ExistsIn(_, _, body) => body.is_bounded(),
        }
    }

    /// Capture-avoiding substitution of the term `t` for the variable `x`.
    pub fn subst(&self, x: &str, t: &Term) -> Formula {
        let sub_term = |s: &Term| -> Term {
            if s.name() == x {
                t.clone()
            } else {
                s.clone()
            }
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Eq(a, b) => Formula::Eq(sub_term(a), sub_term(b)),
            Formula::Mem(a, b) => Formula::Mem(sub_term(a), sub_term(b)),
            Formula::Rel(r, args) => Formula::Rel(r.clone(), args.iter().map(sub_term).collect()),
            Formula::And(a, b) => Formula::and(a.subst(x, t), b.subst(x, t)),
            Formula::Or(a, b) => Formula::or(a.subst(x, t), b.subst(x, t)),
            Formula::Implies(a, b) => Formula::implies(a.subst(x, t), b.subst(x, t)),
            Formula::Not(a) => Formula::not(a.subst(x, t)),
            Formula::Forall(y, sort, body) => {
                if y == x {
                    return self.clone();
                }
                let (y2, body2) = rename_if_captured(y, body, x, t);
                Formula::Forall(y2, sort.clone(), Box::new(body2.subst(x, t)))
            }
            Formula::Exists(y, sort, body) => {
                if y == x {
                    return self.clone();
                }
                let (y2, body2) = rename_if_captured(y, body, x, t);
                Formula::Exists(y2, sort.clone(), Box::new(body2.subst(x, t)))
            }
            Formula::ForallIn(y, a, body) => {
                let a2 = sub_term(a);
                if y == x {
                    return Formula::ForallIn(y.clone(), a2, body.clone());
                }
                let (y2, body2) = rename_if_captured(y, body, x, t);
                Formula::ForallIn(y2, a2, Box::new(body2.subst(x, t)))
            }
            Formula::ExistsIn(y, a, body) => {
                let a2 = sub_term(a);
                if y == x {
                    return Formula::ExistsIn(y.clone(), a2, body.clone());
                }
                let (y2, body2) = rename_if_captured(y, body, x, t);
                Formula::ExistsIn(y2, a2, Box::new(body2.subst(x, t)))
            }
        }
    }
}

/// Renames the binder when the substituted term would be captured.
fn rename_if_captured(y: &str, body: &Formula, x: &str, t: &Term) -> (String, Formula) {
    if t.name() != y {
        return (y.to_string(), body.clone());
    }
    let mut fresh = format!("{}'", y);
    let fv = body.free_vars();
    while fv.contains(&fresh) || fresh == x {
        fresh.push('\'');
    }
    let renamed = body.subst(y, &Term::var(&fresh));
    (fresh, renamed)
}

/// Precedence-aware printer producing the published concrete syntax.
impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt_prec(self, 0, f)
    }
}

fn fmt_term(t: &Term, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    f.write_str(t.name())
}

fn fmt_prec(phi: &Formula, prec: u8, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    let own = own_prec(phi);
    let need_parens = own < prec;
    if need_parens {
        f.write_str("(")?;
    }
    match phi {
        Formula::True => f.write_str("true")?,
        Formula::False => f.write_str("false")?,
        Formula::Eq(s, t) => {
            fmt_term(s, f)?;
            f.write_str(" = ")?;
            fmt_term(t, f)?;
        }
        Formula::Mem(s, t) => {
            fmt_term(s, f)?;
            f.write_str(" in ")?;
            fmt_term(t, f)?;
        }
        Formula::Rel(r, args) => {
            f.write_str(r)?;
            f.write_str("(")?;
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                fmt_term(t, f)?;
            }
            f.write_str(")")?;
        }
        Formula::And(a, b) => {
            fmt_prec(a, 3, f)?;
            f.write_str(" /\\ ")?;
            fmt_prec(b, 4, f)?;
        }
        Formula::Or(a, b) => {
            fmt_prec(a, 2, f)?;
            f.write_str(" \\/ ")?;
            fmt_prec(b, 3, f)?;
        }
        Formula::Implies(a, b) => {
            fmt_prec(a, 2, f)?;
            f.write_str(" -> ")?;
            fmt_prec(b, 1, f)?;
        }
        Formula::Not(a) => {
            f.write_str("~")?;
            fmt_prec(a, 4, f)?;
        }
        Formula::Forall(x, sort, body) => {
            write!(f, "forall {} : {}. ", x, sort)?;
            fmt_prec(body, 0, f)?;
        }
        Formula::Exists(x, sort, body) => {
            write!(f, "exists {} : {}. ", x, sort)?;
            fmt_prec(body, 0, f)?;
        }
        Formula::ForallIn(x, a, body) => {
            write!(f, "forall {} in {}. ", x, a.name())?;
            fmt_prec(body, 0, f)?;
        }
        Formula::ExistsIn(x, a, body) => {
            write!(f, "exists {} in {}. ", x, a.name())?;
            fmt_prec(body, 0, f)?;
        }
    }
    if need_parens {
        f.write_str(")")?;
    }
    Ok(())
}

fn own_prec(phi: &Formula) -> u8 {
    match phi {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Forall(..) | Formula::Exists(..) | Formula::ForallIn(..) | Formula::ExistsIn(..) => 0,
        _ => 5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_respect_binders() {
        let phi = Formula::forall("x", "V", Formula::mem("x", "a"));
        assert_eq!(phi.free_vars().into_iter().collect::<Vec<_>>(), vec!["a".to_string()]);
    }

    #[test]
    fn bounded_detection() {
        let bounded = Formula::forall_in("x", Term::var("a"), Formula::mem("x", "b"));
        assert!(bounded.is_bounded());
        let unbounded = Formula::forall("x", "V", Formula::mem("x", "b"));
        assert!(!unbounded.is_bounded());
    }

    #[test]
    fn subst_avoids_capture() {
        // (forall y. x in y)[y/x] must rename the binder
        let phi = Formula::forall("y", "V", Formula::mem("x", "y"));
        let got = phi.subst("x", &Term::var("y"));
        if let Formula::Forall(b, _, body) = &got {
            assert_ne!(b, "y");
            assert_eq!(**body, Formula::Mem(Term::var("y"), Term::var(b)));
        } else {
            panic!("expected forall");
        }
    }
}
