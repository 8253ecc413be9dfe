//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*            (desugared to both implications)
//! imp     := or ("->" imp)?              (right associative)
//! or      := and ("\/" and)*
//! and     := unary ("/\" unary)*
//! unary   := "~" unary | quant | atom
//! quant   := ("forall" | "exists") ident (":" ident | "in" term) "." formula
//!          | "B" "(" ident "in" term "," ident "in" term ")" formula
//! atom    := "true" | "false" | term "=" term | term "in" term
//!          | ident "(" term ("," term)* ")" | "(" formula ")"
//! term    := ident
//! ```
//!
//! `forall`, `exists`, `in`, `B`, `true` and `false` are reserved words.
//! Errors carry line and column positions.

use crate::error::{Error, Result};

use super::ast::{Formula, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    In,
    BiQuant,
    True,
    False,
    LParen,
    RParen,
    Dot,
    Comma,
    Colon,
    Eq,
    And,
    Or,
    Arrow,
    Iff,
    Tilde,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: l, col: co });
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c2) = chars.peek() {
                    if c2 == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' => {
                chars.next();
                col += 1;
                push(Tok::LParen);
            }
            ')' => {
                chars.next();
                col += 1;
                push(Tok::RParen);
            }
            '.' => {
                chars.next();
                col += 1;
                push(Tok::Dot);
            }
            ',' => {
                chars.next();
                col += 1;
                push(Tok::Comma);
            }
            ':' => {
                chars.next();
                col += 1;
                push(Tok::Colon);
            }
            '=' => {
                chars.next();
                col += 1;
                push(Tok::Eq);
            }
            '~' => {
                chars.next();
                col += 1;
                push(Tok::Tilde);
            }
            '/' => {
                chars.next();
                col += 1;
                match chars.peek() {
                    Some('\\') => {
                        chars.next();
                        col += 1;
                        push(Tok::And);
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: l,
                            col: co,
                            msg: "expected `/\\`".into(),
                        })
                    }
                }
            }
            '\\' => {
                chars.next();
                col += 1;
                match chars.peek() {
                    Some('/') => {
                        chars.next();
                        col += 1;
                        push(Tok::Or);
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: l,
                            col: co,
                            msg: "expected `\\/`".into(),
                        })
                    }
                }
            }
            '-' => {
                chars.next();
                col += 1;
                match chars.peek() {
                    Some('>') => {
                        chars.next();
                        col += 1;
                        push(Tok::Arrow);
                    }
                    _ => {
                        return Err(Error::Parse { line: l, col: co, msg: "expected `->`".into() })
                    }
                }
            }
            '<' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'-') {
                    chars.next();
                    col += 1;
                    if chars.peek() == Some(&'>') {
                        chars.next();
                        col += 1;
                        push(Tok::Iff);
                        continue;
                    }
                }
                return Err(Error::Parse { line: l, col: co, msg: "expected `<->`".into() });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' || c2 == '\'' {
                        name.push(c2);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "in" => Tok::In,
                    "B" => Tok::BiQuant,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(name),
                };
                push(tok);
            }
            other => {
                return Err(Error::Parse {
                    line: l,
                    col: co,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {}", what)))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(_)) => match self.bump() {
                Some(Tok::Ident(n)) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.err(format!("expected {}", what))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.peek() == Some(&Tok::Iff) {
            self.pos += 1;
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quantifier(),
            Some(Tok::BiQuant) => self.biquant(),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula> {
        let is_forall = matches!(self.bump(), Some(Tok::Forall));
        let var = self.ident("a bound variable")?;
        match self.bump() {
            Some(Tok::Colon) => {
                let sort = self.ident("a sort name")?;
                self.expect(Tok::Dot, "`.` after the binder")?;
                let body = self.formula()?;
                Ok(if is_forall {
                    Formula::forall(var, sort, body)
                } else {
                    Formula::exists(var, sort, body)
                })
            }
            Some(Tok::In) => {
                let bound = Term::var(self.ident("a bounding term")?);
                self.expect(Tok::Dot, "`.` after the binder")?;
                let body = self.formula()?;
                Ok(if is_forall {
                    Formula::forall_in(var, bound, body)
                } else {
                    Formula::exists_in(var, bound, body)
                })
            }
            _ => Err(self.err("expected `:` or `in` in a quantifier binder")),
        }
    }

    fn biquant(&mut self) -> Result<Formula> {
        self.pos += 1; // B
        self.expect(Tok::LParen, "`(` after B")?;
        let x = self.ident("a bound variable")?;
        self.expect(Tok::In, "`in`")?;
        let a = self.ident("a bounding term")?;
        self.expect(Tok::Comma, "`,`")?;
        let y = self.ident("a bound variable")?;
        self.expect(Tok::In, "`in`")?;
        let b = self.ident("a bounding term")?;
        self.expect(Tok::RParen, "`)`")?;
        let body = self.formula()?;
        Ok(Formula::biquant(&x, &a, &y, &b, body))
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.pos += 1;
                        let mut args = vec![Term::var(self.ident("an argument")?)];
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            args.push(Term::var(self.ident("an argument")?));
                        }
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Formula::Rel(name, args))
                    }
                    Some(Tok::Eq) => {
                        self.pos += 1;
                        let rhs = self.ident("a term")?;
                        Ok(Formula::Eq(Term::var(name), Term::var(rhs)))
                    }
                    Some(Tok::In) => {
                        self.pos += 1;
                        let rhs = self.ident("a term")?;
                        Ok(Formula::Mem(Term::var(name), Term::var(rhs)))
                    }
                    _ => Err(self.err("expected `=`, `in` or `(` after an identifier")),
                }
            }
            _ => Err(self.err("expected a formula")),
        }
    }
}

/// Parses a formula from the published concrete syntax.
pub fn parse(input: &str) -> Result<Formula> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let phi = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after the formula"));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bounded_quantifiers() {
        let phi = parse("forall x in a. exists y in b. R(x,y)").unwrap();
        assert_eq!(
            phi,
            Formula::forall_in(
                "x",
                Term::var("a"),
                Formula::exists_in(
                    "y",
                    Term::var("b"),
                    Formula::Rel("R".into(), vec![Term::var("x"), Term::var("y")])
                )
            )
        );
    }

    #[test]
    fn biquantifier_expands() {
        let phi = parse("B(x in a, y in b) R(x,y)").unwrap();
        let body = Formula::Rel("R".into(), vec![Term::var("x"), Term::var("y")]);
        assert_eq!(phi, Formula::biquant("x", "a", "y", "b", body));
    }

    #[test]
    fn unbalanced_paren_reports_position() {
        let err = parse("(x = y").unwrap_err();
        match err {
            crate::error::Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col >= 6);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let samples = [
            "forall x : V. x in a -> x in b",
            "~(x = y) /\\ (a in b \\/ b in a)",
            "exists x in a. forall y : V. R(x, y) -> y = x",
            "x = y -> y = x -> x = y",
        ];
        for s in samples {
            let phi = parse(s).unwrap();
            let printed = phi.to_string();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(phi, reparsed, "roundtrip failed for {}", s);
        }
    }
}
