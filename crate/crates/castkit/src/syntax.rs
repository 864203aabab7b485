//! Parser for the surface syntax. Printing is `GTerm`'s `Display`.
//!
//! ```text
//! T ::= Int | Nat | Bool | Unit | Dyn | (-> T T) | (* T T) | (+ T T)
//! e ::= <nat> | <signed int> | true | false | unit | <prim> | x
//!     | (lam (x : T) e) | (e e)@l | (if e e e)@l | (cons e e)
//!     | (fst e)@l | (snd e)@l | (inl T e) | (inr T e)
//!     | (case e ((x : T) e) ((x : T) e))@l
//! ```

use thiserror::Error;

use crate::gtlc::{Const, GTerm, Prim, Side};
use crate::types::{Base, Label, Type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Colon,
    At,
    Atom(String),
}

fn tokenize(src: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                while chars.next_if(|&(_, c)| c != '\n').is_some() {}
            }
            '(' | ')' | ':' | '@' => {
                chars.next();
                let t = match ch {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    ':' => Tok::Colon,
                    _ => Tok::At,
                };
                out.push((i, t));
            }
            _ => {
                let mut s = String::new();
                while let Some((_, c)) = chars.next_if(|&(_, c)| !c.is_whitespace() && !"():@;".contains(c)) {
                    s.push(c);
                }
                out.push((i, Tok::Atom(s)));
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    scope: Vec<String>,
}

const KEYWORDS: [&str; 10] = ["lam", "if", "cons", "fst", "snd", "inl", "inr", "case", "true", "false"];

impl Parser {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.here(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        match self.toks.get(self.pos) {
            Some((_, t)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.fail("unexpected end of input"),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn atom(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Atom(_)) => match self.next()? {
                Tok::Atom(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => self.fail("expected an identifier"),
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        self.expect(Tok::At, "`@` and a blame label")?;
        let at = self.here();
        match self.atom()?.parse::<i64>() {
            Ok(n) if n > 0 => Ok(Label::new(n)),
            _ => Err(ParseError { pos: at, msg: "blame labels are positive integers".into() }),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        match self.next()? {
            Tok::Atom(s) => Ok(match s.as_str() {
                "Dyn" => Type::Unknown,
                "Int" => Type::int(),
                "Nat" => Type::nat(),
                "Bool" => Type::bool(),
                "Unit" => Type::unit(),
                "Bot" => Type::Base(Base::Bot),
                _ => {
                    self.pos -= 1;
                    return self.fail(format!("unknown type `{s}`"));
                }
            }),
            Tok::Open => {
                let op = self.atom()?;
                let a = self.ty()?;
                let b = self.ty()?;
                self.expect(Tok::Close, "`)`")?;
                match op.as_str() {
                    "->" => Ok(Type::fun(a, b)),
                    "*" => Ok(Type::pair(a, b)),
                    "+" => Ok(Type::sum(a, b)),
                    _ => self.fail(format!("unknown type constructor `{op}`")),
                }
            }
            _ => {
                self.pos -= 1;
                self.fail("expected a type")
            }
        }
    }

    /// `(x : T)`
    fn binder(&mut self) -> Result<(String, Type), ParseError> {
        self.expect(Tok::Open, "`(`")?;
        let x = self.atom()?;
        self.expect(Tok::Colon, "`:`")?;
        let t = self.ty()?;
        self.expect(Tok::Close, "`)`")?;
        Ok((x, t))
    }

    fn under(&mut self, x: String, f: impl FnOnce(&mut Self) -> Result<GTerm, ParseError>) -> Result<GTerm, ParseError> {
        self.scope.push(x);
        let r = f(self);
        self.scope.pop();
        r
    }

    fn leaf(&mut self, s: &str) -> Result<GTerm, ParseError> {
        if let Some(i) = self.scope.iter().rev().position(|x| x == s) {
            return Ok(GTerm::Var(i));
        }
        let k = match s {
            "true" => Const::Bool(true),
            "false" => Const::Bool(false),
            "unit" => Const::Unit,
            _ if s.starts_with(['+', '-']) => match s.parse::<i64>() {
                Ok(z) => Const::Int(z),
                Err(_) => return self.fail(format!("bad integer literal `{s}`")),
            },
            _ if s.starts_with(|c: char| c.is_ascii_digit()) => match s.parse::<u64>() {
                Ok(n) => Const::Nat(n),
                Err(_) => return self.fail(format!("bad natural literal `{s}`")),
            },
            _ => match (Prim::from_name(s), s.strip_prefix("add/")) {
                (Some(p), _) => Const::Prim(p),
                (None, Some(n)) => match n.parse::<u64>() {
                    Ok(n) => Const::Prim(Prim::AddN(n)),
                    Err(_) => return self.fail(format!("bad literal `{s}`")),
                },
                (None, None) => return self.fail(format!("unbound variable `{s}`")),
            },
        };
        Ok(GTerm::Const(k))
    }

    fn term(&mut self) -> Result<GTerm, ParseError> {
        let start = self.pos;
        match self.next()? {
            Tok::Atom(s) => {
                self.pos = start;
                let r = self.leaf(&s);
                self.pos = start + 1;
                r
            }
            Tok::Open => self.compound(),
            _ => {
                self.pos = start;
                self.fail("expected a term")
            }
        }
    }

    fn compound(&mut self) -> Result<GTerm, ParseError> {
        let kw = match self.peek() {
            Some(Tok::Atom(s)) if KEYWORDS.contains(&s.as_str()) && !self.scope.contains(s) => Some(s.clone()),
            _ => None,
        };
        let m = match kw.as_deref() {
            Some("lam") => {
                self.pos += 1;
                let (x, t) = self.binder()?;
                let body = self.under(x, Self::term)?;
                self.expect(Tok::Close, "`)`")?;
                GTerm::Lam(t, Box::new(body))
            }
            Some("if") => {
                self.pos += 1;
                let (c, t, e) = (self.term()?, self.term()?, self.term()?);
                self.expect(Tok::Close, "`)`")?;
                GTerm::If(Box::new(c), Box::new(t), Box::new(e), self.label()?)
            }
            Some("cons") => {
                self.pos += 1;
                let (a, b) = (self.term()?, self.term()?);
                self.expect(Tok::Close, "`)`")?;
                GTerm::cons(a, b)
            }
            Some(kw @ ("fst" | "snd")) => {
                let side = if kw == "fst" { Side::Fst } else { Side::Snd };
                self.pos += 1;
                let m = self.term()?;
                self.expect(Tok::Close, "`)`")?;
                GTerm::Proj(side, Box::new(m), self.label()?)
            }
            Some(kw @ ("inl" | "inr")) => {
                let left = kw == "inl";
                self.pos += 1;
                let t = self.ty()?;
                let m = Box::new(self.term()?);
                self.expect(Tok::Close, "`)`")?;
                if left {
                    GTerm::Inl(t, m)
                } else {
                    GTerm::Inr(t, m)
                }
            }
            Some("case") => {
                self.pos += 1;
                let s = self.term()?;
                self.expect(Tok::Open, "`(`")?;
                let (x, b) = self.binder()?;
                let m = self.under(x, Self::term)?;
                self.expect(Tok::Close, "`)`")?;
                self.expect(Tok::Open, "`(`")?;
                let (y, c) = self.binder()?;
                let n = self.under(y, Self::term)?;
                self.expect(Tok::Close, "`)`")?;
                self.expect(Tok::Close, "`)`")?;
                GTerm::Case(Box::new(s), b, c, Box::new(m), Box::new(n), self.label()?)
            }
            _ => {
                let f = self.term()?;
                let a = self.term()?;
                self.expect(Tok::Close, "`)`")?;
                GTerm::App(Box::new(f), Box::new(a), self.label()?)
            }
        };
        Ok(m)
    }
}

/// Parses a closed program.
pub fn parse_program(src: &str) -> Result<GTerm, ParseError> {
    let mut p = Parser { toks: tokenize(src), pos: 0, end: src.len(), scope: Vec::new() };
    let m = p.term()?;
    if p.pos < p.toks.len() {
        return p.fail("trailing input after the program");
    }
    Ok(m)
}

/// Parses a type.
pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let mut p = Parser { toks: tokenize(src), pos: 0, end: src.len(), scope: Vec::new() };
    let t = p.ty()?;
    if p.pos < p.toks.len() {
        return p.fail("trailing input after the type");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Dyn;

    #[test]
    fn parses_application_of_identity() {
        let m = parse_program("((lam (x : Dyn) x) 4)@1").unwrap();
        assert_eq!(m, GTerm::app(GTerm::lam(Dyn, GTerm::Var(0)), GTerm::nat(4), 1));
    }

    #[test]
    fn parses_every_form() {
        let src = "(case (inl Bool (cons -3 (fst (cons +2 unit))@4)) \
                   ((p : (* Int Int)) (if true (snd p)@5 (neg +1)@6)@7) ((b : Bool) (neg 0)@8))@9";
        let m = parse_program(src).unwrap();
        assert_eq!(parse_program(&m.to_string()).unwrap(), m);
        let GTerm::Case(_, b1, c1, ..) = &m else { panic!("{m}") };
        assert_eq!(*b1, Type::pair(Type::int(), Type::int()));
        assert_eq!(*c1, Type::bool());
    }

    #[test]
    fn binders_resolve_to_nearest() {
        let m = parse_program("(lam (x : Nat) (lam (y : Nat) (lam (x : Bool) y)))").unwrap();
        assert_eq!(m, GTerm::lam(Type::nat(), GTerm::lam(Type::nat(), GTerm::lam(Type::bool(), GTerm::Var(1)))));
    }

    #[test]
    fn reports_errors() {
        assert!(parse_program("(x 1)@1").unwrap_err().msg.contains("unbound"));
        assert!(parse_program("((lam (x : Nat) x) 1)@0").is_err());
        assert!(parse_program("((lam (x : Nat) x) 1)").is_err());
        assert!(parse_program("(lam (x : Foo) x)").is_err());
        assert!(parse_program("1 2").is_err());
        assert_eq!(parse_type("(-> Dyn (* Nat Bool))").unwrap(), Type::fun(Dyn, Type::pair(Type::nat(), Type::bool())));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(parse_program("; a constant\n7").unwrap(), GTerm::nat(7));
    }
}
