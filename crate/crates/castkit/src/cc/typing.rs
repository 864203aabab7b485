use crate::cc::term::Term;
use crate::discipline::{Discipline, Mode};
use crate::error::TypeError;
use crate::gtlc::{is_prim_type, Side};
use crate::types::Type;

fn err<D: Discipline>(rule: &'static str, m: &Term<D>, detail: String) -> TypeError {
    TypeError { rule, detail, term: m.to_string() }
}

/// Typechecks a cast calculus term. Types must agree exactly; all gradual
/// slack is in the casts.
pub fn type_of<D: Discipline>(ctx: &[Type], m: &Term<D>, mode: Mode) -> Result<Type, TypeError> {
    let mut ctx = ctx.to_vec();
    check(&mut ctx, m, mode)
}

fn under<D: Discipline>(ctx: &mut Vec<Type>, a: &Type, m: &Term<D>, mode: Mode) -> Result<Type, TypeError> {
    ctx.push(a.clone());
    let r = check(ctx, m, mode);
    ctx.pop();
    r
}

fn check<D: Discipline>(ctx: &mut Vec<Type>, m: &Term<D>, mode: Mode) -> Result<Type, TypeError> {
    match m {
        Term::Const(k) => {
            let t = k.ty();
            if !is_prim_type(&t) {
                return Err(err("const", m, format!("{t} is not a primitive type")));
            }
            Ok(t)
        }
        Term::Var(i) => ctx
            .len()
            .checked_sub(i + 1)
            .map(|j| ctx[j].clone())
            .ok_or_else(|| err("var", m, format!("unbound index {i}"))),
        Term::Lam(a, body) => Ok(Type::fun(a.clone(), under(ctx, a, body, mode)?)),
        Term::App(l, n) => {
            let tl = check(ctx, l, mode)?;
            let tn = check(ctx, n, mode)?;
            match tl {
                Type::Fun(a, b) if *a == tn => Ok(*b),
                Type::Fun(a, _) => Err(err("app", m, format!("argument {tn} does not match domain {a}"))),
                other => Err(err("app", m, format!("{other} is not a function type"))),
            }
        }
        Term::If(c, t, e) => {
            let tc = check(ctx, c, mode)?;
            if tc != Type::bool() {
                return Err(err("if", m, format!("condition has type {tc}")));
            }
            let tt = check(ctx, t, mode)?;
            let te = check(ctx, e, mode)?;
            if tt != te {
                return Err(err("if", m, format!("branches have types {tt} and {te}")));
            }
            Ok(tt)
        }
        Term::Cons(a, b) => Ok(Type::pair(check(ctx, a, mode)?, check(ctx, b, mode)?)),
        Term::Proj(s, n) => match check(ctx, n, mode)? {
            Type::Pair(a, b) => Ok(if *s == Side::Fst { *a } else { *b }),
            other => Err(err("proj", m, format!("{other} is not a pair type"))),
        },
        Term::Inl(b, n) => Ok(Type::sum(check(ctx, n, mode)?, b.clone())),
        Term::Inr(a, n) => Ok(Type::sum(a.clone(), check(ctx, n, mode)?)),
        Term::CaseFn(l, f, g) => {
            if mode != Mode::CC {
                return Err(err("case", m, "function-style case outside the plain calculus".into()));
            }
            let (a, b) = match check(ctx, l, mode)? {
                Type::Sum(a, b) => (*a, *b),
                other => return Err(err("case", m, format!("{other} is not a sum type"))),
            };
            let tf = check(ctx, f, mode)?;
            let tg = check(ctx, g, mode)?;
            match (tf, tg) {
                (Type::Fun(fa, fc), Type::Fun(ga, gc)) if *fa == a && *ga == b && fc == gc => Ok(*fc),
                (tf, tg) => Err(err("case", m, format!("branches {tf} and {tg} do not fit {a} + {b}"))),
            }
        }
        Term::CaseBind(l, a, b, f, g) => {
            if mode != Mode::CCPrime {
                return Err(err("case", m, "binding case outside the primed calculus".into()));
            }
            let tl = check(ctx, l, mode)?;
            if tl != Type::sum(a.clone(), b.clone()) {
                return Err(err("case", m, format!("scrutinee {tl} does not match ({a} + {b})")));
            }
            let tf = under(ctx, a, f, mode)?;
            let tg = under(ctx, b, g, mode)?;
            if tf != tg {
                return Err(err("case", m, format!("branches have types {tf} and {tg}")));
            }
            Ok(tf)
        }
        Term::Cast(n, c) | Term::Wrap(n, c) => {
            let is_wrap = matches!(m, Term::Wrap(..));
            if is_wrap && mode != Mode::CCPrime {
                return Err(err("wrap", m, "wrap outside the primed calculus".into()));
            }
            if is_wrap && !D::is_inert(c) {
                return Err(err("wrap", m, format!("wrapped cast {c} is not inert")));
            }
            D::well_formed(c).map_err(|d| err("cast", m, d))?;
            let tn = check(ctx, n, mode)?;
            let src = D::source(c);
            if tn != src {
                return Err(err("cast", m, format!("subject has type {tn} but cast expects {src}")));
            }
            Ok(D::target(c))
        }
        Term::Blame(_, t) => Ok(t.clone()),
    }
}
