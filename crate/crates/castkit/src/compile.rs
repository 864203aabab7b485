//! Cast insertion from the gradually typed source language.

use crate::cc::term::Term;
use crate::discipline::{Discipline, Mode};
use crate::error::TypeError;
use crate::gtlc::{typecheck, GTerm};
use crate::types::{join, match_head, consistent, Head, Label, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileOutput<D: Discipline> {
    pub term: Term<D>,
    pub ty: Type,
    pub mode: Mode,
}

/// Compiles a well-typed source term. Ill-typed input is reported as the
/// typechecker's error.
pub fn compile<D: Discipline>(ctx: &[Type], m: &GTerm, mode: Mode) -> Result<CompileOutput<D>, TypeError> {
    typecheck(ctx, m)?;
    let mut ctx = ctx.to_vec();
    let (term, ty) = go::<D>(&mut ctx, m, mode);
    Ok(CompileOutput { term, ty, mode })
}

/// Compiles a closed program.
pub fn compile_closed<D: Discipline>(m: &GTerm, mode: Mode) -> Result<CompileOutput<D>, TypeError> {
    compile(&[], m, mode)
}

fn cast<D: Discipline>(m: Term<D>, a: &Type, b: &Type, l: Label) -> Term<D> {
    Term::cast(m, D::make_cast(a, b, l))
}

fn under<D: Discipline>(ctx: &mut Vec<Type>, a: &Type, m: &GTerm, mode: Mode) -> (Term<D>, Type) {
    ctx.push(a.clone());
    let r = go(ctx, m, mode);
    ctx.pop();
    r
}

fn go<D: Discipline>(ctx: &mut Vec<Type>, m: &GTerm, mode: Mode) -> (Term<D>, Type) {
    const WELL_TYPED: &str = "compile: input was typechecked";
    match m {
        GTerm::Const(k) => (Term::Const(*k), k.ty()),
        GTerm::Var(i) => (Term::Var(*i), ctx[ctx.len() - 1 - i].clone()),
        GTerm::Lam(a, body) => {
            let (b, tb) = under::<D>(ctx, a, body, mode);
            (Term::lam(a.clone(), b), Type::fun(a.clone(), tb))
        }
        GTerm::App(l, n, lbl) => {
            let (cl, a) = go::<D>(ctx, l, mode);
            let (cn, b) = go::<D>(ctx, n, mode);
            let (a1, a2) = match_head(&a, Head::Fun).expect(WELL_TYPED);
            let f = cast(cl, &a, &Type::fun(a1.clone(), a2.clone()), *lbl);
            (Term::app(f, cast(cn, &b, &a1, *lbl)), a2)
        }
        GTerm::If(c, t, e, lbl) => {
            let (cc, a) = go::<D>(ctx, c, mode);
            let (ct, b1) = go::<D>(ctx, t, mode);
            let (ce, b2) = go::<D>(ctx, e, mode);
            let j = join(&consistent(&b1, &b2).expect(WELL_TYPED));
            let term = Term::If(
                Box::new(cast(cc, &a, &Type::bool(), *lbl)),
                Box::new(cast(ct, &b1, &j, *lbl)),
                Box::new(cast(ce, &b2, &j, *lbl)),
            );
            (term, j)
        }
        GTerm::Cons(a, b) => {
            let (ca, ta) = go::<D>(ctx, a, mode);
            let (cb, tb) = go::<D>(ctx, b, mode);
            (Term::cons(ca, cb), Type::pair(ta, tb))
        }
        GTerm::Proj(s, n, lbl) => {
            let (cn, a) = go::<D>(ctx, n, mode);
            let (a1, a2) = match_head(&a, Head::Pair).expect(WELL_TYPED);
            let target = Type::pair(a1.clone(), a2.clone());
            let ty = match s {
                crate::gtlc::Side::Fst => a1,
                crate::gtlc::Side::Snd => a2,
            };
            (Term::proj(*s, cast(cn, &a, &target, *lbl)), ty)
        }
        GTerm::Inl(b, n) => {
            let (cn, a) = go::<D>(ctx, n, mode);
            (Term::inl(b.clone(), cn), Type::sum(a, b.clone()))
        }
        GTerm::Inr(a, n) => {
            let (cn, b) = go::<D>(ctx, n, mode);
            (Term::inr(a.clone(), cn), Type::sum(a.clone(), b))
        }
        GTerm::Case(l, b1, c1, x, y, lbl) => {
            let (cl, a) = go::<D>(ctx, l, mode);
            let (cx, b2) = under::<D>(ctx, b1, x, mode);
            let (cy, c2) = under::<D>(ctx, c1, y, mode);
            let j = join(&consistent(&b2, &c2).expect(WELL_TYPED));
            let scrut = cast(cl, &a, &Type::sum(b1.clone(), c1.clone()), *lbl);
            let left = cast(cx, &b2, &j, *lbl);
            let right = cast(cy, &c2, &j, *lbl);
            let term = match mode {
                Mode::CC => Term::CaseFn(
                    Box::new(scrut),
                    Box::new(Term::lam(b1.clone(), left)),
                    Box::new(Term::lam(c1.clone(), right)),
                ),
                Mode::CCPrime => {
                    Term::CaseBind(Box::new(scrut), b1.clone(), c1.clone(), Box::new(left), Box::new(right))
                }
            };
            (term, j)
        }
    }
}
