//! Exhaustive enumeration of small well-typed source terms and of their
//! less precise variants.

use std::collections::HashMap;

use castkit::gtlc::{typecheck, Const, GTerm, Side};
use castkit::types::{Dyn, Label, Type};

/// Which constructors and leaves the enumeration may use.
#[derive(Clone, Debug)]
pub struct Vocabulary {
    pub consts: Vec<Const>,
    pub annotations: Vec<Type>,
    pub conditionals: bool,
    pub pairs: bool,
    pub sums: bool,
}

impl Vocabulary {
    /// Small enough to enumerate to depth 4: one natural, one boolean and
    /// one primitive, with annotations `Nat`, `Bool`, `?` and `? → ?`.
    pub fn small() -> Vocabulary {
        use castkit::gtlc::Prim;
        Vocabulary {
            consts: vec![Const::Nat(1), Const::Bool(true), Const::Prim(Prim::Inc)],
            annotations: vec![Type::nat(), Type::bool(), Dyn, Type::fun(Dyn, Dyn)],
            conditionals: false,
            pairs: false,
            sums: false,
        }
    }
}

/// Enumerates well-typed terms by depth, memoized per context.
pub struct TermEnumerator {
    vocab: Vocabulary,
    memo: HashMap<(Vec<Type>, usize), Vec<(GTerm, Type)>>,
}

const L: i64 = 1;

impl TermEnumerator {
    pub fn new(vocab: Vocabulary) -> TermEnumerator {
        TermEnumerator { vocab, memo: HashMap::new() }
    }

    /// All well-typed terms in `ctx` of depth at most `depth`, with their
    /// types. Every label is 1; see [`relabel`].
    pub fn terms(&mut self, ctx: &[Type], depth: usize) -> Vec<(GTerm, Type)> {
        let key = (ctx.to_vec(), depth);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if depth >= 1 {
            for k in &self.vocab.consts {
                out.push((GTerm::Const(*k), k.ty()));
            }
            for i in 0..ctx.len() {
                out.push((GTerm::Var(i), ctx[ctx.len() - 1 - i].clone()));
            }
        }
        if depth >= 2 {
            let sub = self.terms(ctx, depth - 1);
            let keep = |m: GTerm, out: &mut Vec<(GTerm, Type)>| {
                if let Ok(t) = typecheck(ctx, &m) {
                    out.push((m, t));
                }
            };
            for a in self.vocab.annotations.clone() {
                let mut inner = ctx.to_vec();
                inner.push(a.clone());
                for (b, tb) in self.terms(&inner, depth - 1) {
                    out.push((GTerm::lam(a.clone(), b), Type::fun(a.clone(), tb)));
                }
            }
            for (f, _) in &sub {
                for (x, _) in &sub {
                    keep(GTerm::app(f.clone(), x.clone(), L), &mut out);
                }
            }
            if self.vocab.pairs {
                for (a, _) in &sub {
                    for (b, _) in &sub {
                        keep(GTerm::cons(a.clone(), b.clone()), &mut out);
                    }
                    keep(GTerm::Proj(Side::Fst, Box::new(a.clone()), Label::new(L)), &mut out);
                    keep(GTerm::Proj(Side::Snd, Box::new(a.clone()), Label::new(L)), &mut out);
                }
            }
            if self.vocab.sums {
                for (a, _) in &sub {
                    for t in self.vocab.annotations.clone() {
                        keep(GTerm::Inl(t.clone(), Box::new(a.clone())), &mut out);
                        keep(GTerm::Inr(t, Box::new(a.clone())), &mut out);
                    }
                }
            }
            if self.vocab.conditionals {
                for (c, _) in &sub {
                    for (t, _) in &sub {
                        for (e, _) in &sub {
                            keep(GTerm::If(Box::new(c.clone()), Box::new(t.clone()), Box::new(e.clone()), Label::new(L)), &mut out);
                        }
                    }
                }
            }
            // Deeper terms repeat the shallower ones; keep each once.
            let mut seen = std::collections::HashSet::new();
            out.retain(|(m, _)| seen.insert(m.clone()));
        }
        self.memo.insert(key, out.clone());
        out
    }
}

/// Renumbers blame labels `1, 2, ...` in preorder.
pub fn relabel(m: &GTerm) -> GTerm {
    fn go(m: &GTerm, next: &mut i64) -> GTerm {
        let mut fresh = || {
            *next += 1;
            Label::new(*next)
        };
        match m {
            GTerm::Const(_) | GTerm::Var(_) => m.clone(),
            GTerm::Lam(a, b) => GTerm::Lam(a.clone(), Box::new(go(b, next))),
            GTerm::App(a, b, _) => {
                let l = fresh();
                GTerm::App(Box::new(go(a, next)), Box::new(go(b, next)), l)
            }
            GTerm::If(a, b, c, _) => {
                let l = fresh();
                GTerm::If(Box::new(go(a, next)), Box::new(go(b, next)), Box::new(go(c, next)), l)
            }
            GTerm::Cons(a, b) => GTerm::Cons(Box::new(go(a, next)), Box::new(go(b, next))),
            GTerm::Proj(s, a, _) => {
                let l = fresh();
                GTerm::Proj(*s, Box::new(go(a, next)), l)
            }
            GTerm::Inl(t, a) => GTerm::Inl(t.clone(), Box::new(go(a, next))),
            GTerm::Inr(t, a) => GTerm::Inr(t.clone(), Box::new(go(a, next))),
            GTerm::Case(s, b, c, x, y, _) => {
                let l = fresh();
                GTerm::Case(
                    Box::new(go(s, next)),
                    b.clone(),
                    c.clone(),
                    Box::new(go(x, next)),
                    Box::new(go(y, next)),
                    l,
                )
            }
        }
    }
    go(m, &mut 0)
}

/// Blame labels of `m` in preorder, without duplicates.
pub fn labels(m: &GTerm) -> Vec<Label> {
    fn go(m: &GTerm, out: &mut Vec<Label>) {
        let own = match m {
            GTerm::App(_, _, l) | GTerm::If(_, _, _, l) | GTerm::Proj(_, _, l) | GTerm::Case(.., l) => Some(*l),
            _ => None,
        };
        if let Some(l) = own.filter(|l| !out.contains(l)) {
            out.push(l);
        }
        for c in m.children() {
            go(c, out);
        }
    }
    let mut out = Vec::new();
    go(m, &mut out);
    out
}

/// Every type at most as precise as `t`, `t` included.
pub fn less_precise(t: &Type) -> Vec<Type> {
    let mut out = vec![Dyn];
    match t.split() {
        None if !t.is_dyn() => out.push(t.clone()),
        None => {}
        Some((h, a, b)) => {
            let (la, lb) = (less_precise(a), less_precise(b));
            for x in &la {
                for y in &lb {
                    out.push(Type::compound(h, x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

/// Every term obtained from `m` by making annotations less precise, `m`
/// included.
pub fn loosenings(m: &GTerm) -> Vec<GTerm> {
    let choices: Vec<Vec<Type>> = m.annotations().into_iter().map(less_precise).collect();
    let mut combos: Vec<Vec<Type>> = vec![Vec::new()];
    for cs in &choices {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                cs.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    combos.into_iter().map(|anns| m.with_annotations(&mut anns.into_iter())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use castkit::gtlc::gterm_precision;

    #[test]
    fn less_precise_counts() {
        assert_eq!(less_precise(&Dyn), vec![Dyn]);
        assert_eq!(less_precise(&Type::nat()).len(), 2);
        // ? plus {?, Nat} x {?, Bool}
        assert_eq!(less_precise(&Type::fun(Type::nat(), Type::bool())).len(), 5);
    }

    #[test]
    fn enumerated_terms_typecheck_and_loosen() {
        let mut e = TermEnumerator::new(Vocabulary::small());
        let terms = e.terms(&[], 3);
        assert!(terms.len() > 10);
        for (m, t) in &terms {
            assert_eq!(typecheck(&[], m).as_ref(), Ok(t));
            for m2 in loosenings(m) {
                assert!(gterm_precision(&m2, m));
            }
        }
    }

    #[test]
    fn relabel_numbers_in_preorder() {
        let m = GTerm::app(GTerm::app(GTerm::nat(1), GTerm::nat(1), 1), GTerm::nat(1), 1);
        assert_eq!(relabel(&m).to_string(), "((1 1)@2 1)@1");
    }
}
