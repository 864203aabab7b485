//! Seeded, type-directed generation of well-typed source programs.
//!
//! A term generated for goal type `T` has a type at most as precise as
//! `T`, so every enclosing rule still typechecks. After generation each
//! annotation is loosened towards `?`, which keeps the program well typed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use castkit::gtlc::{sample_const, typecheck, Const, GTerm, Prim, Side};
use castkit::types::{precision, Base, Dyn, Head, Label, Type};

use crate::terms::less_precise;

pub const BASES: [Base; 4] = [Base::Nat, Base::Int, Base::Bool, Base::Unit];

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    /// Bound on `GTerm::depth`.
    pub max_depth: usize,
    /// Bound on the depth of chosen types.
    pub type_depth: usize,
    /// Probability that an annotation is replaced by `?`. It also raises
    /// the chance of routing a subterm through `?`.
    pub dyn_bias: f64,
    /// Type of the generated program; random when `None`.
    pub goal: Option<Type>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_depth: 6, type_depth: 2, dyn_bias: 0.5, goal: None }
    }
}

struct Gen {
    rng: ChaCha8Rng,
    cfg: GenConfig,
    label: i64,
}

impl Gen {
    fn fresh(&mut self) -> Label {
        self.label += 1;
        Label::new(self.label)
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p.clamp(0.0, 1.0))
    }

    fn base(&mut self) -> Type {
        Type::Base(*BASES.choose(&mut self.rng).unwrap())
    }

    /// A fully static type of depth at most `depth`.
    fn ty(&mut self, depth: usize) -> Type {
        if depth <= 1 || self.chance(0.55) {
            return self.base();
        }
        let h = *Head::ALL.choose(&mut self.rng).unwrap();
        Type::compound(h, self.ty(depth - 1), self.ty(depth - 1))
    }

    fn constant(&mut self, b: Base) -> Option<GTerm> {
        let seed = self.rng.gen::<u64>();
        sample_const(b, seed).map(GTerm::Const)
    }

    fn leaves(&mut self, ctx: &[Type], goal: &Type) -> Vec<GTerm> {
        let mut out = Vec::new();
        match goal {
            Type::Base(b) => out.extend(self.constant(*b)),
            _ => {}
        }
        for (i, t) in ctx.iter().rev().enumerate() {
            if precision(t, goal) {
                out.push(GTerm::Var(i));
            }
        }
        for p in Prim::NAMED {
            if precision(&p.ty(), goal) {
                out.push(GTerm::prim(p));
            }
        }
        out
    }

    /// A term whose type is at most as precise as `goal`, of depth at
    /// most `budget`. Goals never contain `?`.
    fn term(&mut self, ctx: &mut Vec<Type>, goal: &Type, budget: usize) -> Option<GTerm> {
        let leaves = self.leaves(ctx, goal);
        let leaf_odds = if budget <= 1 { 1.0 } else { 1.0 / budget as f64 };
        if !leaves.is_empty() && self.chance(leaf_odds) {
            return leaves.choose(&mut self.rng).cloned();
        }
        if budget <= 1 {
            return None;
        }
        for _ in 0..4 {
            let pick = self.rng.gen_range(0..100);
            let r = match pick {
                0..=29 => self.intro(ctx, goal, budget),
                30..=49 => self.app(ctx, goal, budget),
                50..=59 => self.cond(ctx, goal, budget),
                60..=69 => self.proj(ctx, goal, budget),
                70..=79 => self.case(ctx, goal, budget),
                _ => self.escape(ctx, budget),
            };
            if r.is_some() {
                return r;
            }
        }
        leaves.choose(&mut self.rng).cloned()
    }

    fn under(&mut self, ctx: &mut Vec<Type>, a: &Type, goal: &Type, budget: usize) -> Option<GTerm> {
        ctx.push(a.clone());
        let r = self.term(ctx, goal, budget);
        ctx.pop();
        r
    }

    fn intro(&mut self, ctx: &mut Vec<Type>, goal: &Type, budget: usize) -> Option<GTerm> {
        let (h, a, b) = goal.split()?;
        let n = budget - 1;
        Some(match h {
            Head::Fun => GTerm::lam(a.clone(), self.under(ctx, a, b, n)?),
            Head::Pair => GTerm::cons(self.term(ctx, a, n)?, self.term(ctx, b, n)?),
            Head::Sum if self.chance(0.5) => GTerm::Inl(b.clone(), Box::new(self.term(ctx, a, n)?)),
            Head::Sum => GTerm::Inr(a.clone(), Box::new(self.term(ctx, b, n)?)),
        })
    }

    fn app(&mut self, ctx: &mut Vec<Type>, goal: &Type, budget: usize) -> Option<GTerm> {
        let a = self.ty(self.cfg.type_depth);
        let f = self.term(ctx, &Type::fun(a.clone(), goal.clone()), budget - 1)?;
        let x = self.term(ctx, &a, budget - 1)?;
        Some(GTerm::App(Box::new(f), Box::new(x), self.fresh()))
    }

    fn cond(&mut self, ctx: &mut Vec<Type>, goal: &Type, budget: usize) -> Option<GTerm> {
        let c = self.term(ctx, &Type::bool(), budget - 1)?;
        let t = self.term(ctx, goal, budget - 1)?;
        let e = self.term(ctx, goal, budget - 1)?;
        Some(GTerm::If(Box::new(c), Box::new(t), Box::new(e), self.fresh()))
    }

    fn proj(&mut self, ctx: &mut Vec<Type>, goal: &Type, budget: usize) -> Option<GTerm> {
        let other = self.ty(self.cfg.type_depth.saturating_sub(1).max(1));
        let (side, pair) = if self.chance(0.5) {
            (Side::Fst, Type::pair(goal.clone(), other))
        } else {
            (Side::Snd, Type::pair(other, goal.clone()))
        };
        let m = self.term(ctx, &pair, budget - 1)?;
        Some(GTerm::Proj(side, Box::new(m), self.fresh()))
    }

    fn case(&mut self, ctx: &mut Vec<Type>, goal: &Type, budget: usize) -> Option<GTerm> {
        let d = self.cfg.type_depth.saturating_sub(1).max(1);
        let (b, c) = (self.ty(d), self.ty(d));
        let s = self.term(ctx, &Type::sum(b.clone(), c.clone()), budget - 1)?;
        let m = self.under(ctx, &b, goal, budget - 1)?;
        let n = self.under(ctx, &c, goal, budget - 1)?;
        Some(GTerm::Case(Box::new(s), b, c, Box::new(m), Box::new(n), self.fresh()))
    }

    /// Routes a term of an unrelated type through `?`, which may fail at
    /// run time. Rarely builds a divergent self-application instead.
    fn escape(&mut self, ctx: &mut Vec<Type>, budget: usize) -> Option<GTerm> {
        if budget < 3 || !self.chance(0.2 + 0.6 * self.cfg.dyn_bias) {
            return None;
        }
        let id = GTerm::lam(Dyn, GTerm::Var(0));
        if budget >= 4 && self.chance(0.02) {
            let w = |l: Label| GTerm::lam(Dyn, GTerm::App(Box::new(GTerm::Var(0)), Box::new(GTerm::Var(0)), l));
            let (l1, l2) = (self.fresh(), self.fresh());
            return Some(GTerm::App(Box::new(w(l1)), Box::new(w(l2)), self.fresh()));
        }
        let t = self.ty(self.cfg.type_depth);
        let m = self.term(ctx, &t, budget - 1)?;
        Some(GTerm::App(Box::new(id), Box::new(m), self.fresh()))
    }

    fn loosen(&mut self, t: &Type) -> Type {
        if self.chance(self.cfg.dyn_bias) {
            return Dyn;
        }
        match t.split() {
            Some((h, a, b)) if self.chance(self.cfg.dyn_bias / 2.0) => {
                let (a, b) = (self.loosen(a), self.loosen(b));
                Type::compound(h, a, b)
            }
            _ => t.clone(),
        }
    }
}

/// Generates a closed, well-typed program. The same configuration always
/// yields the same program. A `?` goal stands for a random static type.
pub fn gen_typed_program(cfg: &GenConfig) -> GTerm {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(cfg.seed), cfg: cfg.clone(), label: 0 };
    let goal = match &cfg.goal {
        Some(t) if !t.is_dyn() => t.clone(),
        _ if g.chance(0.7) => g.base(),
        _ => g.ty(cfg.type_depth),
    };
    for _ in 0..64 {
        g.label = 0;
        let Some(m) = g.term(&mut Vec::new(), &goal, cfg.max_depth.max(1)) else { continue };
        if m.depth() > cfg.max_depth.max(1) {
            continue;
        }
        let anns: Vec<Type> = m.annotations().into_iter().cloned().collect();
        let loose: Vec<Type> = anns.iter().map(|a| g.loosen(a)).collect();
        let m = m.with_annotations(&mut loose.into_iter());
        debug_assert!(typecheck(&[], &m).is_ok(), "generated an ill-typed program: {m}");
        return m;
    }
    match &goal {
        Type::Base(b) => g.constant(*b).unwrap_or(GTerm::Const(Const::Unit)),
        _ => GTerm::Const(Const::Unit),
    }
}

/// A less precise variant of `m`: each annotation is independently
/// replaced, with probability `p`, by a uniformly chosen less precise type.
pub fn random_loosening(m: &GTerm, seed: u64, p: f64) -> GTerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anns: Vec<Type> = m
        .annotations()
        .into_iter()
        .map(|a| {
            if rng.gen_bool(p) {
                less_precise(a).choose(&mut rng).unwrap().clone()
            } else {
                a.clone()
            }
        })
        .collect();
    m.with_annotations(&mut anns.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_nat_is_a_constant() {
        let cfg = GenConfig { seed: 1, max_depth: 1, goal: Some(Type::nat()), ..GenConfig::default() };
        assert!(matches!(gen_typed_program(&cfg), GTerm::Const(Const::Nat(_))));
    }

    #[test]
    fn full_bias_erases_binder_annotations() {
        for seed in 0..50 {
            let cfg = GenConfig { seed, dyn_bias: 1.0, ..GenConfig::default() };
            let m = gen_typed_program(&cfg);
            assert!(m.annotations().iter().all(|a| a.is_dyn()), "{m}");
        }
    }

    #[test]
    fn deterministic_by_seed() {
        let cfg = GenConfig { seed: 42, ..GenConfig::default() };
        assert_eq!(gen_typed_program(&cfg), gen_typed_program(&cfg));
    }
}
