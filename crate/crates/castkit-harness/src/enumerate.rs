//! Exhaustive enumeration of the composable coercions, by height, and an
//! independent type-directed recount used to cross-check it.
//!
//! The universe is fixed by [`EnumConfig`]: a set of base types, one blame
//! label, a bound on the depth of every type inside a coercion, and
//! failures whose source is a base type and whose target is `?` or a base
//! type. The type bound does not cap the height: `? ⇒ ?` coercions nest
//! through `? → ?` at any height.

use castkit::discipline::Composable;
use castkit::eff::hyper::{HCoercion, Mid, Post, Pre};
use castkit::eff::lambda_s::{GCoercion, ICoercion, SCoercion};
use castkit::eff::{Hyper, LambdaS};
use castkit::types::{Base, Dyn, Head, Label, Type};

#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub bases: Vec<Base>,
    pub max_height: usize,
    pub max_type_depth: usize,
    pub label: Label,
}

impl EnumConfig {
    pub fn new(bases: &[Base], max_height: usize, max_type_depth: usize) -> EnumConfig {
        EnumConfig { bases: bases.to_vec(), max_height, max_type_depth, label: Label::new(1) }
    }

    fn base_types(&self) -> Vec<Type> {
        self.bases.iter().map(|b| Type::Base(*b)).collect()
    }

    fn fail_targets(&self) -> Vec<Type> {
        let mut v = vec![Dyn];
        v.extend(self.base_types());
        v
    }

    fn fits(&self, a: &Type, b: &Type) -> bool {
        a.depth() <= self.max_type_depth && b.depth() <= self.max_type_depth
    }

    /// All types of the universe whose depth is at most `depth`.
    pub fn types(&self, depth: usize) -> Vec<Type> {
        castkit::types::enumerate_types(&self.bases, depth.min(self.max_type_depth))
    }
}

/// Disciplines whose coercions can be enumerated and whose size lemmas
/// can be checked.
pub trait Enumerable: Composable {
    /// Visits every coercion of the universe once, lower heights first.
    fn for_each_coercion(cfg: &EnumConfig, f: &mut dyn FnMut(&Self::Cast));

    /// Every coercion from `a` to `b` of height at most `h`, built by
    /// following the types instead of the height.
    fn coercions_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<Self::Cast>;

    /// The size-height inequalities for `c` and all of its parts.
    fn size_lemma_violations(c: &Self::Cast) -> Vec<String>;

    /// Every coercion of the universe whose outermost compound has head
    /// `h` and parts `c` and `d`.
    fn compounds_over(cfg: &EnumConfig, h: Head, c: &Self::Cast, d: &Self::Cast) -> Vec<Self::Cast>;

    /// For each level of the grammar, the largest size of a coercion of
    /// height exactly `h` when types are ignored, and the largest size the
    /// size-height lemma allows at that height.
    fn size_maxima(h: usize) -> Vec<(&'static str, usize, usize)>;
}

pub fn enumerate_coercions<D: Enumerable>(cfg: &EnumConfig) -> Vec<D::Cast> {
    let mut out = Vec::new();
    D::for_each_coercion(cfg, &mut |c| out.push(c.clone()));
    out
}

/// The type-directed recount of [`enumerate_coercions`].
pub fn naive_coercions<D: Enumerable>(cfg: &EnumConfig) -> Vec<D::Cast> {
    let types = cfg.types(cfg.max_height + 1);
    let mut out = Vec::new();
    for a in &types {
        for b in &types {
            out.extend(D::coercions_between(cfg, a, b, cfg.max_height));
        }
    }
    out
}

fn pow2(h: usize) -> usize {
    1usize << h
}

fn check(out: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        out.push(what());
    }
}

// ---- λS ----

fn s_ground_target(g: &GCoercion) -> Option<Type> {
    let t = g.target();
    t.is_ground().then_some(t)
}

/// Top-level coercions built over intermediate coercion `i`.
fn s_tops_over(i: ICoercion, out: &mut Vec<SCoercion>, l: Label) {
    let src = i.source();
    if src.is_ground() {
        out.push(SCoercion::Proj(src, l, i.clone()));
    }
    out.push(SCoercion::Mid(i));
}

/// Intermediate coercions over ground coercion `g`.
fn s_inters_over(g: GCoercion, out: &mut Vec<ICoercion>) {
    if let Some(t) = s_ground_target(&g) {
        out.push(ICoercion::Inj(g.clone(), t));
    }
    out.push(ICoercion::Gnd(g));
}

fn s_height0(cfg: &EnumConfig) -> Vec<SCoercion> {
    let mut inters = Vec::new();
    for b in &cfg.bases {
        s_inters_over(GCoercion::IdBase(*b), &mut inters);
    }
    for a in cfg.base_types() {
        for t in cfg.fail_targets() {
            inters.push(ICoercion::Fail(cfg.label, a.clone(), t));
        }
    }
    let mut tops = vec![SCoercion::IdDyn];
    for i in inters {
        s_tops_over(i, &mut tops, cfg.label);
    }
    tops
}

fn s_compounds(cfg: &EnumConfig, lower: &[SCoercion], min_height: usize, f: &mut dyn FnMut(GCoercion)) {
    for h in Head::ALL {
        for c in lower {
            for d in lower {
                if c.height().max(d.height()) + 1 < min_height {
                    continue;
                }
                let g = GCoercion::compound(h, c.clone(), d.clone());
                if cfg.fits(&g.source(), &g.target()) {
                    f(g);
                }
            }
        }
    }
}

fn s_tops(cfg: &EnumConfig, h: usize) -> Vec<SCoercion> {
    let mut tops = s_height0(cfg);
    for level in 1..=h {
        let lower = tops.clone();
        s_compounds(cfg, &lower, level, &mut |g| {
            let mut inters = Vec::new();
            s_inters_over(g, &mut inters);
            for i in inters {
                s_tops_over(i, &mut tops, cfg.label);
            }
        });
    }
    tops
}

fn s_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<SCoercion> {
    if !cfg.fits(a, b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    match (a, b) {
        (Type::Unknown, _) => {
            if b.is_dyn() {
                out.push(SCoercion::IdDyn);
            }
            for g in Type::grounds() {
                for i in s_inter_between(cfg, &g, b, h) {
                    out.push(SCoercion::Proj(g.clone(), cfg.label, i));
                }
            }
        }
        _ => out.extend(s_inter_between(cfg, a, b, h).into_iter().map(SCoercion::Mid)),
    }
    out
}

fn s_inter_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<ICoercion> {
    if !cfg.fits(a, b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if cfg.base_types().contains(a) && cfg.fail_targets().contains(b) {
        out.push(ICoercion::Fail(cfg.label, a.clone(), b.clone()));
    }
    if b.is_dyn() {
        for g in Type::grounds() {
            out.extend(s_ground_between(cfg, a, &g, h).into_iter().map(|x| ICoercion::Inj(x, g.clone())));
        }
    } else {
        out.extend(s_ground_between(cfg, a, b, h).into_iter().map(ICoercion::Gnd));
    }
    out
}

fn s_ground_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<GCoercion> {
    match (a, b) {
        (Type::Base(x), Type::Base(y)) if x == y && cfg.bases.contains(x) => vec![GCoercion::IdBase(*x)],
        _ => match (a.split(), b.split()) {
            (Some((h1, a1, a2)), Some((h2, b1, b2))) if h1 == h2 && h > 0 => {
                let firsts = match h1 {
                    Head::Fun => s_between(cfg, b1, a1, h - 1),
                    _ => s_between(cfg, a1, b1, h - 1),
                };
                let seconds = s_between(cfg, a2, b2, h - 1);
                let mut out = Vec::new();
                for c in &firsts {
                    for d in &seconds {
                        out.push(GCoercion::compound(h1, c.clone(), d.clone()));
                    }
                }
                out
            }
            _ => Vec::new(),
        },
    }
}

fn s_ground_lemmas(g: &GCoercion, out: &mut Vec<String>) {
    check(out, g.size() + 9 <= 9 * pow2(g.height()), || format!("size(g) + 9 > 9 * 2^height(g) for {g}"));
    if let Some((_, c, d)) = g.parts() {
        s_top_lemmas(c, out);
        s_top_lemmas(d, out);
    }
}

fn s_inter_lemmas(i: &ICoercion, out: &mut Vec<String>) {
    check(out, i.size() + 7 <= 9 * pow2(i.height()), || format!("size(i) + 7 > 9 * 2^height(i) for {i}"));
    match i {
        ICoercion::Inj(g, _) | ICoercion::Gnd(g) => s_ground_lemmas(g, out),
        ICoercion::Fail(..) => {}
    }
}

fn s_top_lemmas(c: &SCoercion, out: &mut Vec<String>) {
    check(out, c.size() + 5 <= 9 * pow2(c.height()), || format!("size(c) + 5 > 9 * 2^height(c) for {c}"));
    match c {
        SCoercion::IdDyn => {}
        SCoercion::Proj(_, _, i) | SCoercion::Mid(i) => s_inter_lemmas(i, out),
    }
}

impl Enumerable for LambdaS {
    fn for_each_coercion(cfg: &EnumConfig, f: &mut dyn FnMut(&SCoercion)) {
        if cfg.max_height == 0 {
            s_height0(cfg).iter().for_each(f);
            return;
        }
        let lower = s_tops(cfg, cfg.max_height - 1);
        lower.iter().for_each(&mut *f);
        s_compounds(cfg, &lower, cfg.max_height, &mut |g| {
            let mut inters = Vec::new();
            s_inters_over(g, &mut inters);
            let mut tops = Vec::new();
            for i in inters {
                s_tops_over(i, &mut tops, cfg.label);
            }
            tops.iter().for_each(&mut *f);
        });
    }

    fn coercions_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<SCoercion> {
        s_between(cfg, a, b, h)
    }

    fn compounds_over(cfg: &EnumConfig, h: Head, c: &SCoercion, d: &SCoercion) -> Vec<SCoercion> {
        let g = GCoercion::compound(h, c.clone(), d.clone());
        let mut out = Vec::new();
        if cfg.fits(&g.source(), &g.target()) {
            let mut inters = Vec::new();
            s_inters_over(g, &mut inters);
            for i in inters {
                s_tops_over(i, &mut out, cfg.label);
            }
        }
        out
    }

    fn size_maxima(h: usize) -> Vec<(&'static str, usize, usize)> {
        // Ground: a base identity, or one node over two tops. Intermediate
        // and top forms each add at most 2.
        let mut top = 4;
        let mut ground = 0;
        for _ in 0..h {
            ground = 1 + 2 * top;
            top = ground + 4;
        }
        let k = 9 * pow2(h);
        vec![("top", top, k - 5), ("intermediate", ground + 2, k - 7), ("ground", ground, k - 9)]
    }

    fn size_lemma_violations(c: &SCoercion) -> Vec<String> {
        let mut out = Vec::new();
        s_top_lemmas(c, &mut out);
        out
    }
}

// ---- hypercoercions ----

fn h_over(cfg: &EnumConfig, m: Mid, out: &mut Vec<HCoercion>) {
    let (src, tgt) = (m.source(), m.target());
    let mut pres = vec![Pre::Id];
    if src.is_ground() {
        pres.push(Pre::Proj(src, cfg.label));
    }
    let mut posts = vec![Post::Id];
    if tgt.is_ground() {
        posts.push(Post::Inj(tgt.clone()));
        if cfg.base_types().contains(&tgt) {
            posts.extend(cfg.fail_targets().into_iter().map(|t| Post::Fail(cfg.label, t)));
        }
    }
    for p in &pres {
        for i in &posts {
            out.push(HCoercion::Triple(p.clone(), m.clone(), i.clone()));
        }
    }
}

fn h_height0(cfg: &EnumConfig) -> Vec<HCoercion> {
    let mut out = vec![HCoercion::IdDyn];
    for b in &cfg.bases {
        h_over(cfg, Mid::Id(*b), &mut out);
    }
    out
}

fn h_compounds(cfg: &EnumConfig, lower: &[HCoercion], min_height: usize, f: &mut dyn FnMut(Mid)) {
    for h in Head::ALL {
        for c in lower {
            for d in lower {
                if c.height().max(d.height()) + 1 < min_height {
                    continue;
                }
                let m = Mid::compound(h, c.clone(), d.clone());
                if cfg.fits(&m.source(), &m.target()) {
                    f(m);
                }
            }
        }
    }
}

fn h_all(cfg: &EnumConfig, h: usize) -> Vec<HCoercion> {
    let mut all = h_height0(cfg);
    for level in 1..=h {
        let lower = all.clone();
        h_compounds(cfg, &lower, level, &mut |m| h_over(cfg, m, &mut all));
    }
    all
}

fn h_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<HCoercion> {
    if !cfg.fits(a, b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if a.is_dyn() && b.is_dyn() {
        out.push(HCoercion::IdDyn);
    }
    let pres: Vec<(Pre, Type)> = if a.is_dyn() {
        Type::grounds().into_iter().map(|g| (Pre::Proj(g.clone(), cfg.label), g)).collect()
    } else {
        vec![(Pre::Id, a.clone())]
    };
    for (p, ma) in &pres {
        // Middles ending at a ground type, followed by an injection or a failure.
        let mut ends: Vec<(Type, Post)> = Vec::new();
        if b.is_dyn() {
            ends.extend(Type::grounds().into_iter().map(|g| (g.clone(), Post::Inj(g))));
        } else {
            ends.push((b.clone(), Post::Id));
        }
        if cfg.fail_targets().contains(b) {
            ends.extend(cfg.base_types().into_iter().map(|t| (t, Post::Fail(cfg.label, b.clone()))));
        }
        for (mb, i) in ends {
            for m in h_mid_between(cfg, ma, &mb, h) {
                out.push(HCoercion::Triple(p.clone(), m, i.clone()));
            }
        }
    }
    out
}

fn h_mid_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<Mid> {
    match (a, b) {
        (Type::Base(x), Type::Base(y)) if x == y && cfg.bases.contains(x) => vec![Mid::Id(*x)],
        _ => match (a.split(), b.split()) {
            (Some((h1, a1, a2)), Some((h2, b1, b2))) if h1 == h2 && h > 0 => {
                let firsts = match h1 {
                    Head::Fun => h_between(cfg, b1, a1, h - 1),
                    _ => h_between(cfg, a1, b1, h - 1),
                };
                let seconds = h_between(cfg, a2, b2, h - 1);
                let mut out = Vec::new();
                for c in &firsts {
                    for d in &seconds {
                        let m = Mid::compound(h1, c.clone(), d.clone());
                        if cfg.fits(&m.source(), &m.target()) {
                            out.push(m);
                        }
                    }
                }
                out
            }
            _ => Vec::new(),
        },
    }
}

fn h_mid_lemmas(m: &Mid, out: &mut Vec<String>) {
    check(out, m.size() + 9 <= 9 * pow2(m.height()), || format!("size(m) + 9 > 9 * 2^height(m) for {m}"));
    if let Some((_, c, d)) = m.parts() {
        h_lemmas(c, out);
        h_lemmas(d, out);
    }
}

fn h_lemmas(c: &HCoercion, out: &mut Vec<String>) {
    check(out, c.size() + 5 <= 9 * pow2(c.height()), || format!("size(c) + 5 > 9 * 2^height(c) for {c}"));
    if let HCoercion::Triple(p, m, i) = c {
        check(out, p.size() <= 1, || format!("size(p) > 1 in {c}"));
        check(out, i.size() <= 1, || format!("size(i) > 1 in {c}"));
        h_mid_lemmas(m, out);
    }
}

impl Enumerable for Hyper {
    fn for_each_coercion(cfg: &EnumConfig, f: &mut dyn FnMut(&HCoercion)) {
        if cfg.max_height == 0 {
            h_height0(cfg).iter().for_each(f);
            return;
        }
        let lower = h_all(cfg, cfg.max_height - 1);
        lower.iter().for_each(&mut *f);
        h_compounds(cfg, &lower, cfg.max_height, &mut |m| {
            let mut cs = Vec::new();
            h_over(cfg, m, &mut cs);
            cs.iter().for_each(&mut *f);
        });
    }

    fn coercions_between(cfg: &EnumConfig, a: &Type, b: &Type, h: usize) -> Vec<HCoercion> {
        h_between(cfg, a, b, h)
    }

    fn compounds_over(cfg: &EnumConfig, h: Head, c: &HCoercion, d: &HCoercion) -> Vec<HCoercion> {
        let m = Mid::compound(h, c.clone(), d.clone());
        let mut out = Vec::new();
        if cfg.fits(&m.source(), &m.target()) {
            h_over(cfg, m, &mut out);
        }
        out
    }

    fn size_maxima(h: usize) -> Vec<(&'static str, usize, usize)> {
        // A triple adds 2 plus at most 1 on each side of its middle.
        let mut top = 4;
        let mut middle = 0;
        for _ in 0..h {
            middle = 1 + 2 * top;
            top = middle + 4;
        }
        let k = 9 * pow2(h);
        vec![("hypercoercion", top, k - 5), ("projection", 1, 1), ("injection", 1, 1), ("middle", middle, k - 9)]
    }

    fn size_lemma_violations(c: &HCoercion) -> Vec<String> {
        let mut out = Vec::new();
        h_lemmas(c, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use std::hash::Hash;

    fn cross_check<D: Enumerable>(cfg: &EnumConfig)
    where
        D::Cast: Hash + Eq,
    {
        let by_height = enumerate_coercions::<D>(cfg);
        let set: HashSet<_> = by_height.iter().cloned().collect();
        assert_eq!(set.len(), by_height.len(), "duplicates");
        let naive: HashSet<_> = naive_coercions::<D>(cfg).into_iter().collect();
        assert_eq!(set.len(), naive.len());
        assert_eq!(set, naive);
        for c in &by_height {
            assert!(D::well_formed(c).is_ok(), "{c}");
        }
    }

    #[test]
    fn lambda_s_height_zero_contents() {
        let cfg = EnumConfig::new(&[Base::Nat], 0, 3);
        let all = enumerate_coercions::<LambdaS>(&cfg);
        assert!(all.contains(&SCoercion::IdDyn));
        assert!(all.contains(&SCoercion::Mid(ICoercion::Gnd(GCoercion::IdBase(Base::Nat)))));
        assert!(all.iter().any(|c| matches!(c, SCoercion::Mid(ICoercion::Fail(..)))));
        assert!(all.iter().any(|c| matches!(c, SCoercion::Proj(..))));
    }

    #[test]
    fn hyper_height_zero_middles_are_identities() {
        let cfg = EnumConfig::new(&[Base::Nat, Base::Bool], 0, 3);
        for c in enumerate_coercions::<Hyper>(&cfg) {
            assert!(matches!(c, HCoercion::IdDyn | HCoercion::Triple(_, Mid::Id(_), _)), "{c}");
        }
    }

    #[test]
    fn naive_recount_matches_at_height_one() {
        let cfg = EnumConfig::new(&[Base::Nat, Base::Bool], 1, 3);
        cross_check::<LambdaS>(&cfg);
        cross_check::<Hyper>(&cfg);
    }

    fn enumerated_maxima<D: Enumerable>(cfg: &EnumConfig) -> Vec<usize> {
        let mut max = vec![0; cfg.max_height + 1];
        D::for_each_coercion(cfg, &mut |c| {
            let h = D::height(c);
            max[h] = max[h].max(D::size(c));
        });
        max
    }

    #[test]
    fn size_recurrence_is_attained_and_within_bounds() {
        let cfg = EnumConfig::new(&[Base::Nat], 2, 3);
        for (name, max) in [("lambda-s", enumerated_maxima::<LambdaS>(&cfg)), ("hyper", enumerated_maxima::<Hyper>(&cfg))] {
            assert_eq!(max, vec![4, 13, 31], "{name}");
        }
        for h in 0..=10 {
            for (what, size, bound) in LambdaS::size_maxima(h).into_iter().chain(Hyper::size_maxima(h)) {
                assert!(size <= bound, "{what} at height {h}: {size} > {bound}");
            }
        }
        assert_eq!(LambdaS::size_maxima(2)[0], ("top", 31, 31));
    }

    #[test]
    fn height_is_not_capped_by_type_depth() {
        let cfg = EnumConfig::new(&[Base::Nat], 2, 2);
        let dd = LambdaS::coercions_between(&cfg, &Dyn, &Dyn, 2);
        assert_eq!(dd.len(), 2703);
        assert!(dd.iter().any(|c| c.height() == 2));
        assert_eq!(Hyper::coercions_between(&cfg, &Dyn, &Dyn, 2).len(), 2703);
    }
}
