//! Casts represented as a source type, a target type and a blame label:
//! EDA, EDI and the two λB variants.

use std::fmt;

use crate::cc::eta::eta;
use crate::cc::step::inert_parts;
use crate::cc::term::Term;
use crate::discipline::{BlameSafe, CastStruct, Class, Discipline, Field, Mode, WithPrecision};
use crate::types::{is_consistent, precision, subtype, Head, Label, SubtypeFlavor, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TCast {
    pub source: Type,
    pub target: Type,
    pub label: Label,
}

impl TCast {
    pub fn new(source: Type, target: Type, label: Label) -> TCast {
        TCast { source, target, label }
    }
}

impl fmt::Display for TCast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(=> {} {} {})", self.source, self.target, self.label)
    }
}

/// The shape of a cast between consistent types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `a ⇒ a` at an atomic type, including `? ⇒ ?`.
    Id,
    /// `A ⇒ ?` with `A ≠ ?`.
    Inj,
    /// `? ⇒ B` with `B ≠ ?`.
    Proj,
    Cross(Head),
}

pub fn shape(c: &TCast) -> Shape {
    match (&c.source, &c.target) {
        (Type::Unknown, Type::Unknown) => Shape::Id,
        (_, Type::Unknown) => Shape::Inj,
        (Type::Unknown, _) => Shape::Proj,
        (s, _) => match s.head() {
            Some(h) => Shape::Cross(h),
            None => Shape::Id,
        },
    }
}

fn well_formed(c: &TCast) -> Result<(), String> {
    if is_consistent(&c.source, &c.target) {
        Ok(())
    } else {
        Err(format!("{} and {} are inconsistent", c.source, c.target))
    }
}

fn cross(c: &TCast) -> Option<Head> {
    match shape(c) {
        Shape::Cross(h) => Some(h),
        _ => None,
    }
}

fn decompose(c: &TCast, f: Field) -> TCast {
    let (hs, s1, s2) = c.source.split().expect("decompose: source is not compound");
    let (ht, t1, t2) = c.target.split().expect("decompose: target is not compound");
    assert!(hs == ht && hs == f.head(), "decompose: {c} has no {f:?} component");
    let (a, b) = match f {
        Field::Dom => (t1, s1),
        Field::Cod | Field::Snd | Field::Inr => (s2, t2),
        Field::Fst | Field::Inl => (s1, t1),
    };
    TCast::new(a.clone(), b.clone(), c.label)
}

fn blame_safe(c: &TCast, l: Label, flavor: SubtypeFlavor) -> bool {
    c.label != l || subtype(&c.source, &c.target, flavor)
}

macro_rules! typebased_common {
    () => {
        type Cast = TCast;

        fn source(c: &TCast) -> Type {
            c.source.clone()
        }
        fn target(c: &TCast) -> Type {
            c.target.clone()
        }
        fn well_formed(c: &TCast) -> Result<(), String> {
            well_formed(c)
        }
        fn make_cast(a: &Type, b: &Type, l: Label) -> TCast {
            TCast::new(a.clone(), b.clone(), l)
        }
        fn cross(c: &TCast) -> Option<Head> {
            cross(c)
        }
        fn decompose(c: &TCast, f: Field) -> TCast {
            decompose(c, f)
        }
    };
}

/// Partially eager, D blame tracking, active cross casts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Eda;

/// Partially eager, D blame tracking, inert cross casts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Edi;

/// λB with every cross cast inert.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LambdaB1;

/// λB with function casts inert and pair and sum casts active.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LambdaB2;

impl Discipline for Eda {
    typebased_common!();
    const NAME: &'static str = "eda";

    fn classify(c: &TCast) -> Class {
        match shape(c) {
            Shape::Inj => Class::Inert,
            _ => Class::Active,
        }
    }
}

impl Discipline for Edi {
    typebased_common!();
    const NAME: &'static str = "edi";

    fn classify(c: &TCast) -> Class {
        match shape(c) {
            Shape::Inj | Shape::Cross(_) => Class::Inert,
            _ => Class::Active,
        }
    }
}

impl Discipline for LambdaB1 {
    typebased_common!();
    const NAME: &'static str = "lambda-b1";

    fn classify(c: &TCast) -> Class {
        match shape(c) {
            Shape::Inj if c.source.is_ground() => Class::Inert,
            Shape::Cross(_) => Class::Inert,
            _ => Class::Active,
        }
    }
}

impl Discipline for LambdaB2 {
    typebased_common!();
    const NAME: &'static str = "lambda-b2";

    fn classify(c: &TCast) -> Class {
        match shape(c) {
            Shape::Inj if c.source.is_ground() => Class::Inert,
            Shape::Cross(Head::Fun) => Class::Inert,
            _ => Class::Active,
        }
    }
}

/// Projection out of `?` for the D calculi: the injected value is recast
/// directly to the target, or blamed when the types clash.
fn d_project<D: Discipline<Cast = TCast>>(v: Term<D>, c: &TCast, mode: Mode) -> Term<D> {
    let (w, inj) = inert_parts(&v, mode).expect("projection from a value that is not an injection");
    if is_consistent(&inj.source, &c.target) {
        Term::cast(w.clone(), TCast::new(inj.source.clone(), c.target.clone(), c.label))
    } else {
        Term::Blame(c.label, c.target.clone())
    }
}

impl CastStruct for Eda {
    fn apply_cast(v: Term<Self>, c: &TCast, mode: Mode) -> Term<Self> {
        match shape(c) {
            Shape::Id => v,
            Shape::Proj => d_project(v, c, mode),
            Shape::Cross(_) => eta(&v, c, mode),
            Shape::Inj => panic!("apply_cast: {c} is inert"),
        }
    }
}

impl CastStruct for Edi {
    fn apply_cast(v: Term<Self>, c: &TCast, mode: Mode) -> Term<Self> {
        match shape(c) {
            Shape::Id => v,
            Shape::Proj => d_project(v, c, mode),
            Shape::Inj | Shape::Cross(_) => panic!("apply_cast: {c} is inert"),
        }
    }
}

/// Shared by both λB variants; cross casts reach here only when active.
fn lambda_b_apply<D: Discipline<Cast = TCast>>(v: Term<D>, c: &TCast, mode: Mode) -> Term<D> {
    match shape(c) {
        Shape::Id => v,
        Shape::Inj => {
            assert!(!c.source.is_ground(), "apply_cast: {c} is inert");
            let g = c.source.gnd();
            let inner = TCast::new(c.source.clone(), g.clone(), c.label);
            Term::cast(Term::cast(v, inner), TCast::new(g, Type::Unknown, c.label))
        }
        Shape::Proj => {
            let (w, inj) = inert_parts(&v, mode).expect("projection from a value that is not an injection");
            let g = &inj.source;
            let b = &c.target;
            if b.is_ground() {
                if b == g {
                    w.clone()
                } else {
                    Term::Blame(c.label, b.clone())
                }
            } else {
                let h = b.gnd();
                let to_ground = TCast::new(Type::Unknown, h.clone(), c.label);
                Term::cast(Term::cast(v, to_ground), TCast::new(h, b.clone(), c.label))
            }
        }
        Shape::Cross(_) => eta(&v, c, mode),
    }
}

impl CastStruct for LambdaB1 {
    fn apply_cast(v: Term<Self>, c: &TCast, mode: Mode) -> Term<Self> {
        lambda_b_apply(v, c, mode)
    }
}

impl CastStruct for LambdaB2 {
    fn apply_cast(v: Term<Self>, c: &TCast, mode: Mode) -> Term<Self> {
        lambda_b_apply(v, c, mode)
    }
}

impl BlameSafe for Eda {
    fn cast_blame_safe(c: &TCast, l: Label) -> bool {
        blame_safe(c, l, SubtypeFlavor::D)
    }
}

impl BlameSafe for Edi {
    fn cast_blame_safe(c: &TCast, l: Label) -> bool {
        blame_safe(c, l, SubtypeFlavor::D)
    }
}

impl BlameSafe for LambdaB1 {
    fn cast_blame_safe(c: &TCast, l: Label) -> bool {
        blame_safe(c, l, SubtypeFlavor::UD)
    }
}

impl BlameSafe for LambdaB2 {
    fn cast_blame_safe(c: &TCast, l: Label) -> bool {
        blame_safe(c, l, SubtypeFlavor::UD)
    }
}

/// Heads whose cross casts take part in the precision rules.
fn prec_ii(c: &TCast, c2: &TCast, heads: &[Head]) -> bool {
    match (shape(c), shape(c2)) {
        (Shape::Inj, Shape::Inj) => c.source.is_ground() && c.source == c2.source,
        (Shape::Cross(h), Shape::Cross(h2)) => {
            h == h2 && heads.contains(&h) && precision(&c.source, &c2.source) && precision(&c.target, &c2.target)
        }
        _ => false,
    }
}

fn prec_it(c: &TCast, t: &Type, heads: &[Head]) -> bool {
    match shape(c) {
        Shape::Inj => c.source.is_ground() && precision(&c.source, t),
        Shape::Cross(h) => {
            heads.contains(&h) && t.head() == Some(h) && precision(&c.source, t) && precision(&c.target, t)
        }
        _ => false,
    }
}

fn prec_ti(t: &Type, c: &TCast, heads: &[Head]) -> bool {
    match shape(c) {
        Shape::Cross(h) => {
            heads.contains(&h) && t.head() == Some(h) && precision(t, &c.source) && precision(t, &c.target)
        }
        _ => false,
    }
}

const ALL_HEADS: [Head; 3] = [Head::Fun, Head::Pair, Head::Sum];
const FUN_ONLY: [Head; 1] = [Head::Fun];

impl WithPrecision for LambdaB1 {
    fn prec_ii(c: &TCast, c2: &TCast) -> bool {
        prec_ii(c, c2, &ALL_HEADS)
    }
    fn prec_it(c: &TCast, t: &Type) -> bool {
        prec_it(c, t, &ALL_HEADS)
    }
    fn prec_ti(t: &Type, c: &TCast) -> bool {
        prec_ti(t, c, &ALL_HEADS)
    }
}

impl WithPrecision for LambdaB2 {
    fn prec_ii(c: &TCast, c2: &TCast) -> bool {
        prec_ii(c, c2, &FUN_ONLY)
    }
    fn prec_it(c: &TCast, t: &Type) -> bool {
        prec_it(c, t, &FUN_ONLY)
    }
    fn prec_ti(t: &Type, c: &TCast) -> bool {
        prec_ti(t, c, &FUN_ONLY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Dyn;

    fn tc(a: Type, b: Type, l: i64) -> TCast {
        TCast::new(a, b, Label::new(l))
    }

    #[test]
    fn classification_tables() {
        assert_eq!(Eda::classify(&tc(Type::nat(), Dyn, 1)), Class::Inert);
        let ff = tc(Type::fun(Type::nat(), Type::nat()), Type::fun(Dyn, Type::nat()), 1);
        assert_eq!(Eda::classify(&ff), Class::Active);
        assert_eq!(Edi::classify(&ff), Class::Inert);
        assert_eq!(Eda::classify(&tc(Dyn, Dyn, 1)), Class::Active);
        let pp = tc(Type::pair(Type::nat(), Dyn), Type::pair(Dyn, Dyn), 1);
        assert_eq!(LambdaB1::classify(&pp), Class::Inert);
        assert_eq!(LambdaB2::classify(&pp), Class::Active);
        let inj = tc(Type::fun(Type::nat(), Type::bool()), Dyn, 1);
        assert_eq!(LambdaB1::classify(&inj), Class::Active);
        assert_eq!(LambdaB1::classify(&tc(Type::fun(Dyn, Dyn), Dyn, 1)), Class::Inert);
    }

    #[test]
    fn dom_keeps_label_and_flips() {
        let c = tc(Type::fun(Type::int(), Type::bool()), Type::fun(Type::nat(), Dyn), 3);
        assert_eq!(Eda::decompose(&c, Field::Dom), tc(Type::nat(), Type::int(), 3));
        assert_eq!(Eda::decompose(&c, Field::Cod), tc(Type::bool(), Dyn, 3));
    }

    #[test]
    fn blame_safety_flavors() {
        let l = Label::new(1);
        assert!(Eda::cast_blame_safe(&tc(Type::int(), Dyn, 1), l));
        let ii = tc(Type::fun(Type::int(), Type::int()), Dyn, 1);
        assert!(Eda::cast_blame_safe(&ii, l));
        assert!(!LambdaB1::cast_blame_safe(&ii, l));
        assert!(LambdaB1::cast_blame_safe(&ii, Label::new(2)));
    }

    #[test]
    fn precision_rules() {
        let g = tc(Type::nat(), Dyn, 1);
        assert!(LambdaB1::prec_ii(&g, &tc(Type::nat(), Dyn, 5)));
        assert!(!LambdaB1::prec_ii(&tc(Type::fun(Dyn, Dyn), Dyn, 1), &tc(Type::pair(Dyn, Dyn), Dyn, 2)));
        assert!(LambdaB1::prec_it(&g, &Type::nat()));
        let pc = tc(Type::pair(Dyn, Dyn), Type::pair(Dyn, Dyn), 1);
        assert!(LambdaB1::prec_it(&pc, &Type::pair(Type::nat(), Dyn)));
        assert!(!LambdaB2::prec_it(&pc, &Type::pair(Type::nat(), Dyn)));
    }
}
