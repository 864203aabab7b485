//! The interface shared by all cast representations.
//!
//! [`Discipline`] holds what every representation must provide: endpoints,
//! the cast constructor, classification into active and inert casts, the
//! cross test and the component decompositions. Optional capabilities are
//! separate traits, so a caller that needs, say, composition simply requires
//! [`Composable`] and the compiler rejects disciplines that lack it.

use std::fmt;
use std::hash::Hash;

use crate::cc::term::Term;
use crate::types::{Head, Label, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Inert casts of values are values; `case` takes two functions.
    CC,
    /// Inert casts of values become `wrap` nodes; `case` binds directly.
    CCPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Active,
    Inert,
}

/// Components of a cross cast.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Dom,
    Cod,
    Fst,
    Snd,
    Inl,
    Inr,
}

impl Field {
    pub const ALL: [Field; 6] = [Field::Dom, Field::Cod, Field::Fst, Field::Snd, Field::Inl, Field::Inr];

    pub fn head(self) -> Head {
        match self {
            Field::Dom | Field::Cod => Head::Fun,
            Field::Fst | Field::Snd => Head::Pair,
            Field::Inl | Field::Inr => Head::Sum,
        }
    }

    /// The two fields of a head, left component first.
    pub fn of_head(h: Head) -> (Field, Field) {
        match h {
            Head::Fun => (Field::Dom, Field::Cod),
            Head::Pair => (Field::Fst, Field::Snd),
            Head::Sum => (Field::Inl, Field::Inr),
        }
    }
}

pub trait Discipline: Sized + Clone + fmt::Debug + PartialEq + Eq + Hash + 'static {
    type Cast: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash;

    const NAME: &'static str;

    fn source(c: &Self::Cast) -> Type;
    fn target(c: &Self::Cast) -> Type;

    /// Internal coherence of a cast beyond what its constructors enforce.
    fn well_formed(_c: &Self::Cast) -> Result<(), String> {
        Ok(())
    }

    /// The cast constructor `⟪A ⇒ B⟫ℓ`. Callers guarantee `A ∼ B`.
    fn make_cast(a: &Type, b: &Type, l: Label) -> Self::Cast;

    fn classify(c: &Self::Cast) -> Class;

    fn is_inert(c: &Self::Cast) -> bool {
        Self::classify(c) == Class::Inert
    }

    /// `Some(h)` when `c` is a cross cast between two types with head `h`.
    fn cross(c: &Self::Cast) -> Option<Head>;

    /// Component of a cross cast. Panics when `c` is not a cross cast of
    /// the field's head.
    fn decompose(c: &Self::Cast, f: Field) -> Self::Cast;
}

/// Disciplines that run in the plain cast calculus.
pub trait CastStruct: Discipline {
    /// Applies an active cast to a value.
    fn apply_cast(v: Term<Self>, c: &Self::Cast, mode: Mode) -> Term<Self>;
}

pub trait BlameSafe: Discipline {
    fn cast_blame_safe(c: &Self::Cast, l: Label) -> bool;
}

/// Precision between inert casts and types.
pub trait WithPrecision: Discipline {
    fn prec_ii(c: &Self::Cast, c2: &Self::Cast) -> bool;
    fn prec_it(c: &Self::Cast, t: &Type) -> bool;
    fn prec_ti(t: &Type, c: &Self::Cast) -> bool;
}

/// Disciplines that run in the space-efficient calculus.
pub trait Composable: Discipline {
    /// A constant `k` with `size(c) + 5 ≤ k · 2^height(c)` for every cast.
    const SIZE_HEIGHT_K: usize;

    /// Applies an active cast to a value of the space-efficient calculus.
    fn apply_cast_sc(v: Term<Self>, c: &Self::Cast) -> Term<Self>;
    fn compose(c: &Self::Cast, d: &Self::Cast) -> Self::Cast;
    fn height(c: &Self::Cast) -> usize;
    fn size(c: &Self::Cast) -> usize;
}
