use crate::cc::term::Term;
use crate::discipline::BlameSafe;
use crate::types::Label;

/// Holds when every cast in `m` is blame-safe for `l` and `m` contains no
/// `blame l`.
pub fn safe_for<D: BlameSafe>(m: &Term<D>, l: Label) -> bool {
    match m {
        Term::Cast(n, c) | Term::Wrap(n, c) => D::cast_blame_safe(c, l) && safe_for(n, l),
        Term::Blame(l2, _) => *l2 != l,
        _ => m.children().into_iter().all(|n| safe_for(n, l)),
    }
}
