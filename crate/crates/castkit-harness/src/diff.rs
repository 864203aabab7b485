//! Differential execution of one program under several calculi.

use std::fmt;

use castkit::discipline::Mode;
use castkit::gtlc::GTerm;
use castkit::run::{run, Calculus, Observation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub rows: Vec<(Calculus, Result<Observation, String>)>,
    /// `agree[i][j]` when rows `i` and `j` observed the same thing.
    pub agree: Vec<Vec<bool>>,
}

impl DiffReport {
    pub fn all_agree(&self) -> bool {
        self.agree.iter().all(|r| r.iter().all(|&b| b))
    }

    pub fn observation(&self, c: Calculus) -> Option<&Result<Observation, String>> {
        self.rows.iter().find(|r| r.0 == c).map(|r| &r.1)
    }
}

/// Runs `m` under each calculus. Values agree when their observations
/// match, blame when the labels match and timeouts only with timeouts.
/// Errors never agree with anything.
pub fn run_differential(m: &GTerm, calculi: &[Calculus], mode: Mode, fuel: usize) -> DiffReport {
    let rows: Vec<_> = calculi
        .iter()
        .map(|&c| (c, run(m, c, mode, fuel, false).map(|r| r.observation).map_err(|e| e.to_string())))
        .collect();
    let agree = rows
        .iter()
        .map(|(_, a)| rows.iter().map(|(_, b)| matches!((a, b), (Ok(x), Ok(y)) if x == y)).collect())
        .collect();
    DiffReport { rows, agree }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = self.rows.first().map(|r| &r.1);
        for (c, o) in &self.rows {
            let text = match o {
                Ok(o) => o.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let mark = if Some(o) == first { "" } else { "  *" };
            writeln!(f, "{:<10} {text}{mark}", c.name())?;
        }
        write!(f, "{}", if self.all_agree() { "all agree" } else { "disagreement" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use castkit::gtlc::Prim;
    use castkit::types::Type;

    #[test]
    fn static_program_agrees_everywhere() {
        let m = GTerm::app(GTerm::prim(Prim::Inc), GTerm::app(GTerm::lam(Type::nat(), GTerm::Var(0)), GTerm::nat(2), 1), 2);
        let r = run_differential(&m, &Calculus::ALL, Mode::CC, 100);
        assert!(r.all_agree(), "{r}");
        assert_eq!(r.observation(Calculus::Hyper), Some(&Ok(Observation::Value("3".into()))));
    }
}
