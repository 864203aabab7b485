//! Hand-derived reduction traces kept under `golden/`. Each case is a
//! program `NAME.prog` whose leading comments name the calculus and the
//! variant, and the expected `--trace` output `NAME.expected`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use castkit::discipline::Mode;
use castkit::run::{run, Calculus};
use castkit::syntax::parse_program;

pub const GOLDEN_FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCase {
    pub name: String,
    pub calculus: Calculus,
    pub variant: String,
    pub source: String,
    pub expected: String,
}

impl GoldenCase {
    pub fn mode(&self) -> Mode {
        if self.variant == "cc-prime" {
            Mode::CCPrime
        } else {
            Mode::CC
        }
    }

    /// The trace this build produces, rendered as `--trace` prints it.
    pub fn actual(&self) -> Result<String, String> {
        let m = parse_program(&self.source).map_err(|e| e.to_string())?;
        let out = run(&m, self.calculus, self.mode(), GOLDEN_FUEL, true).map_err(|e| e.to_string())?;
        Ok(out.render())
    }
}

/// The repository's `golden/` directory.
pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn header<'a>(src: &'a str, key: &str) -> Option<&'a str> {
    src.lines()
        .map_while(|l| l.strip_prefix(';'))
        .find_map(|l| l.trim().strip_prefix(key)?.strip_prefix(':').map(str::trim))
}

/// Loads every case in `dir`, sorted by name.
pub fn load_cases(dir: &Path) -> io::Result<Vec<GoldenCase>> {
    let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut names: Vec<String> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter_map(|e| e.file_name().to_str()?.strip_suffix(".prog").map(str::to_string))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let source = fs::read_to_string(dir.join(format!("{name}.prog")))?;
            let expected = fs::read_to_string(dir.join(format!("{name}.expected")))?;
            let calculus = header(&source, "calculus")
                .ok_or_else(|| bad(format!("{name}: no calculus header")))?
                .parse()
                .map_err(|e| bad(format!("{name}: {e}")))?;
            let variant = header(&source, "variant").unwrap_or("cc").to_string();
            Ok(GoldenCase { name, calculus, variant, source, expected })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers_are_read_from_leading_comments() {
        let src = "; calculus: hyper\n; variant: cc-prime\n; calculus: eda\n1\n; variant: cc\n";
        assert_eq!(header(src, "calculus"), Some("hyper"));
        assert_eq!(header(src, "variant"), Some("cc-prime"));
        assert_eq!(header("1\n; calculus: eda\n", "calculus"), None);
    }
}
