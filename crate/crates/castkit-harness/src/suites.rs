//! The acceptance campaigns. Each returns a [`Verdict`] counting the checks
//! made and the violations found. Sizes are parameters so that tests can
//! run reduced versions of the same code.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use castkit::calculi::{Eda, Edc, Edi, LambdaB1, LambdaB2, LambdaC, Ldc};
use castkit::cc::eval::{eval_with, Outcome};
use castkit::cc::safe::safe_for;
use castkit::cc::term::Term;
use castkit::compile::compile_closed;
use castkit::discipline::{BlameSafe, CastStruct, Composable, Field, Mode};
use castkit::eff::{Hyper, LambdaS};
use castkit::error::InvariantViolation;
use castkit::gtlc::{gterm_precision, typecheck, GTerm};
use castkit::run::{run, Calculus, Observation};
use castkit::sc::{eval_sc, size_ok};
use castkit::types::{consistent, enumerate_types, join, precision, Base, Dyn, Head, Label, Type};

use crate::dgg::check_simulation;
use crate::enumerate::{EnumConfig, Enumerable};
use crate::golden::{golden_dir, load_cases};
use crate::gen::{gen_typed_program, random_loosening, GenConfig, BASES};
use crate::space::{alternating_identities, even_odd_loop, measure_space};
use crate::terms::{labels, less_precise, loosenings, relabel, TermEnumerator, Vocabulary};

/// Violation messages kept per verdict; the rest are only counted.
const KEPT: usize = 20;

#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    /// The first few violation messages.
    pub violations: Vec<String>,
    pub note: String,
    /// Set when the checks ran cleanly but could not cover the required
    /// scope. A verdict with a shortfall does not pass.
    pub shortfall: Option<String>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn new(name: &str) -> Verdict {
        Verdict {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            violations: Vec::new(),
            note: String::new(),
            shortfall: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.shortfall.is_none()
    }

    pub fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.violations.len() < KEPT {
            self.violations.push(msg);
        }
    }

    /// Adds the counts and messages of `other`.
    pub fn absorb(&mut self, other: Verdict) {
        self.checked += other.checked;
        self.failures += other.failures;
        for v in other.violations {
            if self.violations.len() < KEPT {
                self.violations.push(v);
            }
        }
        if !other.note.is_empty() {
            if !self.note.is_empty() {
                self.note.push_str("; ");
            }
            self.note.push_str(&other.note);
        }
    }

    fn timed(mut self, start: Instant) -> Verdict {
        self.elapsed = start.elapsed();
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checks, {} violations, {:.1}s",
            self.name,
            self.checked,
            self.failures,
            self.elapsed.as_secs_f64()
        )?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        if let Some(s) = &self.shortfall {
            write!(f, "\n    scope not covered: {s}")?;
        }
        for v in &self.violations {
            write!(f, "\n    {v}")?;
        }
        Ok(())
    }
}

pub const DYN_BIASES: [f64; 3] = [0.0, 0.5, 1.0];

/// The fuzzed program for `seed`; the dynamic bias cycles through
/// [`DYN_BIASES`].
pub fn fuzzed_program(seed: u64) -> GTerm {
    gen_typed_program(&GenConfig { seed, dyn_bias: DYN_BIASES[(seed % 3) as usize], ..GenConfig::default() })
}

fn modes(calc: Calculus) -> &'static [Mode] {
    if calc.is_composable() {
        &[Mode::CC]
    } else {
        &[Mode::CC, Mode::CCPrime]
    }
}

/// Every calculus and mode on `programs` fuzzed programs. The evaluators
/// typecheck after each step and report stuck terms, so any error is a
/// violation of preservation or progress.
pub fn type_safety(programs: u64, fuel: usize) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("type-safety");
    let mut tally: HashMap<&'static str, u64> = HashMap::new();
    for seed in 0..programs {
        let m = fuzzed_program(seed);
        for calc in Calculus::ALL {
            for &mode in modes(calc) {
                v.checked += 1;
                match run(&m, calc, mode, fuel, false) {
                    Ok(out) => {
                        let kind = match out.observation {
                            Observation::Value(_) => "value",
                            Observation::Blame(_) => "blame",
                            Observation::Timeout => "timeout",
                        };
                        *tally.entry(kind).or_default() += 1;
                    }
                    Err(e) => v.fail(format!("seed {seed}, {calc} {mode:?}: {e}")),
                }
            }
        }
    }
    let get = |k| tally.get(k).copied().unwrap_or(0);
    v.note = format!("{} values, {} blames, {} timeouts", get("value"), get("blame"), get("timeout"));
    v.timed(start)
}

struct BlameCase {
    safe_labels: usize,
    blamed: bool,
}

/// Runs `m` in the primed calculus, checking after every step that it is
/// still safe for each label it was safe for initially, and that none of
/// those labels is blamed.
fn blame_case<D: CastStruct + BlameSafe>(m: &GTerm, fuel: usize) -> Result<BlameCase, String> {
    let out = compile_closed::<D>(m, Mode::CCPrime).map_err(|e| e.to_string())?;
    let safe: Vec<Label> = labels(m)
        .into_iter()
        .flat_map(|l| [l, l.complement()])
        .filter(|l| safe_for(&out.term, *l))
        .collect();
    let e = eval_with(&out.term, Mode::CCPrime, fuel, |step, rule, t: &Term<D>| {
        match safe.iter().find(|l| !safe_for(t, **l)) {
            Some(l) => Err(InvariantViolation::BlameSafety { step, label: l.id(), rule: rule.to_string() }),
            None => Ok(()),
        }
    })
    .map_err(|e| e.to_string())?;
    match e.outcome {
        Outcome::Blamed(l) if safe.contains(&l) => Err(format!("blamed {l}, which was safe")),
        o => Ok(BlameCase { safe_labels: safe.len(), blamed: matches!(o, Outcome::Blamed(_)) }),
    }
}

fn blame_case_in(calc: Calculus, m: &GTerm, fuel: usize) -> Result<BlameCase, String> {
    match calc {
        Calculus::Eda => blame_case::<Eda>(m, fuel),
        Calculus::Edi => blame_case::<Edi>(m, fuel),
        Calculus::LambdaB1 => blame_case::<LambdaB1>(m, fuel),
        Calculus::LambdaB2 => blame_case::<LambdaB2>(m, fuel),
        Calculus::Edc => blame_case::<Edc>(m, fuel),
        Calculus::Ldc => blame_case::<Ldc>(m, fuel),
        Calculus::LambdaC => blame_case::<LambdaC>(m, fuel),
        Calculus::LambdaS | Calculus::Hyper => Err(format!("{calc} has no primed variant")),
    }
}

/// Seeds of the blame-subtyping programs start here.
pub const BLAME_SEED: u64 = 1_000_000;

/// `programs` fuzzed programs in each primed calculus. Each check is one
/// label the compiled program is safe for.
pub fn blame_subtyping(programs: u64, fuel: usize) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("blame-subtyping");
    let mut blamed = 0;
    for i in 0..programs {
        let seed = BLAME_SEED + i;
        let m = fuzzed_program(seed);
        for calc in Calculus::PLAIN {
            match blame_case_in(calc, &m, fuel) {
                Ok(c) => {
                    v.checked += c.safe_labels as u64;
                    blamed += u64::from(c.blamed);
                }
                Err(e) => v.fail(format!("seed {seed}, {calc}: {e}")),
            }
        }
    }
    v.note = format!("{} runs, {blamed} ended in blame", programs * Calculus::PLAIN.len() as u64);
    v.timed(start)
}

/// Seeds of the fuzzed gradual-guarantee pairs start here.
pub const DGG_SEED: u64 = 2_000_000;

/// Every vocabulary construct on, for the shallower exhaustive pass.
pub fn rich_vocabulary() -> Vocabulary {
    Vocabulary { conditionals: true, pairs: true, sums: true, ..Vocabulary::small() }
}

/// The gradual guarantee for both primed λB variants on every enumerated
/// term of the small vocabulary up to `depth` against all its loosenings,
/// the same for the rich vocabulary up to `rich_depth`, and on `fuzzed`
/// random pairs.
pub fn dgg(depth: usize, rich_depth: usize, fuzzed: u64, fuel: usize) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("dgg");
    let mut pairs = 0u64;
    let mut check = |v: &mut Verdict, m: &GTerm, m2: &GTerm| {
        pairs += 1;
        for r in check_simulation(m, m2, fuel) {
            v.checked += 1;
            if !r.holds() {
                v.fail(format!("{}: {m} vs {m2}: {}", r.calculus, r.violations.join("; ")));
            }
        }
    };
    for (vocab, d) in [(Vocabulary::small(), depth), (rich_vocabulary(), rich_depth)] {
        let mut terms = TermEnumerator::new(vocab);
        for (m2, _) in terms.terms(&[], d) {
            let m2 = relabel(&m2);
            for m in loosenings(&m2) {
                check(&mut v, &m, &m2);
            }
        }
    }
    for i in 0..fuzzed {
        let seed = DGG_SEED + i;
        let m2 = gen_typed_program(&GenConfig { seed, dyn_bias: 0.0, ..GenConfig::default() });
        let m = random_loosening(&m2, seed, 0.5);
        check(&mut v, &m, &m2);
    }
    v.note = format!("{pairs} pairs");
    v.timed(start)
}

/// The space bounds on both stress programs at each size, under λS and
/// hypercoercions. Each check is one evaluation step.
pub fn space(sizes: &[usize], fuel: usize) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("space");
    let mut max_real = 0;
    for &n in sizes {
        let even = Observation::Value((n % 2 == 0).to_string());
        let programs = [("even-odd", even_odd_loop(n), even), ("alternating", alternating_identities(n), Observation::Value("5".into()))];
        for (name, m, expected) in &programs {
            for calc in [Calculus::LambdaS, Calculus::Hyper] {
                let r = match measure_space(m, calc, fuel, false).expect("composable") {
                    Ok(r) => r,
                    Err(e) => {
                        v.fail(format!("{name}({n}) under {calc}: {e}"));
                        continue;
                    }
                };
                v.checked += r.steps as u64;
                max_real = max_real.max(r.max_real_size);
                for x in &r.violations {
                    v.fail(format!("{name}({n}) under {calc}: {x}"));
                }
                if &r.observation != expected {
                    v.fail(format!("{name}({n}) under {calc}: expected {expected}, got {}", r.observation));
                }
            }
        }
    }
    v.note = format!("max real size {max_real}");
    v.timed(start)
}

/// Size-height and decomposition-height lemmas for every coercion of
/// `cfg`.
pub fn per_coercion_lemmas<D: Enumerable>(cfg: &EnumConfig) -> Verdict {
    let mut v = Verdict::new(D::NAME);
    D::for_each_coercion(cfg, &mut |c| check_coercion::<D>(&mut v, c));
    v
}

fn check_coercion<D: Enumerable>(v: &mut Verdict, c: &D::Cast) {
    v.checked += 1;
    for msg in D::size_lemma_violations(c) {
        v.fail(msg);
    }
    if let Some(h) = D::cross(c) {
        let (f1, f2) = Field::of_head(h);
        for f in [f1, f2] {
            let part = D::decompose(c, f);
            if D::height(&part) > D::height(c) {
                v.fail(format!("height of {f:?} part {part} exceeds height of {c}"));
            }
        }
    }
}

/// The size-height lemma for the largest coercions of each height up to
/// `max_height`, computed from the grammar with types ignored.
pub fn size_recurrence<D: Enumerable>(max_height: usize) -> Verdict {
    let mut v = Verdict::new(D::NAME);
    for h in 0..=max_height {
        for (what, size, bound) in D::size_maxima(h) {
            v.checked += 1;
            if size > bound {
                v.fail(format!("largest {what} of height {h} has size {size} > {bound}"));
            }
        }
    }
    v
}

/// Builds `samples` random coercions one height above `cfg.max_height`
/// from parts drawn out of a random pool of the universe, and checks the
/// per-coercion lemmas on them and compose-height on chained pairs built
/// the same way.
pub fn height_sample<D: Enumerable>(cfg: &EnumConfig, pool_size: usize, samples: usize, seed: u64) -> Verdict {
    let mut v = Verdict::new(D::NAME);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<D::Cast> = Vec::new();
    let mut seen = 0usize;
    // Only parts whose endpoints leave room for one more constructor are
    // pooled; they are counted by whether they reach the top height.
    let (mut parts, mut low_parts) = (0u128, 0u128);
    let room = cfg.max_type_depth.saturating_sub(1);
    D::for_each_coercion(cfg, &mut |c| {
        if D::source(c).depth() > room || D::target(c).depth() > room {
            return;
        }
        parts += 1;
        low_parts += u128::from(D::height(c) < cfg.max_height);
        seen += 1;
        if pool.len() < pool_size {
            pool.push(c.clone());
        } else {
            let k = rng.gen_range(0..seen);
            if k < pool_size {
                pool[k] = c.clone();
            }
        }
    });
    let above = Head::ALL.len() as u128 * (parts * parts - low_parts * low_parts);
    v.note = format!("at least {above:.2e} coercions of height {}, {samples} sampled", cfg.max_height + 1);
    if pool.is_empty() {
        return v;
    }
    let by_source = index(&pool, |c| D::source(c));
    let by_target = index(&pool, |c| D::target(c));
    let pick = |rng: &mut ChaCha8Rng, ix: &Index, t: &Type| -> Option<usize> {
        ix.get(t).map(|is| is[rng.gen_range(0..is.len())])
    };
    let top = cfg.max_height;
    let mut built = 0;
    while built < samples {
        let h = Head::ALL[rng.gen_range(0..Head::ALL.len())];
        let (c, d) = (&pool[rng.gen_range(0..pool.len())], &pool[rng.gen_range(0..pool.len())]);
        if D::height(c).max(D::height(d)) != top {
            continue;
        }
        let firsts = D::compounds_over(cfg, h, c, d);
        if firsts.is_empty() {
            continue;
        }
        built += 1;
        for e in &firsts {
            check_coercion::<D>(&mut v, e);
        }
        let c2 = match h {
            Head::Fun => pick(&mut rng, &by_target, &D::source(c)),
            _ => pick(&mut rng, &by_source, &D::target(c)),
        };
        let Some((c2, d2)) = c2.zip(pick(&mut rng, &by_source, &D::target(d))) else { continue };
        let seconds = D::compounds_over(cfg, h, &pool[c2], &pool[d2]);
        for e in &firsts {
            for e2 in &seconds {
                if D::target(e) == D::source(e2) {
                    check_compose::<D>(&mut v, e, e2);
                }
            }
        }
    }
    v
}


fn check_compose<D: Composable>(v: &mut Verdict, c: &D::Cast, d: &D::Cast) {
    v.checked += 1;
    let e = D::compose(c, d);
    if D::height(&e) > D::height(c).max(D::height(d)) {
        v.fail(format!("height of {c} ; {d} = {e} exceeds both"));
    }
    if D::source(&e) != D::source(c) || D::target(&e) != D::target(d) {
        v.fail(format!("{c} ; {d} = {e} has the wrong endpoints"));
    }
    if let Err(msg) = D::well_formed(&e) {
        v.fail(format!("{c} ; {d} = {e} is ill-formed: {msg}"));
    }
}

type Index = HashMap<Type, Vec<usize>>;

fn index<C>(cs: &[C], key: impl Fn(&C) -> Type) -> Index {
    let mut m: Index = HashMap::new();
    for (i, c) in cs.iter().enumerate() {
        m.entry(key(c)).or_default().push(i);
    }
    m
}

/// Compose-height over the chained pairs of `cfg`: every pair with at
/// least one operand below the top height, and for `left_samples` random
/// top-height left operands every top-height right operand.
pub fn compose_lemma<D: Enumerable>(cfg: &EnumConfig, left_samples: usize, seed: u64) -> Verdict {
    let mut v = Verdict::new(D::NAME);
    let top = cfg.max_height;
    let lower: Vec<D::Cast> = if top == 0 {
        Vec::new()
    } else {
        let mut out = Vec::new();
        D::for_each_coercion(&EnumConfig { max_height: top - 1, ..cfg.clone() }, &mut |c| out.push(c.clone()));
        out
    };
    let by_source = index(&lower, |c| D::source(c));
    let by_target = index(&lower, |c| D::target(c));
    for c in &lower {
        for &j in by_source.get(&D::target(c)).into_iter().flatten() {
            check_compose::<D>(&mut v, c, &lower[j]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample: Vec<D::Cast> = Vec::new();
    let mut seen_top = 0usize;
    D::for_each_coercion(cfg, &mut |c| {
        if D::height(c) != top {
            return;
        }
        for &j in by_source.get(&D::target(c)).into_iter().flatten() {
            check_compose::<D>(&mut v, c, &lower[j]);
        }
        for &j in by_target.get(&D::source(c)).into_iter().flatten() {
            check_compose::<D>(&mut v, &lower[j], c);
        }
        seen_top += 1;
        if sample.len() < left_samples {
            sample.push(c.clone());
        } else {
            let k = rng.gen_range(0..seen_top);
            if k < left_samples {
                sample[k] = c.clone();
            }
        }
    });
    if top > 0 && !sample.is_empty() {
        let by_target = index(&sample, |c| D::target(c));
        D::for_each_coercion(cfg, &mut |d| {
            if D::height(d) != top {
                return;
            }
            for &i in by_target.get(&D::source(d)).into_iter().flatten() {
                check_compose::<D>(&mut v, &sample[i], d);
            }
        });
    }
    v
}

/// Scope of the coercion lemma suite.
#[derive(Clone, Debug)]
pub struct LemmaScope {
    /// The height the suite is asked to cover exhaustively.
    pub required_height: usize,
    /// Universe for the per-coercion lemmas.
    pub lemmas: EnumConfig,
    /// Universe for compose-height, and the source of parts for sampling
    /// one height above it.
    pub compose: EnumConfig,
    /// Random top-height left operands paired with every top-height right
    /// operand.
    pub left_samples: usize,
    pub pool: usize,
    pub samples: usize,
    pub seed: u64,
}

impl LemmaScope {
    /// Asked for: every coercion of height at most 3 over types of depth at
    /// most 3. Enumerated: height at most 2. Height 3 is sampled.
    pub fn full() -> LemmaScope {
        LemmaScope {
            required_height: 3,
            lemmas: EnumConfig::new(&[Base::Nat, Base::Bool], 2, 3),
            compose: EnumConfig::new(&[Base::Nat], 2, 3),
            left_samples: 300,
            pool: 100_000,
            samples: 100_000,
            seed: 5,
        }
    }
}

fn lemmas_for<D: Enumerable>(scope: &LemmaScope) -> Verdict {
    let mut v = Verdict::new(D::NAME);
    let parts = [
        per_coercion_lemmas::<D>(&scope.lemmas),
        compose_lemma::<D>(&scope.compose, scope.left_samples, scope.seed),
        size_recurrence::<D>(scope.required_height),
        height_sample::<D>(&scope.compose, scope.pool, scope.samples, scope.seed),
    ];
    let counts = format!(
        "{}: {} coercions, {} compositions, {} sampled checks",
        D::NAME,
        parts[0].checked,
        parts[1].checked,
        parts[3].checked
    );
    for p in parts {
        v.absorb(p);
    }
    v.note = format!("{counts}; {}", v.note);
    v
}

pub fn coercion_lemmas(scope: &LemmaScope) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("coercion-lemmas");
    v.absorb(lemmas_for::<LambdaS>(scope));
    v.absorb(lemmas_for::<Hyper>(scope));
    let reached = scope.lemmas.max_height.min(scope.compose.max_height);
    if reached < scope.required_height {
        v.shortfall = Some(format!(
            "exhaustive only to height {reached}; height {} is sampled, the universe being far too large",
            scope.required_height
        ));
    }
    v.timed(start)
}

fn is_observable(t: &Type) -> bool {
    matches!(t, Type::Base(_) | Type::Unknown)
}

fn observe_sc<D: Composable>(m: &Term<D>, fuel: usize) -> Result<(Observation, Option<Term<D>>), String> {
    let e = eval_sc(m, fuel).map_err(|e| e.to_string())?;
    let obs = Observation::of(&e.outcome);
    let value = match e.outcome {
        Outcome::Value(v) => Some(v),
        _ => None,
    };
    Ok((obs, value))
}

/// For every closed program `N` of observable type up to `depth`, and all
/// chained coercions `c : A ⇒ B`, `d : B ⇒ C` of height at most
/// `height` with `C` observable: running `N` through `c` and the result
/// through `d` agrees with running `N` through `c ⨟ d`.
pub fn compose_vs_sequential<D: Enumerable>(depth: usize, height: usize, fuel: usize) -> Verdict {
    let mut v = Verdict::new(D::NAME);
    let bases = [Base::Nat, Base::Bool];
    let first = EnumConfig { label: Label::new(101), ..EnumConfig::new(&bases, height, height + 1) };
    let second = EnumConfig { label: Label::new(102), ..first.clone() };
    let mids = first.types(height + 1);
    let ends: Vec<Type> = first.types(1);
    let mut between: HashMap<(Type, Type, bool), Vec<D::Cast>> = HashMap::new();
    let mut get = |a: &Type, b: &Type, second_leg: bool| {
        between
            .entry((a.clone(), b.clone(), second_leg))
            .or_insert_with(|| D::coercions_between(if second_leg { &second } else { &first }, a, b, height))
            .clone()
    };
    let mut terms = TermEnumerator::new(Vocabulary::small());
    for (m, a) in terms.terms(&[], depth) {
        if !is_observable(&a) {
            continue;
        }
        let n = match compile_closed::<D>(&relabel(&m), Mode::CC) {
            Ok(out) => out.term,
            Err(e) => {
                v.fail(format!("{m}: {e}"));
                continue;
            }
        };
        for b in &mids {
            let cs = get(&a, b, false);
            if cs.is_empty() {
                continue;
            }
            for c_ty in &ends {
                let ds = get(b, c_ty, true);
                for c in &cs {
                    let first_leg = observe_sc(&Term::cast(n.clone(), c.clone()), fuel);
                    for d in &ds {
                        v.checked += 1;
                        let sequential = match &first_leg {
                            Ok((_, Some(val))) => observe_sc(&Term::cast(val.clone(), d.clone()), fuel).map(|r| r.0),
                            Ok((obs, None)) => Ok(obs.clone()),
                            Err(e) => Err(e.clone()),
                        };
                        let composed = observe_sc(&Term::cast(n.clone(), D::compose(c, d)), fuel).map(|r| r.0);
                        if sequential != composed {
                            v.fail(format!("{m} through {c} then {d}: {sequential:?} but composed {composed:?}"));
                        }
                    }
                }
            }
        }
    }
    v
}

/// Compiling a fuzzed program yields a term satisfying the size predicate
/// at index 0 or 1.
pub fn compile_size(programs: u64) -> Verdict {
    fn one<D: Composable>(v: &mut Verdict, seed: u64, m: &GTerm) {
        v.checked += 1;
        match compile_closed::<D>(m, Mode::CC) {
            Ok(out) => match size_ok(&out.term, false) {
                Some(n) if n <= 1 => {}
                other => v.fail(format!("seed {seed} under {}: size index {other:?}", D::NAME)),
            },
            Err(e) => v.fail(format!("seed {seed}: {e}")),
        }
    }
    let mut v = Verdict::new("compile-size");
    for seed in 0..programs {
        let m = fuzzed_program(seed);
        one::<LambdaS>(&mut v, seed, &m);
        one::<Hyper>(&mut v, seed, &m);
    }
    v
}

/// The join of consistent types of depth at most `pair_depth` is an upper
/// bound, and below every common upper bound of depth at most
/// `bound_depth`.
pub fn join_leastness(pair_depth: usize, bound_depth: usize) -> Verdict {
    let mut v = Verdict::new("join");
    let small = enumerate_types(&BASES, pair_depth);
    let big = enumerate_types(&BASES, bound_depth);
    for a in &small {
        for b in &small {
            let Some(p) = consistent(a, b) else { continue };
            let j = join(&p);
            v.checked += 1;
            if !precision(a, &j) || !precision(b, &j) {
                v.fail(format!("join {j} of {a} and {b} is not an upper bound"));
            }
            for c in &big {
                if precision(a, c) && precision(b, c) && !precision(&j, c) {
                    v.fail(format!("join {j} of {a} and {b} is not below {c}"));
                }
            }
        }
    }
    v
}

fn context_loosenings(ctx: &[Type]) -> Vec<Vec<Type>> {
    let mut out = vec![Vec::new()];
    for t in ctx {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Type>| {
                less_precise(t).into_iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Contexts the static gradual guarantee is enumerated in.
pub fn sgg_contexts() -> Vec<Vec<Type>> {
    vec![vec![], vec![Type::nat()], vec![Type::fun(Type::nat(), Type::bool())], vec![Type::bool(), Type::fun(Dyn, Dyn)]]
}

/// For every enumerated `M′ : A′` in `Γ′` up to `depth`, every `M ⊑ M′`
/// and `Γ ⊑ Γ′`: `Γ ⊢ M : A` with `A ⊑ A′`.
pub fn static_guarantee(depth: usize) -> Verdict {
    let mut v = Verdict::new("sgg");
    let mut terms = TermEnumerator::new(rich_vocabulary());
    for ctx2 in sgg_contexts() {
        let ctxs = context_loosenings(&ctx2);
        for (m2, a2) in terms.terms(&ctx2, depth) {
            for m in loosenings(&m2) {
                if !gterm_precision(&m, &m2) {
                    v.fail(format!("loosening {m} is not less precise than {m2}"));
                }
                for ctx in &ctxs {
                    v.checked += 1;
                    match typecheck(ctx, &m) {
                        Ok(a) if precision(&a, &a2) => {}
                        Ok(a) => v.fail(format!("{m} has type {a}, not less precise than {a2} of {m2}")),
                        Err(e) => v.fail(format!("{m} is ill-typed although {m2} is not: {e}")),
                    }
                }
            }
        }
    }
    v
}

/// Scope of the oracle suite.
#[derive(Clone, Debug)]
pub struct OracleScope {
    pub compose_depth: usize,
    pub compose_height: usize,
    pub programs: u64,
    pub join_depths: (usize, usize),
    pub sgg_depth: usize,
    pub fuel: usize,
}

impl OracleScope {
    pub fn full() -> OracleScope {
        OracleScope { compose_depth: 3, compose_height: 1, programs: 1000, join_depths: (2, 3), sgg_depth: 3, fuel: 1000 }
    }
}

pub fn oracles(scope: &OracleScope) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("oracles");
    let parts = [
        compose_vs_sequential::<LambdaS>(scope.compose_depth, scope.compose_height, scope.fuel),
        compose_vs_sequential::<Hyper>(scope.compose_depth, scope.compose_height, scope.fuel),
        compile_size(scope.programs),
        join_leastness(scope.join_depths.0, scope.join_depths.1),
        static_guarantee(scope.sgg_depth),
    ];
    let counts: Vec<String> = parts.iter().map(|p| format!("{} {}", p.name, p.checked)).collect();
    for p in parts {
        v.absorb(p);
    }
    v.note = counts.join(", ");
    v.timed(start)
}

pub fn golden_traces() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("golden-traces");
    let cases = match load_cases(&golden_dir()) {
        Ok(cases) => cases,
        Err(e) => {
            v.fail(format!("cannot load golden cases: {e}"));
            return v.timed(start);
        }
    };
    for case in &cases {
        v.checked += 1;
        match case.actual() {
            Ok(got) if got == case.expected => {}
            Ok(got) => {
                let line = got.lines().zip(case.expected.lines()).position(|(a, b)| a != b);
                let at = line.map_or_else(|| "length".to_string(), |n| format!("line {}", n + 1));
                v.fail(format!("{}: trace differs at {at}", case.name));
            }
            Err(e) => v.fail(format!("{}: {e}", case.name)),
        }
    }
    v.note = format!("{} cases", cases.len());
    v.timed(start)
}
