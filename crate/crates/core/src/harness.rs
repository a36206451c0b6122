//! Corpus generation and bounded strong-persistence checks.
//!
//! Strong persistence quantifies over every context program `R`, which
//! cannot be tested literally. The harness offers two stand-ins: comparing
//! HT-model sets against the semantic target ([`check_oracle`]), and
//! comparing answer sets under an enumerated family of small contexts
//! ([`verify_sp`]).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forget::forget;
use crate::ht::{answer_sets, ht_models, subsets, VExclusion};
use crate::parse::parse_program;
use crate::program::{Atom, AtomSet, BodyLiteral, Program, Rule};
use crate::semantic::{fsp_target_models, satisfies_omega};

/// Largest `Σ(P)` accepted by [`verify_sp`] unless a caller raises it.
pub const SP_GUARD: usize = 6;
/// Largest atom pool for the exhaustive oracle corpus.
pub const CORPUS_GUARD: usize = 4;

/// Atom names used by generated programs, `q` first.
const POOL: [&str; 8] = ["q", "a", "b", "c", "d", "e", "f", "g"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_body: usize,
    pub allow_disjunction: bool,
    pub allow_double_negation: bool,
    pub seed: u64,
    pub count: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_atoms: 4,
            max_rules: 5,
            max_body: 3,
            allow_disjunction: true,
            allow_double_negation: true,
            seed: 1,
            count: 2000,
        }
    }
}

/// Every worked example, paired with a short name. All of them forget `q`.
pub fn golden_corpus() -> Vec<(&'static str, Program)> {
    const GOLDEN: [(&str, &str); 14] = [
        ("ex1", "t :- q. v :- not q. q :- s. q :- w."),
        ("ex2", "v :- not q. q :- s, t. q | u :- w."),
        ("ex3", "q :- s, t. q | u :- w."),
        ("ex4", "q :- not not q. a :- q."),
        ("ex5", "q :- not not q. u :- q. s :- q. t :- not q."),
        ("intro", "d :- not c. a :- q. q :- b."),
        ("closing", "q :- s. q | u :- r. t :- q. v :- not q."),
        ("distance-p1", "a :- b, not c."),
        ("distance-p2", "a :- not c. b :- d."),
        ("strong-weak", "p :- not q. p :- not p."),
        ("weak-fact", "q. p :- not q."),
        ("even-loop", "c :- not p. p :- not q. q :- not p."),
        ("showcase", "p :- not q. q :- not c."),
        ("horn-cycle", "a :- b. b :- a. q."),
    ];
    GOLDEN.iter().map(|(name, text)| (*name, parse_program(text).expect("golden program parses"))).collect()
}

fn random_rule(rng: &mut ChaCha8Rng, atoms: &[Atom], spec: &CorpusSpec) -> Rule {
    let max_head = if spec.allow_disjunction { 2 } else { 1 };
    // constraints are allowed but rarer than proper rules
    let head_len = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=max_head.min(atoms.len())) };
    let head: Vec<Atom> = atoms.choose_multiple(rng, head_len).copied().collect();
    let body_len = rng.gen_range(0..=spec.max_body.min(atoms.len()));
    let body = atoms.choose_multiple(rng, body_len).map(|&a| {
        let kinds = if spec.allow_double_negation { 3 } else { 2 };
        BodyLiteral::with_negations(a, rng.gen_range(0..kinds))
    });
    Rule::from_literals(head, body.collect::<Vec<_>>())
}

fn random_program(rng: &mut ChaCha8Rng, spec: &CorpusSpec) -> Program {
    let n_atoms = rng.gen_range(1..=spec.max_atoms.clamp(1, POOL.len()));
    let atoms: Vec<Atom> = POOL[..n_atoms].iter().map(|n| Atom::new(n)).collect();
    let n_rules = rng.gen_range(1..=spec.max_rules.max(1));
    let mut program = Program::new();
    for _ in 0..n_rules {
        program.insert(random_rule(rng, &atoms, spec));
    }
    // self-cycles on q are what makes forgetting hard; make sure they show up
    if spec.allow_double_negation && program.len() < spec.max_rules && rng.gen_bool(0.2) {
        program.insert(Rule::from_literals([atoms[0]], [BodyLiteral::naf_naf(atoms[0])]));
    }
    program
}

/// The golden examples followed by `spec.count` random programs.
pub fn generate_corpus(spec: &CorpusSpec) -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out: Vec<Program> = golden_corpus().into_iter().map(|(_, p)| p).collect();
    out.extend((0..spec.count).map(|_| random_program(&mut rng, spec)));
    out
}

/// Context programs over `sigma`.
///
/// * depth 0: every set of facts;
/// * depth 1: additionally every single rule with at most one head atom and
///   at most two body literals of the forms `a` and `not a`;
/// * depth 2: additionally every pair of such rules.
pub fn enumerate_contexts(sigma: &AtomSet, depth: usize) -> Result<Vec<Program>> {
    if sigma.len() > SP_GUARD {
        return Err(Error::LimitExceeded { atoms: sigma.len(), limit: SP_GUARD });
    }
    let atoms: Vec<Atom> = sigma.iter().copied().collect();
    let full = if atoms.is_empty() { 0 } else { u64::MAX >> (64 - atoms.len()) };
    let decode = |m: u64| atoms.iter().enumerate().filter(move |(i, _)| m >> i & 1 == 1).map(|(_, &a)| a);
    let mut out: Vec<Program> =
        subsets(full).map(|m| decode(m).map(|a| Rule::new([a], [], [], [])).collect()).collect();
    if depth == 0 {
        return Ok(out);
    }

    let literals: Vec<BodyLiteral> =
        atoms.iter().flat_map(|&a| [BodyLiteral::pos(a), BodyLiteral::naf(a)]).collect();
    let mut bodies: Vec<Vec<BodyLiteral>> = vec![vec![]];
    bodies.extend(literals.iter().map(|&l| vec![l]));
    for (i, &l1) in literals.iter().enumerate() {
        for &l2 in &literals[i + 1..] {
            if l1.atom != l2.atom {
                bodies.push(vec![l1, l2]);
            }
        }
    }
    let heads: Vec<Option<Atom>> = std::iter::once(None).chain(atoms.iter().copied().map(Some)).collect();
    let mut singles = Vec::new();
    for head in &heads {
        for body in &bodies {
            // bare facts are already covered, the empty constraint is trivially inconsistent
            if body.is_empty() {
                continue;
            }
            let rule = Rule::from_literals(head.iter().copied(), body.iter().copied());
            if !rule.is_tautological() {
                singles.push(rule);
            }
        }
    }
    out.extend(singles.iter().map(|r| std::iter::once(r.clone()).collect::<Program>()));
    if depth >= 2 {
        for (i, r1) in singles.iter().enumerate() {
            for r2 in &singles[i + 1..] {
                out.push([r1.clone(), r2.clone()].into_iter().collect());
            }
        }
    }
    Ok(out)
}

/// One context on which the comparison failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpFailure {
    pub context: String,
    /// AS(P ∪ R) with `q` removed.
    pub expected: Vec<Vec<String>>,
    /// AS(forget(P, q) ∪ R).
    pub actual: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpReport {
    pub program: String,
    pub atom: String,
    pub omega: bool,
    /// "SP" when equality is demanded, "wSP" when only inclusion is.
    pub mode: &'static str,
    pub contexts_checked: usize,
    pub failures: Vec<SpFailure>,
    /// Contexts where the result has answer sets beyond the expected ones.
    /// Only possible, and allowed, in wSP mode.
    pub surplus: Vec<SpFailure>,
}

impl SpReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn names(sets: &BTreeSet<AtomSet>) -> Vec<Vec<String>> {
    sets.iter().map(|s| s.iter().map(|a| a.to_string()).collect()).collect()
}

/// Compares answer sets of `P ∪ R` (minus `q`) and `forget(P,q) ∪ R` for
/// every enumerated context `R` over `Σ(P)∖{q}`.
pub fn verify_sp(program: &Program, q: Atom, depth: usize) -> Result<SpReport> {
    verify_sp_with_limit(program, q, depth, SP_GUARD)
}

/// [`verify_sp`] with an explicit signature ceiling, for callers that accept
/// the exponential cost of larger instances.
pub fn verify_sp_with_limit(program: &Program, q: Atom, depth: usize, limit: usize) -> Result<SpReport> {
    let sigma = program.signature();
    if sigma.len() > limit {
        return Err(Error::LimitExceeded { atoms: sigma.len(), limit });
    }
    let qs: AtomSet = [q].into();
    let kept: AtomSet = sigma.difference(&qs).copied().collect();
    let omega = satisfies_omega(program, &qs)?.satisfied;
    let result = forget(program, q);
    let contexts = if kept.len() > SP_GUARD {
        enumerate_contexts(&AtomSet::new(), depth)?
    } else {
        enumerate_contexts(&kept, depth)?
    };
    let mut report = SpReport {
        program: program.to_string(),
        atom: q.to_string(),
        omega,
        mode: if omega { "wSP" } else { "SP" },
        contexts_checked: contexts.len(),
        failures: Vec::new(),
        surplus: Vec::new(),
    };
    for r in &contexts {
        let expected = answer_sets(&program.union(r))?.v_exclusion(&qs);
        let actual = answer_sets(&result.union(r))?;
        let entry = || SpFailure { context: r.to_string(), expected: names(&expected), actual: names(&actual) };
        let ok = if omega { expected.is_subset(&actual) } else { expected == actual };
        if !ok {
            report.failures.push(entry());
        } else if expected != actual {
            report.surplus.push(entry());
        }
    }
    Ok(report)
}

/// HT-models of `forget(P,q)` over `Σ(P)∖{q}` equal the semantic target.
pub fn check_oracle(program: &Program, q: Atom) -> Result<bool> {
    let qs: AtomSet = [q].into();
    let target = fsp_target_models(program, &qs)?;
    let got = ht_models(&forget(program, q), target.signature())?;
    Ok(got == target)
}

/// Runs `verify_sp` on every corpus program in parallel; reports keep the
/// corpus order.
pub fn verify_corpus(corpus: &[Program], q: Atom, depth: usize) -> Result<Vec<SpReport>> {
    corpus.par_iter().map(|p| verify_sp(p, q, depth)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::atom_set;

    #[test]
    fn golden_only_and_determinism() {
        let spec = CorpusSpec { count: 0, ..CorpusSpec::default() };
        assert_eq!(generate_corpus(&spec).len(), golden_corpus().len());
        let spec = CorpusSpec { count: 50, ..CorpusSpec::default() };
        assert_eq!(generate_corpus(&spec), generate_corpus(&spec));
        let other = CorpusSpec { seed: 2, ..spec.clone() };
        assert_ne!(generate_corpus(&spec), generate_corpus(&other));
    }

    #[test]
    fn respects_spec() {
        let spec = CorpusSpec { count: 300, allow_disjunction: false, allow_double_negation: false, ..Default::default() };
        let n_golden = golden_corpus().len();
        for p in &generate_corpus(&spec)[n_golden..] {
            assert!(p.len() <= spec.max_rules);
            assert!(p.signature().len() <= spec.max_atoms);
            for r in p {
                assert!(r.head().len() <= 1);
                assert!(r.nneg().is_empty());
                assert!(r.body_len() <= spec.max_body);
            }
        }
    }

    #[test]
    fn context_counts() {
        let c = enumerate_contexts(&atom_set(["c"]), 0).unwrap();
        assert_eq!(c, vec![Program::new(), parse_program("c.").unwrap()]);
        assert_eq!(enumerate_contexts(&atom_set(["a", "b"]), 0).unwrap().len(), 4);
        let d1 = enumerate_contexts(&atom_set(["a", "b"]), 1).unwrap();
        let d2 = enumerate_contexts(&atom_set(["a", "b"]), 2).unwrap();
        assert!(d1.len() > 4 && d2.len() > d1.len());
        let ctx = enumerate_contexts(&atom_set(["s", "t", "u"]), 0).unwrap();
        assert!(ctx.contains(&parse_program("t.").unwrap()));
        assert!(ctx.contains(&parse_program("u. s.").unwrap()));
        assert!(enumerate_contexts(&atom_set(POOL[..7].iter().copied()), 0).is_err());
    }

    #[test]
    fn sp_examples() {
        let q = Atom::new("q");
        let ex1 = parse_program("t :- q. v :- not q. q :- s. q :- w.").unwrap();
        let r = verify_sp(&ex1, q, 1).unwrap();
        assert!(!r.omega && r.passed() && r.surplus.is_empty(), "{r:?}");

        let ex4 = parse_program("q :- not not q. a :- q.").unwrap();
        assert!(verify_sp(&ex4, q, 1).unwrap().passed());

        let ex5 = parse_program("q :- not not q. u :- q. s :- q. t :- not q.").unwrap();
        let r = verify_sp(&ex5, q, 0).unwrap();
        assert!(r.omega && r.passed());
        let empty = r.surplus.iter().find(|f| f.context.is_empty()).expect("surplus at R = ∅");
        assert!(empty.actual.contains(&vec!["s".to_string(), "t".into(), "u".into()]));
        assert!(!empty.expected.contains(&vec!["s".to_string(), "t".into(), "u".into()]));
    }

    #[test]
    fn oracle_on_golden() {
        for (name, p) in golden_corpus() {
            assert!(check_oracle(&p, Atom::new("q")).unwrap(), "{name}");
        }
    }
}
