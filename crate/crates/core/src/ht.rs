//! Brute-force here-and-there semantics.
//!
//! These functions enumerate interpretations directly, so they cost
//! `O(3^n)` in the signature size `n`. They are meant as oracles for small
//! programs; a process-wide ceiling ([`max_atoms`]) turns oversized inputs
//! into [`Error::LimitExceeded`] instead of a hang.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::program::{Atom, AtomSet, Program, Rule};

pub const DEFAULT_MAX_ATOMS: usize = 12;

/// Hard cap imposed by the 64-bit masks.
const MASK_BITS: usize = 63;

static MAX_ATOMS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ATOMS);

/// Current enumeration ceiling.
pub fn max_atoms() -> usize {
    MAX_ATOMS.load(Ordering::Relaxed)
}

/// Sets the enumeration ceiling for every oracle in the process.
pub fn set_max_atoms(limit: usize) {
    MAX_ATOMS.store(limit.min(MASK_BITS), Ordering::Relaxed);
}

pub(crate) fn check_limit(atoms: usize) -> Result<()> {
    let limit = max_atoms();
    if atoms > limit {
        Err(Error::LimitExceeded { atoms, limit })
    } else {
        Ok(())
    }
}

/// An HT-interpretation ⟨X,Y⟩ with X ⊆ Y.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HtInterpretation {
    /// X, the "here" world.
    pub here: AtomSet,
    /// Y, the "there" world.
    pub there: AtomSet,
}

impl HtInterpretation {
    /// Panics unless `here ⊆ there`.
    pub fn new(here: AtomSet, there: AtomSet) -> Self {
        assert!(here.is_subset(&there), "here world must be contained in there world");
        HtInterpretation { here, there }
    }

    pub fn total(y: AtomSet) -> Self {
        HtInterpretation { here: y.clone(), there: y }
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }
}

/// A set of HT-interpretations over a shared signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtModelSet {
    signature: AtomSet,
    models: BTreeSet<HtInterpretation>,
}

impl HtModelSet {
    /// Panics if a member mentions an atom outside `signature`.
    pub fn new(signature: AtomSet, models: BTreeSet<HtInterpretation>) -> Self {
        assert!(models.iter().all(|m| m.there.is_subset(&signature)));
        HtModelSet { signature, models }
    }

    pub fn signature(&self) -> &AtomSet {
        &self.signature
    }

    pub fn models(&self) -> &BTreeSet<HtInterpretation> {
        &self.models
    }

    pub fn iter(&self) -> impl Iterator<Item = &HtInterpretation> + '_ {
        self.models.iter()
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn contains(&self, here: &AtomSet, there: &AtomSet) -> bool {
        self.models.contains(&HtInterpretation { here: here.clone(), there: there.clone() })
    }

    /// Interpretations over the signature that are not in the set.
    pub fn countermodels(&self) -> BTreeSet<HtInterpretation> {
        let sig = Signature::new(&self.signature);
        let mut out = BTreeSet::new();
        for y in subsets(sig.full()) {
            for x in subsets(y) {
                let m = HtInterpretation { here: sig.decode(x), there: sig.decode(y) };
                if !self.models.contains(&m) {
                    out.insert(m);
                }
            }
        }
        out
    }
}

/// Removing a set of atoms from every member (V-exclusion).
pub trait VExclusion {
    fn v_exclusion(&self, v: &AtomSet) -> Self;
}

impl VExclusion for BTreeSet<AtomSet> {
    fn v_exclusion(&self, v: &AtomSet) -> Self {
        self.iter().map(|s| s.difference(v).copied().collect()).collect()
    }
}

impl VExclusion for HtModelSet {
    fn v_exclusion(&self, v: &AtomSet) -> Self {
        HtModelSet {
            signature: self.signature.difference(v).copied().collect(),
            models: self
                .models
                .iter()
                .map(|m| HtInterpretation {
                    here: m.here.difference(v).copied().collect(),
                    there: m.there.difference(v).copied().collect(),
                })
                .collect(),
        }
    }
}

/// Bit positions for an ordered signature.
#[derive(Clone, Debug)]
pub(crate) struct Signature {
    atoms: Vec<Atom>,
    index: BTreeMap<Atom, usize>,
}

impl Signature {
    pub(crate) fn new(atoms: &AtomSet) -> Self {
        let atoms: Vec<Atom> = atoms.iter().copied().collect();
        let index = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Signature { atoms, index }
    }

    pub(crate) fn full(&self) -> u64 {
        if self.atoms.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.atoms.len())
        }
    }

    pub(crate) fn encode<'a>(&self, atoms: impl IntoIterator<Item = &'a Atom>) -> u64 {
        atoms.into_iter().fold(0, |m, a| m | 1 << self.index[a])
    }

    pub(crate) fn decode(&self, mask: u64) -> AtomSet {
        self.atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).collect()
    }
}

/// Every submask of `mask`, in increasing numeric order.
pub(crate) fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

#[derive(Clone, Copy, Debug)]
struct MaskRule {
    head: u64,
    pos: u64,
    neg: u64,
    nneg: u64,
}

/// A program compiled to bitmasks over a fixed signature.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    rules: Vec<MaskRule>,
}

impl Compiled {
    pub(crate) fn new(program: &Program, sig: &Signature) -> Self {
        let rules = program
            .rules()
            .map(|r: &Rule| MaskRule {
                head: sig.encode(r.head()),
                pos: sig.encode(r.pos()),
                neg: sig.encode(r.neg()),
                nneg: sig.encode(r.nneg()),
            })
            .collect();
        Compiled { rules }
    }

    /// Y ⊨ P classically.
    pub(crate) fn total(&self, y: u64) -> bool {
        self.rules.iter().all(|r| {
            let body = r.pos & !y == 0 && r.neg & y == 0 && r.nneg & !y == 0;
            !body || r.head & y != 0
        })
    }

    /// X ⊨ P^Y.
    pub(crate) fn reduct(&self, x: u64, y: u64) -> bool {
        self.rules.iter().all(|r| {
            let kept = r.neg & y == 0 && r.nneg & !y == 0;
            !kept || r.pos & !x != 0 || r.head & x != 0
        })
    }

    /// ⟨X,Y⟩ ⊨ P, assuming X ⊆ Y.
    pub(crate) fn model(&self, x: u64, y: u64) -> bool {
        self.total(y) && self.reduct(x, y)
    }

    /// Y is an answer set: a total model with no smaller here-world.
    pub(crate) fn answer_set(&self, y: u64) -> bool {
        self.total(y) && subsets(y).filter(|&x| x != y).all(|x| !self.reduct(x, y))
    }
}

/// P^I = { H(r) ← B+(r) : B-(r) ∩ I = ∅, B--(r) ⊆ I }.
pub fn reduct(program: &Program, interpretation: &AtomSet) -> Program {
    program
        .rules()
        .filter(|r| r.neg().is_disjoint(interpretation) && r.nneg().is_subset(interpretation))
        .map(|r| Rule::new(r.head().iter().copied(), r.pos().iter().copied(), [], []))
        .collect()
}

fn covering_signature(program: &Program, signature: &AtomSet) -> Result<Signature> {
    let missing: Vec<String> =
        program.signature().difference(signature).map(|a| a.to_string()).collect();
    if !missing.is_empty() {
        return Err(Error::SignatureTooSmall(missing.join(", ")));
    }
    check_limit(signature.len())?;
    Ok(Signature::new(signature))
}

/// HT(P) over `signature`, which must contain Σ(P).
pub fn ht_models(program: &Program, signature: &AtomSet) -> Result<HtModelSet> {
    let sig = covering_signature(program, signature)?;
    let compiled = Compiled::new(program, &sig);
    let mut models = BTreeSet::new();
    for y in subsets(sig.full()).filter(|&y| compiled.total(y)) {
        let there = sig.decode(y);
        for x in subsets(y).filter(|&x| compiled.reduct(x, y)) {
            models.insert(HtInterpretation { here: sig.decode(x), there: there.clone() });
        }
    }
    Ok(HtModelSet { signature: signature.clone(), models })
}

/// HT(P) over Σ(P).
pub fn ht_models_of(program: &Program) -> Result<HtModelSet> {
    ht_models(program, &program.signature())
}

/// AS(P), computed over Σ(P).
pub fn answer_sets(program: &Program) -> Result<BTreeSet<AtomSet>> {
    let signature = program.signature();
    let sig = covering_signature(program, &signature)?;
    let compiled = Compiled::new(program, &sig);
    Ok(subsets(sig.full()).filter(|&y| compiled.answer_set(y)).map(|y| sig.decode(y)).collect())
}

/// Same answer sets.
pub fn equivalent(p1: &Program, p2: &Program) -> Result<bool> {
    Ok(answer_sets(p1)? == answer_sets(p2)?)
}

/// HT(P1) = HT(P2) over Σ(P1) ∪ Σ(P2).
pub fn strongly_equivalent(p1: &Program, p2: &Program) -> Result<bool> {
    let mut signature = p1.signature();
    signature.extend(p2.signature());
    strongly_equivalent_over(p1, p2, &signature)
}

/// HT(P1) = HT(P2) over an explicit common signature.
pub fn strongly_equivalent_over(p1: &Program, p2: &Program, signature: &AtomSet) -> Result<bool> {
    let sig1 = covering_signature(p1, signature)?;
    covering_signature(p2, signature)?;
    let (c1, c2) = (Compiled::new(p1, &sig1), Compiled::new(p2, &sig1));
    for y in subsets(sig1.full()) {
        if c1.total(y) != c2.total(y) {
            return Ok(false);
        }
        if c1.total(y) && subsets(y).any(|x| c1.reduct(x, y) != c2.reduct(x, y)) {
            return Ok(false);
        }
    }
    Ok(true)
}
