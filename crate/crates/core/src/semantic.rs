//! The semantic characterization of forgetting with strong persistence.
//!
//! For a program `P`, atoms `V` and a candidate `Y ⊆ Σ(P)∖V`:
//!
//! * `Rel^Y` collects the `A ⊆ V` such that `⟨Y∪A, Y∪A⟩` is an HT-model of
//!   `P` and no `A' ⊂ A` gives an HT-model `⟨Y∪A', Y∪A⟩`;
//! * `R^{Y,A}` collects `X∖V` for every HT-model `⟨X, Y∪A⟩` of `P`.
//!
//! The target HT-models of any strongly persistent forgetting result are the
//! pairs `⟨X,Y⟩` with `X` in every `R^{Y,A}` (and none at all when `Rel^Y`
//! is empty). Criterion Ω holds when some `Y` has a non-empty family of
//! `R^{Y,A}` without a ⊆-least member; exactly then no result can be
//! strongly persistent. [`f_sem`] turns the target models back into a
//! program with one rule per countermodel.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::ht::{check_limit, subsets, Compiled, HtInterpretation, HtModelSet, Signature};
use crate::program::{AtomSet, BodyLiteral, Program, Rule};

/// Masks for one forgetting instance over `Σ(P) ∪ V`.
struct Instance {
    sig: Signature,
    compiled: Compiled,
    /// Bits of V.
    forgotten: u64,
    /// Bits of Σ(P)∖V.
    kept: u64,
}

impl Instance {
    fn new(program: &Program, forgotten: &AtomSet) -> Result<Self> {
        let mut atoms = program.signature();
        atoms.extend(forgotten.iter().copied());
        check_limit(atoms.len())?;
        let sig = Signature::new(&atoms);
        let compiled = Compiled::new(program, &sig);
        let forgotten = sig.encode(forgotten);
        let kept = sig.full() & !forgotten;
        Ok(Instance { sig, compiled, forgotten, kept })
    }

    fn rel(&self, y: u64) -> Vec<u64> {
        subsets(self.forgotten)
            .filter(|&a| self.compiled.model(y | a, y | a))
            .filter(|&a| subsets(a).filter(|&b| b != a).all(|b| !self.compiled.model(y | b, y | a)))
            .collect()
    }

    /// R^{Y,A} as masks over the kept atoms.
    fn family(&self, y: u64, a: u64) -> BTreeSet<u64> {
        let there = y | a;
        subsets(there).filter(|&x| self.compiled.model(x, there)).map(|x| x & self.kept).collect()
    }

    /// ∩ R^{Y,A} over A ∈ Rel^Y; empty when Rel^Y is.
    fn target_here_worlds(&self, y: u64) -> BTreeSet<u64> {
        let mut acc: Option<BTreeSet<u64>> = None;
        for a in self.rel(y) {
            let fam = self.family(y, a);
            acc = Some(match acc {
                None => fam,
                Some(prev) => prev.intersection(&fam).copied().collect(),
            });
        }
        acc.unwrap_or_default()
    }

    fn kept_atoms(&self) -> AtomSet {
        self.sig.decode(self.kept)
    }
}

/// Rel^Y for a given `Y ⊆ Σ∖V`. Atoms of `Y` inside `V` are ignored.
pub fn rel_sets(program: &Program, forgotten: &AtomSet, y: &AtomSet) -> Result<BTreeSet<AtomSet>> {
    let inst = Instance::new(program, forgotten)?;
    let kept = inst.kept_atoms();
    let y = inst.sig.encode(y.intersection(&kept));
    Ok(inst.rel(y).into_iter().map(|a| inst.sig.decode(a)).collect())
}

/// The Ω data for one candidate `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaCandidate {
    pub y: AtomSet,
    pub rel: BTreeSet<AtomSet>,
    /// A ↦ R^{Y,A}, for A ∈ Rel^Y.
    pub families: BTreeMap<AtomSet, BTreeSet<AtomSet>>,
    pub has_least: bool,
}

/// Outcome of checking criterion Ω, with every `Y` whose Rel^Y is non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub forgotten: AtomSet,
    pub candidates: Vec<OmegaCandidate>,
    pub satisfied: bool,
    /// The first `Y` (in mask order) whose family has no least element.
    pub witness: Option<AtomSet>,
}

impl OmegaReport {
    pub fn witness_candidate(&self) -> Option<&OmegaCandidate> {
        let w = self.witness.as_ref()?;
        self.candidates.iter().find(|c| &c.y == w)
    }
}

/// Exhaustively decides criterion Ω for `⟨P, V⟩`.
pub fn satisfies_omega(program: &Program, forgotten: &AtomSet) -> Result<OmegaReport> {
    let inst = Instance::new(program, forgotten)?;
    let mut candidates = Vec::new();
    let mut witness = None;
    for y in subsets(inst.kept) {
        let rel = inst.rel(y);
        if rel.is_empty() {
            continue;
        }
        let fams: Vec<(u64, BTreeSet<u64>)> = rel.iter().map(|&a| (a, inst.family(y, a))).collect();
        let has_least = fams.iter().any(|(_, f)| fams.iter().all(|(_, g)| f.is_subset(g)));
        if !has_least && witness.is_none() {
            witness = Some(inst.sig.decode(y));
        }
        candidates.push(OmegaCandidate {
            y: inst.sig.decode(y),
            rel: rel.iter().map(|&a| inst.sig.decode(a)).collect(),
            families: fams
                .into_iter()
                .map(|(a, f)| (inst.sig.decode(a), f.into_iter().map(|x| inst.sig.decode(x)).collect()))
                .collect(),
            has_least,
        });
    }
    Ok(OmegaReport { forgotten: forgotten.clone(), candidates, satisfied: witness.is_some(), witness })
}

/// The HT-models, over `Σ(P)∖V`, shared by every strongly persistent
/// forgetting result of `⟨P, V⟩`.
pub fn fsp_target_models(program: &Program, forgotten: &AtomSet) -> Result<HtModelSet> {
    let inst = Instance::new(program, forgotten)?;
    let mut models = BTreeSet::new();
    for y in subsets(inst.kept) {
        let there = inst.sig.decode(y);
        for x in inst.target_here_worlds(y) {
            models.insert(HtInterpretation { here: inst.sig.decode(x), there: there.clone() });
        }
    }
    Ok(HtModelSet::new(inst.kept_atoms(), models))
}

/// Counter-model construction over `Σ' = Σ(P)∖V`:
///
/// * `(Y∖X) ← X, not (Σ'∖Y), not not (Y∖X)` for every non-target `⟨X,Y⟩`
///   whose `⟨Y,Y⟩` is a target model;
/// * `← Y, not (Σ'∖Y)` for every `Y` with `⟨Y,Y⟩` not a target model.
///
/// No normalization is applied.
pub fn f_sem(program: &Program, forgotten: &AtomSet) -> Result<Program> {
    let inst = Instance::new(program, forgotten)?;
    let sig = &inst.sig;
    let mut out = Program::new();
    for y in subsets(inst.kept) {
        let here_worlds = inst.target_here_worlds(y);
        let outside = sig.decode(inst.kept & !y);
        if !here_worlds.contains(&y) {
            out.insert(Rule::new([], sig.decode(y), outside, []));
            continue;
        }
        for x in subsets(y).filter(|x| !here_worlds.contains(x)) {
            let gap = sig.decode(y & !x);
            out.insert(Rule::new(gap.clone(), sig.decode(x), outside.clone(), gap));
        }
    }
    Ok(out.widened(inst.kept_atoms()))
}

/// Literals of a counter-model rule, for display and size checks.
pub fn countermodel_rule(here: &AtomSet, there: &AtomSet, signature: &AtomSet) -> Rule {
    let outside = signature.difference(there).copied();
    if here == there {
        return Rule::new([], there.iter().copied(), outside, []);
    }
    let gap: AtomSet = there.difference(here).copied().collect();
    let body = here
        .iter()
        .map(|&a| BodyLiteral::pos(a))
        .chain(outside.map(BodyLiteral::naf))
        .chain(gap.iter().map(|&a| BodyLiteral::naf_naf(a)));
    Rule::from_literals(gap.iter().copied(), body)
}
