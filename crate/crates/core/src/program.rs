//! Atoms, body literals, rules and programs.
//!
//! A rule is written `H ← B+, not B-, not not B--` and is stored as four
//! duplicate-free atom sets. A program is a set of rules, so structurally
//! equal rules collapse. Everything here is immutable once built.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::error::Error;

/// An interned propositional atom.
///
/// Two atoms are equal exactly when they were interned from the same name.
/// Ordering is lexicographic on the name, which keeps every printed set
/// deterministic regardless of interning order.
#[derive(Clone, Copy)]
pub struct Atom(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashSet::new()))
}

/// Returns true if `name` is a legal atom: `[a-z][A-Za-z0-9_]*` and not `not`.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    name != "not" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Atom {
    /// Interns `name`.
    ///
    /// Panics if `name` is not a legal atom name; use [`Atom::try_new`] for
    /// untrusted input.
    pub fn new(name: &str) -> Atom {
        Atom::try_new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(name: &str) -> Result<Atom, Error> {
        if !is_valid_atom_name(name) {
            return Err(Error::InvalidAtom(name.to_string()));
        }
        let mut table = interner().lock().unwrap_or_else(|p| p.into_inner());
        if let Some(existing) = table.get(name) {
            return Ok(Atom(existing));
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        table.insert(leaked);
        Ok(Atom(leaked))
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0.as_ptr(), other.0.as_ptr())
    }
}

impl Eq for Atom {}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state);
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            std::cmp::Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A set of atoms, ordered by name.
pub type AtomSet = BTreeSet<Atom>;

/// Interns every name in `names`. Panics on an illegal name.
pub fn atom_set<'a>(names: impl IntoIterator<Item = &'a str>) -> AtomSet {
    names.into_iter().map(Atom::new).collect()
}

/// How an atom occurs in a rule body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralKind {
    Pos,
    Naf,
    NafNaf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BodyLiteral {
    pub kind: LiteralKind,
    pub atom: Atom,
}

impl BodyLiteral {
    pub fn pos(atom: Atom) -> Self {
        BodyLiteral { kind: LiteralKind::Pos, atom }
    }

    pub fn naf(atom: Atom) -> Self {
        BodyLiteral { kind: LiteralKind::Naf, atom }
    }

    pub fn naf_naf(atom: Atom) -> Self {
        BodyLiteral { kind: LiteralKind::NafNaf, atom }
    }

    /// `atom` under `depth` default negations, with `not not not p = not p`.
    pub fn with_negations(atom: Atom, depth: usize) -> Self {
        match depth {
            0 => Self::pos(atom),
            d if d % 2 == 1 => Self::naf(atom),
            _ => Self::naf_naf(atom),
        }
    }

    /// Prefixes one `not`.
    pub fn negate(self) -> Self {
        let kind = match self.kind {
            LiteralKind::Pos => LiteralKind::Naf,
            LiteralKind::Naf => LiteralKind::NafNaf,
            LiteralKind::NafNaf => LiteralKind::Naf,
        };
        BodyLiteral { kind, atom: self.atom }
    }

    /// Prefixes `not not`.
    pub fn double_negate(self) -> Self {
        self.negate().negate()
    }
}

impl fmt::Display for BodyLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LiteralKind::Pos => write!(f, "{}", self.atom),
            LiteralKind::Naf => write!(f, "not {}", self.atom),
            LiteralKind::NafNaf => write!(f, "not not {}", self.atom),
        }
    }
}

/// `not(S)` applied literal-wise.
pub fn negate_all(lits: impl IntoIterator<Item = BodyLiteral>) -> impl Iterator<Item = BodyLiteral> {
    lits.into_iter().map(BodyLiteral::negate)
}

/// `not not(S)` applied literal-wise.
pub fn double_negate_all(
    lits: impl IntoIterator<Item = BodyLiteral>,
) -> impl Iterator<Item = BodyLiteral> {
    lits.into_iter().map(BodyLiteral::double_negate)
}

/// A disjunctive rule with default and double default negation.
///
/// An empty head makes the rule a constraint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    head: AtomSet,
    pos: AtomSet,
    neg: AtomSet,
    nneg: AtomSet,
}

impl Rule {
    pub fn new(
        head: impl IntoIterator<Item = Atom>,
        pos: impl IntoIterator<Item = Atom>,
        neg: impl IntoIterator<Item = Atom>,
        nneg: impl IntoIterator<Item = Atom>,
    ) -> Self {
        Rule {
            head: head.into_iter().collect(),
            pos: pos.into_iter().collect(),
            neg: neg.into_iter().collect(),
            nneg: nneg.into_iter().collect(),
        }
    }

    /// Builds a rule from a head and an arbitrary collection of body literals.
    pub fn from_literals(
        head: impl IntoIterator<Item = Atom>,
        body: impl IntoIterator<Item = BodyLiteral>,
    ) -> Self {
        let mut rule = Rule { head: head.into_iter().collect(), ..Rule::default() };
        for lit in body {
            rule.body_set_mut(lit.kind).insert(lit.atom);
        }
        rule
    }

    fn body_set_mut(&mut self, kind: LiteralKind) -> &mut AtomSet {
        match kind {
            LiteralKind::Pos => &mut self.pos,
            LiteralKind::Naf => &mut self.neg,
            LiteralKind::NafNaf => &mut self.nneg,
        }
    }

    pub fn head(&self) -> &AtomSet {
        &self.head
    }

    pub fn pos(&self) -> &AtomSet {
        &self.pos
    }

    pub fn neg(&self) -> &AtomSet {
        &self.neg
    }

    pub fn nneg(&self) -> &AtomSet {
        &self.nneg
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.body_len() == 0
    }

    pub fn body_len(&self) -> usize {
        self.pos.len() + self.neg.len() + self.nneg.len()
    }

    /// Iterates B(r) in canonical order: positives, then `not`, then `not not`.
    pub fn body_literals(&self) -> impl Iterator<Item = BodyLiteral> + '_ {
        self.pos
            .iter()
            .map(|&a| BodyLiteral::pos(a))
            .chain(self.neg.iter().map(|&a| BodyLiteral::naf(a)))
            .chain(self.nneg.iter().map(|&a| BodyLiteral::naf_naf(a)))
    }

    pub fn body(&self) -> BTreeSet<BodyLiteral> {
        self.body_literals().collect()
    }

    /// Σ(r).
    pub fn atoms(&self) -> AtomSet {
        self.head
            .iter()
            .chain(&self.pos)
            .chain(&self.neg)
            .chain(&self.nneg)
            .copied()
            .collect()
    }

    pub fn mentions(&self, a: Atom) -> bool {
        self.head.contains(&a) || self.pos.contains(&a) || self.neg.contains(&a) || self.nneg.contains(&a)
    }

    /// H(r) with `q` removed.
    pub fn head_without(&self, q: Atom) -> AtomSet {
        self.head.iter().copied().filter(|&a| a != q).collect()
    }

    /// B(r) with every literal over `q` removed.
    pub fn body_without(&self, q: Atom) -> BTreeSet<BodyLiteral> {
        self.body_literals().filter(|l| l.atom != q).collect()
    }

    /// |H(r)| + |B(r)|.
    pub fn size(&self) -> usize {
        self.head.len() + self.body_len()
    }

    /// A rule is tautological when H∩B+, B+∩B- or B-∩B-- is non-empty.
    pub fn is_tautological(&self) -> bool {
        !self.head.is_disjoint(&self.pos)
            || !self.pos.is_disjoint(&self.neg)
            || !self.neg.is_disjoint(&self.nneg)
    }

    /// True if `self` strictly subsumes `other`: H(self) ⊆ H(other) and
    /// B(self) ⊆ B(other) with at least one inclusion strict.
    pub fn strictly_subsumes(&self, other: &Rule) -> bool {
        let head_sub = self.head.is_subset(&other.head);
        let body_sub = self.pos.is_subset(&other.pos)
            && self.neg.is_subset(&other.neg)
            && self.nneg.is_subset(&other.nneg);
        head_sub && body_sub && self != other
    }

    /// True if no rule of `program` strictly subsumes this one.
    pub fn is_minimal_in(&self, program: &Program) -> bool {
        program.subsumer_of(self).is_none()
    }

    pub(crate) fn map_parts(
        &self,
        f: impl Fn(&AtomSet, &AtomSet, &AtomSet, &AtomSet) -> (AtomSet, AtomSet, AtomSet, AtomSet),
    ) -> Rule {
        let (head, pos, neg, nneg) = f(&self.head, &self.pos, &self.neg, &self.nneg);
        Rule { head, pos, neg, nneg }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.head {
            if !first {
                f.write_str(" | ")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if self.body_len() == 0 {
            return f.write_str(".");
        }
        if self.head.is_empty() {
            f.write_str(":- ")?;
        } else {
            f.write_str(" :- ")?;
        }
        let mut first = true;
        for lit in self.body_literals() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{lit}")?;
            first = false;
        }
        f.write_str(".")
    }
}

impl serde::Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite set of rules over an (optionally widened) signature.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Program {
    rules: BTreeSet<Rule>,
    extra: AtomSet,
}

impl Program {
    pub fn new() -> Self {
        Program::default()
    }

    pub fn insert(&mut self, rule: Rule) -> bool {
        self.rules.insert(rule)
    }

    pub fn remove(&mut self, rule: &Rule) -> bool {
        self.rules.remove(rule)
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Σ(P): every atom mentioned by a rule plus any explicit widening.
    pub fn signature(&self) -> AtomSet {
        let mut sig = self.extra.clone();
        for r in &self.rules {
            sig.extend(r.atoms());
        }
        sig
    }

    /// Widens the signature to include `atoms`.
    pub fn widened(mut self, atoms: impl IntoIterator<Item = Atom>) -> Self {
        self.extra.extend(atoms);
        self
    }

    /// The explicitly added part of the signature.
    pub fn widening(&self) -> &AtomSet {
        &self.extra
    }

    /// Rule-set union; widenings are merged.
    pub fn union(&self, other: &Program) -> Program {
        let mut out = self.clone();
        out.rules.extend(other.rules.iter().cloned());
        out.extra.extend(other.extra.iter().copied());
        out
    }

    /// Returns some rule of this program that strictly subsumes `rule`.
    pub fn subsumer_of(&self, rule: &Rule) -> Option<&Rule> {
        self.rules.iter().find(|r| r.strictly_subsumes(rule))
    }

    /// Sum of rule sizes.
    pub fn size(&self) -> usize {
        self.rules.iter().map(Rule::size).sum()
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program { rules: iter.into_iter().collect(), extra: AtomSet::new() }
    }
}

impl Extend<Rule> for Program {
    fn extend<I: IntoIterator<Item = Rule>>(&mut self, iter: I) {
        self.rules.extend(iter);
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::collections::btree_set::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

/// Canonical text: one rule per line, lines sorted.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines: Vec<String> = self.rules.iter().map(Rule::to_string).collect();
        lines.sort();
        for line in lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
