//! The syntactic forgetting operator.
//!
//! `forget(P, q)` normalizes `P`, sorts its rules by how `q` occurs in them
//! and rewrites only the rules that mention `q`:
//!
//! | set     | occurrence of `q`                    |
//! |---------|--------------------------------------|
//! | `plain` | none                                 |
//! | `r0`    | `q` in the body                      |
//! | `r1`    | `not q` in the body                  |
//! | `r2`    | `not not q` in the body, not in head |
//! | `r3`    | `not not q` in the body and in head  |
//! | `r4`    | in the head, no `not not q` in body  |
//!
//! Rules of `plain` are copied unchanged. The others feed the derivation
//! families 1a–7 below; the union is normalized once more at the end.
//! Rules of `r3` are the self-cycles on `q`; when there are none, or `q`
//! is a fact, or `q` only occurs in self-cycles, the program is
//! *q-forgettable* and families 1a, 1b and 4 alone give the same result
//! ([`forget_fast`]).

use std::collections::BTreeSet;
use std::fmt;

use crate::dual::as_dual;
use crate::error::{Error, Result};
use crate::normal::{is_normal_form, normal_form, normal_form_violation};
use crate::program::{double_negate_all, negate_all, Atom, AtomSet, BodyLiteral, Program, Rule};

/// The six-way split of a normal-form program by occurrences of `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub plain: BTreeSet<Rule>,
    pub r0: BTreeSet<Rule>,
    pub r1: BTreeSet<Rule>,
    pub r2: BTreeSet<Rule>,
    pub r3: BTreeSet<Rule>,
    pub r4: BTreeSet<Rule>,
}

/// Splits a normal-form program. Rejects programs that are not in normal
/// form, where the six sets would overlap.
pub fn partition(program: &Program, q: Atom) -> Result<Partition> {
    if let Some(why) = normal_form_violation(program) {
        return Err(Error::NotNormalForm(why));
    }
    let mut part = Partition::default();
    for r in program {
        let set = if !r.mentions(q) {
            &mut part.plain
        } else if r.pos().contains(&q) {
            &mut part.r0
        } else if r.neg().contains(&q) {
            &mut part.r1
        } else if r.nneg().contains(&q) {
            if r.head().contains(&q) {
                &mut part.r3
            } else {
                &mut part.r2
            }
        } else {
            &mut part.r4
        };
        set.insert(r.clone());
    }
    Ok(part)
}

/// Which derivation produced a rule of the pre-normalization result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Derivation {
    /// Copied from the q-free part.
    Plain,
    D1a,
    D2a,
    D3a,
    D1b,
    D2b,
    D3b,
    D4,
    D5,
    D6,
    D7,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Derivation::Plain => "R",
            Derivation::D1a => "1a",
            Derivation::D2a => "2a",
            Derivation::D3a => "3a",
            Derivation::D1b => "1b",
            Derivation::D2b => "2b",
            Derivation::D3b => "3b",
            Derivation::D4 => "4",
            Derivation::D5 => "5",
            Derivation::D6 => "6",
            Derivation::D7 => "7",
        };
        f.write_str(tag)
    }
}

/// One generated rule with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: Rule,
    pub derivation: Derivation,
    /// Source rules in the order the family names them.
    pub sources: Vec<Rule>,
    /// The chosen head atom `h(·)`, for families that pick one.
    pub head_choice: Option<Atom>,
    /// The chosen as-dual member, for families that pick one.
    pub blocker: Option<BTreeSet<BodyLiteral>>,
}

/// Everything generated before the closing normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForgetTrace {
    pub entries: Vec<TraceEntry>,
}

impl ForgetTrace {
    /// The generated rules, before normalization.
    pub fn generated(&self) -> Program {
        self.entries.iter().map(|e| e.rule.clone()).collect()
    }
}

impl fmt::Display for ForgetTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "[{}] {}", e.derivation, e.rule)?;
            let sources: Vec<String> = e.sources.iter().map(Rule::to_string).collect();
            if !sources.is_empty() {
                write!(f, "  from {}", sources.join(" ; "))?;
            }
            if let Some(h) = e.head_choice {
                write!(f, "  h={h}")?;
            }
            if let Some(d) = &e.blocker {
                let d: Vec<String> = d.iter().map(BodyLiteral::to_string).collect();
                write!(f, "  D={{{}}}", d.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Families {
    All,
    /// 1a, 1b and 4 only.
    Basic,
}

struct Builder {
    q: Atom,
    trace: ForgetTrace,
}

impl Builder {
    fn emit(
        &mut self,
        derivation: Derivation,
        head: AtomSet,
        body: BTreeSet<BodyLiteral>,
        sources: &[&Rule],
        head_choice: Option<Atom>,
        blocker: Option<&BTreeSet<BodyLiteral>>,
    ) {
        let rule = Rule::from_literals(head, body);
        debug_assert!(!rule.mentions(self.q), "generated rule mentions the forgotten atom: {rule}");
        self.trace.entries.push(TraceEntry {
            rule,
            derivation,
            sources: sources.iter().map(|r| (*r).clone()).collect(),
            head_choice,
            blocker: blocker.cloned(),
        });
    }
}

fn not_atoms(atoms: &AtomSet) -> impl Iterator<Item = BodyLiteral> + '_ {
    atoms.iter().map(|&a| BodyLiteral::naf(a))
}

fn union<T: Ord + Clone>(parts: impl IntoIterator<Item = BTreeSet<T>>) -> BTreeSet<T> {
    parts.into_iter().flatten().collect()
}

fn generate(nf: &Program, q: Atom, families: Families) -> ForgetTrace {
    let part = partition(nf, q).expect("input was normalized");
    let all = families == Families::All;
    let hq = |r: &Rule| r.head_without(q);
    let bq = |r: &Rule| r.body_without(q);
    let nots = |lits: BTreeSet<BodyLiteral>| negate_all(lits).collect::<BTreeSet<_>>();
    let not_nots = |lits: BTreeSet<BodyLiteral>| double_negate_all(lits).collect::<BTreeSet<_>>();

    let mut out = Builder { q, trace: ForgetTrace::default() };
    let r14: Vec<&Rule> = part.r1.iter().chain(&part.r4).collect();
    let r02: Vec<&Rule> = part.r0.iter().chain(&part.r2).collect();

    for r in &part.plain {
        out.emit(Derivation::Plain, r.head().clone(), r.body(), &[r], None, None);
    }

    for r0 in &part.r0 {
        for r4 in &part.r4 {
            let head = union([r0.head().clone(), hq(r4)]);
            let body = union([bq(r0), r4.body()]);
            out.emit(Derivation::D1a, head, body, &[r0, r4], None, None);
        }
        if !all {
            continue;
        }
        for r3 in &part.r3 {
            for &rp in &r14 {
                let head = union([r0.head().clone(), hq(r3)]);
                let body = union([bq(r0), bq(r3), not_atoms(&hq(rp)).collect(), not_nots(bq(rp))]);
                out.emit(Derivation::D2a, head, body, &[r0, r3, rp], None, None);
            }
        }
        let others = as_dual(q, r02.iter().copied().filter(|r| *r != r0));
        for r3 in &part.r3 {
            for &h in r0.head() {
                for d in others.iter() {
                    let body = union([
                        bq(r0),
                        BTreeSet::from([BodyLiteral::naf_naf(h)]),
                        d.clone(),
                        bq(r3),
                        not_atoms(&hq(r3)).collect(),
                    ]);
                    out.emit(Derivation::D3a, r0.head().clone(), body, &[r0, r3], Some(h), Some(d));
                }
            }
        }
        for r3 in &part.r3 {
            for r3p in part.r3.iter().filter(|r| *r != r3) {
                for d in others.iter() {
                    for &h in r0.head() {
                        let head = union([r0.head().clone(), hq(r3)]);
                        let mut cycle = bq(r3p);
                        cycle.insert(BodyLiteral::pos(h));
                        let body = union([
                            bq(r0),
                            bq(r3),
                            not_atoms(&hq(r3p)).collect(),
                            not_nots(cycle),
                            d.clone(),
                        ]);
                        out.emit(Derivation::D7, head, body, &[r0, r3, r3p], Some(h), Some(d));
                    }
                }
            }
        }
    }

    for r2 in &part.r2 {
        for r4 in &part.r4 {
            let body = union([bq(r2), not_atoms(&hq(r4)).collect(), not_nots(r4.body())]);
            out.emit(Derivation::D1b, r2.head().clone(), body, &[r2, r4], None, None);
        }
        if !all {
            continue;
        }
        for r3 in &part.r3 {
            for &rp in &r14 {
                let heads = union([hq(r3), hq(rp)]);
                let body = union([bq(r2), not_atoms(&heads).collect(), not_nots(union([bq(r3), bq(rp)]))]);
                out.emit(Derivation::D2b, r2.head().clone(), body, &[r2, r3, rp], None, None);
            }
        }
        let others = as_dual(q, r02.iter().copied().filter(|r| *r != r2));
        for r3 in &part.r3 {
            for &h in r2.head() {
                for d in others.iter() {
                    let mut cycle = bq(r3);
                    cycle.insert(BodyLiteral::pos(h));
                    let body = union([bq(r2), not_atoms(&hq(r3)).collect(), not_nots(cycle), d.clone()]);
                    out.emit(Derivation::D3b, r2.head().clone(), body, &[r2, r3], Some(h), Some(d));
                }
            }
        }
    }

    let dual34 = as_dual(q, part.r3.iter().chain(&part.r4));
    let dual4 = as_dual(q, &part.r4);
    for &rp in &r14 {
        let refuted = nots(bq(rp));
        for d in dual34.iter().filter(|d| d.is_disjoint(&refuted)) {
            let body = union([bq(rp), d.clone()]);
            out.emit(Derivation::D4, hq(rp), body, &[rp], None, Some(d));
        }
        if !all {
            continue;
        }
        for r3 in &part.r3 {
            for &r in &r02 {
                for d in dual4.iter().filter(|d| d.is_disjoint(&refuted)) {
                    let heads = union([r.head().clone(), hq(r3)]);
                    let body = union([
                        bq(rp),
                        not_atoms(&heads).collect(),
                        not_nots(union([bq(r), bq(r3)])),
                        d.clone(),
                    ]);
                    out.emit(Derivation::D5, hq(rp), body, &[rp, r3, r], None, Some(d));
                }
            }
        }
        let rest = as_dual(q, r14.iter().copied().filter(|r| *r != rp));
        for r3 in &part.r3 {
            for h in hq(rp) {
                for d in rest.iter() {
                    let mut cycle = bq(r3);
                    cycle.insert(BodyLiteral::pos(h));
                    let body = union([bq(rp), not_atoms(&hq(r3)).collect(), not_nots(cycle), d.clone()]);
                    out.emit(Derivation::D6, hq(rp), body, &[rp, r3], Some(h), Some(d));
                }
            }
        }
    }

    out.trace
}

fn finish(program: &Program, q: Atom, trace: &ForgetTrace) -> Program {
    let kept = program.widening().iter().copied().filter(|&a| a != q);
    normal_form(&trace.generated()).widened(kept)
}

/// Forgets `q` from `program`. The result never mentions `q`.
pub fn forget(program: &Program, q: Atom) -> Program {
    forget_traced(program, q).0
}

/// Like [`forget`], also returning every rule generated before the final
/// normalization together with the family that produced it.
pub fn forget_traced(program: &Program, q: Atom) -> (Program, ForgetTrace) {
    let nf = normal_form(program);
    let trace = generate(&nf, q, Families::All);
    (finish(program, q, &trace), trace)
}

/// Forgets the atoms one after another. Strong persistence is only
/// guaranteed per single atom, not for the combined result.
pub fn forget_sequence(program: &Program, atoms: &[Atom]) -> Program {
    atoms.iter().fold(program.clone(), |p, &q| forget(&p, q))
}

/// Decides q-forgettability in one pass over NF(P): true if every rule
/// mentioning `q` is a self-cycle, or `q.` is a fact, or there is no
/// self-cycle on `q` at all.
pub fn is_q_forgettable(program: &Program, q: Atom) -> bool {
    let nf = if is_normal_form(program) { program.clone() } else { normal_form(program) };
    let (mut only_cycles, mut fact, mut any_cycle) = (true, false, false);
    for r in nf.rules().filter(|r| r.mentions(q)) {
        let cycle = r.head().contains(&q) && r.nneg().contains(&q);
        only_cycles &= cycle;
        any_cycle |= cycle;
        fact |= r.is_fact() && r.head().contains(&q);
    }
    only_cycles || fact || !any_cycle
}

/// Forgetting restricted to families 1a, 1b and 4, which coincides with
/// [`forget`] on q-forgettable programs. Other programs are rejected.
pub fn forget_fast(program: &Program, q: Atom) -> Result<Program> {
    forget_fast_traced(program, q).map(|(p, _)| p)
}

pub fn forget_fast_traced(program: &Program, q: Atom) -> Result<(Program, ForgetTrace)> {
    if !is_q_forgettable(program, q) {
        return Err(Error::NotForgettable(q.to_string()));
    }
    let nf = normal_form(program);
    let trace = generate(&nf, q, Families::Basic);
    Ok((finish(program, q, &trace), trace))
}
