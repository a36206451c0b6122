//! The as-dual of a rule set with respect to an atom `q`.
//!
//! Each member is a set of `not` / `not not` literals that satisfies every
//! input rule without relying on `q`: one rule at a time, either some
//! q-free body literal is falsified (contributing its negation) or some
//! head atom other than `q` is made true (contributing `not not h`).
//! Applied to the rules with `q` in the head, every member is a way of
//! keeping `q` underivable.

use std::collections::BTreeSet;

use crate::program::{Atom, BodyLiteral, Rule};

/// A family of literal sets, none of which mentions `q` or contains a
/// positive literal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsDual {
    blockers: BTreeSet<BTreeSet<BodyLiteral>>,
}

impl AsDual {
    pub fn blockers(&self) -> &BTreeSet<BTreeSet<BodyLiteral>> {
        &self.blockers
    }

    pub fn iter(&self) -> impl Iterator<Item = &BTreeSet<BodyLiteral>> + '_ {
        self.blockers.iter()
    }

    pub fn len(&self) -> usize {
        self.blockers.len()
    }

    /// True when no way of satisfying the rules independently of `q` exists.
    pub fn is_empty(&self) -> bool {
        self.blockers.is_empty()
    }
}

/// Literal choices available for one rule: the negation of any q-free body
/// literal (rule goes to the falsified side) or `not not h` for any head
/// atom `h ≠ q` (rule goes to the satisfied side).
fn choices(q: Atom, rule: &Rule) -> Vec<BodyLiteral> {
    rule.body_without(q)
        .into_iter()
        .map(BodyLiteral::negate)
        .chain(rule.head_without(q).into_iter().map(BodyLiteral::naf_naf))
        .collect()
}

/// Dual_q(rules). The empty rule set yields `{∅}`; a rule with no choice at
/// all (such as the fact `q.`) yields the empty family.
pub fn as_dual<'a>(q: Atom, rules: impl IntoIterator<Item = &'a Rule>) -> AsDual {
    let mut partial: BTreeSet<BTreeSet<BodyLiteral>> = BTreeSet::from([BTreeSet::new()]);
    for rule in rules {
        let options = choices(q, rule);
        partial = partial
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |lit| {
                    let mut next = prefix.clone();
                    next.insert(*lit);
                    next
                })
            })
            .collect();
        if partial.is_empty() {
            break;
        }
    }
    AsDual { blockers: partial }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;
    use crate::program::{LiteralKind, Program};

    fn lits(text: &str) -> BTreeSet<BodyLiteral> {
        // reuse the rule parser: body of a constraint
        let r: Rule = format!(":- {text}.").parse().unwrap();
        r.body()
    }

    fn dual_of(q: &str, program: &str) -> AsDual {
        let p: Program = parse_program(program).unwrap();
        as_dual(Atom::new(q), p.rules())
    }

    #[test]
    fn single_way_to_block() {
        let d = dual_of("q", "q :- s. q :- w.");
        assert_eq!(d.blockers(), &BTreeSet::from([lits("not s, not w")]));
    }

    #[test]
    fn four_ways_with_disjunction() {
        let d = dual_of("q", "q :- s, t. q | u :- w.");
        let want = BTreeSet::from([
            lits("not s, not not u"),
            lits("not t, not not u"),
            lits("not s, not w"),
            lits("not t, not w"),
        ]);
        assert_eq!(d.blockers(), &want);
    }

    #[test]
    fn corner_cases() {
        assert_eq!(dual_of("q", "").blockers(), &BTreeSet::from([BTreeSet::new()]));
        assert!(dual_of("q", "q.").is_empty());
        assert!(dual_of("q", "q :- not not q.").is_empty());
    }

    #[test]
    fn negated_body_literals_simplify() {
        let d = dual_of("q", "q :- not a. q :- not not b.");
        assert_eq!(d.blockers(), &BTreeSet::from([lits("not not a, not b")]));
        assert!(d.iter().flatten().all(|l| l.kind != LiteralKind::Pos && l.atom != Atom::new("q")));
    }

    #[test]
    fn repeated_picks_collapse() {
        let d = dual_of("q", "q :- a. q :- a, b.");
        assert_eq!(
            d.blockers(),
            &BTreeSet::from([lits("not a"), lits("not a, not b")])
        );
    }
}
