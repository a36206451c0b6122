#![allow(dead_code)]

use proptest::prelude::*;
use spforget::{rule_distance, Atom, BodyLiteral, Program, Rule};

pub const ATOMS: [&str; 4] = ["q", "a", "b", "c"];

pub fn p(text: &str) -> Program {
    spforget::parse_program(text).unwrap()
}

pub fn q() -> Atom {
    Atom::new("q")
}

/// Minimum over every partial injective mapping, by exhaustive search.
pub fn brute_force_distance(p1: &Program, p2: &Program) -> usize {
    fn go(left: &[&Rule], right: &[&Rule], used: &mut Vec<bool>) -> usize {
        let Some((r, rest)) = left.split_first() else {
            return right.iter().zip(used.iter()).filter(|(_, &u)| !u).map(|(r, _)| r.size()).sum();
        };
        let mut best = r.size() + go(rest, right, used);
        for j in 0..right.len() {
            if !used[j] {
                used[j] = true;
                best = best.min(rule_distance(r, right[j]) + go(rest, right, used));
                used[j] = false;
            }
        }
        best
    }
    let left: Vec<&Rule> = p1.rules().collect();
    let right: Vec<&Rule> = p2.rules().collect();
    go(&left, &right, &mut vec![false; right.len()])
}

fn literal() -> impl Strategy<Value = BodyLiteral> {
    (0..ATOMS.len(), 0usize..3).prop_map(|(i, negs)| BodyLiteral::with_negations(Atom::new(ATOMS[i]), negs))
}

pub fn rule() -> impl Strategy<Value = Rule> {
    (proptest::sample::subsequence(ATOMS.to_vec(), 0..=2), proptest::collection::vec(literal(), 0..=3))
        .prop_map(|(head, body)| Rule::from_literals(head.into_iter().map(Atom::new), body))
}

pub fn program(max_rules: usize) -> impl Strategy<Value = Program> {
    proptest::collection::vec(rule(), 0..=max_rules).prop_map(|rules| rules.into_iter().collect())
}

/// Programs that never mention `q`.
pub fn q_free_program(max_rules: usize) -> impl Strategy<Value = Program> {
    program(max_rules).prop_map(|p| p.rules().filter(|r| !r.mentions(Atom::new("q"))).cloned().collect())
}
