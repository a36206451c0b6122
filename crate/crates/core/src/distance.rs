//! Syntactic distance between rules and between programs.
//!
//! Two rules are as far apart as the symmetric differences of their heads
//! and of their bodies. Two programs are compared through a partial
//! injective mapping of rules: matched pairs cost their rule distance, every
//! unmatched rule costs its size. The cheapest mapping is found with the
//! Hungarian method on a square matrix padded with dummy rows and columns.

use serde::Serialize;

use crate::program::{Program, Rule};

pub fn rule_distance(r1: &Rule, r2: &Rule) -> usize {
    let heads = r1.head().symmetric_difference(r2.head()).count();
    let (b1, b2) = (r1.body(), r2.body());
    heads + b1.symmetric_difference(&b2).count()
}

/// `|H(r)| + |B(r)|`.
pub fn rule_size(r: &Rule) -> usize {
    r.size()
}

/// An optimal mapping together with its cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProgramDistance {
    pub distance: usize,
    /// Matched pairs `(r, m(r))` with their rule distance. Pairs that share
    /// nothing are reported as unmatched instead; the cost is the same.
    pub pairs: Vec<(Rule, Rule, usize)>,
    pub unmatched_left: Vec<Rule>,
    pub unmatched_right: Vec<Rule>,
}

/// Minimum-cost perfect assignment on a square matrix. Returns, for every
/// row, its column. Classic potentials formulation, `O(n^3)`.
fn assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based arrays; column 0 is a sentinel
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of = vec![0; n];
    for j in 1..=n {
        col_of[owner[j] - 1] = j - 1;
    }
    col_of
}

/// The exact program distance and an optimal mapping.
pub fn program_distance(p1: &Program, p2: &Program) -> ProgramDistance {
    let left: Vec<&Rule> = p1.rules().collect();
    let right: Vec<&Rule> = p2.rules().collect();
    let (n1, n2) = (left.len(), right.len());
    let n = n1 + n2;
    // rows: left rules then dummies; columns: right rules then dummies
    let cost: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i < n1, j < n2) {
                    (true, true) => rule_distance(left[i], right[j]) as i64,
                    (true, false) => left[i].size() as i64,
                    (false, true) => right[j].size() as i64,
                    (false, false) => 0,
                })
                .collect()
        })
        .collect();
    let cols = assignment(&cost);

    let mut out = ProgramDistance { distance: 0, pairs: Vec::new(), unmatched_left: Vec::new(), unmatched_right: Vec::new() };
    let mut right_used = vec![false; n2];
    for (i, &j) in cols.iter().enumerate().take(n1) {
        let r = left[i];
        if j < n2 && rule_distance(r, right[j]) < r.size() + right[j].size() {
            right_used[j] = true;
            let d = rule_distance(r, right[j]);
            out.distance += d;
            out.pairs.push((r.clone(), right[j].clone(), d));
        } else {
            out.distance += r.size();
            out.unmatched_left.push(r.clone());
        }
    }
    for (j, r) in right.iter().enumerate() {
        if !right_used[j] {
            out.distance += r.size();
            out.unmatched_right.push((*r).clone());
        }
    }
    out
}

pub fn dist(p1: &Program, p2: &Program) -> usize {
    program_distance(p1, p2).distance
}
