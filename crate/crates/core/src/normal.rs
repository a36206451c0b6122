//! Normal form of a program.
//!
//! A program is in normal form when no rule mentions an atom in two body
//! forms, no head atom also occurs in the body as `a` or `not a`, and every
//! rule is minimal. [`normal_form`] reaches it in four passes: drop
//! tautologies, drop `not not a` next to `a`, drop head atoms `a` next to
//! `not a`, drop non-minimal rules. The result is strongly equivalent to the
//! input and the whole thing is quadratic in the number of rules.

use crate::program::{Program, Rule};

/// Checks the three normal-form conditions. Returns the first violation.
pub fn normal_form_violation(program: &Program) -> Option<String> {
    for r in program {
        let pos_neg = r.pos().intersection(r.neg()).next();
        let pos_nn = r.pos().intersection(r.nneg()).next();
        let neg_nn = r.neg().intersection(r.nneg()).next();
        if let Some(a) = pos_neg.or(pos_nn).or(neg_nn) {
            return Some(format!("`{r}` mentions {a} in more than one body form"));
        }
        if let Some(a) = r.head().iter().find(|a| r.pos().contains(a) || r.neg().contains(a)) {
            return Some(format!("`{r}` has head atom {a} in its body"));
        }
        if let Some(w) = program.subsumer_of(r) {
            return Some(format!("`{r}` is subsumed by `{w}`"));
        }
    }
    None
}

pub fn is_normal_form(program: &Program) -> bool {
    normal_form_violation(program).is_none()
}

/// NF(P). The signature widening of `program` is kept.
pub fn normal_form(program: &Program) -> Program {
    let rewritten: Vec<Rule> = program
        .rules()
        .filter(|r| !r.is_tautological())
        .map(|r| {
            r.map_parts(|head, pos, neg, nneg| {
                let nneg = nneg.difference(pos).copied().collect();
                let head = head.difference(neg).copied().collect();
                (head, pos.clone(), neg.clone(), nneg)
            })
        })
        .collect();
    let staged: Program = rewritten.into_iter().collect();
    let minimal: Vec<Rule> = staged.rules().filter(|r| r.is_minimal_in(&staged)).cloned().collect();
    let out = minimal.into_iter().collect::<Program>().widened(program.widening().iter().copied());
    debug_assert!(is_normal_form(&out), "{:?}", normal_form_violation(&out));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn p(s: &str) -> Program {
        parse_program(s).unwrap()
    }

    #[test]
    fn detects_violations() {
        assert!(!is_normal_form(&p("a :- b, not not b.")));
        assert!(!is_normal_form(&p("a | b :- not b.")));
        assert!(!is_normal_form(&p("a :- b. a :- b, c.")));
        assert!(!is_normal_form(&p("a :- a.")));
        assert!(is_normal_form(&p("a :- not not a.")));
        assert!(is_normal_form(&p("t :- q. v :- not q. q :- s. q :- w.")));
    }

    #[test]
    fn each_step() {
        assert_eq!(normal_form(&p("p :- p. a :- b.")), p("a :- b."));
        assert_eq!(normal_form(&p("a :- b, not not b.")), p("a :- b."));
        assert_eq!(normal_form(&p("a | b :- not b, c.")), p("a :- not b, c."));
        assert_eq!(normal_form(&p("a :- b. a :- b, c.")), p("a :- b."));
        let ex1 = p("t :- q. v :- not q. q :- s. q :- w.");
        assert_eq!(normal_form(&ex1), ex1);
    }

    #[test]
    fn step_three_can_leave_a_constraint() {
        assert_eq!(normal_form(&p("a :- not a, c.")), p(":- not a, c."));
    }

    #[test]
    fn rewriting_can_create_subsumption() {
        // after step 2 the second rule equals the first
        assert_eq!(normal_form(&p("a :- b. a :- b, not not b.")), p("a :- b."));
        // after step 3 the first rule is subsumed by the second
        assert_eq!(normal_form(&p("a | b :- not b, c. a :- not b, c, d.")), p("a :- not b, c."));
    }
}
