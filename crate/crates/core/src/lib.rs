//! Forgetting atoms from extended logic programs while keeping strong
//! persistence.
//!
//! The main entry point is [`forget`], a purely syntactic operator. Around
//! it sit brute-force here-and-there oracles ([`ht_models`],
//! [`answer_sets`], [`fsp_target_models`]), the Ω criterion, a counter-model
//! construction for comparison and a syntactic program distance.
//!
//! ```
//! use spforget::{forget, parse_program, Atom};
//!
//! let p = parse_program("t :- q. v :- not q. q :- s. q :- w.").unwrap();
//! let out = forget(&p, Atom::new("q"));
//! assert_eq!(out.to_string(), "t :- s.\nt :- w.\nv :- not s, not w.\n");
//! ```

pub mod distance;
pub mod dual;
pub mod error;
pub mod forget;
pub mod harness;
pub mod ht;
pub mod normal;
pub mod parse;
pub mod program;
pub mod semantic;

pub use distance::{dist, program_distance, rule_distance, rule_size, ProgramDistance};
pub use dual::{as_dual, AsDual};
pub use error::{Error, Result};
pub use forget::{
    forget, forget_fast, forget_fast_traced, forget_sequence, forget_traced, is_q_forgettable, partition,
    Derivation, ForgetTrace, Partition, TraceEntry,
};
pub use harness::{
    check_oracle, enumerate_contexts, generate_corpus, golden_corpus, verify_corpus, verify_sp,
    verify_sp_with_limit, CorpusSpec, SpFailure, SpReport,
};
pub use ht::{
    answer_sets, equivalent, ht_models, ht_models_of, max_atoms, reduct, set_max_atoms, strongly_equivalent,
    strongly_equivalent_over, HtInterpretation, HtModelSet, VExclusion, DEFAULT_MAX_ATOMS,
};
pub use normal::{is_normal_form, normal_form, normal_form_violation};
pub use parse::{answer_sets_to_json, ht_models_to_json, parse_program, parse_rule, print_program, ParseError};
pub use program::{atom_set, Atom, AtomSet, BodyLiteral, LiteralKind, Program, Rule};
pub use semantic::{f_sem, fsp_target_models, rel_sets, satisfies_omega, OmegaCandidate, OmegaReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/programs.md")]
    mod programs {}
    #[doc = include_str!("../../../book/src/normal-form.md")]
    mod normal_form {}
    #[doc = include_str!("../../../book/src/here-and-there.md")]
    mod here_and_there {}
    #[doc = include_str!("../../../book/src/forgetting.md")]
    mod forgetting {}
    #[doc = include_str!("../../../book/src/persistence.md")]
    mod persistence {}
    #[doc = include_str!("../../../book/src/counter-models.md")]
    mod counter_models {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
