//! Proof search and coherence checking for free partially normal skew
//! monoidal categories on a set of atoms.
//!
//! The engine is organised around three presentations of the same free
//! category, selected by three normality flags (`ln`, `rn`, `an`):
//!
//! * [`catcalc`]: maps `A ==> C` as derivation terms generated by the
//!   structural laws `λ`, `ρ`, `α` and, per flag, their inverses;
//! * [`seqcalc`]: a cut-free sequent calculus over sequents `S | Γ |- C`
//!   with a stoup, together with admissible cut rules and a directed
//!   rewrite system for the derivation congruence ([`rewrite`]);
//! * [`focused`]: a phase-annotated subsystem with exactly one derivation
//!   per congruence class, giving terminating duplicate-free enumeration
//!   of hom-sets and decidable equality of maps.
//!
//! [`bridge`] translates between the categorical and sequent calculi;
//! [`sexpr`] serializes all three derivation kinds; [`generate`] provides
//! seeded random terms for audits and property tests.

pub mod bridge;
pub mod catcalc;
pub mod error;
pub mod formula;
pub mod generate;
pub mod parse;
pub mod rewrite;
pub mod seqcalc;
pub mod sexpr;

pub mod focused;

pub use catcalc::{alpha_c_inv, cat_equal, check_cat, tensor_ctx, CatDeriv};
pub use error::CheckError;
pub use focused::{
    check_foc, count_derivations, emb, focus, passive_contexts_pure, search, search_with_mode,
    FocDeriv, FocSequent, SearchMode,
};
pub use formula::{
    context_frontier, interp_antecedent, Context, Formula, IrreducibleStoup, NormalityFlags,
    Sequent, Stoup,
};
pub use parse::{parse_formula, parse_sequent, ParseError};
pub use rewrite::{rewrite_nf, try_rewrite_nf, Strategy, DEFAULT_STEP_CAP};
pub use seqcalc::{
    act_admissible, ccut, ccut_fma, ccut_stp, check_seq, enumerate_derivations, ic_restricted,
    scut, seq_equal, SeqDeriv,
};
pub use bridge::{cmplt, cmplt_at, hom_enumerate, sound};
