//! Exact continued fractions, the irrationality measure function
//! `ψ_α(t) = min_{1≤q≤t} ‖qα‖` and the normalized difference of two such
//! functions.

#![allow(clippy::needless_range_loop)]

pub mod cf;
pub mod error;
pub mod extremal;
pub mod interval;
pub mod psi;
pub mod quad;
pub mod ratio;
pub mod sample;
pub mod tower;
pub mod word;

pub use cf::{
    continuant, expand, fibonacci, parse_cf, parse_number, parse_quad, Convergent, ExpansionKind,
    PartialQuotients, TailTable,
};
pub use error::{Error, Result};
pub use interval::{format_decimal, Interval};
pub use quad::QuadIrr;
pub use psi::{dist_to_nearest_int, dubickas_witnesses, psi, xi, Mode, PsiRepr, PsiTable, PsiValue};
pub use word::{build_word, scan_bb, scan_bqb, scan_qq, scan_xqq, LetterKind, Word, WordLetter};
pub use ratio::{
    profile, verify_floor_c1, verify_lemma3, verify_lemma4, verify_lemma6, verify_lemma6_all, verify_main_theorem,
    verify_remark3, FloorReport, Lemma3Report, Lemma4Report, Lemma6Report, ProfileOptions, RatioProfile, RatioRecord,
    RatioValue, Remark3Report, Remark3Witness, RootConstant,
};
pub use extremal::{
    build_omega, build_pair, build_pair_for_constant, kronecker_search, pell_closed_form, x_sequence, ExtremalPair,
    Family, KroneckerSolution, KroneckerTarget, TargetConstant, DEFAULT_SEARCH_BOUND,
};
pub use sample::Sampler;
