//! The subset-classification lemma and the assignment of dyadic cases to
//! type I, type II and type I/II estimates.

mod dyadic;
mod lemma;
mod subset;

pub use dyadic::{applicable_lemmas, map_case_to_lemma, DyadicCase, LemmaTag};
pub use lemma::{
    brute_force_classify, classify_exponents, random_tuple, ClassifiedCase, ExponentTuple, BRUTE_FORCE_MAX,
    CASE1_HI, CASE1_LO, CASE2_CAP,
};
