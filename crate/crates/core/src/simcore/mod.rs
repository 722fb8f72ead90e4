//! The three similarity models over statement sequences: derived sequence
//! retrieval (DSRM), extended Sorensen-Dice, and the tf-idf vector space
//! model.

mod dice;
mod dsrm;
mod vsm;

pub use dice::{distinct_terms, query_term_counts, sim_dice};
pub use dsrm::{
    count_pass, sim_dsrm, sqc_comb, DerivedPattern, ModelScore, QuerySequence, WorkSequence,
};
pub use vsm::{cosine, idf, sim_vsm, term_counts, weigh_counts, weight, TfIdfModel};
