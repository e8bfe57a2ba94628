//! Analyzer for the Freiman property of equigenerated monomial ideals.
//!
//! An equigenerated monomial ideal `I` with `mu` minimal generators and
//! analytic spread `l` always satisfies `mu(I^2) >= l*mu - C(l,2)`; it is
//! called *Freiman* when equality holds. For sortable ideals the property
//! can be decided without counting: `I` is Freiman exactly when the sorted
//! graph of its generators is chordal. This crate implements both routes and
//! the closed-form classifications for two families, principal Borel ideals
//! and Veronese-type ideals with a constant exponent bound, so that each
//! answer can be checked three ways (count, chordality, predicate).

#![forbid(unsafe_code)]

pub mod chordal;
pub mod classify;
pub mod cli;
pub mod graphs;
pub mod ideals;
pub mod monomial;

pub use chordal::{check_peo, is_chordal, lexbfs, ChordalityVerdict, PeoCheck};
pub use classify::{
    predicted_borel, predicted_veronese, sweep_borel, sweep_veronese, SweepReport, SweepRow,
    Verdict,
};
pub use graphs::{sorted_graph, unsorted_graph, Graph};
pub use ideals::{AnalysisReport, GeneratorSet};
pub use monomial::{is_sorted, sort_pair, Monomial};
