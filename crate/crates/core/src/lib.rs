//! Representation functions of finite integer sets and the partitions of
//! intervals whose two classes share one.
//!
//! For a set `S` of nonnegative integers, `R_S(n)` is the number of pairs
//! `s1 < s2` in `S` with `s1 + s2 = n`. The crate provides
//!
//! - [`IntSet`], a dense bit-vector set, with the Thue–Morse classes
//!   `A_l`, `B_l` and the shift/reflect transforms;
//! - exact representation tables ([`rep_fn_table`]) and the generating
//!   function identity checker ([`check_eq10_identity`]);
//! - a forcing solver ([`solve_forced`]) that decides whether a punctured,
//!   full, or shared-point interval splits into two classes with equal
//!   representation functions, with an exhaustive oracle ([`enumerate_all`]);
//! - the closed-form constructions, digit lemmas and per-instance
//!   classification used by the scan engine in the `repfn` crate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;
pub mod error;
pub mod intset;
pub mod poly;
pub mod repfn;
pub mod solver;
pub mod theorem;

pub use error::{Error, Result};
pub use intset::{evil_parity, thue_morse_set, IntSet, Side, UniverseCap};
pub use repfn::{check_eq10_identity, rep_fn_naive, rep_fn_table, rep_tables_equal, IndicatorPoly, RepTable};
pub use solver::{
    enumerate_all, solve_forced, verify_pair, Infeasible, InfeasibleReason, Label, PartitionSolution,
    PositionProfile, Provenance,
};
pub use theorem::{
    check_lemma3, check_lemma4, check_lemma5, classify, construct_lemma6, construct_problem2,
    construct_theorem1, find_lemma7_witness, Classification, Instance, KindFamily, ProfileKind,
};
