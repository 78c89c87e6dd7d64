//! Partitions of an interval with equal representation functions.
//!
//! A [`PositionProfile`] labels every position of `[0, m]` as free (goes to
//! exactly one class), removed (in neither class) or shared (in both). With
//! `0` pinned to `C`, the requirement `R_C(v) = R_D(v)` decides the class of
//! each free position `v` from the positions below it, because the only pair
//! summing to `v` that involves `v` itself is `(0, v)`:
//!
//! ```text
//! R_C(v) = P_C(v) + χ_C(v)        R_D(v) = P_D(v)
//! ```
//!
//! where `P_X(v)` counts pairs of members of `X ∩ [1, v − 1]` summing to `v`.
//! [`solve_forced`] walks `v = 1..=m` once, then checks the sums in
//! `(m, 2m]`. [`enumerate_all`] is the brute-force counterpart used to
//! cross-check it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits;
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::repfn::{ordered_pairs, rep_fn_table};

/// Most free positions [`enumerate_all`] will accept.
pub const ENUMERATION_LIMIT: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// In exactly one of `C`, `D`.
    Free,
    /// In neither class (a removed point).
    Neither,
    /// In both classes (a shared point).
    Both,
}

impl Label {
    pub fn code(self) -> char {
        match self {
            Label::Free => 'F',
            Label::Neither => 'N',
            Label::Both => 'B',
        }
    }
}

/// Per-position constraints over `[0, m]`; position 0 is free and pinned to `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositionProfile {
    labels: Vec<Label>,
}

impl PositionProfile {
    pub fn new(labels: Vec<Label>) -> Result<PositionProfile> {
        match labels.first() {
            None => Err(Error::InvalidProfile("a profile needs at least position 0")),
            Some(Label::Free) => Ok(PositionProfile { labels }),
            Some(_) => Err(Error::InvalidProfile("position 0 must be free")),
        }
    }

    /// `[0, m]` with no removed or shared positions.
    pub fn full(m: usize) -> PositionProfile {
        PositionProfile { labels: vec![Label::Free; m + 1] }
    }

    /// `[0, m]` with `removed` in neither class and `shared` in both.
    pub fn with_points(m: usize, removed: &[usize], shared: &[usize]) -> Result<PositionProfile> {
        let mut labels = vec![Label::Free; m + 1];
        for (points, label) in [(removed, Label::Neither), (shared, Label::Both)] {
            for &p in points {
                if p == 0 {
                    return Err(Error::InvalidProfile("position 0 must be free"));
                }
                if p > m {
                    return Err(Error::OutOfRange { value: p, bound: m });
                }
                if labels[p] != Label::Free {
                    return Err(Error::InvalidProfile("a position is listed twice"));
                }
                labels[p] = label;
            }
        }
        Ok(PositionProfile { labels })
    }

    pub fn punctured(m: usize, r: usize) -> Result<PositionProfile> {
        PositionProfile::with_points(m, &[r], &[])
    }

    pub fn shared(m: usize, r: usize) -> Result<PositionProfile> {
        PositionProfile::with_points(m, &[], &[r])
    }

    pub fn m(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn positions(&self, label: Label) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().enumerate().filter(move |(_, &l)| l == label).map(|(i, _)| i)
    }

    pub fn free_count(&self) -> usize {
        self.positions(Label::Free).count()
    }

    /// Labels reversed, i.e. the profile seen through `x ↦ m − x`. `None`
    /// when position `m` is not free, since the reflection would put a
    /// constrained label at the root.
    pub fn reflected(&self) -> Option<PositionProfile> {
        let mut labels = self.labels.clone();
        labels.reverse();
        PositionProfile::new(labels).ok()
    }
}

impl fmt::Display for PositionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.labels.iter().try_for_each(|l| write!(f, "{}", l.code()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Forced,
    Enumerated,
}

/// A verified pair `(C, D)` for a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSolution {
    pub c: IntSet,
    pub d: IntSet,
    pub verified_upto: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InfeasibleReason {
    /// A free position fits neither class.
    NoAssignment,
    /// A removed or shared position breaks the equality at its own index.
    LabelConflict,
    /// Every position was placed but the sums above `m` disagree.
    TailMismatch,
    /// All free positions other than 0 were forced into `C`.
    EmptyD,
}

/// No valid partition exists; `at` is the first index where the equality
/// fails (a position for forcing, a sum for the tail).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Infeasible {
    pub at: usize,
    pub reason: InfeasibleReason,
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.reason {
            InfeasibleReason::NoAssignment => "no class for position",
            InfeasibleReason::LabelConflict => "constrained position breaks equality at",
            InfeasibleReason::TailMismatch => "representation counts differ at",
            InfeasibleReason::EmptyD => "D is empty; last position",
        };
        write!(f, "infeasible: {what} {}", self.at)
    }
}

/// Growing class with its reversal about `m`, for O(v/64) pair counts.
struct Class {
    words: Vec<u64>,
    rev: Vec<u64>,
    m: usize,
}

impl Class {
    fn new(m: usize) -> Class {
        Class { words: vec![0; bits::words_for(m)], rev: vec![0; bits::words_for(m)], m }
    }

    fn insert(&mut self, x: usize) {
        bits::set(&mut self.words, x);
        bits::set(&mut self.rev, self.m - x);
    }

    /// Pairs `s1 < s2 < v` of current members with `s1 + s2 = v`.
    fn pairs_below(&self, v: usize) -> u32 {
        let ordered = ordered_pairs(&self.words, &self.rev, self.m, v);
        let diagonal = (v.is_multiple_of(2) && bits::get(&self.words, v / 2)) as u32;
        (ordered - diagonal) / 2
    }

    fn into_set(self) -> IntSet {
        IntSet::from_words(self.words, self.m)
    }
}

/// Builds the unique candidate partition for `profile` position by position
/// and verifies it on `[1, 2m]`.
pub fn solve_forced(profile: &PositionProfile) -> core::result::Result<PartitionSolution, Infeasible> {
    let m = profile.m();
    let mut c = Class::new(m);
    let mut d = Class::new(m);
    c.insert(0);
    for v in 1..=m {
        let pc = c.pairs_below(v);
        let pd = d.pairs_below(v);
        match profile.label(v) {
            Label::Free => {
                if pc == pd {
                    d.insert(v);
                } else if pc + 1 == pd {
                    c.insert(v);
                } else {
                    return Err(Infeasible { at: v, reason: InfeasibleReason::NoAssignment });
                }
            }
            Label::Neither => {
                if pc != pd {
                    return Err(Infeasible { at: v, reason: InfeasibleReason::LabelConflict });
                }
            }
            Label::Both => {
                if pc + 1 != pd {
                    return Err(Infeasible { at: v, reason: InfeasibleReason::LabelConflict });
                }
                c.insert(v);
                d.insert(v);
            }
        }
    }
    let (c, d) = (c.into_set(), d.into_set());
    if d.is_empty() {
        return Err(Infeasible { at: m, reason: InfeasibleReason::EmptyD });
    }
    let (tc, td) = (rep_fn_table(&c), rep_fn_table(&d));
    if let Some(n) = tc.first_difference(&td, m + 1, 2 * m) {
        return Err(Infeasible { at: n, reason: InfeasibleReason::TailMismatch });
    }
    Ok(PartitionSolution { c, d, verified_upto: 2 * m, provenance: Provenance::Forced })
}

fn pair_count(words: &[u64], m: usize, n: usize) -> u32 {
    let lo = n.saturating_sub(m);
    (lo..=(n - 1) / 2)
        .filter(|&s| bits::get(words, s) && bits::get(words, n - s))
        .count() as u32
}

/// Every valid partition for `profile`, found by trying all
/// `2^(free − 1)` placements of the free positions other than 0.
pub fn enumerate_all(profile: &PositionProfile) -> Result<Vec<PartitionSolution>> {
    let free = profile.free_count();
    if free > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { free, limit: ENUMERATION_LIMIT });
    }
    let m = profile.m();
    let movable: Vec<usize> = profile.positions(Label::Free).skip(1).collect();
    let mut base_c = vec![0u64; bits::words_for(m)];
    let mut base_d = base_c.clone();
    bits::set(&mut base_c, 0);
    for p in profile.positions(Label::Both) {
        bits::set(&mut base_c, p);
        bits::set(&mut base_d, p);
    }

    let mut found = Vec::new();
    let (mut c, mut d) = (base_c.clone(), base_d.clone());
    for mask in 0u64..(1u64 << movable.len()) {
        c.copy_from_slice(&base_c);
        d.copy_from_slice(&base_d);
        for (bit, &p) in movable.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                bits::set(&mut c, p);
            } else {
                bits::set(&mut d, p);
            }
        }
        if d.iter().all(|&w| w == 0) {
            continue;
        }
        if (1..=2 * m).all(|n| pair_count(&c, m, n) == pair_count(&d, m, n)) {
            found.push(PartitionSolution {
                c: IntSet::from_words(c.clone(), m),
                d: IntSet::from_words(d.clone(), m),
                verified_upto: 2 * m,
                provenance: Provenance::Enumerated,
            });
        }
    }
    Ok(found)
}

/// True iff `(c, d)` agrees with every label of `profile`, has `0 ∈ c`, a
/// nonempty `d`, and equal representation counts on `[1, 2m]`.
pub fn verify_pair(c: &IntSet, d: &IntSet, profile: &PositionProfile) -> bool {
    let m = profile.m();
    if c.max().is_some_and(|x| x > m) || d.max().is_some_and(|x| x > m) {
        return false;
    }
    if !c.contains(0) || d.is_empty() {
        return false;
    }
    let labels_ok = profile.labels().iter().enumerate().all(|(v, label)| {
        let (in_c, in_d) = (c.contains(v), d.contains(v));
        match label {
            Label::Free => in_c != in_d,
            Label::Neither => !in_c && !in_d,
            Label::Both => in_c && in_d,
        }
    });
    labels_ok && rep_fn_table(c).first_difference(&rep_fn_table(d), 1, 2 * m).is_none()
}
