//! Unordered representation functions.
//!
//! `R_S(n)` counts pairs `s1 < s2` of members of `S` with `s1 + s2 = n`. The
//! full table over `[0, 2m]` comes from the self-convolution of the
//! indicator bit vector, evaluated one output at a time as a popcount of the
//! set against a shifted copy of its own reversal. That is `O(m² / 64)` word
//! operations with exact integer counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{self, WORD_BITS};
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::poly::IntPoly;

/// `R_S(n)` by direct enumeration of the smaller summand.
pub fn rep_fn_naive(set: &IntSet, n: usize) -> u32 {
    set.iter()
        .take_while(|&s| 2 * s < n)
        .filter(|&s| set.contains(n - s))
        .count() as u32
}

/// `R_S(0), …, R_S(2m)` for a set over `[0, m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTable {
    counts: Vec<u32>,
    source_universe: usize,
}

impl RepTable {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn source_universe(&self) -> usize {
        self.source_universe
    }

    /// `R_S(n)`; zero past the end of the table.
    pub fn get(&self, n: usize) -> u32 {
        self.counts.get(n).copied().unwrap_or(0)
    }

    /// Least `n ∈ [lo, hi]` where the two tables differ.
    pub fn first_difference(&self, other: &RepTable, lo: usize, hi: usize) -> Option<usize> {
        (lo..=hi).find(|&n| self.get(n) != other.get(n))
    }
}

/// Number of ordered pairs `(i, n − i)` with both in the set, where `rev`
/// holds bit `j` iff `top − j` is a member and `top` is the largest member.
#[inline]
pub(crate) fn ordered_pairs(words: &[u64], rev: &[u64], top: usize, n: usize) -> u32 {
    let lo_words = n.min(top) / WORD_BITS + 1;
    bits::and_shifted_popcount(words, rev, top as isize - n as isize, lo_words)
}

pub(crate) fn reversed(set: &IntSet, top: usize) -> Vec<u64> {
    let mut rev = vec![0u64; bits::words_for(top)];
    for s in set.iter() {
        bits::set(&mut rev, top - s);
    }
    rev
}

/// Full representation table of `set`, indexed `0..=2·universe_bound`.
pub fn rep_fn_table(set: &IntSet) -> RepTable {
    let m = set.universe_bound();
    let mut counts = vec![0u32; 2 * m + 1];
    if let Some(top) = set.max() {
        let words = set.words();
        let rev = reversed(set, top);
        for (n, slot) in counts.iter_mut().enumerate().take(2 * top + 1) {
            let ordered = ordered_pairs(words, &rev, top, n);
            let diagonal = (n % 2 == 0 && set.contains(n / 2)) as u32;
            *slot = (ordered - diagonal) / 2;
        }
    }
    RepTable { counts, source_universe: m }
}

/// True iff `R_S(n) = R_T(n)` for every `n ∈ [1, n_max]`.
pub fn rep_tables_equal(s: &IntSet, t: &IntSet, n_max: usize) -> bool {
    let (ts, tt) = (rep_fn_table(s), rep_fn_table(t));
    ts.first_difference(&tt, 1, n_max).is_none()
}

/// Indicator polynomial `p_S(x) = Σ χ_S(i) x^i` over degrees `0..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorPoly {
    coefficients: Vec<u8>,
}

impl IndicatorPoly {
    pub fn new(set: &IntSet, m: usize) -> Result<IndicatorPoly> {
        if let Some(max) = set.max() {
            if max > m {
                return Err(Error::OutOfRange { value: max, bound: m });
            }
        }
        Ok(IndicatorPoly { coefficients: (0..=m).map(|i| set.indicator(i)).collect() })
    }

    pub fn coefficients(&self) -> &[u8] {
        &self.coefficients
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coefficients.iter().map(|&c| c as i64).collect())
    }
}

/// Both sides of the master identity for a class `C` of a partition of
/// `[0, m] \ {r}`, expanded as exact integer polynomials:
///
/// ```text
/// lhs = 2 p_C(x²)
/// rhs = G₂ + 2 p_C G₁ − G₁² + 2 x^r G₁ − 2 p_C x^r − 2 x^{2r}
/// ```
///
/// where `G₁ = (1 − x^{m+1}) / (1 − x)` and `G₂ = (1 − x^{2m+2}) / (1 − x²)`
/// are written out as their finite geometric sums.
pub fn eq10_sides(c: &IntSet, m: usize, r: usize) -> Result<(IntPoly, IntPoly)> {
    if !c.contains(0) {
        return Err(Error::Precondition("0 must belong to C"));
    }
    if r == 0 || r > m {
        return Err(Error::Precondition("the removed point must lie in (0, m]"));
    }
    if c.contains(r) {
        return Err(Error::Precondition("the removed point cannot belong to C"));
    }
    let pc = IndicatorPoly::new(c, m)?.to_int_poly();
    let g1 = IntPoly::geometric(1, m + 1);
    let g2 = IntPoly::geometric(2, m + 1);

    let lhs = pc.compose_square().scale(2);
    let rhs = [
        g2.clone(),
        (&pc * &g1).scale(2),
        -&(&g1 * &g1),
        g1.shift(r).scale(2),
        pc.shift(r).scale(-2),
        IntPoly::monomial(-2, 2 * r),
    ]
    .iter()
    .fold(IntPoly::zero(), |acc, term| &acc + term);
    Ok((lhs, rhs))
}

/// True iff the master identity holds coefficient by coefficient, which is
/// equivalent to `R_C ≡ R_D` for `D = [0, m] \ ({r} ∪ C)`.
pub fn check_eq10_identity(c: &IntSet, m: usize, r: usize) -> Result<bool> {
    let (lhs, rhs) = eq10_sides(c, m, r)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::{thue_morse_set, Side, UniverseCap};
    use alloc::vec::Vec;
    use proptest::prelude::*;

    /// Ordered double loop over all pairs; shares no code with the library.
    fn brute(members: &[usize], n: usize) -> u32 {
        let mut count = 0;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if a + b == n {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn naive_examples_frozen_from_brute_force() {
        // Only (0,7) for the first and (2,5) for the second.
        assert_eq!(brute(&[0, 3, 6, 7], 7), 1);
        assert_eq!(brute(&[1, 2, 5, 8], 7), 1);
        assert_eq!(rep_fn_naive(&IntSet::from_slice(&[0, 3, 6, 7]), 7), 1);
        assert_eq!(rep_fn_naive(&IntSet::from_slice(&[0]), 5), 0);
        assert_eq!(rep_fn_naive(&IntSet::from_slice(&[1, 2, 5, 8]), 7), 1);
    }

    #[test]
    fn table_examples() {
        let a3 = IntSet::from_slice(&[0, 3, 5, 6]);
        let b3 = IntSet::from_slice(&[1, 2, 4, 7]);
        assert_eq!(rep_fn_table(&a3).get(8), 1);
        assert_eq!(rep_fn_table(&b3).get(8), 1);
        let empty = rep_fn_table(&IntSet::empty(10));
        assert_eq!(empty.counts().len(), 21);
        assert!(empty.counts().iter().all(|&c| c == 0));
        assert_eq!(rep_fn_table(&IntSet::empty(0)).counts(), [0]);
    }

    #[test]
    fn tables_equal_examples() {
        let cap = UniverseCap::DEFAULT;
        let a3 = thue_morse_set(3, Side::A, cap).unwrap();
        let b3 = thue_morse_set(3, Side::B, cap).unwrap();
        assert!(rep_tables_equal(&a3, &b3, 14));
        assert!(rep_tables_equal(
            &IntSet::from_slice(&[0, 3, 6, 7]),
            &IntSet::from_slice(&[1, 2, 5, 8]),
            16
        ));
        assert!(!rep_tables_equal(&IntSet::from_slice(&[0, 1]), &IntSet::from_slice(&[0, 2]), 4));
    }

    #[test]
    fn full_interval_attains_the_bound() {
        let s = IntSet::interval(0, 40);
        let t = rep_fn_table(&s);
        for n in 0..=40 {
            assert_eq!(t.get(n), (n as u32).div_ceil(2));
        }
    }

    #[test]
    fn eq10_examples() {
        assert!(check_eq10_identity(&IntSet::from_slice(&[0, 3, 6, 7]), 8, 4).unwrap());
        assert!(!check_eq10_identity(&IntSet::from_slice(&[0, 1]), 4, 2).unwrap());
        assert!(check_eq10_identity(&IntSet::from_slice(&[0]), 2, 1).unwrap());
    }

    #[test]
    fn eq10_preconditions() {
        let c = IntSet::from_slice(&[0, 3]);
        assert!(matches!(check_eq10_identity(&IntSet::from_slice(&[1]), 4, 2), Err(Error::Precondition(_))));
        assert!(matches!(check_eq10_identity(&c, 4, 3), Err(Error::Precondition(_))));
        assert!(matches!(check_eq10_identity(&c, 4, 0), Err(Error::Precondition(_))));
        assert!(matches!(check_eq10_identity(&c, 4, 5), Err(Error::Precondition(_))));
        assert!(matches!(check_eq10_identity(&c, 2, 1), Err(Error::OutOfRange { .. })));
    }

    fn complement(c: &IntSet, m: usize, r: usize) -> IntSet {
        IntSet::from_members(m, (0..=m).filter(|&i| i != r && !c.contains(i))).unwrap()
    }

    #[test]
    fn eq10_matches_tables_exhaustively_for_small_m() {
        for m in 1..=10usize {
            for r in 1..=m {
                let free: Vec<usize> = (1..=m).filter(|&i| i != r).collect();
                for mask in 0u32..(1 << free.len()) {
                    let c = IntSet::from_members(
                        m,
                        core::iter::once(0).chain(
                            free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i),
                        ),
                    )
                    .unwrap();
                    let d = complement(&c, m, r);
                    assert_eq!(
                        check_eq10_identity(&c, m, r).unwrap(),
                        rep_tables_equal(&c, &d, 2 * m),
                        "m={m} r={r} C={c}"
                    );
                }
            }
        }
    }

    fn arb_members(max: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
        (0..=max).prop_flat_map(|m| (Just(m), proptest::collection::vec(0..=m, 0..=m + 1)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn table_matches_naive_and_brute((m, raw) in arb_members(256)) {
            let s = IntSet::from_members(m, raw).unwrap();
            let members: Vec<usize> = s.iter().collect();
            let table = rep_fn_table(&s);
            prop_assert_eq!(table.counts().len(), 2 * m + 1);
            for n in 0..=2 * m {
                prop_assert_eq!(table.get(n), rep_fn_naive(&s, n));
                prop_assert_eq!(table.get(n), brute(&members, n));
            }
        }

        #[test]
        fn table_invariants((m, raw) in arb_members(200)) {
            let s = IntSet::from_members(m, raw).unwrap();
            let table = rep_fn_table(&s);
            prop_assert_eq!(table.get(0), 0);
            let top = s.max().unwrap_or(0);
            for (n, &c) in table.counts().iter().enumerate() {
                prop_assert!(c as usize <= n.div_ceil(2));
                if n > 2 * top {
                    prop_assert_eq!(c, 0);
                }
            }
        }

        #[test]
        fn reflection_law((m, raw) in arb_members(128)) {
            let s = IntSet::from_members(m, raw).unwrap();
            let reflected = rep_fn_table(&s.reflect(m).unwrap());
            let original = rep_fn_table(&s);
            for k in 0..=2 * m {
                prop_assert_eq!(reflected.get(k), original.get(2 * m - k));
            }
        }

        #[test]
        fn eq10_matches_tables(m in 1usize..=64, seed in proptest::collection::vec(any::<bool>(), 65), r_pick in any::<usize>()) {
            let r = 1 + r_pick % m;
            let c = IntSet::from_members(m, (0..=m).filter(|&i| i == 0 || (i != r && seed[i]))).unwrap();
            let d = complement(&c, m, r);
            prop_assert_eq!(check_eq10_identity(&c, m, r).unwrap(), rep_tables_equal(&c, &d, 2 * m));
        }
    }
}
