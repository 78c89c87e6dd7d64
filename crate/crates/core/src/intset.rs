//! Finite sets of nonnegative integers stored as dense bit vectors.
//!
//! An [`IntSet`] carries a `universe_bound`: every member is at most this
//! value. The bound is bookkeeping for allocation and for operations such as
//! [`IntSet::reflect`]; equality and hashing only look at the members.
//!
//! Sets are values. Every transform returns a new set.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::hash::{Hash, Hasher};
use core::str::FromStr;

use crate::bits::{self, WORD_BITS};
use crate::error::{Error, Result};

/// Largest integer any constructor is allowed to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniverseCap(pub usize);

impl UniverseCap {
    pub const DEFAULT: UniverseCap = UniverseCap(1 << 20);

    pub fn check(self, value: usize) -> Result<()> {
        if value > self.0 {
            Err(Error::Capacity { requested: value, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for UniverseCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// 0 when `n` has an even number of one bits (an evil number), 1 otherwise.
#[inline]
pub fn evil_parity(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// The two classes of the Thue–Morse split of the nonnegative integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Even number of one bits.
    A,
    /// Odd number of one bits.
    B,
}

impl Side {
    pub fn of(n: u64) -> Side {
        if evil_parity(n) == 0 {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// `A ∩ [0, 2^l − 1]` or `B ∩ [0, 2^l − 1]`, with universe bound `2^l − 1`.
///
/// `l = 0` is accepted and gives `{0}` for side A and the empty set for B.
pub fn thue_morse_set(l: u32, side: Side, cap: UniverseCap) -> Result<IntSet> {
    let size = 1usize
        .checked_shl(l)
        .filter(|_| l < usize::BITS - 1)
        .ok_or(Error::Capacity { requested: usize::MAX, cap: cap.0 })?;
    if size > cap.0 {
        return Err(Error::Capacity { requested: size, cap: cap.0 });
    }
    let bound = size - 1;
    let mut words = vec![0u64; bits::words_for(bound)];
    // The parity pattern of one aligned 64-bit block, flipped per block parity.
    let base: u64 = (0..64u64)
        .filter(|&i| evil_parity(i) == 1)
        .fold(0, |acc, i| acc | (1 << i));
    for (k, w) in words.iter_mut().enumerate() {
        let odd = base ^ if evil_parity(k as u64) == 1 { u64::MAX } else { 0 };
        *w = match side {
            Side::A => !odd,
            Side::B => odd,
        };
    }
    let mut set = IntSet { words, bound };
    set.clear_above_bound();
    Ok(set)
}

/// A finite set of nonnegative integers with an inclusive universe bound.
#[derive(Clone)]
pub struct IntSet {
    words: Vec<u64>,
    bound: usize,
}

impl IntSet {
    /// The empty set over `[0, bound]`.
    pub fn empty(bound: usize) -> IntSet {
        IntSet { words: vec![0; bits::words_for(bound)], bound }
    }

    /// Builds a set from members, all of which must be at most `bound`.
    pub fn from_members<I>(bound: usize, members: I) -> Result<IntSet>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = IntSet::empty(bound);
        for x in members {
            if x > bound {
                return Err(Error::OutOfRange { value: x, bound });
            }
            bits::set(&mut set.words, x);
        }
        Ok(set)
    }

    /// Convenience constructor whose bound is the largest member (0 if empty).
    pub fn from_slice(members: &[usize]) -> IntSet {
        let bound = members.iter().copied().max().unwrap_or(0);
        IntSet::from_members(bound, members.iter().copied()).expect("bound covers all members")
    }

    /// `[lo, hi]` over the universe `[0, hi]`.
    pub fn interval(lo: usize, hi: usize) -> IntSet {
        IntSet::from_members(hi, lo..=hi).expect("interval lies below its bound")
    }

    pub(crate) fn from_words(mut words: Vec<u64>, bound: usize) -> IntSet {
        words.resize(bits::words_for(bound), 0);
        let mut set = IntSet { words, bound };
        set.clear_above_bound();
        set
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_above_bound(&mut self) {
        let last = self.words.len() - 1;
        let used = self.bound % WORD_BITS + 1;
        if used < WORD_BITS {
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    pub fn universe_bound(&self) -> usize {
        self.bound
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        bits::get(&self.words, x)
    }

    /// Membership indicator χ_S(x) as 0 or 1.
    #[inline]
    pub fn indicator(&self, x: usize) -> u8 {
        self.contains(x) as u8
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<usize> {
        let (k, w) = self.words.iter().enumerate().rev().find(|(_, &w)| w != 0)?;
        Some(k * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    /// Members in strictly increasing order.
    pub fn iter(&self) -> Members<'_> {
        Members { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    /// Same members over a different bound.
    pub fn with_bound(&self, bound: usize) -> Result<IntSet> {
        if let Some(max) = self.max() {
            if max > bound {
                return Err(Error::OutOfRange { value: max, bound });
            }
        }
        Ok(IntSet::from_words(self.words.clone(), bound))
    }

    /// Members that are at most `hi`; the bound shrinks to `hi` if smaller.
    pub fn restrict(&self, hi: usize) -> IntSet {
        let bound = hi.min(self.bound);
        IntSet::from_words(self.words[..bits::words_for(bound)].to_vec(), bound)
    }

    fn zip_words(&self, other: &IntSet, f: impl Fn(u64, u64) -> u64) -> IntSet {
        let bound = self.bound.max(other.bound);
        let n = bits::words_for(bound);
        let words = (0..n)
            .map(|k| {
                let a = self.words.get(k).copied().unwrap_or(0);
                let b = other.words.get(k).copied().unwrap_or(0);
                f(a, b)
            })
            .collect();
        IntSet::from_words(words, bound)
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &IntSet) -> IntSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &IntSet) -> IntSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_disjoint(&self, other: &IntSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.difference(other).is_empty()
    }

    /// `{s + t : s ∈ S}` with universe bound raised by `t`.
    pub fn shift(&self, t: usize, cap: UniverseCap) -> Result<IntSet> {
        let bound = self
            .bound
            .checked_add(t)
            .ok_or(Error::Capacity { requested: usize::MAX, cap: cap.0 })?;
        if let Some(max) = self.max() {
            cap.check(max + t)?;
        }
        let bound = bound.min(cap.0.max(self.bound));
        let mut words = vec![0u64; bits::words_for(bound)];
        let word_shift = t / WORD_BITS;
        let bit_shift = t % WORD_BITS;
        for (k, &w) in self.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = k + word_shift;
            words[lo] |= w << bit_shift;
            if bit_shift != 0 && (w >> (WORD_BITS - bit_shift)) != 0 {
                words[lo + 1] |= w >> (WORD_BITS - bit_shift);
            }
        }
        Ok(IntSet::from_words(words, bound))
    }

    /// `{m − s : s ∈ S}` over the universe `[0, m]`.
    pub fn reflect(&self, m: usize) -> Result<IntSet> {
        if let Some(max) = self.max() {
            if max > m {
                return Err(Error::OutOfRange { value: max, bound: m });
            }
        }
        let mut words = vec![0u64; bits::words_for(m)];
        for s in self.iter() {
            bits::set(&mut words, m - s);
        }
        Ok(IntSet { words, bound: m })
    }

    /// Parses the comma-separated decimal form (strictly increasing, empty
    /// string for the empty set) or a `0x` hex bitmask where bit `i` set means
    /// `i` is a member. The bound of the result is its largest member.
    pub fn parse_literal(text: &str, cap: UniverseCap) -> Result<IntSet> {
        let text = text.trim();
        if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            return parse_hex(hex, cap);
        }
        if text.is_empty() {
            return Ok(IntSet::empty(0));
        }
        let mut members = Vec::new();
        for (token, field) in text.split(',').enumerate() {
            let field = field.trim();
            if field.is_empty() {
                return Err(Error::Literal { token, reason: "empty field" });
            }
            let value: usize = field
                .parse()
                .map_err(|_| Error::Literal { token, reason: "not a nonnegative decimal integer" })?;
            if members.last().is_some_and(|&prev| prev >= value) {
                return Err(Error::Literal { token, reason: "members must be strictly increasing" });
            }
            cap.check(value)?;
            members.push(value);
        }
        Ok(IntSet::from_slice(&members))
    }

    /// Canonical comma-separated form; identical to the `Display` output.
    pub fn to_literal(&self) -> String {
        let mut out = String::new();
        write!(out, "{self}").expect("writing to a String cannot fail");
        out
    }
}

fn parse_hex(hex: &str, cap: UniverseCap) -> Result<IntSet> {
    let digits: Vec<u8> = hex.bytes().filter(|&b| b != b'_').collect();
    if digits.is_empty() {
        return Err(Error::Literal { token: 0, reason: "hex mask has no digits" });
    }
    let mut words = vec![0u64; digits.len().div_ceil(16)];
    for (pos, &c) in digits.iter().rev().enumerate() {
        let nibble = (c as char)
            .to_digit(16)
            .ok_or(Error::Literal { token: 0, reason: "invalid hex digit" })? as u64;
        words[pos / 16] |= nibble << (4 * (pos % 16));
    }
    let wide = IntSet::from_words(words, digits.len() * 4 - 1);
    let max = wide.max().unwrap_or(0);
    cap.check(max)?;
    wide.with_bound(max)
}

impl PartialEq for IntSet {
    fn eq(&self, other: &IntSet) -> bool {
        bits::trimmed(&self.words) == bits::trimmed(&other.words)
    }
}

impl Eq for IntSet {}

impl Hash for IntSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        bits::trimmed(&self.words).hash(state);
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}⊆[0,{}]", self.bound)
    }
}

impl FromStr for IntSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntSet> {
        IntSet::parse_literal(s, UniverseCap::DEFAULT)
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = usize;
    type IntoIter = Members<'a>;

    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

/// Iterator over the members of an [`IntSet`] in increasing order.
pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD_BITS + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn members(s: &IntSet) -> Vec<usize> {
        s.iter().collect()
    }

    #[test]
    fn evil_parity_examples() {
        assert_eq!(evil_parity(0), 0);
        assert_eq!(evil_parity(3), 0);
        assert_eq!(evil_parity(4), 1);
        for n in 0..4096u64 {
            let ones = (0..64).filter(|b| (n >> b) & 1 == 1).count();
            assert_eq!(evil_parity(n) as usize, ones % 2);
        }
    }

    #[test]
    fn thue_morse_examples() {
        let cap = UniverseCap::DEFAULT;
        assert_eq!(members(&thue_morse_set(2, Side::A, cap).unwrap()), [0, 3]);
        assert_eq!(members(&thue_morse_set(3, Side::B, cap).unwrap()), [1, 2, 4, 7]);
        assert_eq!(members(&thue_morse_set(0, Side::A, cap).unwrap()), [0]);
        assert!(thue_morse_set(0, Side::B, cap).unwrap().is_empty());
        assert_eq!(thue_morse_set(3, Side::B, cap).unwrap().universe_bound(), 7);
    }

    #[test]
    fn thue_morse_matches_popcount_filter() {
        for l in 0..=12 {
            for side in [Side::A, Side::B] {
                let s = thue_morse_set(l, side, UniverseCap::DEFAULT).unwrap();
                let expect: Vec<usize> =
                    (0..1usize << l).filter(|&n| Side::of(n as u64) == side).collect();
                assert_eq!(members(&s), expect, "l={l} side={side:?}");
            }
        }
    }

    #[test]
    fn thue_morse_respects_cap() {
        assert!(thue_morse_set(4, Side::A, UniverseCap(16)).is_ok());
        assert_eq!(
            thue_morse_set(5, Side::A, UniverseCap(16)),
            Err(Error::Capacity { requested: 32, cap: 16 })
        );
        assert!(thue_morse_set(200, Side::A, UniverseCap::DEFAULT).is_err());
    }

    #[test]
    fn thue_morse_partition_and_recursion() {
        let cap = UniverseCap::DEFAULT;
        for l in 0..=16u32 {
            let a = thue_morse_set(l, Side::A, cap).unwrap();
            let b = thue_morse_set(l, Side::B, cap).unwrap();
            let top = (1usize << l) - 1;
            assert_eq!(a.union(&b), IntSet::interval(0, top));
            assert!(a.is_disjoint(&b));
            if l >= 1 {
                assert_eq!(a.len(), 1 << (l - 1));
                assert_eq!(b.len(), 1 << (l - 1));
            }
            if l < 16 {
                let a_next = thue_morse_set(l + 1, Side::A, cap).unwrap();
                let b_next = thue_morse_set(l + 1, Side::B, cap).unwrap();
                assert_eq!(a_next, a.union(&b.shift(1 << l, cap).unwrap()));
                assert_eq!(b_next, b.union(&a.shift(1 << l, cap).unwrap()));
            }
        }
    }

    #[test]
    fn shift_examples() {
        let cap = UniverseCap::DEFAULT;
        assert_eq!(members(&IntSet::from_slice(&[1, 2]).shift(5, cap).unwrap()), [6, 7]);
        assert!(IntSet::empty(0).shift(9, cap).unwrap().is_empty());
        assert_eq!(members(&IntSet::from_slice(&[0]).shift(0, cap).unwrap()), [0]);
        assert_eq!(
            IntSet::from_slice(&[10]).shift(7, UniverseCap(16)),
            Err(Error::Capacity { requested: 17, cap: 16 })
        );
    }

    #[test]
    fn reflect_examples() {
        let c = IntSet::from_slice(&[0, 3, 6, 7]);
        assert_eq!(members(&c.reflect(8).unwrap()), [1, 2, 5, 8]);
        assert!(IntSet::empty(5).reflect(5).unwrap().is_empty());
        assert_eq!(members(&IntSet::from_slice(&[4]).reflect(8).unwrap()), [4]);
        assert_eq!(
            IntSet::from_slice(&[2, 9]).reflect(8),
            Err(Error::OutOfRange { value: 9, bound: 8 })
        );
    }

    #[test]
    fn equality_ignores_bound() {
        let a = IntSet::from_members(10, [1, 5]).unwrap();
        let b = IntSet::from_members(300, [1, 5]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, IntSet::from_slice(&[1]));
    }

    #[test]
    fn literal_forms() {
        let s: IntSet = "0,3,6,7".parse().unwrap();
        assert_eq!(members(&s), [0, 3, 6, 7]);
        assert_eq!(s.to_literal(), "0,3,6,7");
        assert!("".parse::<IntSet>().unwrap().is_empty());
        assert_eq!(IntSet::empty(9).to_literal(), "");
        assert_eq!(members(&"0xC9".parse::<IntSet>().unwrap()), [0, 3, 6, 7]);
        assert_eq!(
            members(&"0x1_0000_0000_0000_0001".parse::<IntSet>().unwrap()),
            [0, 64]
        );
        assert!(matches!("3,1".parse::<IntSet>(), Err(Error::Literal { token: 1, .. })));
        assert!(matches!("1,1".parse::<IntSet>(), Err(Error::Literal { token: 1, .. })));
        assert!(matches!("1,,2".parse::<IntSet>(), Err(Error::Literal { token: 1, .. })));
        assert!(matches!("a".parse::<IntSet>(), Err(Error::Literal { token: 0, .. })));
        assert!(matches!("0xZZ".parse::<IntSet>(), Err(Error::Literal { .. })));
        assert!(matches!(
            IntSet::parse_literal("1,100", UniverseCap(50)),
            Err(Error::Capacity { requested: 100, cap: 50 })
        ));
    }

    fn arb_set(max: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
        (0..=max).prop_flat_map(|m| (Just(m), proptest::collection::vec(0..=m, 0..40)))
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution((m, raw) in arb_set(300)) {
            let s = IntSet::from_members(m, raw).unwrap();
            prop_assert_eq!(s.reflect(m).unwrap().reflect(m).unwrap(), s);
        }

        #[test]
        fn shifts_compose((_, raw) in arb_set(200), a in 0usize..300, b in 0usize..300) {
            let s = IntSet::from_slice(&raw);
            let cap = UniverseCap::DEFAULT;
            prop_assert_eq!(
                s.shift(a, cap).unwrap().shift(b, cap).unwrap(),
                s.shift(a + b, cap).unwrap()
            );
        }

        #[test]
        fn iteration_is_strictly_increasing_and_complete((m, raw) in arb_set(500)) {
            let s = IntSet::from_members(m, raw.iter().copied()).unwrap();
            let got: Vec<usize> = s.iter().collect();
            let mut expect = raw.clone();
            expect.sort_unstable();
            expect.dedup();
            prop_assert_eq!(&got, &expect);
            prop_assert_eq!(s.max(), expect.last().copied());
            prop_assert_eq!(s.len(), expect.len());
        }

        #[test]
        fn literal_round_trips((m, raw) in arb_set(400)) {
            let s = IntSet::from_members(m, raw).unwrap();
            prop_assert_eq!(s.to_literal().parse::<IntSet>().unwrap(), s);
        }
    }
}
