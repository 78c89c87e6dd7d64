//! Word-level helpers shared by the set type, the convolution and the solver.

pub(crate) const WORD_BITS: usize = u64::BITS as usize;

#[inline]
pub(crate) fn words_for(bound: usize) -> usize {
    bound / WORD_BITS + 1
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    words
        .get(i / WORD_BITS)
        .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

#[inline]
fn word(words: &[u64], idx: isize) -> u64 {
    if idx < 0 {
        0
    } else {
        words.get(idx as usize).copied().unwrap_or(0)
    }
}

/// The 64 bits of `words` starting at bit position `start`, which may be
/// negative or past the end; missing positions read as zero.
#[inline]
pub(crate) fn window(words: &[u64], start: isize) -> u64 {
    let idx = start.div_euclid(WORD_BITS as isize);
    let sh = start.rem_euclid(WORD_BITS as isize) as u32;
    let lo = word(words, idx) >> sh;
    if sh == 0 {
        lo
    } else {
        lo | (word(words, idx + 1) << (WORD_BITS as u32 - sh))
    }
}

/// Number of `i < 64 * upto_words` with bit `i` of `a` and bit `i + offset`
/// of `b` both set.
#[inline]
pub(crate) fn and_shifted_popcount(a: &[u64], b: &[u64], offset: isize, upto_words: usize) -> u32 {
    let mut total = 0;
    for (k, &aw) in a.iter().take(upto_words).enumerate() {
        if aw != 0 {
            total += (aw & window(b, (k * WORD_BITS) as isize + offset)).count_ones();
        }
    }
    total
}

/// Slice with trailing zero words removed.
#[inline]
pub(crate) fn trimmed(words: &[u64]) -> &[u64] {
    let end = words.iter().rposition(|&w| w != 0).map_or(0, |p| p + 1);
    &words[..end]
}
