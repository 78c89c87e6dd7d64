//! Closed-form Thue–Morse constructions, the binary digit lemmas, the
//! incomplete-interval witness, and classification of single scan instances.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::intset::{evil_parity, thue_morse_set, IntSet, Side, UniverseCap};
use crate::repfn::rep_fn_table;
use crate::solver::{solve_forced, Infeasible, PartitionSolution, PositionProfile};

/// A partition of `[0, m] \ {r}` (or of `[0, m]` with `r` shared).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConstruction {
    pub m: usize,
    pub r: usize,
    pub c: IntSet,
    pub d: IntSet,
}

/// A partition of the full interval `[0, m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalConstruction {
    pub m: usize,
    pub c: IntSet,
    pub d: IntSet,
}

fn pow2(k: u32, cap: UniverseCap) -> Result<usize> {
    if k >= usize::BITS - 1 {
        return Err(Error::Capacity { requested: usize::MAX, cap: cap.0 });
    }
    Ok(1 << k)
}

/// `m = 2^l`, `r = 2^(l−1)`, `C = A_(l−1) ∪ (2^(l−1) + 1 + B_(l−1))` and
/// `D = B_(l−1) ∪ (2^(l−1) + 1 + A_(l−1))`, for `l ≥ 2`.
pub fn construct_theorem1(l: u32, cap: UniverseCap) -> Result<PointConstruction> {
    if l < 2 {
        return Err(Error::Precondition("the punctured construction needs l >= 2"));
    }
    let m = pow2(l, cap)?;
    cap.check(m)?;
    let r = m / 2;
    let a = thue_morse_set(l - 1, Side::A, cap)?;
    let b = thue_morse_set(l - 1, Side::B, cap)?;
    let c = a.union(&b.shift(r + 1, cap)?).with_bound(m)?;
    let d = b.union(&a.shift(r + 1, cap)?).with_bound(m)?;
    Ok(PointConstruction { m, r, c, d })
}

/// `m = 2^l − 1`, `C = A_l`, `D = B_l`, for `l ≥ 1`.
pub fn construct_lemma6(l: u32, cap: UniverseCap) -> Result<IntervalConstruction> {
    if l < 1 {
        return Err(Error::Precondition("the interval construction needs l >= 1"));
    }
    let c = thue_morse_set(l, Side::A, cap)?;
    let d = thue_morse_set(l, Side::B, cap)?;
    Ok(IntervalConstruction { m: c.universe_bound(), c, d })
}

/// `r = 2^(2l) − 1`, `m = 2^(2l+1) − 2`, `C = A_(2l) ∪ (r + B_(2l))`,
/// `D = B_(2l) ∪ (r + A_(2l))`, for `l ≥ 1`. Here `C ∩ D = {r}`.
pub fn construct_problem2(l: u32, cap: UniverseCap) -> Result<PointConstruction> {
    if l < 1 {
        return Err(Error::Precondition("the shared-point construction needs l >= 1"));
    }
    let two_l = l.checked_mul(2).ok_or(Error::Capacity { requested: usize::MAX, cap: cap.0 })?;
    let r = pow2(two_l, cap)? - 1;
    let m = 2 * r;
    cap.check(m)?;
    let a = thue_morse_set(two_l, Side::A, cap)?;
    let b = thue_morse_set(two_l, Side::B, cap)?;
    let c = a.union(&b.shift(r, cap)?).with_bound(m)?;
    let d = b.union(&a.shift(r, cap)?).with_bound(m)?;
    Ok(PointConstruction { m, r, c, d })
}

/// `⌈log₂ M⌉` for `M ≥ 1`.
pub fn ceil_log2(m: u64) -> u32 {
    debug_assert!(m >= 1);
    u64::BITS - (m - 1).leading_zeros()
}

/// Truth values of the two halves of a digit-lemma implication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Implication {
    pub antecedent: bool,
    pub consequent: bool,
}

impl Implication {
    pub fn holds(self) -> bool {
        !self.antecedent || self.consequent
    }
}

/// Whether `M − 2^i` lies on `side` for every `i ∈ exponents`.
fn chain_on_side(m: u64, exponents: core::ops::Range<u32>, side: Side) -> bool {
    exponents.map(|i| m - (1 << i)).all(|x| Side::of(x) == side)
}

fn digit_lemma_domain(m: u64) -> Result<u32> {
    if m < 2 {
        return Err(Error::Precondition("the digit lemmas need M >= 2"));
    }
    Ok(ceil_log2(m))
}

/// With `k = ⌈log₂ M⌉`: if `M − 1, M − 2, …, M − 2^(k−1)` are all evil,
/// then `k` is odd and `M = 2^k − 1`.
pub fn lemma3(m: u64) -> Result<Implication> {
    let k = digit_lemma_domain(m)?;
    Ok(Implication {
        antecedent: chain_on_side(m, 0..k, Side::A),
        consequent: k % 2 == 1 && m == (1 << k) - 1,
    })
}

/// As [`lemma3`] with the chain odious, concluding `k` even and `M = 2^k − 1`.
pub fn lemma4(m: u64) -> Result<Implication> {
    let k = digit_lemma_domain(m)?;
    Ok(Implication {
        antecedent: chain_on_side(m, 0..k, Side::B),
        consequent: k % 2 == 0 && m == (1 << k) - 1,
    })
}

/// For even `M`: if `M − 2, M − 4, …, M − 2^(k−1)` are all evil then
/// `M = 2^k − 2`.
pub fn lemma5(m: u64) -> Result<Implication> {
    let k = digit_lemma_domain(m)?;
    if m % 2 == 1 {
        return Err(Error::Precondition("the even-offset digit lemma needs an even M"));
    }
    Ok(Implication {
        antecedent: chain_on_side(m, 1..k, Side::A),
        consequent: m == (1 << k) - 2,
    })
}

pub fn check_lemma3(m: u64) -> Result<bool> {
    lemma3(m).map(Implication::holds)
}

pub fn check_lemma4(m: u64) -> Result<bool> {
    lemma4(m).map(Implication::holds)
}

pub fn check_lemma5(m: u64) -> Result<bool> {
    lemma5(m).map(Implication::holds)
}

/// Least `n ∈ (m, 2m)` with `R_C(n) ≠ R_D(n)` for `C = A ∩ [0, m]`,
/// `D = B ∩ [0, m]`.
pub fn find_lemma7_witness(m: usize) -> Option<usize> {
    let (c, d) = thue_morse_split(m);
    let (tc, td) = (rep_fn_table(&c), rep_fn_table(&d));
    if m < 2 {
        return None;
    }
    tc.first_difference(&td, m + 1, 2 * m - 1)
}

/// `(A ∩ [0, m], B ∩ [0, m])`.
pub fn thue_morse_split(m: usize) -> (IntSet, IntSet) {
    let side = |want: u8| IntSet::from_members(m, (0..=m).filter(move |&i| evil_parity(i as u64) == want));
    (side(0).expect("members within bound"), side(1).expect("members within bound"))
}

/// Is `m + 1` a power of two.
pub fn is_mersenne(m: usize) -> bool {
    (m + 1).is_power_of_two()
}

/// The family of profiles a scan sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KindFamily {
    /// `[0, m] \ {r}` for `0 < r < m`.
    Punctured,
    /// `[0, m]`.
    Full,
    /// `[0, m]` with `r` in both classes, `0 < r ≤ m`.
    Shared,
}

impl KindFamily {
    pub fn name(self) -> &'static str {
        match self {
            KindFamily::Punctured => "punctured",
            KindFamily::Full => "full",
            KindFamily::Shared => "shared",
        }
    }

    /// All instances with `m ≤ m_max`, in `(m, r)` order.
    pub fn instances(self, m_max: usize) -> Vec<Instance> {
        let mut out = Vec::new();
        match self {
            KindFamily::Punctured => {
                for m in 2..=m_max {
                    out.extend((1..m).map(|r| Instance { m, kind: ProfileKind::PuncturedPoint(r) }));
                }
            }
            KindFamily::Full => {
                out.extend((1..=m_max).map(|m| Instance { m, kind: ProfileKind::FullInterval }));
            }
            KindFamily::Shared => {
                for m in 2..=m_max {
                    out.extend((1..=m).map(|r| Instance { m, kind: ProfileKind::SharedPoint(r) }));
                }
            }
        }
        out
    }
}

impl fmt::Display for KindFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProfileKind {
    PuncturedPoint(usize),
    FullInterval,
    SharedPoint(usize),
}

impl ProfileKind {
    pub fn family(self) -> KindFamily {
        match self {
            ProfileKind::PuncturedPoint(_) => KindFamily::Punctured,
            ProfileKind::FullInterval => KindFamily::Full,
            ProfileKind::SharedPoint(_) => KindFamily::Shared,
        }
    }

    pub fn point(self) -> Option<usize> {
        match self {
            ProfileKind::PuncturedPoint(r) | ProfileKind::SharedPoint(r) => Some(r),
            ProfileKind::FullInterval => None,
        }
    }
}

/// One `(m, kind)` cell of a scan grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instance {
    pub m: usize,
    pub kind: ProfileKind,
}

impl Instance {
    pub fn profile(&self) -> Result<PositionProfile> {
        match self.kind {
            ProfileKind::PuncturedPoint(r) => PositionProfile::punctured(self.m, r),
            ProfileKind::FullInterval => Ok(PositionProfile::full(self.m)),
            ProfileKind::SharedPoint(r) => PositionProfile::shared(self.m, r),
        }
    }

    /// Whether the closed-form results predict a solution here:
    /// `(2^l, 2^(l−1))` with `l ≥ 2` for punctured intervals, `m = 2^l − 1`
    /// for full ones, `(2^(2l+1) − 2, 2^(2l) − 1)` for a shared point.
    pub fn predicted_solution(&self) -> bool {
        let m = self.m;
        match self.kind {
            ProfileKind::PuncturedPoint(r) => m >= 4 && m.is_power_of_two() && r == m / 2,
            ProfileKind::FullInterval => m >= 1 && is_mersenne(m),
            ProfileKind::SharedPoint(r) => {
                let q = r + 1;
                q.is_power_of_two() && q.trailing_zeros() % 2 == 0 && q >= 4 && m == 2 * r
            }
        }
    }

    /// The punctured `(2, 1)` cell: excluded by the `l ≥ 2` hypothesis but
    /// reached by the `r = 1` analysis, so reported separately.
    pub fn is_anomaly(&self) -> bool {
        self.m == 2 && self.kind == ProfileKind::PuncturedPoint(1)
    }
}

/// Outcome of solving one instance, compared with the prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub instance: Instance,
    pub outcome: core::result::Result<PartitionSolution, Infeasible>,
    pub matches_theorem: bool,
    pub anomaly: bool,
}

impl Classification {
    pub fn is_violation(&self) -> bool {
        !self.matches_theorem && !self.anomaly
    }
}

pub fn classify(instance: Instance) -> Result<Classification> {
    let profile = instance.profile()?;
    let outcome = solve_forced(&profile);
    Ok(Classification {
        instance,
        matches_theorem: outcome.is_ok() == instance.predicted_solution(),
        anomaly: instance.is_anomaly(),
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repfn::{rep_fn_naive, rep_tables_equal};
    use crate::solver::verify_pair;
    use alloc::vec::Vec;

    const CAP: UniverseCap = UniverseCap::DEFAULT;

    fn members(s: &IntSet) -> Vec<usize> {
        s.iter().collect()
    }

    fn popcount_parity(n: u64) -> u32 {
        let mut ones = 0;
        let mut x = n;
        while x > 0 {
            ones += (x & 1) as u32;
            x >>= 1;
        }
        ones % 2
    }

    #[test]
    fn theorem1_examples() {
        let t = construct_theorem1(3, CAP).unwrap();
        assert_eq!((t.m, t.r), (8, 4));
        assert_eq!(members(&t.c), [0, 3, 6, 7]);
        assert_eq!(members(&t.d), [1, 2, 5, 8]);

        let t = construct_theorem1(2, CAP).unwrap();
        assert_eq!((t.m, t.r), (4, 2));
        assert_eq!(members(&t.c), [0, 4]);
        assert_eq!(members(&t.d), [1, 3]);
        assert!(verify_pair(&t.c, &t.d, &PositionProfile::punctured(4, 2).unwrap()));

        let t = construct_theorem1(4, CAP).unwrap();
        assert_eq!((t.m, t.r), (16, 8));
        assert_eq!(members(&t.c), [0, 3, 5, 6, 10, 11, 13, 16]);
        assert!(verify_pair(&t.c, &t.d, &PositionProfile::punctured(16, 8).unwrap()));

        assert!(construct_theorem1(1, CAP).is_err());
        assert!(matches!(construct_theorem1(21, CAP), Err(Error::Capacity { .. })));
    }

    #[test]
    fn lemma6_examples() {
        let t = construct_lemma6(2, CAP).unwrap();
        assert_eq!(t.m, 3);
        assert_eq!(members(&t.c), [0, 3]);
        assert_eq!(members(&t.d), [1, 2]);
        assert!(rep_tables_equal(&t.c, &t.d, 6));

        let t = construct_lemma6(3, CAP).unwrap();
        assert_eq!((t.m, members(&t.c), members(&t.d)), (7, vec![0, 3, 5, 6], vec![1, 2, 4, 7]));

        let t = construct_lemma6(1, CAP).unwrap();
        assert_eq!((t.m, members(&t.c), members(&t.d)), (1, vec![0], vec![1]));
        assert!(construct_lemma6(0, CAP).is_err());
    }

    #[test]
    fn problem2_examples() {
        let t = construct_problem2(1, CAP).unwrap();
        assert_eq!((t.m, t.r), (6, 3));
        assert_eq!(members(&t.c), [0, 3, 4, 5]);
        assert_eq!(members(&t.d), [1, 2, 3, 6]);
        assert_eq!(members(&t.c.intersection(&t.d)), [3]);
        for l in 1..=4 {
            let t = construct_problem2(l, CAP).unwrap();
            assert!(t.c.contains(0) && t.d.contains(t.m));
            assert_eq!(members(&t.c.intersection(&t.d)), [t.r]);
            assert!(rep_tables_equal(&t.c, &t.d, 2 * t.m));
        }
        assert!(construct_problem2(0, CAP).is_err());
    }

    #[test]
    fn digit_lemma_examples() {
        let l = lemma3(7).unwrap();
        assert!(l.antecedent && l.consequent);
        assert!(!lemma3(6).unwrap().antecedent);
        assert!(check_lemma3(2).unwrap());

        let l = lemma4(3).unwrap();
        assert!(l.antecedent && l.consequent);

        let l = lemma5(14).unwrap();
        assert!(l.antecedent && l.consequent);
        assert!(!lemma5(6).unwrap().antecedent);
        assert!(check_lemma5(6).unwrap());

        assert!(lemma3(1).is_err());
        assert!(lemma5(7).is_err());
    }

    #[test]
    fn digit_lemmas_fail_only_at_m_two() {
        // M = 2: k = 1, the odious chain is {1} and the evil even-offset
        // chain is empty, yet neither consequent holds.
        assert_eq!(lemma4(2).unwrap(), Implication { antecedent: true, consequent: false });
        assert_eq!(lemma5(2).unwrap(), Implication { antecedent: true, consequent: false });
        for m in 3..=4096u64 {
            assert!(check_lemma3(m).unwrap(), "check_lemma3 at {m}");
            assert!(check_lemma4(m).unwrap(), "check_lemma4 at {m}");
            if m % 2 == 0 {
                assert!(check_lemma5(m).unwrap(), "check_lemma5 at {m}");
            }
        }
    }

    #[test]
    fn chain_membership_matches_loop_oracle() {
        for m in 2..=600u64 {
            let k = ceil_log2(m);
            assert!(1u64 << k >= m && (k == 0 || 1u64 << (k - 1) < m));
            let a_chain = (0..k).all(|i| popcount_parity(m - (1 << i)) == 0);
            assert_eq!(lemma3(m).unwrap().antecedent, a_chain);
            let b_chain = (0..k).all(|i| popcount_parity(m - (1 << i)) == 1);
            assert_eq!(lemma4(m).unwrap().antecedent, b_chain);
        }
    }

    #[test]
    fn lemma7_examples() {
        assert_eq!(find_lemma7_witness(4), Some(5));
        let (c, d) = thue_morse_split(4);
        assert_eq!((rep_fn_naive(&c, 5), rep_fn_naive(&d, 5)), (0, 1));
        assert_eq!(find_lemma7_witness(7), None);
        let w = find_lemma7_witness(5).unwrap();
        assert!(5 < w && w < 10);
        assert_eq!(find_lemma7_witness(1), None);
    }

    #[test]
    fn predictions() {
        let p = |m, r| Instance { m, kind: ProfileKind::PuncturedPoint(r) }.predicted_solution();
        assert!(p(4, 2) && p(8, 4) && p(64, 32));
        assert!(!p(2, 1) && !p(8, 3) && !p(12, 6));
        let s = |m, r| Instance { m, kind: ProfileKind::SharedPoint(r) }.predicted_solution();
        assert!(s(6, 3) && s(30, 15) && s(126, 63));
        assert!(!s(14, 7) && !s(2, 1));
        let f = |m| Instance { m, kind: ProfileKind::FullInterval }.predicted_solution();
        assert!(f(1) && f(3) && f(127) && !f(2) && !f(0));
    }

    #[test]
    fn instance_grids() {
        assert_eq!(KindFamily::Punctured.instances(64).len(), 63 * 64 / 2);
        assert_eq!(KindFamily::Full.instances(15).len(), 15);
        assert_eq!(KindFamily::Shared.instances(4).len(), 2 + 3 + 4);
        let grid = KindFamily::Punctured.instances(10);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn classification_of_small_grids() {
        let found: Vec<(usize, Option<usize>)> = KindFamily::Punctured
            .instances(16)
            .into_iter()
            .map(|i| classify(i).unwrap())
            .filter(|c| c.outcome.is_ok())
            .map(|c| (c.instance.m, c.instance.kind.point()))
            .collect();
        assert_eq!(found, [(2, Some(1)), (4, Some(2)), (8, Some(4)), (16, Some(8))]);

        let shared: Vec<Classification> =
            KindFamily::Shared.instances(6).into_iter().map(|i| classify(i).unwrap()).collect();
        let hits: Vec<_> = shared.iter().filter(|c| c.outcome.is_ok()).map(|c| c.instance).collect();
        assert_eq!(hits, [Instance { m: 6, kind: ProfileKind::SharedPoint(3) }]);
        assert!(shared.iter().all(|c| c.matches_theorem));

        let anomaly = classify(Instance { m: 2, kind: ProfileKind::PuncturedPoint(1) }).unwrap();
        assert!(anomaly.anomaly && !anomaly.matches_theorem && !anomaly.is_violation());
    }
}
