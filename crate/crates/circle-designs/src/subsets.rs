//! Binomial coefficients and colexicographic k-subset enumeration.
//!
//! Subsets are strictly increasing index lists. Colex order compares the
//! largest differing element, so the subsets of {0, …, n−1} of size k start
//! {0,…,k−1} and the rank of {i₁ < … < i_k} is Σ_j C(i_j, j) (1-based j).
//! Colex ranks are independent of n, which makes range partitioning of a
//! scan trivial: worker w handles ranks [lo, hi) and seeks its start subset
//! by unranking.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

/// C(n, k) as an exact u64. Panics on overflow (callers stay well inside
/// u64 for every supported workload: n ≤ 129, k ≤ 8).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u64 = 1;
    for i in 1..=k {
        // Multiply before dividing; the running product of i consecutive
        // binomial prefixes is always divisible by i.
        result = result
            .checked_mul(n - k + i)
            .expect("binomial overflows u64")
            / i;
    }
    result
}

/// C(n, k) as an arbitrary-precision integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut result = BigUint::from(1u32);
    for i in 1..=k {
        result = result * (n - k + i) / i;
    }
    result
}

/// Whether C(n, k) is odd, by Lucas' theorem: C(n, k) is odd exactly when
/// the base-2 digits of k are dominated by those of n.
#[inline]
pub fn binomial_odd(n: u64, k: u64) -> bool {
    k <= n && (k & (n - k)) == 0
}

/// Colex rank of a strictly increasing subset.
pub fn colex_rank(set: &[u8]) -> u64 {
    set.iter()
        .enumerate()
        .map(|(j, &i)| binomial(i as u64, j as u64 + 1))
        .sum()
}

/// Inverse of `colex_rank`: writes the k-subset with the given colex rank
/// into `out` (out.len() = k).
pub fn colex_unrank(k: usize, mut rank: u64, out: &mut [u8]) {
    debug_assert_eq!(out.len(), k);
    for j in (1..=k).rev() {
        // Largest i with C(i, j) <= rank; since C(i, j) grows in i, walk up.
        let mut i = j as u64 - 1;
        let mut c = 0u64; // C(i, j) with i = j−1 is 0
        loop {
            let next = binomial(i + 1, j as u64);
            if next > rank {
                break;
            }
            i += 1;
            c = next;
        }
        rank -= c;
        out[j - 1] = i as u8;
    }
}

/// In-place colex successor among k-subsets of {0, …, n−1}.
/// Returns false when `set` was the last subset.
#[inline]
pub fn colex_next(set: &mut [u8], n: u8) -> bool {
    let k = set.len();
    for i in 0..k {
        let limit = if i + 1 < k { set[i + 1] } else { n };
        if set[i] + 1 < limit {
            set[i] += 1;
            for (j, v) in set.iter_mut().enumerate().take(i) {
                *v = j as u8;
            }
            return true;
        }
    }
    false
}

/// Streams the k-subsets of {0, …, n−1} with colex ranks in [lo, hi) into
/// `visit`, in colex order, stopping early when `visit` returns false.
/// The subset buffer is reused between calls.
pub fn try_for_each_ksubset_in_range<F: FnMut(&[u8]) -> bool>(
    n: u32,
    k: usize,
    lo: u64,
    hi: u64,
    mut visit: F,
) {
    let total = binomial(n as u64, k as u64);
    let hi = hi.min(total);
    if lo >= hi || k == 0 {
        if k == 0 && lo == 0 && hi > 0 {
            visit(&[]);
        }
        return;
    }
    let mut set = [0u8; 16];
    let set = &mut set[..k];
    colex_unrank(k, lo, set);
    let mut rank = lo;
    loop {
        if !visit(set) {
            break;
        }
        rank += 1;
        if rank == hi || !colex_next(set, n as u8) {
            break;
        }
    }
}

/// Streams the k-subsets of {0, …, n−1} with colex ranks in [lo, hi) into
/// `visit`, in colex order. The subset buffer is reused between calls.
pub fn for_each_ksubset_in_range<F: FnMut(&[u8])>(
    n: u32,
    k: usize,
    lo: u64,
    hi: u64,
    mut visit: F,
) {
    try_for_each_ksubset_in_range(n, k, lo, hi, |set| {
        visit(set);
        true
    });
}

/// Streams all k-subsets of {0, …, n−1} in colex order.
pub fn for_each_ksubset<F: FnMut(&[u8])>(n: u32, k: usize, visit: F) {
    for_each_ksubset_in_range(n, k, 0, u64::MAX, visit);
}

/// Enumerates the t-subsets of `block` (itself a strictly increasing list)
/// in colex order of positions, reusing a scratch buffer.
pub fn for_each_tsubset_of<F: FnMut(&[u8])>(block: &[u8], t: usize, mut visit: F) {
    debug_assert!(t <= block.len());
    let mut pos = [0u8; 16];
    let pos = &mut pos[..t];
    for (j, p) in pos.iter_mut().enumerate() {
        *p = j as u8;
    }
    let mut sub = [0u8; 16];
    let sub = &mut sub[..t];
    loop {
        for (j, &p) in pos.iter().enumerate() {
            sub[j] = block[p as usize];
        }
        visit(sub);
        if !colex_next(pos, block.len() as u8) {
            break;
        }
    }
}

/// Flat lookup table of C(i, j) for i ≤ nmax, j ≤ kmax, laid out row-major
/// as table[i * (kmax+1) + j]. Used by counting loops that rank t-subsets.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    kmax: usize,
    table: Vec<u64>,
}

impl BinomialTable {
    /// Builds the table by Pascal's rule.
    pub fn new(nmax: usize, kmax: usize) -> BinomialTable {
        let width = kmax + 1;
        let mut table = vec![0u64; (nmax + 1) * width];
        for i in 0..=nmax {
            table[i * width] = 1;
            for j in 1..=kmax.min(i) {
                table[i * width + j] = if i == j {
                    1
                } else {
                    table[(i - 1) * width + j - 1] + table[(i - 1) * width + j]
                };
            }
        }
        BinomialTable { kmax, table }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.table[i * (self.kmax + 1) + j]
    }

    /// Colex rank of a strictly increasing subset via table lookups.
    #[inline]
    pub fn colex_rank(&self, set: &[u8]) -> u64 {
        let mut r = 0;
        for (j, &i) in set.iter().enumerate() {
            r += self.get(i as usize, j + 1);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(33, 4), 40920);
        assert_eq!(binomial(33, 7), 4_272_048);
        assert_eq!(binomial(65, 7), 696_190_560);
        assert_eq!(binomial(129, 7), 99_949_406_400);
        // Big-integer path agrees with the u64 path where the latter is exact,
        // and satisfies Pascal's rule beyond it.
        for n in 0..=60u64 {
            for k in 0..=n.min(8) {
                assert_eq!(binomial_big(n, k), binomial(n, k).into());
            }
        }
        assert_eq!(
            binomial_big(129, 64),
            binomial_big(128, 63) + binomial_big(128, 64)
        );
    }

    #[test]
    fn binomial_parity_matches_direct_computation() {
        for n in 0..=20u64 {
            for k in 0..=n {
                let exact = binomial_big(n, k) % 2u32;
                assert_eq!(
                    binomial_odd(n, k),
                    exact == 1u32.into(),
                    "parity of C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn colex_rank_roundtrip_exhaustive() {
        let (n, k) = (10u32, 4usize);
        let mut expected_rank = 0u64;
        let mut prev: Option<Vec<u8>> = None;
        for_each_ksubset(n, k, |set| {
            assert!(set.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(colex_rank(set), expected_rank);
            let mut out = [0u8; 4];
            colex_unrank(k, expected_rank, &mut out);
            assert_eq!(&out[..], set);
            // Colex order: the largest differing entry decides.
            if let Some(p) = &prev {
                let rev_cmp = set.iter().rev().cmp(p.iter().rev());
                assert_eq!(rev_cmp, core::cmp::Ordering::Greater);
            }
            prev = Some(set.to_vec());
            expected_rank += 1;
        });
        assert_eq!(expected_rank, binomial(n as u64, k as u64));
    }

    #[test]
    fn range_enumeration_is_a_contiguous_slice() {
        let (n, k) = (12u32, 5usize);
        let mut all = Vec::new();
        for_each_ksubset(n, k, |s| all.push(s.to_vec()));
        let (lo, hi) = (100u64, 317u64);
        let mut ranged = Vec::new();
        for_each_ksubset_in_range(n, k, lo, hi, |s| ranged.push(s.to_vec()));
        assert_eq!(&all[lo as usize..hi as usize], &ranged[..]);
        // Degenerate ranges.
        let mut none = 0;
        for_each_ksubset_in_range(n, k, 50, 50, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn tsubsets_of_block_are_all_t_subsets() {
        let block = [2u8, 3, 5, 8, 13];
        let mut seen = Vec::new();
        for_each_tsubset_of(&block, 3, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len() as u64, binomial(5, 3));
        for s in &seen {
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|x| block.contains(x)));
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len() as u64, binomial(5, 3));
    }

    #[test]
    fn binomial_table_agrees() {
        let t = BinomialTable::new(40, 8);
        for i in 0..=40 {
            for j in 0..=8usize.min(i) {
                assert_eq!(t.get(i, j), binomial(i as u64, j as u64));
            }
        }
        assert_eq!(t.colex_rank(&[1, 4, 9]), colex_rank(&[1, 4, 9]));
    }
}
