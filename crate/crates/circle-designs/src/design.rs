//! Exhaustive t-design verification and design-index arithmetic.
//!
//! A block set over v points with blocks of size k is a t-(v, k, λ) design
//! when every t-subset of the point set lies in exactly λ blocks. The
//! verifier here is exhaustive: it maintains one counter per t-subset
//! (indexed by colexicographic rank) and checks them all, so a `Design`
//! verdict is a finite proof by complete enumeration, not a sample.

use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::BlockSet;
use crate::subsets::{
    binomial, colex_unrank, for_each_ksubset, for_each_tsubset_of, BinomialTable,
};
use crate::{Error, Result};

/// Outcome of exhaustive t-design verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every t-subset is covered exactly `lambda` times.
    Design {
        t: u32,
        lambda: u64,
        /// True when the block set is empty (λ = 0, vacuously a design).
        is_empty: bool,
        /// True when λ equals C(v−t, k−t), i.e. the blocks cover every
        /// t-subset as often as the complete design does.
        is_complete: bool,
    },
    /// Two t-subsets have different coverage counts. `first` is the
    /// colex-first t-subset with its count; `witness` is the colex-first
    /// t-subset whose count differs from `first_count`.
    NotDesign {
        t: u32,
        first: Vec<u8>,
        first_count: u64,
        witness: Vec<u8>,
        witness_count: u64,
    },
}

impl Verdict {
    /// The design index if the verdict is `Design`.
    pub fn lambda(&self) -> Option<u64> {
        match *self {
            Verdict::Design { lambda, .. } => Some(lambda),
            Verdict::NotDesign { .. } => None,
        }
    }
}

/// Streaming t-subset coverage counter.
///
/// Blocks can be fed incrementally (e.g. during a scan that never
/// materializes the block set) and counters from disjoint scan ranges can
/// be merged, so verification parallelizes by rank-range partitioning.
#[derive(Clone, Debug)]
pub struct DesignCounter {
    v: u16,
    k: u8,
    t: u32,
    counts: Vec<u32>,
    num_blocks: u64,
    table: BinomialTable,
}

impl DesignCounter {
    /// A fresh counter for t-subsets of a v-point set, block size k.
    pub fn new(v: u16, k: u8, t: u32) -> Result<DesignCounter> {
        if t == 0 || t > k as u32 || k as u16 > v {
            return Err(Error::BadParameters(alloc::format!(
                "need 0 < t <= k <= v, got t={t}, k={k}, v={v}"
            )));
        }
        let n = binomial(v as u64, t as u64);
        Ok(DesignCounter {
            v,
            k,
            t,
            counts: vec![0u32; n as usize],
            num_blocks: 0,
            table: BinomialTable::new(v as usize, t as usize),
        })
    }

    /// Number of blocks fed so far.
    pub fn num_blocks(&self) -> u64 {
        self.num_blocks
    }

    /// Counts all t-subsets of one block.
    pub fn add_block(&mut self, block: &[u8]) {
        debug_assert_eq!(block.len(), self.k as usize);
        self.num_blocks += 1;
        let table = &self.table;
        let counts = &mut self.counts;
        for_each_tsubset_of(block, self.t as usize, |sub| {
            counts[table.colex_rank(sub) as usize] += 1;
        });
    }

    /// Adds the counters of a disjoint scan range.
    pub fn merge(&mut self, other: &DesignCounter) {
        assert_eq!((self.v, self.k, self.t), (other.v, other.k, other.t));
        self.num_blocks += other.num_blocks;
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += *b;
        }
    }

    /// Scans all counters and renders the verdict.
    pub fn verdict(&self) -> Verdict {
        let t = self.t;
        let lambda = self.counts[0] as u64;
        for (rank, &c) in self.counts.iter().enumerate() {
            if c as u64 != lambda {
                let mut first = vec![0u8; t as usize];
                let mut witness = vec![0u8; t as usize];
                colex_unrank(t as usize, 0, &mut first);
                colex_unrank(t as usize, rank as u64, &mut witness);
                return Verdict::NotDesign {
                    t,
                    first,
                    first_count: lambda,
                    witness,
                    witness_count: c as u64,
                };
            }
        }
        let complete = binomial((self.v - t as u16) as u64, (self.k as u32 - t) as u64);
        Verdict::Design {
            t,
            lambda,
            is_empty: self.num_blocks == 0,
            is_complete: lambda == complete,
        }
    }
}

/// Exhaustively verifies whether the block set is a t-design.
pub fn verify_t_design(bs: &BlockSet, t: u32) -> Result<Verdict> {
    let mut counter = DesignCounter::new(bs.v(), bs.k(), t)?;
    for b in bs.iter() {
        counter.add_block(b);
    }
    Ok(counter.verdict())
}

/// The derived index λ_s = λ · C(v−s, t−s) / C(k−s, t−s) for 0 ≤ s ≤ t:
/// every t-(v, k, λ) design is also an s-(v, k, λ_s) design. Errors if the
/// division is not exact (then no t-design with these parameters exists).
pub fn lambda_s(v: u64, k: u64, t: u64, lambda: u64, s: u64) -> Result<u64> {
    if s > t || t > k || k > v {
        return Err(Error::BadParameters(alloc::format!(
            "need s <= t <= k <= v, got s={s}, t={t}, k={k}, v={v}"
        )));
    }
    let num = lambda * binomial(v - s, t - s);
    let den = binomial(k - s, t - s);
    if !num.is_multiple_of(den) {
        return Err(Error::NonIntegralIndex { num, den });
    }
    Ok(num / den)
}

/// Index of the supplementary design (block complements U ∖ B, block size
/// v − k): λ' = λ · C(v−t, k) / C(v−t, k−t).
pub fn supplementary_index(v: u64, k: u64, t: u64, lambda: u64) -> Result<u64> {
    if t > k || k > v || t > v - k {
        return Err(Error::BadParameters(alloc::format!(
            "supplementary design needs t <= min(k, v−k), got t={t}, k={k}, v={v}"
        )));
    }
    let num = lambda * binomial(v - t, k);
    let den = binomial(v - t, k - t);
    if !num.is_multiple_of(den) {
        return Err(Error::NonIntegralIndex { num, den });
    }
    Ok(num / den)
}

/// Index of the complementary design (all k-subsets that are not blocks):
/// λ'' = C(v−t, k−t) − λ.
pub fn complementary_index(v: u64, k: u64, t: u64, lambda: u64) -> Result<u64> {
    if t > k || k > v {
        return Err(Error::BadParameters(alloc::format!(
            "need t <= k <= v, got t={t}, k={k}, v={v}"
        )));
    }
    let complete = binomial(v - t, k - t);
    if lambda > complete {
        return Err(Error::BadParameters(alloc::format!(
            "lambda={lambda} exceeds complete-design index {complete}"
        )));
    }
    Ok(complete - lambda)
}

/// All k-subsets of the point set that are not blocks of `bs`.
pub fn complementary_blocks(bs: &BlockSet) -> BlockSet {
    let mut sorted = bs.clone();
    sorted.sort_lex();
    let mut out = BlockSet::new(bs.v(), bs.k());
    for_each_ksubset(bs.v() as u32, bs.k() as usize, |set| {
        if !sorted.contains_sorted(set) {
            out.push(set);
        }
    });
    out
}

/// Largest |B ∩ B'| over distinct blocks, or None with fewer than two
/// blocks. Works top-down: for s = k−1, k−2, … it checks whether any
/// s-subset lies in two blocks by sorting the colex ranks of all s-subsets
/// of all blocks and looking for a duplicate.
pub fn max_pairwise_intersection(bs: &BlockSet) -> Option<u32> {
    if bs.len() < 2 {
        return None;
    }
    let k = bs.k() as usize;
    let table = BinomialTable::new(bs.v() as usize, k);
    for s in (1..k).rev() {
        let mut ranks: Vec<u64> =
            Vec::with_capacity(bs.len() * binomial(k as u64, s as u64) as usize);
        for b in bs.iter() {
            for_each_tsubset_of(b, s, |sub| ranks.push(table.colex_rank(sub)));
        }
        ranks.sort_unstable();
        if ranks.windows(2).any(|w| w[0] == w[1]) {
            return Some(s as u32);
        }
    }
    Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{blockset, Family};
    use crate::field::{Field, UnitCircle};

    fn steiner_q16() -> BlockSet {
        let f = Field::new(4).unwrap();
        let u = UnitCircle::new(&f);
        blockset(&f, &u, &Family::Plain { k: 5, l: 2 }).unwrap()
    }

    #[test]
    fn steiner_system_verified() {
        let bs = steiner_q16();
        let verdict = verify_t_design(&bs, 3).unwrap();
        assert_eq!(
            verdict,
            Verdict::Design {
                t: 3,
                lambda: 1,
                is_empty: false,
                is_complete: false
            }
        );
        // Double counting: b = λ C(v,t) / C(k,t) must reproduce the block
        // count.
        assert_eq!(lambda_s(17, 5, 3, 1, 0).unwrap(), bs.len() as u64);
        assert_eq!(lambda_s(17, 5, 3, 1, 2).unwrap(), 5);
        assert_eq!(lambda_s(17, 5, 3, 1, 1).unwrap(), 20);
    }

    #[test]
    fn not_design_witness_is_colex_first_mismatch() {
        let mut bs = BlockSet::new(5, 3);
        bs.push(&[0, 1, 2]);
        bs.push(&[0, 1, 3]);
        let verdict = verify_t_design(&bs, 2).unwrap();
        match verdict {
            Verdict::NotDesign {
                t,
                first,
                first_count,
                witness,
                witness_count,
            } => {
                assert_eq!(t, 2);
                assert_eq!(first, vec![0, 1]);
                assert_eq!(first_count, 2);
                assert_eq!(witness, vec![0, 2]);
                assert_eq!(witness_count, 1);
            }
            v => panic!("expected NotDesign, got {v:?}"),
        }
    }

    #[test]
    fn empty_and_complete_flags() {
        let empty = BlockSet::new(9, 4);
        assert_eq!(
            verify_t_design(&empty, 2).unwrap(),
            Verdict::Design {
                t: 2,
                lambda: 0,
                is_empty: true,
                is_complete: false
            }
        );
        let mut all = BlockSet::new(6, 3);
        for_each_ksubset(6, 3, |s| all.push(s));
        assert_eq!(
            verify_t_design(&all, 2).unwrap(),
            Verdict::Design {
                t: 2,
                lambda: 4,
                is_empty: false,
                is_complete: true
            }
        );
    }

    #[test]
    fn counter_merge_equals_monolithic() {
        let bs = steiner_q16();
        let mut whole = DesignCounter::new(17, 5, 3).unwrap();
        for b in bs.iter() {
            whole.add_block(b);
        }
        let mut part1 = DesignCounter::new(17, 5, 3).unwrap();
        let mut part2 = DesignCounter::new(17, 5, 3).unwrap();
        for (i, b) in bs.iter().enumerate() {
            if i % 2 == 0 {
                part1.add_block(b);
            } else {
                part2.add_block(b);
            }
        }
        part1.merge(&part2);
        assert_eq!(part1.verdict(), whole.verdict());
        assert_eq!(part1.num_blocks(), bs.len() as u64);
    }

    #[test]
    fn bad_parameters_rejected() {
        assert!(DesignCounter::new(10, 4, 5).is_err());
        assert!(DesignCounter::new(10, 4, 0).is_err());
        assert!(lambda_s(9, 4, 2, 1, 3).is_err());
    }

    #[test]
    fn lambda_s_values() {
        // 4-(33, 6, 12) is also a 3-(33, 6, 120) design.
        assert_eq!(lambda_s(33, 6, 4, 12, 3).unwrap(), 120);
        // 4-(33, 5, 5): λ_3 = 5·C(30,1)/C(2,1) = 75.
        assert_eq!(lambda_s(33, 5, 4, 5, 3).unwrap(), 75);
        // Non-integral: 2-(9, 4, 1) would need λ_1 = 8/3.
        assert_eq!(
            lambda_s(9, 4, 2, 1, 1).unwrap_err(),
            Error::NonIntegralIndex { num: 8, den: 3 }
        );
    }

    #[test]
    fn supplementary_and_complementary_indices() {
        assert_eq!(supplementary_index(33, 5, 4, 5).unwrap(), 20475);
        assert_eq!(supplementary_index(33, 6, 4, 12).unwrap(), 14040);
        // Applying the transform to the supplementary parameters returns
        // the original index.
        assert_eq!(supplementary_index(33, 28, 4, 20475).unwrap(), 5);
        assert_eq!(supplementary_index(33, 27, 4, 14040).unwrap(), 12);

        assert_eq!(complementary_index(17, 7, 3, 231).unwrap(), 770);
        assert_eq!(complementary_index(33, 7, 4, 756).unwrap(), 2898);
        assert_eq!(complementary_index(65, 7, 3, 55755).unwrap(), 502090);
        // Involution: complementing twice restores λ.
        assert_eq!(complementary_index(33, 7, 4, 2898).unwrap(), 756);
    }

    #[test]
    fn supplementary_blocks_of_steiner_verify() {
        // The block complements of the 3-(17, 5, 1) system form a
        // 3-(17, 12, 22) design: λ' = 1·C(14,5)/C(14,2) = 22.
        let bs = steiner_q16();
        let supp = bs.complement_blocks();
        assert_eq!(supp.k(), 12);
        assert_eq!(
            verify_t_design(&supp, 3).unwrap().lambda(),
            Some(supplementary_index(17, 5, 3, 1).unwrap())
        );
    }

    #[test]
    fn complementary_blocks_roundtrip() {
        let mut bs = BlockSet::new(7, 3);
        bs.push(&[0, 2, 4]);
        bs.push(&[1, 3, 5]);
        let comp = complementary_blocks(&bs);
        assert_eq!(comp.len() as u64, binomial(7, 3) - 2);
        let back = complementary_blocks(&comp);
        assert!(back.eq_as_sets(&bs));
    }

    #[test]
    fn pairwise_intersection_bounds() {
        // Distinct Steiner blocks share at most 2 points.
        assert_eq!(max_pairwise_intersection(&steiner_q16()), Some(2));
        // Synthetic k−1 case.
        let mut touching = BlockSet::new(10, 4);
        touching.push(&[0, 1, 2, 3]);
        touching.push(&[0, 1, 2, 4]);
        assert_eq!(max_pairwise_intersection(&touching), Some(3));
        // Disjoint blocks.
        let mut disjoint = BlockSet::new(10, 3);
        disjoint.push(&[0, 1, 2]);
        disjoint.push(&[3, 4, 5]);
        assert_eq!(max_pairwise_intersection(&disjoint), Some(0));
        // Fewer than two blocks: undefined.
        let mut single = BlockSet::new(10, 3);
        single.push(&[0, 1, 2]);
        assert_eq!(max_pairwise_intersection(&single), None);
    }

    #[test]
    fn plain_family_intersection_bounds() {
        // Blocks of B_{σ6,3} pairwise intersect in at most 5 points at
        // q = 16 and at most 4 at q = 32.
        let f = Field::new(4).unwrap();
        let u = UnitCircle::new(&f);
        let bs = blockset(&f, &u, &Family::Plain { k: 6, l: 3 }).unwrap();
        assert_eq!(max_pairwise_intersection(&bs), Some(5));
        let f5 = Field::new(5).unwrap();
        let u5 = UnitCircle::new(&f5);
        let bs5 = blockset(&f5, &u5, &Family::Plain { k: 6, l: 3 }).unwrap();
        assert_eq!(max_pairwise_intersection(&bs5), Some(4));
    }
}
