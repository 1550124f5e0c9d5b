//! The setwise stabilizer of the unit circle inside PGL(2, q²), its
//! closure from generators, and orbit computations on k-subsets.
//!
//! Möbius transformations u ↦ (au + b)/(cu + d) with ad ≠ bc act on the
//! projective line over GF(q²). The stabilizer of U_{q+1} is generated by
//! the rotation u ↦ βu, the inversion u ↦ u⁻¹, and the maps
//! u ↦ (u + c^q)/(cu + 1) for c ∉ U ∪ {0}; it has order q³ − q (it is
//! isomorphic to PGL(2, q)). Nothing here assumes that order: the closure
//! is computed by breadth-first search and checked against q³ − q, and
//! every generator is verified pointwise to permute the circle before it
//! is used.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::BlockSet;
use crate::field::{Elem, Field, UnitCircle};
use crate::subsets::{binomial, colex_unrank, for_each_ksubset, BinomialTable};
use crate::{Error, Result};

/// A Möbius transformation u ↦ (au + b)/(cu + d), stored normalized: the
/// first nonzero coefficient in (a, b, c, d) order is 1, so equal packed
/// values mean equal elements of the projective group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Moebius {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Moebius {
    /// Builds and normalizes; errors when ad + bc = 0 (char 2 determinant).
    pub fn new(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Moebius> {
        if f.mul(a, d) + f.mul(b, c) == Elem::ZERO {
            return Err(Error::DegenerateMoebius);
        }
        Ok(Moebius { a, b, c, d }.normalized(f))
    }

    fn normalized(self, f: &Field) -> Moebius {
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("degenerate transformations are rejected at construction");
        let s = f.inv(lead);
        Moebius {
            a: f.mul(self.a, s),
            b: f.mul(self.b, s),
            c: f.mul(self.c, s),
            d: f.mul(self.d, s),
        }
    }

    /// The identity transformation.
    pub fn identity() -> Moebius {
        Moebius {
            a: Elem::ONE,
            b: Elem::ZERO,
            c: Elem::ZERO,
            d: Elem::ONE,
        }
    }

    /// Evaluates at x; None when x is the pole (image would be ∞).
    pub fn eval(&self, f: &Field, x: Elem) -> Option<Elem> {
        let den = f.mul(self.c, x) + self.d;
        if den.is_zero() {
            return None;
        }
        let num = f.mul(self.a, x) + self.b;
        Some(f.mul(num, f.inv(den)))
    }

    /// Function composition self ∘ other (apply `other` first), as the
    /// matrix product.
    pub fn compose(&self, f: &Field, other: &Moebius) -> Moebius {
        Moebius {
            a: f.mul(self.a, other.a) + f.mul(self.b, other.c),
            b: f.mul(self.a, other.b) + f.mul(self.b, other.d),
            c: f.mul(self.c, other.a) + f.mul(self.d, other.c),
            d: f.mul(self.c, other.b) + f.mul(self.d, other.d),
        }
        .normalized(f)
    }

    /// The inverse transformation (adjugate matrix; char 2 drops signs).
    pub fn inverse(&self, f: &Field) -> Moebius {
        Moebius {
            a: self.d,
            b: self.b,
            c: self.c,
            d: self.a,
        }
        .normalized(f)
    }

    /// Multiplicative order in the projective group.
    pub fn order(&self, f: &Field) -> u32 {
        let id = Moebius::identity();
        let mut acc = *self;
        let mut n = 1;
        while acc != id {
            acc = acc.compose(f, self);
            n += 1;
            debug_assert!(n <= (1 << 15), "runaway order computation");
        }
        n
    }

    /// Packs the normalized coefficients into one u64 (4 × 16 bit).
    pub fn pack(&self) -> u64 {
        (self.a.0 as u64) << 48
            | (self.b.0 as u64) << 32
            | (self.c.0 as u64) << 16
            | self.d.0 as u64
    }

    /// Inverse of [`Moebius::pack`].
    pub fn unpack(v: u64) -> Moebius {
        Moebius {
            a: Elem((v >> 48) as u16),
            b: Elem((v >> 32) as u16),
            c: Elem((v >> 16) as u16),
            d: Elem(v as u16),
        }
    }
}

/// The circle permutation induced by g, as an index map: out[i] is the
/// circle index of g(β^i). Errors with `NotAStabilizer` when some image
/// leaves the circle (or hits the pole), or the map fails to be a
/// bijection on the circle.
#[allow(clippy::needless_range_loop)] // i is also the error payload
pub fn circle_permutation(f: &Field, circle: &UnitCircle, g: &Moebius) -> Result<Vec<u8>> {
    let n = circle.len();
    let mut perm = vec![0u8; n];
    let mut seen = vec![false; n];
    for i in 0..n {
        let image = g
            .eval(f, circle.point(i))
            .and_then(|y| circle.index_of(y))
            .ok_or(Error::NotAStabilizer {
                point_index: i as u32,
            })?;
        if seen[image] {
            return Err(Error::NotAStabilizer {
                point_index: i as u32,
            });
        }
        seen[image] = true;
        perm[i] = image as u8;
    }
    Ok(perm)
}

/// Generators of the circle stabilizer: the rotation u ↦ βu, the inversion
/// u ↦ u⁻¹, and u ↦ (u + c^q)/(cu + 1) for c = α, α², α³, α⁴ (none of
/// which lies in U ∪ {0}). Every generator is verified to permute the
/// circle before being returned.
pub fn stabilizer_generators(f: &Field, circle: &UnitCircle) -> Result<Vec<Moebius>> {
    let mut gens = Vec::with_capacity(6);
    gens.push(Moebius::new(
        f,
        circle.beta(),
        Elem::ZERO,
        Elem::ZERO,
        Elem::ONE,
    )?);
    gens.push(Moebius::new(
        f,
        Elem::ZERO,
        Elem::ONE,
        Elem::ONE,
        Elem::ZERO,
    )?);
    for j in 1..=4i64 {
        let c = f.alpha_pow(j);
        debug_assert!(!circle.contains(c) && !c.is_zero());
        gens.push(Moebius::new(f, Elem::ONE, f.frobenius(c), c, Elem::ONE)?);
    }
    for g in &gens {
        circle_permutation(f, circle, g)?;
    }
    Ok(gens)
}

/// Breadth-first closure of the generators under composition. Returns the
/// whole group sorted by packed representation.
pub fn close_group(f: &Field, gens: &[Moebius]) -> Vec<Moebius> {
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    seen.insert(Moebius::identity().pack());
    let mut frontier = vec![Moebius::identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in gens {
                let x = h.compose(f, g);
                if seen.insert(x.pack()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().map(Moebius::unpack).collect()
}

/// The full circle stabilizer: closes the standard generators and checks
/// the group order against q³ − q.
pub fn stabilizer_group(f: &Field, circle: &UnitCircle) -> Result<Vec<Moebius>> {
    let gens = stabilizer_generators(f, circle)?;
    let group = close_group(f, &gens);
    let q = f.q() as u64;
    let expected = q * q * q - q;
    if group.len() as u64 != expected {
        return Err(Error::ClosureOrderMismatch {
            expected,
            got: group.len() as u64,
        });
    }
    Ok(group)
}

/// One orbit of the k-subset action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    /// The colex-smallest block of the orbit.
    pub rep: Vec<u8>,
    /// Orbit length.
    pub length: u64,
    /// Setwise stabilizer order, |G| / length.
    pub stabilizer_order: u64,
}

/// The full orbit partition of k-subsets of the circle under the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub k: u32,
    pub group_order: u64,
    pub num_orbits: u64,
    /// Sorted by (length, representative rank).
    pub orbits: Vec<OrbitInfo>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Point the larger index at the smaller so roots are the
            // minimal rank of their component.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Partitions the k-subsets of the circle into orbits under the group
/// generated by `gens` (`group_order` must be the order of that group,
/// e.g. from [`stabilizer_group`]). Union-find over colex ranks driven by
/// the generator images only.
pub fn orbit_partition(
    f: &Field,
    circle: &UnitCircle,
    gens: &[Moebius],
    group_order: u64,
    k: usize,
) -> Result<OrbitReport> {
    let n = circle.len();
    let total = binomial(n as u64, k as u64);
    if total > u32::MAX as u64 || k == 0 || k > 16 {
        return Err(Error::BadParameters(alloc::format!(
            "orbit partition supports C(n, k) < 2^32, got C({n}, {k}) = {total}"
        )));
    }
    let perms: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| circle_permutation(f, circle, g))
        .collect::<Result<_>>()?;
    let table = BinomialTable::new(n, k);
    let mut uf = UnionFind::new(total as usize);
    let mut rank = 0u32;
    let mut image = [0u8; 16];
    let image = &mut image[..k];
    for_each_ksubset(n as u32, k, |set| {
        for perm in &perms {
            for (o, &i) in image.iter_mut().zip(set) {
                *o = perm[i as usize];
            }
            image.sort_unstable();
            uf.union(rank, table.colex_rank(image) as u32);
        }
        rank += 1;
    });
    // Collect component sizes keyed by root (the minimal rank, by the
    // union convention above).
    let mut size_of_root: Vec<(u32, u64)> = Vec::new();
    let mut root_index: Vec<u32> = vec![u32::MAX; total as usize];
    for r in 0..total as u32 {
        let root = uf.find(r);
        if root_index[root as usize] == u32::MAX {
            root_index[root as usize] = size_of_root.len() as u32;
            size_of_root.push((root, 0));
        }
        size_of_root[root_index[root as usize] as usize].1 += 1;
    }
    let mut orbits: Vec<OrbitInfo> = size_of_root
        .into_iter()
        .map(|(root, length)| {
            debug_assert_eq!(group_order % length, 0, "orbit-stabilizer violated");
            let mut rep = vec![0u8; k];
            colex_unrank(k, root as u64, &mut rep);
            OrbitInfo {
                rep,
                length,
                stabilizer_order: group_order / length,
            }
        })
        .collect();
    orbits.sort_by(|x, y| {
        (x.length, table.colex_rank(&x.rep)).cmp(&(y.length, table.colex_rank(&y.rep)))
    });
    Ok(OrbitReport {
        k: k as u32,
        group_order,
        num_orbits: orbits.len() as u64,
        orbits,
    })
}

/// Materializes one orbit as a block set (breadth-first from the
/// representative through the generator images).
pub fn orbit_blocks(
    f: &Field,
    circle: &UnitCircle,
    gens: &[Moebius],
    rep: &[u8],
) -> Result<BlockSet> {
    let n = circle.len();
    let k = rep.len();
    let perms: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| circle_permutation(f, circle, g))
        .collect::<Result<_>>()?;
    let table = BinomialTable::new(n, k);
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    seen.insert(table.colex_rank(rep));
    let mut frontier = vec![rep.to_vec()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for blk in &frontier {
            for perm in &perms {
                let mut img: Vec<u8> = blk.iter().map(|&i| perm[i as usize]).collect();
                img.sort_unstable();
                if seen.insert(table.colex_rank(&img)) {
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    let mut out = BlockSet::new(n as u16, k as u8);
    let mut buf = vec![0u8; k];
    for r in seen {
        colex_unrank(k, r, &mut buf);
        out.push(&buf);
    }
    Ok(out)
}

/// Whether the block set is carried into itself by every given element.
/// For generators of a group this proves invariance under the whole group:
/// each generator induces an injection of the finite set into itself,
/// hence a bijection, and compositions inherit it.
pub fn is_invariant(
    f: &Field,
    circle: &UnitCircle,
    elements: &[Moebius],
    bs: &BlockSet,
) -> Result<bool> {
    let mut sorted = bs.clone();
    sorted.sort_lex();
    let k = bs.k() as usize;
    let mut img = vec![0u8; k];
    for g in elements {
        let perm = circle_permutation(f, circle, g)?;
        for blk in bs.iter() {
            for (o, &i) in img.iter_mut().zip(blk) {
                *o = perm[i as usize];
            }
            img.sort_unstable();
            if !sorted.contains_sorted(&img) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The setwise stabilizer of a block inside an explicitly listed group.
pub fn setwise_stabilizer(
    f: &Field,
    circle: &UnitCircle,
    group: &[Moebius],
    block: &[u8],
) -> Result<Vec<Moebius>> {
    let k = block.len();
    let mut img = vec![0u8; k];
    let mut out = Vec::new();
    for g in group {
        let mut ok = true;
        for (o, &i) in img.iter_mut().zip(block) {
            match g
                .eval(f, circle.point(i as usize))
                .and_then(|y| circle.index_of(y))
            {
                Some(j) => *o = j as u8,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        img.sort_unstable();
        if img == block {
            out.push(*g);
        }
    }
    Ok(out)
}

/// The circle points fixed by g.
pub fn fixed_circle_points(f: &Field, circle: &UnitCircle, g: &Moebius) -> Vec<u8> {
    (0..circle.len())
        .filter(|&i| g.eval(f, circle.point(i)) == Some(circle.point(i)))
        .map(|i| i as u8)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{blockset, Family};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(m: u32) -> (Field, UnitCircle) {
        let f = Field::new(m).unwrap();
        let u = UnitCircle::new(&f);
        (f, u)
    }

    #[test]
    fn moebius_algebra() {
        let (f, _) = setup(4);
        let id = Moebius::identity();
        assert_eq!(id.order(&f), 1);
        let g = Moebius::new(&f, Elem(7), Elem(3), Elem(1), Elem(9)).unwrap();
        // Scalar multiples normalize to the same element.
        let two = Elem(4);
        let g2 = Moebius::new(
            &f,
            f.mul(Elem(7), two),
            f.mul(Elem(3), two),
            f.mul(Elem(1), two),
            f.mul(Elem(9), two),
        )
        .unwrap();
        assert_eq!(g, g2);
        assert_eq!(Moebius::unpack(g.pack()), g);
        // Inverse composes to the identity on both sides.
        assert_eq!(g.compose(&f, &g.inverse(&f)), id);
        assert_eq!(g.inverse(&f).compose(&f, &g), id);
        // Composition is associative and matches pointwise application.
        let h = Moebius::new(&f, Elem(2), Elem(0), Elem(5), Elem(11)).unwrap();
        let k = Moebius::new(&f, Elem(1), Elem(8), Elem(0), Elem(1)).unwrap();
        assert_eq!(
            g.compose(&f, &h).compose(&f, &k),
            g.compose(&f, &h.compose(&f, &k))
        );
        let mut rng = ChaCha8Rng::seed_from_u64(0x90b1);
        for _ in 0..200 {
            let x = Elem(rng.gen_range(0..f.order() as u16));
            let inner = match h.eval(&f, x) {
                Some(y) => y,
                None => continue,
            };
            match (g.eval(&f, inner), g.compose(&f, &h).eval(&f, x)) {
                (Some(lhs), Some(rhs)) => assert_eq!(lhs, rhs),
                (None, None) => {}
                other => panic!("pole mismatch: {other:?}"),
            }
        }
        // Degenerate matrices are rejected.
        assert_eq!(
            Moebius::new(&f, Elem(6), Elem(6), Elem(1), Elem(1)).unwrap_err(),
            Error::DegenerateMoebius
        );
    }

    #[test]
    fn generators_permute_circle() {
        for m in [4u32, 5, 6] {
            let (f, u) = setup(m);
            let gens = stabilizer_generators(&f, &u).unwrap();
            assert_eq!(gens.len(), 6);
            for g in &gens {
                let perm = circle_permutation(&f, &u, g).unwrap();
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                let expect: Vec<u8> = (0..u.len() as u8).collect();
                assert_eq!(sorted, expect);
            }
        }
        // A non-stabilizing map is rejected: u ↦ αu scales off the circle.
        let (f, u) = setup(4);
        let bad = Moebius::new(&f, f.alpha(), Elem::ZERO, Elem::ZERO, Elem::ONE).unwrap();
        assert!(matches!(
            circle_permutation(&f, &u, &bad),
            Err(Error::NotAStabilizer { .. })
        ));
    }

    #[test]
    fn closure_orders_match_group_theory() {
        let (f, u) = setup(4);
        let group = stabilizer_group(&f, &u).unwrap();
        assert_eq!(group.len(), 4080);
        let (f5, u5) = setup(5);
        let group5 = stabilizer_group(&f5, &u5).unwrap();
        assert_eq!(group5.len(), 32736);
    }

    #[test]
    fn sharply_three_transitive_q16() {
        let (f, u) = setup(4);
        let group = stabilizer_group(&f, &u).unwrap();
        let mut images = BTreeSet::new();
        for g in &group {
            let perm = circle_permutation(&f, &u, g).unwrap();
            images.insert((perm[0], perm[1], perm[2]));
        }
        // All 17·16·15 ordered triples are hit, each exactly once.
        assert_eq!(images.len(), 4080);
        assert_eq!(images.len(), group.len());
    }

    #[test]
    fn fixed_points_follow_order_classification_q16() {
        // Element order vs number of fixed circle points: identity fixes
        // all q+1; order 2 fixes exactly 1; order dividing q−1 (> 1) fixes
        // 2; order dividing q+1 (> 1) fixes 0.
        let (f, u) = setup(4);
        let group = stabilizer_group(&f, &u).unwrap();
        let q = f.q();
        for g in &group {
            let ord = g.order(&f);
            let fixed = fixed_circle_points(&f, &u, g).len() as u32;
            let expected = if ord == 1 {
                q + 1
            } else if ord == 2 {
                1
            } else if (q - 1) % ord == 0 {
                2
            } else if (q + 1) % ord == 0 {
                0
            } else {
                panic!("order {ord} divides neither q−1 nor q+1");
            };
            assert_eq!(fixed, expected, "order {ord}");
        }
    }

    #[test]
    fn small_orbit_partitions_q16() {
        // Sharp 3-transitivity forces single orbits on pairs and triples,
        // with setwise stabilizer orders 2!·(q−1)/... computed directly:
        // 4080/136 = 30 on pairs, 4080/680 = 6 on triples.
        let (f, u) = setup(4);
        let gens = stabilizer_generators(&f, &u).unwrap();
        let report = orbit_partition(&f, &u, &gens, 4080, 2).unwrap();
        assert_eq!(report.num_orbits, 1);
        assert_eq!(report.orbits[0].length, 136);
        assert_eq!(report.orbits[0].stabilizer_order, 30);
        let report3 = orbit_partition(&f, &u, &gens, 4080, 3).unwrap();
        assert_eq!(report3.num_orbits, 1);
        assert_eq!(report3.orbits[0].length, 680);
        assert_eq!(report3.orbits[0].stabilizer_order, 6);
        assert_eq!(report3.orbits[0].rep, vec![0, 1, 2]);
    }

    #[test]
    fn orbit_blocks_reconstructs_partition() {
        let (f, u) = setup(4);
        let gens = stabilizer_generators(&f, &u).unwrap();
        let report = orbit_partition(&f, &u, &gens, 4080, 2).unwrap();
        let blocks = orbit_blocks(&f, &u, &gens, &report.orbits[0].rep).unwrap();
        assert_eq!(blocks.len() as u64, report.orbits[0].length);
    }

    #[test]
    fn q32_five_subset_orbits_and_alltop_identity() {
        let (f, u) = setup(5);
        let gens = stabilizer_generators(&f, &u).unwrap();
        let group_order = 32736u64;
        let report = orbit_partition(&f, &u, &gens, group_order, 5).unwrap();
        // Exactly 5 short orbits (length 8184, stabilizer order 4) and 6
        // free orbits (length 32736); together they exhaust C(33,5).
        let short: Vec<_> = report
            .orbits
            .iter()
            .filter(|o| o.length < group_order)
            .collect();
        let free: Vec<_> = report
            .orbits
            .iter()
            .filter(|o| o.length == group_order)
            .collect();
        assert_eq!(short.len(), 5);
        assert_eq!(free.len(), 6);
        for o in &short {
            assert_eq!(o.length, 8184);
            assert_eq!(o.stabilizer_order, 4);
        }
        let total: u64 = report.orbits.iter().map(|o| o.length).sum();
        assert_eq!(total, binomial(33, 5));

        // The union of the short orbits is exactly B^b_{σ5,3}.
        let mut union = BlockSet::new(u.len() as u16, 5);
        for o in &short {
            union.extend(&orbit_blocks(&f, &u, &gens, &o.rep).unwrap());
        }
        let bvar = blockset(&f, &u, &Family::ShiftB { k: 5, l: 3 }).unwrap();
        assert_eq!(union.len(), 40920);
        assert!(union.eq_as_sets(&bvar));

        // Each short orbit contains an inversion-symmetric member of the
        // form {1, x, x⁻¹, y, y⁻¹}: point index 0 plus two inverse pairs.
        for o in &short {
            let blocks = orbit_blocks(&f, &u, &gens, &o.rep).unwrap();
            let found = blocks.iter().any(|blk| {
                blk.contains(&0)
                    && blk
                        .iter()
                        .all(|&i| i == 0 || blk.contains(&(u.inverse_index(i as usize) as u8)))
            });
            assert!(found, "no inversion-symmetric member in a short orbit");
        }
    }

    #[test]
    fn setwise_stabilizers_match_orbit_sizes_q32() {
        let (f, u) = setup(5);
        let gens = stabilizer_generators(&f, &u).unwrap();
        let group = stabilizer_group(&f, &u).unwrap();
        let report = orbit_partition(&f, &u, &gens, group.len() as u64, 5).unwrap();
        let short = report.orbits.iter().find(|o| o.length < 32736).unwrap();
        let free = report.orbits.iter().find(|o| o.length == 32736).unwrap();
        // Direct scan over all 32736 group elements confirms the
        // stabilizer orders implied by the orbit sizes.
        let stab_short = setwise_stabilizer(&f, &u, &group, &short.rep).unwrap();
        assert_eq!(stab_short.len() as u64, short.stabilizer_order);
        assert_eq!(stab_short.len(), 4);
        let stab_free = setwise_stabilizer(&f, &u, &group, &free.rep).unwrap();
        assert_eq!(stab_free.len(), 1);
        // The short-orbit stabilizer contains an element of order 2, and
        // its unique fixed point lies in the block (5 is odd, so an
        // order-2 permutation of the block fixes a block point, and an
        // order-2 circle map fixes exactly one point in total).
        let order2: Vec<_> = stab_short.iter().filter(|g| g.order(&f) == 2).collect();
        assert!(!order2.is_empty());
        for g in order2 {
            let fixed = fixed_circle_points(&f, &u, g);
            assert_eq!(fixed.len(), 1);
            assert!(short.rep.contains(&fixed[0]));
        }
    }

    #[test]
    fn steiner_family_invariant_under_generators() {
        let (f, u) = setup(4);
        let gens = stabilizer_generators(&f, &u).unwrap();
        let steiner = blockset(&f, &u, &Family::Plain { k: 5, l: 2 }).unwrap();
        assert!(is_invariant(&f, &u, &gens, &steiner).unwrap());
        let (f5, u5) = setup(5);
        let gens5 = stabilizer_generators(&f5, &u5).unwrap();
        let plain63 = blockset(&f5, &u5, &Family::Plain { k: 6, l: 3 }).unwrap();
        assert!(is_invariant(&f5, &u5, &gens5, &plain63).unwrap());
        // A non-invariant set is detected.
        let mut lopsided = BlockSet::new(u.len() as u16, 5);
        lopsided.push(&[0, 1, 2, 3, 4]);
        assert!(!is_invariant(&f, &u, &gens, &lopsided).unwrap());
    }
}
