//! The narrow-sense code on the unit circle, its trace dual, support
//! scans, zero sets, and exact weight-distribution arithmetic.
//!
//! The code C is the cyclic code of length n = q+1 over GF(q) whose
//! generator polynomial is the product of the minimal polynomials of β, β²
//! and β³ over GF(q), where β generates U_{q+1}. Coordinates are indexed by
//! circle positions: coordinate j belongs to the point β^j. A word
//! (c_0, …, c_n−1) lies in C exactly when Σ_j c_j u_j^i = 0 for i = 1, 2, 3
//! where u_j = β^j.
//!
//! Weight-w supports are found by exact linear algebra: for a w-subset B
//! the codeword conditions restricted to B form a 6×w system over GF(q)
//! (each of the three GF(q²) equations splits into two GF(q) equations via
//! the basis {1, α}), and B supports a full-weight codeword exactly when
//! the kernel contains a vector with no zero entry.
//!
//! The minimum distance stored in [`Code`] is always established by these
//! scans — the smallest w with a nonempty support set — never assumed from
//! theory.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::blocks::BlockSet;
use crate::field::{Elem, Field, UnitCircle};
use crate::subsets::{binomial_big, colex_rank, try_for_each_ksubset_in_range};
use crate::{Error, Result};

/// Largest support weight the kernel scan accepts. Beyond w = 7 the 6×w
/// systems always have kernel dimension ≥ 2 with full-weight vectors, so
/// the multiplicity bookkeeping below (one projective solution per
/// support) no longer applies.
pub const MAX_SCAN_WEIGHT: usize = 7;

/// The length-(q+1) cyclic code with zeros β, β², β³ (and conjugates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: u32,
    n: u32,
    dim: u32,
    d: u32,
    gen: Vec<Elem>,
}

impl Code {
    /// Subfield size q.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Block length n = q + 1.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension q − 5.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Minimum distance, established by support scans during construction.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Generator polynomial, ascending degree (length 7, coefficients in
    /// GF(q)).
    pub fn generator(&self) -> &[Elem] {
        &self.gen
    }

    /// Singleton defect n − dim + 1 − d (0 = MDS, 1 = near-MDS, …).
    pub fn singleton_defect(&self) -> u32 {
        self.n - self.dim + 1 - self.d
    }

    /// Generator matrix: row i holds the coefficients of x^i · g(x).
    pub fn generator_matrix(&self) -> Vec<Vec<Elem>> {
        let n = self.n as usize;
        (0..self.dim as usize)
            .map(|i| {
                let mut row = vec![Elem::ZERO; n];
                for (j, &c) in self.gen.iter().enumerate() {
                    row[i + j] = c;
                }
                row
            })
            .collect()
    }

    /// Membership test: all entries in GF(q) and Σ_j w_j β^{sj} = 0 for
    /// s = 1, 2, 3.
    pub fn is_codeword(&self, f: &Field, circle: &UnitCircle, word: &[Elem]) -> bool {
        if word.len() != self.n as usize || word.iter().any(|&e| !f.in_subfield(e)) {
            return false;
        }
        (1..=3u32).all(|s| {
            let x = circle.point((s as usize) % circle.len());
            poly_eval(f, word, x).is_zero()
        })
    }
}

/// Minimal polynomial of β^s over GF(q), ascending coefficients:
/// x + 1 for s ≡ 0, else (x + β^s)(x + β^{−s}) = x² + Tr(β^s)·x + 1.
pub fn minimal_poly(f: &Field, circle: &UnitCircle, s: u32) -> Vec<Elem> {
    let s = (s as usize) % circle.len();
    if s == 0 {
        return vec![Elem::ONE, Elem::ONE];
    }
    let b = circle.point(s);
    vec![Elem::ONE, f.trace_to_subfield(b), Elem::ONE]
}

fn poly_mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += f.mul(x, y);
        }
    }
    out
}

fn poly_eval(f: &Field, p: &[Elem], x: Elem) -> Elem {
    let mut acc = Elem::ZERO;
    for &c in p.iter().rev() {
        acc = f.mul(acc, x) + c;
    }
    acc
}

/// Remainder of a mod b (b nonzero leading coefficient), ascending coeffs.
#[cfg(test)]
fn poly_rem(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut r: Vec<Elem> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db {
        let dr = r.len() - 1;
        let coef = f.mul(r[dr], lead_inv);
        if !coef.is_zero() {
            for (i, &bc) in b.iter().enumerate() {
                let t = f.mul(coef, bc);
                r[dr - db + i] += t;
            }
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
    }
    r
}

/// Builds the code: multiplies the three minimal polynomials and
/// establishes the minimum distance by ascending support scans.
///
/// The distance scan is exhaustive for each weight below the first
/// nonempty one, so construction cost grows with q; at q = 128 the
/// weight-5 emptiness proof alone visits C(129,5) ≈ 2.75·10⁸ subsets.
pub fn build_code(f: &Field, circle: &UnitCircle) -> Result<Code> {
    let m1 = minimal_poly(f, circle, 1);
    let m2 = minimal_poly(f, circle, 2);
    let m3 = minimal_poly(f, circle, 3);
    let gen = poly_mul(f, &poly_mul(f, &m1, &m2), &m3);
    debug_assert_eq!(gen.len(), 7);
    debug_assert!(gen.iter().all(|&c| f.in_subfield(c)));
    debug_assert!(gen[0] == Elem::ONE && gen[6] == Elem::ONE);
    let n = circle.len() as u32;
    let dim = n - 6;
    let mut d = 0;
    for w in 1..=MAX_SCAN_WEIGHT {
        if exists_support_of_weight(f, circle, w)? {
            d = w as u32;
            break;
        }
    }
    // d ≤ n − dim + 1 = 7 by the Singleton bound, so the loop always
    // terminates with a witness.
    debug_assert!(d > 0);
    Ok(Code {
        q: f.q(),
        n,
        dim,
        d,
        gen,
    })
}

/// Statistics of a support scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Number of exact supports found in the scanned range.
    pub supports: u64,
    /// Largest kernel dimension observed.
    pub max_kernel_dim: u32,
    /// Number of subsets whose kernel dimension exceeded 2 (recorded for
    /// inspection; such kernels are still checked for full-weight vectors).
    pub anomalies: u64,
}

impl ScanStats {
    /// Combines the statistics of two disjoint ranges.
    pub fn merge(&mut self, other: &ScanStats) {
        self.supports += other.supports;
        self.max_kernel_dim = self.max_kernel_dim.max(other.max_kernel_dim);
        self.anomalies += other.anomalies;
    }
}

/// A materialized support scan: the weight-w support blocks and the scan
/// statistics.
#[derive(Clone, Debug)]
pub struct SupportScan {
    pub blocks: BlockSet,
    pub stats: ScanStats,
}

/// Per-point parity columns: for circle point j the six GF(q) components
/// of u^1, u^2, u^3 in the basis {1, α}.
fn parity_columns(f: &Field, circle: &UnitCircle) -> Vec<[Elem; 6]> {
    let alpha = f.alpha();
    let tr_alpha_inv = f.inv(f.trace_to_subfield(alpha));
    circle
        .points()
        .iter()
        .map(|&u| {
            let mut col = [Elem::ZERO; 6];
            let mut p = Elem::ONE;
            for i in 0..3 {
                p = f.mul(p, u);
                let y = f.mul(f.trace_to_subfield(p), tr_alpha_inv);
                let x = p + f.mul(alpha, y);
                debug_assert!(f.in_subfield(x) && f.in_subfield(y));
                col[2 * i] = x;
                col[2 * i + 1] = y;
            }
            col
        })
        .collect()
}

/// Kernel of the 6×w parity system restricted to `set`, by Gauss–Jordan
/// elimination over GF(q). Returns the kernel dimension and a basis (each
/// vector's first `set.len()` entries are meaningful).
#[allow(clippy::needless_range_loop)] // column indices slice rows via col..w
fn kernel_basis(f: &Field, cols: &[[Elem; 6]], set: &[u8]) -> (usize, Vec<[Elem; 8]>) {
    let w = set.len();
    let mut mat = [[Elem::ZERO; 8]; 6];
    for (j, &idx) in set.iter().enumerate() {
        let c = &cols[idx as usize];
        for i in 0..6 {
            mat[i][j] = c[i];
        }
    }
    let mut pivot_col = [usize::MAX; 6];
    let mut row = 0usize;
    for col in 0..w {
        if row == 6 {
            break;
        }
        if let Some(r) = (row..6).find(|&r| !mat[r][col].is_zero()) {
            mat.swap(row, r);
            let inv = f.inv(mat[row][col]);
            for c in col..w {
                mat[row][c] = f.mul(mat[row][c], inv);
            }
            for r2 in 0..6 {
                if r2 != row && !mat[r2][col].is_zero() {
                    let factor = mat[r2][col];
                    for c in col..w {
                        let t = f.mul(factor, mat[row][c]);
                        mat[r2][c] += t;
                    }
                }
            }
            pivot_col[row] = col;
            row += 1;
        }
    }
    let rank = row;
    let dim = w - rank;
    let mut basis = Vec::with_capacity(dim);
    if dim > 0 {
        let mut is_pivot = [false; 8];
        for &pc in pivot_col.iter().take(rank) {
            is_pivot[pc] = true;
        }
        for fc in 0..w {
            if is_pivot[fc] {
                continue;
            }
            let mut v = [Elem::ZERO; 8];
            v[fc] = Elem::ONE;
            for r in 0..rank {
                v[pivot_col[r]] = mat[r][fc];
            }
            basis.push(v);
        }
    }
    (dim, basis)
}

/// Scans the projective kernel (one representative per scalar class) for a
/// vector with all of the first `w` entries nonzero.
fn projective_has_full_weight(f: &Field, basis: &[[Elem; 8]], w: usize) -> bool {
    let sub = f.subfield_elements();
    let dim = basis.len();
    let mut digits = vec![0usize; dim];
    for lead in 0..dim {
        // Representative: coefficient 1 on basis[lead], arbitrary GF(q)
        // coefficients on basis[lead+1..].
        for d in digits.iter_mut() {
            *d = 0;
        }
        loop {
            let mut v = basis[lead];
            for (j, &dj) in digits.iter().enumerate().skip(lead + 1) {
                let t = sub[dj];
                if !t.is_zero() {
                    for c in 0..w {
                        v[c] += f.mul(t, basis[j][c]);
                    }
                }
            }
            if v[..w].iter().all(|e| !e.is_zero()) {
                return true;
            }
            // Odometer over positions lead+1..dim.
            let mut j = lead + 1;
            loop {
                if j >= dim {
                    break;
                }
                digits[j] += 1;
                if digits[j] < sub.len() {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
            if j >= dim {
                break;
            }
        }
    }
    false
}

/// Streams the weight-w supports with colex ranks in [lo, hi) into `visit`
/// and returns the scan statistics.
///
/// Per subset: kernel dimension 0 means no codeword lives on it;
/// dimension 1 means it is an exact support iff the kernel generator has
/// no zero entry (then the full-weight words on it are exactly the q−1
/// scalar multiples); dimension ≥ 2 is checked projectively — a
/// full-weight vector there would break the one-class-per-support
/// bookkeeping, so it is reported as a hard error rather than silently
/// miscounted.
pub fn for_each_support_in_range<F: FnMut(&[u8])>(
    f: &Field,
    circle: &UnitCircle,
    w: usize,
    lo: u64,
    hi: u64,
    mut visit: F,
) -> Result<ScanStats> {
    if w == 0 || w > MAX_SCAN_WEIGHT {
        return Err(Error::BadParameters(alloc::format!(
            "support scans cover weights 1..={MAX_SCAN_WEIGHT}, got {w}"
        )));
    }
    let cols = parity_columns(f, circle);
    let mut stats = ScanStats::default();
    let mut failure: Option<Error> = None;
    try_for_each_ksubset_in_range(circle.len() as u32, w, lo, hi, |set| {
        let (dim, basis) = kernel_basis(f, &cols, set);
        stats.max_kernel_dim = stats.max_kernel_dim.max(dim as u32);
        match dim {
            0 => {}
            1 => {
                if basis[0][..w].iter().all(|e| !e.is_zero()) {
                    stats.supports += 1;
                    visit(set);
                }
            }
            _ => {
                if dim > 2 {
                    stats.anomalies += 1;
                }
                if projective_has_full_weight(f, &basis, w) {
                    failure = Some(Error::SupportMultiplicityViolated {
                        k: w as u32,
                        block_rank: colex_rank(set),
                    });
                    return false;
                }
            }
        }
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(stats)
}

/// Counts weight-w supports in a rank range without materializing them.
pub fn count_supports_in_range(
    f: &Field,
    circle: &UnitCircle,
    w: usize,
    lo: u64,
    hi: u64,
) -> Result<ScanStats> {
    for_each_support_in_range(f, circle, w, lo, hi, |_| {})
}

/// Materializes all weight-w supports (the block set B_w(C)).
pub fn supports_of_weight(f: &Field, circle: &UnitCircle, w: usize) -> Result<SupportScan> {
    let mut blocks = BlockSet::new(circle.len() as u16, w as u8);
    let stats = for_each_support_in_range(f, circle, w, 0, u64::MAX, |set| blocks.push(set))?;
    Ok(SupportScan { blocks, stats })
}

/// Whether any weight-w codeword exists (early-exit scan).
pub fn exists_support_of_weight(f: &Field, circle: &UnitCircle, w: usize) -> Result<bool> {
    if w == 0 || w > MAX_SCAN_WEIGHT {
        return Err(Error::BadParameters(alloc::format!(
            "support scans cover weights 1..={MAX_SCAN_WEIGHT}, got {w}"
        )));
    }
    let cols = parity_columns(f, circle);
    let mut found = false;
    let mut failure: Option<Error> = None;
    try_for_each_ksubset_in_range(circle.len() as u32, w, 0, u64::MAX, |set| {
        let (dim, basis) = kernel_basis(f, &cols, set);
        match dim {
            0 => true,
            1 => {
                if basis[0][..w].iter().all(|e| !e.is_zero()) {
                    found = true;
                    false
                } else {
                    true
                }
            }
            _ => {
                if projective_has_full_weight(f, &basis, w) {
                    failure = Some(Error::SupportMultiplicityViolated {
                        k: w as u32,
                        block_rank: colex_rank(set),
                    });
                    false
                } else {
                    true
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// Trace code
// ---------------------------------------------------------------------------

/// The trace word (Tr(a·u + b·u² + c·u³))_{u ∈ U_{q+1}}, entries in GF(q).
pub fn trace_codeword(f: &Field, circle: &UnitCircle, a: Elem, b: Elem, c: Elem) -> Vec<Elem> {
    circle
        .points()
        .iter()
        .map(|&u| {
            let u2 = f.mul(u, u);
            let u3 = f.mul(u2, u);
            f.trace_to_subfield(f.mul(a, u) + f.mul(b, u2) + f.mul(c, u3))
        })
        .collect()
}

/// The six GF(q)-basis words of the trace code, images of
/// (a,b,c) ∈ {(1,0,0), (α,0,0), (0,1,0), (0,α,0), (0,0,1), (0,0,α)}.
pub fn trace_basis_words(f: &Field, circle: &UnitCircle) -> Vec<Vec<Elem>> {
    let al = f.alpha();
    let one = Elem::ONE;
    let z = Elem::ZERO;
    [
        (one, z, z),
        (al, z, z),
        (z, one, z),
        (z, al, z),
        (z, z, one),
        (z, z, al),
    ]
    .iter()
    .map(|&(a, b, c)| trace_codeword(f, circle, a, b, c))
    .collect()
}

/// Circle indices where Tr(a·u + b·u² + c·u³) vanishes. Errors on the zero
/// triple (every point vanishes; the bound below is meaningless) and when
/// more than 6 zeros appear — impossible for nonzero (a, b, c) because
/// u³·f(u) = c u⁶ + b u⁵ + a u⁴ + a^q u² + b^q u + c^q on the circle, a
/// nonzero polynomial of degree at most 6.
pub fn zero_set(f: &Field, circle: &UnitCircle, a: Elem, b: Elem, c: Elem) -> Result<Vec<u8>> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::BadParameters(
            "zero set of the zero word is the whole circle".into(),
        ));
    }
    let word = trace_codeword(f, circle, a, b, c);
    let zeros: Vec<u8> = word
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_zero())
        .map(|(i, _)| i as u8)
        .collect();
    if zeros.len() > 6 {
        return Err(Error::ZeroSetTooLarge {
            count: zeros.len() as u32,
        });
    }
    Ok(zeros)
}

/// For a 6-block B with σ_{6,3}(B) = 0, a triple (a, b, c) whose trace
/// word vanishes exactly on B: (a, b, c) = (σ_{6,2}, σ_{6,1}, 1)/√σ_{6,6}
/// (one representative of the GF(q)-scalar class).
pub fn parameterize_zero6(
    f: &Field,
    circle: &UnitCircle,
    block: &[u8],
) -> Result<(Elem, Elem, Elem)> {
    if block.len() != 6 {
        return Err(Error::BadParameters(alloc::format!(
            "need a 6-block, got {} points",
            block.len()
        )));
    }
    let elems = circle.block_elems(block);
    let sig = crate::esp::esp_all(f, &elems);
    if !sig[3].is_zero() {
        return Err(Error::BadParameters(
            "sigma_{6,3} must vanish on the block".into(),
        ));
    }
    let s = f.inv(f.sqrt(sig[6]));
    Ok((f.mul(sig[2], s), f.mul(sig[1], s), s))
}

/// For a 5-block B whose distinguished point u_i satisfies
/// σ_{5,3}(B) + u_i·σ_{5,2}(B) = 0, a triple (a, b, c) whose trace word
/// vanishes exactly on B (u_i is the double root of the associated
/// degree-6 polynomial):
///
/// (a, b, c) = (σ_{5,2} + u_i σ_{5,1}, σ_{5,1} + u_i, 1) / √(u_i σ_{5,5}).
///
/// `root_index` selects u_i inside the block; any other point fails the
/// u³-coefficient constraint and is rejected with `NotDistinguishedRoot`.
pub fn parameterize_zero5(
    f: &Field,
    circle: &UnitCircle,
    block: &[u8],
    root_index: usize,
) -> Result<(Elem, Elem, Elem)> {
    if block.len() != 5 || root_index >= 5 {
        return Err(Error::BadParameters(alloc::format!(
            "need a 5-block and root index < 5, got {} points, index {root_index}",
            block.len()
        )));
    }
    let elems = circle.block_elems(block);
    let sig = crate::esp::esp_all(f, &elems);
    let ui = elems[root_index];
    if sig[3] + f.mul(ui, sig[2]) != Elem::ZERO {
        return Err(Error::NotDistinguishedRoot {
            index: root_index as u32,
        });
    }
    let s = f.inv(f.sqrt(f.mul(ui, sig[5])));
    Ok((
        f.mul(sig[2] + f.mul(ui, sig[1]), s),
        f.mul(sig[1] + ui, s),
        s,
    ))
}

/// Exact weight distribution of the trace code by enumerating all q⁶
/// coefficient tuples (a, b, c) ∈ GF(q²)³ as GF(q)-combinations of the six
/// basis words, with incremental word updates. Intended for q = 16
/// (16.7·10⁶ words); cost grows as q⁶.
pub fn trace_weight_distribution_full(f: &Field, circle: &UnitCircle) -> Vec<BigUint> {
    let n = circle.len();
    let basis = trace_basis_words(f, circle);
    let mut sub = f.subfield_elements();
    // Put 0 first so the odometer starts at the zero word.
    let zp = sub.iter().position(|e| e.is_zero()).unwrap();
    sub.swap(0, zp);
    let mut word = vec![Elem::ZERO; n];
    let mut counts = vec![0u64; n + 1];
    counts[0] += 1; // the zero word
    let mut digits = [0usize; 6];
    'outer: loop {
        // Advance the odometer by one, updating the word by the digit delta.
        let mut i = 0;
        loop {
            if i == 6 {
                break 'outer;
            }
            let old = sub[digits[i]];
            digits[i] += 1;
            if digits[i] < sub.len() {
                let delta = old + sub[digits[i]];
                for (wj, bj) in word.iter_mut().zip(&basis[i]) {
                    *wj += f.mul(delta, *bj);
                }
                break;
            }
            digits[i] = 0;
            // Rolling over to 0: delta is old + 0 = old.
            if !old.is_zero() {
                for (wj, bj) in word.iter_mut().zip(&basis[i]) {
                    *wj += f.mul(old, *bj);
                }
            }
            i += 1;
        }
        let w = word.iter().filter(|e| !e.is_zero()).count();
        counts[w] += 1;
    }
    counts.into_iter().map(BigUint::from).collect()
}

/// Distinct trace-code supports grouped by weight, plus the number of
/// projective coefficient classes per weight. Enumerates one
/// representative per GF(q)-scalar class (scaling fixes both weight and
/// support). Supports are bitmasks over circle indices, so this requires
/// n ≤ 64; intended for q = 16.
pub struct TraceSupports {
    /// by_weight[w] = sorted, deduplicated support masks of weight w.
    pub by_weight: Vec<Vec<u64>>,
    /// classes[w] = number of projective classes of words of weight w.
    pub classes: Vec<u64>,
}

pub fn trace_supports_by_weight(f: &Field, circle: &UnitCircle) -> TraceSupports {
    let n = circle.len();
    assert!(n <= 64, "support masks are u64");
    let basis = trace_basis_words(f, circle);
    let mut sub = f.subfield_elements();
    let zp = sub.iter().position(|e| e.is_zero()).unwrap();
    sub.swap(0, zp);
    let mut by_weight: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    let mut classes = vec![0u64; n + 1];
    let mut word = vec![Elem::ZERO; n];
    let mut digits = [0usize; 6];
    for lead in 0..6 {
        // Representative: coefficient 1 on basis[lead], arbitrary on later
        // positions, zero on earlier ones.
        word.copy_from_slice(&basis[lead]);
        for d in digits.iter_mut() {
            *d = 0;
        }
        loop {
            let mut w = 0usize;
            let mut mask = 0u64;
            for (j, e) in word.iter().enumerate() {
                if !e.is_zero() {
                    w += 1;
                    mask |= 1 << j;
                }
            }
            classes[w] += 1;
            by_weight[w].push(mask);
            // Advance the suffix odometer (positions lead+1..6).
            let mut j = lead + 1;
            loop {
                if j >= 6 {
                    break;
                }
                let old = sub[digits[j]];
                digits[j] += 1;
                if digits[j] < sub.len() {
                    let delta = old + sub[digits[j]];
                    for (wj, bj) in word.iter_mut().zip(&basis[j]) {
                        *wj += f.mul(delta, *bj);
                    }
                    break;
                }
                digits[j] = 0;
                if !old.is_zero() {
                    for (wj, bj) in word.iter_mut().zip(&basis[j]) {
                        *wj += f.mul(old, *bj);
                    }
                }
                j += 1;
            }
            if j >= 6 {
                break;
            }
        }
    }
    for v in by_weight.iter_mut() {
        v.sort_unstable();
        v.dedup();
    }
    TraceSupports { by_weight, classes }
}

// ---------------------------------------------------------------------------
// Weight-distribution arithmetic (exact, arbitrary precision)
// ---------------------------------------------------------------------------

fn signed(term: BigUint, negative: bool) -> BigInt {
    let t = BigInt::from(term);
    if negative {
        -t
    } else {
        t
    }
}

fn q_pow_minus_one(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32) - BigUint::from(1u32)
}

/// Weight distribution [A_0, …, A_n] of a near-MDS code (defect 1 with
/// dual defect 1): d = n − dim, and every coefficient is determined by
/// A_d alone:
///
/// A_{d+s} = C(n, dim−s) · Σ_{j=0}^{s−1} (−1)^j C(d+s, j)(q^{s−j} − 1)
///         + (−1)^s C(dim, s) · A_d,   s = 1, …, dim.
pub fn nmds_weight_distribution(n: u64, dim: u64, q: u64, a_min: &BigUint) -> Result<Vec<BigUint>> {
    if dim == 0 || dim >= n {
        return Err(Error::BadParameters(alloc::format!(
            "need 0 < dim < n, got dim={dim}, n={n}"
        )));
    }
    let d = n - dim;
    let mut dist = vec![BigUint::ZERO; (n + 1) as usize];
    dist[0] = BigUint::from(1u32);
    dist[d as usize] = a_min.clone();
    for s in 1..=dim {
        let mut inner = BigInt::zero();
        for j in 0..s {
            let term = binomial_big(d + s, j) * q_pow_minus_one(q, s - j);
            inner += signed(term, j % 2 == 1);
        }
        let mut acc = BigInt::from(binomial_big(n, dim - s)) * inner;
        acc += signed(binomial_big(dim, s) * a_min, s % 2 == 1);
        dist[(d + s) as usize] = acc.to_biguint().ok_or_else(|| {
            Error::BadParameters(alloc::format!("negative A_{} from inputs", d + s))
        })?;
    }
    Ok(dist)
}

/// Weight distribution [A_0, …, A_n] of a code of minimum distance d whose
/// dual has distance d_dual, from the low-weight counts
/// `a_low` = [A_d, …, A_{n−d_dual}]:
///
/// A_{n−d⊥+r} = Σ_{j=d⊥}^{n−d} C(j, d⊥−r) · S(j, r) · A_{n−j}
///            + C(n, d⊥−r) · Σ_{i=0}^{r−1} (−1)^i C(n−d⊥+r, i)(q^{dim−d⊥+r−i} − 1),
///
/// with S(j, r) = Σ_{i=d⊥}^{j} (−1)^{i−d⊥+r} C(j−d⊥+r, j−i), for
/// r = 1, …, d⊥. Specializes to `nmds_weight_distribution` when
/// d = n − dim and d⊥ = dim.
pub fn complete_weight_distribution(
    n: u64,
    dim: u64,
    q: u64,
    d: u64,
    d_dual: u64,
    a_low: &[BigUint],
) -> Result<Vec<BigUint>> {
    if dim == 0 || dim >= n || d == 0 || d_dual == 0 || d + d_dual > n + 1 || d_dual > dim + 1 {
        return Err(Error::BadParameters(alloc::format!(
            "invalid parameters n={n}, dim={dim}, d={d}, d_dual={d_dual}"
        )));
    }
    let expected = n - d_dual - d + 1;
    if a_low.len() as u64 != expected {
        return Err(Error::BadParameters(alloc::format!(
            "need {expected} low-weight counts A_{d}..A_{}, got {}",
            n - d_dual,
            a_low.len()
        )));
    }
    let mut dist = vec![BigUint::ZERO; (n + 1) as usize];
    dist[0] = BigUint::from(1u32);
    for (off, v) in a_low.iter().enumerate() {
        dist[(d as usize) + off] = v.clone();
    }
    for r in 1..=d_dual {
        let w = n - d_dual + r;
        let mut acc = BigInt::zero();
        for j in d_dual..=(n - d) {
            let outer = binomial_big(j, d_dual - r);
            if outer.is_zero() {
                continue;
            }
            let mut s_sum = BigInt::zero();
            for i in d_dual..=j {
                let term = binomial_big(j - d_dual + r, j - i);
                s_sum += signed(term, (i - d_dual + r) % 2 == 1);
            }
            acc += BigInt::from(outer) * s_sum * BigInt::from(dist[(n - j) as usize].clone());
        }
        let mut boundary = BigInt::zero();
        for i in 0..r {
            // Exponent dim − d⊥ + r − i, grouped to stay nonnegative in u64
            // (d⊥ ≤ dim + 1 and i ≤ r − 1 guarantee dim + r ≥ d⊥ + i).
            let exp = (dim + r) - (d_dual + i);
            let term = binomial_big(n - d_dual + r, i) * q_pow_minus_one(q, exp);
            boundary += signed(term, i % 2 == 1);
        }
        acc += BigInt::from(binomial_big(n, d_dual - r)) * boundary;
        dist[w as usize] = acc
            .to_biguint()
            .ok_or_else(|| Error::BadParameters(alloc::format!("negative A_{w} from inputs")))?;
    }
    Ok(dist)
}

/// MacWilliams transform: given the weight distribution of a code of
/// dimension `dim` over GF(q), returns the dual code's distribution
/// B_w = q^{−dim} Σ_i A_i K_w(i) with the Krawtchouk polynomial
/// K_w(i) = Σ_s (−1)^s (q−1)^{w−s} C(i, s) C(n−i, w−s).
pub fn macwilliams_transform(n: u64, dim: u64, q: u64, a: &[BigUint]) -> Result<Vec<BigUint>> {
    if a.len() as u64 != n + 1 {
        return Err(Error::BadParameters(alloc::format!(
            "distribution must have n+1 = {} entries, got {}",
            n + 1,
            a.len()
        )));
    }
    let qk = BigInt::from(BigUint::from(q).pow(dim as u32));
    let mut out = Vec::with_capacity((n + 1) as usize);
    for w in 0..=n {
        let mut total = BigInt::zero();
        for i in 0..=n {
            if a[i as usize].is_zero() {
                continue;
            }
            let mut kraw = BigInt::zero();
            for s in 0..=w.min(i) {
                let term = BigUint::from(q - 1).pow((w - s) as u32)
                    * binomial_big(i, s)
                    * binomial_big(n - i, w - s);
                kraw += signed(term, s % 2 == 1);
            }
            total += BigInt::from(a[i as usize].clone()) * kraw;
        }
        let (quot, rem) = num_integer_div_rem(&total, &qk);
        if !rem.is_zero() {
            return Err(Error::BadParameters(alloc::format!(
                "MacWilliams sum for weight {w} is not divisible by q^dim"
            )));
        }
        out.push(quot.to_biguint().ok_or_else(|| {
            Error::BadParameters(alloc::format!("negative dual coefficient B_{w}"))
        })?);
    }
    Ok(out)
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

/// Sum of all coefficients — must equal q^dim for a genuine distribution.
pub fn distribution_mass(a: &[BigUint]) -> BigUint {
    a.iter().fold(BigUint::ZERO, |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{blockset, Family};
    use crate::design::complementary_blocks;
    use crate::subsets::binomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(m: u32) -> (Field, UnitCircle) {
        let f = Field::new(m).unwrap();
        let u = UnitCircle::new(&f);
        (f, u)
    }

    fn random_elem(f: &Field, rng: &mut ChaCha8Rng) -> Elem {
        Elem(rng.gen_range(0..f.order() as u16))
    }

    #[test]
    fn minimal_polys_are_quadratic_with_conjugate_roots() {
        for m in [4u32, 5, 6] {
            let (f, u) = setup(m);
            for s in 1..=3u32 {
                let p = minimal_poly(&f, &u, s);
                assert_eq!(p.len(), 3);
                assert!(p.iter().all(|&c| f.in_subfield(c)));
                let b = u.point(s as usize);
                assert!(poly_eval(&f, &p, b).is_zero());
                assert!(poly_eval(&f, &p, f.inv(b)).is_zero());
            }
            // The three minimal polynomials are pairwise distinct.
            let polys: Vec<_> = (1..=3).map(|s| minimal_poly(&f, &u, s)).collect();
            assert!(polys[0] != polys[1] && polys[1] != polys[2] && polys[0] != polys[2]);
        }
    }

    #[test]
    fn generator_divides_circle_polynomial() {
        for m in [4u32, 5] {
            let (f, u) = setup(m);
            let code = build_code(&f, &u).unwrap();
            let n = code.n() as usize;
            // x^n + 1 (char 2) has the whole circle as its root set.
            let mut xn1 = vec![Elem::ZERO; n + 1];
            xn1[0] = Elem::ONE;
            xn1[n] = Elem::ONE;
            let rem = poly_rem(&f, &xn1, code.generator());
            assert!(rem.iter().all(|c| c.is_zero()));
            // And every root of g lies on the circle at exponents ±1, ±2, ±3.
            for s in [1usize, 2, 3] {
                assert!(poly_eval(&f, code.generator(), u.point(s)).is_zero());
                assert!(poly_eval(&f, code.generator(), u.point(u.len() - s)).is_zero());
            }
        }
    }

    #[test]
    fn code_parameters_q16_q32() {
        let (f, u) = setup(4);
        let code = build_code(&f, &u).unwrap();
        assert_eq!((code.n(), code.dim(), code.d()), (17, 11, 5));
        assert_eq!(code.singleton_defect(), 2);

        let (f5, u5) = setup(5);
        let code5 = build_code(&f5, &u5).unwrap();
        assert_eq!((code5.n(), code5.dim(), code5.d()), (33, 27, 6));
        assert_eq!(code5.singleton_defect(), 1);
    }

    #[test]
    fn generator_rows_are_codewords() {
        let (f, u) = setup(4);
        let code = build_code(&f, &u).unwrap();
        for row in code.generator_matrix() {
            assert!(code.is_codeword(&f, &u, &row));
        }
        // Random GF(q)-combinations stay inside and keep weight ≥ d.
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
        let rows = code.generator_matrix();
        let sub = f.subfield_elements();
        for _ in 0..200 {
            let mut word = vec![Elem::ZERO; code.n() as usize];
            for row in &rows {
                let c = sub[rng.gen_range(0..sub.len())];
                for (w, &r) in word.iter_mut().zip(row) {
                    *w += f.mul(c, r);
                }
            }
            assert!(code.is_codeword(&f, &u, &word));
            let weight = word.iter().filter(|e| !e.is_zero()).count() as u32;
            assert!(weight == 0 || weight >= code.d());
        }
        // A word violating the root conditions is rejected.
        let mut bad = vec![Elem::ZERO; code.n() as usize];
        bad[0] = Elem::ONE;
        assert!(!code.is_codeword(&f, &u, &bad));
    }

    #[test]
    fn q16_weight5_supports_are_steiner_blocks() {
        let (f, u) = setup(4);
        let scan = supports_of_weight(&f, &u, 5).unwrap();
        let steiner = blockset(&f, &u, &Family::Plain { k: 5, l: 2 }).unwrap();
        assert!(scan.blocks.eq_as_sets(&steiner));
        assert_eq!(scan.stats.supports, 68);
        assert_eq!(scan.stats.max_kernel_dim, 1);
        assert_eq!(scan.stats.anomalies, 0);
    }

    #[test]
    fn q16_weight6_supports_empty() {
        let (f, u) = setup(4);
        let scan = supports_of_weight(&f, &u, 6).unwrap();
        assert!(scan.blocks.is_empty());
    }

    #[test]
    fn q16_weight7_supports_complement_shift_family() {
        let (f, u) = setup(4);
        let scan = supports_of_weight(&f, &u, 7).unwrap();
        assert_eq!(scan.blocks.len(), 14960);
        let uv = blockset(&f, &u, &Family::ShiftU { k: 7, l: 3 }).unwrap();
        let comp = complementary_blocks(&uv);
        assert!(scan.blocks.eq_as_sets(&comp));
        // Every weight-7 support kernel is one-dimensional here, so each
        // support carries exactly q−1 codewords (matching A_7 = 15·|B_7|
        // in the full-enumeration cross-check).
        assert_eq!(scan.stats.max_kernel_dim, 1);
        assert_eq!(scan.stats.anomalies, 0);
    }

    #[test]
    fn q32_weight6_supports_equal_plain_family() {
        let (f, u) = setup(5);
        let scan = supports_of_weight(&f, &u, 6).unwrap();
        assert_eq!(scan.blocks.len(), 32736);
        let plain = blockset(&f, &u, &Family::Plain { k: 6, l: 3 }).unwrap();
        assert!(scan.blocks.eq_as_sets(&plain));
    }

    #[test]
    fn support_scan_ranges_partition() {
        let (f, u) = setup(4);
        let full = count_supports_in_range(&f, &u, 5, 0, u64::MAX).unwrap();
        let total = crate::subsets::binomial(17, 5);
        let mut merged = ScanStats::default();
        let step = total / 5 + 1;
        let mut lo = 0;
        while lo < total {
            let part = count_supports_in_range(&f, &u, 5, lo, lo + step).unwrap();
            merged.merge(&part);
            lo += step;
        }
        assert_eq!(merged, full);
    }

    #[test]
    fn scan_weight_bounds_enforced() {
        let (f, u) = setup(4);
        assert!(supports_of_weight(&f, &u, 0).is_err());
        assert!(supports_of_weight(&f, &u, 8).is_err());
    }

    #[test]
    fn q16_full_weight_triangle() {
        // Three independent routes to the trace-code weight distribution
        // must agree: (1) the closed-form completion from the scanned
        // A_5, A_6 followed by a MacWilliams transform, and (2) exhaustive
        // enumeration of all 16^6 trace words.
        let (f, u) = setup(4);
        let a5 = count_supports_in_range(&f, &u, 5, 0, u64::MAX)
            .unwrap()
            .supports;
        let a6 = count_supports_in_range(&f, &u, 6, 0, u64::MAX)
            .unwrap()
            .supports;
        assert_eq!((a5, a6), (68, 0));
        let a_low = [BigUint::from(15u32 * 68), BigUint::ZERO];
        // d_dual = 11 is itself verified below from the enumeration.
        let code_table = complete_weight_distribution(17, 11, 16, 5, 11, &a_low).unwrap();
        assert_eq!(distribution_mass(&code_table), BigUint::from(16u32).pow(11));
        // A_7 = 15 · |B_7|.
        let b7 = count_supports_in_range(&f, &u, 7, 0, u64::MAX)
            .unwrap()
            .supports;
        assert_eq!(code_table[7], BigUint::from(15 * b7));
        assert_eq!(code_table[7], BigUint::from(224400u32));

        let trace_table = macwilliams_transform(17, 11, 16, &code_table).unwrap();
        let enumerated = trace_weight_distribution_full(&f, &u);
        assert_eq!(trace_table, enumerated);
        assert_eq!(distribution_mass(&enumerated), BigUint::from(16u32).pow(6));
        // The trace code is a [17, 6, 11] code: weights 1..10 absent.
        assert!(enumerated[1..11].iter().all(|x| x.is_zero()));
        assert!(!enumerated[11].is_zero());
        // MacWilliams is an involution: transforming back recovers the
        // code's table.
        let back = macwilliams_transform(17, 6, 16, &trace_table).unwrap();
        assert_eq!(back, code_table);
    }

    #[test]
    #[allow(clippy::needless_range_loop)] // w labels the per-weight assertions
    fn q16_trace_supports_consistent_with_full_enumeration() {
        let (f, u) = setup(4);
        let supports = trace_supports_by_weight(&f, &u);
        let full = trace_weight_distribution_full(&f, &u);
        // Scalar classes account for all nonzero words: 15 words per class.
        for w in 1..=17usize {
            assert_eq!(
                BigUint::from(15 * supports.classes[w]),
                full[w],
                "weight {w}"
            );
            // Distinct classes may share a support (a support pins down the
            // codeword class only at the minimum weight), so deduplication
            // can shrink a bucket but never grow it.
            assert!(supports.by_weight[w].len() as u64 <= supports.classes[w]);
        }
        let total_classes: u64 = supports.classes.iter().sum();
        assert_eq!(total_classes, (16u64.pow(6) - 1) / 15);
        // The full (classes, distinct supports) profile over weights 11..17.
        let profile: Vec<(u64, usize)> = (11..=17)
            .map(|w| (supports.classes[w], supports.by_weight[w].len()))
            .collect();
        assert_eq!(
            profile,
            [
                (816, 816), // at w = d every support carries one class
                (2380, 2108),
                (16320, 2040),
                (80240, 680),
                (219504, 136),
                (426581, 17),
                (372640, 1),
            ]
        );
        // For zero sets of size ≤ 3 every subset of the circle occurs:
        // C(17,3), C(17,2), C(17,1), C(17,0) distinct supports.
        for s in 0..=3usize {
            assert_eq!(
                supports.by_weight[17 - s].len() as u64,
                binomial(17, s as u64)
            );
        }
    }

    #[test]
    fn q32_code_table_from_nmds_formula() {
        let (f, u) = setup(5);
        let a6 = count_supports_in_range(&f, &u, 6, 0, u64::MAX)
            .unwrap()
            .supports;
        assert_eq!(a6, 32736);
        let a_min = BigUint::from(31 * a6);
        let table = nmds_weight_distribution(33, 27, 32, &a_min).unwrap();
        assert_eq!(table[6], BigUint::from(1014816u32));
        assert_eq!(table[7], BigUint::from(105033456u64));
        assert_eq!(table[8], BigUint::from(11116421316u64));
        assert_eq!(table[9], BigUint::from(948713422800u64));
        assert_eq!(table[10], BigUint::from(70662246969600u64));
        assert_eq!(distribution_mass(&table), BigUint::from(32u32).pow(27));
        // The general completion specializes to the same table.
        let general = complete_weight_distribution(33, 27, 32, 6, 27, &[a_min]).unwrap();
        assert_eq!(general, table);
    }

    #[test]
    fn q32_trace_table_from_nmds_formula() {
        let a27 = BigUint::from(31u64 * 32736);
        let table = nmds_weight_distribution(33, 6, 32, &a27).unwrap();
        let expected: [(usize, u64); 7] = [
            (27, 1014816),
            (28, 1268520),
            (29, 20296320),
            (30, 64609952),
            (31, 210132384),
            (32, 399584823),
            (33, 376835008),
        ];
        for (w, v) in expected {
            assert_eq!(table[w], BigUint::from(v), "A_{w}");
        }
        assert_eq!(distribution_mass(&table), BigUint::from(32u32).pow(6));
        // Cross-check: A_28 = 31 · |B^b_{σ5,3}| (weight-28 words have
        // 5-point zero sets).
        assert_eq!(table[28], BigUint::from(31u64 * 40920));
        // And MacWilliams of the code table lands on the same trace table.
        let code_table = nmds_weight_distribution(33, 27, 32, &BigUint::from(1014816u32)).unwrap();
        let dual = macwilliams_transform(33, 27, 32, &code_table).unwrap();
        assert_eq!(dual, table);
    }

    #[test]
    fn weight_formula_rejects_bad_inputs() {
        assert!(nmds_weight_distribution(33, 0, 32, &BigUint::from(1u32)).is_err());
        // Wrong low-weight count length.
        assert!(complete_weight_distribution(17, 11, 16, 5, 11, &[BigUint::ZERO]).is_err());
        // Absurd A_d making a later coefficient negative.
        let huge = BigUint::from(10u64).pow(30);
        assert!(nmds_weight_distribution(33, 27, 32, &huge).is_err());
        // Wrong-length MacWilliams input.
        assert!(macwilliams_transform(17, 11, 16, &[BigUint::ZERO]).is_err());
    }

    #[test]
    fn delsarte_duality_q16() {
        // The trace code is the dual of C: exact on basis pairs (inner
        // products are GF(q)-bilinear, so basis orthogonality proves
        // orthogonality everywhere), plus randomized spot checks.
        let (f, u) = setup(4);
        let code = build_code(&f, &u).unwrap();
        let rows = code.generator_matrix();
        let tbasis = trace_basis_words(&f, &u);
        for row in &rows {
            for tw in &tbasis {
                let ip = row
                    .iter()
                    .zip(tw)
                    .fold(Elem::ZERO, |acc, (&a, &b)| acc + f.mul(a, b));
                assert!(ip.is_zero());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
        let sub = f.subfield_elements();
        for _ in 0..10_000 {
            let mut cw = [Elem::ZERO; 17];
            for row in &rows {
                let c = sub[rng.gen_range(0..sub.len())];
                for (w, &r) in cw.iter_mut().zip(row) {
                    *w += f.mul(c, r);
                }
            }
            let (a, b, c) = (
                random_elem(&f, &mut rng),
                random_elem(&f, &mut rng),
                random_elem(&f, &mut rng),
            );
            let tw = trace_codeword(&f, &u, a, b, c);
            let ip = cw
                .iter()
                .zip(&tw)
                .fold(Elem::ZERO, |acc, (&x, &y)| acc + f.mul(x, y));
            assert!(ip.is_zero());
        }
        // Dimensions complement: 11 + 6 = 17.
        assert_eq!(code.dim() + 6, code.n());
    }

    #[test]
    fn zero6_parameterization_roundtrip_q32_samples() {
        let (f, u) = setup(5);
        let plain = blockset(&f, &u, &Family::Plain { k: 6, l: 3 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x2e06);
        for _ in 0..50 {
            let b = plain.get(rng.gen_range(0..plain.len()));
            let (a, bb, c) = parameterize_zero6(&f, &u, b).unwrap();
            let zeros = zero_set(&f, &u, a, bb, c).unwrap();
            assert_eq!(zeros, b);
            // Weight identity: the trace word misses exactly the zeros.
            let w = trace_codeword(&f, &u, a, bb, c)
                .iter()
                .filter(|e| !e.is_zero())
                .count();
            assert_eq!(w, 33 - 6);
        }
        // A 6-block with σ_{6,3} ≠ 0 is rejected.
        let bad = [0u8, 1, 2, 3, 4, 5];
        let elems = u.block_elems(&bad);
        if !crate::esp::esp_all(&f, &elems)[3].is_zero() {
            assert!(parameterize_zero6(&f, &u, &bad).is_err());
        }
    }

    #[test]
    fn zero5_parameterization_roundtrip_q32_samples() {
        let (f, u) = setup(5);
        let bvar = blockset(&f, &u, &Family::ShiftB { k: 5, l: 3 }).unwrap();
        assert_eq!(bvar.len(), 40920);
        let mut rng = ChaCha8Rng::seed_from_u64(0x2e05);
        for _ in 0..50 {
            let b = bvar.get(rng.gen_range(0..bvar.len()));
            let elems = u.block_elems(b);
            let sig = crate::esp::esp_all(&f, &elems);
            // Exactly one point is the distinguished double root at odd m.
            let distinguished: Vec<usize> = (0..5)
                .filter(|&i| (sig[3] + f.mul(elems[i], sig[2])).is_zero())
                .collect();
            assert_eq!(distinguished.len(), 1);
            for i in 0..5 {
                let res = parameterize_zero5(&f, &u, b, i);
                if i == distinguished[0] {
                    let (a, bb, c) = res.unwrap();
                    let zeros = zero_set(&f, &u, a, bb, c).unwrap();
                    assert_eq!(zeros, b);
                } else {
                    assert_eq!(
                        res.unwrap_err(),
                        Error::NotDistinguishedRoot { index: i as u32 }
                    );
                }
            }
        }
    }

    #[test]
    fn random_trace_words_have_small_zero_sets() {
        let (f, u) = setup(5);
        let mut rng = ChaCha8Rng::seed_from_u64(0x05e7);
        for _ in 0..100_000 {
            let (a, b, c) = (
                random_elem(&f, &mut rng),
                random_elem(&f, &mut rng),
                random_elem(&f, &mut rng),
            );
            if a.is_zero() && b.is_zero() && c.is_zero() {
                continue;
            }
            let zeros = zero_set(&f, &u, a, b, c).unwrap();
            assert!(zeros.len() <= 6);
            let w = trace_codeword(&f, &u, a, b, c)
                .iter()
                .filter(|e| !e.is_zero())
                .count();
            assert_eq!(w, 33 - zeros.len());
        }
        // The zero triple is rejected explicitly.
        assert!(zero_set(&f, &u, Elem::ZERO, Elem::ZERO, Elem::ZERO).is_err());
    }
}
