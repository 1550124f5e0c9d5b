//! Command implementations and parallel scan helpers.

use std::path::Path;

use anyhow::{bail, Context, Result};
use circle_designs::blocks::{self, BlockSet, Family};
use circle_designs::code::{self, build_code, macwilliams_transform, Code, ScanStats, SupportScan};
use circle_designs::design::verify_t_design;
use circle_designs::field::{Field, UnitCircle};
use circle_designs::group::{
    fixed_circle_points, is_invariant, orbit_blocks, orbit_partition, stabilizer_generators,
    stabilizer_group, Moebius,
};
use circle_designs::subsets::binomial;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::family::{family_name, parse_family};
use crate::report::{
    elem_str, write_blocks_file, write_json, AlltopReport, BlocksFile, CheckRecord, CodeReport,
    GroupReport, InvarianceReport, OrbitInfoReport, OrbitsReport, Order2Report, SupportReport,
    TraceReport, VerdictReport,
};

/// Builds the field and circle for a supported q.
pub fn q_to_field(q: u32) -> Result<(Field, UnitCircle)> {
    let m = match q {
        16 => 4,
        32 => 5,
        64 => 6,
        128 => 7,
        _ => bail!("unsupported q = {q} (supported: 16, 32, 64, 128)"),
    };
    let f = Field::new(m)?;
    let u = UnitCircle::new(&f);
    Ok((f, u))
}

/// Deterministic RNG for sampled checks, seeded from the parameters only.
pub fn sample_rng(tag: &str, q: u32, n: u64) -> ChaCha8Rng {
    // FNV-1a over the tag, then mix in q and n.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h ^= (q as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h ^= n.rotate_left(32);
    ChaCha8Rng::seed_from_u64(h)
}

/// Splits [0, total) into at most `parts` contiguous ranges.
pub fn chunk_ranges(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = (parts as u64).clamp(1, total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut lo = 0;
    for i in 0..parts {
        let len = base + u64::from(i < extra);
        out.push((lo, lo + len));
        lo += len;
    }
    out
}

/// Runs `work` inside a rayon pool with the requested thread count
/// (the global pool when `jobs` is None).
pub fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("building thread pool")
            .install(work),
        None => work(),
    }
}

fn parts_for(total: u64) -> usize {
    let threads = rayon::current_num_threads();
    // Enough slices for load balancing without merge overhead dominating.
    ((threads * 8).max(16)).min((total / 4096).max(1) as usize)
}

/// Parallel family scan: partitions the colex rank space and merges in
/// chunk order, so output order equals the sequential scan's.
pub fn par_blockset(f: &Field, u: &UnitCircle, fam: &Family) -> Result<BlockSet> {
    fam.validate(f)?;
    let total = blocks::scan_size(u, fam);
    let ranges = chunk_ranges(total, parts_for(total));
    let pieces: Vec<circle_designs::Result<BlockSet>> = ranges
        .par_iter()
        .map(|&(lo, hi)| blocks::blockset_in_range(f, u, fam, lo, hi))
        .collect();
    let mut out = BlockSet::new(u.len() as u16, fam.k() as u8);
    for p in pieces {
        out.extend(&p?);
    }
    Ok(out)
}

/// Parallel support scan (materializing), merged in chunk order.
pub fn par_supports(f: &Field, u: &UnitCircle, w: usize) -> Result<SupportScan> {
    let total = binomial(u.len() as u64, w as u64);
    let ranges = chunk_ranges(total, parts_for(total));
    let pieces: Vec<circle_designs::Result<SupportScan>> = ranges
        .par_iter()
        .map(|&(lo, hi)| {
            let mut bs = BlockSet::new(u.len() as u16, w as u8);
            let stats = code::for_each_support_in_range(f, u, w, lo, hi, |set| bs.push(set))?;
            Ok(SupportScan { blocks: bs, stats })
        })
        .collect();
    let mut blocks = BlockSet::new(u.len() as u16, w as u8);
    let mut stats = ScanStats::default();
    for p in pieces {
        let p = p?;
        blocks.extend(&p.blocks);
        stats.merge(&p.stats);
    }
    Ok(SupportScan { blocks, stats })
}

/// The `blocks` command. Returns the block count.
pub fn cmd_blocks(q: u32, family: &str, out: Option<&Path>, jobs: Option<usize>) -> Result<u64> {
    let (f, u) = q_to_field(q)?;
    let fam = parse_family(&f, family)?;
    let bs = with_pool(jobs, || par_blockset(&f, &u, &fam))?;
    let n = bs.len() as u64;
    println!(
        "family {} at q={q}: {n} blocks of size {} on {} points",
        family_name(&fam, family),
        fam.k(),
        u.len()
    );
    if let Some(path) = out {
        let file = BlocksFile::from_blockset(q, family_name(&fam, family), &bs);
        write_blocks_file(path, &file)?;
        println!("wrote {}", path.display());
    }
    Ok(n)
}

/// The `verify` command. Returns true when the file is a t-design.
pub fn cmd_verify(blocks_path: &Path, t: u32, out: Option<&Path>) -> Result<bool> {
    let file = crate::report::read_blocks_file(blocks_path)?;
    let bs = file.to_blockset()?;
    let verdict = verify_t_design(&bs, t)?;
    let report = VerdictReport::new(file.q + 1, file.k, bs.len() as u64, &verdict);
    println!("{}: {}", blocks_path.display(), report.summary());
    if let Some(path) = out {
        write_json(path, &report)?;
        println!("wrote {}", path.display());
    }
    Ok(report.is_design())
}

/// Everything the `code` command (and the suite) derives for one q.
pub struct CodeTables {
    pub code: Code,
    pub supports: Vec<(u32, SupportScan, &'static str)>,
    pub weight_table: Option<Vec<BigUint>>,
    pub trace_table: Option<Vec<BigUint>>,
    pub trace_confirmed: bool,
}

impl CodeTables {
    /// First nonzero weight of the trace table.
    pub fn trace_d(&self) -> Option<u32> {
        let t = self.trace_table.as_ref()?;
        (1..t.len())
            .find(|&w| t[w] != BigUint::ZERO)
            .map(|w| w as u32)
    }
}

/// Certifies the dual (trace-code) minimum distance q−5: every nonzero
/// trace word has at most 6 zeros on the circle (the zero polynomial
/// u³·f(u) has degree ≤ 6), and a word with exactly 6 zeros is produced
/// from the first σ_{6,3}-root block via the zero-set parameterization.
fn certify_dual_distance(f: &Field, u: &UnitCircle) -> Result<u32> {
    let fam = Family::Plain { k: 6, l: 3 };
    let total = blocks::scan_size(u, &fam);
    let step = 100_000u64.min(total);
    let mut found: Option<Vec<u8>> = None;
    let mut lo = 0;
    while lo < total && found.is_none() {
        let hi = (lo + step).min(total);
        let bs = blocks::blockset_in_range(f, u, &fam, lo, hi)?;
        if !bs.is_empty() {
            found = Some(bs.get(0).to_vec());
        }
        lo = hi;
    }
    let block = found.context("no σ_{6,3} root block exists; cannot witness dual distance")?;
    let (a, b, c) = code::parameterize_zero6(f, u, &block)?;
    let zeros = code::zero_set(f, u, a, b, c)?;
    if zeros != block {
        bail!("zero-set witness mismatch: {zeros:?} vs {block:?}");
    }
    Ok(u.len() as u32 - 6)
}

/// Builds the code and its weight tables for one q.
///
/// Scans performed by default: the distance certification inside
/// [`build_code`], plus exact support scans at the weights that feed the
/// tables (w = 5..7 for q ≤ 32, w = 5..6 for q = 64). q = 128 certifies
/// the distance only (the C(129,5) scan takes about a minute; anything
/// beyond is out of desk budget) and is gated behind `heavy`.
pub fn code_tables(f: &Field, u: &UnitCircle, heavy: bool) -> Result<CodeTables> {
    let q = f.q() as u64;
    if q == 128 && !heavy {
        bail!(
            "q=128 distance certification scans all C(129,5) subsets (about a \
             minute); rerun with --heavy"
        );
    }
    let code = build_code(f, u)?;
    let n = code.n() as u64;
    let dim = code.dim() as u64;
    let d = code.d() as usize;

    if q == 128 {
        // Weight tables need A_6 = 127·|B_6|, a C(129,6) ≈ 5.7·10⁹ kernel
        // scan: out of desk budget.
        return Ok(CodeTables {
            code,
            supports: Vec::new(),
            weight_table: None,
            trace_table: None,
            trace_confirmed: false,
        });
    }

    let scan_max = if q == 64 { 6 } else { 7 };
    let mut supports = Vec::new();
    for w in d..=scan_max {
        supports.push((w as u32, par_supports(f, u, w)?, "kernel-scan"));
    }

    let d_dual = certify_dual_distance(f, u)? as u64;
    let qm1 = BigUint::from(q - 1);
    let a_of = |scan: &SupportScan| &qm1 * BigUint::from(scan.blocks.len() as u64);

    let weight_table = match q {
        16 | 64 => {
            // Singleton defect 2: complete from A_d, A_{d+1} and the
            // certified dual distance.
            let a_low = [a_of(&supports[0].1), a_of(&supports[1].1)];
            code::complete_weight_distribution(n, dim, q, d as u64, d_dual, &a_low)?
        }
        32 => {
            // NMDS (defect 1 on both sides: d = n − dim, certified
            // d_dual = dim).
            if d as u64 != n - dim || d_dual != dim {
                bail!("q=32 code is not NMDS: d={d}, d_dual={d_dual}");
            }
            code::nmds_weight_distribution(n, dim, q, &a_of(&supports[0].1))?
        }
        _ => unreachable!(),
    };
    let trace_table = macwilliams_transform(n, dim, q, &weight_table)?;

    // At q = 16 the trace code is small enough to enumerate completely;
    // the full 16⁶ enumeration must reproduce the MacWilliams table.
    let trace_confirmed = if q == 16 {
        let enumerated = code::trace_weight_distribution_full(f, u);
        if enumerated != trace_table {
            bail!("q=16 full trace enumeration disagrees with the MacWilliams table");
        }
        true
    } else {
        false
    };

    Ok(CodeTables {
        code,
        supports,
        weight_table: Some(weight_table),
        trace_table: Some(trace_table),
        trace_confirmed,
    })
}

/// The `code` command.
pub fn cmd_code(q: u32, heavy: bool, jobs: Option<usize>, out: Option<&Path>) -> Result<()> {
    let (f, u) = q_to_field(q)?;
    let tables = with_pool(jobs, || code_tables(&f, &u, heavy))?;
    let code = &tables.code;
    println!(
        "[{}, {}, {}] code over GF({q}), Singleton defect {}",
        code.n(),
        code.dim(),
        code.d(),
        code.singleton_defect()
    );
    let generator: Vec<String> = code.generator().iter().map(|&e| elem_str(&f, e)).collect();
    println!(
        "generator g(x) coefficients (g_0..g_6): {}",
        generator.join(", ")
    );
    let mut support_reports = Vec::new();
    for (w, scan, route) in &tables.supports {
        println!(
            "weight {w}: {} supports (max kernel dim {}, {} anomalies)",
            scan.blocks.len(),
            scan.stats.max_kernel_dim,
            scan.stats.anomalies
        );
        support_reports.push(SupportReport {
            weight: *w,
            count: scan.blocks.len() as u64,
            route: (*route).into(),
            max_kernel_dim: Some(scan.stats.max_kernel_dim),
            anomalies: Some(scan.stats.anomalies),
        });
    }
    if let Some(t) = &tables.weight_table {
        let head: Vec<String> = (code.d()..=code.n().min(code.d() + 4))
            .map(|w| format!("A_{w} = {}", t[w as usize]))
            .collect();
        println!("weight table: {}", head.join(", "));
    } else {
        println!("weight table: out of desk budget at q={q}");
    }
    let trace = match (&tables.trace_table, tables.trace_d()) {
        (Some(t), Some(td)) => {
            println!(
                "trace code: [{}, 6, {td}]{}",
                code.n(),
                if tables.trace_confirmed {
                    " (confirmed by full enumeration)"
                } else {
                    ""
                }
            );
            Some(TraceReport {
                dim: 6,
                d: td,
                weight_table: t.iter().map(|x| x.to_string()).collect(),
                confirmed_by_full_enumeration: tables.trace_confirmed,
            })
        }
        _ => None,
    };
    if let Some(path) = out {
        let report = CodeReport {
            q,
            n: code.n(),
            dim: code.dim(),
            d: code.d(),
            singleton_defect: code.singleton_defect(),
            generator,
            supports: support_reports,
            weight_table: tables
                .weight_table
                .as_ref()
                .map(|t| t.iter().map(|x| x.to_string()).collect()),
            trace,
        };
        write_json(path, &report)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Order-2 elements of the group in a deterministic sampled order.
pub fn order2_elements(f: &Field, group: &[Moebius], limit: usize, q: u32) -> Vec<Moebius> {
    let mut idx: Vec<usize> = (0..group.len()).collect();
    idx.shuffle(&mut sample_rng("order2", q, group.len() as u64));
    let mut out = Vec::new();
    for i in idx {
        if group[i].order(f) == 2 {
            out.push(group[i]);
            if out.len() == limit {
                break;
            }
        }
    }
    out
}

/// The `group` command. Returns true when every asserted property holds.
pub fn cmd_group(
    q: u32,
    k: usize,
    sample: usize,
    heavy: bool,
    jobs: Option<usize>,
    out: Option<&Path>,
) -> Result<bool> {
    let (f, u) = q_to_field(q)?;
    let total = binomial(q as u64 + 1, k as u64);
    if total > 50_000_000 && !heavy {
        bail!(
            "the orbit partition on all {total} {k}-subsets needs gigabytes \
             and minutes; rerun with --heavy"
        );
    }
    let gens = stabilizer_generators(&f, &u)?;
    let group = stabilizer_group(&f, &u)?;
    let order = group.len() as u64;
    println!("stabilizer of the circle: order {order} (q³−q = {})", {
        let qq = q as u64;
        qq * qq * qq - qq
    });

    let report = orbit_partition(&f, &u, &gens, order, k)?;
    println!(
        "orbits on {k}-subsets: {} orbits; lengths {:?}",
        report.num_orbits,
        report.orbits.iter().map(|o| o.length).collect::<Vec<_>>()
    );

    let mut all_ok = true;

    // Alltop identity: odd m, k = 5 — the union of the short orbits is
    // exactly the b-variant family.
    let odd_m = f.m() % 2 == 1;
    let alltop = if odd_m && k == 5 {
        let mut union = BlockSet::new(u.len() as u16, 5);
        let mut num_short = 0u64;
        for o in report.orbits.iter().filter(|o| o.length < order) {
            num_short += 1;
            union.extend(&orbit_blocks(&f, &u, &gens, &o.rep)?);
        }
        let fam = Family::ShiftB { k: 5, l: 3 };
        let bvar = with_pool(jobs, || par_blockset(&f, &u, &fam))?;
        let equal = union.eq_as_sets(&bvar);
        all_ok &= equal;
        println!(
            "Alltop identity: {} short orbits, union {} blocks, b-variant {} blocks, equal: {equal}",
            num_short,
            union.len(),
            bvar.len()
        );
        Some(AlltopReport {
            num_short_orbits: num_short,
            short_orbit_union_size: union.len() as u64,
            b_variant_size: bvar.len() as u64,
            union_equals_b_variant: equal,
        })
    } else {
        None
    };

    // Order-2 elements fix exactly one circle point (exhaustively at
    // q = 16, sampled elsewhere).
    let exhaustive = q == 16;
    let elems2 = if exhaustive {
        group
            .iter()
            .filter(|g| g.order(&f) == 2)
            .copied()
            .collect::<Vec<_>>()
    } else {
        order2_elements(&f, &group, sample, q)
    };
    let all_fix_one = elems2
        .iter()
        .all(|g| fixed_circle_points(&f, &u, g).len() == 1);
    all_ok &= all_fix_one;
    println!(
        "order-2 elements checked: {} ({}), all fix exactly one point: {all_fix_one}",
        elems2.len(),
        if exhaustive { "exhaustive" } else { "sampled" }
    );

    // Invariance of the parity-appropriate family under `sample` random
    // group elements.
    let (fam, fam_name) = if odd_m {
        (Family::ShiftB { k: 5, l: 3 }, "b:5,3")
    } else {
        (Family::Plain { k: 5, l: 2 }, "plain:5,2")
    };
    let bs = with_pool(jobs, || par_blockset(&f, &u, &fam))?;
    let mut idx: Vec<usize> = (0..group.len()).collect();
    idx.shuffle(&mut sample_rng("invariance", q, group.len() as u64));
    let sampled: Vec<Moebius> = idx.into_iter().take(sample).map(|i| group[i]).collect();
    let invariant = is_invariant(&f, &u, &sampled, &bs)?;
    all_ok &= invariant;
    println!(
        "invariance of {fam_name} ({} blocks) under {} random elements: {invariant}",
        bs.len(),
        sampled.len()
    );

    if let Some(path) = out {
        let group_report = GroupReport {
            q,
            group_order: order,
            generators: gens
                .iter()
                .map(|g| {
                    [
                        elem_str(&f, g.a),
                        elem_str(&f, g.b),
                        elem_str(&f, g.c),
                        elem_str(&f, g.d),
                    ]
                })
                .collect(),
            orbits: OrbitsReport {
                k: report.k,
                num_orbits: report.num_orbits,
                orbits: report
                    .orbits
                    .iter()
                    .map(|o| OrbitInfoReport {
                        rep: o.rep.clone(),
                        length: o.length,
                        stabilizer_order: o.stabilizer_order,
                    })
                    .collect(),
            },
            alltop,
            order2: Order2Report {
                checked: elems2.len() as u64,
                exhaustive,
                all_fix_exactly_one_point: all_fix_one,
            },
            invariance: InvarianceReport {
                family: fam_name.into(),
                num_blocks: bs.len() as u64,
                elements_checked: sampled.len() as u64,
                invariant,
            },
        };
        write_json(path, &group_report)?;
        println!("wrote {}", path.display());
    }
    Ok(all_ok)
}

/// The `suite` command. Returns true when every check passed.
pub fn cmd_suite(
    qs: &[u32],
    heavy: bool,
    jobs: Option<usize>,
    cases: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let checks = crate::suite::full_suite(qs, heavy, jobs, cases)?;
    summarize(checks, out)
}

/// The `props` command. Returns true when every check passed.
pub fn cmd_props(cases: u64, out: Option<&Path>) -> Result<bool> {
    let mut checks = Vec::new();
    crate::suite::props_checks(&mut checks, cases)?;
    summarize(checks, out)
}

fn summarize(checks: Vec<CheckRecord>, out: Option<&Path>) -> Result<bool> {
    let pass = checks.iter().filter(|c| c.passed()).count();
    let fail = checks.len() - pass;
    println!("{} checks: {pass} pass, {fail} fail", checks.len());
    if let Some(path) = out {
        write_json(path, &checks)?;
        println!("wrote {}", path.display());
    }
    Ok(fail == 0)
}
