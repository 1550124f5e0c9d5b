//! Machine-readable report types and JSON plumbing.
//!
//! Reports written with `--out` are deterministic: struct fields serialize
//! in declaration order, collections are explicitly ordered, and runtimes
//! go to standard output only, never into files.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use circle_designs::blocks::BlockSet;
use circle_designs::design::Verdict;
use circle_designs::field::{Elem, Field};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The block-set file format: indices are discrete logs base β, each block
/// strictly increasing, blocks sorted lexicographically.
#[derive(Debug, Serialize, Deserialize)]
pub struct BlocksFile {
    pub q: u32,
    pub k: u8,
    pub family: String,
    pub num_blocks: u64,
    pub blocks: Vec<Vec<u8>>,
}

impl BlocksFile {
    /// Builds the file payload from a block set (sorts lexicographically).
    pub fn from_blockset(q: u32, family: String, bs: &BlockSet) -> BlocksFile {
        let mut sorted = bs.clone();
        sorted.sort_lex();
        BlocksFile {
            q,
            k: bs.k(),
            family,
            num_blocks: bs.len() as u64,
            blocks: sorted.iter().map(|b| b.to_vec()).collect(),
        }
    }

    /// Validates the payload and converts it back into a block set.
    pub fn to_blockset(&self) -> Result<BlockSet> {
        let v = self.q + 1;
        if v > u16::MAX as u32 {
            bail!("q = {} out of range", self.q);
        }
        if self.num_blocks != self.blocks.len() as u64 {
            bail!(
                "num_blocks = {} but {} blocks listed",
                self.num_blocks,
                self.blocks.len()
            );
        }
        let mut bs = BlockSet::new(v as u16, self.k);
        for (i, blk) in self.blocks.iter().enumerate() {
            if blk.len() != self.k as usize {
                bail!(
                    "block {i} has {} points, expected k = {}",
                    blk.len(),
                    self.k
                );
            }
            for w in blk.windows(2) {
                if w[0] >= w[1] {
                    bail!("block {i} is not strictly increasing: {blk:?}");
                }
            }
            if let Some(&last) = blk.last() {
                if last as u32 >= v {
                    bail!("block {i} has index {last} out of range 0..{v}");
                }
            }
            bs.push(blk);
        }
        Ok(bs)
    }
}

/// Witness that a block set is not a t-design.
#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Colex-first t-subset and its coverage count.
    pub first_t_subset: Vec<u8>,
    pub first_count: u64,
    /// Colex-first t-subset covered a different number of times.
    pub witness_t_subset: Vec<u8>,
    pub witness_count: u64,
}

/// Outcome of `verify`: design parameters or a witness.
#[derive(Debug, Serialize, Deserialize)]
pub struct VerdictReport {
    pub v: u32,
    pub k: u8,
    pub t: u32,
    pub num_blocks: u64,
    /// "design" or "not-design".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

impl VerdictReport {
    pub fn new(v: u32, k: u8, num_blocks: u64, verdict: &Verdict) -> VerdictReport {
        match verdict {
            Verdict::Design {
                t,
                lambda,
                is_complete,
                ..
            } => VerdictReport {
                v,
                k,
                t: *t,
                num_blocks,
                status: "design".into(),
                lambda: Some(*lambda),
                complete: Some(*is_complete),
                witness: None,
            },
            Verdict::NotDesign {
                t,
                first,
                first_count,
                witness,
                witness_count,
            } => VerdictReport {
                v,
                k,
                t: *t,
                num_blocks,
                status: "not-design".into(),
                lambda: None,
                complete: None,
                witness: Some(WitnessReport {
                    first_t_subset: first.clone(),
                    first_count: *first_count,
                    witness_t_subset: witness.clone(),
                    witness_count: *witness_count,
                }),
            },
        }
    }

    pub fn is_design(&self) -> bool {
        self.status == "design"
    }

    /// One-line human rendering.
    pub fn summary(&self) -> String {
        match (&self.lambda, &self.witness) {
            (Some(l), _) => format!(
                "{}-({},{},{}) design with {} blocks{}",
                self.t,
                self.v,
                self.k,
                l,
                self.num_blocks,
                if self.complete == Some(true) {
                    " (complete)"
                } else {
                    ""
                }
            ),
            (_, Some(w)) => format!(
                "not a {}-design: t-subset {:?} covered {} times, {:?} covered {} times",
                self.t, w.first_t_subset, w.first_count, w.witness_t_subset, w.witness_count
            ),
            _ => unreachable!("verdict has either lambda or witness"),
        }
    }
}

/// Support counts of one weight, with the scan statistics that certify the
/// per-support codeword multiplicity.
#[derive(Debug, Serialize)]
pub struct SupportReport {
    pub weight: u32,
    pub count: u64,
    /// "kernel-scan" when counted by exact linear algebra over all
    /// w-subsets; "family-complement" when counted through the proven
    /// correspondence with a σ-family complement.
    pub route: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_kernel_dim: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anomalies: Option<u64>,
}

/// Report of the `code` command.
#[derive(Debug, Serialize)]
pub struct CodeReport {
    pub q: u32,
    pub n: u32,
    pub dim: u32,
    pub d: u32,
    pub singleton_defect: u32,
    /// Generator polynomial coefficients g_0..g_6 as powers of α ("0" for zero).
    pub generator: Vec<String>,
    pub supports: Vec<SupportReport>,
    /// A_0..A_n as decimal strings; absent when out of desk budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_table: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceReport>,
}

/// Trace (dual) code section of the `code` report.
#[derive(Debug, Serialize)]
pub struct TraceReport {
    pub dim: u32,
    pub d: u32,
    /// A_0..A_n as decimal strings (MacWilliams transform of the code table).
    pub weight_table: Vec<String>,
    /// True when the table was additionally confirmed by enumerating all
    /// q^6 trace codewords.
    pub confirmed_by_full_enumeration: bool,
}

/// One orbit in the `group` report.
#[derive(Debug, Serialize)]
pub struct OrbitInfoReport {
    pub rep: Vec<u8>,
    pub length: u64,
    pub stabilizer_order: u64,
}

/// Orbit partition section of the `group` report.
#[derive(Debug, Serialize)]
pub struct OrbitsReport {
    pub k: u32,
    pub num_orbits: u64,
    pub orbits: Vec<OrbitInfoReport>,
}

/// Report of the `group` command.
#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub q: u32,
    pub group_order: u64,
    /// Generators as [a, b, c, d] coefficient strings of u ↦ (au+b)/(cu+d).
    pub generators: Vec<[String; 4]>,
    pub orbits: OrbitsReport,
    /// Union of short orbits vs the b-variant family (odd m, k = 5 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alltop: Option<AlltopReport>,
    pub order2: Order2Report,
    pub invariance: InvarianceReport,
}

#[derive(Debug, Serialize)]
pub struct AlltopReport {
    pub num_short_orbits: u64,
    pub short_orbit_union_size: u64,
    pub b_variant_size: u64,
    /// True when the union equals B^b_{σ5,3} exactly (empty symmetric
    /// difference).
    pub union_equals_b_variant: bool,
}

#[derive(Debug, Serialize)]
pub struct Order2Report {
    /// Number of order-2 elements examined ("all" when exhaustive).
    pub checked: u64,
    pub exhaustive: bool,
    pub all_fix_exactly_one_point: bool,
}

#[derive(Debug, Serialize)]
pub struct InvarianceReport {
    pub family: String,
    pub num_blocks: u64,
    pub elements_checked: u64,
    pub invariant: bool,
}

/// One named check of the verification suite.
#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// "pass" or "fail"; pass iff expected equals observed exactly.
    pub status: String,
    pub expected: Value,
    pub observed: Value,
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Runs one named check: `expected` and `observed` are compared exactly.
pub fn run_check(
    id: &str,
    expected: Value,
    observe: impl FnOnce() -> Result<Value>,
) -> CheckRecord {
    let start = Instant::now();
    let observed = match observe() {
        Ok(v) => v,
        Err(e) => Value::String(format!("error: {e:#}")),
    };
    let status = if observed == expected { "pass" } else { "fail" };
    CheckRecord {
        check_id: id.to_string(),
        status: status.into(),
        expected,
        observed,
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// Prints the one-line outcome of a check to standard output.
pub fn print_check(c: &CheckRecord) {
    if c.passed() {
        println!("PASS {} ({} ms)", c.check_id, c.runtime_ms);
    } else {
        println!(
            "FAIL {} ({} ms)\n  expected: {}\n  observed: {}",
            c.check_id, c.runtime_ms, c.expected, c.observed
        );
    }
}

/// Formats a field element as a power of α ("0" for zero).
pub fn elem_str(f: &Field, e: Elem) -> String {
    if e.is_zero() {
        "0".into()
    } else {
        format!("a^{}", f.log(e).expect("nonzero element has a log"))
    }
}

/// Writes a JSON report (pretty, trailing newline) to `path`.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).context("serializing report")?;
    s.push('\n');
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Writes the block-set file (compact JSON: block lists can be large).
pub fn write_blocks_file(path: &Path, file: &BlocksFile) -> Result<()> {
    let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = std::io::BufWriter::new(f);
    serde_json::to_writer(&mut w, file).context("serializing block set")?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// Reads and validates a block-set file.
pub fn read_blocks_file(path: &Path) -> Result<BlocksFile> {
    let data = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: BlocksFile = serde_json::from_str(&data)
        .with_context(|| format!("parsing {} as a block-set file", path.display()))?;
    Ok(file)
}
