//! Exhaustive census over every series that starts with 0.
//!
//! Series are visited in lexicographic order of their last `n - 1` notes.
//! The permutation sequence is cut into contiguous rank ranges, processed
//! on a rayon pool and merged back in rank order, so results and files do
//! not depend on the thread count.
//!
//! By default every tally is incremented by `n`: each canonical series
//! stands for its `n` transpositions, as in the reference data files.
//! [`CountConvention::Canonical`] counts each canonical series once.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write as _};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::catalog;
use crate::error::{Error, Result};
use crate::perm::{lcm, structure_of_image, CycleStructure};
use crate::pitch::{Modulus, TransformKind};

/// Default refusal threshold for `n`.
pub const DEFAULT_MAX_N: usize = 10;

/// Above this `n` a census takes long enough that callers should warn.
pub const WARN_ABOVE_N: usize = 9;

/// Largest `n` for which [`verify_catalog`] also checks transposed copies.
pub const TRANSPOSITION_CHECK_MAX_N: usize = 6;

// series per work unit
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountConvention {
    /// Each canonical series counts `n` times, once per transposition.
    #[default]
    Transpositions,
    /// Each canonical series counts once.
    Canonical,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub max_n: usize,
    pub counts: CountConvention,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            threads: None,
            max_n: DEFAULT_MAX_N,
            counts: CountConvention::Transpositions,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub kind: TransformKind,
    pub n: usize,
    pub t: usize,
    pub counts: CountConvention,
    pub order_counts: BTreeMap<u64, u64>,
    pub structure_counts: BTreeMap<(u64, CycleStructure), u64>,
    pub total_series: u64,
}

impl CensusResult {
    pub fn structures(&self) -> BTreeSet<CycleStructure> {
        self.structure_counts.keys().map(|(_, s)| s.clone()).collect()
    }
}

/// Tallies the proliferating permutation of every series starting with 0.
pub fn census(
    kind: TransformKind,
    n: Modulus,
    t: usize,
    options: &CensusOptions,
) -> Result<CensusResult> {
    check(n, t, options)?;
    let nn = n.get();
    let weight = match options.counts {
        CountConvention::Transpositions => nn as u64,
        CountConvention::Canonical => 1,
    };
    let parts = run_chunks(nn, options.threads, |start, count| {
        let mut kernel = Kernel::new(kind, nn, t);
        let mut series = unrank(nn, start);
        let mut local: HashMap<Vec<usize>, u64> = HashMap::new();
        for i in 0..count {
            if i > 0 {
                next_suffix(&mut series);
            }
            *local.entry(kernel.lengths(&series).to_vec()).or_default() += 1;
        }
        local
    })?;

    let mut structure_counts: BTreeMap<(u64, CycleStructure), u64> = BTreeMap::new();
    for part in parts {
        for (lengths, c) in part {
            let s = CycleStructure::new(lengths);
            *structure_counts.entry((s.order(), s)).or_default() += c * weight;
        }
    }
    let mut order_counts = BTreeMap::new();
    for ((order, _), c) in &structure_counts {
        *order_counts.entry(*order).or_default() += c;
    }
    let total_series = order_counts.values().sum();
    Ok(CensusResult {
        kind,
        n: nn,
        t,
        counts: options.counts,
        order_counts,
        structure_counts,
        total_series,
    })
}

/// The three files for one `(kind, n, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusPaths {
    pub data_structures: PathBuf,
    pub complete_list: PathBuf,
    pub data_orders: PathBuf,
}

impl CensusPaths {
    pub fn new(root: &Path, kind: TransformKind, n: usize, t: usize) -> Self {
        let base = root
            .join(kind.name())
            .join(format!("Proliferations_{}_notes", n));
        let file = format!("transposition{}.txt", t);
        CensusPaths {
            data_structures: base.join("Data_Structures").join(&file),
            complete_list: base.join("CompleteList").join(&file),
            data_orders: base.join("Data_Orders").join(file),
        }
    }

    pub fn all(&self) -> [&Path; 3] {
        [&self.data_structures, &self.complete_list, &self.data_orders]
    }
}

/// Writes the data files under `root`. The complete list is regenerated by
/// a second pass over the series, streamed in rank order.
pub fn write_census_files(
    result: &CensusResult,
    root: &Path,
    options: &CensusOptions,
) -> Result<CensusPaths> {
    let n = Modulus::new(result.n)?;
    check(n, result.t, options)?;
    let paths = CensusPaths::new(root, result.kind, result.n, result.t);
    for p in paths.all() {
        let dir = p.parent().expect("file has a parent");
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }

    let mut orders = String::new();
    for (order, count) in &result.order_counts {
        writeln!(orders, "{}: {}", order, count).unwrap();
    }
    write_file(&paths.data_orders, orders.as_bytes())?;

    let mut structures = String::new();
    for ((order, s), count) in &result.structure_counts {
        writeln!(structures, "({}, {}): {}", order, python_tuple(s.lengths()), count).unwrap();
    }
    write_file(&paths.data_structures, structures.as_bytes())?;

    write_complete_list(result.kind, result.n, result.t, &paths.complete_list, options)?;
    Ok(paths)
}

/// Python tuple syntax: `(1, 1, 5)`, `(0,)`.
pub fn python_tuple(items: &[usize]) -> String {
    match items {
        [single] => format!("({},)", single),
        _ => {
            let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(", "))
        }
    }
}

fn write_complete_list(
    kind: TransformKind,
    n: usize,
    t: usize,
    path: &Path,
    options: &CensusOptions,
) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
    let mut out = BufWriter::new(file);
    let total = factorial(n - 1);
    let batch = CHUNK * 64;
    let mut start = 0;
    while start < total {
        let count = batch.min(total - start);
        let texts = run_range(start, count, options.threads, |s, c| {
            let mut kernel = Kernel::new(kind, n, t);
            let mut series = unrank(n, s);
            let mut text = String::new();
            for i in 0..c {
                if i > 0 {
                    next_suffix(&mut series);
                }
                let order = kernel
                    .lengths(&series)
                    .iter()
                    .fold(1u64, |acc, &l| lcm(acc, l as u64));
                writeln!(text, "{} --> {}", python_tuple(&series), order).unwrap();
            }
            text
        })?;
        for text in texts {
            out.write_all(text.as_bytes()).map_err(|e| io_error(path, e))?;
        }
        start += count;
    }
    out.flush().map_err(|e| io_error(path, e))
}

/// Whether transposed copies of each canonical series keep its structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranspositionCheck {
    /// Inverting each copy about its own first note, as the numbering
    /// convention prescribes.
    pub about_first_note: bool,
    /// Inverting every copy with the same map `x -> t - x`.
    pub fixed_axis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: TransformKind,
    pub n: usize,
    pub t: usize,
    /// In the catalog but never observed.
    pub missing: Vec<CycleStructure>,
    /// Observed but absent from the catalog.
    pub extra: Vec<CycleStructure>,
    pub total_series: u64,
    pub transposition: Option<TranspositionCheck>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compares the census structure set with the catalog.
pub fn verify_catalog(
    kind: TransformKind,
    n: Modulus,
    t: usize,
    options: &CensusOptions,
) -> Result<VerifyReport> {
    let result = census(kind, n, t, options)?;
    compare(&result, options)
}

/// Like [`verify_catalog`] for a census that has already been run.
pub fn compare(result: &CensusResult, options: &CensusOptions) -> Result<VerifyReport> {
    let n = Modulus::new(result.n)?;
    let observed = result.structures();
    let expected: BTreeSet<CycleStructure> = catalog(result.kind, n, result.t)?
        .into_iter()
        .map(|e| e.structure)
        .collect();
    let transposition = if result.n <= TRANSPOSITION_CHECK_MAX_N {
        Some(transposition_check(result.kind, n, result.t, options)?)
    } else {
        None
    };
    Ok(VerifyReport {
        kind: result.kind,
        n: result.n,
        t: result.t,
        missing: expected.difference(&observed).cloned().collect(),
        extra: observed.difference(&expected).cloned().collect(),
        total_series: result.total_series,
        transposition,
    })
}

/// Checks every transposed copy of every canonical series under both
/// inversion conventions.
pub fn transposition_check(
    kind: TransformKind,
    n: Modulus,
    t: usize,
    options: &CensusOptions,
) -> Result<TranspositionCheck> {
    check(n, t, options)?;
    let nn = n.get();
    let parts = run_chunks(nn, options.threads, |start, count| {
        let mut series = unrank(nn, start);
        let mut about_first = true;
        let mut fixed = true;
        let mut base = Kernel::new(kind, nn, t);
        let mut copy = vec![0; nn];
        for i in 0..count {
            if i > 0 {
                next_suffix(&mut series);
            }
            let reference = base.lengths(&series).to_vec();
            for c in 1..nn {
                copy.iter_mut()
                    .zip(&series)
                    .for_each(|(y, &x)| *y = (x + c) % nn);
                // about the first note c, inversion is x -> 2c + t - x
                let shifted_t = if kind.inverts() { (t + 2 * c) % nn } else { t };
                let mut k = Kernel::new(kind, nn, shifted_t);
                about_first &= k.lengths(&copy) == reference.as_slice();
                let mut k = Kernel::new(kind, nn, t);
                fixed &= k.lengths(&copy) == reference.as_slice();
            }
        }
        (about_first, fixed)
    })?;
    Ok(TranspositionCheck {
        about_first_note: parts.iter().all(|p| p.0),
        fixed_axis: parts.iter().all(|p| p.1),
    })
}

fn check(n: Modulus, t: usize, options: &CensusOptions) -> Result<()> {
    n.check_transposition(t)?;
    if n.get() > options.max_n {
        return Err(Error::CeilingExceeded {
            n: n.get(),
            max: options.max_n,
        });
    }
    Ok(())
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| io_error(path, e))
}

/// Computes proliferating permutations of raw note slices without
/// allocating per series. Inversion is the fixed map `x -> t - x`, which
/// is exact for series starting at 0.
struct Kernel {
    kind: TransformKind,
    n: usize,
    t: usize,
    image: Vec<usize>,
    scratch: Vec<bool>,
    lengths: Vec<usize>,
}

impl Kernel {
    fn new(kind: TransformKind, n: usize, t: usize) -> Self {
        Kernel {
            kind,
            n,
            t: t % n,
            image: vec![0; n],
            scratch: vec![false; n],
            lengths: Vec::with_capacity(n),
        }
    }

    fn lengths(&mut self, s: &[usize]) -> &[usize] {
        let n = self.n;
        for i in 0..n {
            let j = if self.kind.retrogrades() { n - 1 - i } else { i };
            let x = s[j];
            self.image[s[i]] = if self.kind.inverts() {
                (self.t + n - x) % n
            } else {
                (x + self.t) % n
            };
        }
        self.lengths = structure_of_image(&self.image, &mut self.scratch);
        &self.lengths
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// The series starting with 0 whose suffix is the `rank`-th permutation of
/// `1..n` in lexicographic order.
pub(crate) fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..n).collect();
    let mut out = Vec::with_capacity(n);
    out.push(0);
    for k in (0..pool.len()).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Advances the suffix after the leading 0 to the next permutation in
/// lexicographic order. Returns false after the last one.
pub(crate) fn next_suffix(s: &mut [usize]) -> bool {
    let v = &mut s[1..];
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn run_chunks<T, F>(n: usize, threads: Option<usize>, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    run_range(0, factorial(n - 1), threads, work)
}

// splits ranks start..start+count into contiguous chunks and returns the
// per-chunk results in rank order
fn run_range<T, F>(start: u64, count: u64, threads: Option<usize>, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let ranges: Vec<(u64, u64)> = (0..count.div_ceil(CHUNK))
        .map(|i| {
            let s = i * CHUNK;
            (start + s, CHUNK.min(count - s))
        })
        .collect();
    let go = || -> Vec<T> { ranges.par_iter().map(|&(s, c)| work(s, c)).collect() };
    match threads {
        None => Ok(go()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?;
            Ok(pool.install(go))
        }
    }
}
