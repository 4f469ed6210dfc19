//! Maximum deletion matching.
//!
//! For a target `y` and input length `n`, find the `x ∈ {0,1}^n` with the most
//! deletion patterns onto `y`. The search walks the binary tree of input
//! prefixes depth-first (zero branch first, so leaves arrive in increasing
//! numeral order) and keeps one [`EmbeddingRow`] per level. A subtree is cut
//! when even the most generous completion of its row cannot reach the
//! incumbent: with `r` symbols left, a row entry for a matched prefix of
//! length `j` can grow into at most `C(r, m - j)` full embeddings.
//!
//! Alongside the exact maximum each result carries a duplication estimate:
//! the sequence that repeats every symbol of `y` `n / m` times when `m | n`,
//! or one of three stand-ins when it does not.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::bitseq::{BinarySequence, MAX_LEN};
use crate::combin::{binomial, ln_binomial_real, BinomialTable};
use crate::error::{Error, Result};
use crate::patcount::{count_raw, EmbeddingRow, PatternCount};

/// Largest input length the exhaustive search accepts.
pub const MDM_MAX_N: usize = 24;

/// How to build the duplication stand-in when `len(y)` does not divide `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Approach {
    /// Duplicate `⌊n/m⌋` times, then hand the leftover symbols to the
    /// trailing runs in proportion to their lengths.
    AssignToLast,
    /// Duplicate `⌊n/m⌋` times, then top up the longest runs first.
    #[default]
    AssignByLength,
    /// Replace each binomial of the duplication product by its gamma-function
    /// extension at the real ratio `n / m`.
    GammaFunction,
}

impl Approach {
    pub const ALL: [Approach; 3] = [
        Approach::AssignToLast,
        Approach::AssignByLength,
        Approach::GammaFunction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Approach::AssignToLast => "assign-to-last",
            Approach::AssignByLength => "assign-by-length",
            Approach::GammaFunction => "gamma",
        }
    }
}

impl FromStr for Approach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assign-to-last" | "last" => Ok(Approach::AssignToLast),
            "assign-by-length" | "length" => Ok(Approach::AssignByLength),
            "gamma" => Ok(Approach::GammaFunction),
            _ => Err(Error::Invalid(format!("unknown approach {s:?}"))),
        }
    }
}

/// Output of [`approximate_dup_sequence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Approximation {
    Sequence(BinarySequence),
    Count(f64),
}

/// Duplication estimate attached to an [`MdmResult`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DupEstimate {
    /// A concrete candidate input and its exact pattern count.
    Sequence {
        x_dup: BinarySequence,
        count: PatternCount,
    },
    /// A real-valued count with no witness sequence.
    Gamma(f64),
}

impl DupEstimate {
    pub fn count_f64(&self) -> f64 {
        match *self {
            DupEstimate::Sequence { count, .. } => count.0 as f64,
            DupEstimate::Gamma(v) => v,
        }
    }

    pub fn x_dup(&self) -> Option<BinarySequence> {
        match *self {
            DupEstimate::Sequence { x_dup, .. } => Some(x_dup),
            DupEstimate::Gamma(_) => None,
        }
    }

    pub fn exact_count(&self) -> Option<PatternCount> {
        match *self {
            DupEstimate::Sequence { count, .. } => Some(count),
            DupEstimate::Gamma(_) => None,
        }
    }
}

/// One solved MDM instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdmResult {
    pub y: BinarySequence,
    pub n: usize,
    pub x_star: BinarySequence,
    pub max_count: PatternCount,
    pub dup: DupEstimate,
    pub ratio: f64,
}

impl MdmResult {
    fn assemble(y: BinarySequence, n: usize, x_star: BinarySequence, max: u64, dup: DupEstimate) -> Self {
        MdmResult {
            y,
            n,
            x_star,
            max_count: PatternCount(max),
            dup,
            ratio: dup.count_f64() / max as f64,
        }
    }
}

// ---------------------------------------------------------------------------
// duplication
// ---------------------------------------------------------------------------

/// `Π_l C(l·F, l)^R(l)` over the run-length profile of `y`.
pub fn dup_count_formula(y: BinarySequence, factor: usize) -> Result<PatternCount> {
    if factor == 0 {
        return Err(Error::Invalid("duplication factor must be at least 1".into()));
    }
    let mut acc: u64 = 1;
    for (l, r) in y.run_length_profile().iter() {
        let c = binomial((l * factor) as u64, l as u64).ok_or(Error::Overflow("duplication count"))?;
        for _ in 0..r {
            acc = acc.checked_mul(c).ok_or(Error::Overflow("duplication count"))?;
        }
    }
    Ok(PatternCount(acc))
}

/// Each symbol of `y` repeated `factor` times.
pub fn build_dup_sequence(y: BinarySequence, factor: usize) -> Result<BinarySequence> {
    if factor == 0 {
        return Err(Error::Invalid("duplication factor must be at least 1".into()));
    }
    let total = factor * y.len();
    if total > MAX_LEN {
        return Err(Error::CapExceeded {
            what: "duplicated length",
            value: total,
            max: MAX_LEN,
        });
    }
    let runs: Vec<(bool, usize)> = y.runs().into_iter().map(|(b, l)| (b, l * factor)).collect();
    BinarySequence::from_runs(&runs)
}

/// `Π_l [Γ(lF+1) / (Γ(l+1) Γ(lF-l+1))]^R(l)` with real `F = n / m`.
pub fn gamma_dup_count(y: BinarySequence, n: usize) -> Result<f64> {
    let m = y.len();
    if m == 0 {
        return Ok(1.0);
    }
    if m > n {
        return Err(Error::LengthViolation { input: n, output: m });
    }
    let f = n as f64 / m as f64;
    let ln: f64 = y
        .run_length_profile()
        .iter()
        .map(|(l, r)| r as f64 * ln_binomial_real(l as f64 * f, l as f64))
        .sum();
    Ok(ln.exp())
}

/// Extra symbols given to each run under [`Approach::AssignToLast`].
///
/// The shortest suffix of runs whose combined length covers the leftover is
/// chosen, and the leftover is split across it in proportion to run length
/// (largest remainder, later run first on ties).
fn extras_to_last(lengths: &[usize], leftover: usize) -> Vec<usize> {
    let k = lengths.len();
    let mut extras = vec![0usize; k];
    if leftover == 0 {
        return extras;
    }
    let mut start = k;
    let mut covered = 0;
    while start > 0 && covered < leftover {
        start -= 1;
        covered += lengths[start];
    }
    let mut assigned = 0;
    let mut remainders: Vec<(usize, usize)> = Vec::new();
    for i in start..k {
        let share = leftover * lengths[i];
        extras[i] = share / covered;
        assigned += extras[i];
        remainders.push((share % covered, i));
    }
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    for &(_, i) in remainders.iter().take(leftover - assigned) {
        extras[i] += 1;
    }
    extras
}

/// Extra symbols given to each run under [`Approach::AssignByLength`].
///
/// Runs are visited longest first (earlier run first on ties); each is topped
/// up until its duplicated length reaches `l · ⌈n/m⌉`.
fn extras_by_length(lengths: &[usize], leftover: usize, factor: usize, ceil_factor: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by(|&a, &b| lengths[b].cmp(&lengths[a]).then(a.cmp(&b)));
    let mut extras = vec![0usize; lengths.len()];
    let mut left = leftover;
    for i in order {
        if left == 0 {
            break;
        }
        let room = lengths[i] * (ceil_factor - factor);
        let take = room.min(left);
        extras[i] = take;
        left -= take;
    }
    debug_assert_eq!(left, 0);
    extras
}

/// Length-`n` stand-in for the duplicated sequence when `len(y)` need not
/// divide `n`, or a gamma-function count estimate.
pub fn approximate_dup_sequence(y: BinarySequence, n: usize, approach: Approach) -> Result<Approximation> {
    let m = y.len();
    if m > n {
        return Err(Error::LengthViolation { input: n, output: m });
    }
    if n > MAX_LEN {
        return Err(Error::CapExceeded {
            what: "input length",
            value: n,
            max: MAX_LEN,
        });
    }
    if approach == Approach::GammaFunction {
        return gamma_dup_count(y, n).map(Approximation::Count);
    }
    if m == 0 {
        return Ok(Approximation::Sequence(BinarySequence::zeros(n)?));
    }
    let factor = n / m;
    let leftover = n - factor * m;
    let runs = y.runs();
    let lengths: Vec<usize> = runs.iter().map(|&(_, l)| l).collect();
    let extras = match approach {
        Approach::AssignToLast => extras_to_last(&lengths, leftover),
        Approach::AssignByLength => extras_by_length(&lengths, leftover, factor, n.div_ceil(m)),
        Approach::GammaFunction => unreachable!(),
    };
    let stretched: Vec<(bool, usize)> = runs
        .iter()
        .zip(&extras)
        .map(|(&(b, l), &e)| (b, l * factor + e))
        .collect();
    BinarySequence::from_runs(&stretched).map(Approximation::Sequence)
}

/// Duplication estimate for `y` at input length `n`: exact duplication when
/// `len(y)` divides `n`, otherwise the configured approach.
pub fn dup_estimate(y: BinarySequence, n: usize, approach: Approach) -> Result<DupEstimate> {
    let m = y.len();
    if m > n {
        return Err(Error::LengthViolation { input: n, output: m });
    }
    if m == 0 {
        return Ok(DupEstimate::Sequence {
            x_dup: BinarySequence::zeros(n)?,
            count: PatternCount(1),
        });
    }
    if n.is_multiple_of(m) {
        let x_dup = build_dup_sequence(y, n / m)?;
        let count = dup_count_formula(y, n / m)?;
        return Ok(DupEstimate::Sequence { x_dup, count });
    }
    match approximate_dup_sequence(y, n, approach)? {
        Approximation::Sequence(x_dup) => Ok(DupEstimate::Sequence {
            x_dup,
            count: PatternCount(count_raw(x_dup, y)),
        }),
        Approximation::Count(v) => Ok(DupEstimate::Gamma(v)),
    }
}

// ---------------------------------------------------------------------------
// exhaustive search
// ---------------------------------------------------------------------------

struct Search<'a> {
    n: usize,
    m: usize,
    binom: &'a BinomialTable,
    best: u64,
    best_x: u64,
    have_best: bool,
}

impl Search<'_> {
    /// Largest final count reachable from `row` with `left` symbols to go.
    #[inline]
    fn completion_bound(&self, row: &EmbeddingRow, left: usize) -> u64 {
        let lo = self.m.saturating_sub(left);
        row.row()[lo..]
            .iter()
            .enumerate()
            .map(|(k, &c)| c.saturating_mul(self.binom.get(left, self.m - (lo + k))))
            .fold(0u64, |a, b| a.saturating_add(b))
    }

    fn descend(&mut self, row: &EmbeddingRow, depth: usize, prefix: u64) {
        if depth == self.n {
            let c = row.full();
            if !self.have_best || c > self.best || (c == self.best && prefix < self.best_x) {
                self.best = c;
                self.best_x = prefix;
                self.have_best = true;
            }
            return;
        }
        if self.have_best && self.completion_bound(row, self.n - depth) < self.best {
            return;
        }
        for bit in [false, true] {
            let mut child = row.clone();
            child.push(bit);
            self.descend(&child, depth + 1, (prefix << 1) | bit as u64);
        }
    }
}

fn check_search_size(y: BinarySequence, n: usize) -> Result<()> {
    if y.len() > n {
        return Err(Error::LengthViolation {
            input: n,
            output: y.len(),
        });
    }
    if n > MDM_MAX_N {
        return Err(Error::CapExceeded {
            what: "MDM input length",
            value: n,
            max: MDM_MAX_N,
        });
    }
    Ok(())
}

/// Exact maximizer of `#(x, y)` over `x ∈ {0,1}^n`, smallest numeral on ties.
fn search_max(y: BinarySequence, n: usize, binom: &BinomialTable, seed: Option<BinarySequence>) -> (BinarySequence, u64) {
    let mut s = Search {
        n,
        m: y.len(),
        binom,
        best: 0,
        best_x: 0,
        have_best: false,
    };
    if let Some(x0) = seed {
        s.best = count_raw(x0, y);
        s.best_x = x0.numeral();
        s.have_best = true;
    }
    s.descend(&EmbeddingRow::new(y), 0, 0);
    (BinarySequence::from_numeral(s.best_x, n), s.best)
}

/// Solves the MDM problem for `y` at input length `n` by exhaustive search.
///
/// The maximizer returned is the one with the smallest numeral. The
/// duplication fields use exact duplication when `len(y)` divides `n` and
/// `approach` otherwise.
pub fn mdm_solve(y: BinarySequence, n: usize, approach: Approach) -> Result<MdmResult> {
    check_search_size(y, n)?;
    let binom = BinomialTable::new(n);
    solve_with(y, n, approach, &binom)
}

fn solve_with(y: BinarySequence, n: usize, approach: Approach, binom: &BinomialTable) -> Result<MdmResult> {
    let dup = dup_estimate(y, n, approach)?;
    let (x_star, max) = search_max(y, n, binom, dup.x_dup());
    Ok(MdmResult::assemble(y, n, x_star, max, dup))
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

/// Maps a maximizer for `from` onto the orbit partner `to`.
fn transport(from: BinarySequence, to: BinarySequence, x: BinarySequence) -> BinarySequence {
    let [id, c, r, rc] = from.orbit();
    if to == id {
        x
    } else if to == c {
        x.complement()
    } else if to == r {
        x.reverse()
    } else {
        debug_assert_eq!(to, rc);
        x.reverse().complement()
    }
}

/// A canonical class representative and the number of `y`s it stands for.
#[derive(Debug, Clone, PartialEq)]
pub struct MdmRow {
    pub result: MdmResult,
    pub multiplicity: usize,
}

/// MDM results for every `y ∈ {0,1}^m` at input length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MdmTable {
    pub n: usize,
    pub m: usize,
    pub approach: Approach,
    /// Sorted by `y` numeral. Multiplicities are all 1 unless the table was
    /// built over canonical classes.
    pub rows: Vec<MdmRow>,
}

impl MdmTable {
    /// One result per `y ∈ {0,1}^m`, sorted by numeral.
    ///
    /// Maximizers of non-canonical `y`s are the canonical maximizer carried
    /// through the same symmetry, so they are maximizers but not necessarily
    /// the smallest-numeral ones. Duplication fields are recomputed per `y`.
    pub fn expanded(&self) -> Result<Vec<MdmResult>> {
        if self.rows.iter().all(|r| r.multiplicity == 1) {
            return Ok(self.rows.iter().map(|r| r.result).collect());
        }
        let mut out = Vec::with_capacity(1 << self.m);
        for row in &self.rows {
            let rep = row.result.y;
            let mut members: Vec<BinarySequence> = rep.orbit().to_vec();
            members.sort();
            members.dedup();
            for y in members {
                let x_star = transport(rep, y, row.result.x_star);
                let dup = dup_estimate(y, self.n, self.approach)?;
                out.push(MdmResult::assemble(y, self.n, x_star, row.result.max_count.0, dup));
            }
        }
        out.sort_by_key(|a| a.y);
        Ok(out)
    }

    /// `Σ_y max_x #(x, y)` over all of `{0,1}^m`.
    pub fn sum_max_counts(&self) -> u128 {
        self.rows
            .iter()
            .map(|r| r.result.max_count.0 as u128 * r.multiplicity as u128)
            .sum()
    }

    /// Smallest duplication ratio, and the smallest-numeral `y` attaining it.
    pub fn min_ratio(&self) -> Result<(BinarySequence, f64)> {
        let rows = self.expanded()?;
        let best = rows
            .iter()
            .min_by(|a, b| a.ratio.total_cmp(&b.ratio).then(a.y.cmp(&b.y)))
            .ok_or_else(|| Error::Invalid("empty table".into()))?;
        Ok((best.y, best.ratio))
    }
}

fn check_table_size(n: usize, m: usize) -> Result<()> {
    if m > n {
        return Err(Error::LengthViolation { input: n, output: m });
    }
    if n > MDM_MAX_N {
        return Err(Error::CapExceeded {
            what: "MDM input length",
            value: n,
            max: MDM_MAX_N,
        });
    }
    Ok(())
}

fn targets(m: usize, use_canonical: bool) -> Result<Vec<(BinarySequence, usize)>> {
    let all = BinarySequence::all_of_length(m)?;
    if !use_canonical {
        return Ok(all.map(|y| (y, 1)).collect());
    }
    let mut classes: BTreeMap<BinarySequence, usize> = BTreeMap::new();
    for y in all {
        *classes.entry(y.canonical_form()).or_insert(0) += 1;
    }
    Ok(classes.into_iter().collect())
}

/// Solves every `y ∈ {0,1}^m` (or every canonical class) at input length `n`.
/// Classes are distributed over the current rayon pool.
pub fn mdm_table(n: usize, m: usize, use_canonical: bool, approach: Approach) -> Result<MdmTable> {
    check_table_size(n, m)?;
    let binom = BinomialTable::new(n);
    let rows = targets(m, use_canonical)?
        .into_par_iter()
        .map(|(y, multiplicity)| {
            solve_with(y, n, approach, &binom).map(|result| MdmRow { result, multiplicity })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MdmTable { n, m, approach, rows })
}

/// Canonical-class table that records each finished class in a plain-text
/// checkpoint file and skips classes already present there.
///
/// The file starts with a `# n=<n> m=<m>` header followed by one
/// `y,x_star,max_count` line per completed class. A header for a different
/// `(n, m)` is rejected.
pub fn mdm_table_checkpointed(n: usize, m: usize, approach: Approach, checkpoint: &Path) -> Result<MdmTable> {
    check_table_size(n, m)?;
    let header = format!("# n={n} m={m}");
    let io_err = |e: std::io::Error| Error::Io(format!("checkpoint {}: {e}", checkpoint.display()));

    let mut done: HashMap<BinarySequence, (BinarySequence, u64)> = HashMap::new();
    let fresh = !checkpoint.exists() || std::fs::metadata(checkpoint).map_err(io_err)?.len() == 0;
    if !fresh {
        let reader = BufReader::new(File::open(checkpoint).map_err(io_err)?);
        let mut lines = reader.lines();
        let first = lines.next().transpose().map_err(io_err)?.unwrap_or_default();
        if first.trim() != header {
            return Err(Error::Invalid(format!(
                "checkpoint header {first:?} does not match {header:?}"
            )));
        }
        for line in lines {
            let line = line.map_err(io_err)?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.trim().split(',').collect();
            // a torn last line from an interrupted write is ignored
            let [y, x, c] = parts[..] else { continue };
            let (Ok(y), Ok(x), Ok(c)) = (y.parse::<BinarySequence>(), x.parse::<BinarySequence>(), c.parse::<u64>()) else {
                continue;
            };
            if y.len() == m && x.len() == n {
                done.insert(y, (x, c));
            }
        }
    }

    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(checkpoint)
        .map_err(io_err)?;
    if fresh {
        writeln!(file, "{header}").map_err(io_err)?;
    } else if !std::fs::read(checkpoint).map_err(io_err)?.ends_with(b"\n") {
        writeln!(file).map_err(io_err)?;
    }
    let file = Mutex::new(file);
    let binom = BinomialTable::new(n);

    let rows = targets(m, true)?
        .into_par_iter()
        .map(|(y, multiplicity)| {
            let dup = dup_estimate(y, n, approach)?;
            let result = match done.get(&y) {
                Some(&(x_star, max)) => MdmResult::assemble(y, n, x_star, max, dup),
                None => {
                    let (x_star, max) = search_max(y, n, &binom, dup.x_dup());
                    let mut f = file.lock().expect("checkpoint lock poisoned");
                    writeln!(f, "{y},{x_star},{max}").map_err(io_err)?;
                    f.flush().map_err(io_err)?;
                    MdmResult::assemble(y, n, x_star, max, dup)
                }
            };
            Ok(MdmRow { result, multiplicity })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MdmTable { n, m, approach, rows })
}

// ---------------------------------------------------------------------------
// duplication-ratio hypotheses
// ---------------------------------------------------------------------------

/// Minimum of the duplication ratio over `y ∈ {0,1}^(n/F)`, with the
/// smallest-numeral minimizer.
pub fn min_duplication_ratio(n: usize, factor: usize) -> Result<(BinarySequence, f64)> {
    if factor == 0 || !n.is_multiple_of(factor) {
        return Err(Error::Invalid(format!(
            "input length {n} is not a multiple of the duplication factor {factor}"
        )));
    }
    mdm_table(n, n / factor, true, Approach::default())?.min_ratio()
}

/// Empirical check of the duplication-ratio conjectures at one `(n, F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub n: usize,
    pub factor: usize,
    /// Smallest-numeral `y` attaining the minimum ratio.
    pub minimizer: BinarySequence,
    pub gamma: f64,
    /// `(1/n) · log2 γ(n, F)`.
    pub log_gamma_per_symbol: f64,
    /// The alternating sequence (or its complement) attains the minimum.
    pub flip_attains_min: bool,
    /// The smallest minimizer is itself the alternating sequence.
    pub minimizer_is_alternating: bool,
    /// `F^(n/F) / C(n, n/F)`, a lower bound on `γ(n, F)`.
    pub stirling_lower_bound: f64,
    /// The lower bound holds for every `y`, checked in exact integers.
    pub stirling_holds: bool,
}

pub fn hypothesis_report(n: usize, factor: usize) -> Result<HypothesisReport> {
    if factor == 0 || !n.is_multiple_of(factor) {
        return Err(Error::Invalid(format!(
            "input length {n} is not a multiple of the duplication factor {factor}"
        )));
    }
    let m = n / factor;
    let table = mdm_table(n, m, true, Approach::default())?;
    let (minimizer, gamma) = table.min_ratio()?;
    let flip = BinarySequence::alternating(m)?;
    let flip_ratio = table
        .rows
        .iter()
        .find(|r| r.result.y == flip.canonical_form())
        .map(|r| r.result.ratio)
        .expect("alternating class present");
    let central = binomial(n as u64, m as u64).ok_or(Error::Overflow("C(n, n/F)"))?;
    let stirling_lower_bound = (factor as f64).powi(m as i32) / central as f64;
    // exact form of dup / max >= F^m / C(n, m) at every y
    let power = (factor as u128)
        .checked_pow(m as u32)
        .ok_or(Error::Overflow("F^(n/F)"))?;
    let mut stirling_holds = true;
    for row in table.expanded()? {
        let dup = row.dup.exact_count().ok_or(Error::Invalid("integer factor has exact counts".into()))?;
        let lhs = dup.0 as u128 * central as u128;
        let rhs = power
            .checked_mul(row.max_count.0 as u128)
            .ok_or(Error::Overflow("F^(n/F) * max"))?;
        stirling_holds &= lhs >= rhs;
    }
    Ok(HypothesisReport {
        n,
        factor,
        minimizer,
        gamma,
        log_gamma_per_symbol: gamma.log2() / n as f64,
        flip_attains_min: flip_ratio == gamma,
        minimizer_is_alternating: minimizer.canonical_form() == flip.canonical_form(),
        stirling_lower_bound,
        stirling_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patcount::count_deletion_patterns;

    fn s(t: &str) -> BinarySequence {
        t.parse().unwrap()
    }

    fn brute_max(y: BinarySequence, n: usize) -> (BinarySequence, u64) {
        let mut best = (BinarySequence::EMPTY, 0u64);
        let mut first = true;
        for x in BinarySequence::all_of_length(n).unwrap() {
            let c = count_deletion_patterns(x, y).unwrap().0;
            if first || c > best.1 {
                best = (x, c);
                first = false;
            }
        }
        best
    }

    #[test]
    fn search_matches_brute_force() {
        for n in 0..=9 {
            for m in 0..=n {
                for y in BinarySequence::all_of_length(m).unwrap() {
                    let r = mdm_solve(y, n, Approach::AssignByLength).unwrap();
                    let (bx, bc) = brute_max(y, n);
                    assert_eq!(r.max_count.0, bc, "y = {y}, n = {n}");
                    assert_eq!(r.x_star, bx, "tie-break y = {y}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn table_two_examples() {
        let r = mdm_solve(s("0101010"), 14, Approach::default()).unwrap();
        assert_eq!(r.max_count.0, 204);
        assert_eq!(r.x_star, s("00101010101010"));
        let r = mdm_solve(s("0000101"), 14, Approach::default()).unwrap();
        assert_eq!(r.max_count.0, 602);
        assert_eq!(r.x_star, s("00000000101011"));
        let r = mdm_solve(s("0000"), 8, Approach::default()).unwrap();
        assert_eq!(r.max_count.0, 70);
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn solve_errors() {
        assert!(matches!(
            mdm_solve(s("0101"), 3, Approach::default()),
            Err(Error::LengthViolation { .. })
        ));
        assert!(matches!(
            mdm_solve(s("0101"), 25, Approach::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn dup_formula_examples() {
        assert_eq!(dup_count_formula(s("0101010"), 2).unwrap().0, 128);
        assert_eq!(dup_count_formula(s("0000101"), 2).unwrap().0, 560);
        assert_eq!(dup_count_formula(s("0000"), 2).unwrap().0, 70);
        assert!(dup_count_formula(s("01"), 0).is_err());
        // C(60, 30)^2 overflows
        let long = BinarySequence::from_runs(&[(false, 30), (true, 30)]).unwrap();
        assert!(matches!(dup_count_formula(long, 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn dup_sequence_examples() {
        assert_eq!(build_dup_sequence(s("0101"), 2).unwrap(), s("00110011"));
        assert_eq!(build_dup_sequence(s("01"), 1).unwrap(), s("01"));
        assert_eq!(build_dup_sequence(s("0010101"), 2).unwrap(), s("00001100110011"));
        assert!(matches!(
            build_dup_sequence(BinarySequence::zeros(32).unwrap(), 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn formula_matches_dp_exhaustively() {
        for m in 1..=10usize {
            for factor in 1..=(20 / m) {
                for y in BinarySequence::all_of_length(m).unwrap() {
                    let x = build_dup_sequence(y, factor).unwrap();
                    assert_eq!(
                        dup_count_formula(y, factor).unwrap(),
                        count_deletion_patterns(x, y).unwrap(),
                        "y = {y}, F = {factor}"
                    );
                }
            }
        }
    }

    #[test]
    fn approximation_worked_examples() {
        let y = s("010001");
        assert_eq!(
            approximate_dup_sequence(y, 15, Approach::AssignByLength).unwrap(),
            Approximation::Sequence(s("001100000000011"))
        );
        // one extra symbol to the last run, two to the second-last
        assert_eq!(
            approximate_dup_sequence(y, 15, Approach::AssignToLast).unwrap(),
            Approximation::Sequence(s("001100000000111"))
        );
        assert_eq!(
            approximate_dup_sequence(s("0101"), 8, Approach::AssignToLast).unwrap(),
            Approximation::Sequence(s("00110011"))
        );
        assert_eq!(
            approximate_dup_sequence(s("0101"), 8, Approach::AssignByLength).unwrap(),
            Approximation::Sequence(s("00110011"))
        );
        assert!(approximate_dup_sequence(s("0101"), 3, Approach::AssignToLast).is_err());
    }

    #[test]
    fn gamma_approximation() {
        let Approximation::Count(v) = approximate_dup_sequence(s("01"), 5, Approach::GammaFunction).unwrap() else {
            panic!("expected a count");
        };
        // Γ(3.5) / (Γ(2) Γ(2.5)) = 2.5
        let g35 = 15.0 / 8.0 * std::f64::consts::PI.sqrt();
        let g25 = 3.0 / 4.0 * std::f64::consts::PI.sqrt();
        assert!((v - (g35 / g25).powi(2)).abs() < 1e-10);
        assert!((v - 6.25).abs() < 1e-10);
        // integer factor reproduces the exact product
        for y in BinarySequence::all_of_length(7).unwrap() {
            let exact = dup_count_formula(y, 2).unwrap().0 as f64;
            let g = gamma_dup_count(y, 14).unwrap();
            assert!((g - exact).abs() / exact < 1e-10, "y = {y}");
        }
    }

    #[test]
    fn approximations_have_length_n() {
        for n in 1..=16usize {
            for m in 1..=n {
                for y in BinarySequence::all_of_length(m).unwrap() {
                    for a in [Approach::AssignToLast, Approach::AssignByLength] {
                        let Approximation::Sequence(x) = approximate_dup_sequence(y, n, a).unwrap() else {
                            unreachable!()
                        };
                        assert_eq!(x.len(), n);
                        assert!(count_deletion_patterns(x, y).unwrap().0 >= 1, "{y} in {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn extras_rules() {
        assert_eq!(extras_to_last(&[1, 1, 3, 1], 3), vec![0, 0, 2, 1]);
        assert_eq!(extras_to_last(&[2, 2], 1), vec![0, 1]);
        assert_eq!(extras_to_last(&[1, 1, 1], 2), vec![0, 1, 1]);
        assert_eq!(extras_by_length(&[1, 1, 3, 1], 3, 2, 3), vec![0, 0, 3, 0]);
        assert_eq!(extras_by_length(&[1, 2, 1], 2, 1, 2), vec![0, 2, 0]);
        assert_eq!(extras_by_length(&[1, 1, 1], 2, 1, 2), vec![1, 1, 0]);
    }

    #[test]
    fn table_one() {
        let t = mdm_table(8, 4, false, Approach::default()).unwrap();
        assert_eq!(t.rows.len(), 16);
        assert!(t.rows.iter().all(|r| r.result.ratio == 1.0));
        let c = mdm_table(8, 4, true, Approach::default()).unwrap();
        assert_eq!(c.expanded().unwrap().iter().map(|r| r.max_count).collect::<Vec<_>>(),
                   t.rows.iter().map(|r| r.result.max_count).collect::<Vec<_>>());
        assert_eq!(c.sum_max_counts(), t.sum_max_counts());
    }

    #[test]
    fn canonical_expansion_gives_valid_maximizers() {
        let t = mdm_table(10, 5, true, Approach::AssignToLast).unwrap();
        let full = t.expanded().unwrap();
        assert_eq!(full.len(), 32);
        for r in full {
            assert_eq!(count_raw(r.x_star, r.y), r.max_count.0);
            assert_eq!(r.max_count.0, brute_max(r.y, 10).1);
        }
    }

    #[test]
    fn min_ratio_small() {
        let (_, ratio) = min_duplication_ratio(8, 2).unwrap();
        assert_eq!(ratio, 1.0);
        assert!(min_duplication_ratio(9, 2).is_err());
    }

    #[test]
    fn checkpoint_resume_matches_uninterrupted() {
        let dir = std::env::temp_dir().join(format!("mlcap-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.ckpt");
        let _ = std::fs::remove_file(&path);
        let full = mdm_table_checkpointed(10, 5, Approach::default(), &path).unwrap();
        // keep the header and the first three classes, plus a torn line
        let text = std::fs::read_to_string(&path).unwrap();
        let mut kept: Vec<&str> = text.lines().take(4).collect();
        kept.push("01010,0010");
        std::fs::write(&path, kept.join("\n")).unwrap();
        let resumed = mdm_table_checkpointed(10, 5, Approach::default(), &path).unwrap();
        assert_eq!(full, resumed);
        assert_eq!(full, mdm_table(10, 5, true, Approach::default()).unwrap());
        assert!(mdm_table_checkpointed(10, 4, Approach::default(), &path).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
