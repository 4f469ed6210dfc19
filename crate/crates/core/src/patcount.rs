//! Counting deletion patterns.
//!
//! `#(x, y)` is the number of masks over the positions of `x` that delete
//! exactly `len(x) - len(y)` symbols and leave `y` behind. Equivalently it is
//! the number of embeddings of `y` as a subsequence of `x`. The fast path is
//! a rolling-row dynamic program over prefix pairs; the oracle enumerates
//! every set of kept positions directly and shares no code with it.

use crate::bitseq::{BinarySequence, MAX_LEN};
use crate::error::{check_probability, Error, Result};

/// Largest input length accepted by the brute-force oracle.
pub const ORACLE_MAX_LEN: usize = 24;

/// Exact number of deletion patterns taking some `x` to some `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PatternCount(pub u64);

impl PatternCount {
    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for PatternCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn check_lengths(x: BinarySequence, y: BinarySequence) -> Result<()> {
    if y.len() > x.len() {
        Err(Error::LengthViolation {
            input: x.len(),
            output: y.len(),
        })
    } else {
        Ok(())
    }
}

/// Rolling dynamic-programming row for a fixed target `y`.
///
/// `row[j]` holds the number of embeddings of the first `j` symbols of `y`
/// into the symbols pushed so far. Pushing one input symbol costs `O(len(y))`.
/// The search in [`crate::mdm`] keeps one of these per depth of its tree.
#[derive(Clone, Debug)]
pub struct EmbeddingRow {
    y: u64,
    m: usize,
    pushed: usize,
    row: [u64; MAX_LEN + 1],
}

impl EmbeddingRow {
    pub fn new(y: BinarySequence) -> Self {
        let mut row = [0u64; MAX_LEN + 1];
        row[0] = 1;
        EmbeddingRow {
            y: y.bits(),
            m: y.len(),
            pushed: 0,
            row,
        }
    }

    /// Appends one input symbol.
    #[inline]
    pub fn push(&mut self, bit: bool) {
        let b = bit as u64;
        let top = self.m.min(self.pushed + 1);
        for j in (1..=top).rev() {
            if (self.y >> (j - 1)) & 1 == b {
                self.row[j] += self.row[j - 1];
            }
        }
        self.pushed += 1;
    }

    /// Number of input symbols pushed so far.
    #[inline]
    pub fn pushed(&self) -> usize {
        self.pushed
    }

    /// Embeddings of the whole of `y`.
    #[inline]
    pub fn full(&self) -> u64 {
        self.row[self.m]
    }

    /// The row itself, indexed by matched prefix length `0..=len(y)`.
    #[inline]
    pub fn row(&self) -> &[u64] {
        &self.row[..=self.m]
    }
}

#[inline]
pub(crate) fn count_raw(x: BinarySequence, y: BinarySequence) -> u64 {
    let mut row = EmbeddingRow::new(y);
    for b in x.iter() {
        row.push(b);
    }
    row.full()
}

/// `#(x, y)` by dynamic programming in `O(len(x) · len(y))`.
pub fn count_deletion_patterns(x: BinarySequence, y: BinarySequence) -> Result<PatternCount> {
    check_lengths(x, y)?;
    Ok(PatternCount(count_raw(x, y)))
}

/// `#(x, y)` by enumerating every `len(y)`-subset of kept positions of `x`.
///
/// Cost is `C(len(x), len(y))` subsets, so inputs are capped at
/// [`ORACLE_MAX_LEN`] symbols.
pub fn count_deletion_patterns_oracle(
    x: BinarySequence,
    y: BinarySequence,
) -> Result<PatternCount> {
    check_lengths(x, y)?;
    let n = x.len();
    let m = y.len();
    if n > ORACLE_MAX_LEN {
        return Err(Error::CapExceeded {
            what: "oracle input length",
            value: n,
            max: ORACLE_MAX_LEN,
        });
    }
    if m == 0 {
        return Ok(PatternCount(1));
    }
    let xs: Vec<bool> = x.iter().collect();
    let ys: Vec<bool> = y.iter().collect();
    let limit = 1u64 << n;
    let mut kept: u64 = (1u64 << m) - 1;
    let mut total = 0u64;
    while kept < limit {
        let mut rest = kept;
        let mut k = 0;
        let mut ok = true;
        while rest != 0 {
            let pos = rest.trailing_zeros() as usize;
            if xs[pos] != ys[k] {
                ok = false;
                break;
            }
            k += 1;
            rest &= rest - 1;
        }
        if ok {
            total += 1;
        }
        // next subset of the same size (Gosper)
        let c = kept & kept.wrapping_neg();
        let r = kept + c;
        kept = (((r ^ kept) >> 2) / c) | r;
    }
    Ok(PatternCount(total))
}

/// `W(y | x) = #(x, y) · (1 - d)^len(y) · d^(len(x) - len(y))` for the deletion
/// channel with deletion probability `d`.
pub fn transition_probability(x: BinarySequence, y: BinarySequence, d: f64) -> Result<f64> {
    check_probability("deletion probability", d)?;
    let count = count_deletion_patterns(x, y)?;
    Ok(pattern_weight(x.len(), y.len(), d) * count.0 as f64)
}

/// Probability of one particular deletion pattern of weight `n - m`.
#[inline]
pub fn pattern_weight(n: usize, m: usize, d: f64) -> f64 {
    (1.0 - d).powi(m as i32) * d.powi((n - m) as i32)
}
