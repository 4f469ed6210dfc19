//! Packed binary sequences.
//!
//! A [`BinarySequence`] stores up to 63 symbols in one machine word. Symbol
//! `i` lives in bit `i` of the word (low-to-high), so the textual form
//! `"0010100"` has its leftmost character at bit 0. Bits at or above `len`
//! are always zero.
//!
//! Ordering is a separate concern from storage: whenever sequences are
//! compared "as integers" (table sort order, canonical forms, tie-breaking
//! between maximizers) the value used is the binary numeral as written, with
//! symbol 0 as the most significant digit. See [`BinarySequence::numeral`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest sequence a single word can hold.
pub const MAX_LEN: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BinarySequence {
    bits: u64,
    len: u8,
}

#[inline]
fn mask(len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        u64::MAX >> (64 - len)
    }
}

impl BinarySequence {
    /// The empty sequence, the output of a channel that deleted every bit.
    pub const EMPTY: BinarySequence = BinarySequence { bits: 0, len: 0 };

    /// Builds a sequence from its packed word. Fails if `len` exceeds
    /// [`MAX_LEN`] or any bit at or above `len` is set.
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::CapExceeded {
                what: "sequence length",
                value: len,
                max: MAX_LEN,
            });
        }
        if bits & !mask(len) != 0 {
            return Err(Error::Invalid(format!(
                "bits {bits:#x} set beyond length {len}"
            )));
        }
        Ok(Self::from_raw(bits, len))
    }

    /// Unchecked constructor for callers that already hold a canonical word.
    #[inline]
    pub(crate) fn from_raw(bits: u64, len: usize) -> Self {
        debug_assert!(len <= MAX_LEN && bits & !mask(len) == 0);
        BinarySequence {
            bits,
            len: len as u8,
        }
    }

    /// All-zero sequence of length `len`.
    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    /// All-one sequence of length `len`.
    pub fn ones(len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Self::new(0, len);
        }
        Ok(Self::from_raw(mask(len), len))
    }

    /// The alternating sequence `0101...` of length `len`.
    pub fn alternating(len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Self::new(0, len);
        }
        Ok(Self::from_raw(0xAAAA_AAAA_AAAA_AAAA & mask(len), len))
    }

    /// Builds a sequence from `(symbol, run length)` pairs.
    pub fn from_runs(runs: &[(bool, usize)]) -> Result<Self> {
        let total: usize = runs.iter().map(|&(_, l)| l).sum();
        if total > MAX_LEN {
            return Err(Error::CapExceeded {
                what: "sequence length",
                value: total,
                max: MAX_LEN,
            });
        }
        let mut bits = 0u64;
        let mut pos = 0;
        for &(symbol, run) in runs {
            if symbol {
                bits |= mask(run) << pos;
            }
            pos += run;
        }
        Ok(Self::from_raw(bits, total))
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at position `i`. Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len(), "index {i} out of range for length {}", self.len);
        (self.bits >> i) & 1 == 1
    }

    /// Value of the sequence read as a binary numeral, leftmost symbol most
    /// significant. `"0011"` is 3 and `"1100"` is 12.
    #[inline]
    pub fn numeral(&self) -> u64 {
        self.reverse().bits
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| (self.bits >> i) & 1 == 1)
    }

    /// Every bit flipped.
    pub fn complement(&self) -> Self {
        Self::from_raw(!self.bits & mask(self.len()), self.len())
    }

    /// Symbol order reversed.
    pub fn reverse(&self) -> Self {
        if self.len == 0 {
            return *self;
        }
        Self::from_raw(self.bits.reverse_bits() >> (64 - self.len()), self.len())
    }

    /// The four images of `self` under complement and reversal, in the order
    /// identity, complement, reverse, complement-of-reverse.
    pub fn orbit(&self) -> [BinarySequence; 4] {
        let r = self.reverse();
        [*self, self.complement(), r, r.complement()]
    }

    /// Smallest member (by numeral) of the complement/reverse orbit.
    pub fn canonical_form(&self) -> Self {
        self.orbit().into_iter().min_by_key(|s| s.numeral()).unwrap()
    }

    /// Maximal runs as `(symbol, length)` pairs, left to right.
    pub fn runs(&self) -> Vec<(bool, usize)> {
        let mut out: Vec<(bool, usize)> = Vec::new();
        for b in self.iter() {
            match out.last_mut() {
                Some((s, l)) if *s == b => *l += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    pub fn run_length_profile(&self) -> RunLengthProfile {
        let mut counts = BTreeMap::new();
        for (_, l) in self.runs() {
            *counts.entry(l).or_insert(0) += 1;
        }
        RunLengthProfile {
            counts,
            total_len: self.len(),
        }
    }

    /// Every sequence of length `len`, in increasing numeral order.
    pub fn all_of_length(len: usize) -> Result<impl Iterator<Item = BinarySequence>> {
        if len > MAX_LEN - 1 {
            return Err(Error::CapExceeded {
                what: "enumeration length",
                value: len,
                max: MAX_LEN - 1,
            });
        }
        Ok((0..(1u64 << len)).map(move |v| BinarySequence::from_numeral(v, len)))
    }

    /// Inverse of [`numeral`](Self::numeral). `value` must fit in `len` bits.
    pub fn from_numeral(value: u64, len: usize) -> Self {
        let s = Self::from_raw(value, len);
        s.reverse()
    }
}

impl Ord for BinarySequence {
    /// Shorter sequences first; equal lengths compare by numeral, which is
    /// the same as lexicographic order of the text form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.numeral().cmp(&other.numeral()))
    }
}

impl PartialOrd for BinarySequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence(\"{self}\")")
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_LEN {
            return Err(Error::CapExceeded {
                what: "sequence length",
                value: s.len(),
                max: MAX_LEN,
            });
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(s.to_string())),
            }
        }
        Ok(Self::from_raw(bits, s.len()))
    }
}

/// Multiset of maximal-run lengths: `counts[l]` is the number of runs of
/// length exactly `l`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunLengthProfile {
    pub counts: BTreeMap<usize, usize>,
    pub total_len: usize,
}

impl RunLengthProfile {
    /// Number of runs of length `l`.
    pub fn count(&self, l: usize) -> usize {
        self.counts.get(&l).copied().unwrap_or(0)
    }

    /// Total number of runs.
    pub fn num_runs(&self) -> usize {
        self.counts.values().sum()
    }

    /// `Σ l · R(l)`, which always equals `total_len`.
    pub fn weighted_sum(&self) -> usize {
        self.counts.iter().map(|(l, r)| l * r).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&l, &r)| (l, r))
    }
}
