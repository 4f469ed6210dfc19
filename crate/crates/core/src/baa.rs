//! Blahut-Arimoto baseline for the deletion channel at block length `n`.
//!
//! Inputs are the `2^n` sequences of length `n` in numeral order. Outputs are
//! every sequence of length `0..=n`, the empty one included, grouped by
//! length and in numeral order within a length: column `2^L - 1 + v` holds the
//! length-`L` output with numeral `v`.
//!
//! Internally everything is in nats; reported information values are bits
//! per input symbol.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::bitseq::BinarySequence;
use crate::error::{check_open_probability, Error, Result};
use crate::patcount::pattern_weight;

/// Largest block length for which the matrix is materialised.
pub const BAA_MAX_N: usize = 14;

/// Deletion channel transition matrix `W(y | x) = #(x, y) (1-d)^|y| d^(n-|y|)`.
///
/// Stored as the exact pattern counts plus one weight per output length,
/// which is the same dense matrix at a quarter of the memory of `f64`
/// entries (`C(14, 7) = 3432` fits in 16 bits).
#[derive(Debug, Clone)]
pub struct ChannelMatrix {
    n: usize,
    d: f64,
    cols: usize,
    counts: Vec<u16>,
    /// `(1-d)^L d^(n-L)` indexed by output length `L`.
    weight: Vec<f64>,
    /// Output length of each column.
    col_len: Vec<u8>,
    /// `ln c` for every count `c` that occurs.
    ln_count: Vec<f64>,
}

/// Column of output `y` in a matrix over outputs of length `0..=n`.
pub fn output_index(y: BinarySequence) -> usize {
    (1usize << y.len()) - 1 + y.numeral() as usize
}

/// Output sequence held in column `col`.
pub fn output_at(col: usize) -> BinarySequence {
    let len = (usize::BITS - (col + 1).leading_zeros() - 1) as usize;
    BinarySequence::from_numeral((col + 1 - (1 << len)) as u64, len)
}

/// Writes `#(x, y)` for every output `y` into `out`, indexed by column.
///
/// Works one input symbol at a time: the subsequences of a prefix of length
/// `i` extend by the next symbol to those of length `i + 1`.
fn fill_counts(x: BinarySequence, out: &mut [u16]) {
    out.fill(0);
    out[0] = 1;
    for (i, bit) in x.iter().enumerate() {
        let b = bit as usize;
        for len in (0..=i).rev() {
            let from = (1usize << len) - 1;
            let to = (1usize << (len + 1)) - 1;
            for v in 0..(1usize << len) {
                let c = out[from + v];
                if c != 0 {
                    out[to + 2 * v + b] += c;
                }
            }
        }
    }
}

impl ChannelMatrix {
    pub fn build(n: usize, d: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("block length must be at least 1".into()));
        }
        if n > BAA_MAX_N {
            return Err(Error::CapExceeded {
                what: "block length for the dense channel matrix",
                value: n,
                max: BAA_MAX_N,
            });
        }
        check_open_probability("deletion probability", d)?;
        let rows = 1usize << n;
        let cols = (1usize << (n + 1)) - 1;
        let mut counts = vec![0u16; rows * cols];
        counts
            .par_chunks_mut(cols)
            .enumerate()
            .for_each(|(j, row)| fill_counts(BinarySequence::from_numeral(j as u64, n), row));
        let weight = (0..=n).map(|len| pattern_weight(n, len, d)).collect();
        let col_len = (0..cols).map(|c| output_at(c).len() as u8).collect();
        let max_count = counts.par_iter().copied().max().unwrap_or(1) as usize;
        let ln_count = (0..=max_count).map(|c| (c as f64).ln()).collect();
        Ok(ChannelMatrix {
            n,
            d,
            cols,
            counts,
            weight,
            col_len,
            ln_count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn num_inputs(&self) -> usize {
        1 << self.n
    }

    pub fn num_outputs(&self) -> usize {
        self.cols
    }

    /// `#(x, y)` for input index `j` and output column `col`.
    pub fn count(&self, j: usize, col: usize) -> u16 {
        self.counts[j * self.cols + col]
    }

    /// `W(y | x)` for input index `j` and output column `col`.
    pub fn get(&self, j: usize, col: usize) -> f64 {
        self.count(j, col) as f64 * self.weight[self.col_len[col] as usize]
    }

    /// `W(y | x)` by sequence.
    pub fn prob(&self, x: BinarySequence, y: BinarySequence) -> Result<f64> {
        if x.len() != self.n || y.len() > self.n {
            return Err(Error::Invalid(format!(
                "pair ({x}, {y}) is not in the matrix for n = {}",
                self.n
            )));
        }
        Ok(self.get(x.numeral() as usize, output_index(y)))
    }

    pub fn row_sum(&self, j: usize) -> f64 {
        (0..self.cols).map(|c| self.get(j, c)).sum()
    }

    fn row_counts(&self, j: usize) -> &[u16] {
        &self.counts[j * self.cols..(j + 1) * self.cols]
    }
}

/// A probability vector over the `2^n` inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistribution {
    p: Vec<f64>,
}

impl InputDistribution {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() || !p.len().is_power_of_two() {
            return Err(Error::Invalid(format!(
                "distribution has {} entries, expected a power of two",
                p.len()
            )));
        }
        if p.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Invalid("distribution has a negative or non-finite entry".into()));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("distribution sums to {total}")));
        }
        Ok(InputDistribution { p })
    }

    pub fn uniform(n: usize) -> Self {
        let k = 1usize << n;
        InputDistribution {
            p: vec![1.0 / k as f64; k],
        }
    }

    pub fn point_mass(n: usize, j: usize) -> Self {
        let mut p = vec![0.0; 1 << n];
        p[j] = 1.0;
        InputDistribution { p }
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }
}

/// Per-input divergences `D_j = Σ_y W(y|j) ln(W(y|j) / q(y))` in nats, and
/// the mutual information `Σ_j p_j D_j`.
fn divergences(w: &ChannelMatrix, p: &InputDistribution) -> Result<(Vec<f64>, f64)> {
    if p.p.len() != w.num_inputs() {
        return Err(Error::Invalid(format!(
            "distribution over {} inputs, matrix has {}",
            p.p.len(),
            w.num_inputs()
        )));
    }
    let mut q = vec![0.0f64; w.cols];
    for (j, &pj) in p.p.iter().enumerate() {
        if pj == 0.0 {
            continue;
        }
        for (qc, &c) in q.iter_mut().zip(w.row_counts(j)) {
            *qc += pj * c as f64;
        }
    }
    // q is accumulated without the per-length weight, which cancels in W/q
    let ln_q: Vec<f64> = q.iter().map(|v| v.ln()).collect();
    let d: Vec<f64> = (0..w.num_inputs())
        .map(|j| {
            let mut acc = 0.0;
            for (col, &c) in w.row_counts(j).iter().enumerate() {
                if c != 0 {
                    let len = w.col_len[col] as usize;
                    acc += c as f64 * w.weight[len] * (w.ln_count[c as usize] - ln_q[col]);
                }
            }
            acc
        })
        .collect();
    let info = p
        .p
        .iter()
        .zip(&d)
        .filter(|(&pj, _)| pj > 0.0)
        .map(|(pj, dj)| pj * dj)
        .sum();
    Ok((d, info))
}

/// Per-input divergences `D_j` and their `p`-average, both in bits per
/// symbol.
pub fn input_divergences(w: &ChannelMatrix, p: &InputDistribution) -> Result<(Vec<f64>, f64)> {
    let (d, info) = divergences(w, p)?;
    Ok((
        d.into_iter().map(|v| nats_per_symbol_to_bits(w.n, v)).collect(),
        nats_per_symbol_to_bits(w.n, info),
    ))
}

fn nats_per_symbol_to_bits(n: usize, v: f64) -> f64 {
    v / (n as f64 * LN_2)
}

/// One Blahut-Arimoto step. Returns the updated distribution and the mutual
/// information of the *given* `p`, in bits per symbol.
pub fn baa_iterate(w: &ChannelMatrix, p: &InputDistribution) -> Result<(InputDistribution, f64)> {
    let (d, info) = divergences(w, p)?;
    Ok((update(p, &d), nats_per_symbol_to_bits(w.n, info)))
}

fn update(p: &InputDistribution, d: &[f64]) -> InputDistribution {
    // shift by the max before exponentiating
    let top = p
        .p
        .iter()
        .zip(d)
        .filter(|(&pj, _)| pj > 0.0)
        .map(|(_, &dj)| dj)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut next: Vec<f64> = p
        .p
        .iter()
        .zip(d)
        .map(|(&pj, dj)| if pj > 0.0 { pj * (dj - top).exp() } else { 0.0 })
        .collect();
    let total: f64 = next.iter().sum();
    next.iter_mut().for_each(|v| *v /= total);
    InputDistribution { p: next }
}

/// Optimality residual for `p`: with `D_j` in bits per symbol and
/// `λ = Σ p_j D_j`, the largest `|D_j - λ|` over inputs with `p_j > 0` or
/// `max(0, D_j - λ)` over inputs with `p_j = 0`. Zero exactly at a capacity
/// achieving distribution.
pub fn kkt_residual(w: &ChannelMatrix, p: &InputDistribution) -> Result<f64> {
    let (d, info) = divergences(w, p)?;
    Ok(residual_from(w.n, p, &d, info))
}

fn residual_from(n: usize, p: &InputDistribution, d: &[f64], info: f64) -> f64 {
    let lambda = nats_per_symbol_to_bits(n, info);
    p.p.iter()
        .zip(d)
        .map(|(&pj, &dj)| {
            let dj = nats_per_symbol_to_bits(n, dj);
            if pj > 0.0 {
                (dj - lambda).abs()
            } else {
                (dj - lambda).max(0.0)
            }
        })
        .fold(0.0, f64::max)
}

/// `(c - log(n+1)/n, c)`. The lower end may be negative for small `n`.
pub fn dobrushin_sandwich(n: usize, c_n: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Invalid("block length must be at least 1".into()));
    }
    if !(c_n >= 0.0) {
        return Err(Error::Invalid(format!("capacity proxy {c_n} must be non-negative")));
    }
    Ok((c_n - ((n + 1) as f64).log2() / n as f64, c_n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaaReport {
    pub n: usize,
    pub d: f64,
    pub iterations: usize,
    /// Mutual information of the final distribution, bits per symbol.
    pub capacity_proxy: f64,
    /// `max_j D_j` at the final distribution; the capacity lies in
    /// `[capacity_proxy, upper_estimate]`.
    pub upper_estimate: f64,
    /// Mutual information before each update.
    pub history: Vec<f64>,
    pub kkt_residual: f64,
    pub sandwich: (f64, f64),
    pub converged: bool,
    pub distribution: InputDistribution,
}

/// Runs Blahut-Arimoto from the uniform distribution on an existing matrix.
pub fn baa_run(w: &ChannelMatrix, tol: f64, max_iter: usize) -> Result<BaaReport> {
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance {tol} must be positive")));
    }
    let n = w.n;
    let mut p = InputDistribution::uniform(n);
    let mut history = Vec::new();
    loop {
        let (d, info) = divergences(w, &p)?;
        let lower = nats_per_symbol_to_bits(n, info);
        let top = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let upper = nats_per_symbol_to_bits(n, top);
        history.push(lower);
        let converged = upper - lower < tol;
        if converged || history.len() > max_iter {
            let capacity_proxy = lower.max(0.0);
            return Ok(BaaReport {
                n,
                d: w.d,
                iterations: history.len() - 1,
                capacity_proxy,
                upper_estimate: upper,
                kkt_residual: residual_from(n, &p, &d, info),
                sandwich: dobrushin_sandwich(n, capacity_proxy)?,
                converged,
                history,
                distribution: p,
            });
        }
        p = update(&p, &d);
    }
}

/// Builds the matrix for `(n, d)` and runs [`baa_run`].
pub fn baa_capacity(n: usize, d: f64, tol: f64, max_iter: usize) -> Result<BaaReport> {
    baa_run(&ChannelMatrix::build(n, d)?, tol, max_iter)
}
