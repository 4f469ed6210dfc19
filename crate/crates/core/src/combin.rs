//! Binomial coefficients, exact and in log space.

use statrs::function::gamma::ln_gamma;

/// Exact `C(n, k)`, or `None` if it does not fit in a `u64`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `log2 C(n, k)`; exact summation for moderate `k`, log-gamma otherwise.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "log2_binomial({n}, {k}) with k > n");
    match binomial(n, k) {
        Some(v) => (v as f64).log2(),
        None => ln_binomial_real(n as f64, k as f64) / std::f64::consts::LN_2,
    }
}

/// `ln Γ(a + 1) - ln Γ(b + 1) - ln Γ(a - b + 1)`, the real-argument
/// generalisation of `ln C(a, b)`.
pub fn ln_binomial_real(a: f64, b: f64) -> f64 {
    ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0)
}

/// Table of `C(r, j)` for `0 <= j <= r <= max`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    max: usize,
    rows: Vec<u64>,
}

impl BinomialTable {
    /// Panics if some entry overflows `u64` (never for `max <= 63`).
    pub fn new(max: usize) -> Self {
        let w = max + 1;
        let mut rows = vec![0u64; w * w];
        for r in 0..=max {
            rows[r * w] = 1;
            for j in 1..=r {
                rows[r * w + j] = rows[(r - 1) * w + j - 1]
                    .checked_add(rows[(r - 1) * w + j])
                    .expect("binomial table overflow");
            }
        }
        BinomialTable { max, rows }
    }

    #[inline]
    pub fn get(&self, r: usize, j: usize) -> u64 {
        if j > r {
            0
        } else {
            self.rows[r * (self.max + 1) + j]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(binomial(8, 4), Some(70));
        assert_eq!(binomial(14, 7), Some(3432));
        assert_eq!(binomial(20, 10), Some(184756));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(63, 31), Some(916312070471295267));
        assert_eq!(binomial(70, 35), None);
    }

    #[test]
    fn table_matches_direct() {
        let t = BinomialTable::new(63);
        for r in 0..=63u64 {
            for j in 0..=r {
                assert_eq!(t.get(r as usize, j as usize), binomial(r, j).unwrap());
            }
        }
        assert_eq!(t.get(3, 4), 0);
    }

    #[test]
    fn real_binomial_matches_integer_case() {
        for a in 1..30u64 {
            for b in 0..=a {
                let exact = (binomial(a, b).unwrap() as f64).ln();
                assert!((ln_binomial_real(a as f64, b as f64) - exact).abs() < 1e-9);
            }
        }
        assert!((log2_binomial(100, 50) - 96.35).abs() < 0.01);
    }
}
