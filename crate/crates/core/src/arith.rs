//! Exact integer and rational helpers shared by every module.
//!
//! All binomial coefficients in the crate go through [`binomial`], which
//! returns zero whenever `p < q` or `q < 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `C(p, q)` with the convention `C(p, q) = 0` for `p < q` or `q < 0`.
pub fn binomial(p: i64, q: i64) -> BigInt {
    if q < 0 || p < q {
        return BigInt::zero();
    }
    let q = q.min(p - q);
    let mut acc = BigInt::one();
    for j in 0..q {
        acc *= p - j;
        acc /= j + 1;
    }
    acc
}

/// Machine-integer binomial with the same convention, for hot loops.
/// Returns `None` on overflow.
pub fn binomial_u64(p: i64, q: i64) -> Option<u64> {
    if q < 0 || p < q {
        return Some(0);
    }
    let q = q.min(p - q) as u64;
    let p = p as u64;
    let mut acc: u128 = 1;
    for j in 0..q {
        acc = acc * u128::from(p - j) / u128::from(j + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Binomial as a float, exact for the small arguments used by the numeric layer.
pub fn binomial_f64(p: i64, q: i64) -> f64 {
    if q < 0 || p < q {
        return 0.0;
    }
    let q = q.min(p - q);
    let mut acc = 1.0f64;
    for j in 0..q {
        acc = acc * (p - j) as f64 / (j + 1) as f64;
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Canonical `p/q` text form (denominator always printed).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p`, `p/q`, with optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerators: scale both down by the same power of two.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Signed Stirling numbers of the first kind `s(i, k)`, defined by
/// `t (t-1) ... (t-i+1) = sum_k s(i, k) t^k`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_i: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for i in 1..=max_i {
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::zero(); i + 1];
            // (t)_i = (t)_{i-1} * (t - (i-1))
            for (k, c) in prev.iter().enumerate() {
                row[k + 1] += c;
                row[k] -= c * BigInt::from(i - 1);
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max_i(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(i, k)`, zero outside `0 <= k <= i`.
    pub fn get(&self, i: usize, k: usize) -> BigInt {
        if i >= self.rows.len() {
            return StirlingTable::new(i).get(i, k);
        }
        self.rows[i].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial_u64(10, 3), Some(120));
        assert_eq!(binomial_f64(4, 2), 6.0);
    }

    #[test]
    fn stirling_reproduces_falling_factorial() {
        let table = StirlingTable::new(8);
        for i in 0..=8usize {
            for t in 1..=6i64 {
                let falling: BigInt = (0..i as i64).fold(BigInt::one(), |acc, j| acc * (t - j));
                let poly: BigInt = (0..=i)
                    .map(|k| table.get(i, k) * BigInt::from(t).pow(k as u32))
                    .sum();
                assert_eq!(falling, poly, "i={i} t={t}");
            }
        }
        assert_eq!(table.get(2, 1), BigInt::from(-1));
        assert_eq!(table.get(3, 1), BigInt::from(2));
        assert_eq!(table.get(3, 2), BigInt::from(-3));
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rational(&int(4)), "4/1");
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
