//! Quasi-shuffle (stuffle) product of left weak compositions.
//!
//! `α ∗ β = (α_1, α' ∗ β) + (β_1, α ∗ β') + (α_1 + β_1, α' ∗ β')` with the
//! empty composition as unit, memoized on suffix pairs. Coefficients are
//! path counts; they are exposed as rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::composition::{Lwc, WeakComposition};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;

/// Resource guard for products whose size grows exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of terms generated while expanding one product.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_terms: 10_000_000 }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { max_terms: usize::MAX }
    }
}

type Table = BTreeMap<Vec<u32>, u64>;

/// `α ∗ β` without a term budget.
pub fn quasi_shuffle(a: &Lwc, b: &Lwc) -> LinComb<Lwc> {
    quasi_shuffle_with(a, b, &Limits::unbounded()).expect("unbounded quasi-shuffle")
}

/// `∗` on arbitrary weak compositions (words over exponents).
pub fn quasi_shuffle_words(a: &WeakComposition, b: &WeakComposition) -> LinComb<WeakComposition> {
    raw_quasi_shuffle(a.parts(), b.parts(), &Limits::unbounded())
        .expect("unbounded quasi-shuffle")
        .into_iter()
        .map(|(k, c)| (WeakComposition(k), Rational::from_integer(BigInt::from(c))))
        .collect()
}

pub fn quasi_shuffle_with(a: &Lwc, b: &Lwc, limits: &Limits) -> Result<LinComb<Lwc>> {
    let table = raw_quasi_shuffle(a.parts(), b.parts(), limits)?;
    Ok(table
        .into_iter()
        .map(|(k, c)| (Lwc::from_vec_unchecked(k), Rational::from_integer(BigInt::from(c))))
        .collect())
}

fn raw_quasi_shuffle(a: &[u32], b: &[u32], limits: &Limits) -> Result<Table> {
    let (m, n) = (a.len(), b.len());
    let mut generated = 0usize;
    // memo[i][j] = a[i..] ∗ b[j..], filled from the back.
    let mut memo: HashMap<(usize, usize), Table> = HashMap::new();
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            let table = if i == m {
                Table::from([(b[j..].to_vec(), 1)])
            } else if j == n {
                Table::from([(a[i..].to_vec(), 1)])
            } else {
                let mut t = Table::new();
                prepend_into(&mut t, a[i], &memo[&(i + 1, j)], limits)?;
                prepend_into(&mut t, b[j], &memo[&(i, j + 1)], limits)?;
                prepend_into(&mut t, a[i] + b[j], &memo[&(i + 1, j + 1)], limits)?;
                t
            };
            generated = generated.saturating_add(table.len());
            if generated > limits.max_terms {
                return Err(Error::Budget { limit: limits.max_terms });
            }
            memo.insert((i, j), table);
            // Rows i + 2 and beyond are no longer needed.
            if j == 0 && i + 2 <= m {
                for jj in 0..=n {
                    memo.remove(&(i + 2, jj));
                }
            }
        }
    }
    Ok(memo.remove(&(0, 0)).expect("filled"))
}

fn prepend_into(out: &mut Table, head: u32, tail: &Table, limits: &Limits) -> Result<()> {
    for (w, c) in tail {
        let mut key = Vec::with_capacity(w.len() + 1);
        key.push(head);
        key.extend_from_slice(w);
        let slot = out.entry(key).or_insert(0);
        *slot = slot
            .checked_add(*c)
            .ok_or(Error::Budget { limit: limits.max_terms })?;
    }
    Ok(())
}

/// Bilinear extension of `∗` to linear combinations.
pub fn quasi_shuffle_lincomb(x: &LinComb<Lwc>, y: &LinComb<Lwc>, limits: &Limits) -> Result<LinComb<Lwc>> {
    let out = x.try_bilinear(y, |a, b| quasi_shuffle_with(a, b, limits))?;
    if out.len() > limits.max_terms {
        return Err(Error::Budget { limit: limits.max_terms });
    }
    Ok(out)
}

/// `α_1 ∗ α_2 ∗ ... ∗ α_r`, left to right; the empty product is `∅`.
pub fn quasi_shuffle_all(factors: &[Lwc], limits: &Limits) -> Result<LinComb<Lwc>> {
    let mut acc = LinComb::singleton(Lwc::empty());
    for f in factors {
        acc = quasi_shuffle_lincomb(&acc, &LinComb::singleton(f.clone()), limits)?;
    }
    Ok(acc)
}

/// Number of quasi-shuffles of words of lengths `p` and `q`:
/// `sum_r (p + q - r)! / (r! (p - r)! (q - r)!)`.
pub fn quasi_shuffle_count(p: usize, q: usize) -> BigInt {
    let fact = |n: usize| crate::arith::factorial(n as u32);
    (0..=p.min(q))
        .map(|r| fact(p + q - r) / (fact(r) * fact(p - r) * fact(q - r)))
        .sum()
}
