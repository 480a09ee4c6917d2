//! Closed forms for quasi-shuffles of zero-headed words, with the binomial
//! convention `C(p, q) = 0` for `p < q` or `q < 0`.
//!
//! These are kept separate from the recursive product in [`crate::stuffle`]
//! and are tested against it.

use crate::arith::{binomial, Rational};
use crate::composition::WeakComposition;
use crate::lincomb::LinComb;

pub type WordComb = LinComb<WeakComposition>;

fn word(zeros: u32, rest: &[u32]) -> WeakComposition {
    let mut v = vec![0; zeros as usize];
    v.extend_from_slice(rest);
    WeakComposition(v)
}

fn add(out: &mut WordComb, key: WeakComposition, c: num_bigint::BigInt) {
    out.add_term(key, Rational::from_integer(c));
}

/// `0^m ∗ (0^n, b) = Σ_{i=0}^{m} Σ_{k=n}^{m+n−i} C(k,n) C(n+1, i+k−m+1) (0^k, b, 0^i)`.
pub fn closed_zero_zero_b(m: u32, n: u32, b: u32) -> WordComb {
    let (mi, ni) = (i64::from(m), i64::from(n));
    let mut out = WordComb::zero();
    for i in 0..=mi {
        for k in ni..=(mi + ni - i) {
            let c = binomial(k, ni) * binomial(ni + 1, i + k - mi + 1);
            let mut tail = vec![b];
            tail.extend(std::iter::repeat_n(0, i as usize));
            add(&mut out, word(k as u32, &tail), c);
        }
    }
    out
}

/// `0^m ∗ 0^n = Σ_{k=n}^{m+n} C(k,n) C(n, k−m) 0^k`.
pub fn closed_zero_zero(m: u32, n: u32) -> WordComb {
    let (mi, ni) = (i64::from(m), i64::from(n));
    let mut out = WordComb::zero();
    for k in ni..=(mi + ni) {
        add(&mut out, word(k as u32, &[]), binomial(k, ni) * binomial(ni, k - mi));
    }
    out
}

/// `(0^m, a) ∗ (0^n, b)` as the three sums over `(0^k, b, 0^i, a)`,
/// `(0^k, a, 0^i, b)` and `(0^k, a+b)`.
pub fn closed_0a_0b(a: u32, b: u32, m: u32, n: u32) -> WordComb {
    let (mi, ni) = (i64::from(m), i64::from(n));
    let mut out = WordComb::zero();
    let mixed = |out: &mut WordComb, p: i64, q: i64, first: u32, last: u32| {
        // Words ending in `last` after the other word's letter `first`.
        for i in 0..=p {
            for k in q..=(p + q - i) {
                let c = binomial(k, q) * binomial(q + 1, i + k - p + 1);
                let mut tail = vec![first];
                tail.extend(std::iter::repeat_n(0, i as usize));
                tail.push(last);
                add(out, word(k as u32, &tail), c);
            }
        }
    };
    mixed(&mut out, mi, ni, b, a);
    mixed(&mut out, ni, mi, a, b);
    for k in ni..=(mi + ni) {
        add(&mut out, word(k as u32, &[a + b]), binomial(k, ni) * binomial(ni, k - mi));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::stuffle::quasi_shuffle_words;

    fn w(zeros: u32, rest: &[u32]) -> WeakComposition {
        word(zeros, rest)
    }

    #[test]
    fn small_cases() {
        assert_eq!(closed_zero_zero_b(0, 3, 2), LinComb::singleton(w(3, &[2])));
        let want: WordComb = [(w(1, &[]), int(1)), (w(2, &[]), int(2))].into_iter().collect();
        assert_eq!(closed_zero_zero(1, 1), want);
        assert_eq!(closed_zero_zero(0, 4), LinComb::singleton(w(4, &[])));
        let depth1: WordComb = [(w(0, &[4, 3]), int(1)), (w(0, &[3, 4]), int(1)), (w(0, &[7]), int(1))]
            .into_iter()
            .collect();
        assert_eq!(closed_0a_0b(3, 4, 0, 0), depth1);
    }

    #[test]
    fn repeated_letter_gives_double_weight_on_merged_tail() {
        // (0,a) ∗ (0,a) contains 2·(0,0,2a) and no 2·(0,2a,0,...) artefact.
        let a = 3;
        let got = closed_0a_0b(a, a, 1, 1);
        assert_eq!(got.coeff(&w(2, &[2 * a])), Some(&int(2)));
        assert_eq!(got.coeff(&w(1, &[2 * a])), Some(&int(1)));
        assert_eq!(got, quasi_shuffle_words(&w(1, &[a]), &w(1, &[a])));
    }

    #[test]
    fn agree_with_recursion() {
        for m in 0..=5 {
            for n in 0..=5 {
                assert_eq!(closed_zero_zero(m, n), quasi_shuffle_words(&w(m, &[]), &w(n, &[])), "0^{m} * 0^{n}");
                for b in 0..=4 {
                    assert_eq!(
                        closed_zero_zero_b(m, n, b),
                        quasi_shuffle_words(&w(m, &[]), &w(n, &[b])),
                        "m={m} n={n} b={b}"
                    );
                }
            }
        }
        for m in 0..=3 {
            for n in 0..=3 {
                for a in 0..=4 {
                    for b in 0..=4 {
                        assert_eq!(
                            closed_0a_0b(a, b, m, n),
                            quasi_shuffle_words(&w(m, &[a]), &w(n, &[b])),
                            "a={a} b={b} m={m} n={n}"
                        );
                    }
                }
            }
        }
    }
}
