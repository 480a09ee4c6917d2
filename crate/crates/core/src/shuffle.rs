//! Shuffle and mixable shuffle products of words over a generic alphabet.
//!
//! [`mixable_shuffle`] is built straight from the combinatorial definition
//! (enumerate shuffles, then merge any subset of adjacent `a_i b_j` pairs).
//! The recursive quasi-shuffle on LWCs lives in [`crate::stuffle`]; the two
//! agree under `x^{a_1} ⊗ ... ⊗ x^{a_k} ↔ (a_1, ..., a_k)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Rational;
use crate::lincomb::LinComb;
use num_traits::One;

/// Letters carrying a commutative product, used when two letters merge.
pub trait MixLetter: Clone + Ord {
    fn mix(&self, other: &Self) -> Self;
}

/// Exponent letters `x^a`: merging adds exponents.
impl MixLetter for u32 {
    fn mix(&self, other: &Self) -> Self {
        self + other
    }
}

/// A commutative monomial in named generators, e.g. `a1·b2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymLetter(BTreeMap<String, u32>);

impl SymLetter {
    pub fn new(name: &str) -> Self {
        SymLetter(BTreeMap::from([(name.to_string(), 1)]))
    }
}

impl MixLetter for SymLetter {
    fn mix(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, e) in &other.0 {
            *out.entry(k.clone()).or_insert(0) += e;
        }
        SymLetter(out)
    }
}

impl fmt::Display for SymLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let many = self.0.len() > 1 || self.0.values().any(|&e| e > 1);
        if many {
            f.write_str("(")?;
        }
        for (k, &e) in &self.0 {
            f.write_str(k)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if many {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A word; ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word<L>(pub Vec<L>);

impl<L> Word<L> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }
    pub fn letters(&self) -> &[L] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<L: Ord> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<L: Ord> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: fmt::Display> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Classical shuffle product, via
/// `a·u ⧢ b·v = a(u ⧢ b·v) + b(a·u ⧢ v)` with the empty word as unit.
pub fn shuffle<L: Clone + Ord>(u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>> {
    let mut out = LinComb::zero();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    shuffle_rec(&u.0, &v.0, &mut buf, &mut out);
    out
}

fn shuffle_rec<L: Clone + Ord>(u: &[L], v: &[L], buf: &mut Vec<L>, out: &mut LinComb<Word<L>>) {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        out.add_term(Word(w), Rational::one());
        return;
    }
    buf.push(u[0].clone());
    shuffle_rec(&u[1..], v, buf, out);
    buf.pop();
    buf.push(v[0].clone());
    shuffle_rec(u, &v[1..], buf, out);
    buf.pop();
}

/// Mixable shuffle product: sum over all shuffles of `u` and `v` and over all
/// ways of merging some of the adjacent pairs in which a letter of `u`
/// immediately precedes a letter of `v`.
pub fn mixable_shuffle<L: MixLetter>(u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>> {
    let (m, n) = (u.len(), v.len());
    let mut out = LinComb::zero();
    // Each shuffle is a sequence of sources: false = from u, true = from v.
    let mut sources = Vec::with_capacity(m + n);
    enumerate_interleavings(m, n, &mut sources, &mut |src| {
        let mut letters = Vec::with_capacity(m + n);
        let (mut i, mut j) = (0, 0);
        for &from_v in src {
            if from_v {
                letters.push(v.0[j].clone());
                j += 1;
            } else {
                letters.push(u.0[i].clone());
                i += 1;
            }
        }
        let mergeable: Vec<usize> = (0..src.len().saturating_sub(1))
            .filter(|&t| !src[t] && src[t + 1])
            .collect();
        // Positions t and t+1 can't both start a pair, so every subset works.
        for mask in 0u64..(1u64 << mergeable.len()) {
            let mut w = Vec::with_capacity(letters.len());
            let mut t = 0;
            while t < letters.len() {
                let merge_here = mergeable
                    .iter()
                    .position(|&p| p == t)
                    .is_some_and(|bit| mask >> bit & 1 == 1);
                if merge_here {
                    w.push(letters[t].mix(&letters[t + 1]));
                    t += 2;
                } else {
                    w.push(letters[t].clone());
                    t += 1;
                }
            }
            out.add_term(Word(w), Rational::one());
        }
    });
    out
}

fn enumerate_interleavings(m: usize, n: usize, buf: &mut Vec<bool>, f: &mut impl FnMut(&[bool])) {
    if m == 0 && n == 0 {
        f(buf);
        return;
    }
    if m > 0 {
        buf.push(false);
        enumerate_interleavings(m - 1, n, buf, f);
        buf.pop();
    }
    if n > 0 {
        buf.push(true);
        enumerate_interleavings(m, n - 1, buf, f);
        buf.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn w(names: &[&str]) -> Word<SymLetter> {
        Word(names.iter().map(|n| SymLetter::new(n)).collect())
    }

    fn render(lc: &LinComb<Word<SymLetter>>) -> Vec<(String, i64)> {
        let mut v: Vec<(String, i64)> = lc
            .iter()
            .map(|(k, c)| (k.to_string(), c.numer().try_into().unwrap()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn shuffle_example() {
        let got = render(&shuffle(&w(&["a1"]), &w(&["b1", "b2"])));
        let want = vec![("a1b1b2".into(), 1), ("b1a1b2".into(), 1), ("b1b2a1".into(), 1)];
        assert_eq!(got, want);
    }

    #[test]
    fn shuffle_units_and_pairs() {
        let u = w(&["a", "b"]);
        assert_eq!(shuffle(&u, &Word::empty()), LinComb::singleton(u.clone()));
        assert_eq!(shuffle(&Word::empty(), &u), LinComb::singleton(u));
        let got = render(&shuffle(&w(&["a"]), &w(&["b"])));
        assert_eq!(got, vec![("ab".into(), 1), ("ba".into(), 1)]);
        let aa = shuffle(&w(&["a"]), &w(&["a"]));
        assert_eq!(aa.coeff(&w(&["a", "a"])), Some(&int(2)));
    }

    #[test]
    fn mixable_shuffle_example() {
        let got = render(&mixable_shuffle(&w(&["a1"]), &w(&["b1", "b2"])));
        let want = vec![
            ("(a1b1)b2".into(), 1),
            ("a1b1b2".into(), 1),
            ("b1(a1b2)".into(), 1),
            ("b1a1b2".into(), 1),
            ("b1b2a1".into(), 1),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn mixable_shuffle_unit() {
        let u = w(&["a", "b"]);
        assert_eq!(mixable_shuffle(&Word::empty(), &u), LinComb::singleton(u));
    }

    #[test]
    fn mixable_shuffle_is_commutative_on_exponent_words() {
        for a in [vec![1u32], vec![0, 2], vec![1, 0, 1]] {
            for b in [vec![2u32], vec![1, 1], vec![0, 0, 3]] {
                let ab = mixable_shuffle(&Word(a.clone()), &Word(b.clone()));
                let ba = mixable_shuffle(&Word(b.clone()), &Word(a.clone()));
                assert_eq!(ab, ba);
            }
        }
    }
}
