//! Truncated polynomial expansions of `M_α`, `F_α` and `\bar M_α` in the
//! variables `x_1..x_N` (plus `x_0` for heads), cut at total degree `D`.
//!
//! This is the independent oracle for the symbolic layer: identities between
//! LinCombs are checked by expanding both sides here.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, format_rational, parse_rational, Rational};
use crate::composition::Lwc;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::poset::LabeledPoset;
use crate::rota_baxter::MbarElement;

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial(m.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

/// Graded: total degree first, then the pair list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMonomialTerm {
    pub monomial: Vec<[u32; 2]>,
    pub coeff: String,
}

/// Polynomial in `x_0..x_N` with rational coefficients, truncated at total
/// degree `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    vars: u32,
    deg: u32,
    terms: LinComb<Monomial>,
}

impl TruncatedSeries {
    pub fn zero(vars: u32, deg: u32) -> Self {
        TruncatedSeries { vars, deg, terms: LinComb::zero() }
    }

    pub fn one(vars: u32, deg: u32) -> Self {
        TruncatedSeries { vars, deg, terms: LinComb::singleton(Monomial::one()) }
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.coeff(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Adds `c·m`, silently dropping monomials above the degree cap.
    pub fn add_term(&mut self, m: Monomial, c: Rational) -> Result<()> {
        if let Some(v) = m.max_var() {
            if v > self.vars {
                return Err(Error::Mismatch(format!("variable x{v} beyond N={}", self.vars)));
            }
        }
        if m.degree() <= self.deg {
            self.terms.add_term(m, c);
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.deg != other.deg {
            return Err(Error::Mismatch(format!(
                "(N={}, D={}) vs (N={}, D={})",
                self.vars, self.deg, other.vars, other.deg
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(TruncatedSeries { terms: self.terms.clone() + other.terms.clone(), ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(TruncatedSeries { terms: self.terms.clone() - other.terms.clone(), ..*self })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { terms: self.terms.scale(c), ..*self }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = TruncatedSeries::zero(self.vars, self.deg);
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                if a.degree() + b.degree() <= self.deg {
                    out.terms.add_term(a.mul(b), ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Linear combination `Σ c_k · expand(k)` over a LinComb.
    pub fn from_lincomb<K: Ord + Clone>(
        vars: u32,
        deg: u32,
        x: &LinComb<K>,
        mut expand: impl FnMut(&K) -> Result<TruncatedSeries>,
    ) -> Result<Self> {
        let mut out = TruncatedSeries::zero(vars, deg);
        for (k, c) in x.iter() {
            let s = expand(k)?;
            out.check_same(&s)?;
            out.terms.add_scaled(&s.terms, c);
        }
        Ok(out)
    }

    /// Exact evaluation at rational values.
    pub fn specialize(&self, value: impl Fn(u32) -> Option<Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = value(v).ok_or(Error::MissingVariable(v))?;
                t *= num_traits::pow(x, e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating evaluation.
    pub fn specialize_f64(&self, value: impl Fn(u32) -> Option<f64>) -> Result<f64> {
        let mut total = 0.0;
        for (m, c) in self.terms.iter() {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for &(v, e) in m.pairs() {
                let x = value(v).ok_or(Error::MissingVariable(v))?;
                t *= x.powi(e as i32);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn to_json_terms(&self) -> Vec<JsonMonomialTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonMonomialTerm {
                monomial: m.pairs().iter().map(|&(v, e)| [v, e]).collect(),
                coeff: format_rational(c),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("plain data serializes")
    }

    pub fn from_json(vars: u32, deg: u32, text: &str) -> Result<Self> {
        let terms: Vec<JsonMonomialTerm> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = TruncatedSeries::zero(vars, deg);
        for t in terms {
            let m = Monomial::from_pairs(t.monomial.iter().map(|p| (p[0], p[1])));
            out.add_term(m, parse_rational(&t.coeff)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

fn check_degree(size: u32, deg: u32) -> Result<()> {
    if size > deg {
        return Err(Error::DegreeOverflow { degree: size, cap: deg });
    }
    Ok(())
}

/// `M_α = Σ_{n_1<⋯<n_k≤N} Π C(n_p − n_{p−1} − 1, i_p) x_{n_p}^{s_p}`, one
/// term per choice of positions of the positive parts.
pub fn expand_m(alpha: &Lwc, vars: u32, deg: u32) -> Result<TruncatedSeries> {
    check_degree(alpha.size(), deg)?;
    let blocks = alpha.blocks();
    let mut out = TruncatedSeries::zero(vars, deg);
    let mut pairs = Vec::with_capacity(blocks.len());
    fn rec(
        blocks: &[crate::composition::Block],
        prev: u32,
        vars: u32,
        weight: num_bigint::BigInt,
        pairs: &mut Vec<(u32, u32)>,
        out: &mut TruncatedSeries,
    ) {
        let Some((b, rest)) = blocks.split_first() else {
            out.terms.add_term(Monomial(pairs.clone()), Rational::from_integer(weight));
            return;
        };
        // n_p must leave room for the i_p zeros before it.
        for n in (prev + 1 + b.zeros)..=vars {
            let w = binomial(i64::from(n - prev - 1), i64::from(b.zeros));
            pairs.push((n, b.part));
            rec(rest, n, vars, &weight * w, pairs, out);
            pairs.pop();
        }
    }
    rec(&blocks, 0, vars, num_bigint::BigInt::one(), &mut pairs, &mut out);
    Ok(out)
}

/// `M_α` straight from its definition: one strictly increasing index per
/// entry of `α`, zero entries included, contributing `x_n^0`.
pub fn expand_m_chains(alpha: &Lwc, vars: u32, deg: u32) -> Result<TruncatedSeries> {
    check_degree(alpha.size(), deg)?;
    let parts = alpha.parts();
    let mut out = TruncatedSeries::zero(vars, deg);
    let mut idx = Vec::with_capacity(parts.len());
    fn rec(parts: &[u32], start: u32, vars: u32, idx: &mut Vec<u32>, out: &mut TruncatedSeries) {
        if idx.len() == parts.len() {
            let m = Monomial::from_pairs(idx.iter().copied().zip(parts.iter().copied()));
            out.terms.add_term(m, Rational::one());
            return;
        }
        for n in start..=vars {
            idx.push(n);
            rec(parts, n + 1, vars, idx, out);
            idx.pop();
        }
    }
    rec(parts, 1, vars, &mut idx, &mut out);
    Ok(out)
}

/// The chain pattern for `F_α`: `(exponent, strict_before)` per chain
/// element. The chain lists, for each block, `i_p` elements of exponent 0
/// then `s_p` elements of exponent 1; the step into an element is strict
/// exactly when it directly follows the end of a block.
pub fn f_chain_pattern(alpha: &Lwc) -> Vec<(u32, bool)> {
    let mut out = Vec::new();
    let mut after_block = false;
    for b in alpha.blocks() {
        for _ in 0..b.zeros {
            out.push((0, after_block));
            after_block = false;
        }
        for _ in 0..b.part {
            out.push((1, after_block));
            after_block = false;
        }
        after_block = true;
    }
    out
}

/// `F_α` as a sum over index chains `n_1 ≤ n_2 ≤ ⋯` obeying
/// [`f_chain_pattern`].
pub fn expand_f(alpha: &Lwc, vars: u32, deg: u32) -> Result<TruncatedSeries> {
    check_degree(alpha.size(), deg)?;
    let pattern = f_chain_pattern(alpha);
    let mut out = TruncatedSeries::zero(vars, deg);
    // Dynamic table over the last index: exponent maps keyed by the last value.
    let mut states: BTreeMap<u32, LinComb<Monomial>> = BTreeMap::from([(0, LinComb::singleton(Monomial::one()))]);
    for (i, &(e, strict)) in pattern.iter().enumerate() {
        let mut next: BTreeMap<u32, LinComb<Monomial>> = BTreeMap::new();
        for (&last, comb) in &states {
            let lo = if i == 0 || strict { last + 1 } else { last };
            for n in lo.max(1)..=vars {
                let factor = Monomial::var(n, e);
                let slot = next.entry(n).or_default();
                for (m, c) in comb.iter() {
                    slot.add_term(m.mul(&factor), c.clone());
                }
            }
        }
        states = next;
    }
    for comb in states.values() {
        out.terms.add_scaled(comb, &Rational::one());
    }
    Ok(out)
}

/// `Γ(P_α)` by brute-force enumeration of the P-partitions of the labeled
/// poset of `α` with values in `1..=N`.
pub fn gamma_p(alpha: &Lwc, vars: u32, deg: u32, max_elements: usize) -> Result<TruncatedSeries> {
    check_degree(alpha.size(), deg)?;
    let poset = LabeledPoset::from_lwc(alpha);
    if poset.len() > max_elements {
        return Err(Error::Budget { limit: max_elements });
    }
    let mut out = TruncatedSeries::zero(vars, deg);
    for f in poset.p_partitions(vars) {
        let m = Monomial::from_pairs(f.iter().zip(poset.exponents()).map(|(&v, &e)| (v, e)));
        out.terms.add_term(m, Rational::one());
    }
    Ok(out)
}

/// `\bar M_{(α_0, α')} = x_0^{α_0} M_{α'}`.
pub fn expand_mbar(a: &MbarElement, vars: u32, deg: u32) -> Result<TruncatedSeries> {
    check_degree(a.size(), deg)?;
    let tail = expand_m(a.tail(), vars, deg)?;
    let head = TruncatedSeries {
        vars,
        deg,
        terms: LinComb::singleton(Monomial::var(0, a.head())),
    };
    head.multiply(&tail)
}

/// Rank over ℚ of the coefficient vectors of the given series.
pub fn rank(series: &[TruncatedSeries]) -> usize {
    let mut cols: Vec<Monomial> = series.iter().flat_map(|s| s.terms.keys().cloned()).collect();
    cols.sort();
    cols.dedup();
    let mut rows: Vec<Vec<Rational>> = series
        .iter()
        .map(|s| cols.iter().map(|m| s.coeff(m)).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
