//! Rota's standard Rota–Baxter algebra on one generator `x`: sequences of
//! polynomials in `x_1, x_2, ...` with the operator
//! `P(a) = (0, a_1, a_1 + a_2, ...)`.

use std::fmt;

use num_traits::One;

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::series::Monomial;

/// Polynomials with exact coefficients in `x_1, x_2, ...`.
pub type Poly = LinComb<Monomial>;

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    a.bilinear(b, |x, y| LinComb::singleton(x.mul(y)))
}

/// `x_v^e`.
pub fn poly_var(v: u32, e: u32) -> Poly {
    LinComb::singleton(Monomial::var(v, e))
}

pub fn poly_const(c: Rational) -> Poly {
    LinComb::term(Monomial::one(), c)
}

/// A sequence truncated to its first `len` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySeq(Vec<Poly>);

impl PolySeq {
    pub fn new(entries: Vec<Poly>) -> Self {
        PolySeq(entries)
    }

    pub fn zero(len: usize) -> Self {
        PolySeq(vec![Poly::zero(); len])
    }

    pub fn constant(len: usize, c: Rational) -> Self {
        PolySeq(vec![poly_const(c); len])
    }

    /// `(x_1, x_2, ..., x_len)`.
    pub fn generator(len: usize) -> Self {
        Self::generator_power(len, 1)
    }

    /// `(x_1^k, x_2^k, ...)`.
    pub fn generator_power(len: usize, k: u32) -> Self {
        PolySeq((1..=len as u32).map(|m| poly_var(m, k)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.0
    }

    /// 1-based, as in the sequence notation.
    pub fn entry(&self, m: usize) -> &Poly {
        &self.0[m - 1]
    }

    fn zip(&self, other: &PolySeq, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolySeq> {
        if self.len() != other.len() {
            return Err(Error::Mismatch(format!("sequence lengths {} and {}", self.len(), other.len())));
        }
        Ok(PolySeq(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect()))
    }

    pub fn add(&self, other: &PolySeq) -> Result<PolySeq> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &PolySeq) -> Result<PolySeq> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn mul(&self, other: &PolySeq) -> Result<PolySeq> {
        self.zip(other, poly_mul)
    }

    pub fn scale(&self, c: &Rational) -> PolySeq {
        PolySeq(self.0.iter().map(|a| a.scale(c)).collect())
    }

    /// Largest variable index used by entry `m`, if any.
    pub fn max_var_in(&self, m: usize) -> Option<u32> {
        self.entry(m).keys().filter_map(Monomial::max_var).max()
    }
}

impl fmt::Display for PolySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if a.is_zero() {
                f.write_str("0")?;
            } else {
                write!(f, "{a}")?;
            }
        }
        f.write_str(")")
    }
}

/// `(a_1, a_2, ...) ↦ (0, a_1, a_1 + a_2, ...)`.
pub fn p_r(a: &PolySeq) -> PolySeq {
    let mut out = Vec::with_capacity(a.len());
    let mut acc = Poly::zero();
    for entry in &a.0 {
        out.push(acc.clone());
        acc = acc + entry.clone();
    }
    PolySeq(out)
}

/// `P(a)P(b) − P(aP(b)) − P(P(a)b) − P(ab)`.
pub fn rb_defect(a: &PolySeq, b: &PolySeq) -> Result<PolySeq> {
    let (pa, pb) = (p_r(a), p_r(b));
    pa.mul(&pb)?
        .sub(&p_r(&a.mul(&pb)?))?
        .sub(&p_r(&pa.mul(b)?))?
        .sub(&p_r(&a.mul(b)?))
}

/// `(P x)^{[n]}`: `P(x)` for `n = 1`, then `P(x · previous)`.
pub fn iterate_pn(n: u32, len: usize) -> PolySeq {
    let x = PolySeq::generator(len);
    let mut a = p_r(&x);
    for _ in 1..n {
        a = p_r(&x.mul(&a).expect("equal lengths"));
    }
    a
}

/// `P(x^k)`.
pub fn power_sum_seq(k: u32, len: usize) -> PolySeq {
    p_r(&PolySeq::generator_power(len, k))
}

/// `e_n(x_1, ..., x_m)` by summing over `n`-subsets.
pub fn elementary(n: u32, m: u32) -> Poly {
    let mut out = Poly::zero();
    let mut chosen = Vec::new();
    subsets(1, m, n as usize, &mut chosen, &mut out);
    out
}

fn subsets(from: u32, m: u32, need: usize, chosen: &mut Vec<u32>, out: &mut Poly) {
    if chosen.len() == need {
        out.add_term(Monomial::from_pairs(chosen.iter().map(|&v| (v, 1))), Rational::one());
        return;
    }
    for v in from..=m {
        chosen.push(v);
        subsets(v + 1, m, need, chosen, out);
        chosen.pop();
    }
}

/// `p_k(x_1, ..., x_m)`.
pub fn power_sum(k: u32, m: u32) -> Poly {
    (1..=m).map(|v| (Monomial::var(v, k), Rational::one())).collect()
}

pub const WARING_DEGREE_CAP: u32 = 12;

/// Coefficients of `t^0..t^deg` on both sides of Waring's formula.
#[derive(Debug, Clone, PartialEq)]
pub struct WaringExpansion {
    pub exp_side: Vec<Poly>,
    pub elementary_side: Vec<Poly>,
}

impl WaringExpansion {
    pub fn holds(&self) -> bool {
        self.exp_side == self.elementary_side
    }
}

/// Multiplies power series in `t` with polynomial coefficients, dropping
/// everything past `t^deg`.
fn series_mul(a: &[Poly], b: &[Poly], deg: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= deg {
                out[i + j] = out[i + j].clone() + poly_mul(x, y);
            }
        }
    }
    out
}

/// Expands `exp(−Σ_k (−1)^k t^k p_k / k)` as `Σ_j S^j / j!` and sets it
/// beside `Σ_n e_n t^n`.
pub fn waring_expansion(m: u32, deg: u32) -> Result<WaringExpansion> {
    if deg > WARING_DEGREE_CAP {
        return Err(Error::DegreeOverflow { degree: deg, cap: WARING_DEGREE_CAP });
    }
    let d = deg as usize;
    let mut s = vec![Poly::zero(); d + 1];
    for k in 1..=deg {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        s[k as usize] = power_sum(k, m).scale(&Rational::new(sign.into(), k.into()));
    }
    let mut exp_side = vec![Poly::zero(); d + 1];
    exp_side[0] = poly_const(Rational::one());
    let mut power = exp_side.clone();
    for j in 1..=d {
        power = series_mul(&power, &s, d);
        let inv = Rational::new(1.into(), factorial(j as u32));
        for (acc, term) in exp_side.iter_mut().zip(&power) {
            *acc = acc.clone() + term.scale(&inv);
        }
    }
    let elementary_side = (0..=deg).map(|n| elementary(n, m)).collect();
    Ok(WaringExpansion { exp_side, elementary_side })
}

pub fn waring_check(m: u32, deg: u32) -> Result<bool> {
    Ok(waring_expansion(m, deg)?.holds())
}
