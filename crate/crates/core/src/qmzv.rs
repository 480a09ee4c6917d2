//! q-analogs `ζ_q(α) = Σ_{n_1<⋯<n_k} Π_p (q^{n_p}/[n_p]_q)^{α_p}`, the
//! q-shuffle algebra on words in `{ρ, y}`, and numeric checks of the
//! identities relating them.
//!
//! Tail certificate: for `n > N` we have `x_n ≤ c q^n` with
//! `c = (1−q)/(1−q^{N+1})`. Majorants `U_r(t)`, `t = n − N`, are polynomials
//! with nonnegative coefficients: a zero exponent multiplies by `t` and adds
//! `G_r(N)`, a positive exponent `a` collapses to the constant
//! `G_r(N) + c^a q^{a(N+1)} Σ_e u_e Σ_{j≥0} j^e q^{aj}`, and the last level
//! gives the tail itself.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Rational};
use crate::composition::Lwc;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::mzv::{self, Relation, RelationReport, ZetaSymbol};
use crate::nested::{EvalOptions, Evaluation, PrefixSums};
use crate::qpoly::{short_rational, QPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Rho,
    Y,
}

/// A word in `ρ` and `y`; the empty word is the unit `𝟙`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RhoYWord(Vec<Letter>);

impl RhoYWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        RhoYWord(letters)
    }

    pub fn unit() -> Self {
        RhoYWord(Vec::new())
    }

    /// `ρ^s y^m`.
    pub fn rho_y(s: u32, m: u32) -> Self {
        let mut w = vec![Letter::Rho; s as usize];
        w.extend(std::iter::repeat_n(Letter::Y, m as usize));
        RhoYWord(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &RhoYWord) -> RhoYWord {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        RhoYWord(w)
    }

    fn prepend(&self, l: Letter) -> RhoYWord {
        let mut w = Vec::with_capacity(self.0.len() + 1);
        w.push(l);
        w.extend_from_slice(&self.0);
        RhoYWord(w)
    }

    /// Starts with `ρ`. The unit is admissible too.
    pub fn is_admissible(&self) -> bool {
        self.0.first() != Some(&Letter::Y)
    }

    /// Reads maximal runs: each `y` closes an entry equal to the number of
    /// `ρ`s since the previous `y`; the entries are then reversed.
    pub fn to_index(&self) -> Result<Lwc> {
        if !self.is_admissible() {
            return Err(Error::NotEvaluable(format!("{self} does not start with r")));
        }
        if self.0.last() == Some(&Letter::Rho) {
            return Err(Error::NotEvaluable(format!("{self} ends with r")));
        }
        let mut parts = Vec::new();
        let mut run = 0;
        for l in &self.0 {
            match l {
                Letter::Rho => run += 1,
                Letter::Y => {
                    parts.push(run);
                    run = 0;
                }
            }
        }
        parts.reverse();
        Lwc::new(parts)
    }

    /// Inverse of [`RhoYWord::to_index`].
    pub fn from_index(alpha: &Lwc) -> Self {
        let mut w = Vec::new();
        for &s in alpha.parts().iter().rev() {
            w.extend(std::iter::repeat_n(Letter::Rho, s as usize));
            w.push(Letter::Y);
        }
        RhoYWord(w)
    }

    /// All words of length exactly `n`.
    pub fn all_of_length(n: usize) -> Vec<RhoYWord> {
        (0..1u32 << n)
            .map(|bits| {
                RhoYWord((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { Letter::Y } else { Letter::Rho }).collect())
            })
            .collect()
    }
}

impl Ord for RhoYWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for RhoYWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `rryry`; the unit prints as `1`.
impl fmt::Display for RhoYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::Rho => "r",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for RhoYWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(RhoYWord::unit());
        }
        s.chars()
            .map(|c| match c {
                'r' | 'ρ' => Ok(Letter::Rho),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse(format!("unexpected letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(RhoYWord)
    }
}

pub type QComb = LinComb<RhoYWord, QPoly>;

/// `2·ryry + (1 - q)·ryy`.
pub fn format_qcomb(x: &QComb) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in x.iter().enumerate() {
        let constant = c.degree() == Some(0);
        if constant {
            let v = &c.coeffs()[0];
            let sign = if v.is_negative() { "-" } else { "+" };
            if i == 0 {
                if v.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if !v.abs().is_one() {
                out.push_str(&format!("{}·", short_rational(&v.abs())));
            }
        } else {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({c})·"));
        }
        out.push_str(&w.to_string());
    }
    out
}

/// The q-shuffle product, exact in `q`.
pub fn qshuffle(u: &RhoYWord, v: &RhoYWord) -> QComb {
    let mut memo = HashMap::new();
    qshuffle_rec(u.letters(), v.letters(), &mut memo)
}

type Memo<'a> = HashMap<(&'a [Letter], &'a [Letter]), QComb>;

fn qshuffle_rec<'a>(u: &'a [Letter], v: &'a [Letter], memo: &mut Memo<'a>) -> QComb {
    if u.is_empty() {
        return QComb::singleton(RhoYWord(v.to_vec()));
    }
    if v.is_empty() {
        return QComb::singleton(RhoYWord(u.to_vec()));
    }
    if let Some(hit) = memo.get(&(u, v)) {
        return hit.clone();
    }
    let out = if u[0] == Letter::Y {
        qshuffle_rec(&u[1..], v, memo).map_keys(|w| w.prepend(Letter::Y))
    } else if v[0] == Letter::Y {
        qshuffle_rec(u, &v[1..], memo).map_keys(|w| w.prepend(Letter::Y))
    } else {
        let mut inner = qshuffle_rec(&u[1..], v, memo);
        inner = inner + qshuffle_rec(u, &v[1..], memo);
        inner.add_scaled(&qshuffle_rec(&u[1..], &v[1..], memo), &QPoly::one_minus_q());
        inner.map_keys(|w| w.prepend(Letter::Rho))
    };
    memo.insert((u, v), out.clone());
    out
}

/// Bilinear extension of [`qshuffle`].
pub fn qshuffle_comb(x: &QComb, y: &QComb) -> QComb {
    x.bilinear(y, qshuffle)
}

/// Sets `q = 1` in every coefficient.
pub fn at_q_one(x: &QComb) -> LinComb<RhoYWord> {
    x.iter().map(|(w, c)| (w.clone(), c.at_one())).collect()
}

/// `ρ^a y^m ⧢ ρ^b y^n` at `q = 1` in closed form.
pub fn q1_word_formula(a: u32, b: u32, m: u32, n: u32) -> Result<LinComb<RhoYWord>> {
    if a == 0 || b == 0 || m == 0 || n == 0 {
        return Err(Error::Precondition(format!("a, b, m, n >= 1 violated ({a}, {b}, {m}, {n})")));
    }
    let mut out = LinComb::zero();
    for i in 0..b {
        let c = binomial(i64::from(a + i) - 1, i64::from(i));
        out.add_term(RhoYWord::rho_y(a + i, m).concat(&RhoYWord::rho_y(b - i, n)), Rational::from_integer(c));
    }
    for j in 0..a {
        let c = binomial(i64::from(b + j) - 1, i64::from(j));
        out.add_term(RhoYWord::rho_y(b + j, n).concat(&RhoYWord::rho_y(a - j, m)), Rational::from_integer(c));
    }
    Ok(out)
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::QOutOfRange(q))
    }
}

/// `Σ_{j≥0} j^e r^j = A_e(r)/(1−r)^{e+1}` with Eulerian polynomials `A_e`.
fn power_geometric(e: usize, r: f64, one_minus_r: f64) -> f64 {
    let mut a = vec![1.0];
    for k in 1..=e {
        // A_k = r((1−r)A'_{k−1} + k A_{k−1})
        let mut next = vec![0.0; a.len() + 1];
        for (i, &c) in a.iter().enumerate() {
            next[i + 1] += k as f64 * c;
            if i > 0 {
                next[i] += i as f64 * c;
                next[i + 1] -= i as f64 * c;
            }
        }
        a = next;
    }
    let num = a.iter().rev().fold(0.0, |acc, c| acc * r + c);
    num / one_minus_r.powi(e as i32 + 1)
}

fn q_tail(exps: &[u32], prefix: &[f64], cutoff: u64, q: f64) -> f64 {
    let lnq = q.ln();
    let one_minus_q = -lnq.exp_m1();
    let c = one_minus_q / -((cutoff + 1) as f64 * lnq).exp_m1();
    let mut u = vec![1.0];
    let last = exps.len() - 1;
    for (r, &a) in exps.iter().enumerate() {
        if a == 0 {
            let mut next = vec![prefix[r + 1]];
            next.extend_from_slice(&u);
            u = next;
            continue;
        }
        let a = f64::from(a);
        let ratio = (a * lnq).exp();
        let one_minus_ratio = -(a * lnq).exp_m1();
        let lead = c.powf(a) * (a * (cutoff + 1) as f64 * lnq).exp();
        let sum: f64 = u
            .iter()
            .enumerate()
            .map(|(e, &ue)| ue * power_geometric(e, ratio, one_minus_ratio))
            .sum();
        if r == last {
            return lead * sum;
        }
        u = vec![prefix[r + 1] + lead * sum];
    }
    unreachable!("an LWC ends with a positive exponent")
}

struct QStream<'a> {
    exps: &'a [u32],
    max_exp: usize,
    q: f64,
    lnq: f64,
    one_minus_q: f64,
    sums: PrefixSums,
    pows: Vec<f64>,
}

impl<'a> QStream<'a> {
    fn new(exps: &'a [u32], q: f64) -> Self {
        let max_exp = exps.iter().copied().max().unwrap_or(0) as usize;
        let lnq = q.ln();
        QStream {
            exps,
            max_exp,
            q,
            lnq,
            one_minus_q: -lnq.exp_m1(),
            sums: PrefixSums::new(exps.len()),
            pows: vec![1.0; max_exp + 1],
        }
    }

    fn advance_to(&mut self, target: u64) {
        while self.sums.n() < target {
            let t = (self.sums.n() + 1) as f64 * self.lnq;
            let x = t.exp() * self.one_minus_q / -t.exp_m1();
            for k in 1..=self.max_exp {
                self.pows[k] = self.pows[k - 1] * x;
            }
            let (pows, exps) = (&self.pows, self.exps);
            self.sums.push(|r| pows[exps[r - 1] as usize]);
        }
    }

    /// The evaluation and the rounding part of its tail bound.
    fn evaluation(&self) -> (Evaluation, f64) {
        let prefix = self.sums.prefix();
        let value = *prefix.last().expect("nonempty");
        let tail = q_tail(self.exps, &prefix, self.sums.n(), self.q);
        let rounding = value * f64::EPSILON * (self.exps.len() * (self.max_exp + 8)) as f64;
        (Evaluation { value, tail_bound: tail + rounding, cutoff: self.sums.n() }, rounding)
    }
}

fn validate(alpha: &Lwc, q: f64) -> Result<()> {
    check_q(q)?;
    if !is_convergent_q(alpha.parts()) {
        return Err(Error::Divergent { symbol: format!("ζ_q{alpha}") });
    }
    Ok(())
}

/// Every suffix sum positive. For an LWC this always holds.
pub fn is_convergent_q(exps: &[u32]) -> bool {
    let mut acc = 0u64;
    for &a in exps.iter().rev() {
        acc += u64::from(a);
        if acc == 0 {
            return false;
        }
    }
    true
}

/// Partial sum up to `cutoff` with a certified tail.
pub fn zeta_q_at_cutoff(alpha: &Lwc, q: f64, cutoff: u64) -> Result<Evaluation> {
    validate(alpha, q)?;
    if alpha.is_empty() {
        return Ok(Evaluation { value: 1.0, tail_bound: 0.0, cutoff: 0 });
    }
    let mut s = QStream::new(alpha.parts(), q);
    s.advance_to(cutoff.max(1));
    Ok(s.evaluation().0)
}

/// `ζ_q(α)` to within `opts.tol`. The empty index gives `1`.
pub fn zeta_q(alpha: &Lwc, q: f64, opts: &EvalOptions) -> Result<Evaluation> {
    validate(alpha, q)?;
    if alpha.is_empty() {
        return Ok(Evaluation { value: 1.0, tail_bound: 0.0, cutoff: 0 });
    }
    let mut s = QStream::new(alpha.parts(), q);
    let mut target = opts.start_cutoff.clamp(1, 64).min(opts.max_cutoff);
    loop {
        s.advance_to(target);
        let (ev, rounding) = s.evaluation();
        if ev.tail_bound <= opts.tol {
            return Ok(ev);
        }
        // More terms cannot beat the rounding floor.
        if target >= opts.max_cutoff || rounding > opts.tol {
            return Err(Error::ToleranceUnreachable {
                symbol: format!("ζ_q{alpha}"),
                tol: opts.tol,
                cutoff: ev.cutoff,
                value: ev.value,
                tail_bound: ev.tail_bound,
            });
        }
        target = target.saturating_mul(2).min(opts.max_cutoff);
    }
}

pub fn zeta_q_word(w: &RhoYWord, q: f64, opts: &EvalOptions) -> Result<Evaluation> {
    zeta_q(&w.to_index()?, q, opts)
}

pub fn zeta_q_symbol(sym: &ZetaSymbol, q: f64, opts: &EvalOptions) -> Result<Evaluation> {
    zeta_q(&sym.to_lwc(), q, opts)
}

/// Keeps the partial enclosure when the cap is hit.
fn enclosure(r: Result<Evaluation>) -> Result<Evaluation> {
    match r {
        Err(Error::ToleranceUnreachable { cutoff, value, tail_bound, .. }) => {
            Ok(Evaluation { value, tail_bound, cutoff })
        }
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub residual: f64,
    pub tail_bound: f64,
    pub verified: bool,
}

impl Comparison {
    fn new(l: Evaluation, r: Evaluation, scale_l: f64, scale_r: f64, tol: f64) -> Self {
        let (lv, rv) = (l.value * scale_l, r.value * scale_r);
        let residual = (lv - rv).abs();
        let tail_bound = l.tail_bound * scale_l + r.tail_bound * scale_r;
        Comparison { lhs_value: lv, rhs_value: rv, residual, tail_bound, verified: residual <= tol + tail_bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub lhs: String,
    pub rhs: String,
    pub q: f64,
    pub tolerance: f64,
    /// `ζ_q(t; s−1)` against `ζ_q(s̄; t̄−1)` as written.
    pub literal: Comparison,
    /// Both sides divided by `(1−q)^{weight}`.
    pub normalized: Comparison,
    pub verified: bool,
}

impl DualityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// The two index sides of the duality for `s, t ∈ ℙ^k`.
pub fn duality_pair(s: &[u32], t: &[u32]) -> Result<(ZetaSymbol, ZetaSymbol)> {
    if s.len() != t.len() || s.is_empty() || s.iter().chain(t).any(|&x| x == 0) {
        return Err(Error::Precondition(format!(
            "duality needs positive tuples of equal length, got {s:?} and {t:?}"
        )));
    }
    let lhs = ZetaSymbol::new(t.to_vec(), s.iter().map(|x| x - 1).collect())?;
    let rhs = ZetaSymbol::new(s.iter().rev().copied().collect(), t.iter().rev().map(|x| x - 1).collect())?;
    Ok((lhs, rhs))
}

pub fn duality_check(s: &[u32], t: &[u32], q: f64, tol: f64, opts: &EvalOptions) -> Result<DualityReport> {
    check_q(q)?;
    let (lhs, rhs) = duality_pair(s, t)?;
    let lw = lhs.to_lwc().size() as i32;
    let rw = rhs.to_lwc().size() as i32;
    let one_minus_q = -q.ln().exp_m1();
    let (sl, sr) = (one_minus_q.powi(-lw), one_minus_q.powi(-rw));
    // Tight enough for both forms after scaling.
    let target = tol / (10.0 * sl.max(sr).max(1.0));
    let o = EvalOptions { tol: target.min(opts.tol), ..*opts };
    let l = enclosure(zeta_q_symbol(&lhs, q, &o))?;
    let r = enclosure(zeta_q_symbol(&rhs, q, &o))?;
    let literal = Comparison::new(l, r, 1.0, 1.0, tol);
    let normalized = Comparison::new(l, r, sl, sr, tol);
    Ok(DualityReport {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        q,
        tolerance: tol,
        verified: normalized.verified,
        literal,
        normalized,
    })
}

/// The stuffle pattern with `ζ` read as `ζ_q`, under the classical hypotheses.
pub fn stuffle_q_relation(a: u32, b: u32, m: u32, n: u32) -> Result<Relation> {
    let mut r = mzv::stuffle_relation(a, b, m, n)?;
    r.name = format!("q-{}", r.name);
    Ok(r)
}

/// The same pattern for any `a, b ≥ 1`; q-series converge there as well.
pub fn stuffle_q_pattern(a: u32, b: u32, m: u32, n: u32) -> Result<Relation> {
    let mut r = mzv::stuffle_pattern(a, b, m, n)?;
    r.name = format!("q-{}", r.name);
    Ok(r)
}

pub fn verify_q(relation: &Relation, q: f64, tol: f64, opts: &EvalOptions) -> Result<RelationReport> {
    check_q(q)?;
    relation.verify_with(tol, opts, |z, o| zeta_q_symbol(z, q, o))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordTerm {
    pub coeff: String,
    pub word: String,
    pub value: f64,
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub u: String,
    pub v: String,
    pub q: f64,
    pub expansion: Vec<WordTerm>,
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub residual: f64,
    pub tail_bound: f64,
    pub tolerance: f64,
    pub verified: bool,
}

impl HomomorphismReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Compares `ζ_q(u)ζ_q(v)` with `ζ_q` applied to `u ⧢ v`.
pub fn homomorphism_check(u: &RhoYWord, v: &RhoYWord, q: f64, tol: f64, opts: &EvalOptions) -> Result<HomomorphismReport> {
    check_q(q)?;
    let prod = qshuffle(u, v);
    let mut words: Vec<RhoYWord> = vec![u.clone(), v.clone()];
    words.extend(prod.keys().cloned());
    words.sort();
    words.dedup();
    for w in &words {
        w.to_index()?;
    }
    let coeffs: Vec<(RhoYWord, f64)> = prod.iter().map(|(w, c)| (w.clone(), c.eval_f64(q))).collect();
    let mass: f64 = 2.0 + coeffs.iter().map(|(_, c)| c.abs()).sum::<f64>();
    let o = EvalOptions { tol: (tol / (10.0 * mass)).min(opts.tol), ..*opts };
    let evals: Vec<Evaluation> = words
        .par_iter()
        .map(|w| enclosure(zeta_q_word(w, q, &o)))
        .collect::<Result<_>>()?;
    let table: HashMap<&RhoYWord, Evaluation> = words.iter().zip(evals).collect();
    let (eu, ev) = (table[u], table[v]);
    let lhs_value = eu.value * ev.value;
    let lhs_width = (eu.value + eu.tail_bound) * (ev.value + ev.tail_bound) - lhs_value;
    let mut rhs_value = 0.0;
    let mut rhs_width = 0.0;
    let mut expansion = Vec::new();
    for ((w, c), (_, cf)) in prod.iter().zip(&coeffs) {
        let e = table[w];
        rhs_value += cf * e.value;
        rhs_width += cf.abs() * e.tail_bound;
        expansion.push(WordTerm { coeff: c.to_string(), word: w.to_string(), value: e.value, tail: e.tail_bound });
    }
    let residual = (lhs_value - rhs_value).abs();
    let tail_bound = lhs_width + rhs_width;
    Ok(HomomorphismReport {
        u: u.to_string(),
        v: v.to_string(),
        q,
        expansion,
        lhs_value,
        rhs_value,
        residual,
        tail_bound,
        tolerance: tol,
        verified: residual <= tol + tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn w(s: &str) -> RhoYWord {
        s.parse().unwrap()
    }

    fn l(s: &str) -> Lwc {
        s.parse().unwrap()
    }

    fn opts() -> EvalOptions {
        EvalOptions::with_tol(1e-13)
    }

    #[test]
    fn word_index_map() {
        assert_eq!(w("ry").to_index().unwrap(), l("(1)"));
        assert_eq!(w("rryry").to_index().unwrap(), l("(1,2)"));
        assert_eq!(w("ryy").to_index().unwrap(), l("(0,1)"));
        assert_eq!(w("1").to_index().unwrap(), Lwc::empty());
        assert!(matches!(w("ryr").to_index(), Err(Error::NotEvaluable(_))));
        assert!(matches!(w("yry").to_index(), Err(Error::NotEvaluable(_))));
        for n in 0..=6 {
            for a in Lwc::all_of_size(n, 2) {
                assert_eq!(RhoYWord::from_index(&a).to_index().unwrap(), a);
            }
        }
        assert_eq!(RhoYWord::all_of_length(3).len(), 8);
        assert_eq!(w("rryry").to_string(), "rryry");
    }

    #[test]
    fn shuffle_examples() {
        let r = qshuffle(&w("r"), &w("r"));
        assert_eq!(format_qcomb(&r), "(1 - q)·r + 2·rr");
        assert_eq!(format_qcomb(&qshuffle(&w("1"), &w("ryy"))), "ryy");
        let s = qshuffle(&w("ry"), &w("ry"));
        assert_eq!(format_qcomb(&s), "(1 - q)·ryy + 2·ryry");
        assert_eq!(at_q_one(&s), LinComb::term(w("ryry"), int(2)));
    }

    fn words_up_to(n: usize) -> Vec<RhoYWord> {
        (0..=n).flat_map(RhoYWord::all_of_length).collect()
    }

    #[test]
    fn commutative_and_associative() {
        let small = words_up_to(3);
        for u in &small {
            for v in &small {
                assert_eq!(qshuffle(u, v), qshuffle(v, u), "{u} {v}");
            }
        }
        let tiny = words_up_to(2);
        for u in &tiny {
            for v in &tiny {
                for x in &tiny {
                    let left = qshuffle_comb(&qshuffle(u, v), &QComb::singleton(x.clone()));
                    let right = qshuffle_comb(&QComb::singleton(u.clone()), &qshuffle(v, x));
                    assert_eq!(left, right, "{u} {v} {x}");
                }
            }
        }
    }

    #[test]
    fn q_one_formula() {
        for a in 1..=3 {
            for b in 1..=3 {
                for m in 1..=3 {
                    for n in 1..=3 {
                        let rec = at_q_one(&qshuffle(&RhoYWord::rho_y(a, m), &RhoYWord::rho_y(b, n)));
                        assert_eq!(q1_word_formula(a, b, m, n).unwrap(), rec, "{a} {b} {m} {n}");
                    }
                }
            }
        }
        let f = q1_word_formula(1, 2, 1, 1).unwrap();
        assert_eq!(f.to_string(), "2·rryry + ryrry");
        assert!(q1_word_formula(0, 1, 1, 1).is_err());
    }

    fn direct(f: impl Fn(u64) -> f64) -> f64 {
        (1..4000).map(f).sum()
    }

    fn x(q: f64, n: u64) -> f64 {
        q.powi(n as i32) * (1.0 - q) / (1.0 - q.powi(n as i32))
    }

    #[test]
    fn single_sums() {
        let q = 0.5;
        let z = zeta_q(&l("(1)"), q, &opts()).unwrap();
        assert!((z.value - direct(|n| x(q, n))).abs() < 1e-13);
        let z = zeta_q(&l("(0,2)"), q, &opts()).unwrap();
        assert!((z.value - direct(|n| (n - 1) as f64 * x(q, n).powi(2))).abs() < 1e-13);
        // Literal double sum.
        let mut lit = 0.0;
        for n2 in 1..200u64 {
            for n1 in 1..n2 {
                lit += x(q, n1) * x(q, n2).powi(2);
            }
        }
        let z = zeta_q(&l("(1,2)"), q, &opts()).unwrap();
        assert!((z.value - lit).abs() < 1e-13);
        assert!(zeta_q(&l("(1)"), 1.0, &opts()).is_err());
        assert_eq!(zeta_q(&Lwc::empty(), 0.3, &opts()).unwrap().value, 1.0);
    }

    #[test]
    fn tail_is_an_enclosure() {
        for q in [0.25, 0.5, 0.9] {
            for a in ["(1)", "(0,1)", "(0,0,1)", "(2,0,1)", "(1,0,0,2)", "(0,3)"] {
                let exact = zeta_q(&l(a), q, &EvalOptions::with_tol(1e-12)).unwrap();
                for cutoff in [1, 3, 10, 40] {
                    let e = zeta_q_at_cutoff(&l(a), q, cutoff).unwrap();
                    assert!(e.value <= exact.value + 1e-13, "{a} {q} {cutoff}");
                    assert!(e.value + e.tail_bound >= exact.value - 1e-13, "{a} {q} {cutoff}");
                }
            }
        }
    }

    #[test]
    fn tends_to_zeta_as_q_rises() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let errs: Vec<f64> = [0.9, 0.99, 0.999]
            .iter()
            .map(|&q| (zeta_q(&l("(2)"), q, &EvalOptions::with_tol(1e-10)).unwrap().value - z2).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn homomorphism_small() {
        for (u, v) in [("ry", "ry"), ("rry", "ry"), ("1", "ryy"), ("ryy", "rry")] {
            let r = homomorphism_check(&w(u), &w(v), 0.5, 1e-10, &opts()).unwrap();
            assert!(r.verified, "{u} {v} {r:?}");
        }
        assert!(homomorphism_check(&w("yr"), &w("ry"), 0.5, 1e-8, &opts()).is_err());
    }

    #[test]
    fn duality_forms() {
        let r = duality_check(&[1], &[1], 0.5, 1e-10, &opts()).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.literal.verified && r.normalized.verified);
        let r = duality_check(&[2], &[1], 0.5, 1e-10, &opts()).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("ζ(1;1)", "ζ(2;0)"));
        assert!(r.normalized.verified, "{r:?}");
        assert!(!r.literal.verified, "{r:?}");
        let r = duality_check(&[1, 2], &[2, 1], 0.5, 1e-10, &opts()).unwrap();
        assert!(r.verified, "{r:?}");
    }

    #[test]
    fn stuffle_q() {
        let rel = stuffle_q_relation(3, 3, 1, 1).unwrap();
        let rep = verify_q(&rel, 0.5, 1e-8, &opts()).unwrap();
        assert!(rep.verified, "{rep:?}");
        let rep = verify_q(&rel.perturbed(Rational::new(1.into(), 100.into())), 0.5, 1e-8, &opts()).unwrap();
        assert!(!rep.verified);
        let rep = verify_q(&stuffle_q_pattern(1, 2, 0, 0).unwrap(), 0.5, 1e-10, &opts()).unwrap();
        assert!(rep.verified, "{rep:?}");
        assert!(stuffle_q_relation(1, 2, 0, 0).is_err());
    }
}
