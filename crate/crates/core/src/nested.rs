//! Streaming evaluation of nested sums
//! `Σ_{n_1<⋯<n_L} n_1^{-a_1} ⋯ n_L^{-a_L}` with certified tails.
//!
//! The running prefix sums `G_r(n) = Σ_{m≤n} m^{-a_r} G_{r−1}(m−1)` are
//! advanced together, one `n` at a time, with compensated summation.
//!
//! Tail certificate: put `u = x/N`, `ℓ = ln u` and define majorants
//! `U_0 = 1`, `U_r(x) = G_r(N) + ∫_N^x t^{-a_r} U_{r−1}(t) dt`. Each `U_r` is
//! nondecreasing, and since `t^{-a} U(t) ≥ m^{-a} U(m−1)` on `[m−1, m]` we
//! get `G_r(n) ≤ U_r(n)` for `n ≥ N`. The remainder of the full sum is then at
//! most `∫_N^∞ t^{-a_L} U_{L−1}(t) dt`. Every `U_r` is a finite sum of
//! `c·u^e·ℓ^d`, so all integrals are exact.

use crate::error::{Error, Result};

/// A term `c · u^e · ℓ^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    c: f64,
    e: i64,
    d: u32,
}

/// `∫_1^y u^p ℓ^d du` as a combination of terms in `y` (lower limit folded
/// into a constant term).
fn integrate_from_one(p: i64, d: u32, c: f64, out: &mut Vec<Term>) {
    if p == -1 {
        out.push(Term { c: c / f64::from(d + 1), e: 0, d: d + 1 });
        return;
    }
    let q = (p + 1) as f64;
    // u^{p+1} Σ_j (−1)^j d!/(d−j)! ℓ^{d−j} / q^{j+1}
    let mut falling = 1.0;
    for j in 0..=d {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        out.push(Term { c: c * sign * falling / q.powi(j as i32 + 1), e: p + 1, d: d - j });
        falling *= f64::from(d - j);
    }
    // Value of the antiderivative at u = 1: only ℓ^0 survives.
    let dfact: f64 = (1..=d).map(f64::from).product();
    let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
    out.push(Term { c: -c * sign * dfact / q.powi(d as i32 + 1), e: 0, d: 0 });
}

/// `∫_1^∞ u^p ℓ^d du`, finite only for `p < −1`.
fn integral_to_infinity(p: i64, d: u32) -> Option<f64> {
    if p >= -1 {
        return None;
    }
    let dfact: f64 = (1..=d).map(f64::from).product();
    Some(dfact / ((-p - 1) as f64).powi(d as i32 + 1))
}

fn simplify(terms: Vec<Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    let mut sorted = terms;
    sorted.sort_by_key(|a| (a.e, a.d));
    for t in sorted {
        match out.last_mut() {
            Some(last) if last.e == t.e && last.d == t.d => last.c += t.c,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.c != 0.0);
    out
}

/// Certified upper bound on `Σ_{n_L > N}` given the prefix sums at `N`.
/// `None` means some majorant term does not decay, i.e. the sum diverges.
fn tail_bound(exps: &[u32], prefix: &[f64], cutoff: u64) -> Option<f64> {
    let n = cutoff as f64;
    let mut u: Vec<Term> = vec![Term { c: 1.0, e: 0, d: 0 }];
    let last = exps.len() - 1;
    for (r, &a) in exps.iter().enumerate() {
        // t^{-a} dt = N^{1−a} u^{-a} du.
        let scale = n.powi(1 - a as i32);
        if r == last {
            let mut total = 0.0;
            for t in &u {
                total += t.c * scale * integral_to_infinity(t.e - i64::from(a), t.d)?;
            }
            return Some(total.max(0.0));
        }
        let mut next = vec![Term { c: prefix[r + 1], e: 0, d: 0 }];
        for t in &u {
            integrate_from_one(t.e - i64::from(a), t.d, t.c * scale, &mut next);
        }
        u = simplify(next);
    }
    unreachable!("loop returns at the last exponent")
}

/// Exact convergence test: every suffix `r..L` has `Σ_{j≥r} (a_j − 1) ≥ 1`.
pub fn is_convergent(exps: &[u32]) -> bool {
    let mut acc: i64 = 0;
    for &a in exps.iter().rev() {
        acc += i64::from(a) - 1;
        if acc < 1 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// Partial sum over `n_L ≤ cutoff`.
    pub value: f64,
    /// The full sum lies in `[value, value + tail_bound]`.
    pub tail_bound: f64,
    pub cutoff: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub tol: f64,
    pub start_cutoff: u64,
    pub max_cutoff: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { tol: 1e-8, start_cutoff: 1 << 10, max_cutoff: 1 << 30 }
    }
}

impl EvalOptions {
    pub fn with_tol(tol: f64) -> Self {
        EvalOptions { tol, ..Default::default() }
    }
}

/// Running prefix sums `G_0 ≡ 1, G_1, ..., G_L` with Neumaier compensation.
#[derive(Debug, Clone)]
pub(crate) struct PrefixSums {
    n: u64,
    sum: Vec<f64>,
    comp: Vec<f64>,
}

impl PrefixSums {
    pub(crate) fn new(depth: usize) -> Self {
        let mut sum = vec![0.0; depth + 1];
        sum[0] = 1.0;
        PrefixSums { n: 0, sum, comp: vec![0.0; depth + 1] }
    }

    pub(crate) fn n(&self) -> u64 {
        self.n
    }

    /// Moves to the next index `n`; level `r` gains `factor(r) · G_{r−1}(n−1)`.
    #[inline]
    pub(crate) fn push(&mut self, factor: impl Fn(usize) -> f64) {
        self.n += 1;
        for r in (1..self.sum.len()).rev() {
            let inner = self.sum[r - 1] + self.comp[r - 1];
            let t = factor(r) * inner;
            let s = self.sum[r] + t;
            if self.sum[r].abs() >= t.abs() {
                self.comp[r] += (self.sum[r] - s) + t;
            } else {
                self.comp[r] += (t - s) + self.sum[r];
            }
            self.sum[r] = s;
        }
    }

    pub(crate) fn prefix(&self) -> Vec<f64> {
        self.sum.iter().zip(&self.comp).map(|(s, c)| s + c).collect()
    }
}

/// Streaming state for `Σ Π n_j^{-a_j}`.
struct Stream<'a> {
    exps: &'a [u32],
    max_exp: usize,
    sums: PrefixSums,
    pows: Vec<f64>,
}

impl<'a> Stream<'a> {
    fn new(exps: &'a [u32]) -> Self {
        let max_exp = exps.iter().copied().max().unwrap_or(0) as usize;
        Stream { exps, max_exp, sums: PrefixSums::new(exps.len()), pows: vec![1.0; max_exp + 1] }
    }

    fn advance_to(&mut self, target: u64) {
        while self.sums.n() < target {
            let inv = 1.0 / (self.sums.n() + 1) as f64;
            for k in 1..=self.max_exp {
                self.pows[k] = self.pows[k - 1] * inv;
            }
            let (pows, exps) = (&self.pows, self.exps);
            self.sums.push(|r| pows[exps[r - 1] as usize]);
        }
    }

    fn evaluation(&self) -> Option<Evaluation> {
        let prefix = self.sums.prefix();
        let value = *prefix.last().expect("nonempty");
        let tail = tail_bound(self.exps, &prefix, self.sums.n())?;
        // Allowance for rounding in the powers and the summation.
        let rounding = value * f64::EPSILON * (self.exps.len() * (self.max_exp + 4)) as f64;
        Some(Evaluation { value, tail_bound: tail + rounding, cutoff: self.sums.n() })
    }
}

fn describe(exps: &[u32]) -> String {
    let parts: Vec<String> = exps.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

fn check(exps: &[u32]) -> Result<()> {
    if exps.is_empty() || !is_convergent(exps) {
        return Err(Error::Divergent { symbol: describe(exps) });
    }
    Ok(())
}

/// Partial sum and certified tail at a fixed cutoff.
pub fn evaluate_at_cutoff(exps: &[u32], cutoff: u64) -> Result<Evaluation> {
    check(exps)?;
    let mut s = Stream::new(exps);
    s.advance_to(cutoff.max(1));
    s.evaluation().ok_or_else(|| Error::Divergent { symbol: describe(exps) })
}

/// Doubles the cutoff from `start_cutoff` until the tail bound is at most
/// `tol`; hitting `max_cutoff` first is an error carrying the partial result.
pub fn evaluate(exps: &[u32], opts: &EvalOptions) -> Result<Evaluation> {
    check(exps)?;
    let mut s = Stream::new(exps);
    let mut target = opts.start_cutoff.max(1).min(opts.max_cutoff);
    loop {
        s.advance_to(target);
        let ev = s.evaluation().ok_or_else(|| Error::Divergent { symbol: describe(exps) })?;
        if ev.tail_bound <= opts.tol {
            return Ok(ev);
        }
        if target >= opts.max_cutoff {
            return Err(Error::ToleranceUnreachable {
                symbol: describe(exps),
                tol: opts.tol,
                cutoff: ev.cutoff,
                value: ev.value,
                tail_bound: ev.tail_bound,
            });
        }
        target = target.saturating_mul(2).min(opts.max_cutoff);
    }
}
