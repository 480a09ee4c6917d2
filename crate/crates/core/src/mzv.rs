//! LWC multiple zeta values `ζ(s; I) = ζ((0^{i_1}, s_1, ..., 0^{i_k}, s_k))`,
//! the relations between them, and a numeric verifier.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial, format_rational, Rational, StirlingTable};
use crate::closed_forms::closed_0a_0b;
use crate::composition::{Block, Lwc};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::nested::{self, EvalOptions, Evaluation};

/// `ζ(s_1, ..., s_k; i_1, ..., i_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZetaSymbol {
    s: Vec<u32>,
    i: Vec<u32>,
}

impl ZetaSymbol {
    pub fn new(s: Vec<u32>, i: Vec<u32>) -> Result<Self> {
        if s.len() != i.len() {
            return Err(Error::InvalidIndex(format!("s has length {}, I has length {}", s.len(), i.len())));
        }
        if s.is_empty() || s.contains(&0) {
            return Err(Error::InvalidIndex(format!("s = {s:?} must be a nonempty list of positive integers")));
        }
        Ok(ZetaSymbol { s, i })
    }

    /// Classical `ζ(s_1, ..., s_k)` with all `i_p = 0`.
    pub fn classical(s: Vec<u32>) -> Result<Self> {
        let i = vec![0; s.len()];
        ZetaSymbol::new(s, i)
    }

    pub fn single(a: u32, m: u32) -> Self {
        ZetaSymbol::new(vec![a], vec![m]).expect("a >= 1 by caller")
    }

    pub fn from_lwc(a: &Lwc) -> Result<Self> {
        let blocks = a.blocks();
        ZetaSymbol::new(blocks.iter().map(|b| b.part).collect(), blocks.iter().map(|b| b.zeros).collect())
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn i(&self) -> &[u32] {
        &self.i
    }

    pub fn to_lwc(&self) -> Lwc {
        let blocks: Vec<Block> = self.s.iter().zip(&self.i).map(|(&s, &z)| Block { zeros: z, part: s }).collect();
        Lwc::from_blocks(&blocks).expect("positive parts")
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    pub fn is_convergent(&self) -> bool {
        nested::is_convergent(self.to_lwc().parts())
    }

    /// Text form accepted by [`FromStr`]: `s_1,...,s_k;i_1,...,i_k`.
    pub fn text(&self) -> String {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("{};{}", join(&self.s), join(&self.i))
    }
}

impl fmt::Display for ZetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ({})", self.text())
    }
}

/// `s_1,...,s_k;i_1,...,i_k` with `;i...` optional (all zeros), and an
/// optional `ζ(...)` wrapper.
impl FromStr for ZetaSymbol {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t
            .strip_prefix("ζ(")
            .or_else(|| t.strip_prefix("zeta("))
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let list = |part: &str| -> Result<Vec<u32>> {
            part.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {x:?} in {text:?}"))))
                .collect()
        };
        match t.split_once(';') {
            Some((s, i)) => ZetaSymbol::new(list(s)?, list(i)?),
            None => ZetaSymbol::classical(list(t)?),
        }
    }
}

/// Product of zeta symbols (possibly a single one), kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZetaProduct(Vec<ZetaSymbol>);

impl ZetaProduct {
    pub fn new(mut factors: Vec<ZetaSymbol>) -> Self {
        factors.sort();
        ZetaProduct(factors)
    }

    pub fn factors(&self) -> &[ZetaSymbol] {
        &self.0
    }
}

impl From<ZetaSymbol> for ZetaProduct {
    fn from(z: ZetaSymbol) -> Self {
        ZetaProduct(vec![z])
    }
}

impl fmt::Display for ZetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, z) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{z}")?;
        }
        Ok(())
    }
}

pub type ZetaComb = LinComb<ZetaProduct>;

/// Value and certified tail of `ζ(s; I)`.
pub fn zeta_lwc(sym: &ZetaSymbol, opts: &EvalOptions) -> Result<Evaluation> {
    nested::evaluate(sym.to_lwc().parts(), opts).map_err(|e| rename(e, sym))
}

pub fn zeta_lwc_at_cutoff(sym: &ZetaSymbol, cutoff: u64) -> Result<Evaluation> {
    nested::evaluate_at_cutoff(sym.to_lwc().parts(), cutoff).map_err(|e| rename(e, sym))
}

fn rename(e: Error, sym: &ZetaSymbol) -> Error {
    match e {
        Error::Divergent { .. } => Error::Divergent { symbol: sym.to_string() },
        Error::ToleranceUnreachable { tol, cutoff, value, tail_bound, .. } => {
            Error::ToleranceUnreachable { symbol: sym.to_string(), tol, cutoff, value, tail_bound }
        }
        other => other,
    }
}

/// A candidate identity `lhs = rhs` between combinations of zeta products.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub name: String,
    pub lhs: ZetaComb,
    pub rhs: ZetaComb,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

fn admissible(a: u32, m: u32, b: u32, n: u32) -> Result<()> {
    require(a >= m + 2, || format!("a >= m+2 violated (a={a}, m={m})"))?;
    require(b >= n + 2, || format!("b >= n+2 violated (b={b}, n={n})"))
}

fn product_of_singles(a: u32, m: u32, b: u32, n: u32) -> ZetaComb {
    LinComb::singleton(ZetaProduct::new(vec![ZetaSymbol::single(a, m), ZetaSymbol::single(b, n)]))
}

/// `ζ(a;m) ζ(b;n)` expanded by the quasi-shuffle `(0^m,a) ∗ (0^n,b)`, with
/// coefficients taken from the closed form.
pub fn stuffle_relation(a: u32, b: u32, m: u32, n: u32) -> Result<Relation> {
    admissible(a, m, b, n)?;
    stuffle_pattern(a, b, m, n)
}

/// The stuffle expansion without the convergence hypotheses, for models in
/// which more symbols converge.
pub fn stuffle_pattern(a: u32, b: u32, m: u32, n: u32) -> Result<Relation> {
    require(a >= 1 && b >= 1, || format!("a, b >= 1 violated (a={a}, b={b})"))?;
    let mut rhs = ZetaComb::zero();
    for (w, c) in closed_0a_0b(a, b, m, n).iter() {
        let lwc = w
            .to_lwc()
            .ok_or_else(|| Error::InvalidIndex(format!("stuffle term {w} does not end positive")))?;
        rhs.add_term(ZetaSymbol::from_lwc(&lwc)?.into(), c.clone());
    }
    Ok(Relation { name: format!("stuffle(a={a}, m={m}, b={b}, n={n})"), lhs: product_of_singles(a, m, b, n), rhs })
}

fn zeta2(s1: u32, s2: u32, i1: u32, i2: u32) -> Result<ZetaProduct> {
    Ok(ZetaSymbol::new(vec![s1, s2], vec![i1, i2])?.into())
}

/// `ζ(a;m) ζ(b;n) = Σ_{i<b} C(a+i−1,i) ζ(b−i,a+i;n,m) + Σ_{j<a} C(b+j−1,j) ζ(a−j,b+j;m,n)`.
pub fn shuffle_relation(a: u32, b: u32, m: u32, n: u32) -> Result<Relation> {
    admissible(a, m, b, n)?;
    let mut rhs = ZetaComb::zero();
    for i in 0..b {
        let c = binomial(i64::from(a + i) - 1, i64::from(i));
        rhs.add_term(zeta2(b - i, a + i, n, m)?, Rational::from_integer(c));
    }
    for j in 0..a {
        let c = binomial(i64::from(b + j) - 1, i64::from(j));
        rhs.add_term(zeta2(a - j, b + j, m, n)?, Rational::from_integer(c));
    }
    Ok(Relation { name: format!("shuffle(a={a}, m={m}, b={b}, n={n})"), lhs: product_of_singles(a, m, b, n), rhs })
}

/// Euler's decomposition `ζ(a)ζ(b) = Σ ...`, the `m = n = 0` shuffle relation.
pub fn euler_decomposition(a: u32, b: u32) -> Result<Relation> {
    require(a >= 2 && b >= 2, || format!("Euler decomposition needs a, b >= 2 (a={a}, b={b})"))?;
    let mut r = shuffle_relation(a, b, 0, 0)?;
    r.name = format!("euler(a={a}, b={b})");
    Ok(r)
}

/// Stuffle expansion minus shuffle expansion, common terms cancelled; the
/// positive part becomes the left side.
pub fn double_shuffle_relation(a: u32, b: u32, m: u32, n: u32) -> Result<Relation> {
    let diff = stuffle_relation(a, b, m, n)?.rhs - shuffle_relation(a, b, m, n)?.rhs;
    let mut lhs = ZetaComb::zero();
    let mut rhs = ZetaComb::zero();
    for (k, c) in diff.iter() {
        if c.is_positive() {
            lhs.add_term(k.clone(), c.clone());
        } else {
            rhs.add_term(k.clone(), -c.clone());
        }
    }
    Ok(Relation { name: format!("double-shuffle(a={a}, m={m}, b={b}, n={n})"), lhs, rhs })
}

/// `ζ(a;m) = Σ_k s(m,k)/m! ζ(a−k) − Σ_k s(m,k)/(m−1)! ζ(a−k+1)`, the second
/// sum absent for `m = 0`.
pub fn stirling_reduce(a: u32, m: u32) -> Result<LinComb<ZetaSymbol>> {
    require(a >= m + 2, || format!("a >= m+2 violated (a={a}, m={m})"))?;
    let table = StirlingTable::new(m as usize);
    let mut out = LinComb::zero();
    let mf = factorial(m);
    for k in 0..=m {
        let s = table.get(m as usize, k as usize);
        if s.is_zero() {
            continue;
        }
        out.add_term(ZetaSymbol::single(a - k, 0), Rational::new(s.clone(), mf.clone()));
        if m > 0 {
            out.add_term(ZetaSymbol::single(a - k + 1, 0), -Rational::new(s, factorial(m - 1)));
        }
    }
    Ok(out)
}

/// `ζ(a;m) ζ(b;n)` as a combination of products `ζ(x) ζ(y)` of classical
/// single zetas (four double sums after expanding both reductions).
pub fn stirling_product(a: u32, m: u32, b: u32, n: u32) -> Result<Relation> {
    admissible(a, m, b, n)?;
    let left = stirling_reduce(a, m)?;
    let right = stirling_reduce(b, n)?;
    let rhs = left.bilinear(&right, |x, y| LinComb::singleton(ZetaProduct::new(vec![x.clone(), y.clone()])));
    Ok(Relation { name: format!("stirling-product(a={a}, m={m}, b={b}, n={n})"), lhs: product_of_singles(a, m, b, n), rhs })
}

/// `ζ(a;m)` against its Stirling reduction.
pub fn stirling_relation(a: u32, m: u32) -> Result<Relation> {
    let rhs = stirling_reduce(a, m)?.map_keys(|z| ZetaProduct::from(z.clone()));
    Ok(Relation {
        name: format!("stirling(a={a}, m={m})"),
        lhs: LinComb::singleton(ZetaSymbol::single(a, m).into()),
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolReport {
    pub symbol: String,
    pub value: f64,
    pub tail: f64,
    pub cutoff: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTerm {
    pub coeff: String,
    pub key: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub name: String,
    pub lhs: Vec<ReportTerm>,
    pub rhs: Vec<ReportTerm>,
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub residual: f64,
    pub tail_bound: f64,
    pub tolerance: f64,
    pub verified: bool,
    pub per_symbol: Vec<SymbolReport>,
}

impl RelationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn report_terms<K: Ord + Clone + fmt::Display>(x: &LinComb<K>) -> Vec<ReportTerm> {
    x.iter().map(|(k, c)| ReportTerm { coeff: format_rational(c), key: k.to_string() }).collect()
}

/// Value of a side and the width of its enclosure, given symbol enclosures
/// `[v, v + t]` with `v ≥ 0`.
pub(crate) fn side_value<K: Ord + Clone>(
    side: &LinComb<K>,
    factors: impl Fn(&K) -> Vec<(f64, f64)>,
) -> (f64, f64) {
    let mut value = 0.0;
    let mut width = 0.0;
    for (k, c) in side.iter() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let (mut lo, mut hi) = (1.0, 1.0);
        for (v, t) in factors(k) {
            lo *= v;
            hi *= v + t;
        }
        value += c * lo;
        width += c.abs() * (hi - lo);
    }
    (value, width)
}

/// Per-symbol tail target so that the combined tail stays well below `tol`.
pub(crate) fn symbol_target<K: Ord + Clone>(tol: f64, sides: &[&LinComb<K>], degree: impl Fn(&K) -> usize) -> f64 {
    let weight: f64 = sides
        .iter()
        .flat_map(|s| s.iter())
        .map(|(k, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * degree(k).max(1) as f64)
        .sum();
    tol / (10.0 * weight.max(1.0))
}

impl Relation {
    pub fn symbols(&self) -> Vec<ZetaSymbol> {
        let mut out: Vec<ZetaSymbol> = self
            .lhs
            .keys()
            .chain(self.rhs.keys())
            .flat_map(|p| p.factors().iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Evaluates both sides. Symbols are evaluated in parallel; each one is
    /// deterministic, so the report does not depend on scheduling.
    pub fn verify(&self, tol: f64, opts: &EvalOptions) -> Result<RelationReport> {
        if let Some(bad) = self.symbols().iter().find(|z| !z.is_convergent()) {
            return Err(Error::Divergent { symbol: bad.to_string() });
        }
        self.verify_with(tol, opts, zeta_lwc)
    }

    /// [`Relation::verify`] with a different evaluator for the symbols.
    pub fn verify_with(
        &self,
        tol: f64,
        opts: &EvalOptions,
        eval: impl Fn(&ZetaSymbol, &EvalOptions) -> Result<Evaluation> + Sync,
    ) -> Result<RelationReport> {
        let symbols = self.symbols();
        let target = symbol_target(tol, &[&self.lhs, &self.rhs], |p: &ZetaProduct| p.factors().len());
        let opts = EvalOptions { tol: target.min(opts.tol), ..*opts };
        let evals: Vec<Evaluation> = symbols
            .par_iter()
            .map(|z| match eval(z, &opts) {
                // Past the cap the partial sum and its tail are still a valid enclosure.
                Err(Error::ToleranceUnreachable { cutoff, value, tail_bound, .. }) => {
                    Ok(Evaluation { value, tail_bound, cutoff })
                }
                other => other,
            })
            .collect::<Result<_>>()?;
        let table: BTreeMap<&ZetaSymbol, Evaluation> = symbols.iter().zip(evals.iter().copied()).collect();
        let lookup = |p: &ZetaProduct| -> Vec<(f64, f64)> {
            p.factors().iter().map(|z| (table[z].value, table[z].tail_bound)).collect()
        };
        let (lv, lw) = side_value(&self.lhs, lookup);
        let (rv, rw) = side_value(&self.rhs, lookup);
        let residual = (lv - rv).abs();
        let tail_bound = lw + rw;
        Ok(RelationReport {
            name: self.name.clone(),
            lhs: report_terms(&self.lhs),
            rhs: report_terms(&self.rhs),
            lhs_value: lv,
            rhs_value: rv,
            residual,
            tail_bound,
            tolerance: tol,
            verified: residual <= tol + tail_bound,
            per_symbol: symbols
                .iter()
                .zip(&evals)
                .map(|(z, e)| SymbolReport { symbol: z.to_string(), value: e.value, tail: e.tail_bound, cutoff: e.cutoff })
                .collect(),
        })
    }

    /// Adds `delta` to the coefficient of the first left-hand term.
    pub fn perturbed(&self, delta: Rational) -> Relation {
        let mut r = self.clone();
        let first = self.lhs.keys().next().cloned();
        if let Some(k) = first {
            r.lhs.add_term(k, delta);
        }
        r.name = format!("{} (perturbed)", self.name);
        r
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `Σ |c|` over both sides, used by callers that size their own tolerances.
pub fn coefficient_mass(r: &Relation) -> BigInt {
    r.lhs.iter().chain(r.rhs.iter()).map(|(_, c)| c.abs().ceil().to_integer()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn z(t: &str) -> ZetaSymbol {
        t.parse().unwrap()
    }

    fn p(t: &str) -> ZetaProduct {
        z(t).into()
    }

    const Z2: f64 = 1.644_934_066_848_226_4;
    const Z3: f64 = 1.202_056_903_159_594_3;
    const Z4: f64 = 1.082_323_233_711_138_2;

    #[test]
    fn symbol_text() {
        assert_eq!(z("3,3;1,0").to_lwc().to_string(), "(0,3,3)");
        assert_eq!(z("2"), z("2;0"));
        assert_eq!(z("ζ(3;1)"), z("3;1"));
        assert_eq!(z("3,3;1,1").to_string(), "ζ(3,3;1,1)");
        assert!("3;1,1".parse::<ZetaSymbol>().is_err());
        assert!("0;1".parse::<ZetaSymbol>().is_err());
        assert!("a".parse::<ZetaSymbol>().is_err());
        assert_eq!(ZetaSymbol::from_lwc(&"(0,0,3,3)".parse().unwrap()).unwrap(), z("3,3;2,0"));
    }

    #[test]
    fn zeta_examples() {
        let opts = EvalOptions::with_tol(1e-6);
        let e = zeta_lwc(&z("3;1"), &opts).unwrap();
        assert!((e.value - (Z2 - Z3)).abs() <= 1e-6 + 1e-12);
        let e = zeta_lwc(&z("4;2"), &opts).unwrap();
        assert!((e.value - (Z2 - 3.0 * Z3 + 2.0 * Z4) / 2.0).abs() <= 1e-6 + 1e-12);
        let e = zeta_lwc(&z("2;0"), &opts).unwrap();
        assert!((e.value - Z2).abs() <= 1e-6);
        assert!(matches!(zeta_lwc(&z("2;1"), &opts), Err(Error::Divergent { .. })));
    }

    #[test]
    fn stuffle_instance_3311() {
        let r = stuffle_relation(3, 3, 1, 1).unwrap();
        let want: ZetaComb = [
            (p("3,3;1,0"), int(4)),
            (p("3,3;2,0"), int(4)),
            (p("3,3;1,1"), int(2)),
            (p("6;1"), int(1)),
            (p("6;2"), int(2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(r.rhs, want);
        let r = stuffle_relation(3, 4, 0, 0).unwrap();
        let want: ZetaComb = [(p("4,3"), int(1)), (p("3,4"), int(1)), (p("7"), int(1))].into_iter().collect();
        assert_eq!(r.rhs, want);
        assert!(matches!(stuffle_relation(2, 4, 1, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn shuffle_instance_3311() {
        let r = shuffle_relation(3, 3, 1, 1).unwrap();
        let want: ZetaComb = [(p("3,3;1,1"), int(2)), (p("2,4;1,1"), int(6)), (p("1,5;1,1"), int(12))]
            .into_iter()
            .collect();
        assert_eq!(r.rhs, want);
        let e = euler_decomposition(2, 2).unwrap();
        let want: ZetaComb = [(p("2,2"), int(2)), (p("1,3"), int(4))].into_iter().collect();
        assert_eq!(e.rhs, want);
        let e = euler_decomposition(2, 3).unwrap();
        let want: ZetaComb = [(p("3,2"), int(1)), (p("2,3"), int(3)), (p("1,4"), int(6))].into_iter().collect();
        assert_eq!(e.rhs, want);
        assert_eq!(euler_decomposition(3, 2).unwrap().rhs, e.rhs);
        assert!(euler_decomposition(1, 3).is_err());
    }

    #[test]
    fn double_shuffle_instance_3311() {
        let r = double_shuffle_relation(3, 3, 1, 1).unwrap();
        let lhs: ZetaComb = [(p("3,3;1,0"), int(4)), (p("3,3;2,0"), int(4)), (p("6;1"), int(1)), (p("6;2"), int(2))]
            .into_iter()
            .collect();
        let rhs: ZetaComb = [(p("2,4;1,1"), int(6)), (p("1,5;1,1"), int(12))].into_iter().collect();
        assert_eq!(r.lhs, lhs);
        assert_eq!(r.rhs, rhs);
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_reduce(5, 0).unwrap(), LinComb::singleton(z("5")));
        let want: LinComb<ZetaSymbol> = [(z("2"), int(1)), (z("3"), int(-1))].into_iter().collect();
        assert_eq!(stirling_reduce(3, 1).unwrap(), want);
        let want: LinComb<ZetaSymbol> = [(z("2"), rat(1, 2)), (z("3"), rat(-3, 2)), (z("4"), int(1))].into_iter().collect();
        assert_eq!(stirling_reduce(4, 2).unwrap(), want);
        assert!(stirling_reduce(3, 2).is_err());
    }

    #[test]
    fn verify_controls() {
        let opts = EvalOptions::default();
        let trivial = Relation { name: "id".into(), lhs: LinComb::singleton(p("2")), rhs: LinComb::singleton(p("2")) };
        let rep = trivial.verify(1e-8, &opts).unwrap();
        assert_eq!(rep.residual, 0.0);
        assert!(rep.verified);
        let e = euler_decomposition(2, 3).unwrap();
        assert!(e.verify(1e-6, &opts).unwrap().verified);
        let bad = e.perturbed(rat(1, 1000));
        assert!(!bad.verify(1e-6, &opts).unwrap().verified);
        let div = Relation { name: "d".into(), lhs: LinComb::singleton(p("1,2")), rhs: LinComb::singleton(p("1")) };
        assert!(matches!(div.verify(1e-6, &opts), Err(Error::Divergent { .. })));
    }

    #[test]
    fn stuffle_series_consistency() {
        use crate::series::{expand_m, TruncatedSeries};
        use crate::stuffle::quasi_shuffle;
        // At a finite truncation the stuffle identity is exact, so x_n = 1/n
        // gives equal rationals on both sides.
        let vars = 12;
        for (a, m, b, n) in [(3, 1, 3, 1), (4, 2, 3, 0), (4, 1, 5, 2)] {
            let r = stuffle_relation(a, b, m, n).unwrap();
            let d = a + b;
            let eval = |x: &Lwc| {
                expand_m(x, vars, d)
                    .unwrap()
                    .specialize(|k| Some(rat(1, i64::from(k))))
                    .unwrap()
            };
            let lhs = eval(&ZetaSymbol::single(a, m).to_lwc()) * eval(&ZetaSymbol::single(b, n).to_lwc());
            let mut rhs = Rational::zero();
            for (k, c) in r.rhs.iter() {
                rhs += c * eval(&k.factors()[0].to_lwc());
            }
            assert_eq!(lhs, rhs);
            let prod = quasi_shuffle(&ZetaSymbol::single(a, m).to_lwc(), &ZetaSymbol::single(b, n).to_lwc());
            let via = TruncatedSeries::from_lincomb(vars, d, &prod, |g| expand_m(g, vars, d)).unwrap();
            assert_eq!(via.specialize(|k| Some(rat(1, i64::from(k)))).unwrap(), rhs);
        }
    }
}
