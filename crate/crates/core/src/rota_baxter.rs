//! The augmented mixable shuffle `⋄` on head-tagged LWCs, the Rota–Baxter
//! operator `P_Q`, and Spitzer's identity in the monomial basis.
//!
//! An element `\bar M_{(α_0, α')}` is stored as a head `α_0` and a tail LWC
//! `α'`. Heads add under `⋄`, tails quasi-shuffle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{factorial, Rational};
use crate::composition::{Composition, Lwc};
use crate::error::{Error, Result};
use crate::lincomb::{LinComb, TextKey};
use crate::stuffle::{quasi_shuffle_all, quasi_shuffle_with, Limits};

/// Basis element `\bar M_{(head, tail)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MbarElement {
    head: u32,
    tail: Lwc,
}

impl MbarElement {
    /// `(head, tail)` must flatten to a nonempty LWC, so an empty tail
    /// needs a positive head.
    pub fn new(head: u32, tail: Lwc) -> Result<Self> {
        if tail.is_empty() && head == 0 {
            return Err(Error::InvalidIndex("Mbar element (0;()) is not in the nonunitary algebra".into()));
        }
        Ok(MbarElement { head, tail })
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn tail(&self) -> &Lwc {
        &self.tail
    }

    pub fn size(&self) -> u32 {
        self.head + self.tail.size()
    }

    /// The flat LWC `(α_0, α')`.
    pub fn flatten(&self) -> Lwc {
        let mut v = Vec::with_capacity(self.tail.len() + 1);
        v.push(self.head);
        v.extend_from_slice(self.tail.parts());
        Lwc::from_vec_unchecked(v)
    }

    pub fn from_flat(a: &Lwc) -> Result<Self> {
        match a.parts().split_first() {
            None => Err(Error::InvalidIndex("empty LWC has no Mbar head".into())),
            Some((&h, rest)) => MbarElement::new(h, Lwc::from_vec_unchecked(rest.to_vec())),
        }
    }

    /// Every basis element of total size in `1..=max_size` whose flat form
    /// has at most `max_zeros` zeros.
    pub fn enumerate_up_to(max_size: u32, max_zeros: u32) -> Vec<MbarElement> {
        (1..=max_size)
            .flat_map(|n| Lwc::all_of_size(n, max_zeros))
            .map(|a| MbarElement::from_flat(&a).expect("nonempty"))
            .collect()
    }
}

impl Ord for MbarElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flatten().cmp(&other.flatten())
    }
}

impl PartialOrd for MbarElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MbarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.head, self.tail)
    }
}

/// Accepts `h;(tail)` or `(h;(tail))`.
impl FromStr for MbarElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(r) if r.contains(';') && !r.trim_start().starts_with('(') => r,
            _ => t,
        };
        let (h, tail) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected head;(tail), got {s:?}")))?;
        let head: u32 = h
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Mbar head {h:?}")))?;
        MbarElement::new(head, tail.trim().parse()?)
    }
}

/// JSON keys use the flat LWC text.
impl TextKey for MbarElement {
    fn key_text(&self) -> String {
        self.flatten().to_string()
    }
    fn parse_key(text: &str) -> Result<Self> {
        MbarElement::from_flat(&text.parse()?)
    }
}

pub type MbarComb = LinComb<MbarElement>;

/// `a ⋄ b`: heads add, tails quasi-shuffle (the empty tail is the unit).
pub fn diamond(a: &MbarElement, b: &MbarElement) -> MbarComb {
    diamond_with(a, b, &Limits::unbounded()).expect("unbounded")
}

pub fn diamond_with(a: &MbarElement, b: &MbarElement, limits: &Limits) -> Result<MbarComb> {
    let head = a.head + b.head;
    Ok(quasi_shuffle_with(&a.tail, &b.tail, limits)?.map_keys(|t| MbarElement {
        head,
        tail: t.clone(),
    }))
}

pub fn diamond_lincomb(x: &MbarComb, y: &MbarComb, limits: &Limits) -> Result<MbarComb> {
    x.try_bilinear(y, |a, b| diamond_with(a, b, limits))
}

/// `P_Q(\bar M_{(α_0, α')}) = \bar M_{(0, α_0, α')}`, extended linearly.
pub fn p_q(x: &MbarComb) -> MbarComb {
    x.map_keys(|e| MbarElement { head: 0, tail: e.flatten() })
}

/// `P(x)⋄P(y) − P(x⋄P(y)) − P(P(x)⋄y) − P(x⋄y)`.
pub fn rb_residual(x: &MbarComb, y: &MbarComb) -> MbarComb {
    rb_residual_with(x, y, &Limits::unbounded()).expect("unbounded")
}

pub fn rb_residual_with(x: &MbarComb, y: &MbarComb, limits: &Limits) -> Result<MbarComb> {
    let (px, py) = (p_q(x), p_q(y));
    let lhs = diamond_lincomb(&px, &py, limits)?;
    let t1 = p_q(&diamond_lincomb(x, &py, limits)?);
    let t2 = p_q(&diamond_lincomb(&px, y, limits)?);
    let t3 = p_q(&diamond_lincomb(x, y, limits)?);
    Ok(lhs - t1 - t2 - t3)
}

/// Both sides of Spitzer's identity for `M_{(k^n)}`:
/// `(−1)^n Σ_{α⊨n} (−1)^{ℓ(α)} / (ℓ(α)! α_1⋯α_ℓ) · M_{kα_1} ∗ ⋯ ∗ M_{kα_ℓ}`.
pub fn spitzer_check(k: u32, n: u32, limits: &Limits) -> Result<(LinComb<Lwc>, LinComb<Lwc>)> {
    if k == 0 || n == 0 {
        return Err(Error::Precondition(format!("spitzer_check needs k, n >= 1, got k={k}, n={n}")));
    }
    let lhs = LinComb::singleton(Lwc::from_vec_unchecked(vec![k; n as usize]));
    let mut rhs = LinComb::zero();
    for alpha in Composition::all(n) {
        let l = alpha.len();
        let denom: BigInt = factorial(l as u32) * alpha.parts().iter().map(|&p| BigInt::from(p)).product::<BigInt>();
        let sign = if (n as usize + l).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let factors: Vec<Lwc> = alpha
            .parts()
            .iter()
            .map(|&p| Lwc::from_vec_unchecked(vec![k * p]))
            .collect();
        let prod = quasi_shuffle_all(&factors, limits)?;
        rhs.add_scaled(&prod, &Rational::new(sign, denom));
        if rhs.len() > limits.max_terms {
            return Err(Error::Budget { limit: limits.max_terms });
        }
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    fn mb(s: &str) -> MbarElement {
        s.parse().unwrap()
    }

    fn one(s: &str) -> MbarComb {
        LinComb::singleton(mb(s))
    }

    #[test]
    fn text_forms() {
        let e = mb("0;(1)");
        assert_eq!(e.head(), 0);
        assert_eq!(e.to_string(), "(0;(1))");
        assert_eq!(mb("(2;(0,1))"), mb("2;(0,1)"));
        assert_eq!(mb("3;()").flatten().to_string(), "(3)");
        assert!("0;()".parse::<MbarElement>().is_err());
        assert!("1;(1,0)".parse::<MbarElement>().is_err());
        assert_eq!(MbarElement::parse_key("(0,0,2)").unwrap(), mb("0;(0,2)"));
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(diamond(&mb("2;()"), &mb("3;()")), one("5;()"));
        // A zero head with empty tail is excluded, so use the unit law on tails.
        assert_eq!(diamond(&mb("1;(2)"), &mb("1;()")), one("2;(2)"));
        let got = diamond(&mb("0;(1)"), &mb("0;(1)"));
        let want: MbarComb = [(mb("0;(1,1)"), int(2)), (mb("0;(2)"), int(1))].into_iter().collect();
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "(0;(2)) + 2·(0;(1,1))");
    }

    #[test]
    fn p_q_examples() {
        assert_eq!(p_q(&one("3;()")), one("0;(3)"));
        assert_eq!(p_q(&one("0;(2)")), one("0;(0,2)"));
        let x: MbarComb = [(mb("1;()"), int(2)), (mb("2;()"), int(1))].into_iter().collect();
        let want: MbarComb = [(mb("0;(1)"), int(2)), (mb("0;(2)"), int(1))].into_iter().collect();
        assert_eq!(p_q(&x), want);
    }

    #[test]
    fn rb_residual_examples() {
        assert!(rb_residual(&one("1;()"), &one("1;()")).is_zero());
        assert!(rb_residual(&MbarComb::zero(), &one("2;(1)")).is_zero());
        assert!(rb_residual(&one("2;()"), &one("0;(1)")).is_zero());
    }

    #[test]
    fn rb_residual_exhaustive_small() {
        let basis = MbarElement::enumerate_up_to(4, 2);
        for a in &basis {
            for b in &basis {
                if a.size() + b.size() > 5 {
                    continue;
                }
                assert!(rb_residual(&LinComb::singleton(a.clone()), &LinComb::singleton(b.clone())).is_zero(), "{a} {b}");
            }
        }
    }

    #[test]
    fn diamond_commutative_associative() {
        let basis = MbarElement::enumerate_up_to(3, 2);
        let lim = Limits::default();
        for a in &basis {
            for b in &basis {
                let ab = diamond(a, b);
                assert_eq!(ab, diamond(b, a));
                for c in basis.iter().filter(|c| a.size() + b.size() + c.size() <= 5) {
                    let left = diamond_lincomb(&ab, &LinComb::singleton(c.clone()), &lim).unwrap();
                    let right = diamond_lincomb(&LinComb::singleton(a.clone()), &diamond(b, c), &lim).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn spitzer_small() {
        let (l, r) = spitzer_check(1, 1, &Limits::default()).unwrap();
        assert_eq!(l, r);
        let (l, r) = spitzer_check(1, 2, &Limits::default()).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.to_string(), "(1,1)");
        for k in 1..=3 {
            for n in 1..=4 {
                let (l, r) = spitzer_check(k, n, &Limits::default()).unwrap();
                assert_eq!(l, r, "k={k} n={n}");
            }
        }
        assert!(spitzer_check(0, 2, &Limits::default()).is_err());
        assert_eq!(
            spitzer_check(1, 5, &Limits { max_terms: 5 }).unwrap_err(),
            Error::Budget { limit: 5 }
        );
    }

    fn arb_mbar() -> impl Strategy<Value = MbarElement> {
        (0u32..3, proptest::collection::vec(0u32..3, 0..3), 1u32..3).prop_map(|(h, mut v, last)| {
            if let Some(x) = v.last_mut() {
                *x = last;
            }
            let h = if v.is_empty() { h.max(1) } else { h };
            MbarElement::new(h, Lwc::new(v).unwrap()).unwrap()
        })
    }

    fn arb_comb() -> impl Strategy<Value = MbarComb> {
        proptest::collection::vec((arb_mbar(), -3i64..4), 0..3)
            .prop_map(|terms| terms.into_iter().map(|(k, c)| (k, int(c))).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn rb_identity_random(x in arb_comb(), y in arb_comb()) {
            prop_assert!(rb_residual(&x, &y).is_zero());
        }
    }
}
