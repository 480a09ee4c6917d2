//! Sparse linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Coefficient ring for [`LinComb`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> AddAssign<&'a T>
        + for<'a> Mul<&'a T, Output = T>
{
}

/// A finite linear combination `sum c_k * k`. Zero coefficients are never
/// stored; iteration follows the key order.
#[derive(Clone, PartialEq)]
pub struct LinComb<K: Ord, C = Rational> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for LinComb<K, C> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, C: Coeff> LinComb<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(key: K) -> Self {
        Self::term(key, C::one())
    }

    pub fn term(key: K, coeff: C) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: K, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &C) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone() * scale);
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn coeff(&self, key: &K) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2, C>) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; colliding images are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Bilinear extension of a product given on basis keys.
    pub fn bilinear<K2: Ord + Clone>(
        &self,
        other: &Self,
        mut f: impl FnMut(&K, &K) -> LinComb<K2, C>,
    ) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let s = ca.clone() * cb;
                out.add_scaled(&f(a, b), &s);
            }
        }
        out
    }

    /// Fallible variant of [`LinComb::bilinear`].
    pub fn try_bilinear<K2: Ord + Clone>(
        &self,
        other: &Self,
        mut f: impl FnMut(&K, &K) -> Result<LinComb<K2, C>>,
    ) -> Result<LinComb<K2, C>> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let s = ca.clone() * cb;
                out.add_scaled(&f(a, b)?, &s);
            }
        }
        Ok(out)
    }

    pub fn into_terms(self) -> BTreeMap<K, C> {
        self.terms
    }
}

impl<K: Ord + Clone, C: Coeff> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone, C: Coeff> Add for LinComb<K, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for LinComb<K, C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for LinComb<K, C> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<K: Ord + fmt::Debug, C: fmt::Debug> fmt::Debug for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Human-readable form `2·(1,1) + (2)`, terms in key order.
impl<K: Ord + fmt::Display> fmt::Display for LinComb<K, Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// Basis tags used in serialized combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
    Mbar,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::F => "F",
            Basis::Mbar => "Mbar",
        }
    }
}

/// Keys that serialize to a text form inside a JSON term.
pub trait TextKey: Sized {
    fn key_text(&self) -> String;
    fn parse_key(text: &str) -> Result<Self>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub key: String,
    pub tag: String,
}

impl<K: Ord + Clone + TextKey> LinComb<K, Rational> {
    /// Terms in key order as `{coeff: "p/q", key, tag}` records.
    pub fn to_json_terms(&self, tag: &str) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(k, c)| JsonTerm {
                coeff: format_rational(c),
                key: k.key_text(),
                tag: tag.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self, tag: &str) -> String {
        serde_json::to_string(&self.to_json_terms(tag)).expect("plain data serializes")
    }

    pub fn from_json_terms(terms: &[JsonTerm], tag: &str) -> Result<Self> {
        let mut out = Self::zero();
        for t in terms {
            if t.tag != tag {
                return Err(Error::Parse(format!("expected tag {tag}, found {}", t.tag)));
            }
            out.add_term(K::parse_key(&t.key)?, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }

    pub fn from_json(text: &str, tag: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_terms(&terms, tag)
    }
}

impl TextKey for crate::composition::Lwc {
    fn key_text(&self) -> String {
        self.to_string()
    }
    fn parse_key(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl TextKey for crate::composition::WeakComposition {
    fn key_text(&self) -> String {
        self.to_string()
    }
    fn parse_key(text: &str) -> Result<Self> {
        text.parse()
    }
}
