//! Compositions, left weak compositions (LWCs) and the refinement order.
//!
//! An LWC is a finite sequence of nonnegative integers that is empty or ends
//! in a positive entry. Grouping zero runs gives the block form
//! `(0^{i_1}, s_1, ..., 0^{i_k}, s_k)`; the flat part sequence is the
//! canonical representation and blocks are a derived view.
//!
//! Text form: `(1,0^2,3)` with `0^k` standing for `k` zeros and `()` for the
//! empty composition. Formatting always emits the flat form.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A zero run followed by one positive part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub zeros: u32,
    pub part: u32,
}

/// A composition: a sequence of positive integers, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!(
                "composition {parts:?} contains a zero part"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums `{a_1, a_1 + a_2, ..., a_1 + ... + a_{k-1}}`.
    pub fn descent_set(&self) -> BTreeSet<u32> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.insert(acc);
        }
        out
    }

    /// Inverse of [`Composition::descent_set`] for compositions of `n >= 1`.
    pub fn from_descent_set(n: u32, set: &BTreeSet<u32>) -> Result<Self> {
        if n == 0 {
            return if set.is_empty() {
                Ok(Composition::default())
            } else {
                Err(Error::InvalidIndex("descent set of the empty composition".into()))
            };
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &d in set {
            if d == 0 || d >= n {
                return Err(Error::InvalidIndex(format!("descent {d} outside [1, {n})")));
            }
            parts.push(d - prev);
            prev = d;
        }
        parts.push(n - prev);
        Ok(Composition(parts))
    }

    /// Classical refinement: `self` refines `other` when summing consecutive
    /// parts of `self` yields `other`.
    pub fn refines(&self, other: &Composition) -> bool {
        Lwc::from(self.clone()).refines(&Lwc::from(other.clone()))
    }

    /// All compositions of `n`, ordered graded-lexicographically.
    pub fn all(n: u32) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        rec(n, &mut cur, &mut out);
        out.sort_by(|a, b| graded_lex(&a.0, &b.0));
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

/// A left weak composition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Lwc(Vec<u32>);

impl Lwc {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.last() == Some(&0) {
            return Err(Error::InvalidIndex(format!(
                "{parts:?}: last part must be positive"
            )));
        }
        Ok(Lwc(parts))
    }

    pub fn empty() -> Self {
        Lwc(Vec::new())
    }

    /// Callers guarantee the LWC invariant.
    pub(crate) fn from_vec_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.last() != Some(&0), "{parts:?}");
        Lwc(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Length including zero entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zero_count(&self) -> u32 {
        self.0.iter().filter(|&&p| p == 0).count() as u32
    }

    pub fn is_composition(&self) -> bool {
        !self.0.contains(&0)
    }

    pub fn to_composition(&self) -> Option<Composition> {
        self.is_composition().then(|| Composition(self.0.clone()))
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        let mut zeros = 0;
        for &p in &self.0 {
            if p == 0 {
                zeros += 1;
            } else {
                out.push(Block { zeros, part: p });
                zeros = 0;
            }
        }
        out
    }

    pub fn from_blocks(blocks: &[Block]) -> Result<Self> {
        let mut parts = Vec::new();
        for b in blocks {
            if b.part == 0 {
                return Err(Error::InvalidIndex("block with zero part".into()));
            }
            parts.extend(std::iter::repeat_n(0, b.zeros as usize));
            parts.push(b.part);
        }
        Ok(Lwc(parts))
    }

    /// The extended refinement order `self ≼ other`.
    ///
    /// With `other = (0^{j_1}, b_1, ..., 0^{j_k}, b_k)`, holds iff `self` can be
    /// written `(0^{i_1}, A_1, ..., 0^{i_k}, A_k)` with `i_p <= j_p` and `A_p` a
    /// composition of `b_p`. Because the `A_p` have positive parts, the
    /// writing of `self` is forced, so a single left-to-right scan decides it.
    pub fn refines(&self, other: &Lwc) -> bool {
        let parts = &self.0;
        let mut pos = 0;
        for block in other.blocks() {
            let mut zeros = 0;
            while pos < parts.len() && parts[pos] == 0 {
                zeros += 1;
                pos += 1;
            }
            if zeros > block.zeros {
                return false;
            }
            let mut acc = 0;
            while acc < block.part {
                match parts.get(pos) {
                    Some(&p) if p > 0 => {
                        acc += p;
                        pos += 1;
                    }
                    _ => return false,
                }
            }
            if acc != block.part {
                return false;
            }
        }
        pos == parts.len()
    }

    /// Every `β` with `β ≼ self`, each once, in graded-lex order.
    pub fn refinements_below(&self) -> Vec<Lwc> {
        let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
        for block in self.blocks() {
            let comps = Composition::all(block.part);
            let mut next = Vec::with_capacity(acc.len() * comps.len() * (block.zeros as usize + 1));
            for prefix in &acc {
                for j in 0..=block.zeros {
                    for c in &comps {
                        let mut v = prefix.clone();
                        v.extend(std::iter::repeat_n(0, j as usize));
                        v.extend_from_slice(&c.0);
                        next.push(v);
                    }
                }
            }
            acc = next;
        }
        let mut out: Vec<Lwc> = acc.into_iter().map(Lwc).collect();
        out.sort();
        out
    }

    /// All LWCs of size `n` with at most `max_zeros` zero entries.
    pub fn all_of_size(n: u32, max_zeros: u32) -> Vec<Lwc> {
        Lwc::enumerate(n, max_zeros, usize::MAX)
    }

    /// All LWCs of size `n` with at most `max_zeros` zeros and length at most
    /// `max_len`, in graded-lex order. `n = 0` yields only the empty LWC.
    pub fn enumerate(n: u32, max_zeros: u32, max_len: usize) -> Vec<Lwc> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            rest: u32,
            zeros_left: u32,
            max_len: usize,
            cur: &mut Vec<u32>,
            out: &mut Vec<Lwc>,
        ) {
            if rest == 0 {
                // Zeros are only pushed while rest > 0, so cur ends positive here.
                out.push(Lwc(cur.clone()));
                return;
            }
            if cur.len() >= max_len {
                return;
            }
            if zeros_left > 0 && rest > 0 {
                cur.push(0);
                rec(rest, zeros_left - 1, max_len, cur, out);
                cur.pop();
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, zeros_left, max_len, cur, out);
                cur.pop();
            }
        }
        rec(n, max_zeros, max_len, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All LWCs with size at most `max_size`, at most `max_zeros` zeros and
    /// length at most `max_len`, including the empty one.
    pub fn enumerate_up_to(max_size: u32, max_zeros: u32, max_len: usize) -> Vec<Lwc> {
        (0..=max_size)
            .flat_map(|n| Lwc::enumerate(n, max_zeros, max_len))
            .collect()
    }
}

/// A weak composition: any finite sequence of nonnegative integers. Used for
/// intermediate words such as `0^m ∗ (0^n, b)` that need not end positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WeakComposition(pub Vec<u32>);

impl WeakComposition {
    pub fn zeros(k: usize) -> Self {
        WeakComposition(vec![0; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_lwc(&self) -> Option<Lwc> {
        Lwc::new(self.0.clone()).ok()
    }
}

impl From<Lwc> for WeakComposition {
    fn from(a: Lwc) -> Self {
        WeakComposition(a.0)
    }
}

impl Ord for WeakComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_lex(&self.0, &other.0)
    }
}

impl PartialOrd for WeakComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for WeakComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(WeakComposition(parse_part_list(s)?))
    }
}

impl From<Composition> for Lwc {
    fn from(c: Composition) -> Self {
        Lwc(c.0)
    }
}

/// Graded-lexicographic order: size, then length, then entries left to right.
pub(crate) fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let sa: u64 = a.iter().map(|&x| u64::from(x)).sum();
    let sb: u64 = b.iter().map(|&x| u64::from(x)).sum();
    sa.cmp(&sb)
        .then(a.len().cmp(&b.len()))
        .then_with(|| a.cmp(b))
}

impl Ord for Lwc {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_lex(&self.0, &other.0)
    }
}

impl PartialOrd for Lwc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Lwc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

/// Parses the body of a parenthesised part list, expanding `0^k`.
pub(crate) fn parse_part_list(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("{t:?}: expected a parenthesised list")))?;
    let mut parts = Vec::new();
    if inner.trim().is_empty() {
        return Ok(parts);
    }
    for item in inner.split(',') {
        let item = item.trim();
        if let Some((base, exp)) = item.split_once('^') {
            if base.trim() != "0" {
                return Err(Error::Parse(format!("{item:?}: only zero runs use ^ notation")));
            }
            let exp = exp.trim();
            if exp.starts_with('-') {
                return Err(Error::Parse(format!("{item:?}: negative zero-run length")));
            }
            let k: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("{item:?}: bad zero-run length")))?;
            parts.extend(std::iter::repeat_n(0, k as usize));
        } else {
            let v: u32 = item
                .parse()
                .map_err(|_| Error::Parse(format!("{item:?}: expected a nonnegative integer")))?;
            parts.push(v);
        }
    }
    Ok(parts)
}

impl FromStr for Lwc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_part_list(s)?;
        if parts.last() == Some(&0) {
            return Err(Error::Parse(format!("{s:?}: last part must be positive")));
        }
        Ok(Lwc(parts))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_part_list(s)?).map_err(|e| Error::Parse(e.to_string()))
    }
}
