//! Labeled posets and their P-partitions.
//!
//! For an LWC `α = (0^{i_1}, s_1, ..., 0^{i_k}, s_k)` the poset `P_α` is the
//! chain `C_1 ⊕ P_1 ⊕ ... ⊕ C_k ⊕ P_k` with `|C_p| = i_p`, `|P_p| = s_p`.
//! Labels go to `C_1, ..., C_k` first, in chain order, then to
//! `P_k, P_{k-1}, ..., P_1`. Elements of a `C` block carry exponent 0 and
//! elements of a `P` block exponent 1.

use std::fmt;

use crate::composition::Lwc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    labels: Vec<u32>,
    exponents: Vec<u32>,
    /// `less[a][b]` iff `a <_P b`. Elements are indexed along a linear extension.
    less: Vec<Vec<bool>>,
    /// Block sizes in chain order, for display.
    blocks: Vec<usize>,
}

impl LabeledPoset {
    pub fn from_lwc(alpha: &Lwc) -> Self {
        let blocks = alpha.blocks();
        let total_c: u32 = blocks.iter().map(|b| b.zeros).sum();
        let mut c_labels = Vec::new();
        let mut next = 1;
        for b in &blocks {
            c_labels.push((next..next + b.zeros).collect::<Vec<u32>>());
            next += b.zeros;
        }
        debug_assert_eq!(next, total_c + 1);
        let mut p_labels = vec![Vec::new(); blocks.len()];
        for (p, b) in blocks.iter().enumerate().rev() {
            p_labels[p] = (next..next + b.part).collect();
            next += b.part;
        }
        let mut labels = Vec::new();
        let mut exponents = Vec::new();
        let mut sizes = Vec::new();
        for p in 0..blocks.len() {
            labels.extend_from_slice(&c_labels[p]);
            exponents.extend(std::iter::repeat_n(0, c_labels[p].len()));
            labels.extend_from_slice(&p_labels[p]);
            exponents.extend(std::iter::repeat_n(1, p_labels[p].len()));
            sizes.push(c_labels[p].len());
            sizes.push(p_labels[p].len());
        }
        let n = labels.len();
        let less = (0..n).map(|a| (0..n).map(|b| a < b).collect()).collect();
        LabeledPoset { labels, exponents, less, blocks: sizes }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    /// Label sets of `C_1, P_1, ..., C_k, P_k`.
    pub fn block_labels(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut at = 0;
        for &s in &self.blocks {
            out.push(self.labels[at..at + s].to_vec());
            at += s;
        }
        out
    }

    /// Every P-partition `f` with values in `1..=max_value`: for `a <_P b`,
    /// `f(a) <= f(b)`, strictly when `label(a) > label(b)`.
    pub fn p_partitions(&self, max_value: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut f = Vec::with_capacity(self.len());
        self.extend(&mut f, max_value, &mut out);
        out
    }

    fn extend(&self, f: &mut Vec<u32>, max_value: u32, out: &mut Vec<Vec<u32>>) {
        let b = f.len();
        if b == self.len() {
            out.push(f.clone());
            return;
        }
        for v in 1..=max_value {
            let ok = (0..b).all(|a| {
                if self.less[a][b] {
                    if self.labels[a] > self.labels[b] {
                        f[a] < v
                    } else {
                        f[a] <= v
                    }
                } else if self.less[b][a] {
                    if self.labels[b] > self.labels[a] {
                        v < f[a]
                    } else {
                        v <= f[a]
                    }
                } else {
                    true
                }
            });
            if ok {
                f.push(v);
                self.extend(f, max_value, out);
                f.pop();
            }
        }
    }
}

/// `{1,2}⊕{8,9}⊕∅`.
impl fmt::Display for LabeledPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.block_labels().iter().enumerate() {
            if i > 0 {
                f.write_str("⊕")?;
            }
            if block.is_empty() {
                f.write_str("∅")?;
                continue;
            }
            f.write_str("{")?;
            for (j, l) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}
