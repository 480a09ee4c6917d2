//! Change of basis between the monomial and fundamental LWC bases.
//!
//! `F_α = Σ_{β≼α} c_{α,β} M_β` and `M_α = Σ_{β≼α} (−1)^{ℓ(β)−ℓ(α)} c_{α,β} F_β`
//! with `c_{α,β} = Π_p C(i_p, j_p)`, where `i_p` and `j_p` are the zero runs in
//! front of block `p` of `α` and of the aligned writing of `β`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Rational};
use crate::composition::Lwc;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;

/// Zero-run lengths `j_p` of `β` aligned to the blocks of `α`, or `None`
/// when `β ≼ α` fails.
pub fn alignment(alpha: &Lwc, beta: &Lwc) -> Option<Vec<u32>> {
    let parts = beta.parts();
    let mut pos = 0;
    let mut out = Vec::new();
    for block in alpha.blocks() {
        let mut zeros = 0;
        while parts.get(pos) == Some(&0) {
            zeros += 1;
            pos += 1;
        }
        if zeros > block.zeros {
            return None;
        }
        let mut acc = 0;
        while acc < block.part {
            match parts.get(pos) {
                Some(&p) if p > 0 => {
                    acc += p;
                    pos += 1;
                }
                _ => return None,
            }
        }
        if acc != block.part {
            return None;
        }
        out.push(zeros);
    }
    (pos == parts.len()).then_some(out)
}

/// `c_{α,β}`; zero unless `β ≼ α`.
pub fn coeff_c(alpha: &Lwc, beta: &Lwc) -> BigInt {
    match alignment(alpha, beta) {
        None => BigInt::zero(),
        Some(js) => alpha
            .blocks()
            .iter()
            .zip(js)
            .map(|(b, j)| binomial(i64::from(b.zeros), i64::from(j)))
            .product(),
    }
}

/// `F_α` in the monomial basis.
pub fn f_to_m(alpha: &Lwc) -> LinComb<Lwc> {
    alpha
        .refinements_below()
        .into_iter()
        .map(|b| {
            let c = coeff_c(alpha, &b);
            (b, Rational::from_integer(c))
        })
        .collect()
}

/// `M_α` in the fundamental basis.
pub fn m_to_f(alpha: &Lwc) -> LinComb<Lwc> {
    alpha
        .refinements_below()
        .into_iter()
        .map(|b| {
            let mut c = coeff_c(alpha, &b);
            if (b.len() + alpha.len()) % 2 == 1 {
                c = -c;
            }
            (b, Rational::from_integer(c))
        })
        .collect()
}

/// Linear extension of `≼`: more positive parts first, then fewer zeros.
fn extension_key(a: &Lwc) -> (std::cmp::Reverse<usize>, u32) {
    (std::cmp::Reverse(a.len() - a.zero_count() as usize), a.zero_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    F2m,
    M2f,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    pub direction: Direction,
    pub keys: Vec<String>,
    /// Row-major; column `c` holds the image of `keys[c]`.
    pub entries: Vec<Vec<i64>>,
}

impl TransitionMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, &v)| match r.cmp(&c) {
                std::cmp::Ordering::Equal => v == 1,
                std::cmp::Ordering::Greater => v == 0,
                std::cmp::Ordering::Less => true,
            })
        })
    }

    pub fn product(&self, other: &TransitionMatrix) -> Vec<Vec<i64>> {
        let n = self.entries.len();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| self.entries[r][k] * other.entries[k][c]).sum())
                    .collect()
            })
            .collect()
    }
}

/// Slice basis: all LWCs of size `n` with at most `zero_budget` zeros, in a
/// linear extension of `≼`. The slice is closed under taking refinements.
pub fn slice_keys(n: u32, zero_budget: u32, max_keys: usize) -> Result<Vec<Lwc>> {
    let mut keys = Lwc::all_of_size(n, zero_budget);
    if keys.len() > max_keys {
        return Err(Error::Budget { limit: max_keys });
    }
    keys.sort_by(|a, b| extension_key(a).cmp(&extension_key(b)).then_with(|| a.cmp(b)));
    Ok(keys)
}

pub fn transition_matrix(n: u32, zero_budget: u32, direction: Direction, max_keys: usize) -> Result<TransitionMatrix> {
    let keys = slice_keys(n, zero_budget, max_keys)?;
    let mut entries = vec![vec![0i64; keys.len()]; keys.len()];
    for (c, alpha) in keys.iter().enumerate() {
        let image = match direction {
            Direction::F2m => f_to_m(alpha),
            Direction::M2f => m_to_f(alpha),
        };
        for (r, beta) in keys.iter().enumerate() {
            if let Some(v) = image.coeff(beta) {
                let v = v.to_integer();
                entries[r][c] = i64::try_from(v).map_err(|_| Error::Budget { limit: max_keys })?;
            }
        }
    }
    Ok(TransitionMatrix {
        direction,
        keys: keys.iter().map(|k| k.to_string()).collect(),
        entries,
    })
}

/// Applies `F → M` to a combination of `F`'s.
pub fn f_comb_to_m(x: &LinComb<Lwc>) -> LinComb<Lwc> {
    x.map_linear(f_to_m)
}

/// Applies `M → F` to a combination of `M`'s.
pub fn m_comb_to_f(x: &LinComb<Lwc>) -> LinComb<Lwc> {
    x.map_linear(m_to_f)
}

pub fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(r, row)| row.iter().enumerate().all(|(c, &v)| v == i64::from(r == c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use num_traits::One;
    use crate::series::{expand_f, expand_m, TruncatedSeries};

    fn l(s: &str) -> Lwc {
        s.parse().unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coeff_c(&l("(0,0,2)"), &l("(0,2)")), BigInt::from(2));
        assert_eq!(coeff_c(&l("(0,0,2)"), &l("(0,0,2)")), BigInt::from(1));
        assert_eq!(coeff_c(&l("(0,0,2)"), &l("(1,1)")), BigInt::from(1));
        assert_eq!(coeff_c(&l("(0,0,2)"), &l("(0,0,0,2)")), BigInt::zero());
    }

    #[test]
    fn six_term_expansions() {
        assert_eq!(
            f_to_m(&l("(0^2,2)")).to_string(),
            "(2) + 2·(0,2) + (1,1) + (0,0,2) + 2·(0,1,1) + (0,0,1,1)"
        );
        assert_eq!(
            m_to_f(&l("(0^2,2)")).to_string(),
            "(2) - 2·(0,2) - (1,1) + (0,0,2) + 2·(0,1,1) - (0,0,1,1)"
        );
        assert_eq!(f_to_m(&l("(1)")).to_string(), "(1)");
        assert_eq!(m_to_f(&l("(2)")).to_string(), "(2) - (1,1)");
    }

    #[test]
    fn classical_degeneration() {
        for n in 1..=5 {
            for a in Lwc::all_of_size(n, 0) {
                for (b, c) in f_to_m(&a).iter() {
                    assert!(b.is_composition());
                    assert_eq!(c, &int(1));
                }
            }
        }
    }

    #[test]
    fn round_trip_and_triangularity() {
        for n in 0..=4 {
            for a in Lwc::all_of_size(n, 3) {
                assert_eq!(f_comb_to_m(&m_to_f(&a)), LinComb::singleton(a.clone()), "{a}");
                assert_eq!(m_comb_to_f(&f_to_m(&a)), LinComb::singleton(a.clone()), "{a}");
                assert_eq!(coeff_c(&a, &a), BigInt::one());
                for b in Lwc::all_of_size(n, 3) {
                    if !coeff_c(&a, &b).is_zero() {
                        assert!(b.refines(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn series_consistency() {
        for n in 1..=4 {
            for a in Lwc::all_of_size(n, 3) {
                let f = expand_f(&a, 10, n).unwrap();
                let via = TruncatedSeries::from_lincomb(10, n, &f_to_m(&a), |b| expand_m(b, 10, n)).unwrap();
                assert_eq!(f, via, "{a}");
            }
        }
    }

    #[test]
    fn matrices() {
        let m = transition_matrix(1, 0, Direction::F2m, 1000).unwrap();
        assert_eq!(m.entries, vec![vec![1]]);
        let m = transition_matrix(2, 0, Direction::F2m, 1000).unwrap();
        assert_eq!(m.keys, ["(1,1)", "(2)"]);
        assert_eq!(m.entries, vec![vec![1, 1], vec![0, 1]]);
        for (n, z) in [(2, 1), (3, 2), (4, 2)] {
            let f = transition_matrix(n, z, Direction::F2m, 1000).unwrap();
            let g = transition_matrix(n, z, Direction::M2f, 1000).unwrap();
            assert!(f.is_upper_unitriangular() && g.is_upper_unitriangular());
            assert!(is_identity(&f.product(&g)));
            assert!(is_identity(&g.product(&f)));
        }
        let m = transition_matrix(2, 1, Direction::F2m, 1000).unwrap();
        assert_eq!(m.keys.len(), 5);
        assert!(m.to_json().starts_with(r#"{"direction":"f2m","keys":["(1,1)""#));
        assert_eq!(transition_matrix(4, 3, Direction::F2m, 3).unwrap_err(), Error::Budget { limit: 3 });
    }
}
