//! Polynomials in `q` with rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, Rational};

/// `2` rather than `2/1`.
pub(crate) fn short_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format_rational(r)
    }
}

/// `Σ c_k q^k`, stored densely without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn q() -> Self {
        QPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `1 − q`.
    pub fn one_minus_q() -> Self {
        QPoly::new(vec![Rational::one(), -Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl From<Rational> for QPoly {
    fn from(c: Rational) -> Self {
        QPoly::constant(c)
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly(vec![Rational::one()])
    }
}

impl<'a> AddAssign<&'a QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &'a QPoly) {
        if rhs.0.len() > self.0.len() {
            self.0.resize(rhs.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }
}

impl Add for QPoly {
    type Output = QPoly;

    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl<'a> Mul<&'a QPoly> for QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Mul for QPoly {
    type Output = QPoly;

    fn mul(self, rhs: QPoly) -> QPoly {
        self * &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

/// `1 - q + 2/3·q^2`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if mono.is_empty() {
                f.write_str(&short_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}·{mono}", short_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn ring_ops() {
        let a = QPoly::one_minus_q();
        let sq = a.clone() * &a;
        assert_eq!(sq.coeffs(), [int(1), int(-2), int(1)]);
        assert_eq!(sq.to_string(), "1 - 2·q + q^2");
        assert_eq!((sq.clone() + -sq.clone()), QPoly::zero());
        assert_eq!(sq.at_one(), int(0));
        assert_eq!(sq.eval(&rat(1, 2)), rat(1, 4));
        assert!((sq.eval_f64(0.25) - 0.5625).abs() < 1e-15);
        assert_eq!(QPoly::new(vec![int(0), rat(-2, 3)]).to_string(), "-2/3·q");
        assert_eq!(QPoly::zero().degree(), None);
    }
}
