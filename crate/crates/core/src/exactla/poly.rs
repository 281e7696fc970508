use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, Rat};

/// Univariate polynomial with rational coefficients, lowest degree first.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        Self { coeffs }
    }

    /// `x^a (x - 1)^b`.
    pub fn binary(a: usize, b: usize) -> Self {
        let x_minus_one = Self::new(vec![-Rat::one(), Rat::one()]);
        (0..b).fold(Self::monomial(a), |acc, _| acc.mul(&x_minus_one))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                a + b
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// Divides by `x - root`, returning `(quotient, remainder)`.
    pub fn div_linear(&self, root: &Rat) -> (Self, Rat) {
        if self.is_zero() {
            return (Self::zero(), Rat::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Splits off the largest powers of `x` and `x - 1`:
    /// returns `(a, b, r)` with `self = x^a (x-1)^b r`.
    pub fn split_binary(&self) -> (usize, usize, Self) {
        if self.is_zero() {
            return (0, 0, Self::zero());
        }
        let a = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut rest = Self::new(self.coeffs[a..].to_vec());
        let one = Rat::one();
        let mut b = 0;
        while rest.degree().is_some_and(|d| d > 0) {
            let (q, r) = rest.div_linear(&one);
            if !r.is_zero() {
                break;
            }
            rest = q;
            b += 1;
        }
        (a, b, rest)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as `{"text": "x^2 - x", "coeffs": ["0", "-1", "1"]}`.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Poly", 2)?;
        st.serialize_field("text", &self.to_string())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn binary_factorization() {
        let p = Poly::binary(3, 3);
        assert_eq!(p.degree(), Some(6));
        assert_eq!(p.split_binary(), (3, 3, Poly::one()));
        let q = p.mul(&Poly::new(vec![int(2), int(0), int(1)]));
        assert_eq!(q.split_binary(), (3, 3, Poly::new(vec![int(2), int(0), int(1)])));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::binary(1, 1).to_string(), "x^2 - x");
        assert_eq!(Poly::new(vec![int(-3), int(0), int(2)]).to_string(), "2x^2 - 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn linear_division() {
        let p = Poly::new(vec![int(-1), int(0), int(1)]);
        let (q, r) = p.div_linear(&int(1));
        assert_eq!(q, Poly::new(vec![int(1), int(1)]));
        assert!(r.is_zero());
        let (_, r) = p.div_linear(&int(2));
        assert_eq!(r, int(3));
    }
}
