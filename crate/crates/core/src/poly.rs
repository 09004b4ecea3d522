//! Dense univariate polynomials over exact rings.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial, `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are
/// stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Poly<BigInt>;
pub type RationalPolynomial = Poly<BigRational>;

impl<T: Clone + Zero + One + PartialEq> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(other(t))`
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * other) + &Poly::constant(c.clone())
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn map<U, F>(&self, f: F) -> Poly<U>
    where
        U: Clone + Zero + One + PartialEq,
        F: FnMut(&T) -> U,
    {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq + Sub<Output = T>> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Clone + Zero + One + PartialEq + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T> $tr for Poly<T>
        where
            for<'a> &'a Poly<T>: $tr<Output = Poly<T>>,
        {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl IntPolynomial {
    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl RationalPolynomial {
    /// Back to integer coefficients, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d
            .leading()
            .ok_or_else(|| Error::Inexact("division by the zero polynomial".into()))?
            .clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// `self / d`, failing unless the division leaves no remainder.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inexact(format!("{self} is not divisible by {d}")))
        }
    }
}

/// Rendering in ascending powers of a named variable, e.g. `1 + 4z + 3z^2`.
pub struct Display<'a, T> {
    poly: &'a Poly<T>,
    var: &'a str,
}

impl<T> Poly<T> {
    pub fn display<'a>(&'a self, var: &'a str) -> Display<'a, T> {
        Display { poly: self, var }
    }
}

impl<T> fmt::Display for Display<'_, T>
where
    T: Clone + Zero + One + PartialEq + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate() {
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
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "{}", self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T> fmt::Display for Poly<T>
where
    T: Clone + Zero + One + PartialEq + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display("t").fmt(f)
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(ip(&[1, 0, 0]).coeffs().len(), 1);
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn ring_ops() {
        let a = ip(&[1, 1]);
        let b = ip(&[1, -1]);
        assert_eq!(&a * &b, ip(&[1, 0, -1]));
        assert_eq!(&a + &b, ip(&[2]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(a.pow(3), ip(&[1, 3, 3, 1]));
        assert_eq!(ip(&[4, 0, -5, 0, 1]).eval(&BigInt::from(1)), BigInt::zero());
    }

    #[test]
    fn composition() {
        // (t^2 - 1) o (t + 1) = t^2 + 2t
        assert_eq!(ip(&[-1, 0, 1]).compose(&ip(&[1, 1])), ip(&[0, 2, 1]));
    }

    #[test]
    fn exact_division() {
        let p = ip(&[-1, 0, 1]).to_rational();
        let q = ip(&[1, 1]).to_rational();
        assert_eq!(p.div_exact(&q).unwrap(), ip(&[-1, 1]).to_rational());
        assert!(ip(&[1, 0, 1]).to_rational().div_exact(&q).is_err());
        let half = RationalPolynomial::new(vec![rat(1, 2)]);
        assert_eq!(
            ip(&[1, 1])
                .to_rational()
                .div_exact(&half)
                .unwrap()
                .to_integer(),
            Some(ip(&[2, 2]))
        );
        assert!(p.div_rem(&RationalPolynomial::zero()).is_err());
    }

    #[test]
    fn display_ascending() {
        assert_eq!(ip(&[1, 4, 3]).display("z").to_string(), "1 + 4z + 3z^2");
        assert_eq!(ip(&[4, 0, -5, 0, 1]).to_string(), "4 - 5t^2 + t^4");
        assert_eq!(ip(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let e1 = RationalPolynomial::new(vec![rat(-1, 2), rat(1, 1)]);
        assert_eq!(e1.to_string(), "-1/2 + t");
    }
}
