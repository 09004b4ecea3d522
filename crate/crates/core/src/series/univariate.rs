use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, int, Rational};
use crate::error::{Error, Result};

/// `Σ_{k ≤ order} c_k x^k`, everything above `order` unknown.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct USeries {
    coeffs: Vec<Rational>,
}

impl USeries {
    pub fn zero(order: usize) -> Self {
        USeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = USeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        USeries::constant(Rational::one(), order)
    }

    /// The series `x`.
    pub fn var(order: usize) -> Self {
        USeries::monomial(Rational::one(), 1, order)
    }

    /// `c x^k`
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = USeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// From coefficients, padded with zeros or cut to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        USeries { coeffs }
    }

    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        USeries::from_coeffs(cs.iter().map(|&c| int(c)).collect(), order)
    }

    /// `Σ a_k x^k / k!`
    pub fn from_egf(cs: &[BigInt], order: usize) -> Self {
        USeries::from_coeffs(
            cs.iter()
                .enumerate()
                .map(|(k, c)| Rational::new(c.clone(), factorial(k as u32)))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `k! [x^k]`
    pub fn egf_coeff(&self, k: usize) -> Rational {
        self.coeff(k) * int(factorial(k as u32))
    }

    pub fn truncate(&self, order: usize) -> Self {
        USeries::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn const_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.const_term();
        if b0.is_zero() {
            return Err(Error::series("inverse of a series with zero constant term"));
        }
        let inv0 = b0.recip();
        let n = self.order();
        let mut g = vec![Rational::zero(); n + 1];
        g[0] = inv0.clone();
        for d in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=d {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[d - k];
                }
            }
            g[d] = -acc * &inv0;
        }
        Ok(USeries { coeffs: g })
    }

    pub fn div(&self, rhs: &USeries) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.const_term().is_one() {
            return Err(Error::series("sqrt needs constant term 1"));
        }
        let n = self.order();
        let mut s = vec![Rational::zero(); n + 1];
        s[0] = Rational::one();
        let half = Rational::new(1.into(), 2.into());
        for d in 1..=n {
            let mut acc = self.coeffs[d].clone();
            for k in 1..d {
                acc -= &s[k] * &s[d - k];
            }
            s[d] = acc * &half;
        }
        Ok(USeries { coeffs: s })
    }

    fn require_zero_const(&self, what: &str) -> Result<()> {
        if self.const_term().is_zero() {
            Ok(())
        } else {
            Err(Error::series(format!("{what} needs a zero constant term")))
        }
    }

    /// `exp(self)` from `f' = u' f`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_const("exp")?;
        let n = self.order();
        let ku: Vec<Rational> = (0..=n).map(|k| &self.coeffs[k] * int(k as i64)).collect();
        let mut f = vec![Rational::zero(); n + 1];
        f[0] = Rational::one();
        for d in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=d {
                if !ku[k].is_zero() {
                    acc += &ku[k] * &f[d - k];
                }
            }
            f[d] = acc / int(d as i64);
        }
        Ok(USeries { coeffs: f })
    }

    /// `(sin u, cos u)`, or `(sinh u, cosh u)` when `hyperbolic`.
    fn sin_cos(&self, hyperbolic: bool) -> Result<(Self, Self)> {
        self.require_zero_const("sin/cos")?;
        let n = self.order();
        let ku: Vec<Rational> = (0..=n).map(|k| &self.coeffs[k] * int(k as i64)).collect();
        let mut s = vec![Rational::zero(); n + 1];
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = Rational::one();
        for d in 1..=n {
            let (mut ds, mut dc) = (Rational::zero(), Rational::zero());
            for k in 1..=d {
                if !ku[k].is_zero() {
                    ds += &ku[k] * &c[d - k];
                    dc += &ku[k] * &s[d - k];
                }
            }
            let dd = int(d as i64);
            s[d] = ds / &dd;
            c[d] = if hyperbolic { dc / dd } else { -dc / dd };
        }
        Ok((USeries { coeffs: s }, USeries { coeffs: c }))
    }

    pub fn sin(&self) -> Result<Self> {
        Ok(self.sin_cos(false)?.0)
    }
    pub fn cos(&self) -> Result<Self> {
        Ok(self.sin_cos(false)?.1)
    }
    pub fn sec(&self) -> Result<Self> {
        self.cos()?.inverse()
    }
    pub fn tan(&self) -> Result<Self> {
        let (s, c) = self.sin_cos(false)?;
        s.div(&c)
    }
    pub fn sinh(&self) -> Result<Self> {
        Ok(self.sin_cos(true)?.0)
    }
    pub fn cosh(&self) -> Result<Self> {
        Ok(self.sin_cos(true)?.1)
    }
    pub fn sech(&self) -> Result<Self> {
        self.cosh()?.inverse()
    }
    pub fn tanh(&self) -> Result<Self> {
        let (s, c) = self.sin_cos(true)?;
        s.div(&c)
    }

    /// Exact division by `x^k`; the order drops by `k`.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::series("shift beyond truncation order"));
        }
        if let Some(j) = (0..k).find(|&j| !self.coeffs[j].is_zero()) {
            return Err(Error::series(format!(
                "division by x^{k} with nonzero x^{j} term"
            )));
        }
        Ok(USeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(USeries::one(self.order()), |acc, _| &acc * self)
    }
}

impl Add for &USeries {
    type Output = USeries;
    fn add(self, rhs: &USeries) -> USeries {
        let n = self.order().min(rhs.order());
        USeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &USeries {
    type Output = USeries;
    fn sub(self, rhs: &USeries) -> USeries {
        let n = self.order().min(rhs.order());
        USeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &USeries {
    type Output = USeries;
    fn mul(self, rhs: &USeries) -> USeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += a * &rhs.coeffs[j];
                }
            }
        }
        USeries { coeffs: out }
    }
}

impl Neg for &USeries {
    type Output = USeries;
    fn neg(self) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
