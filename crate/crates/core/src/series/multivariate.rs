use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, int, Rational, USeries};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

type Component = BTreeMap<Monomial, Rational>;

/// Multivariate series truncated at total degree `maxdeg`. `comps[d]` holds the
/// nonzero terms of total degree exactly `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct MSeries {
    vars: Vec<String>,
    comps: Vec<Component>,
}

fn degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

fn add_mono(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn add_term(comp: &mut Component, m: Monomial, c: Rational) {
    use std::collections::btree_map::Entry;
    match comp.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `acc += a * b` for homogeneous components.
fn mul_acc(acc: &mut Component, a: &Component, b: &Component) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            *acc.entry(add_mono(ma, mb)).or_insert_with(Rational::zero) += ca * cb;
        }
    }
}

fn prune(comp: &mut Component) {
    comp.retain(|_, c| !c.is_zero());
}

fn scale_comp(comp: &Component, c: &Rational) -> Component {
    if c.is_zero() {
        return Component::new();
    }
    comp.iter().map(|(m, v)| (m.clone(), v * c)).collect()
}

impl MSeries {
    pub fn zero<S: AsRef<str>>(vars: &[S], maxdeg: usize) -> Self {
        MSeries {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            comps: vec![Component::new(); maxdeg + 1],
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational, maxdeg: usize) -> Self {
        let mut s = MSeries::zero(vars, maxdeg);
        let m = vec![0; s.vars.len()];
        add_term(&mut s.comps[0], m, c);
        s
    }

    pub fn one<S: AsRef<str>>(vars: &[S], maxdeg: usize) -> Self {
        MSeries::constant(vars, Rational::one(), maxdeg)
    }

    /// The variable with the given name, which must be in `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str, maxdeg: usize) -> Self {
        let idx = vars
            .iter()
            .position(|v| v.as_ref() == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut m = vec![0; vars.len()];
        m[idx] = 1;
        MSeries::from_terms(vars, [(m, Rational::one())], maxdeg)
    }

    /// Sum of `c · monomial`; terms above `maxdeg` are dropped.
    pub fn from_terms<S, I>(vars: &[S], terms: I, maxdeg: usize) -> Self
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut s = MSeries::zero(vars, maxdeg);
        for (m, c) in terms {
            assert_eq!(m.len(), s.vars.len(), "monomial arity");
            let d = degree(&m);
            if d <= maxdeg {
                add_term(&mut s.comps[d], m, c);
            }
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn maxdeg(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        let d = degree(m);
        self.comps
            .get(d)
            .and_then(|c| c.get(m))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms, by total degree and then lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.comps.iter().flat_map(|c| c.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_empty())
    }

    /// Coefficient of `Π x_i^{e_i} / e_i!`.
    pub fn egf_coeff(&self, m: &[u32]) -> Result<Rational> {
        if degree(m) > self.maxdeg() {
            return Err(Error::series(format!(
                "exponent {m:?} is beyond total degree {}",
                self.maxdeg()
            )));
        }
        let f: BigInt = m.iter().map(|&e| factorial(e)).product();
        Ok(self.coeff(m) * int(f))
    }

    /// [`Self::egf_coeff`], required to be an integer.
    pub fn egf_extract(&self, m: &[u32]) -> Result<BigInt> {
        let c = self.egf_coeff(m)?;
        if c.is_integer() {
            Ok(c.to_integer())
        } else {
            Err(Error::series(format!(
                "EGF coefficient at {m:?} is {c}, not an integer"
            )))
        }
    }

    pub fn truncate(&self, maxdeg: usize) -> Self {
        let mut comps = self.comps.clone();
        comps.resize(maxdeg + 1, Component::new());
        MSeries {
            vars: self.vars.clone(),
            comps,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MSeries {
            vars: self.vars.clone(),
            comps: self.comps.iter().map(|comp| scale_comp(comp, c)).collect(),
        }
    }

    fn check_vars(&self, rhs: &MSeries) {
        assert_eq!(self.vars, rhs.vars, "series over different variables");
    }

    fn const_term(&self) -> Rational {
        self.comps[0]
            .values()
            .next()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn require_zero_const(&self, what: &str) -> Result<()> {
        if self.comps[0].is_empty() {
            Ok(())
        } else {
            Err(Error::series(format!("{what} needs a zero constant term")))
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.const_term();
        if b0.is_zero() {
            return Err(Error::series("inverse of a series with zero constant term"));
        }
        let inv0 = b0.recip();
        let neg_inv0 = -&inv0;
        let n = self.maxdeg();
        let mut g = vec![Component::new(); n + 1];
        g[0] = scale_comp(&self.comps[0], &(&inv0 * &inv0));
        for d in 1..=n {
            let mut acc = Component::new();
            for k in 1..=d {
                mul_acc(&mut acc, &self.comps[k], &g[d - k]);
            }
            prune(&mut acc);
            g[d] = scale_comp(&acc, &neg_inv0);
        }
        Ok(MSeries {
            vars: self.vars.clone(),
            comps: g,
        })
    }

    pub fn div(&self, rhs: &MSeries) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.const_term().is_one() {
            return Err(Error::series("sqrt needs constant term 1"));
        }
        let n = self.maxdeg();
        let half = Rational::new(1.into(), 2.into());
        let mut s = vec![Component::new(); n + 1];
        s[0] = self.comps[0].clone();
        for d in 1..=n {
            let mut acc = Component::new();
            for k in 1..d {
                mul_acc(&mut acc, &s[k], &s[d - k]);
            }
            let mut comp = self.comps[d].clone();
            for (m, c) in acc {
                add_term(&mut comp, m, -c);
            }
            s[d] = scale_comp(&comp, &half);
        }
        Ok(MSeries {
            vars: self.vars.clone(),
            comps: s,
        })
    }

    /// Components scaled by their degree: the Euler operator `Σ x_i ∂/∂x_i`.
    fn euler_operator(&self) -> Vec<Component> {
        self.comps
            .iter()
            .enumerate()
            .map(|(d, c)| scale_comp(c, &int(d as i64)))
            .collect()
    }

    /// `exp(self)`: with `E` the Euler operator, `E f = f · E u`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_const("exp")?;
        let n = self.maxdeg();
        let eu = self.euler_operator();
        let mut f = vec![Component::new(); n + 1];
        f[0] = MSeries::one(&self.vars, 0).comps.swap_remove(0);
        for d in 1..=n {
            let mut acc = Component::new();
            for k in 1..=d {
                mul_acc(&mut acc, &eu[k], &f[d - k]);
            }
            prune(&mut acc);
            f[d] = scale_comp(&acc, &Rational::new(1.into(), (d as i64).into()));
        }
        Ok(MSeries {
            vars: self.vars.clone(),
            comps: f,
        })
    }

    fn sin_cos(&self, hyperbolic: bool) -> Result<(Self, Self)> {
        self.require_zero_const("sin/cos")?;
        let n = self.maxdeg();
        let eu = self.euler_operator();
        let mut s = vec![Component::new(); n + 1];
        let mut c = vec![Component::new(); n + 1];
        c[0] = MSeries::one(&self.vars, 0).comps.swap_remove(0);
        for d in 1..=n {
            let (mut ds, mut dc) = (Component::new(), Component::new());
            for k in 1..=d {
                mul_acc(&mut ds, &eu[k], &c[d - k]);
                mul_acc(&mut dc, &eu[k], &s[d - k]);
            }
            prune(&mut ds);
            prune(&mut dc);
            let inv = Rational::new(1.into(), (d as i64).into());
            s[d] = scale_comp(&ds, &inv);
            c[d] = scale_comp(&dc, &if hyperbolic { inv } else { -inv });
        }
        let wrap = |comps| MSeries {
            vars: self.vars.clone(),
            comps,
        };
        Ok((wrap(s), wrap(c)))
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

    /// `f(u)` for a univariate `f` and `u` with zero constant term.
    pub fn compose_univariate(f: &USeries, u: &MSeries) -> Result<Self> {
        u.require_zero_const("composition")?;
        let n = u.maxdeg().min(f.order());
        let mut acc = MSeries::constant(&u.vars, f.coeff(n), u.maxdeg());
        for k in (0..n).rev() {
            acc = &(&acc * u) + &MSeries::constant(&u.vars, f.coeff(k), u.maxdeg());
        }
        Ok(acc)
    }

    /// Exact division by `v^k`. The truncation degree drops by `k`.
    pub fn div_by_var(&self, var: &str, k: u32) -> Result<Self> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::series(format!("no variable {var}")))?;
        let newdeg = self
            .maxdeg()
            .checked_sub(k as usize)
            .ok_or_else(|| Error::series("shift beyond truncation degree"))?;
        let mut terms = Vec::new();
        for (m, c) in self.terms() {
            if m[idx] < k {
                return Err(Error::series(format!(
                    "division by {var}^{k} with a term {m:?} of lower {var}-degree"
                )));
            }
            let mut m = m.clone();
            m[idx] -= k;
            terms.push((m, c.clone()));
        }
        Ok(MSeries::from_terms(&self.vars, terms, newdeg))
    }

    /// The coefficient of `v^k`, as a series in the remaining variables.
    pub fn coefficient_of(&self, var: &str, k: u32) -> Result<Self> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::series(format!("no variable {var}")))?;
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let newdeg = self.maxdeg().saturating_sub(k as usize);
        let terms = self.terms().filter(|(m, _)| m[idx] == k).map(|(m, c)| {
            let mut m = m.clone();
            m.remove(idx);
            (m, c.clone())
        });
        Ok(MSeries::from_terms(
            &vars,
            terms.collect::<Vec<_>>(),
            newdeg,
        ))
    }

    /// Replace `s^2` by `z`: every term must have even `s`-degree, and `s^{2k}`
    /// becomes `z^k` in the same slot.
    pub fn eliminate_square_root(&self, s: &str, z: &str) -> Result<Self> {
        let idx = self
            .var_index(s)
            .ok_or_else(|| Error::series(format!("no variable {s}")))?;
        let mut vars = self.vars.clone();
        vars[idx] = z.to_string();
        let mut terms = Vec::new();
        for (m, c) in self.terms() {
            if m[idx] % 2 == 1 {
                return Err(Error::series(format!(
                    "odd power of {s} survives at {m:?} with coefficient {c}"
                )));
            }
            let mut m = m.clone();
            m[idx] /= 2;
            terms.push((m, c.clone()));
        }
        Ok(MSeries::from_terms(&vars, terms, self.maxdeg()))
    }

    /// Sum of terms whose exponents satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        MSeries {
            vars: self.vars.clone(),
            comps: self
                .comps
                .iter()
                .map(|c| {
                    c.iter()
                        .filter(|(m, _)| keep(m))
                        .map(|(m, v)| (m.clone(), v.clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

impl Add for &MSeries {
    type Output = MSeries;
    fn add(self, rhs: &MSeries) -> MSeries {
        self.check_vars(rhs);
        let n = self.maxdeg().min(rhs.maxdeg());
        let mut comps = self.comps[..=n].to_vec();
        for (d, comp) in rhs.comps[..=n].iter().enumerate() {
            for (m, c) in comp {
                add_term(&mut comps[d], m.clone(), c.clone());
            }
        }
        MSeries {
            vars: self.vars.clone(),
            comps,
        }
    }
}

impl Neg for &MSeries {
    type Output = MSeries;
    fn neg(self) -> MSeries {
        self.scale(&-Rational::one())
    }
}

impl Sub for &MSeries {
    type Output = MSeries;
    fn sub(self, rhs: &MSeries) -> MSeries {
        self + &(-rhs)
    }
}

impl Mul for &MSeries {
    type Output = MSeries;
    fn mul(self, rhs: &MSeries) -> MSeries {
        self.check_vars(rhs);
        let n = self.maxdeg().min(rhs.maxdeg());
        let mut comps = vec![Component::new(); n + 1];
        for (d, out) in comps.iter_mut().enumerate() {
            for i in 0..=d {
                mul_acc(out, &self.comps[i], &rhs.comps[d - i]);
            }
            prune(out);
        }
        MSeries {
            vars: self.vars.clone(),
            comps,
        }
    }
}

impl fmt::Debug for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MSeries[{}; deg ≤ {}](",
            self.vars.join(","),
            self.maxdeg()
        )?;
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, e) in self.vars.iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "·{v}")?,
                    e => write!(f, "·{v}^{e}")?,
                }
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn bipartite_signed_a_numbers_from_egf() {
        let d = 6;
        let x = MSeries::var(&XY, "x", d);
        let y = MSeries::var(&XY, "y", d);
        let one = MSeries::one(&XY, d);
        let num = &(&x.cosh().unwrap() + &y.cosh().unwrap()) - &one;
        let f = num.div(&(&x + &y).cosh().unwrap()).unwrap();
        assert_eq!(f.egf_extract(&[0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(f.egf_extract(&[1, 1]).unwrap(), BigInt::from(-1));
        assert_eq!(f.egf_extract(&[2, 2]).unwrap(), BigInt::from(3));
        assert_eq!(f.egf_extract(&[1, 3]).unwrap(), BigInt::from(2));
        assert!(f.egf_coeff(&[4, 3]).is_err());
    }

    #[test]
    fn ring_laws_and_division() {
        let d = 5;
        let a = MSeries::from_terms(
            &XY,
            [
                (vec![0, 0], rat(2, 1)),
                (vec![1, 0], rat(1, 3)),
                (vec![1, 2], rat(-5, 2)),
            ],
            d,
        );
        let b = MSeries::from_terms(
            &XY,
            [
                (vec![0, 0], rat(-1, 1)),
                (vec![0, 1], rat(7, 1)),
                (vec![2, 1], rat(1, 4)),
            ],
            d,
        );
        assert_eq!(&a * &b, &b * &a);
        assert_eq!((&a * &b).div(&b).unwrap(), a);
        assert_eq!(&(&a + &b) - &b, a);
        let c = MSeries::var(&XY, "x", d).exp().unwrap();
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn sqrt_squares_back() {
        let d = 6;
        let a = MSeries::from_terms(
            &XY,
            [
                (vec![0, 0], rat(1, 1)),
                (vec![1, 0], rat(3, 1)),
                (vec![1, 1], rat(-2, 7)),
            ],
            d,
        );
        let r = a.sqrt().unwrap();
        assert_eq!(&r * &r, a);
        assert!(MSeries::var(&XY, "x", d).sqrt().is_err());
    }

    #[test]
    fn hyperbolic_and_circular_identities() {
        let d = 8;
        let u = &MSeries::var(&XY, "x", d) + &MSeries::var(&XY, "y", d).scale(&rat(2, 1));
        let one = MSeries::one(&XY, d);
        let (ch, sh) = (u.cosh().unwrap(), u.sinh().unwrap());
        assert_eq!(&(&ch * &ch) - &(&sh * &sh), one);
        assert_eq!(&u.sech().unwrap() * &ch, one);
        let (c, s) = (u.cos().unwrap(), u.sin().unwrap());
        assert_eq!(&(&c * &c) + &(&s * &s), one);
    }

    #[test]
    fn square_root_elimination() {
        let vars = ["x", "s"];
        let d = 8;
        let xs = &MSeries::var(&vars, "x", d) * &MSeries::var(&vars, "s", d);
        let c = xs.cos().unwrap().eliminate_square_root("s", "z").unwrap();
        // cos(x√z) = 1 - x^2 z / 2 + x^4 z^2 / 24 - ...
        assert_eq!(c.vars(), ["x", "z"]);
        assert_eq!(c.coeff(&[2, 1]), rat(-1, 2));
        assert_eq!(c.coeff(&[4, 2]), rat(1, 24));
        assert!(xs.sin().unwrap().eliminate_square_root("s", "z").is_err());
    }

    #[test]
    fn coefficient_extraction_and_shift() {
        let d = 4;
        let x = MSeries::var(&XY, "x", d);
        let y = MSeries::var(&XY, "y", d);
        let p = &(&x * &y) + &(&(&y * &y) * &x);
        let c1 = p.coefficient_of("y", 1).unwrap();
        assert_eq!(c1.vars(), ["x"]);
        assert_eq!(c1.coeff(&[1]), rat(1, 1));
        assert_eq!(c1.coeff(&[0]), rat(0, 1));
        let q = p.div_by_var("x", 1).unwrap();
        assert_eq!(q.coeff(&[0, 2]), rat(1, 1));
        assert!(p.div_by_var("y", 2).is_err());
    }

    #[test]
    fn univariate_composition() {
        let d = 6;
        let geo = USeries::from_ints(&[1, 1, 1, 1, 1, 1, 1], d);
        let xy = &MSeries::var(&XY, "x", d) * &MSeries::var(&XY, "y", d);
        let f = MSeries::compose_univariate(&geo, &xy).unwrap();
        let expect = (&MSeries::one(&XY, d) - &xy).inverse().unwrap();
        assert_eq!(f, expect);
    }
}
