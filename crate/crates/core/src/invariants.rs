//! Signed a-numbers and everything derived from them, for arbitrary graphs.
//!
//! The signed a-number of every induced subgraph is tabulated by a DP over vertex
//! masks. Masks are visited in increasing numeric order, so every proper submask of
//! a mask is already final when the mask is reached. A disconnected mask is the
//! product of the component holding its least vertex and the rest; a connected
//! mask of odd size is 0; a connected mask of even size is minus the sum over all
//! its proper submasks.
//!
//! The table is first computed in `i128` with overflow checks. If any operation
//! would overflow the whole table is recomputed with `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, DEFAULT_CAP};
use crate::poly::IntPolynomial;

trait DpValue: Clone {
    fn dp_zero() -> Self;
    fn dp_one() -> Self;
    fn dp_is_zero(&self) -> bool;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_add_assign(&mut self, other: &Self) -> Option<()>;
    fn neg(self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl DpValue for i128 {
    fn dp_zero() -> Self {
        0
    }
    fn dp_one() -> Self {
        1
    }
    fn dp_is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    #[inline]
    fn checked_add_assign(&mut self, other: &Self) -> Option<()> {
        *self = self.checked_add(*other)?;
        Some(())
    }
    fn neg(self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl DpValue for BigInt {
    fn dp_zero() -> Self {
        Zero::zero()
    }
    fn dp_one() -> Self {
        One::one()
    }
    fn dp_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    #[inline]
    fn checked_add_assign(&mut self, other: &Self) -> Option<()> {
        *self += other;
        Some(())
    }
    fn neg(self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `s(g|_S)` for every mask `S`, or `None` on overflow of `V`.
fn tabulate<V: DpValue>(g: &Graph) -> Option<Vec<V>> {
    let n = g.n();
    let size = 1usize << n;
    let mut vals: Vec<V> = Vec::with_capacity(size);
    vals.push(V::dp_one());
    for mask in 1..size {
        let set = VertexSet(mask as u32);
        let low = set.first().expect("nonempty mask");
        let comp = g.component_of(low, set);
        let v = if comp != set {
            let rest = set.difference(comp);
            vals[comp.0 as usize].checked_mul(&vals[rest.0 as usize])?
        } else if set.len() % 2 == 1 {
            V::dp_zero()
        } else {
            let mut acc = V::dp_zero();
            let mut sub = (mask - 1) & mask;
            loop {
                acc.checked_add_assign(&vals[sub])?;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
            acc.neg()
        };
        vals.push(v);
    }
    Some(vals)
}

/// Per-size sums `Σ_{|S| = k} s(g|_S)` for `k = 0..=n`.
fn size_sums<V: DpValue>(vals: &[V], n: usize) -> Option<Vec<BigInt>> {
    let mut sums = vec![V::dp_zero(); n + 1];
    for (mask, v) in vals.iter().enumerate() {
        if !v.dp_is_zero() {
            sums[(mask as u32).count_ones() as usize].checked_add_assign(v)?;
        }
    }
    Some(sums.iter().map(DpValue::to_bigint).collect())
}

/// Exact invariants of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    /// `s(G)`
    pub snum: BigInt,
    /// `a(G)`
    pub anum: BigInt,
    /// `b(G)`, which is also the Euler characteristic.
    pub bnum: BigInt,
    /// `c_i(G)` for `i = 0..=n`.
    pub c: Vec<BigInt>,
    pub sa_poly: IntPolynomial,
    /// Rational Betti numbers `β_i = c_{2i}` for `i = 0..=n/2`.
    pub betti: Vec<BigInt>,
    pub euler: BigInt,
    pub poincare: IntPolynomial,
}

impl InvariantReport {
    /// All invariants follow from the signed a-polynomial and the vertex count.
    pub fn from_sa_polynomial(sa: IntPolynomial, n: usize) -> Self {
        let snum = sa.coeff(0);
        let anum = if n.is_multiple_of(2) {
            sign_pow(n / 2) * &snum
        } else {
            BigInt::zero()
        };
        let bnum: BigInt = sa.coeffs().iter().sum();
        let c: Vec<BigInt> = (0..=n)
            .map(|i| {
                if i % 2 == 1 {
                    BigInt::zero()
                } else {
                    sign_pow(i / 2) * sa.coeff(n - i)
                }
            })
            .collect();
        let betti: Vec<BigInt> = c.iter().step_by(2).cloned().collect();
        let poincare = IntPolynomial::new(betti.clone());
        InvariantReport {
            n,
            snum,
            anum,
            euler: bnum.clone(),
            bnum,
            c,
            sa_poly: sa,
            betti,
            poincare,
        }
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson::from(self)
    }
}

fn sign_pow(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `P(z) = Σ_j (-1)^j [t^{n-2j}] sa(t) z^j`, the Betti generating polynomial.
pub fn poincare_from_sa(sa: &IntPolynomial, n: usize) -> IntPolynomial {
    IntPolynomial::new(
        (0..=n / 2)
            .map(|j| sign_pow(j) * sa.coeff(n - 2 * j))
            .collect(),
    )
}

/// Wire form of an [`InvariantReport`]: every integer is a decimal string and
/// polynomials are coefficient lists from exponent 0 upward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub snum: String,
    pub anum: String,
    pub bnum: String,
    pub c: Vec<String>,
    pub sa_poly: Vec<String>,
    pub betti: Vec<String>,
    pub euler: String,
    pub poincare: Vec<String>,
}

fn strs(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(BigInt::to_string).collect()
}

impl From<&InvariantReport> for ReportJson {
    fn from(r: &InvariantReport) -> Self {
        ReportJson {
            snum: r.snum.to_string(),
            anum: r.anum.to_string(),
            bnum: r.bnum.to_string(),
            c: strs(&r.c),
            sa_poly: strs(r.sa_poly.coeffs()),
            betti: strs(&r.betti),
            euler: r.euler.to_string(),
            poincare: strs(r.poincare.coeffs()),
        }
    }
}

/// Invariant computations under a vertex cap.
#[derive(Clone, Copy, Debug)]
pub struct Engine {
    cap: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { cap: DEFAULT_CAP }
    }
}

impl Engine {
    pub fn with_cap(cap: usize) -> Self {
        Engine { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if g.n() > self.cap {
            Err(Error::CapExceeded {
                n: g.n(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// `s(g|_S)` for every vertex mask `S`, indexed by the mask.
    pub fn induced_values(&self, g: &Graph) -> Result<Vec<BigInt>> {
        self.check(g)?;
        Ok(match tabulate::<i128>(g) {
            Some(v) => v.iter().map(DpValue::to_bigint).collect(),
            None => tabulate::<BigInt>(g).expect("BigInt never overflows"),
        })
    }

    /// Coefficients `Σ_{|S| = k} s(g|_S)` for `k = 0..=n`, and `s(g)`.
    fn size_sums(&self, g: &Graph) -> Result<(Vec<BigInt>, BigInt)> {
        self.check(g)?;
        let n = g.n();
        let full = (1usize << n) - 1;
        if let Some(vals) = tabulate::<i128>(g) {
            if let Some(sums) = size_sums(&vals, n) {
                return Ok((sums, BigInt::from(vals[full])));
            }
        }
        let vals = tabulate::<BigInt>(g).expect("BigInt never overflows");
        let sums = size_sums(&vals, n).expect("BigInt never overflows");
        let s = vals[full].clone();
        Ok((sums, s))
    }

    pub fn signed_a_number(&self, g: &Graph) -> Result<BigInt> {
        Ok(self.size_sums(g)?.1)
    }

    /// `sa(g; t) = Σ_{V' ⊆ V} s(g|_{V'}) t^{|V \ V'|}`
    pub fn signed_a_polynomial(&self, g: &Graph) -> Result<IntPolynomial> {
        let (sums, _) = self.size_sums(g)?;
        Ok(IntPolynomial::new(sums.into_iter().rev().collect()))
    }

    pub fn invariant_report(&self, g: &Graph) -> Result<InvariantReport> {
        Ok(InvariantReport::from_sa_polynomial(
            self.signed_a_polynomial(g)?,
            g.n(),
        ))
    }

    pub fn poincare_polynomial(&self, g: &Graph) -> Result<IntPolynomial> {
        Ok(poincare_from_sa(&self.signed_a_polynomial(g)?, g.n()))
    }
}

pub fn signed_a_number(g: &Graph) -> Result<BigInt> {
    Engine::default().signed_a_number(g)
}

pub fn signed_a_polynomial(g: &Graph) -> Result<IntPolynomial> {
    Engine::default().signed_a_polynomial(g)
}

pub fn invariant_report(g: &Graph) -> Result<InvariantReport> {
    Engine::default().invariant_report(g)
}

pub fn poincare_polynomial(g: &Graph) -> Result<IntPolynomial> {
    Engine::default().poincare_polynomial(g)
}

/// `s(g|_S)` for every mask using only the single-sum form of the definition:
/// zero if some component is odd, otherwise minus the sum over proper submasks.
/// No product rule; quadratic-in-`2^n` work, so only for small graphs.
pub fn induced_values_by_subset_sum(g: &Graph) -> Vec<BigInt> {
    let n = g.n();
    assert!(n <= 16, "reference route is for small graphs");
    let size = 1usize << n;
    let mut vals = vec![BigInt::zero(); size];
    vals[0] = BigInt::one();
    for mask in 1..size {
        let set = VertexSet(mask as u32);
        let odd = crate::graph::connected_components(g, set)
            .iter()
            .any(|c| c.len() % 2 == 1);
        if odd {
            continue;
        }
        let mut acc = BigInt::zero();
        for sub in set.subsets().filter(|&s| s != set) {
            acc += &vals[sub.0 as usize];
        }
        vals[mask] = -acc;
    }
    vals
}

impl InvariantReport {
    /// Structural checks every report must satisfy.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let n = self.n;
        if self.c.len() != n + 1 {
            return Err(format!("c has length {}, expected {}", self.c.len(), n + 1));
        }
        if let Some((i, _)) = self
            .c
            .iter()
            .enumerate()
            .find(|(i, c)| i % 2 == 1 && !c.is_zero())
        {
            return Err(format!("c_{i} is nonzero for odd i"));
        }
        if self.c[n] != self.anum {
            return Err(format!("c_n = {} but a = {}", self.c[n], self.anum));
        }
        if self.anum.is_negative() || self.c.iter().any(Signed::is_negative) {
            return Err("negative a- or c-number".into());
        }
        if self.anum != self.snum.abs() {
            return Err(format!("a = {} but |s| = {}", self.anum, self.snum.abs()));
        }
        if self.sa_poly.leading() != Some(&BigInt::one()) || self.sa_poly.degree() != Some(n) {
            return Err("sa is not monic of degree n".into());
        }
        if self
            .sa_poly
            .coeffs()
            .iter()
            .enumerate()
            .any(|(k, c)| (n - k) % 2 == 1 && !c.is_zero())
        {
            return Err("sa has a term of the wrong parity".into());
        }
        if self.bnum != self.sa_poly.eval(&BigInt::one()) || self.euler != self.bnum {
            return Err("b differs from sa(1)".into());
        }
        let betti: Vec<BigInt> = self.c.iter().step_by(2).cloned().collect();
        if betti != self.betti || IntPolynomial::new(betti) != self.poincare {
            return Err("betti / poincare disagree with c".into());
        }
        Ok(())
    }
}
