//! Weighted Motzkin paths and the generalized Catalan numbers `B_n`.
//!
//! A path from `(0,0)` to `(n,0)` uses up `(1,1)`, horizontal `(1,0)` and down
//! `(1,-1)` steps and never goes below the axis. Up steps weigh 1, a horizontal
//! step at height `k` weighs `s_k`, a down step from height `k` to `k-1` weighs
//! `t_k`. `B_n` is the total weight.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RationalPolynomial};

/// A weight sequence given by a finite prefix followed by a constant tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSeq {
    pub initial: Vec<IntPolynomial>,
    pub tail: IntPolynomial,
}

impl WeightSeq {
    pub fn constant(c: IntPolynomial) -> Self {
        WeightSeq {
            initial: Vec::new(),
            tail: c,
        }
    }

    /// `(first, rest, rest, ...)`
    pub fn first_then(first: IntPolynomial, rest: IntPolynomial) -> Self {
        WeightSeq {
            initial: vec![first],
            tail: rest,
        }
    }

    pub fn get(&self, i: usize) -> &IntPolynomial {
        self.initial.get(i).unwrap_or(&self.tail)
    }
}

/// Horizontal weights `σ = (s_0, s_1, ...)` and down weights `τ = (t_1, t_2, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pub sigma: WeightSeq,
    /// `tau.get(0)` is `t_1`.
    pub tau: WeightSeq,
}

impl WeightSpec {
    /// `σ = (a, s, s, ...)`, `τ = (b, u, u, ...)`.
    pub fn two_level(
        a: IntPolynomial,
        s: IntPolynomial,
        b: IntPolynomial,
        u: IntPolynomial,
    ) -> Self {
        WeightSpec {
            sigma: WeightSeq::first_then(a, s),
            tau: WeightSeq::first_then(b, u),
        }
    }

    fn horizontal(&self, height: usize) -> &IntPolynomial {
        self.sigma.get(height)
    }

    /// Weight of a down step from `height` to `height - 1`.
    fn down(&self, height: usize) -> &IntPolynomial {
        self.tau.get(height - 1)
    }
}

/// `B_0, ..., B_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCatalan {
    pub values: Vec<IntPolynomial>,
}

/// Height-indexed DP; heights above `N/2` can never return to the axis in time.
pub fn generalized_catalan(w: &WeightSpec, max: usize) -> GeneralizedCatalan {
    let hmax = max / 2;
    let mut dp = vec![IntPolynomial::zero(); hmax + 1];
    dp[0] = IntPolynomial::one();
    let mut values = vec![dp[0].clone()];
    for _ in 0..max {
        let mut next = vec![IntPolynomial::zero(); hmax + 1];
        for h in 0..=hmax {
            if dp[h].is_zero() {
                continue;
            }
            if h < hmax {
                next[h + 1] = &next[h + 1] + &dp[h];
            }
            next[h] = &next[h] + &(&dp[h] * w.horizontal(h));
            if h > 0 {
                next[h - 1] = &next[h - 1] + &(&dp[h] * w.down(h));
            }
        }
        dp = next;
        values.push(dp[0].clone());
    }
    GeneralizedCatalan { values }
}

/// Coefficients `B_0..=B_order` of the closed form
///
/// `B(z) = [(2u - b) + (bs - 2au) z - b √(1 - 2sz + (s² - 4u) z²)]
///       / [2(u - b) + 2(bs - 2au + ab) z + 2(a²u - abs + b²) z²]`
///
/// expanded over `Q[t]`. The denominator is cleared: with `d_k` its lowest
/// nonzero coefficient, `d_k B_n = N_{n+k} - Σ_{j>k} d_j B_{n+k-j}` is solved
/// by exact polynomial division.
pub fn gfgc_series(
    a: &IntPolynomial,
    s: &IntPolynomial,
    b: &IntPolynomial,
    u: &IntPolynomial,
    order: usize,
) -> Result<Vec<RationalPolynomial>> {
    let (a, s, b, u) = (
        a.to_rational(),
        s.to_rational(),
        b.to_rational(),
        u.to_rational(),
    );
    let c = |k: i64| RationalPolynomial::constant(BigRational::from_integer(k.into()));
    let two = c(2);

    let den = [
        &two * &(&u - &b),
        &two * &(&(&(&b * &s) - &(&c(2) * &(&a * &u))) + &(&a * &b)),
        &two * &(&(&(&(&a * &a) * &u) - &(&(&a * &b) * &s)) + &(&b * &b)),
    ];
    let k = den
        .iter()
        .position(|d| !d.is_zero())
        .ok_or_else(|| Error::Inexact("generalized Catalan denominator vanishes".into()))?;
    let len = order + k + 1;

    // √(1 - 2sz + (s² - 4u) z²) with polynomial coefficients
    let radicand = [c(1), &c(-2) * &s, &(&s * &s) - &(&c(4) * &u)];
    let half = RationalPolynomial::constant(BigRational::new(1.into(), 2.into()));
    let mut root: Vec<RationalPolynomial> = vec![c(1)];
    for d in 1..len {
        let mut acc = radicand
            .get(d)
            .cloned()
            .unwrap_or_else(RationalPolynomial::zero);
        for j in 1..d {
            acc = &acc - &(&root[j] * &root[d - j]);
        }
        root.push(&acc * &half);
    }

    let num: Vec<RationalPolynomial> = (0..len)
        .map(|d| {
            let lin = match d {
                0 => &(&two * &u) - &b,
                1 => &(&b * &s) - &(&two * &(&a * &u)),
                _ => RationalPolynomial::zero(),
            };
            &lin - &(&b * &root[d])
        })
        .collect();

    if let Some(j) = (0..k).find(|&j| !num[j].is_zero()) {
        return Err(Error::Inexact(format!(
            "numerator has a nonzero z^{j} term below the denominator's order {k}"
        )));
    }

    let mut out: Vec<RationalPolynomial> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut rhs = num[n + k].clone();
        for (j, dj) in den.iter().enumerate().skip(k + 1) {
            if n + k >= j {
                rhs = &rhs - &(dj * &out[n + k - j]);
            }
        }
        out.push(rhs.div_exact(&den[k])?);
    }
    Ok(out)
}

/// [`gfgc_series`] with every coefficient required to be integral.
pub fn gfgc_series_int(
    a: &IntPolynomial,
    s: &IntPolynomial,
    b: &IntPolynomial,
    u: &IntPolynomial,
    order: usize,
) -> Result<Vec<IntPolynomial>> {
    gfgc_series(a, s, b, u, order)?
        .into_iter()
        .enumerate()
        .map(|(n, p)| {
            p.to_integer()
                .ok_or_else(|| Error::Inexact(format!("B_{n} = {p} is not integral")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    fn t() -> IntPolynomial {
        ip(&[0, 1])
    }

    #[test]
    fn dyck_paths_give_catalan_numbers() {
        let w = WeightSpec {
            sigma: WeightSeq::constant(IntPolynomial::zero()),
            tau: WeightSeq::constant(IntPolynomial::one()),
        };
        let b = generalized_catalan(&w, 10);
        let expect = [1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(b.values[n], ip(&[*e]), "B_{n}");
        }
    }

    #[test]
    fn first_values() {
        let w = WeightSpec::two_level(ip(&[3, 1]), ip(&[5]), ip(&[7]), ip(&[11]));
        let b = generalized_catalan(&w, 2);
        assert_eq!(b.values[0], IntPolynomial::one());
        assert_eq!(b.values[1], ip(&[3, 1]));
        // HH + UD
        assert_eq!(b.values[2], &ip(&[3, 1]).pow(2) + &ip(&[7]));
    }

    #[test]
    fn path_graph_weights() {
        let w = WeightSpec::two_level(t(), IntPolynomial::zero(), ip(&[-1]), ip(&[-1]));
        let b = generalized_catalan(&w, 4);
        assert_eq!(b.values[4], ip(&[2, 0, -3, 0, 1]));
    }

    #[test]
    fn closed_form_path_parameterization() {
        let zero = IntPolynomial::zero();
        let b = gfgc_series_int(&t(), &zero, &ip(&[-1]), &ip(&[-1]), 6).unwrap();
        assert_eq!(b[4], ip(&[2, 0, -3, 0, 1]));
        assert_eq!(b[1], t());
    }

    #[test]
    fn closed_form_catalan_parameterization() {
        let zero = IntPolynomial::zero();
        let b = gfgc_series_int(&zero, &zero, &ip(&[1]), &ip(&[1]), 6).unwrap();
        assert_eq!(b[4], ip(&[2]));
        assert_eq!(b[6], ip(&[5]));
    }

    #[test]
    fn motzkin_numbers() {
        let w = WeightSpec {
            sigma: WeightSeq::constant(IntPolynomial::one()),
            tau: WeightSeq::constant(IntPolynomial::one()),
        };
        let b = generalized_catalan(&w, 5);
        let expect: Vec<IntPolynomial> = [1, 1, 2, 4, 9, 21].iter().map(|&m| ip(&[m])).collect();
        assert_eq!(b.values, expect);
    }

    #[test]
    fn vanishing_denominator_is_an_error() {
        let zero = IntPolynomial::zero();
        assert!(gfgc_series(&zero, &zero, &zero, &zero, 3).is_err());
    }
}
