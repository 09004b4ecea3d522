//! Catalog of generating-function identities, each checked by expanding the
//! closed form as an exact truncated series and comparing every coefficient with
//! values computed independently by the invariant engine or the closed forms.
//!
//! Orders count the degree in the primary series variables (`x`, or `x, y`, or
//! `x1, x2, x3`). Auxiliary variables (`t`, the square-root surrogate `s`, the
//! Poincaré variable `z`) ride along with a doubled total-degree budget, which
//! is enough because their degree never exceeds the primary degree. Identities
//! whose denominator has no invertible constant term are checked in cleared form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::closed_forms::{
    binomial, catalan_triangle, cycle_c_numbers, euler_polynomials, family_sa_polynomial,
    sa_from_even_c_numbers, zigzag, MultipartiteTable,
};
use crate::error::{Error, Result};
use crate::graph::{build_family, GraphFamily, MAX_CAP};
use crate::invariants::{poincare_from_sa, Engine};
use crate::motzkin::{generalized_catalan, gfgc_series, WeightSpec};
use crate::poly::{IntPolynomial, RationalPolynomial};
use crate::series::{factorial, int, rat, MSeries, Monomial, Rational, USeries};

/// Graphs up to this size get their reference values from the brute-force
/// engine; larger ones fall back to the closed forms.
const ENGINE_REFERENCE_MAX: usize = 14;

macro_rules! identities {
    ($($variant:ident => $name:literal, $arity:ident, $vars:expr, $formula:literal;)*) => {
        /// One displayed generating-function identity.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$variant => $name,)* }
            }

            pub fn arity(self) -> Arity {
                match self { $(IdentityId::$variant => Arity::$arity,)* }
            }

            pub fn variables(self) -> &'static [&'static str] {
                match self { $(IdentityId::$variant => $vars,)* }
            }

            pub fn formula(self) -> &'static str {
                match self { $(IdentityId::$variant => $formula,)* }
            }
        }
    };
}

identities! {
    PathSaGf => "path_sa_gf", Univariate, &["x", "t"],
        "Σ sa(P_n;t) x^n = (-1 + 2tx + √(1+4x²)) / (2tx - 2(t²-1)x²)";
    PathEvenSaGf => "path_even_sa_gf", Univariate, &["x", "t"],
        "Σ sa(P_2n;t) x^2n = (-(t²+1) - (t²-1)√(1+4x²)) / (-2t² + 2(t²-1)²x²)";
    CycleSaGf => "cycle_sa_gf", Univariate, &["x", "t"],
        "Σ sa(C_n;t) x^n = 1/2 + ((t²+1)x + t√(1+4x²)) / (2√(1+4x²) (t - (t²-1)x))";
    CompleteSaEgf => "complete_sa_egf", Univariate, &["x", "t"],
        "Σ sa(K_n;t) x^n/n! = e^{tx} sech x";
    StarSaEgf => "star_sa_egf", Univariate, &["x", "t"],
        "Σ sa(K_{1,n};t) x^n/n! = e^{tx} (t - tanh x)";
    CatalanTriangleGf => "catalan_triangle_gf", Univariate, &["z", "w"],
        "Σ Cat_{n,i} w^i z^n = Cat(wz) / (1 - z Cat(wz)), Cat(x) = (1 - √(1-4x)) / (2x)";
    CentralBinomialGf => "central_binomial_gf", Univariate, &["z", "w"],
        "Σ C(2n,n) z^n = 1/√(1-4z); Σ C(2n+k,n) w^k z^n = 1 / (√(1-4z) (1 - w Cat(z)))";
    ZigzagEgf => "zigzag_egf", Univariate, &["z"],
        "Σ A_n z^n/n! = sec z + tan z";
    SnumT0Path => "snum_t0_path", Univariate, &["x"],
        "Σ s(P_n) x^n = (-1 + √(1+4x²)) / (2x²) = Σ (-1)^m Cat_m x^2m";
    SnumT0Cycle => "snum_t0_cycle", Univariate, &["x"],
        "Σ s(C_n) x^n = 1/2 + 1/(2√(1+4x²)) = 1 + Σ_{m≥1} (-1)^m C(2m,m)/2 x^2m";
    SnumT0Complete => "snum_t0_complete", Univariate, &["x"],
        "Σ s(K_n) x^n/n! = sech x = Σ (-1)^m A_2m x^2m/(2m)!";
    SnumT0Star => "snum_t0_star", Univariate, &["x"],
        "Σ s(K_{1,n}) x^n/n! = -tanh x = Σ_{m≥1} (-1)^m A_{2m-1} x^{2m-1}/(2m-1)!";
    BnumT1Path => "bnum_t1_path", Univariate, &["x"],
        "Σ b(P_n) x^n = 1 + (-1 + √(1+4x²)) / (2x) = 1 + Σ (-1)^m Cat_m x^{2m+1}";
    BnumT1Cycle => "bnum_t1_cycle", Univariate, &["x"],
        "Σ b(C_n) x^n = 1 + x/√(1+4x²) = 1 + Σ (-1)^m C(2m,m) x^{2m+1}";
    BnumT1Complete => "bnum_t1_complete", Univariate, &["x"],
        "Σ b(K_n) x^n/n! = 1 + tanh x = 1 + Σ (-1)^m A_{2m+1} x^{2m+1}/(2m+1)!";
    BnumT1Star => "bnum_t1_star", Univariate, &["x"],
        "Σ b(K_{1,n}) x^n/n! = sech x = Σ (-1)^m A_2m x^2m/(2m)!";
    PoincarePath => "poincare_path", Univariate, &["x", "z"],
        "Σ P_{M(P_n)}(z) x^n = (-1 + 2x + √(1-4zx²)) / (2x - 2(1+z)x²)";
    PoincareCycle => "poincare_cycle", Univariate, &["x", "z"],
        "Σ P_{M(C_n)}(z) x^n = 1/2 + ((1-z)x + √(1-4zx²)) / (2√(1-4zx²) (1 - (1+z)x))";
    PoincareComplete => "poincare_complete", Univariate, &["x", "z"],
        "Σ P_{M(K_n)}(z) x^n/n! = e^x sec(x√z)";
    PoincareStar => "poincare_star", Univariate, &["x", "z"],
        "Σ P_{M(K_{1,n})}(z) x^n/n! = e^x (1 + √z tan(x√z))";
    BipartiteSnumEgf => "bipartite_snum_egf", Bivariate, &["x", "y"],
        "Σ s(K_{p,q}) x^p/p! y^q/q! = (cosh x + cosh y - 1) / cosh(x+y)";
    MultipartiteSnumEgf => "multipartite_snum_egf", Trivariate, &["x1", "x2", "x3"],
        "Σ s(K_{p1,p2,p3}) Π x_i^{p_i}/p_i! = (-2 + Σ cosh x_i) / cosh(x1+x2+x3)";
    BipartiteAnumEgf => "bipartite_anum_egf", Bivariate, &["x", "y"],
        "Σ a(K_{p,q}) x^p/p! y^q/q! = (cos x + cos y - 1) / cos(x+y)";
    MultipartiteAnumEgf => "multipartite_anum_egf", Trivariate, &["x1", "x2", "x3"],
        "Σ a(K_{p1,p2,p3}) Π x_i^{p_i}/p_i! = (-2 + Σ cos x_i) / cos(x1+x2+x3)";
    BipartiteSaEgf => "bipartite_sa_egf", Bivariate, &["x", "y", "t"],
        "Σ sa(K_{p,q};t) x^p/p! y^q/q! = e^{t(x+y)} (cosh x + cosh y - 1) / cosh(x+y)";
    MultipartiteSaEgf => "multipartite_sa_egf", Trivariate, &["x1", "x2", "x3", "t"],
        "Σ sa(K_{p1,p2,p3};t) Π x_i^{p_i}/p_i! = e^{t(x1+x2+x3)} (-2 + Σ cosh x_i) / cosh(x1+x2+x3)";
    BipartiteBnumEgf => "bipartite_bnum_egf", Bivariate, &["x", "y"],
        "Σ b(K_{p,q}) x^p/p! y^q/q! = e^{x+y} (cosh x + cosh y - 1) / cosh(x+y)";
    MultipartiteBnumEgf => "multipartite_bnum_egf", Trivariate, &["x1", "x2", "x3"],
        "Σ b(K_{p1,p2,p3}) Π x_i^{p_i}/p_i! = e^{x1+x2+x3} (-2 + Σ cosh x_i) / cosh(x1+x2+x3)";
    BipartitePoincareGf => "bipartite_poincare_gf", Bivariate, &["x", "y", "z"],
        "Σ P_{M(K_{p,q})}(z) x^p/p! y^q/q! = e^{x+y} (cos(x√z) + cos(y√z) - 1) / cos(x√z + y√z)";
    MultipartitePoincareGf => "multipartite_poincare_gf", Trivariate, &["x1", "x2", "x3", "z"],
        "Σ P_{M(K_{p1,p2,p3})}(z) Π x_i^{p_i}/p_i! = e^{x1+x2+x3} (-2 + Σ cos(x_i√z)) / cos((x1+x2+x3)√z)";
    SaQClosedForms => "sa_q_closed_forms", Univariate, &["x"],
        "SA_q(x) = ∂^q/∂y^q (cosh x + cosh y - 1)/cosh(x+y) at y=0, q = 0..4: 1, -tanh x, -2sech²x + sech x + 1, (6sech²x - 3sech x - 1) tanh x, 24sech⁴x - 12sech³x - 20sech²x + 7sech x + 1";
    EulerPolynomialEgf => "euler_polynomial_egf", Univariate, &["x", "t"],
        "Σ E_n(t) x^n/n! = 2e^{xt}/(e^x + 1), with sa(K_n;t) = 2^n E_n((t+1)/2)";
    GeneralizedCatalanGf => "generalized_catalan_gf", Univariate, &["z", "t"],
        "B(z) = ((2u-b) + (bs-2au)z - b√(1-2sz+(s²-4u)z²)) / (2(u-b) + 2(bs-2au+ab)z + 2(a²u-abs+b²)z²) for weighted Motzkin paths";
}

/// Number of primary series variables of an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arity {
    Univariate,
    Bivariate,
    Trivariate,
}

impl Arity {
    pub fn default_order(self) -> usize {
        match self {
            Arity::Univariate => 12,
            Arity::Bivariate => 10,
            Arity::Trivariate => 8,
        }
    }
}

impl IdentityId {
    pub fn default_order(self) -> usize {
        self.arity().default_order()
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Machine-readable catalog row.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub formula: &'static str,
    pub variables: &'static [&'static str],
    pub arity: Arity,
    pub default_order: usize,
}

pub fn catalog() -> Vec<CatalogEntry> {
    IdentityId::ALL
        .iter()
        .map(|&id| CatalogEntry {
            id: id.name(),
            formula: id.formula(),
            variables: id.variables(),
            arity: id.arity(),
            default_order: id.default_order(),
        })
        .collect()
}

/// First coefficient at which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub at: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub order: usize,
    pub passed: bool,
    /// Number of coefficients compared.
    pub checked: usize,
    pub mismatch: Option<Mismatch>,
}

#[derive(Default)]
struct Verifier {
    checked: usize,
    mismatch: Option<Mismatch>,
}

fn fmt_monomial(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

impl Verifier {
    fn record(&mut self, check: &str, at: String, expected: String, actual: String) {
        if self.mismatch.is_none() {
            self.mismatch = Some(Mismatch {
                check: check.to_string(),
                at,
                expected,
                actual,
            });
        }
    }

    /// Compare all coefficients at monomials accepted by `keep`.
    fn series(
        &mut self,
        check: &str,
        actual: &MSeries,
        expected: &MSeries,
        keep: impl Fn(&[u32]) -> bool,
    ) {
        assert_eq!(actual.vars(), expected.vars());
        let mut monos: Vec<&Monomial> = actual
            .terms()
            .chain(expected.terms())
            .map(|(m, _)| m)
            .filter(|m| keep(m))
            .collect();
        monos.sort_by_key(|m| (m.iter().sum::<u32>(), (*m).clone()));
        monos.dedup();
        for m in monos {
            self.checked += 1;
            let (a, e) = (actual.coeff(m), expected.coeff(m));
            if a != e {
                self.record(
                    check,
                    fmt_monomial(actual.vars(), m),
                    e.to_string(),
                    a.to_string(),
                );
            }
        }
    }

    fn useries(&mut self, check: &str, actual: &USeries, expected: &USeries, order: usize) {
        for k in 0..=order {
            self.checked += 1;
            let (a, e) = (actual.coeff(k), expected.coeff(k));
            if a != e {
                self.record(check, format!("x^{k}"), e.to_string(), a.to_string());
            }
        }
    }

    fn polys<T>(&mut self, check: &str, index: usize, actual: &T, expected: &T)
    where
        T: PartialEq + fmt::Display,
    {
        self.checked += 1;
        if actual != expected {
            self.record(
                check,
                format!("n={index}"),
                expected.to_string(),
                actual.to_string(),
            );
        }
    }

    fn finish(self, id: IdentityId, order: usize) -> VerificationReport {
        VerificationReport {
            id: id.name().to_string(),
            order,
            passed: self.mismatch.is_none(),
            checked: self.checked,
            mismatch: self.mismatch,
        }
    }
}

// ---------------------------------------------------------------------------
// Reference values

fn reference_sa(f: &GraphFamily) -> Result<IntPolynomial> {
    if f.vertex_count() <= ENGINE_REFERENCE_MAX {
        let g = build_family(f, MAX_CAP)?;
        Engine::with_cap(ENGINE_REFERENCE_MAX).signed_a_polynomial(&g)
    } else {
        family_sa_polynomial(f)
    }
}

/// `C_1` and `C_2` degenerate to the simple graphs `K_1` and `P_2`.
fn reference_cycle_sa(n: usize) -> Result<IntPolynomial> {
    match n {
        1 => reference_sa(&GraphFamily::Complete(1)),
        2 => reference_sa(&GraphFamily::Path(2)),
        _ => reference_sa(&GraphFamily::Cycle(n)),
    }
}

fn family_sequence(
    order: usize,
    f: impl Fn(usize) -> Result<IntPolynomial>,
) -> Result<Vec<IntPolynomial>> {
    (0..=order).map(f).collect()
}

fn snum_of(sa: &IntPolynomial) -> BigInt {
    sa.coeff(0)
}

fn bnum_of(sa: &IntPolynomial) -> BigInt {
    sa.eval(&BigInt::one())
}

fn fact(n: usize) -> Rational {
    int(factorial(n as u32))
}

/// `Σ_n Σ_k p_n[k] x^n t^k`, divided by `n!` when `egf`.
fn poly_sequence_series(vars: &[&str], polys: &[IntPolynomial], egf: bool, deg: usize) -> MSeries {
    let mut terms = Vec::new();
    for (n, p) in polys.iter().enumerate() {
        let scale = if egf { fact(n) } else { Rational::one() };
        for (k, c) in p.coeffs().iter().enumerate() {
            terms.push((vec![n as u32, k as u32], int(c.clone()) / &scale));
        }
    }
    MSeries::from_terms(vars, terms, deg)
}

fn int_sequence_series(values: &[BigInt], egf: bool, order: usize) -> USeries {
    if egf {
        USeries::from_egf(values, order)
    } else {
        USeries::from_coeffs(values.iter().map(|v| int(v.clone())).collect(), order)
    }
}

fn tuples(m: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

fn multipartite_reference(parts: &[usize], table: &mut MultipartiteTable) -> Result<IntPolynomial> {
    if parts.iter().sum::<usize>() <= ENGINE_REFERENCE_MAX {
        reference_sa(&GraphFamily::CompleteMultipartite(parts.to_vec()))
    } else {
        Ok(table.sa_polynomial(parts))
    }
}

// ---------------------------------------------------------------------------
// Builders

struct Ring {
    vars: Vec<&'static str>,
    deg: usize,
}

impl Ring {
    fn new(vars: &[&'static str], deg: usize) -> Self {
        Ring {
            vars: vars.to_vec(),
            deg,
        }
    }

    fn var(&self, name: &str) -> MSeries {
        MSeries::var(&self.vars, name, self.deg)
    }

    fn c(&self, n: i64, d: i64) -> MSeries {
        MSeries::constant(&self.vars, rat(n, d), self.deg)
    }

    fn one(&self) -> MSeries {
        self.c(1, 1)
    }

    fn idx(&self, name: &str) -> usize {
        self.vars.iter().position(|v| *v == name).expect("variable")
    }
}

fn primary_degree_at_most(idx: Vec<usize>, order: usize) -> impl Fn(&[u32]) -> bool {
    move |m: &[u32]| idx.iter().map(|&i| m[i] as usize).sum::<usize>() <= order
}

// ---------------------------------------------------------------------------
// Univariate families

fn verify_path_sa(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["x", "t"], 2 * order + 2);
    let (x, t) = (r.var("x"), r.var("t"));
    let root = (&r.one() + &(&x * &x).scale(&int(4))).sqrt()?;
    let num = &(&(&t * &x).scale(&int(2)) - &r.one()) + &root;
    let den = &(&t * &x).scale(&int(2)) - &(&(&(&t * &t) - &r.one()) * &(&x * &x)).scale(&int(2));
    let refs = family_sequence(order, |n| reference_sa(&GraphFamily::Path(n)))?;
    let f = poly_sequence_series(&["x", "t"], &refs, false, r.deg);
    v.series(
        "F·denominator = numerator",
        &(&f * &den),
        &num,
        primary_degree_at_most(vec![r.idx("x")], order),
    );
    Ok(())
}

fn verify_path_even_sa(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["x", "t"], 2 * order + 6);
    let (x, t) = (r.var("x"), r.var("t"));
    let t2 = &t * &t;
    let t2m1 = &t2 - &r.one();
    let root = (&r.one() + &(&x * &x).scale(&int(4))).sqrt()?;
    let num = &(-&(&t2 + &r.one())) - &(&t2m1 * &root);
    let den = &(-&t2.scale(&int(2))) + &(&(&t2m1 * &t2m1) * &(&x * &x)).scale(&int(2));
    let refs = family_sequence(order, |n| {
        if n % 2 == 0 {
            reference_sa(&GraphFamily::Path(n))
        } else {
            Ok(IntPolynomial::zero())
        }
    })?;
    let f = poly_sequence_series(&["x", "t"], &refs, false, r.deg);
    v.series(
        "F·denominator = numerator",
        &(&f * &den),
        &num,
        primary_degree_at_most(vec![r.idx("x")], order),
    );
    Ok(())
}

fn verify_cycle_sa(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["x", "t"], 2 * order + 4);
    let (x, t) = (r.var("x"), r.var("t"));
    let t2 = &t * &t;
    let root = (&r.one() + &(&x * &x).scale(&int(4))).sqrt()?;
    let rhs = &(&(&t2 + &r.one()) * &x) + &(&t * &root);
    let den = &t - &(&(&t2 - &r.one()) * &x);
    let refs = family_sequence(order, reference_cycle_sa)?;
    let f = poly_sequence_series(&["x", "t"], &refs, false, r.deg);
    let lhs = &(&(&f - &r.c(1, 2)) * &root.scale(&int(2))) * &den;
    v.series(
        "(F - 1/2)·2√(1+4x²)·(t - (t²-1)x) = (t²+1)x + t√(1+4x²)",
        &lhs,
        &rhs,
        primary_degree_at_most(vec![r.idx("x")], order),
    );
    Ok(())
}

fn verify_complete_sa(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["x", "t"], 2 * order);
    let x = r.var("x");
    let closed = &(&r.var("t") * &x).exp()? * &x.sech()?;
    let refs = family_sequence(order, |n| reference_sa(&GraphFamily::Complete(n)))?;
    let f = poly_sequence_series(&["x", "t"], &refs, true, r.deg);
    v.series(
        "e^{tx} sech x",
        &closed,
        &f,
        primary_degree_at_most(vec![0], order),
    );
    Ok(())
}

fn verify_star_sa(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["x", "t"], 2 * order + 1);
    let (x, t) = (r.var("x"), r.var("t"));
    let closed = &(&t * &x).exp()? * &(&t - &x.tanh()?);
    let refs = family_sequence(order, |n| reference_sa(&GraphFamily::Star(n)))?;
    let f = poly_sequence_series(&["x", "t"], &refs, true, r.deg);
    v.series(
        "e^{tx} (t - tanh x)",
        &closed,
        &f,
        primary_degree_at_most(vec![0], order),
    );
    Ok(())
}

/// `Cat(x) = (1 - √(1-4x)) / (2x)` to the given order.
pub fn catalan_series(order: usize) -> Result<USeries> {
    let root = USeries::from_ints(&[1, -4], order + 1).sqrt()?;
    Ok((&USeries::one(order + 1) - &root)
        .div_x_pow(1)?
        .scale(&rat(1, 2)))
}

fn verify_catalan_triangle(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["z", "w"], 2 * order + 2);
    let (z, w) = (r.var("z"), r.var("w"));
    let cat = MSeries::compose_univariate(&catalan_series(r.deg)?, &(&w * &z))?;
    let closed = cat.div(&(&r.one() - &(&z * &cat)))?;
    let mut terms = Vec::new();
    for n in 0..=order {
        for i in 0..=n + 1 {
            terms.push((
                vec![n as u32, i as u32],
                int(catalan_triangle(n as u64, i as u64)),
            ));
        }
    }
    let expected = MSeries::from_terms(&r.vars, terms, r.deg);
    v.series(
        "Cat(wz)/(1 - z Cat(wz))",
        &closed,
        &expected,
        primary_degree_at_most(vec![0], order),
    );
    Ok(())
}

fn verify_central_binomial(order: usize, v: &mut Verifier) -> Result<()> {
    let inv_root = USeries::from_ints(&[1, -4], order).sqrt()?.inverse()?;
    let central: Vec<BigInt> = (0..=order)
        .map(|n| binomial(2 * n as u64, n as i64))
        .collect();
    v.useries(
        "Σ C(2n,n) z^n = 1/√(1-4z)",
        &inv_root,
        &int_sequence_series(&central, false, order),
        order,
    );

    let r = Ring::new(&["z", "w"], order);
    let (z, w) = (r.var("z"), r.var("w"));
    let cat = MSeries::compose_univariate(&catalan_series(order)?, &z)?;
    let inv_root_m = MSeries::compose_univariate(&inv_root, &z)?;
    let closed = inv_root_m.div(&(&r.one() - &(&w * &cat)))?;
    let mut terms = Vec::new();
    for n in 0..=order {
        for k in 0..=order - n {
            terms.push((
                vec![n as u32, k as u32],
                int(binomial((2 * n + k) as u64, n as i64)),
            ));
        }
    }
    let expected = MSeries::from_terms(&r.vars, terms, r.deg);
    v.series(
        "Σ C(2n+k,n) w^k z^n = 1/(√(1-4z)(1 - w Cat(z)))",
        &closed,
        &expected,
        |_| true,
    );
    Ok(())
}

fn verify_zigzag(order: usize, v: &mut Verifier) -> Result<()> {
    let z = USeries::var(order);
    let closed = &z.sec()? + &z.tan()?;
    let a = zigzag(order);
    v.useries(
        "sec z + tan z",
        &closed,
        &int_sequence_series(a.values(), true, order),
        order,
    );
    Ok(())
}

fn sqrt_one_plus_4x2(order: usize) -> Result<USeries> {
    USeries::from_ints(&[1, 0, 4], order).sqrt()
}

fn verify_snum_t0(family: Family, order: usize, v: &mut Verifier) -> Result<()> {
    let sa = family.references(order)?;
    let values: Vec<BigInt> = sa.iter().map(snum_of).collect();
    let expected = int_sequence_series(&values, family.egf(), order);
    let a = zigzag(order + 1);
    let x = USeries::var(order);
    let (closed, series) = match family {
        Family::Path => {
            let root = sqrt_one_plus_4x2(order + 2)?;
            let closed = (&root - &USeries::one(order + 2))
                .div_x_pow(2)?
                .scale(&rat(1, 2));
            let mut cs = vec![Rational::zero(); order + 1];
            for m in 0..=order / 2 {
                cs[2 * m] = int(sign(m) * catalan_triangle(m as u64, m as u64));
            }
            (closed, USeries::from_coeffs(cs, order))
        }
        Family::Cycle => {
            let root = sqrt_one_plus_4x2(order)?;
            let closed = &USeries::constant(rat(1, 2), order) + &root.inverse()?.scale(&rat(1, 2));
            let mut cs = vec![Rational::zero(); order + 1];
            cs[0] = Rational::one();
            for m in 1..=order / 2 {
                cs[2 * m] = int(sign(m) * binomial(2 * m as u64, m as i64)) / int(2);
            }
            (closed, USeries::from_coeffs(cs, order))
        }
        Family::Complete => {
            let mut cs = vec![Rational::zero(); order + 1];
            for m in 0..=order / 2 {
                cs[2 * m] = int(sign(m) * a.get(2 * m)) / fact(2 * m);
            }
            (x.sech()?, USeries::from_coeffs(cs, order))
        }
        Family::Star => {
            let mut cs = vec![Rational::zero(); order + 1];
            for m in 1..=order.div_ceil(2) {
                cs[2 * m - 1] = int(sign(m) * a.get(2 * m - 1)) / fact(2 * m - 1);
            }
            (-&x.tanh()?, USeries::from_coeffs(cs, order))
        }
    };
    v.useries("closed form", &closed, &expected, order);
    v.useries("coefficient form", &series, &expected, order);
    Ok(())
}

fn verify_bnum_t1(family: Family, order: usize, v: &mut Verifier) -> Result<()> {
    let sa = family.references(order)?;
    let values: Vec<BigInt> = sa.iter().map(bnum_of).collect();
    let expected = int_sequence_series(&values, family.egf(), order);
    let a = zigzag(order + 1);
    let x = USeries::var(order);
    let one = USeries::one(order);
    let (closed, series) = match family {
        Family::Path => {
            let root = sqrt_one_plus_4x2(order + 1)?;
            let frac = (&root - &USeries::one(order + 1))
                .div_x_pow(1)?
                .scale(&rat(1, 2));
            let mut cs = vec![Rational::zero(); order + 1];
            cs[0] = Rational::one();
            for m in 0..=(order.saturating_sub(1)) / 2 {
                cs[2 * m + 1] = int(sign(m) * catalan_triangle(m as u64, m as u64));
            }
            (&one + &frac, USeries::from_coeffs(cs, order))
        }
        Family::Cycle => {
            let root = sqrt_one_plus_4x2(order)?;
            let mut cs = vec![Rational::zero(); order + 1];
            cs[0] = Rational::one();
            for m in 0..=(order.saturating_sub(1)) / 2 {
                cs[2 * m + 1] = int(sign(m) * binomial(2 * m as u64, m as i64));
            }
            (&one + &x.div(&root)?, USeries::from_coeffs(cs, order))
        }
        Family::Complete => {
            let mut cs = vec![Rational::zero(); order + 1];
            cs[0] = Rational::one();
            for m in 0..=(order.saturating_sub(1)) / 2 {
                cs[2 * m + 1] = int(sign(m) * a.get(2 * m + 1)) / fact(2 * m + 1);
            }
            (&one + &x.tanh()?, USeries::from_coeffs(cs, order))
        }
        Family::Star => {
            let mut cs = vec![Rational::zero(); order + 1];
            for m in 0..=order / 2 {
                cs[2 * m] = int(sign(m) * a.get(2 * m)) / fact(2 * m);
            }
            (x.sech()?, USeries::from_coeffs(cs, order))
        }
    };
    v.useries("closed form", &closed, &expected, order);
    v.useries("coefficient form", &series, &expected, order);
    Ok(())
}

fn sign(m: usize) -> BigInt {
    if m.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Path,
    Cycle,
    Complete,
    Star,
}

impl Family {
    fn egf(self) -> bool {
        matches!(self, Family::Complete | Family::Star)
    }

    fn reference(self, n: usize) -> Result<IntPolynomial> {
        match self {
            Family::Path => reference_sa(&GraphFamily::Path(n)),
            Family::Cycle => reference_cycle_sa(n),
            Family::Complete => reference_sa(&GraphFamily::Complete(n)),
            Family::Star => reference_sa(&GraphFamily::Star(n)),
        }
    }

    /// `sa` of members `0..=order`, and their vertex counts.
    fn references(self, order: usize) -> Result<Vec<IntPolynomial>> {
        (0..=order).map(|n| self.reference(n)).collect()
    }

    fn vertex_count(self, n: usize) -> usize {
        match self {
            Family::Star => n + 1,
            _ => n,
        }
    }
}

fn verify_poincare_family(family: Family, order: usize, v: &mut Verifier) -> Result<()> {
    let sa = family.references(order)?;
    let polys: Vec<IntPolynomial> = sa
        .iter()
        .enumerate()
        .map(|(n, p)| poincare_from_sa(p, family.vertex_count(n)))
        .collect();
    let deg = 2 * order + 2;
    let expected = poly_sequence_series(&["x", "z"], &polys, family.egf(), deg);
    let keep = primary_degree_at_most(vec![0], order);
    match family {
        Family::Path => {
            let r = Ring::new(&["x", "z"], deg);
            let (x, z) = (r.var("x"), r.var("z"));
            let root = (&r.one() - &(&z * &(&x * &x)).scale(&int(4))).sqrt()?;
            let num = &(&x.scale(&int(2)) - &r.one()) + &root;
            let den = &(&x - &(&(&r.one() + &z) * &(&x * &x))).scale(&int(2));
            let closed = num.div_by_var("x", 1)?.div(&den.div_by_var("x", 1)?)?;
            v.series("(-1+2x+√(1-4zx²))/(2x-2(1+z)x²)", &closed, &expected, keep);
        }
        Family::Cycle => {
            let r = Ring::new(&["x", "z"], deg);
            let (x, z) = (r.var("x"), r.var("z"));
            let root = (&r.one() - &(&z * &(&x * &x)).scale(&int(4))).sqrt()?;
            let frac =
                (&(&(&r.one() - &z) * &x) + &root).div(&(&r.one() - &(&(&r.one() + &z) * &x)))?;
            let closed = &r.c(1, 2) + &frac.div(&root.scale(&int(2)))?;
            v.series(
                "1/2 + ((1-z)x + √(1-4zx²))/(2√(1-4zx²)(1-(1+z)x))",
                &closed,
                &expected,
                keep,
            );
        }
        Family::Complete | Family::Star => {
            let r = Ring::new(&["x", "s"], deg);
            let (x, s) = (r.var("x"), r.var("s"));
            let xs = &x * &s;
            let closed = match family {
                Family::Complete => &x.exp()? * &xs.sec()?,
                _ => &x.exp()? * &(&r.one() + &(&s * &xs.tan()?)),
            };
            let closed = closed.eliminate_square_root("s", "z")?;
            v.series("closed form with s² = z", &closed, &expected, keep);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Complete multipartite graphs

#[derive(Clone, Copy, Debug)]
enum MultiKind {
    Snum,
    Anum,
    Sa,
    Bnum,
    Poincare,
}

const BIPARTITE_VARS: [&str; 2] = ["x", "y"];
const TRIPARTITE_VARS: [&str; 3] = ["x1", "x2", "x3"];

fn verify_multipartite(m: usize, kind: MultiKind, order: usize, v: &mut Verifier) -> Result<()> {
    let primary: &[&'static str] = if m == 2 {
        &BIPARTITE_VARS
    } else {
        &TRIPARTITE_VARS
    };
    let aux = match kind {
        MultiKind::Sa => Some("t"),
        MultiKind::Poincare => Some("s"),
        _ => None,
    };
    let mut vars: Vec<&'static str> = primary.to_vec();
    vars.extend(aux);
    let deg = if aux.is_some() { 2 * order } else { order };
    let r = Ring::new(&vars, deg);
    let xs: Vec<MSeries> = primary.iter().map(|n| r.var(n)).collect();
    let sum = xs.iter().skip(1).fold(xs[0].clone(), |acc, x| &acc + x);

    let (mut num, den) = match kind {
        MultiKind::Anum => {
            let mut num = r.c(1 - m as i64, 1);
            for x in &xs {
                num = &num + &x.cos()?;
            }
            (num, sum.cos()?)
        }
        MultiKind::Poincare => {
            let s = r.var("s");
            let mut num = r.c(1 - m as i64, 1);
            for x in &xs {
                num = &num + &(x * &s).cos()?;
            }
            (num, (&sum * &s).cos()?)
        }
        _ => {
            let mut num = r.c(1 - m as i64, 1);
            for x in &xs {
                num = &num + &x.cosh()?;
            }
            (num, sum.cosh()?)
        }
    };
    match kind {
        MultiKind::Sa => num = &num * &(&r.var("t") * &sum).exp()?,
        MultiKind::Bnum | MultiKind::Poincare => num = &num * &sum.exp()?,
        _ => {}
    }
    let mut closed = num.div(&den)?;
    if let MultiKind::Poincare = kind {
        closed = closed.eliminate_square_root("s", "z")?;
    }

    let mut table = MultipartiteTable::new();
    let mut terms = Vec::new();
    for parts in tuples(m, order) {
        let sa = multipartite_reference(&parts, &mut table)?;
        let n: usize = parts.iter().sum();
        let denom: Rational = parts.iter().map(|&p| fact(p)).product();
        let mono = |extra: Option<usize>| -> Monomial {
            let mut mo: Monomial = parts.iter().map(|&p| p as u32).collect();
            if let Some(k) = extra {
                mo.push(k as u32);
            }
            mo
        };
        match kind {
            MultiKind::Snum => terms.push((mono(None), int(snum_of(&sa)) / &denom)),
            MultiKind::Anum => terms.push((mono(None), int(snum_of(&sa).abs()) / &denom)),
            MultiKind::Bnum => terms.push((mono(None), int(bnum_of(&sa)) / &denom)),
            MultiKind::Sa => {
                for (k, c) in sa.coeffs().iter().enumerate() {
                    terms.push((mono(Some(k)), int(c.clone()) / &denom));
                }
            }
            MultiKind::Poincare => {
                for (k, c) in poincare_from_sa(&sa, n).coeffs().iter().enumerate() {
                    terms.push((mono(Some(k)), int(c.clone()) / &denom));
                }
            }
        }
    }
    let expected = MSeries::from_terms(closed.vars(), terms, deg);
    v.series(
        "closed form",
        &closed,
        &expected,
        primary_degree_at_most((0..m).collect(), order),
    );
    Ok(())
}

/// `SA_q(x) = Σ_p s(K_{p,q}) x^p / p!`, read off as `q!` times the coefficient
/// of `y^q` in the bipartite signed a-number EGF.
pub fn sa_q_series(q: usize, order: usize) -> Result<USeries> {
    let r = Ring::new(&BIPARTITE_VARS, order + q);
    let (x, y) = (r.var("x"), r.var("y"));
    let egf = (&(&x.cosh()? + &y.cosh()?) - &r.one()).div(&(&x + &y).cosh()?)?;
    let row = egf.coefficient_of("y", q as u32)?;
    let qf = fact(q);
    Ok(USeries::from_coeffs(
        (0..=order).map(|p| row.coeff(&[p as u32]) * &qf).collect(),
        order,
    ))
}

/// The displayed closed forms of `SA_0 .. SA_4`.
pub fn sa_q_closed_form(q: usize, order: usize) -> Result<USeries> {
    let x = USeries::var(order);
    let sech = x.sech()?;
    let tanh = x.tanh()?;
    let c = |k: i64| USeries::constant(int(k), order);
    let poly = |coeffs: &[i64]| -> USeries {
        // Σ coeffs[k] sech^k
        coeffs
            .iter()
            .enumerate()
            .fold(USeries::zero(order), |acc, (k, &a)| {
                &acc + &sech.pow(k as u32).scale(&int(a))
            })
    };
    Ok(match q {
        0 => c(1),
        1 => -&tanh,
        2 => poly(&[1, 1, -2]),
        3 => &poly(&[-1, -3, 6]) * &tanh,
        4 => poly(&[1, 7, -20, -12, 24]),
        _ => {
            return Err(Error::series(format!(
                "no displayed closed form for SA_{q}"
            )))
        }
    })
}

fn verify_sa_q(order: usize, v: &mut Verifier) -> Result<()> {
    let mut table = MultipartiteTable::new();
    for q in 0..=4 {
        let derived = sa_q_series(q, order)?;
        let closed = sa_q_closed_form(q, order)?;
        let values: Vec<BigInt> = (0..=order).map(|p| table.snum(&[p, q])).collect();
        let expected = int_sequence_series(&values, true, order);
        v.useries(
            &format!("SA_{q} from the bivariate EGF"),
            &derived,
            &expected,
            order,
        );
        v.useries(&format!("SA_{q} closed form"), &closed, &expected, order);
    }
    Ok(())
}

fn verify_euler_polynomials(order: usize, v: &mut Verifier) -> Result<()> {
    let r = Ring::new(&["x", "t"], 2 * order);
    let x = r.var("x");
    let closed = (&x * &r.var("t"))
        .exp()?
        .scale(&int(2))
        .div(&(&x.exp()? + &r.one()))?;
    // E_n(t) = 2^{-n} sa(K_n; 2t - 1)
    let arg = IntPolynomial::from_i64s(&[-1, 2]);
    let mut terms = Vec::new();
    for n in 0..=order {
        let sa = reference_sa(&GraphFamily::Complete(n))?;
        let e = sa.compose(&arg);
        let scale = fact(n) * int(BigInt::one() << n);
        for (k, c) in e.coeffs().iter().enumerate() {
            terms.push((vec![n as u32, k as u32], int(c.clone()) / &scale));
        }
    }
    let expected = MSeries::from_terms(&r.vars, terms, r.deg);
    v.series(
        "2e^{xt}/(e^x+1) against sa(K_n; 2t-1)/2^n",
        &closed,
        &expected,
        primary_degree_at_most(vec![0], order),
    );
    // and the series-engine Euler polynomials themselves
    for (n, e) in euler_polynomials(order)?.iter().enumerate() {
        let scaled = crate::closed_forms::scaled_euler_polynomial(e, n);
        let sa = reference_sa(&GraphFamily::Complete(n))?.to_rational();
        v.polys("2^n E_n((t+1)/2) = sa(K_n;t)", n, &scaled, &sa);
    }
    Ok(())
}

/// Motzkin-path weights `(a, s, b, u)` for the path-graph generating functions.
pub fn path_weights() -> [IntPolynomial; 4] {
    let t = IntPolynomial::from_i64s(&[0, 1]);
    [
        t,
        IntPolynomial::zero(),
        IntPolynomial::from_i64s(&[-1]),
        IntPolynomial::from_i64s(&[-1]),
    ]
}

/// Weights whose generating function is the even-indexed path series
/// `Σ sa(P_2n;t) x^2n`: `σ ≡ 0`, `τ = (t²-1, -1, -1, ...)`.
pub fn even_path_weights() -> [IntPolynomial; 4] {
    [
        IntPolynomial::zero(),
        IntPolynomial::zero(),
        IntPolynomial::from_i64s(&[-1, 0, 1]),
        IntPolynomial::from_i64s(&[-1]),
    ]
}

/// `(0, 0, -1, t²-1)`: [`even_path_weights`] with `b` and `u` exchanged. Path
/// sums still match the closed form, but not the even-path series.
pub fn even_path_weights_exchanged() -> [IntPolynomial; 4] {
    [
        IntPolynomial::zero(),
        IntPolynomial::zero(),
        IntPolynomial::from_i64s(&[-1]),
        IntPolynomial::from_i64s(&[-1, 0, 1]),
    ]
}

fn weights(p: &[IntPolynomial; 4]) -> WeightSpec {
    WeightSpec::two_level(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone())
}

fn verify_generalized_catalan(order: usize, v: &mut Verifier) -> Result<()> {
    let params = [
        ("path", path_weights()),
        ("even path", even_path_weights()),
        ("exchanged even path", even_path_weights_exchanged()),
        (
            "Dyck",
            [
                IntPolynomial::zero(),
                IntPolynomial::zero(),
                IntPolynomial::one(),
                IntPolynomial::one(),
            ],
        ),
    ];
    for (label, p) in &params {
        let paths = generalized_catalan(&weights(p), order);
        let closed = gfgc_series(&p[0], &p[1], &p[2], &p[3], order)?;
        for (n, (b, c)) in paths.values.iter().zip(&closed).enumerate() {
            v.polys::<RationalPolynomial>(
                &format!("{label}: path sum = closed form"),
                n,
                &b.to_rational(),
                c,
            );
        }
    }
    let paths = generalized_catalan(&weights(&path_weights()), order);
    for n in 0..=order {
        let sa = reference_sa(&GraphFamily::Path(n))?;
        v.polys("B_n = sa(P_n;t)", n, &paths.values[n], &sa);
    }
    let even = generalized_catalan(&weights(&even_path_weights()), order);
    for n in 0..=order {
        let expected = if n % 2 == 0 {
            reference_sa(&GraphFamily::Path(n))?
        } else {
            IntPolynomial::zero()
        };
        v.polys("B_n = [n even] sa(P_n;t)", n, &even.values[n], &expected);
    }
    Ok(())
}

/// Expand the closed form of `id` and compare with reference values through
/// `order` in the primary variables.
pub fn verify_identity(id: IdentityId, order: usize) -> Result<VerificationReport> {
    use IdentityId::*;
    let mut v = Verifier::default();
    match id {
        PathSaGf => verify_path_sa(order, &mut v)?,
        PathEvenSaGf => verify_path_even_sa(order, &mut v)?,
        CycleSaGf => verify_cycle_sa(order, &mut v)?,
        CompleteSaEgf => verify_complete_sa(order, &mut v)?,
        StarSaEgf => verify_star_sa(order, &mut v)?,
        CatalanTriangleGf => verify_catalan_triangle(order, &mut v)?,
        CentralBinomialGf => verify_central_binomial(order, &mut v)?,
        ZigzagEgf => verify_zigzag(order, &mut v)?,
        SnumT0Path => verify_snum_t0(Family::Path, order, &mut v)?,
        SnumT0Cycle => verify_snum_t0(Family::Cycle, order, &mut v)?,
        SnumT0Complete => verify_snum_t0(Family::Complete, order, &mut v)?,
        SnumT0Star => verify_snum_t0(Family::Star, order, &mut v)?,
        BnumT1Path => verify_bnum_t1(Family::Path, order, &mut v)?,
        BnumT1Cycle => verify_bnum_t1(Family::Cycle, order, &mut v)?,
        BnumT1Complete => verify_bnum_t1(Family::Complete, order, &mut v)?,
        BnumT1Star => verify_bnum_t1(Family::Star, order, &mut v)?,
        PoincarePath => verify_poincare_family(Family::Path, order, &mut v)?,
        PoincareCycle => verify_poincare_family(Family::Cycle, order, &mut v)?,
        PoincareComplete => verify_poincare_family(Family::Complete, order, &mut v)?,
        PoincareStar => verify_poincare_family(Family::Star, order, &mut v)?,
        BipartiteSnumEgf => verify_multipartite(2, MultiKind::Snum, order, &mut v)?,
        MultipartiteSnumEgf => verify_multipartite(3, MultiKind::Snum, order, &mut v)?,
        BipartiteAnumEgf => verify_multipartite(2, MultiKind::Anum, order, &mut v)?,
        MultipartiteAnumEgf => verify_multipartite(3, MultiKind::Anum, order, &mut v)?,
        BipartiteSaEgf => verify_multipartite(2, MultiKind::Sa, order, &mut v)?,
        MultipartiteSaEgf => verify_multipartite(3, MultiKind::Sa, order, &mut v)?,
        BipartiteBnumEgf => verify_multipartite(2, MultiKind::Bnum, order, &mut v)?,
        MultipartiteBnumEgf => verify_multipartite(3, MultiKind::Bnum, order, &mut v)?,
        BipartitePoincareGf => verify_multipartite(2, MultiKind::Poincare, order, &mut v)?,
        MultipartitePoincareGf => verify_multipartite(3, MultiKind::Poincare, order, &mut v)?,
        SaQClosedForms => verify_sa_q(order, &mut v)?,
        EulerPolynomialEgf => verify_euler_polynomials(order, &mut v)?,
        GeneralizedCatalanGf => verify_generalized_catalan(order, &mut v)?,
    }
    Ok(v.finish(id, order))
}

/// Cycle c-numbers agree with the reference even for the degenerate `n = 1, 2`.
pub fn degenerate_cycle_sa(n: usize) -> IntPolynomial {
    sa_from_even_c_numbers(&cycle_c_numbers(n), n)
}
