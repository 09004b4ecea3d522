//! Closed forms and recurrences for paths, cycles, complete graphs, stars and
//! complete multipartite graphs.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GraphFamily;
use crate::invariants::poincare_from_sa;
use crate::poly::{IntPolynomial, RationalPolynomial};
use crate::series::{factorial, int, MSeries};

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Cat_{n,k} = C(n+k, k) - C(n+k, k-1)`; `Cat_{n,n}` is the n-th Catalan number.
pub fn catalan_triangle(n: u64, k: u64) -> BigInt {
    binomial(n + k, k as i64) - binomial(n + k, k as i64 - 1)
}

/// Euler zigzag numbers `A_0, ..., A_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagTable {
    values: Vec<BigInt>,
}

impl ZigzagTable {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Zigzag numbers from the Seidel boustrophedon triangle:
/// `E(n,0) = 0`, `E(n,k) = E(n,k-1) + E(n-1,n-k)`, `A_n = E(n,n)`.
pub fn zigzag(max: usize) -> ZigzagTable {
    let mut row = vec![BigInt::one()];
    let mut values = vec![BigInt::one()];
    for n in 1..=max {
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigInt::zero());
        for k in 1..=n {
            let v = &next[k - 1] + &row[n - k];
            next.push(v);
        }
        values.push(next[n].clone());
        row = next;
    }
    ZigzagTable { values }
}

/// Euler polynomials `E_0(t), ..., E_N(t)`, read off `2 e^{xt} / (e^x + 1)`.
pub fn euler_polynomials(max: usize) -> Result<Vec<RationalPolynomial>> {
    let vars = ["x", "t"];
    let deg = 2 * max;
    let x = MSeries::var(&vars, "x", deg);
    let t = MSeries::var(&vars, "t", deg);
    let denom = &x.exp()? + &MSeries::one(&vars, deg);
    let egf = (&x * &t).exp()?.scale(&int(2)).div(&denom)?;
    Ok((0..=max)
        .map(|n| {
            let f = int(factorial(n as u32));
            RationalPolynomial::new(
                (0..=n)
                    .map(|k| egf.coeff(&[n as u32, k as u32]) * &f)
                    .collect(),
            )
        })
        .collect())
}

pub fn euler_polynomial(n: usize) -> Result<RationalPolynomial> {
    Ok(euler_polynomials(n)?.pop().expect("nonempty"))
}

/// `2^n E_n((t+1)/2)`, which should be the signed a-polynomial of `K_n`.
pub fn scaled_euler_polynomial(e: &RationalPolynomial, n: usize) -> RationalPolynomial {
    let half = BigRational::new(1.into(), 2.into());
    let arg = RationalPolynomial::new(vec![half.clone(), half]);
    e.compose(&arg)
        .scale(&BigRational::from_integer(BigInt::one() << n))
}

/// `(c_0, c_2, c_4, ...)` for paths, cycles, complete graphs and stars.
pub fn family_c_numbers(f: &GraphFamily) -> Result<Vec<BigInt>> {
    f.validate()?;
    let nv = f.vertex_count();
    let half = nv / 2;
    let out: Vec<BigInt> = match *f {
        GraphFamily::Path(n) => (0..=half)
            .map(|i| catalan_triangle((n - i) as u64, i as u64))
            .collect(),
        GraphFamily::Cycle(n) => cycle_c_numbers(n),
        GraphFamily::Complete(n) => {
            let a = zigzag(n);
            (0..=half)
                .map(|i| binomial(n as u64, 2 * i as i64) * a.get(2 * i))
                .collect()
        }
        GraphFamily::Star(m) => {
            let a = zigzag(m.max(1));
            (0..=half)
                .map(|i| {
                    if i == 0 {
                        BigInt::one()
                    } else {
                        binomial(m as u64, 2 * i as i64 - 1) * a.get(2 * i - 1)
                    }
                })
                .collect()
        }
        GraphFamily::CompleteMultipartite(_) => {
            return Err(Error::InvalidFamily(
                "use the multipartite recurrence for complete multipartite graphs".into(),
            ))
        }
    };
    Ok(out)
}

/// Cycle c-numbers from the formula, also for the degenerate `n = 1, 2`.
pub fn cycle_c_numbers(n: usize) -> Vec<BigInt> {
    (0..=n / 2)
        .map(|i| {
            if n == 0 {
                BigInt::one()
            } else if 2 * i == n {
                binomial(n as u64, (n / 2) as i64) / 2
            } else {
                binomial(n as u64, i as i64)
            }
        })
        .collect()
}

/// `sa(G; t) = Σ_j (-1)^j c_{2j} t^{n-2j}` from `(c_0, c_2, ...)`.
pub fn sa_from_even_c_numbers(c: &[BigInt], n: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (j, cj) in c.iter().enumerate() {
        coeffs[n - 2 * j] = if j % 2 == 0 { cj.clone() } else { -cj };
    }
    IntPolynomial::new(coeffs)
}

/// Signed a-polynomial of a family member from closed forms only.
pub fn family_sa_polynomial(f: &GraphFamily) -> Result<IntPolynomial> {
    match f {
        GraphFamily::CompleteMultipartite(parts) => Ok(multipartite_sa_polynomial(parts)),
        _ => Ok(sa_from_even_c_numbers(
            &family_c_numbers(f)?,
            f.vertex_count(),
        )),
    }
}

/// Memoised solution of the complete multipartite recurrence
/// `Σ_{i ≤ p} Π C(p_k, i_k) s(K_i) = [at most one p_k > 0]` for even `Σ p`.
#[derive(Default, Debug)]
pub struct MultipartiteTable {
    memo: HashMap<Vec<usize>, BigInt>,
}

fn canonical(parts: &[usize]) -> Vec<usize> {
    let mut key: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

/// Calls `f(i)` for every tuple `0 ≤ i ≤ p` componentwise.
fn for_each_subtuple(p: &[usize], mut f: impl FnMut(&[usize])) {
    let mut i = vec![0usize; p.len()];
    loop {
        f(&i);
        let mut k = 0;
        loop {
            if k == p.len() {
                return;
            }
            if i[k] < p[k] {
                i[k] += 1;
                break;
            }
            i[k] = 0;
            k += 1;
        }
    }
}

fn binomial_product(p: &[usize], i: &[usize]) -> BigInt {
    p.iter()
        .zip(i)
        .map(|(&pk, &ik)| binomial(pk as u64, ik as i64))
        .product()
}

impl MultipartiteTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `s(K_{p_1, ..., p_m})`
    pub fn snum(&mut self, parts: &[usize]) -> BigInt {
        let key = canonical(parts);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let total: usize = key.iter().sum();
        let value = if total % 2 == 1 {
            BigInt::zero()
        } else if key.len() <= 1 {
            // edgeless (or null): only the empty subset contributes
            if total == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else {
            let mut subs = Vec::new();
            for_each_subtuple(&key, |i| {
                if i != key.as_slice() && i.iter().sum::<usize>() % 2 == 0 {
                    subs.push(i.to_vec());
                }
            });
            let mut acc = BigInt::zero();
            for i in subs {
                let s = self.snum(&i);
                if !s.is_zero() {
                    acc += binomial_product(&key, &i) * s;
                }
            }
            -acc
        };
        self.memo.insert(key, value.clone());
        value
    }

    /// `sa(K_{p_1, ..., p_m}; t)`: every induced subgraph is again complete
    /// multipartite, with the induced part sizes.
    pub fn sa_polynomial(&mut self, parts: &[usize]) -> IntPolynomial {
        let key = canonical(parts);
        let total: usize = key.iter().sum();
        let mut coeffs = vec![BigInt::zero(); total + 1];
        let mut subs = Vec::new();
        for_each_subtuple(&key, |i| subs.push(i.to_vec()));
        for i in subs {
            let size: usize = i.iter().sum();
            if size % 2 == 1 {
                continue;
            }
            let s = self.snum(&i);
            if !s.is_zero() {
                coeffs[total - size] += binomial_product(&key, &i) * s;
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// Left-hand side of the recurrence at `p`.
    pub fn recurrence_lhs(&mut self, parts: &[usize]) -> BigInt {
        let mut subs = Vec::new();
        for_each_subtuple(parts, |i| subs.push(i.to_vec()));
        subs.into_iter()
            .map(|i| binomial_product(parts, &i) * self.snum(&i))
            .sum()
    }
}

pub fn multipartite_snum(parts: &[usize]) -> BigInt {
    MultipartiteTable::new().snum(parts)
}

pub fn multipartite_sa_polynomial(parts: &[usize]) -> IntPolynomial {
    MultipartiteTable::new().sa_polynomial(parts)
}

/// Poincaré polynomials of `M(K_{p,q})`, rows `p = 0..=pmax`, columns `q = 0..=qmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareTable {
    pub rows: Vec<Vec<IntPolynomial>>,
}

pub fn poincare_table(pmax: usize, qmax: usize) -> PoincareTable {
    let mut tab = MultipartiteTable::new();
    let rows = (0..=pmax)
        .map(|p| {
            (0..=qmax)
                .map(|q| poincare_from_sa(&tab.sa_polynomial(&[p, q]), p + q))
                .collect()
        })
        .collect();
    PoincareTable { rows }
}

#[derive(Serialize)]
struct PoincareTableJson<'a> {
    pmax: usize,
    qmax: usize,
    /// `rows[p][q]` is the coefficient list of the polynomial in `z`.
    rows: &'a [Vec<Vec<String>>],
}

impl PoincareTable {
    pub fn pmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn qmax(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn get(&self, p: usize, q: usize) -> &IntPolynomial {
        &self.rows[p][q]
    }

    fn coeff_strings(&self) -> Vec<Vec<Vec<String>>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|poly| poly.coeffs().iter().map(|c| c.to_string()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let rows = self.coeff_strings();
        serde_json::to_string(&PoincareTableJson {
            pmax: self.pmax(),
            qmax: self.qmax(),
            rows: &rows,
        })
        .expect("serializable")
    }

    /// Header `p\q,0,1,...`; each cell is the coefficient list joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p\\q");
        for q in 0..=self.qmax() {
            out.push_str(&format!(",{q}"));
        }
        out.push('\n');
        for (p, row) in self.coeff_strings().iter().enumerate() {
            out.push_str(&p.to_string());
            for cell in row {
                out.push(',');
                out.push_str(&cell.join(";"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|poly| poly.display("z").to_string().replace(' ', ""))
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = format!("{:>3} |", "p\\q");
        for q in 0..=self.qmax() {
            out.push_str(&format!(" {q:<width$}"));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        for (p, row) in cells.iter().enumerate() {
            out.push_str(&format!("{p:>3} |"));
            for c in row {
                out.push_str(&format!(" {c:<width$}"));
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out
    }
}

/// Which scalar invariant a [`sequence`] lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Snum,
    Anum,
    Bnum,
}

impl FromStr for SequenceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "snum" => Ok(SequenceKind::Snum),
            "anum" => Ok(SequenceKind::Anum),
            "bnum" => Ok(SequenceKind::Bnum),
            _ => Err(Error::InvalidFamily(format!(
                "unknown invariant `{s}` (expected snum, anum or bnum)"
            ))),
        }
    }
}

/// Family indexed by `n = 0, 1, 2, ...`: `P_n`, `C_n` (with `C_1 = K_1`,
/// `C_2 = P_2`), `K_n`, the star `K_{1,n}` with `n` leaves, or `K_{n,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceFamily {
    Path,
    Cycle,
    Complete,
    Star,
    BipartiteRow(usize),
}

impl FromStr for SequenceFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(SequenceFamily::Path),
            "cycle" => Ok(SequenceFamily::Cycle),
            "complete" => Ok(SequenceFamily::Complete),
            "star" => Ok(SequenceFamily::Star),
            _ => match s.strip_prefix("bipartite-row:") {
                Some(q) => q
                    .trim()
                    .parse()
                    .map(SequenceFamily::BipartiteRow)
                    .map_err(|_| Error::InvalidFamily(format!("bad row index in `{s}`"))),
                None => Err(Error::InvalidFamily(format!(
                    "unknown sequence family `{s}` (expected path, cycle, complete, star or bipartite-row:q)"
                ))),
            },
        }
    }
}

/// `sa` of the `n`-th member of a sequence family, from closed forms.
pub fn sequence_member_sa(
    f: SequenceFamily,
    n: usize,
    tab: &mut MultipartiteTable,
) -> IntPolynomial {
    let nv = match f {
        SequenceFamily::Star => n + 1,
        SequenceFamily::BipartiteRow(q) => n + q,
        _ => n,
    };
    match f {
        SequenceFamily::Cycle => sa_from_even_c_numbers(&cycle_c_numbers(n), nv),
        SequenceFamily::BipartiteRow(q) => tab.sa_polynomial(&[n, q]),
        _ => {
            let g = match f {
                SequenceFamily::Path => GraphFamily::Path(n),
                SequenceFamily::Complete => GraphFamily::Complete(n),
                _ => GraphFamily::Star(n),
            };
            sa_from_even_c_numbers(&family_c_numbers(&g).expect("valid family"), nv)
        }
    }
}

/// `s`, `a` or `b` of members `0..=upto`.
pub fn sequence(kind: SequenceKind, f: SequenceFamily, upto: usize) -> Vec<BigInt> {
    let mut tab = MultipartiteTable::new();
    (0..=upto)
        .map(|n| {
            let sa = sequence_member_sa(f, n, &mut tab);
            let nv = sa.degree().unwrap_or(0);
            match kind {
                SequenceKind::Snum => sa.coeff(0),
                SequenceKind::Anum if nv % 2 == 1 => BigInt::zero(),
                SequenceKind::Anum => {
                    let s = sa.coeff(0);
                    if (nv / 2).is_multiple_of(2) {
                        s
                    } else {
                        -s
                    }
                }
                SequenceKind::Bnum => sa.coeffs().iter().sum(),
            }
        })
        .collect()
}
