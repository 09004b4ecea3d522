//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;
use toric_core::closed_forms::{
    euler_polynomials, family_c_numbers, multipartite_snum, poincare_table, scaled_euler_polynomial,
};
use toric_core::graph::{build_family, connected_components, disjoint_union, parse_edge_list};
use toric_core::identities::{even_path_weights_exchanged, path_weights};
use toric_core::motzkin::{generalized_catalan, gfgc_series, WeightSpec};
use toric_core::series::MSeries;
use toric_core::{verify_identity, Engine, GraphFamily, IdentityId, IntPolynomial, MAX_CAP};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn engine() -> Engine {
    Engine::with_cap(MAX_CAP)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit_secs: u64, what: &str) -> Result<(), String> {
    ensure(t.as_secs_f64() < limit_secs as f64, || {
        format!("{what} took {:.2}s, limit {limit_secs}s", t.as_secs_f64())
    })
}

fn sa(f: GraphFamily) -> IntPolynomial {
    engine()
        .signed_a_polynomial(&build_family(&f, MAX_CAP).unwrap())
        .unwrap()
}

/// `"1+12z+125z^2"`, braces allowed around `z` and exponents.
fn parse_z_poly(s: &str) -> IntPolynomial {
    let clean: String = s
        .chars()
        .filter(|c| !matches!(c, '{' | '}' | ' '))
        .collect();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for term in clean.split('+') {
        let (c, k) = match term.split_once('z') {
            None => (term, 0),
            Some((c, rest)) => {
                let k = rest.strip_prefix('^').map_or(1, |e| e.parse().unwrap());
                (if c.is_empty() { "1" } else { c }, k)
            }
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] = c.parse().unwrap();
    }
    IntPolynomial::new(coeffs)
}

const PRINTED_TABLE: [[&str; 4]; 7] = [
    ["1", "1", "1", "1"],
    ["1", "1+z", "1+2z", "1+3z+2z^2"],
    ["1", "1+2z", "1+4{z}+3z^2", "1+6{z}+13z^2"],
    ["1", "1+3z+2z^2", "1+6{z}+13z^2", "1+9{z}+39{z}^{2}+31z^3"],
    [
        "1",
        "1+4{z}+8z^2",
        "1+8z+34{z}^{2}+27z^3",
        "1+12z+86z^2+205z^3",
    ],
    [
        "1",
        "1+5{z}+20{z}^{2}+16z^3",
        "1+10{z}+70{z}^{2}+167z^3",
        "1+15{z}+160{z}^{2}+763{z}^{3}+617z^4",
    ],
    [
        "1",
        "1+6z+40{z}^{2}+96z^3",
        "1+12{z}+125{z}^{2}+597{z}^{3}+483z^4",
        "1+18{z}+267{z}^{2}+2123{z}^{3}+5151z^4",
    ],
];

fn table_reproduction() -> Check {
    let start = Instant::now();
    let t = poincare_table(6, 3);
    within(start.elapsed(), 10, "table")?;
    for (p, row) in PRINTED_TABLE.iter().enumerate() {
        for (q, cell) in row.iter().enumerate() {
            let printed = parse_z_poly(cell);
            ensure(t.get(p, q) == &printed, || {
                format!("({p},{q}): computed {} printed {printed}", t.get(p, q))
            })?;
            let brute = engine()
                .poincare_polynomial(
                    &build_family(&GraphFamily::CompleteMultipartite(vec![p, q]), MAX_CAP).unwrap(),
                )
                .unwrap();
            ensure(brute == printed, || {
                format!("({p},{q}): brute force {brute}")
            })?;
        }
    }
    Ok(format!(
        "28 entries, table built in {:.3}s",
        start.elapsed().as_secs_f64()
    ))
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(n: u64) -> BigInt {
    binom(2 * n, n) / (n + 1)
}

/// Tangent and secant numbers from `2A_{n+1} = Σ C(n,k) A_k A_{n-k}`.
fn zigzag_oracle(max: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::one(), BigInt::one()];
    for n in 1..max {
        let s: BigInt = (0..=n)
            .map(|k| binom(n as u64, k as u64) * &a[k] * &a[n - k])
            .sum();
        a.push(s / 2);
    }
    a.truncate(max + 1);
    a
}

fn sign(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

struct Row {
    s: BigInt,
    a: BigInt,
    b: BigInt,
}

fn rows(f: GraphFamily) -> Row {
    let r = engine()
        .invariant_report(&build_family(&f, MAX_CAP).unwrap())
        .unwrap();
    Row {
        s: r.snum,
        a: r.anum,
        b: r.bnum,
    }
}

fn check_row(f: GraphFamily, s: BigInt, a: BigInt, b: BigInt) -> Result<(), String> {
    let r = rows(f.clone());
    ensure(r.s == s && r.a == a && r.b == b, || {
        format!(
            "{f}: (s,a,b) = ({},{},{}), expected ({s},{a},{b})",
            r.s, r.a, r.b
        )
    })
}

fn family_tables() -> Check {
    let start = Instant::now();
    let e = engine();
    let mut count = 0;
    for n in 0..=12usize {
        let mut fams = vec![GraphFamily::Path(n), GraphFamily::Complete(n)];
        if n >= 3 {
            fams.push(GraphFamily::Cycle(n));
        }
        if n >= 1 {
            fams.push(GraphFamily::Star(n - 1));
        }
        for f in fams {
            let report = e
                .invariant_report(&build_family(&f, MAX_CAP).unwrap())
                .unwrap();
            let closed = family_c_numbers(&f).map_err(|e| e.to_string())?;
            ensure(closed == report.betti, || {
                format!("{f}: closed form {closed:?} vs engine {:?}", report.betti)
            })?;
            count += 1;
        }
    }
    let a = zigzag_oracle(12);
    let zero = BigInt::zero;
    check_row(
        GraphFamily::Path(0),
        BigInt::one(),
        BigInt::one(),
        BigInt::one(),
    )?;
    check_row(
        GraphFamily::Complete(0),
        BigInt::one(),
        BigInt::one(),
        BigInt::one(),
    )?;
    for n in 1..=6usize {
        let cat = catalan(n as u64);
        check_row(
            GraphFamily::Path(2 * n),
            sign(n) * &cat,
            cat.clone(),
            zero(),
        )?;
        check_row(
            GraphFamily::Complete(2 * n),
            sign(n) * &a[2 * n],
            a[2 * n].clone(),
            zero(),
        )?;
        let half: BigInt = binom(2 * n as u64, n as u64) / 2u32;
        if n >= 2 {
            check_row(
                GraphFamily::Cycle(2 * n),
                sign(n) * &half,
                half.clone(),
                zero(),
            )?;
        }
        check_row(
            GraphFamily::Star(2 * n - 1),
            sign(n) * &a[2 * n - 1],
            a[2 * n - 1].clone(),
            zero(),
        )?;
        if 2 * n < 12 {
            check_row(
                GraphFamily::Star(2 * n),
                zero(),
                zero(),
                sign(n) * &a[2 * n],
            )?;
        }
    }
    for n in 0..=5usize {
        let cat = catalan(n as u64);
        check_row(GraphFamily::Path(2 * n + 1), zero(), zero(), sign(n) * cat)?;
        check_row(
            GraphFamily::Complete(2 * n + 1),
            zero(),
            zero(),
            sign(n) * &a[2 * n + 1],
        )?;
        if n >= 1 {
            check_row(
                GraphFamily::Cycle(2 * n + 1),
                zero(),
                zero(),
                sign(n) * binom(2 * n as u64, n as u64),
            )?;
        }
    }
    within(start.elapsed(), 60, "family tables")?;
    Ok(format!(
        "{count} c-vectors and all s/a/b rows, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn identity_catalog() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for &id in IdentityId::ALL {
        let order = id.default_order();
        let r = verify_identity(id, order).map_err(|e| format!("{id}: {e}"))?;
        ensure(r.passed, || format!("{id}: {:?}", r.mismatch))?;
        checked += r.checked;
    }
    within(start.elapsed(), 120, "identity catalog")?;
    Ok(format!(
        "{} identities, {checked} coefficients, {:.2}s",
        IdentityId::ALL.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn tuples(m: usize, total: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in tuples(m - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `s(K_{p_1..p_m})` read off the multipartite EGF `(1 - m + Σ cosh x_i) / cosh(Σ x_i)`.
fn snum_from_egf(m: usize, deg: usize) -> impl Fn(&[usize]) -> BigInt {
    let vars: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
    let xs: Vec<MSeries> = vars.iter().map(|v| MSeries::var(&vars, v, deg)).collect();
    let sum = xs.iter().skip(1).fold(xs[0].clone(), |a, x| &a + x);
    let mut num = MSeries::constant(&vars, BigInt::from(1 - m as i64).into(), deg);
    for x in &xs {
        num = &num + &x.cosh().unwrap();
    }
    let egf = num.div(&sum.cosh().unwrap()).unwrap();
    move |p: &[usize]| {
        let mono: Vec<u32> = p.iter().map(|&v| v as u32).collect();
        egf.egf_extract(&mono).unwrap()
    }
}

fn recurrence_witness() -> Check {
    let mut checked = 0;
    for (m, max) in [(2usize, 16usize), (3, 12)] {
        let s = snum_from_egf(m, max);
        for total in (0..=max).step_by(2) {
            for p in tuples(m, total) {
                let mut lhs = BigInt::zero();
                for i in (0..=total).flat_map(|t| tuples(m, t)) {
                    if i.iter().zip(&p).any(|(a, b)| a > b) {
                        continue;
                    }
                    let w: BigInt = i
                        .iter()
                        .zip(&p)
                        .map(|(&a, &b)| binom(b as u64, a as u64))
                        .product();
                    lhs += w * s(&i);
                }
                let positive = p.iter().filter(|&&v| v > 0).count();
                let rhs = if positive <= 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                ensure(lhs == rhs, || format!("{p:?}: sum {lhs}, expected {rhs}"))?;
                ensure(multipartite_snum(&p) == s(&p), || {
                    format!(
                        "{p:?}: recurrence table {} vs EGF {}",
                        multipartite_snum(&p),
                        s(&p)
                    )
                })?;
                if total <= 10 {
                    let g = build_family(&GraphFamily::CompleteMultipartite(p.clone()), MAX_CAP)
                        .unwrap();
                    let brute = engine().signed_a_number(&g).unwrap();
                    ensure(brute == s(&p), || {
                        format!("{p:?}: engine {brute} vs EGF {}", s(&p))
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} part tuples"))
}

fn property_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let e = engine();
    let cases = 600;
    for case in 0..cases {
        let g1 = common::random_graph(&mut rng, 0, 10);
        let g2 = common::random_graph(&mut rng, 0, 10 - g1.n());
        let u = disjoint_union(&g1, &g2, MAX_CAP).unwrap();
        let (r1, r2, ru) = (
            e.invariant_report(&g1).unwrap(),
            e.invariant_report(&g2).unwrap(),
            e.invariant_report(&u).unwrap(),
        );
        ensure(ru.sa_poly == &r1.sa_poly * &r2.sa_poly, || {
            format!("case {case}: multiplicativity fails for {g1:?} and {g2:?}")
        })?;
        let perm = common::random_permutation(&mut rng, u.n());
        ensure(e.invariant_report(&u.permute(&perm)).unwrap() == ru, || {
            format!("case {case}: permutation {perm:?} changes the report of {u:?}")
        })?;
        for r in [&r1, &r2, &ru] {
            ensure(r.c.iter().all(|c| !c.is_negative()), || {
                format!("case {case}: negative c")
            })?;
            ensure(r.c[r.n] == r.anum, || format!("case {case}: c_n != a"))?;
            ensure(r.bnum == r.sa_poly.eval(&BigInt::one()), || {
                format!("case {case}: b != sa(1)")
            })?;
        }
        for g in [&g1, &g2, &u] {
            let odd = connected_components(g, g.vertices())
                .iter()
                .any(|c| c.len() % 2 == 1);
            if odd {
                ensure(e.signed_a_number(g).unwrap().is_zero(), || {
                    format!("case {case}: odd component but s != 0 for {g:?}")
                })?;
            }
        }
    }
    Ok(format!("{cases} random cases, 0 failures"))
}

fn euler_identity() -> Check {
    let es = euler_polynomials(12).map_err(|e| e.to_string())?;
    for (n, e) in es.iter().enumerate() {
        let lhs = scaled_euler_polynomial(e, n);
        let rhs = sa(GraphFamily::Complete(n)).to_rational();
        ensure(lhs == rhs, || format!("n={n}: {lhs} vs {rhs}"))?;
    }
    Ok("n = 0..=12".into())
}

fn motzkin_equivalence() -> Check {
    let n = 12;
    let path = path_weights();
    let w = |p: &[IntPolynomial; 4]| {
        WeightSpec::two_level(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone())
    };
    let b = generalized_catalan(&w(&path), n);
    for k in 0..=n {
        let expect = sa(GraphFamily::Path(k));
        ensure(b.values[k] == expect, || {
            format!("B_{k} = {} vs sa(P_{k}) = {expect}", b.values[k])
        })?;
    }
    for (label, p) in [
        ("(t,0,-1,-1)", path),
        ("(0,0,-1,t²-1)", even_path_weights_exchanged()),
    ] {
        let dp = generalized_catalan(&w(&p), n);
        let closed = gfgc_series(&p[0], &p[1], &p[2], &p[3], n).map_err(|e| e.to_string())?;
        for (k, (path_sum, c)) in dp.values.iter().zip(&closed).enumerate() {
            ensure(&path_sum.to_rational() == c, || {
                format!("{label}: path sum B_{k} = {path_sum} vs closed form {c}")
            })?;
        }
    }
    Ok("B_n = sa(P_n;t) and path sums = closed form for n ≤ 12".into())
}

fn spot_values() -> Check {
    let g = parse_edge_list("A B\nA C\nA D\nB C\nB D", MAX_CAP).unwrap();
    let r = engine().invariant_report(&g).unwrap();
    ensure(
        r.sa_poly == IntPolynomial::from_i64s(&[4, 0, -5, 0, 1]),
        || format!("example sa = {}", r.sa_poly),
    )?;
    ensure(r.bnum.is_zero(), || format!("example b = {}", r.bnum))?;
    let s6 = rows(GraphFamily::Complete(6)).s;
    ensure(s6 == BigInt::from(-61), || format!("s(K_6) = {s6}"))?;
    let k33 = engine()
        .invariant_report(
            &build_family(&GraphFamily::CompleteMultipartite(vec![3, 3]), MAX_CAP).unwrap(),
        )
        .unwrap();
    let want: Vec<BigInt> = [1, 9, 39, 31].iter().map(|&v| BigInt::from(v)).collect();
    ensure(k33.betti == want, || {
        format!("betti(K_3,3) = {:?}", k33.betti)
    })?;
    let k23 = rows(GraphFamily::CompleteMultipartite(vec![2, 3]));
    ensure(k23.b == BigInt::from(8), || {
        format!("euler(K_2,3) = {}", k23.b)
    })?;
    Ok("example graph, s(K_6), β(K_3,3), χ(K_2,3)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 Poincaré table of K_{p,q}", table_reproduction),
        ("2 family closed forms vs brute force", family_tables),
        ("3 identity catalog", identity_catalog),
        ("4 multipartite recurrence", recurrence_witness),
        ("5 randomized properties", property_suite),
        ("6 Euler polynomial identity", euler_identity),
        ("7 Motzkin path equivalence", motzkin_equivalence),
        ("8 spot values", spot_values),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name:<40} {secs:>7.2}s  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<40} {secs:>7.2}s  {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
