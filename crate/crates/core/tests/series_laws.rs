use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use toric_core::series::{MSeries, USeries};

const ORDER: usize = 8;
const VARS: [&str; 2] = ["x", "y"];

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_useries() -> impl Strategy<Value = USeries> {
    proptest::collection::vec(arb_rational(), ORDER + 1)
        .prop_map(|cs| USeries::from_coeffs(cs, ORDER))
}

/// Series with constant term 1, so inverses and square roots exist.
fn arb_unit_useries() -> impl Strategy<Value = USeries> {
    arb_useries().prop_map(|s| {
        let mut cs = s.coeffs().to_vec();
        cs[0] = BigRational::from_integer(1.into());
        USeries::from_coeffs(cs, ORDER)
    })
}

fn arb_useries_no_const() -> impl Strategy<Value = USeries> {
    arb_useries().prop_map(|s| {
        let mut cs = s.coeffs().to_vec();
        cs[0] = BigRational::from_integer(0.into());
        USeries::from_coeffs(cs, ORDER)
    })
}

const MDEG: usize = 5;

fn arb_mseries() -> impl Strategy<Value = MSeries> {
    proptest::collection::vec(
        ((0u32..=MDEG as u32), (0u32..=MDEG as u32), arb_rational()),
        0..10,
    )
    .prop_map(|terms| {
        let terms: Vec<(Vec<u32>, BigRational)> = terms
            .into_iter()
            .filter(|(i, j, _)| (i + j) as usize <= MDEG)
            .map(|(i, j, c)| (vec![i, j], c))
            .collect();
        MSeries::from_terms(&VARS, terms, MDEG)
    })
}

fn arb_unit_mseries() -> impl Strategy<Value = MSeries> {
    arb_mseries().prop_map(|s| {
        let c0 = s.coeff(&[0, 0]);
        &(&s - &MSeries::constant(&VARS, c0, MDEG)) + &MSeries::one(&VARS, MDEG)
    })
}

fn arb_mseries_no_const() -> impl Strategy<Value = MSeries> {
    arb_mseries().prop_map(|s| {
        let c0 = s.coeff(&[0, 0]);
        &s - &MSeries::constant(&VARS, c0, MDEG)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn univariate_ring_laws(a in arb_useries(), b in arb_useries(), c in arb_useries()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn univariate_division_and_roots(a in arb_useries(), u in arb_unit_useries()) {
        prop_assert_eq!((&a * &u).div(&u).unwrap(), a);
        let r = u.sqrt().unwrap();
        prop_assert_eq!(&r * &r, u.clone());
        prop_assert_eq!(&u * &u.inverse().unwrap(), USeries::one(ORDER));
    }

    #[test]
    fn univariate_exponential_laws(f in arb_useries_no_const(), g in arb_useries_no_const()) {
        prop_assert_eq!((&f + &g).exp().unwrap(), &f.exp().unwrap() * &g.exp().unwrap());
        let one = USeries::one(ORDER);
        let (ch, sh) = (f.cosh().unwrap(), f.sinh().unwrap());
        prop_assert_eq!(&(&ch * &ch) - &(&sh * &sh), one.clone());
        prop_assert_eq!(&f.sech().unwrap() * &ch, one.clone());
        let (c, s) = (f.cos().unwrap(), f.sin().unwrap());
        prop_assert_eq!(&(&c * &c) + &(&s * &s), one);
    }

    #[test]
    fn multivariate_ring_laws(a in arb_mseries(), b in arb_mseries(), c in arb_mseries()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn multivariate_division_and_roots(a in arb_mseries(), u in arb_unit_mseries()) {
        prop_assert_eq!((&a * &u).div(&u).unwrap(), a);
        let r = u.sqrt().unwrap();
        prop_assert_eq!(&r * &r, u);
    }

    #[test]
    fn multivariate_trigonometric_identities(f in arb_mseries_no_const()) {
        let one = MSeries::one(&VARS, MDEG);
        let (ch, sh) = (f.cosh().unwrap(), f.sinh().unwrap());
        prop_assert_eq!(&(&ch * &ch) - &(&sh * &sh), one.clone());
        prop_assert_eq!(&f.sech().unwrap() * &ch, one.clone());
        let (c, s) = (f.cos().unwrap(), f.sin().unwrap());
        prop_assert_eq!(&(&c * &c) + &(&s * &s), one.clone());
        prop_assert_eq!(&f.tan().unwrap() * &c, s);
        prop_assert_eq!(&f.exp().unwrap() * &(-&f).exp().unwrap(), one);
    }
}
