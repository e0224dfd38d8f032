//! Squarefree decomposition and irreducible factorization.

mod common;

use num_rational::BigRational;
use proptest::prelude::*;

use formsplit::{
    factor_form, factor_univariate, parse_form_infer, squarefree_decomposition, Error, Field, Form, Monomial, Options,
    Poly, Side,
};

use common::*;

fn dz(s: &str, n: usize) -> Form {
    parse_form_infer(s, Some(n), Side::D, Field::Rationals).unwrap()
}

/// `c[0] + c[1] y + c[2] y^2 + ...` over `field`.
fn upoly(field: Field, c: &[i64]) -> Poly {
    Poly::from_terms(1, field, c.iter().enumerate().map(|(k, &v)| (Monomial::new(vec![k as u32]), field.from_i64(v))))
}

fn uq(c: &[i64]) -> Poly {
    upoly(Field::Rationals, c)
}

/// Factor polynomials made primitive with positive leading coefficient.
fn normalized(fs: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = fs
        .iter()
        .map(|(p, m)| {
            let p = p.primitive_part().1;
            let p = if p.leading_coefficient().is_negative() { p.neg() } else { p };
            (p, *m)
        })
        .collect();
    out.sort_by_key(|(p, m)| (p.total_degree(), format!("{p:?}"), *m));
    out
}

fn degrees(f: &Form) -> Vec<u32> {
    factor_form(f, &opts()).unwrap().degree_multiset()
}

#[test]
fn squarefree_examples() {
    let sf = squarefree_decomposition(&dz("z1^2 + z2^2", 2).pow(2)).unwrap();
    assert_eq!(sf.len(), 1);
    assert!(proportional(&sf[0].0, &dz("z1^2 + z2^2", 2)));
    assert_eq!(sf[0].1, 2);

    let sf = squarefree_decomposition(&dz("z1*z2", 2)).unwrap();
    assert_eq!(sf.len(), 1);
    assert!(proportional(&sf[0].0, &dz("z1*z2", 2)) && sf[0].1 == 1);

    let sf = squarefree_decomposition(&dz("z1^2*z2^3", 2)).unwrap();
    assert_eq!(sf.len(), 2);
    assert!(proportional(&sf[0].0, &dz("z1", 2)) && sf[0].1 == 2);
    assert!(proportional(&sf[1].0, &dz("z2", 2)) && sf[1].1 == 3);
}

#[test]
fn squarefree_rejects_zero() {
    assert_eq!(squarefree_decomposition(&Form::zero(2, Side::D, 3, Field::Rationals)), Err(Error::ZeroForm));
}

#[test]
fn univariate_examples() {
    let r = factor_univariate(&uq(&[-1, 0, 0, 0, 1]), &opts()).unwrap();
    assert_eq!(
        normalized(&r.factors),
        normalized(&[(uq(&[-1, 1]), 1), (uq(&[1, 1]), 1), (uq(&[1, 0, 1]), 1)])
    );
    assert_eq!(r.expand(), uq(&[-1, 0, 0, 0, 1]));

    let r = factor_univariate(&uq(&[-2, 0, 1]), &opts()).unwrap();
    assert_eq!(normalized(&r.factors), vec![(uq(&[-2, 0, 1]), 1)]);

    // (2y - 1)(3y + 5)
    let f = uq(&[-5, 7, 6]);
    let r = factor_univariate(&f, &opts()).unwrap();
    assert_eq!(normalized(&r.factors), normalized(&[(uq(&[-1, 2]), 1), (uq(&[5, 3]), 1)]));
    assert_eq!(r.expand(), f);
}

#[test]
fn univariate_irreducible_that_splits_modulo_every_prime() {
    let f = uq(&[1, 0, -10, 0, 1]);
    let r = factor_univariate(&f, &opts()).unwrap();
    assert_eq!(normalized(&r.factors), vec![(f, 1)]);
}

#[test]
fn univariate_larger_product() {
    let (a, b, c) = (uq(&[3, -1, 0, 2]), uq(&[-7, 0, 5]), uq(&[1, 1, 1, 1, 1]));
    let f = a.mul(&b).mul(&c).mul(&a);
    let r = factor_univariate(&f, &opts()).unwrap();
    assert_eq!(normalized(&r.factors), normalized(&[(a, 2), (b, 1), (c, 1)]));
    assert_eq!(r.expand(), f);
}

#[test]
fn univariate_rational_roots_agree_with_the_candidate_oracle() {
    let cases: [&[i64]; 4] = [&[-6, 11, -6, 1], &[4, 0, -5, 0, 1], &[-5, 7, 6], &[2, -3, 0, 0, 0, 1]];
    for c in cases {
        let r = factor_univariate(&uq(c), &opts()).unwrap();
        let linear = r.factors.iter().filter(|(p, _)| p.total_degree() == Some(1)).count();
        assert_eq!(linear, rational_roots(c).len(), "{c:?}");
    }
}

#[test]
fn univariate_over_a_prime_field() {
    let f13 = Field::prime(13).unwrap();
    let f = upoly(f13, &[12, 0, 0, 0, 1]);
    let r = factor_univariate(&f, &opts()).unwrap();
    assert_eq!(r.factors.len(), 4);
    assert!(r.factors.iter().all(|(p, m)| p.total_degree() == Some(1) && *m == 1));
    assert_eq!(r.expand(), f);

    let f7 = Field::prime(7).unwrap();
    let f = upoly(f7, &[1, 0, 1]);
    assert_eq!(factor_univariate(&f, &opts()).unwrap().factors.len(), 1);
}

#[test]
fn multivariate_examples() {
    let fl = factor_form(&dz("z1^2*z2^2", 2), &opts()).unwrap();
    assert_eq!(fl.factors.len(), 2);
    assert!(fl.factors.iter().all(|f| f.multiplicity == 2 && f.form.degree() == 1));

    let fl = factor_form(&dz("z1^2 - z2^2", 2).pow(2).scale(&Field::Rationals.from_i64(-7)), &opts()).unwrap();
    let mut got: Vec<(Form, u32)> = fl.factors.iter().map(|f| (f.form.clone(), f.multiplicity)).collect();
    got.sort_by_key(|(f, _)| format!("{f:?}"));
    assert_eq!(got.len(), 2);
    for want in [dz("z1 - z2", 2), dz("z1 + z2", 2)] {
        assert!(got.iter().any(|(f, m)| *m == 2 && proportional(f, &want)));
    }
}

#[test]
fn associated_form_of_the_ternary_cubic_example() {
    let a = dz("-z1^3 + z1^2*z2 + 1/2*z1*z2^2 + z1^2*z3 - 2*z1*z2*z3 + 1/2*z1*z3^2", 3);
    let fl = factor_form(&a, &opts()).unwrap();
    assert_eq!(fl.factors.len(), 2);
    let linear = fl.factors.iter().find(|f| f.form.degree() == 1).unwrap();
    let quadric = fl.factors.iter().find(|f| f.form.degree() == 2).unwrap();
    assert!(proportional(&linear.form, &dz("z1", 3)));
    let w = dz("z2 - z1", 3);
    let v = dz("z3 - z1", 3);
    let ambient = quadric.essential.ambient();
    assert_eq!(quadric.essential, formsplit::Subspace::span(ambient, Field::Rationals, &[w, v]).unwrap());
}

#[test]
fn irreducible_forms_stay_whole() {
    for text in ["z1^2 + z2^2", "z1^3 + z2^3 + z3^3", "z1^4 - 2*z2^4 + z1*z2*z3^2"] {
        let f = parse_form_infer(text, None, Side::D, Field::Rationals).unwrap();
        let fl = factor_form(&f, &opts()).unwrap();
        assert_eq!(fl.factors.len(), 1, "{text}");
        assert!(proportional(&fl.factors[0].form, &f));
    }
}

#[test]
fn guards() {
    let tight = Options { max_factor_vars: 2, ..opts() };
    assert!(matches!(factor_form(&dz("z1*z2*z3", 3), &tight), Err(Error::GuardExceeded { .. })));
    let tight = Options { max_factor_degree: 2, ..opts() };
    assert!(matches!(factor_form(&dz("z1^3", 1), &tight), Err(Error::GuardExceeded { .. })));
    let f = parse_form_infer("z1^5 + z2^5", None, Side::D, Field::prime(5).unwrap()).unwrap();
    assert!(matches!(factor_form(&f, &opts()), Err(Error::CharacteristicGuard { .. })));
}

/// Products of Eisenstein-certified irreducible forms with random multiplicities.
fn product(seed: u64) -> (Form, Vec<(u32, u32)>) {
    use rand::Rng;
    let mut r = rng(seed);
    let n = r.gen_range(2..=3);
    let k = r.gen_range(1..=3);
    let mut f: Option<Form> = None;
    let mut shape = Vec::new();
    for _ in 0..k {
        let degree = r.gen_range(1..=3);
        let m = if r.gen_bool(0.3) { 2 } else { 1 };
        let g = random_irreducible(n, degree, &mut r).pow(m);
        shape.push((degree, m));
        f = Some(match f {
            None => g,
            Some(f) => f.mul(&g).unwrap(),
        });
    }
    (f.unwrap(), shape)
}

proptest! {
    #![proptest_config(prop_config(32))]

    #[test]
    fn factorization_round_trips(seed in 0u64..100_000) {
        let (f, shape) = product(seed);
        let fl = factor_form(&f, &opts()).unwrap();
        prop_assert_eq!(fl.expand().unwrap(), f);
        // Distinct random factors could coincide up to scale; merge by degree.
        let total: u32 = shape.iter().map(|(d, m)| d * m).sum();
        let got: u32 = fl.factors.iter().map(|x| x.form.degree() * x.multiplicity).sum();
        prop_assert_eq!(got, total);
        prop_assert!(fl.factors.len() <= shape.len());
        for (i, a) in fl.factors.iter().enumerate() {
            for b in &fl.factors[i + 1..] {
                prop_assert!(!proportional(&a.form, &b.form));
            }
        }
    }

    #[test]
    fn factor_count_matches_a_known_product(seed in 0u64..100_000) {
        let (f, shape) = product(seed);
        let fl = factor_form(&f, &opts()).unwrap();
        let mut want: Vec<u32> = shape.iter().flat_map(|&(d, m)| std::iter::repeat(d).take(m as usize)).collect();
        want.sort();
        prop_assert_eq!(fl.degree_multiset(), want);
    }

    #[test]
    fn squarefree_pieces_multiply_back(seed in 0u64..100_000) {
        let (f, _) = product(seed);
        let pieces = squarefree_decomposition(&f).unwrap();
        let prod = pieces.iter().map(|(p, i)| p.pow(*i)).reduce(|a, b| a.mul(&b).unwrap()).unwrap();
        prop_assert!(proportional(&prod, &f));
        for (i, (a, _)) in pieces.iter().enumerate() {
            prop_assert!(!factor_form(a, &opts()).unwrap().has_repeated_factor());
            for (b, _) in &pieces[i + 1..] {
                prop_assert!(a.poly().gcd(b.poly()).is_constant());
            }
        }
    }

    #[test]
    fn factor_degrees_ignore_variable_order(seed in 0u64..100_000, shift in 1usize..3) {
        let (f, _) = product(seed);
        let n = f.n();
        let map: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let g = f.rename_vars(&map, n);
        prop_assert_eq!(degrees(&f), degrees(&g));
    }

    #[test]
    fn univariate_round_trip(c in proptest::collection::vec(-9i64..=9, 2..7), d in proptest::collection::vec(-9i64..=9, 2..5)) {
        prop_assume!(*c.last().unwrap() != 0 && *d.last().unwrap() != 0);
        let f = uq(&c).mul(&uq(&d));
        let r = factor_univariate(&f, &opts()).unwrap();
        prop_assert_eq!(r.expand(), f);
        let roots: Vec<BigRational> = rational_roots(&c).into_iter().chain(rational_roots(&d)).collect();
        let mut distinct = roots;
        distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
        distinct.dedup();
        let linear = r.factors.iter().filter(|(p, _)| p.total_degree() == Some(1)).count();
        prop_assert_eq!(linear, distinct.len());
    }
}
