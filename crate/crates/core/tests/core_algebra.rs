//! Scalars, monomials, forms, parsing and the polar pairing.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use formsplit::monomial::count_of_degree;
use formsplit::{
    parse_form, parse_form_infer, polar_apply, print_form, Error, Field, Form, LinearChange, Matrix, Monomial, Poly,
    Scalar, Side,
};

use common::*;

fn sx(t: &str, n: usize) -> Form {
    parse_form(t, n, Side::S, Field::Rationals).unwrap()
}

fn dz(t: &str, n: usize) -> Form {
    parse_form(t, n, Side::D, Field::Rationals).unwrap()
}

fn int(v: i64) -> Scalar {
    Field::Rationals.from_i64(v)
}

fn m(v: &[u32]) -> Monomial {
    Monomial::new(v.to_vec())
}

// Scalars

#[test]
fn rationals_are_reduced() {
    let q = Field::Rationals.from_ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
    assert_eq!(q.to_string(), "-2/3");
    assert_eq!(Field::Rationals.from_ratio(&BigInt::from(1), &BigInt::from(0)), Err(Error::DivisionByZero));
}

#[test]
fn prime_field_arithmetic() {
    let f = Field::prime(7).unwrap();
    let a = f.from_i64(5);
    let b = f.from_i64(4);
    assert_eq!((&a + &b).to_string(), "2");
    assert_eq!((&a - &b).to_string(), "1");
    assert_eq!((&b - &a).to_string(), "6");
    assert_eq!((&a * &b).to_string(), "6");
    assert_eq!(&(&a / &b) * &b, a);
    assert_eq!(f.from_i64(-1).to_string(), "6");
    assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap().to_string(), "4");
}

#[test]
fn field_parsing() {
    assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
    assert_eq!("fp:101".parse::<Field>().unwrap(), Field::Prime(101));
    assert!("fp:100".parse::<Field>().is_err());
    assert!("fp:2".parse::<Field>().is_err());
}

#[test]
fn prime_field_construction_agrees_with_trial_division() {
    for p in 3u64..600 {
        let slow = (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        assert_eq!(Field::prime(p).is_ok(), slow, "{p}");
    }
    assert!(Field::prime(1_000_000_007).is_ok());
    assert!(Field::prime((1 << 61) - 1).is_ok());
}

#[test]
fn characteristic_guard() {
    // n = 3, degree 4: need p > 6 and p > 4.
    assert!(Field::prime(7).unwrap().check_guard(3, 4).is_ok());
    assert!(matches!(Field::prime(5).unwrap().check_guard(3, 4), Err(Error::CharacteristicGuard { .. })));
    assert!(Field::Rationals.check_guard(10, 10).is_ok());
}

// Monomials

#[test]
fn grevlex_degree_two_in_three_variables() {
    let want = vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
    assert_eq!(Monomial::all_of_degree(3, 2), want);
    assert!(m(&[0, 0, 1]) < m(&[0, 1, 1]));
    assert!(m(&[3, 0]) > m(&[2, 1]));
}

#[test]
fn monomial_counts_and_division() {
    assert_eq!(count_of_degree(4, 8), 165);
    assert_eq!(count_of_degree(3, 6), 28);
    for n in 1..5 {
        for d in 0..6 {
            assert_eq!(count_of_degree(n, d), monomials(n, d).len());
            assert_eq!(Monomial::all_of_degree(n, d).len(), monomials(n, d).len());
        }
    }
    assert_eq!(m(&[2, 1]).div(&m(&[1, 1])), Some(m(&[1, 0])));
    assert_eq!(m(&[2, 0]).div(&m(&[0, 1])), None);
    assert_eq!(m(&[2, 3]).factorial_weight(), BigInt::from(12));
}

// Parsing and printing

#[test]
fn parse_examples() {
    let f = sx("x1^3 + 3*x1^2*x2", 2);
    assert_eq!(f.degree(), 3);
    assert_eq!(f.len(), 2);
    assert_eq!(f.coefficient(&m(&[2, 1])), int(3));
    let g = dz("1/2*z1*z2^2", 3);
    assert_eq!(g.n(), 3);
    assert_eq!(g.coefficient(&m(&[1, 2, 0])), Field::Rationals.parse_scalar("1/2").unwrap());
    assert_eq!(print_form(&g), "1/2*z1*z2^2");
}

#[test]
fn parse_errors() {
    assert_eq!(
        parse_form("x1^2 + x2", 2, Side::S, Field::Rationals),
        Err(Error::NonHomogeneous { first: 2, second: 1 })
    );
    assert!(matches!(
        parse_form("x3^2", 2, Side::S, Field::Rationals),
        Err(Error::IndexOutOfRange { index: 3, n: 2 })
    ));
    assert!(matches!(parse_form("x1 + * x2", 2, Side::S, Field::Rationals), Err(Error::Syntax { position: 5, .. })));
    assert!(matches!(parse_form("z1", 2, Side::S, Field::Rationals), Err(Error::Syntax { .. })));
    assert!(parse_form("", 2, Side::S, Field::Rationals).is_err());
    assert!(parse_form("x1^", 2, Side::S, Field::Rationals).is_err());
}

#[test]
fn parse_spacing_signs_and_like_terms() {
    assert_eq!(print_form(&sx(" - x1 *x2+ 2 * x2 ^ 2", 2)), "-x1*x2 + 2*x2^2");
    let f = sx("x1*x2 + x2*x1 - 2*x1*x2", 2);
    assert!(f.is_zero());
    assert_eq!(print_form(&f), "0");
}

#[test]
fn parse_infers_side_and_count() {
    let f = parse_form_infer("z1*z4", None, Side::S, Field::Rationals).unwrap();
    assert_eq!((f.side(), f.n()), (Side::D, 4));
}

#[test]
fn parse_over_prime_field() {
    let p = Field::prime(7).unwrap();
    assert_eq!(print_form(&parse_form("1/2*x1 + x2", 2, Side::S, p).unwrap()), "4*x1 + x2");
}

// Arithmetic

#[test]
fn ring_arithmetic_examples() {
    assert_eq!(sx("x1 + x2", 2).mul(&sx("x1 - x2", 2)).unwrap(), sx("x1^2 - x2^2", 2));
    let z = dz("z1^2*z2", 2);
    assert_eq!(z.add(&Form::zero(2, Side::D, 0, Field::Rationals)).unwrap(), z);
    let third = Field::Rationals.parse_scalar("1/3").unwrap();
    assert_eq!(sx("x1^3", 2).scale(&third), sx("1/3*x1^3", 2));
}

#[test]
fn arithmetic_errors() {
    assert!(matches!(sx("x1", 2).add(&dz("z1", 2)), Err(Error::SideMismatch { .. })));
    assert!(matches!(sx("x1", 2).add(&sx("x1^2", 2)), Err(Error::DegreeMismatch { .. })));
}

#[test]
fn partial_derivative_examples() {
    assert_eq!(sx("x1^3 + x2^3", 2).partial_derivative(0).unwrap(), sx("3*x1^2", 2));
    assert!(sx("x1^3", 2).partial_derivative(1).unwrap().is_zero());
    assert_eq!(sx("x1^2*x2", 2).partial_derivative(0).unwrap(), sx("2*x1*x2", 2));
    assert!(matches!(sx("x1", 2).partial_derivative(2), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn primitive_part() {
    let (u, p) = sx("-1/2*x1^2 + 3/4*x2^2", 2).primitive();
    assert_eq!(p, sx("2*x1^2 - 3*x2^2", 2));
    assert_eq!(u.to_string(), "-1/4");
}

#[test]
fn exact_division_and_gcd() {
    let p = |t: &str, n: usize| sx(t, n).into_poly();
    let a = p("x1^2 - x2^2", 2);
    assert_eq!(a.div_exact(&p("x1 - x2", 2)).unwrap(), p("x1 + x2", 2));
    assert!(a.div_exact(&p("x1 + 2*x2", 2)).is_none());
    let g = p("x1*x2 + x3^2", 3);
    let a = g.mul(&p("x1 - x3", 3));
    let b = g.mul(&p("x2 + 3*x3", 3));
    assert_eq!(a.gcd(&b), g.monic());
    assert!(a.gcd(&p("x1 + x2", 3)).is_constant());
}

// Substitution

fn change(columns: &[[i64; 3]]) -> LinearChange {
    LinearChange::from_columns(&columns.iter().map(|c| c.iter().map(|&v| int(v)).collect()).collect::<Vec<_>>())
        .unwrap()
}

#[test]
fn substitution_examples() {
    let f = sx("x1^2 + x2^2", 2);
    assert_eq!(f.substitute_linear(&LinearChange::identity(2, Field::Rationals)).unwrap(), f);
    let b = LinearChange::from_columns(&[vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
    assert_eq!(sx("x1^2 + 2*x1*x2 + x2^2", 2).substitute_linear(&b).unwrap(), sx("x1^2", 2));
}

#[test]
fn substitution_of_the_ternary_cubic_example() {
    let f = q(INTRO);
    let basis = change(&[[1, 1, 1], [0, 1, 0], [0, 0, 1]]);
    let g = f.substitute_linear(&basis).unwrap();
    let want = sx("x1^3 + x2^3 + x2^2*x3 + x2*x3^2 + x3^3", 3);
    assert!(proportional(&g, &want), "{g}");
}

#[test]
fn singular_changes_are_rejected() {
    assert_eq!(LinearChange::new(int_matrix(&[vec![1, 2], vec![2, 4]])), Err(Error::SingularMatrix));
}

// Polar pairing

#[test]
fn polar_pairing_examples() {
    assert_eq!(polar_apply(&sx("x1", 1), &dz("z1^3", 1)).unwrap(), dz("3*z1^2", 1));
    let c = polar_apply(&sx("x1*x2", 2), &dz("z1*z2", 2)).unwrap();
    assert_eq!(c.degree(), 0);
    assert_eq!(c.coefficient(&Monomial::one(2)), int(1));
    assert!(polar_apply(&sx("x2", 2), &dz("z1^2", 2)).unwrap().is_zero());
    assert!(matches!(polar_apply(&sx("x1", 2), &sx("x1", 2)), Err(Error::SideMismatch { .. })));
    assert!(polar_apply(&sx("x1^3", 2), &dz("z1^2", 2)).unwrap().is_zero());
}

fn euler(f: &Form) -> Form {
    let n = f.n();
    let mut total = Form::zero(n, f.side(), f.degree(), f.field());
    for i in 0..n {
        let xi = Form::linear(f.side(), &(0..n).map(|j| int((i == j) as i64)).collect::<Vec<_>>());
        total = total.add(&xi.mul(&f.partial_derivative(i).unwrap()).unwrap()).unwrap();
    }
    total
}

proptest! {
    #![proptest_config(prop_config(128))]

    #[test]
    fn print_then_parse_is_identity(f in arb_form(4, 5)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse_form(&print_form(&f), f.n(), Side::S, Field::Rationals).unwrap(), f.clone());
        let d = f.with_side(Side::D);
        prop_assert_eq!(parse_form(&print_form(&d), d.n(), Side::D, Field::Rationals).unwrap(), d);
    }

    #[test]
    fn derivative_matches_the_oracle(f in arb_form(4, 5), i in 0usize..4) {
        prop_assume!(!f.is_zero() && i < f.n());
        prop_assert_eq!(dense(&f.partial_derivative(i).unwrap()), diff(&dense(&f), i));
    }

    #[test]
    fn euler_identity(f in arb_form(4, 5)) {
        prop_assume!(!f.is_zero() && f.degree() > 0);
        prop_assert_eq!(euler(&f), f.scale(&int(f.degree() as i64)));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in arb_form_of(3, 2), b in arb_form_of(3, 1), c in arb_form_of(3, 2)
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(dense(&a.mul(&b).unwrap()), mul(&dense(&a), &dense(&b)));
    }

    #[test]
    fn polar_pairing_matches_the_oracle(g in arb_form_of(3, 2), target in arb_form_of(3, 4)) {
        let big = target.with_side(Side::D);
        prop_assert_eq!(dense(&polar_apply(&g, &big).unwrap()), apply_operator(&dense(&g), &dense(&big)));
    }

    #[test]
    fn polar_pairing_is_bilinear_and_composes(
        g1 in arb_form_of(3, 1), g2 in arb_form_of(3, 2), h in arb_form_of(3, 2), target in arb_form_of(3, 4)
    ) {
        let big = target.with_side(Side::D);
        let lhs = polar_apply(&g1.mul(&g2).unwrap(), &big).unwrap();
        let rhs = polar_apply(&g1, &polar_apply(&g2, &big).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = polar_apply(&g2.add(&h).unwrap(), &big).unwrap();
        let parts = polar_apply(&g2, &big).unwrap().add(&polar_apply(&h, &big).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn substitution_round_trip(f in arb_form_of(3, 3), seed in 0u64..1000) {
        let b = LinearChange::new(random_invertible(3, &mut rng(seed))).unwrap();
        let g = f.substitute_linear(&b).unwrap();
        prop_assert_eq!(g.substitute_linear(&b.inverse()).unwrap(), f);
    }

    #[test]
    fn substitution_agrees_with_evaluation(f in arb_form_of(3, 3), seed in 0u64..1000, point in proptest::collection::vec(-5i64..=5, 3)) {
        // g(y) = f(B^{-T} y), so g(B^T x) = f(x).
        let b = LinearChange::new(random_invertible(3, &mut rng(seed))).unwrap();
        let g = f.substitute_linear(&b).unwrap();
        let x: Vec<Scalar> = point.iter().map(|&v| int(v)).collect();
        let y = b.matrix().transpose().mul_vec(&x).unwrap();
        prop_assert_eq!(g.poly().eval(&y), f.poly().eval(&x));
    }

    #[test]
    fn compose_linear_matches_prime_field_images(f in arb_form_of(3, 4), seed in 0u64..1000) {
        // Reduction modulo p commutes with substitution.
        let m = random_invertible(3, &mut rng(seed));
        let p = Field::prime(P1).unwrap();
        let over_q = f.compose_linear(&m).unwrap().to_field(p).unwrap();
        let mp = Matrix::from_rows(p, 3, m.to_rows().iter().map(|r| r.iter().map(|v| p.from_rational(v.as_rational().unwrap()).unwrap()).collect()).collect()).unwrap();
        prop_assert_eq!(f.to_field(p).unwrap().compose_linear(&mp).unwrap(), over_q);
    }

    #[test]
    fn poly_division_inverts_multiplication(a in arb_form_of(3, 2), b in arb_form_of(3, 2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod: Poly = a.mul(&b).unwrap().into_poly();
        prop_assert_eq!(prod.div_exact(b.poly()), Some(a.poly().clone()));
    }
}
