//! Necessary conditions and the structured and LDS generators.

mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use formsplit::apolarity::{gradient_fiber, is_concise, is_smooth};
use formsplit::criteria::{
    factor_criterion, gen_lds, gen_structured, random_lds, state_criterion, Coefficients, CriterionReason,
    StateSet, StructuredKind,
};
use formsplit::decomposition::{classify, Verdict};
use formsplit::{parse_form_infer, CriterionResult, Error, Field, Form, Side};

use common::*;

/// Laplace expansion along the first row.
fn laplace(m: &[Vec<BigRational>]) -> BigRational {
    if m.is_empty() {
        return BigRational::one();
    }
    (0..m.len()).fold(BigRational::zero(), |acc, j| {
        let minor: Vec<Vec<BigRational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * laplace(&minor);
        if j % 2 == 0 { acc + term } else { acc - term }
    })
}

fn eval(f: &Form, x: &[BigRational]) -> BigRational {
    dense(f).iter().fold(BigRational::zero(), |acc, (e, c)| {
        acc + e.iter().zip(x).fold(c.clone(), |p, (&k, v)| p * num_traits::pow(v.clone(), k as usize))
    })
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn factor_criterion_examples() {
    let f = q("x1^3 + x1*x2^2 + x1*x3^2");
    let v = factor_criterion(&f, &opts()).unwrap();
    assert!(v.is_not_direct_sum());
    assert!(matches!(v.reason, CriterionReason::SmallFactorGradient { dim: 1, bound: 1, .. }));

    let v = factor_criterion(&q("x1^4 + x2^4 + 2*x1^2*x2^2"), &opts()).unwrap();
    assert!(matches!(v.reason, CriterionReason::RepeatedFactor { multiplicity: 2, .. }));

    let v = factor_criterion(&q("x1^4 + x2^4"), &opts()).unwrap();
    assert_eq!(v.result, CriterionResult::Inconclusive);
}

#[test]
fn factor_criterion_needs_a_large_field() {
    let f = parse_form_infer("x1^4 + x2^4 + 2*x1^2*x2^2", None, Side::S, Field::prime(31).unwrap()).unwrap();
    assert!(matches!(factor_criterion(&f, &opts()).unwrap().reason, CriterionReason::NotApplicable(_)));
    let f = parse_form_infer("x1^4 + x2^4 + 2*x1^2*x2^2", None, Side::S, Field::prime(37).unwrap()).unwrap();
    assert!(factor_criterion(&f, &opts()).unwrap().is_not_direct_sum());
}

#[test]
fn state_criterion_examples() {
    let det = gen_structured(StructuredKind::Determinant, 3, Coefficients::Seeded(3)).unwrap();
    assert!(state_criterion(&det).is_not_direct_sum());
    let pf = gen_structured(StructuredKind::Pfaffian, 3, Coefficients::Seeded(4)).unwrap();
    assert!(state_criterion(&pf).is_not_direct_sum());
    let v = state_criterion(&q("x1^3 + x2^3"));
    assert_eq!(v.reason, CriterionReason::StateConditionFailed(4));
    assert!(matches!(state_criterion(&q("x1*x2")).reason, CriterionReason::NotApplicable(_)));
}

#[test]
fn determinant_generator() {
    let det = gen_structured(StructuredKind::Determinant, 3, Coefficients::Unit).unwrap();
    assert_eq!((det.n(), det.degree(), det.len()), (9, 3, 6));
    let mut r = rng(9);
    for _ in 0..5 {
        let m: Vec<Vec<BigRational>> = (0..3).map(|_| (0..3).map(|_| int(r.gen_range(-6..=6))).collect()).collect();
        let x: Vec<BigRational> = m.iter().flatten().cloned().collect();
        assert_eq!(eval(&det, &x), laplace(&m));
    }
}

#[test]
fn permanent_generator() {
    let perm = gen_structured(StructuredKind::Permanent, 3, Coefficients::Unit).unwrap();
    assert_eq!(perm.len(), 6);
    assert!(perm.terms().all(|(_, c)| c.is_one()));
}

#[test]
fn pfaffian_generator() {
    let pf = gen_structured(StructuredKind::Pfaffian, 3, Coefficients::Unit).unwrap();
    assert_eq!((pf.n(), pf.degree(), pf.len()), (15, 3, 15));
    // Pf(A)^2 = det(A) for skew-symmetric A.
    let mut r = rng(11);
    for _ in 0..3 {
        let mut a = vec![vec![BigRational::zero(); 6]; 6];
        let mut x = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                let v = int(r.gen_range(-4..=4));
                a[i][j] = v.clone();
                a[j][i] = -v.clone();
                x.push(v);
            }
        }
        let p = eval(&pf, &x);
        assert_eq!(&p * &p, laplace(&a));
    }
}

#[test]
fn generator_size_limit() {
    assert_eq!(gen_structured(StructuredKind::Determinant, 2, Coefficients::Unit), Err(Error::SizeTooSmall(2)));
}

#[test]
fn structured_partial_states_are_disjoint() {
    for kind in [StructuredKind::Determinant, StructuredKind::Permanent, StructuredKind::Pfaffian] {
        let f = gen_structured(kind, 3, Coefficients::Seeded(5)).unwrap();
        let states: Vec<StateSet> = f.gradient().iter().map(StateSet::of).collect();
        for i in 0..states.len() {
            assert!(!states[i].is_empty());
            for j in i + 1..states.len() {
                assert!(states[i].is_disjoint(&states[j]), "{kind:?}: {i} and {j}");
            }
        }
        assert!(state_criterion(&f).is_not_direct_sum(), "{kind:?}");
    }
}

#[test]
fn lds_generator_example() {
    assert_eq!(gen_lds(&qn("x2^4", 2), &qn("x2^4", 2), 1).unwrap(), q("4*x1*x2^3 + x2^4"));
    assert!(matches!(gen_lds(&qn("x1^4", 2), &qn("x2^4", 2), 1), Err(Error::ShapeMismatch(_))));
    assert!(matches!(gen_lds(&qn("x2^4", 2), &qn("x2^4", 2), 2), Err(Error::ShapeMismatch(_))));
}

#[test]
fn lds_forms_are_singular() {
    let mut concise = 0;
    for seed in 0..20 {
        let f = random_lds(4, 2, 3, seed).unwrap();
        if f.is_zero() {
            continue;
        }
        assert!(!is_smooth(&f, &opts()).unwrap(), "seed {seed}");
        if is_concise(&f).unwrap().0 {
            concise += 1;
            assert!(gradient_fiber(&f, &opts()).unwrap().dim() >= 2, "seed {seed}");
            assert_eq!(classify(&f, &opts()).unwrap().verdict, Verdict::DsOrLdsOverClosure);
        }
    }
    assert!(concise > 0);
}

proptest! {
    #![proptest_config(prop_config(16))]

    #[test]
    fn criteria_never_fire_on_direct_sums(seed in 0u64..100_000) {
        let c = direct_sum_corpus(1, seed).remove(0);
        prop_assert!(!state_criterion(&c.form).is_not_direct_sum());
        prop_assert!(!factor_criterion(&c.form, &opts()).unwrap().is_not_direct_sum());
    }

    #[test]
    fn firing_criteria_agree_with_classify(seed in 0u64..100_000) {
        let mut r = rng(seed);
        // Smooth non-sums, and permanent-like forms on which the state test must fire.
        let f = if r.gen_bool(0.5) {
            non_direct_sum_corpus(1, seed).remove(0)
        } else {
            gen_structured(StructuredKind::Permanent, 3, Coefficients::Seeded(seed)).unwrap()
        };
        let fired = state_criterion(&f).is_not_direct_sum() || factor_criterion(&f, &opts()).unwrap().is_not_direct_sum();
        if fired && is_smooth(&f, &opts()).unwrap() {
            prop_assert_eq!(classify(&f, &opts()).unwrap().verdict, Verdict::NotDirectSum);
        }
        if f.n() == 9 {
            prop_assert!(fired);
        }
    }
}
