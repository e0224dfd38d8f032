//! Test-only oracles and corpus generators.
//!
//! The oracles avoid the library's linear algebra and pairing code: they work
//! with plain exponent maps, naive repeated differentiation, and dense
//! Gaussian elimination modulo a large prime.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use formsplit::{parse_form_infer, Field, Form, Matrix, Monomial, Options, Scalar, Side};

pub const P1: u64 = 1_000_000_007;
pub const P2: u64 = 998_244_353;

/// The ternary cubic worked example.
pub const INTRO: &str =
    "x1^3+3*x1^2*x2+3*x1*x2^2+2*x2^3+3*x1^2*x3+6*x1*x2*x3+4*x2^2*x3+3*x1*x3^2+4*x2*x3^2+2*x3^3";

/// The four-variable quartic worked example.
pub const RANDOM_QUARTIC: &str = "x1^4+4*x1^3*x2+6*x1^2*x2^2+4*x1*x2^3+2*x2^4+8*x1^3*x3+24*x1^2*x2*x3+24*x1*x2^2*x3+8*x2^3*x3+24*x1^2*x3^2+48*x1*x2*x3^2+24*x2^2*x3^2+32*x1*x3^3+32*x2*x3^3+17*x3^4-12*x1^3*x4-36*x1^2*x2*x4-36*x1*x2^2*x4-12*x2^3*x4-72*x1^2*x3*x4-144*x1*x2*x3*x4-72*x2^2*x3*x4-144*x1*x3^2*x4-144*x2*x3^2*x4-96*x3^3*x4+54*x1^2*x4^2+108*x1*x2*x4^2+54*x2^2*x4^2+216*x1*x3*x4^2+217*x2*x3*x4^2+216*x3^2*x4^2-108*x1*x4^3-108*x2*x4^3-216*x3*x4^3+82*x4^4";

pub type Dense = BTreeMap<Vec<u32>, BigRational>;

pub fn q(s: &str) -> Form {
    parse_form_infer(s, None, Side::S, Field::Rationals).unwrap()
}

pub fn qn(s: &str, n: usize) -> Form {
    parse_form_infer(s, Some(n), Side::S, Field::Rationals).unwrap()
}

pub fn dense(f: &Form) -> Dense {
    f.terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.as_rational().unwrap().clone()))
        .collect()
}

pub fn from_dense(d: &Dense, n: usize, side: Side) -> Form {
    let terms: Vec<(Monomial, Scalar)> = d
        .iter()
        .map(|(e, c)| (Monomial::new(e.clone()), Scalar::Rational(c.clone())))
        .collect();
    Form::from_terms(n, side, Field::Rationals, terms).unwrap()
}

/// Ordinary partial derivative of an exponent map.
pub fn diff(p: &Dense, i: usize) -> Dense {
    let mut out = Dense::new();
    for (e, c) in p {
        if e[i] == 0 {
            continue;
        }
        let mut e2 = e.clone();
        e2[i] -= 1;
        let v = c * BigRational::from_integer(BigInt::from(e[i]));
        *out.entry(e2).or_insert_with(BigRational::zero) += v;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Applies the differential operator `op` to `target` by repeated differentiation.
pub fn apply_operator(op: &Dense, target: &Dense) -> Dense {
    let mut out = Dense::new();
    for (e, c) in op {
        let mut t = target.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = diff(&t, i);
            }
        }
        for (e2, c2) in t {
            *out.entry(e2).or_insert_with(BigRational::zero) += c * &c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

pub fn to_mod(c: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = ((c.numer() % &pb) + &pb) % &pb;
    let den = ((c.denom() % &pb) + &pb) % &pb;
    let den = den.to_u64().unwrap();
    assert!(den != 0, "denominator divisible by the test prime");
    mulmod(num.to_u64().unwrap(), powmod(den, p - 2, p), p)
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Rank of a dense matrix modulo `p`, by plain Gaussian elimination.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = powmod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mulmod(factor, *y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn coords(p: &Dense, index: &BTreeMap<Vec<u32>, usize>, len: usize, prime: u64) -> Vec<u64> {
    let mut v = vec![0; len];
    for (e, c) in p {
        v[index[e]] = to_mod(c, prime);
    }
    v
}

fn index_of(n: usize, d: u32) -> BTreeMap<Vec<u32>, usize> {
    monomials(n, d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

/// True if the partials of `f` span all of `S_{N+1}`, certified modulo `prime`.
/// A full rank modulo a prime implies full rank over the rationals, which for
/// a form of degree `d + 1` means the partials have no common projective zero.
pub fn smooth_mod(f: &Form, prime: u64) -> bool {
    let n = f.n();
    let d = f.degree() - 1;
    let top = n as u32 * (d - 1) + 1;
    let fd = dense(f);
    let partials: Vec<Dense> = (0..n).map(|i| diff(&fd, i)).collect();
    let index = index_of(n, top);
    let mut rows = Vec::new();
    for m in monomials(n, top - d) {
        let mono: Dense = [(m, BigRational::one())].into_iter().collect();
        for g in &partials {
            rows.push(coords(&mul(&mono, g), &index, index.len(), prime));
        }
    }
    rank_mod(rows, prime) == index.len()
}

/// Dimension of `{g : every partial of g lies in the span of the partials of f}`
/// modulo `prime`, solved jointly for `g` and the matrix `M` with `∇g = M ∇f`.
pub fn fiber_dim_mod(f: &Form, prime: u64) -> usize {
    let n = f.n();
    let deg = f.degree();
    let fd = dense(f);
    let df: Vec<Dense> = (0..n).map(|i| diff(&fd, i)).collect();
    let unknowns_g = monomials(n, deg);
    let rows_index = index_of(n, deg - 1);
    let ng = unknowns_g.len();
    // Column layout: g coefficients, then M[i][j] at ng + i * n + j.
    let cols = ng + n * n;
    let mut rows = Vec::new();
    for i in 0..n {
        for row_mono in rows_index.keys() {
            let mut row = vec![0u64; cols];
            for (k, e) in unknowns_g.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] -= 1;
                if &e2 == row_mono {
                    row[k] = e[i] as u64 % prime;
                }
            }
            for j in 0..n {
                if let Some(c) = df[j].get(row_mono) {
                    row[ng + i * n + j] = (prime - to_mod(c, prime)) % prime;
                }
            }
            rows.push(row);
        }
    }
    let rank = rank_mod(rows, prime);
    // Concise f: M is determined by g, so the nullity counts g only.
    cols - rank
}

/// Checks that `a` is nonzero and is killed by every `m * ∂_i f` in degree `N`.
pub fn annihilated_by_jacobian(f: &Form, a: &Form) -> bool {
    let n = f.n();
    let d = f.degree() - 1;
    let top = n as u32 * (d - 1);
    let ad = dense(a);
    if ad.is_empty() || a.degree() != top {
        return false;
    }
    let fd = dense(f);
    let partials: Vec<Dense> = (0..n).map(|i| diff(&fd, i)).collect();
    for m in monomials(n, top - d) {
        let mono: Dense = [(m, BigRational::one())].into_iter().collect();
        for g in &partials {
            if !apply_operator(&mul(&mono, g), &ad).is_empty() {
                return false;
            }
        }
    }
    true
}

/// `a = c * b` for some nonzero scalar `c`.
pub fn proportional(a: &Form, b: &Form) -> bool {
    if a.is_zero() || b.is_zero() || a.n() != b.n() {
        return false;
    }
    let (da, db) = (dense(a), dense(b));
    if da.len() != db.len() || da.keys().ne(db.keys()) {
        return false;
    }
    let (k0, c0) = da.iter().next().unwrap();
    let ratio = c0 / &db[k0];
    da.iter().all(|(k, c)| *c == &ratio * &db[k])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_matrix(rows: &[Vec<i64>]) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(
        Field::Rationals,
        cols,
        rows.iter().map(|r| r.iter().map(|&v| Field::Rationals.from_i64(v)).collect()).collect(),
    )
    .unwrap()
}

/// A random invertible integer matrix with entries in `-2..=2`.
pub fn random_invertible(n: usize, r: &mut ChaCha8Rng) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(-2..=2)).collect()).collect();
        let m = int_matrix(&rows);
        if m.rank() == n {
            return m;
        }
    }
}

fn power_sum(vars: &[usize], n: usize, degree: u32) -> Dense {
    vars.iter()
        .map(|&v| {
            let mut e = vec![0; n];
            e[v] = degree;
            (e, BigRational::one())
        })
        .collect()
}

/// Random terms supported on `vars` with coefficients in `-1..=1` scaled by `1/2`.
fn perturbation(vars: &[usize], n: usize, degree: u32, r: &mut ChaCha8Rng) -> Dense {
    let mut out = Dense::new();
    for local in monomials(vars.len(), degree) {
        if local.iter().filter(|&&e| e > 0).count() < 2 || r.gen_bool(0.5) {
            continue;
        }
        let c: i64 = r.gen_range(-2..=2);
        if c == 0 {
            continue;
        }
        let mut e = vec![0; n];
        for (k, &v) in vars.iter().enumerate() {
            e[v] = local[k];
        }
        out.insert(e, BigRational::new(BigInt::from(c), BigInt::from(2)));
    }
    out
}

fn add(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert_with(BigRational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A smooth direct sum together with the number of blocks it was built from.
#[derive(Clone, Debug)]
pub struct CorpusForm {
    pub form: Form,
    pub blocks: Vec<usize>,
}

/// Partitions of `n` into at least two positive parts, avoiding binary cubic
/// blocks (those split further over an extension field).
fn block_sizes(n: usize, degree: u32, r: &mut ChaCha8Rng) -> Vec<usize> {
    loop {
        let mut left = n;
        let mut sizes = Vec::new();
        while left > 0 {
            let s = r.gen_range(1..=left);
            sizes.push(s);
            left -= s;
        }
        if sizes.len() >= 2 && !(degree == 3 && sizes.contains(&2)) {
            return sizes;
        }
    }
}

/// Block-Fermat forms with within-block perturbations, certified smooth by the
/// modular oracle, then hidden by a random invertible change of coordinates.
pub fn direct_sum_corpus(count: usize, seed: u64) -> Vec<CorpusForm> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=4usize);
        let degree = if n == 2 { r.gen_range(4..=5) } else { r.gen_range(3..=if n == 4 { 4 } else { 5 }) };
        let sizes = block_sizes(n, degree, &mut r);
        let mut total = Dense::new();
        let mut start = 0;
        for &s in &sizes {
            let block = loop {
                let vars: Vec<usize> = (0..s).collect();
                let mut b = power_sum(&vars, s, degree);
                if s >= 2 {
                    b = add(&b, &perturbation(&vars, s, degree, &mut r));
                }
                // Each block must be smooth and not a direct sum even over an
                // extension field, i.e. have a one-dimensional gradient fiber.
                let bf = from_dense(&b, s, Side::S);
                if s == 1 || (smooth_mod(&bf, P1) && fiber_dim_mod(&bf, P1) == 1) {
                    break b;
                }
            };
            for (e, c) in block {
                let mut full = vec![0; n];
                full[start..start + s].copy_from_slice(&e);
                total.insert(full, c);
            }
            start += s;
        }
        let f = from_dense(&total, n, Side::S);
        if !smooth_mod(&f, P1) {
            continue;
        }
        let m = random_invertible(n, &mut r);
        let g = f.compose_linear(&m).unwrap();
        out.push(CorpusForm { form: g, blocks: sizes });
    }
    out
}

/// Dense random smooth forms; a generic form is not a direct sum, and the
/// modular fiber oracle confirms it.
pub fn non_direct_sum_corpus(count: usize, seed: u64) -> Vec<Form> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=4usize);
        let degree = if n == 2 { r.gen_range(4..=5) } else { 3 };
        let d: Dense = monomials(n, degree)
            .into_iter()
            .filter_map(|e| {
                let c: i64 = r.gen_range(-3..=3);
                (c != 0).then(|| (e, BigRational::from_integer(BigInt::from(c))))
            })
            .collect();
        if d.is_empty() {
            continue;
        }
        let f = from_dense(&d, n, Side::S);
        if smooth_mod(&f, P1) && fiber_dim_mod(&f, P1) == 1 {
            out.push(f);
        }
    }
    out
}

pub fn opts() -> Options {
    Options::default()
}

/// Rational roots of an integer polynomial (constant term first), by the
/// candidate test `p / q` with `p | a_0` and `q | a_d`.
pub fn rational_roots(coeffs: &[i64]) -> Vec<BigRational> {
    let divisors = |v: i64| -> Vec<i64> {
        let v = v.abs();
        (1..=v).filter(|k| v % k == 0).collect()
    };
    let lead = *coeffs.last().unwrap();
    let mut c = coeffs.to_vec();
    let mut roots = Vec::new();
    while c.first() == Some(&0) {
        c.remove(0);
        roots.push(BigRational::zero());
    }
    if c.len() <= 1 {
        return roots;
    }
    for p in divisors(c[0]) {
        for qq in divisors(lead) {
            for sign in [1, -1] {
                let x = BigRational::new(BigInt::from(sign * p), BigInt::from(qq));
                let val = c
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, a| acc * &x + BigRational::from_integer(BigInt::from(*a)));
                if val.is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Irreducible by Eisenstein at 2 on a random plane restriction.
pub fn random_irreducible(n: usize, degree: u32, r: &mut ChaCha8Rng) -> Form {
    let field = Field::Rationals;
    let a = r.gen_range(0..n);
    let b = (a + r.gen_range(1..n)) % n;
    let mut terms = Vec::new();
    for e in monomials(n, degree) {
        let in_plane = e.iter().enumerate().all(|(i, &k)| k == 0 || i == a || i == b);
        let c: i64 = if in_plane {
            if e[a] == degree {
                1
            } else if e[b] == degree {
                2 * (2 * r.gen_range(-2..=2) + 1)
            } else {
                2 * r.gen_range(-2..=2)
            }
        } else if r.gen_bool(0.4) {
            r.gen_range(-3..=3)
        } else {
            0
        };
        if c != 0 {
            terms.push((Monomial::new(e), field.from_i64(c)));
        }
    }
    Form::from_terms(n, Side::S, field, terms).unwrap()
}

/// Deterministic property-test configuration.
pub fn prop_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5EED),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}

/// Random S-side forms with small rational coefficients; may be zero.
pub fn arb_form(max_n: usize, max_degree: u32) -> impl proptest::strategy::Strategy<Value = Form> {
    use proptest::prelude::*;
    (1..=max_n, 0..=max_degree).prop_flat_map(|(n, d)| {
        let count = monomials(n, d).len();
        proptest::collection::vec((-4i64..=4, 1i64..=3, proptest::bool::weighted(0.6)), count).prop_map(
            move |coeffs| {
                let terms: Vec<(Monomial, Scalar)> = monomials(n, d)
                    .into_iter()
                    .zip(coeffs)
                    .filter(|(_, (a, _, keep))| *keep && *a != 0)
                    .map(|(e, (a, b, _))| {
                        (Monomial::new(e), Field::Rationals.from_ratio(&BigInt::from(a), &BigInt::from(b)).unwrap())
                    })
                    .collect();
                if terms.is_empty() {
                    Form::zero(n, Side::S, d, Field::Rationals)
                } else {
                    Form::from_terms(n, Side::S, Field::Rationals, terms).unwrap()
                }
            },
        )
    })
}

/// Random forms of a fixed shape.
pub fn arb_form_of(n: usize, degree: u32) -> impl proptest::strategy::Strategy<Value = Form> {
    use proptest::prelude::*;
    let count = monomials(n, degree).len();
    proptest::collection::vec((-4i64..=4, 1i64..=3), count).prop_map(move |coeffs| {
        let terms: Vec<(Monomial, Scalar)> = monomials(n, degree)
            .into_iter()
            .zip(coeffs)
            .filter(|(_, (a, _))| *a != 0)
            .map(|(e, (a, b))| (Monomial::new(e), Field::Rationals.from_ratio(&BigInt::from(a), &BigInt::from(b)).unwrap()))
            .collect();
        if terms.is_empty() {
            Form::zero(n, Side::S, degree, Field::Rationals)
        } else {
            Form::from_terms(n, Side::S, Field::Rationals, terms).unwrap()
        }
    })
}

/// Random integer matrices with entries in `-3..=3`, invertible or not.
pub fn arb_matrix(rows: usize, cols: usize) -> impl proptest::strategy::Strategy<Value = Matrix> {
    use proptest::prelude::*;
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows).prop_map(move |r| {
        Matrix::from_rows(
            Field::Rationals,
            cols,
            r.iter().map(|row| row.iter().map(|&v| Field::Rationals.from_i64(v)).collect()).collect(),
        )
        .unwrap()
    })
}
