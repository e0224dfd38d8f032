//! Irreducible factorization of squarefree homogeneous polynomials.
//!
//! Two variables: dehomogenize and factor univariately. Three or more: apply a
//! random unimodular change `w = M^{-1} x`, set `w_1 = 1`, restrict to the line
//! `y = (w_3, ..) = 0`, factor there, lift the factors in the `y`-adic
//! filtration and recombine by trial division.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::upoly::UPoly;
use super::zassenhaus::{factor_squarefree_integer, IntPoly};
use super::zp::{factor_squarefree_zp, ZpPoly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{denominator_lcm, Field, Scalar};

/// Attempts at finding a change of coordinates with a squarefree restriction.
pub(crate) const MAX_EVALUATION_ATTEMPTS: usize = 24;

/// Irreducible factors (not normalized) of a squarefree univariate polynomial
/// given by coefficients, constant term first.
pub(crate) fn factor_univariate_squarefree(field: Field, coeffs: &[Scalar], rng: &mut ChaCha8Rng) -> Vec<Vec<Scalar>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg <= 1 {
        return vec![coeffs.to_vec()];
    }
    match field {
        Field::Rationals => {
            let l = denominator_lcm(coeffs.iter());
            let ints: IntPoly = coeffs
                .iter()
                .map(|c| {
                    let q = c.as_rational().expect("rational");
                    q.numer() * (&l / q.denom())
                })
                .collect();
            factor_squarefree_integer(&ints, rng)
                .into_iter()
                .map(|g| g.iter().map(|c| Field::Rationals.from_bigint(c)).collect())
                .collect()
        }
        Field::Prime(p) => {
            let zp = ZpPoly::new(
                p,
                coeffs
                    .iter()
                    .map(|c| match c {
                        Scalar::Prime { value, .. } => *value,
                        Scalar::Rational(_) => unreachable!("field mismatch"),
                    })
                    .collect(),
            );
            factor_squarefree_zp(&zp.monic(), rng)
                .into_iter()
                .map(|g| g.c.into_iter().map(|v| Scalar::Prime { value: v, modulus: p }).collect())
                .collect()
        }
    }
}

/// Irreducible factors of a squarefree homogeneous polynomial with no monomial content.
pub(crate) fn factor_squarefree_homogeneous(p: &Poly, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = p.nvars();
    let total = p.total_degree().unwrap_or(0);
    if total <= 1 {
        return Ok(vec![p.clone()]);
    }
    let vars: Vec<usize> = p.variables().into_iter().collect();
    let k = vars.len();
    let mut to_compact = vec![0usize; n];
    for (j, &v) in vars.iter().enumerate() {
        to_compact[v] = j;
    }
    let compact = p.rename_vars(&to_compact, k);
    let factors = match k {
        0 | 1 => vec![compact],
        2 => factor_binary(&compact, rng),
        _ => factor_by_lifting(&compact, rng)?,
    };
    Ok(factors.into_iter().map(|f| f.rename_vars(&vars, n)).collect())
}

/// Binary forms: `P(1, t)` has full degree because `x_2` does not divide `P`.
fn factor_binary(p: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let field = p.field();
    let d = p.total_degree().unwrap();
    let mut coeffs = vec![field.zero(); d as usize + 1];
    for (m, c) in p.terms() {
        coeffs[m.exp(1) as usize] = c.clone();
    }
    factor_univariate_squarefree(field, &coeffs, rng)
        .into_iter()
        .map(|q| {
            let e = (q.len() - 1) as u32;
            Poly::from_terms(
                2,
                field,
                q.into_iter().enumerate().map(|(j, c)| (Monomial::new(vec![e - j as u32, j as u32]), c)),
            )
        })
        .collect()
}

/// `L * U` with unit triangular factors and small random entries.
fn random_unimodular(k: usize, field: Field, rng: &mut ChaCha8Rng) -> Matrix {
    let mut l = Matrix::identity(k, field);
    let mut u = Matrix::identity(k, field);
    for i in 0..k {
        for j in 0..i {
            l.set(i, j, field.from_i64(rng.gen_range(-3..=3)));
            u.set(j, i, field.from_i64(rng.gen_range(-3..=3)));
        }
    }
    l.mul(&u).expect("square")
}

fn rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.to_rows()
}

/// Total degree in the variables `1..` (the `y` block) of a monomial in `(w_2, y)`.
fn ydeg(m: &Monomial) -> u32 {
    m.degree() - m.exp(0)
}

fn truncate(p: &Poly, max_ydeg: u32) -> Poly {
    Poly::from_terms(
        p.nvars(),
        p.field(),
        p.terms().filter(|(m, _)| ydeg(m) <= max_ydeg).map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn truncated_product(factors: &[&Poly], max_ydeg: u32, nv: usize, field: Field) -> Poly {
    factors.iter().fold(Poly::one(nv, field), |acc, f| truncate(&acc.mul(f), max_ydeg))
}

fn upoly_to_poly(u: &UPoly, nv: usize) -> Poly {
    let field = u.field;
    Poly::from_terms(
        nv,
        field,
        u.c.iter().enumerate().map(|(i, c)| (Monomial::new(with_first(nv, i as u32)), c.clone())),
    )
}

fn with_first(nv: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; nv];
    v[0] = e;
    v
}

/// `G = P(M w)` dehomogenized at `w_1 = 1` and made monic in `w_2`, for a
/// random unimodular `M` with `G(e_2) != 0`; `None` if the draw is unlucky.
struct Image {
    m: Matrix,
    /// In `(w_2, y)`, `k - 1` variables.
    g: Poly,
    /// `g(w_2, 0)`, monic of degree `D`.
    g0: UPoly,
}

fn draw_image(p: &Poly, rng: &mut ChaCha8Rng) -> Option<Image> {
    let k = p.nvars();
    let field = p.field();
    let d = p.total_degree().unwrap();
    let m = random_unimodular(k, field, rng);
    let g_full = p.compose_linear(&rows(&m), k);
    // Coefficient of w_2^D: makes the dehomogenized polynomial monic in w_2.
    let mut top = vec![0u32; k];
    top[1] = d;
    let lc = g_full.coefficient(&Monomial::new(top));
    let lc_inv = lc.inv()?;
    let g = Poly::from_terms(
        k - 1,
        field,
        g_full.terms().map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c * &lc_inv)),
    );
    let mut g0c = vec![field.zero(); d as usize + 1];
    for (m, c) in g.terms() {
        if ydeg(m) == 0 {
            g0c[m.exp(0) as usize] = c.clone();
        }
    }
    Some(Image { m, g, g0: UPoly::new(field, g0c) })
}

fn monic(u: &UPoly) -> UPoly {
    let inv = u.lc().inv().expect("nonzero");
    u.scale(&inv)
}

/// Rehomogenizes `c(w_2, y)` to total degree `e` and maps back through `M^{-1}`.
fn back(c: &Poly, e: u32, minv: &Matrix, k: usize) -> Poly {
    let hom = Poly::from_terms(
        k,
        c.field(),
        c.terms().map(|(m, v)| {
            let mut ex = vec![e - m.degree()];
            ex.extend_from_slice(m.exponents());
            (Monomial::new(ex), v.clone())
        }),
    );
    hom.compose_linear(&rows(minv), k)
}

fn factor_by_lifting(p: &Poly, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let k = p.nvars();
    let field = p.field();
    let d = p.total_degree().unwrap();
    for _ in 0..MAX_EVALUATION_ATTEMPTS {
        let Some(Image { m, g, g0 }) = draw_image(p, rng) else {
            continue;
        };
        if !g0.is_squarefree() {
            continue;
        }
        let images: Vec<UPoly> =
            factor_univariate_squarefree(field, &g0.c, rng).into_iter().map(|c| monic(&UPoly::new(field, c))).collect();
        if images.len() == 1 {
            return Ok(vec![p.clone()]);
        }
        let lifted = lift(&g, &images, d, g.nvars(), field);
        let found = recombine(g, lifted, &images, k - 1, field);
        let minv = m.inverse().expect("unimodular");
        return Ok(found.into_iter().map(|(c, e)| back(&c, e, &minv, k)).collect());
    }
    Err(Error::UnluckyEvaluationExhausted(MAX_EVALUATION_ATTEMPTS))
}

/// Univariate Yun decomposition of a monic polynomial: `(s_i, i)` with
/// `u = prod s_i^i`, each `s_i` monic, squarefree and nonconstant.
fn univariate_squarefree(u: &UPoly) -> Vec<(UPoly, u32)> {
    let du = u.derivative();
    let b = u.gcd(&du);
    let mut c = u.divrem(&b).0;
    let mut w = du.divrem(&b).0.sub(&c.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree() > 0 {
        let a = c.gcd(&w);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        c = c.divrem(&a).0;
        w = w.divrem(&a).0.sub(&c.derivative());
        i += 1;
    }
    out
}

/// `P` with `P^i = G`, monic in `w_2`, from `P ≡ s (mod y)`; `None` if `G` is
/// not an `i`-th power lifting `s^i`.
fn lift_root(g: &Poly, s: &UPoly, i: u32, nv: usize, field: Field) -> Option<Poly> {
    let e = s.degree() as u32;
    let mut p = upoly_to_poly(s, nv);
    if i == 1 {
        return Some(g.clone());
    }
    let denom = s.pow(i - 1).scale(&field.from_i64(i as i64));
    for t in 1..=e {
        let prod = truncate(&p.pow(i), t);
        let err = truncate(&g.sub(&prod), t);
        for (mu, coeffs) in group_by_y(&err, t, (e * i) as usize, field) {
            let (q, r) = UPoly::new(field, coeffs).divrem(&denom);
            if !r.is_zero() {
                return None;
            }
            p = p.add(&upoly_to_poly(&q, nv).mul_monomial(&mu, &field.one()));
        }
    }
    (p.pow(i) == *g).then_some(p)
}

/// Degree-`t` part of `err` grouped by `y`-monomial, as dense `w_2` coefficients.
fn group_by_y(err: &Poly, t: u32, len: usize, field: Field) -> BTreeMap<Monomial, Vec<Scalar>> {
    let mut groups: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
    for (m, c) in err.terms() {
        debug_assert_eq!(ydeg(m), t);
        let mut key = m.clone();
        let e0 = m.exp(0) as usize;
        key.exps_mut()[0] = 0;
        let row = groups.entry(key).or_insert_with(|| vec![field.zero(); len + 1]);
        row[e0] = c.clone();
    }
    groups
}

/// Squarefree decomposition `p = unit * prod P_i^i` of a homogeneous polynomial
/// with no monomial content, without multivariate gcds: the univariate image is
/// decomposed, the coprime blocks `s_i^i` are lifted, and `P_i` is recovered as
/// an `i`-th root. `None` when every draw is unlucky.
pub(crate) fn squarefree_by_lifting(p: &Poly, rng: &mut ChaCha8Rng) -> Option<Vec<(Poly, u32)>> {
    let n = p.nvars();
    let total = p.total_degree()?;
    let vars: Vec<usize> = p.variables().into_iter().collect();
    let k = vars.len();
    if k < 2 {
        return None;
    }
    let mut to_compact = vec![0usize; n];
    for (j, &v) in vars.iter().enumerate() {
        to_compact[v] = j;
    }
    let compact = p.rename_vars(&to_compact, k);
    let field = p.field();
    'attempt: for _ in 0..MAX_EVALUATION_ATTEMPTS {
        let Some(Image { m, g, g0 }) = draw_image(&compact, rng) else {
            continue;
        };
        let pieces = univariate_squarefree(&g0);
        let blocks: Vec<UPoly> = pieces.iter().map(|(s, i)| s.pow(*i)).collect();
        let lifted = if blocks.len() == 1 { vec![g.clone()] } else { lift(&g, &blocks, total, k - 1, field) };
        let minv = m.inverse().expect("unimodular");
        let mut out = Vec::with_capacity(pieces.len());
        for ((s, i), big) in pieces.iter().zip(&lifted) {
            let Some(root) = lift_root(big, s, *i, k - 1, field) else {
                continue 'attempt;
            };
            let hom = back(&root, s.degree() as u32, &minv, k);
            out.push((hom.rename_vars(&vars, n), *i));
        }
        let prod = out.iter().fold(Poly::one(n, field), |acc, (q, i)| acc.mul(&q.pow(*i)));
        if !prod.is_zero() && prod.scale(&(&p.leading_coefficient() / &prod.leading_coefficient())) == *p {
            return Some(out);
        }
    }
    None
}

/// Lifts `g ≡ prod images (mod y)` to `g ≡ prod H_j (mod y^{D+1})`, each `H_j`
/// monic in `w_2` of the same `w_2`-degree as its image.
fn lift(g: &Poly, images: &[UPoly], d: u32, nv: usize, field: Field) -> Vec<Poly> {
    let r = images.len();
    // s_j with sum_j s_j prod_{i != j} h_i = 1 and deg s_j < deg h_j.
    let cofactors: Vec<UPoly> = (0..r)
        .map(|j| {
            let others = (0..r).filter(|&i| i != j).fold(UPoly::one(field), |a, i| a.mul(&images[i]));
            let (one, _, t) = images[j].ext_gcd(&others);
            debug_assert_eq!(one.c, vec![field.one()]);
            t.rem(&images[j])
        })
        .collect();
    let mut lifted: Vec<Poly> = images.iter().map(|h| upoly_to_poly(h, nv)).collect();
    for t in 1..=d {
        let refs: Vec<&Poly> = lifted.iter().collect();
        let prod = truncated_product(&refs, t, nv, field);
        let err = truncate(&g.sub(&prod), t);
        if err.is_zero() {
            continue;
        }
        for (mu, coeffs) in group_by_y(&err, t, d as usize, field) {
            let e = UPoly::new(field, coeffs);
            for j in 0..r {
                let delta = e.mul(&cofactors[j]).rem(&images[j]);
                if delta.is_zero() {
                    continue;
                }
                let term = upoly_to_poly(&delta, nv).mul_monomial(&mu, &field.one());
                lifted[j] = lifted[j].add(&term);
            }
        }
    }
    lifted
}

/// Groups lifted factors into true factors by trial division. Returns each
/// factor together with its total degree.
fn recombine(mut g: Poly, mut lifted: Vec<Poly>, images: &[UPoly], nv: usize, field: Field) -> Vec<(Poly, u32)> {
    let mut degs: Vec<u32> = images.iter().map(|h| h.degree() as u32).collect();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let e: u32 = combo.iter().map(|&i| degs[i]).sum();
            let refs: Vec<&Poly> = combo.iter().map(|&i| &lifted[i]).collect();
            let cand = truncated_product(&refs, e, nv, field);
            if cand.terms().all(|(m, _)| m.degree() <= e) {
                if let Some(q) = g.div_exact(&cand) {
                    out.push((cand, e));
                    g = q;
                    for &i in combo.iter().rev() {
                        lifted.remove(i);
                        degs.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut combo, r) {
                break;
            }
        }
        size += 1;
    }
    let e: u32 = degs.iter().sum();
    out.push((g, e));
    out
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
