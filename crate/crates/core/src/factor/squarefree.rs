//! Squarefree decomposition of multivariate polynomials.
//!
//! Homogeneous input is certified squarefree on a random plane or decomposed
//! by lifting from a random line; Yun's algorithm with recursive gcds is the
//! fallback.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::multivariate::squarefree_by_lifting;
use super::upoly::UPoly;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Random planes tried by the squarefree certificate.
const RESTRICTION_ATTEMPTS: usize = 3;

const SQUAREFREE_SEED: u64 = 0x5f5f;

/// Pieces `(P, i)` with `f = unit * prod P^i`. Every `P` is squarefree and is
/// either a single variable or free of monomial content. Pieces are not merged
/// by multiplicity and are normalized by [`Poly::primitive_part`].
pub(crate) fn squarefree_pieces(f: &Poly) -> (Scalar, Vec<(Poly, u32)>) {
    let n = f.nvars();
    let field = f.field();
    let mut out = Vec::new();
    if f.is_zero() {
        return (field.zero(), out);
    }
    // Monomial content.
    let mut min = vec![u32::MAX; n];
    for (m, _) in f.terms() {
        for (i, &e) in m.exponents().iter().enumerate() {
            min[i] = min[i].min(e);
        }
    }
    let mut rest = f.clone();
    if min.iter().any(|&e| e > 0) {
        rest = f.div_exact(&Poly::monomial(Monomial::new(min.clone()), field.one())).expect("monomial divides");
        for (i, &e) in min.iter().enumerate() {
            if e > 0 {
                out.push((Poly::var(n, i, field), e));
            }
        }
    }
    if !rest.is_constant() {
        let lifted = if !rest.is_homogeneous() {
            None
        } else if certified_squarefree(&rest) {
            Some(vec![(rest.clone(), 1)])
        } else {
            squarefree_by_lifting(&rest, &mut ChaCha8Rng::seed_from_u64(SQUAREFREE_SEED))
        };
        match lifted {
            Some(pieces) => out.extend(pieces),
            None => recurse(&rest, &mut out),
        }
    }
    let mut normalized = Vec::with_capacity(out.len());
    for (p, i) in out {
        normalized.push((p.primitive_part().1, i));
    }
    let prod = normalized.iter().fold(Poly::one(n, field), |acc, (p, i)| acc.mul(&p.pow(*i)));
    let unit = &f.leading_coefficient() / &prod.leading_coefficient();
    debug_assert_eq!(prod.scale(&unit), *f);
    (unit, normalized)
}

fn recurse(f: &Poly, out: &mut Vec<(Poly, u32)>) {
    let v = f
        .variables()
        .into_iter()
        .min_by_key(|&v| (f.degree_in(v), v))
        .expect("nonconstant");
    let c = f.content_in(v);
    let pp = if c.is_constant() {
        f.clone()
    } else {
        recurse(&c, out);
        f.div_exact(&c).expect("content divides")
    };
    yun(&pp, v, out);
}

/// Yun's algorithm with respect to `v` on a polynomial primitive in `v`.
fn yun(f: &Poly, v: usize, out: &mut Vec<(Poly, u32)>) {
    let df = f.derivative(v);
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b).expect("gcd divides");
    let mut d = df.div_exact(&b).expect("gcd divides").sub(&c.derivative(v));
    let mut i = 1;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("gcd divides");
        d = d.div_exact(&a).expect("gcd divides").sub(&c.derivative(v));
        i += 1;
    }
}

/// One-sided squarefree certificate for a homogeneous polynomial: if the
/// restriction `f(a s + b t)` to a plane is a squarefree binary form with
/// `f(b) != 0`, then `f` is squarefree, since a square factor `g^2` of `f`
/// restricts to the square of a form of the same positive degree.
pub(crate) fn certified_squarefree(f: &Poly) -> bool {
    let n = f.nvars();
    let field = f.field();
    let d = match f.total_degree() {
        Some(d) if d >= 2 => d,
        _ => return true,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SQUAREFREE_SEED);
    for _ in 0..RESTRICTION_ATTEMPTS {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| vec![field.from_i64(rng.gen_range(-9..=9)), field.from_i64(rng.gen_range(-9..=9))])
            .collect();
        let r = f.compose_linear(&rows, 2);
        let mut coeffs = vec![field.zero(); d as usize + 1];
        for (m, c) in r.terms() {
            coeffs[m.exp(1) as usize] = c.clone();
        }
        let u = UPoly::new(field, coeffs);
        if u.degree() != d as usize {
            continue;
        }
        if u.is_squarefree() {
            return true;
        }
    }
    false
}
