//! Irreducible factorization of squarefree primitive integer polynomials:
//! modular factorization, quadratic Hensel lifting, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;

use super::zp::{factor_squarefree_zp, ZpPoly};
use crate::scalar::is_prime;

/// Integer polynomial, constant term first, no trailing zeros.
pub type IntPoly = Vec<BigInt>;

/// Number of good primes tried before settling on the one with fewest modular factors.
const PRIME_CANDIDATES: usize = 5;
const FIRST_PRIME: u64 = 101;

pub fn trim(a: &mut IntPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn degree(a: &IntPoly) -> usize {
    a.len().saturating_sub(1)
}

pub fn content(a: &IntPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &IntPoly) -> IntPoly {
    let mut g = content(a);
    if g.is_zero() {
        return a.clone();
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// `a / b` over the integers if `b` divides `a` exactly.
pub fn div_exact(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    if b.is_empty() {
        return None;
    }
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.clone();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn modulo(a: &IntPoly, m: &BigInt) -> IntPoly {
    let mut out: IntPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn symmetric(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    let mut out: IntPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn scale(a: &IntPoly, k: &BigInt) -> IntPoly {
    let mut out: IntPoly = a.iter().map(|c| c * k).collect();
    trim(&mut out);
    out
}

/// Division by a polynomial that is monic modulo `m`.
fn divrem_monic(a: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let mut r = modulo(a, m);
    if r.len() < h.len() {
        return (Vec::new(), r);
    }
    let dl = h.len();
    let mut q = vec![BigInt::zero(); r.len() - dl + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + dl - 1].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, hj) in h.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * hj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dl - 1);
    trim(&mut r);
    trim(&mut q);
    (q, modulo(&r, m))
}

fn to_zp(a: &IntPoly, p: u64) -> ZpPoly {
    let pb = BigInt::from(p);
    ZpPoly::new(p, a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_zp(a: &ZpPoly) -> IntPoly {
    a.c.iter().map(|&v| BigInt::from(v)).collect()
}

/// One quadratic Hensel step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the same mod `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = modulo(&sub(f, &mul(g, h)), &m2);
    let (q, r) = divrem_monic(&mul(s, &e), h, &m2);
    let g2 = modulo(&add(&add(g, &mul(t, &e)), &mul(&q, g)), &m2);
    let h2 = modulo(&add(h, &r), &m2);
    let b = modulo(&sub(&add(&mul(s, &g2), &mul(t, &h2)), &vec![BigInt::one()]), &m2);
    let (c, d) = divrem_monic(&mul(s, &b), &h2, &m2);
    let s2 = modulo(&sub(s, &d), &m2);
    let t2 = modulo(&sub(&sub(t, &mul(t, &b)), &mul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ g0 h0 (mod p)` with `h0` monic to `f ≡ g h (mod modulus)`.
fn hensel_two(f: &IntPoly, g0: &ZpPoly, h0: &ZpPoly, p: u64, modulus: &BigInt) -> (IntPoly, IntPoly) {
    let (one, s0, t0) = g0.ext_gcd(h0);
    debug_assert!(one.is_one());
    let (mut g, mut h, mut s, mut t) = (from_zp(g0), from_zp(h0), from_zp(&s0), from_zp(&t0));
    let mut m = BigInt::from(p);
    while &m < modulus {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    (modulo(&g, modulus), modulo(&h, modulus))
}

/// Monic lifts of the modular factors with `f ≡ lc(f) * prod (mod modulus)`.
fn lift_all(f: &IntPoly, factors: &[ZpPoly], p: u64, modulus: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(modulus);
        let inv = lc.modinv(modulus).expect("leading coefficient is a unit");
        return vec![modulo(&scale(f, &inv), modulus)];
    }
    let half = factors.len() / 2;
    let lc = to_zp(&vec![f.last().unwrap().clone()], p).c[0];
    let g0 = factors[..half].iter().fold(ZpPoly::new(p, vec![lc]), |a, b| a.mul(b));
    let h0 = factors[half..].iter().fold(ZpPoly::one(p), |a, b| a.mul(b));
    let (g, h) = hensel_two(f, &g0, &h0, p, modulus);
    let mut out = lift_all(&g, &factors[..half], p, modulus);
    out.extend(lift_all(&h, &factors[half..], p, modulus));
    out
}

/// Bound on the coefficients of `lc(f) * g` for any factor `g` of `f`.
fn factor_bound(f: &IntPoly) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f.last().unwrap().abs();
    (BigInt::one() << degree(f)) * norm * lc
}

fn choose_prime(f: &IntPoly, rng: &mut ChaCha8Rng) -> (u64, Vec<ZpPoly>) {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    let mut p = FIRST_PRIME;
    while tried < PRIME_CANDIDATES {
        p += 2;
        if !is_prime(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_zp(f, p);
        if fp.degree() != degree(f) || !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        tried += 1;
        let facs = factor_squarefree_zp(&fp.monic(), rng);
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            let done = facs.len() == 1;
            best = Some((p, facs));
            if done {
                break;
            }
        }
    }
    best.expect("some prime is good")
}

/// Irreducible factors of a squarefree primitive integer polynomial with
/// positive leading coefficient, each primitive with positive leading coefficient.
pub fn factor_squarefree_integer(f: &IntPoly, rng: &mut ChaCha8Rng) -> Vec<IntPoly> {
    let mut f = primitive(f);
    if degree(&f) <= 1 {
        return vec![f];
    }
    let (p, modular) = choose_prime(&f, rng);
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = factor_bound(&f) * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
    }
    let mut lifted = lift_all(&f, &modular, p, &modulus);
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let prod = combo.iter().fold(vec![lc], |acc, &i| modulo(&mul(&acc, &lifted[i]), &modulus));
            let cand = primitive(&symmetric(&prod, &modulus));
            if let Some(q) = div_exact(&f, &cand) {
                out.push(cand);
                f = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut combo, r) {
                break;
            }
        }
        size += 1;
    }
    out.push(primitive(&f));
    out
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
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
