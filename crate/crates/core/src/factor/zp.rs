//! Dense univariate polynomials over `F_p` with `u64` coefficients, and their
//! factorization by distinct-degree and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::{inv_mod, mul_mod};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl ZpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> ZpPoly {
        for v in c.iter_mut() {
            *v %= p;
        }
        let mut out = ZpPoly { p, c };
        out.trim();
        out
    }

    pub fn zero(p: u64) -> ZpPoly {
        ZpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> ZpPoly {
        ZpPoly { p, c: vec![1] }
    }

    /// The polynomial `y`.
    pub fn x(p: u64) -> ZpPoly {
        ZpPoly { p, c: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn sub(&self, o: &ZpPoly) -> ZpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                if a >= b {
                    a - b
                } else {
                    a + p - b
                }
            })
            .collect();
        ZpPoly::new(p, c)
    }

    pub fn scale(&self, k: u64) -> ZpPoly {
        ZpPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn mul(&self, o: &ZpPoly) -> ZpPoly {
        if self.is_zero() || o.is_zero() {
            return ZpPoly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = (p as u128) * (p as u128);
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                let t = acc[i + j] + (a as u128) * (b as u128);
                acc[i + j] = if t >= pp { t - pp } else { t };
            }
        }
        ZpPoly::new(p, acc.into_iter().map(|v| (v % p as u128) as u64).collect())
    }

    pub fn monic(&self) -> ZpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p).expect("nonzero");
        self.scale(inv)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &ZpPoly) -> (ZpPoly, ZpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (ZpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p).expect("nonzero");
        let mut r = self.c.clone();
        let dl = d.c.len();
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + dl - 1], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                let t = mul_mod(coef, dj, p);
                let v = r[k + j];
                r[k + j] = if v >= t { v - t } else { v + p - t };
            }
        }
        r.truncate(dl - 1);
        (ZpPoly::new(p, q), ZpPoly::new(p, r))
    }

    pub fn rem(&self, d: &ZpPoly) -> ZpPoly {
        self.divrem(d).1
    }

    pub fn derivative(&self) -> ZpPoly {
        let p = self.p;
        ZpPoly::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % p, p)).collect())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &ZpPoly) -> ZpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &ZpPoly) -> (ZpPoly, ZpPoly, ZpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &ZpPoly) -> ZpPoly {
        let mut result = ZpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(product of all irreducible factors of degree k, k)`.
pub fn distinct_degree(f: &ZpPoly) -> Vec<(ZpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = ZpPoly::x(p).rem(&rest);
    let pe = BigUint::from(p);
    let mut k = 0;
    while rest.degree() >= 2 * (k + 1) {
        k += 1;
        h = h.powmod(&pe, &rest);
        let g = rest.gcd(&h.sub(&ZpPoly::x(p)));
        if g.degree() > 0 {
            out.push((g.clone(), k));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest, d));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `k` (odd `p`).
pub fn equal_degree(f: &ZpPoly, k: usize, rng: &mut ChaCha8Rng) -> Vec<ZpPoly> {
    let p = f.p;
    if f.degree() == k {
        return vec![f.monic()];
    }
    let e = (BigUint::from(p).pow(k as u32) - 1u32) / 2u32;
    loop {
        let a = ZpPoly::new(p, (0..f.degree()).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let g = f.gcd(&a);
        let split = if g.degree() > 0 && g.degree() < f.degree() {
            g
        } else {
            let b = a.powmod(&e, f).sub(&ZpPoly::one(p));
            let g = f.gcd(&b);
            if g.degree() == 0 || g.degree() == f.degree() {
                continue;
            }
            g
        };
        let other = f.divrem(&split).0;
        let mut out = equal_degree(&split, k, rng);
        out.extend(equal_degree(&other, k, rng));
        return out;
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted.
pub fn factor_squarefree_zp(f: &ZpPoly, rng: &mut ChaCha8Rng) -> Vec<ZpPoly> {
    let mut out = Vec::new();
    for (g, k) in distinct_degree(f) {
        out.extend(equal_degree(&g, k, rng));
    }
    out.sort_by(|a, b| (a.degree(), &a.c).cmp(&(b.degree(), &b.c)));
    out
}
