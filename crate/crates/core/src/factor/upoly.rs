//! Dense univariate polynomials over a [`Field`], used by the multivariate
//! lifting to solve Diophantine equations.

use crate::scalar::{Field, Scalar};

/// Prime for one-sided squarefree certificates over the rationals.
const CERT_PRIME: u64 = (1 << 61) - 1;

/// Constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub field: Field,
    pub c: Vec<Scalar>,
}

impl UPoly {
    pub fn new(field: Field, mut c: Vec<Scalar>) -> UPoly {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        UPoly { field, c }
    }

    pub fn zero(field: Field) -> UPoly {
        UPoly { field, c: Vec::new() }
    }

    pub fn one(field: Field) -> UPoly {
        UPoly { field, c: vec![field.one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let zero = self.field.zero();
        UPoly::new(
            self.field,
            (0..n).map(|i| self.c.get(i).unwrap_or(&zero) - o.c.get(i).unwrap_or(&zero)).collect(),
        )
    }

    pub fn scale(&self, k: &Scalar) -> UPoly {
        UPoly::new(self.field, self.c.iter().map(|a| a * k).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UPoly::new(self.field, out)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(self.field), |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (UPoly::zero(self.field), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero");
        let mut r = self.c.clone();
        let dl = d.c.len();
        let mut q = vec![self.field.zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dl - 1] * &inv;
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                let t = &coef * dj;
                r[k + j] -= &t;
            }
            q[k] = coef;
        }
        r.truncate(dl - 1);
        (UPoly::new(self.field, q), UPoly::new(self.field, r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero(f));
        let (mut t0, mut t1) = (UPoly::zero(f), UPoly::one(f));
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
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic gcd without cofactors; zero if both inputs are zero.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.scale(&r.lc().inv().expect("nonzero")) };
        }
        if a.is_zero() {
            return a;
        }
        let inv = a.lc().inv().expect("nonzero");
        a.scale(&inv)
    }

    pub fn derivative(&self) -> UPoly {
        let f = self.field;
        UPoly::new(f, self.c.iter().enumerate().skip(1).map(|(i, c)| c * &f.from_i64(i as i64)).collect())
    }

    /// Image modulo `p`; `None` over a prime field or if a denominator vanishes.
    fn reduce(&self, p: u64) -> Option<UPoly> {
        let target = Field::Prime(p);
        let c = self
            .c
            .iter()
            .map(|v| v.as_rational().and_then(|q| target.from_rational(q).ok()))
            .collect::<Option<Vec<_>>>()?;
        Some(UPoly::new(target, c))
    }

    /// Squarefree test. Over the rationals a squarefree image of the same
    /// degree modulo a large prime settles it; otherwise the gcd is exact.
    pub fn is_squarefree(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        if let Some(r) = self.reduce(CERT_PRIME) {
            if r.degree() == self.degree() && r.gcd(&r.derivative()).degree() == 0 {
                return true;
            }
        }
        self.gcd(&self.derivative()).degree() == 0
    }
}
