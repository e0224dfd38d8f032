//! Sparse multivariate polynomials over a [`Field`].
//!
//! [`Poly`] is the untyped workhorse behind [`crate::Form`]; it is not
//! required to be homogeneous, which the factorization code relies on after
//! dehomogenizing.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::monomial::Monomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{denominator_lcm, numerator_gcd, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Poly {
        Poly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        let field = c.field();
        let mut p = Poly::zero(nvars, field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, field: Field) -> Poly {
        Poly::constant(nvars, field.one())
    }

    pub fn var(nvars: usize, i: usize, field: Field) -> Poly {
        Poly::monomial(Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero(m.nvars(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms(nvars: usize, field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut p = Poly::zero(nvars, field);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Grevlex-largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Scalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(|| self.field.zero())
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.support());
        }
        s
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: std::collections::HashMap<Monomial, Scalar> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars, self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.exps_mut()[v] -= 1;
            out.add_term(nm, &(c * &self.field.from_i64(e as i64)));
        }
        out
    }

    /// Substitutes the constant `value` for variable `v` (the variable stays in
    /// the ring with exponent 0).
    pub fn eval_var(&self, v: usize, value: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut nm = m.clone();
            nm.exps_mut()[v] = 0;
            out.add_term(nm, &(c * &value.pow(e)));
        }
        out
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// `f(M y)`: variable `x_i` becomes `sum_j rows[i][j] * y_j` in `new_nvars` variables.
    pub fn compose_linear(&self, rows: &[Vec<Scalar>], new_nvars: usize) -> Poly {
        assert_eq!(rows.len(), self.nvars);
        let linear: Vec<Poly> = rows
            .iter()
            .map(|row| {
                Poly::from_terms(
                    new_nvars,
                    self.field,
                    row.iter().enumerate().map(|(j, c)| (Monomial::var(new_nvars, j), c.clone())),
                )
            })
            .collect();
        if self.field.is_rationals() {
            return self.compose_linear_integral(rows, new_nvars);
        }
        let terms: Vec<(&[u32], &Scalar)> = self.terms.iter().map(|(m, c)| (m.exponents(), c)).collect();
        horner(&terms, 0, &linear, new_nvars, self.field)
    }

    /// Rational substitution done over the integers: with `rows = R / d` and
    /// top degree `D`, `f(R y / d) = d^{-D} sum_e c_e d^{D - |e|} (R y)^e`.
    fn compose_linear_integral(&self, rows: &[Vec<Scalar>], new_nvars: usize) -> Poly {
        let field = self.field;
        let int = |s: &Scalar| s.as_rational().expect("rational").clone();
        let d = denominator_lcm(rows.iter().flatten());
        let linear: Vec<Vec<(usize, BigInt)>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, (int(c) * BigRational::from_integer(d.clone())).to_integer()))
                    .collect()
            })
            .collect();
        let top = self.total_degree().unwrap_or(0);
        let scaled: Vec<(&[u32], BigRational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.exponents(), int(c) * BigRational::from_integer(d.pow(top - m.degree()))))
            .collect();
        let l = scaled.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let terms: Vec<(&[u32], BigInt)> =
            scaled.into_iter().map(|(e, q)| (e, (q * BigRational::from_integer(l.clone())).to_integer())).collect();
        let refs: Vec<(&[u32], &BigInt)> = terms.iter().map(|(e, c)| (*e, c)).collect();
        let out = horner_integral(&refs, 0, &linear, new_nvars);
        let den = d.pow(top) * l;
        Poly {
            nvars: new_nvars,
            field,
            terms: out
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Scalar::Rational(BigRational::new(c, den.clone()))))
                .collect(),
        }
    }

    /// Re-indexes variables: variable `i` becomes `map[i]` in a ring with `new_nvars` variables.
    pub fn rename_vars(&self, map: &[usize], new_nvars: usize) -> Poly {
        let mut out = Poly::zero(new_nvars, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_nvars];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    e[map[i]] += k;
                }
            }
            out.add_term(Monomial::new(e), c);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars, self.field);
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(lm)?;
            let c = rc * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&m), &-(dc * &c));
            }
            quot.add_term(m, &c);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Over the rationals: integer coefficients with gcd 1 and positive leading
    /// coefficient. Over a prime field: monic. Returns `(unit, primitive)` with
    /// `self = unit * primitive`.
    pub fn primitive_part(&self) -> (Scalar, Poly) {
        if self.is_zero() {
            return (self.field.one(), self.clone());
        }
        match self.field {
            Field::Prime(_) => {
                let lc = self.leading_coefficient();
                (lc.clone(), self.scale(&lc.inv().expect("nonzero")))
            }
            Field::Rationals => {
                let l = denominator_lcm(self.terms.values());
                let scaled = self.scale(&Field::Rationals.from_bigint(&l));
                let mut g = numerator_gcd(scaled.terms.values());
                if scaled.leading_coefficient().is_negative() {
                    g = -g;
                }
                let prim = scaled.scale(&Field::Rationals.from_ratio(&BigInt::one(), &g).expect("nonzero"));
                (Field::Rationals.from_ratio(&g, &l).expect("nonzero"), prim)
            }
        }
    }

    /// Coefficients with respect to variable `v`: `self = sum_k coeff[k] * v^k`.
    pub fn coefficients_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut nm = m.clone();
            nm.exps_mut()[v] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.nvars, self.field))
                .add_term(nm, c);
        }
        out
    }

    fn leading_coefficient_in(&self, v: usize) -> Poly {
        let d = self.degree_in(v);
        let mut out = Poly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            if m.exp(v) == d {
                let mut nm = m.clone();
                nm.exps_mut()[v] = 0;
                out.add_term(nm, c);
            }
        }
        out
    }

    /// Gcd of the coefficients with respect to `v`, made monic.
    pub fn content_in(&self, v: usize) -> Poly {
        let coeffs = self.coefficients_in(v);
        let mut g = Poly::zero(self.nvars, self.field);
        for c in coeffs.values() {
            if c.is_constant() {
                return Poly::one(self.nvars, self.field);
            }
            g = g.gcd(c);
            if g.is_constant() {
                return Poly::one(self.nvars, self.field);
            }
        }
        g
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one(self.nvars, self.field);
        }
        let va = self.variables();
        let vb = other.variables();
        let common: Vec<usize> = va.intersection(&vb).copied().collect();
        if common.is_empty() {
            // Any common factor would have to be free of every variable.
            let v = *va.iter().next().unwrap();
            return other.gcd(&self.content_in(v));
        }
        if let Some(&v) = va.difference(&vb).next() {
            return other.gcd(&self.content_in(v));
        }
        if let Some(&v) = vb.difference(&va).next() {
            return self.gcd(&other.content_in(v));
        }
        let v = *common
            .iter()
            .min_by_key(|&&v| (self.degree_in(v).max(other.degree_in(v)), v))
            .unwrap();
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let c = ca.gcd(&cb);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let g = prs_gcd(pa, pb, v);
        c.mul(&g).monic()
    }

    /// Pseudo-remainder of `self` by `b` with respect to `v`.
    fn pseudo_rem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lb = b.leading_coefficient_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let lr = r.leading_coefficient_in(v);
            let s = r.degree_in(v) - db;
            let mut shift = vec![0u32; self.nvars];
            shift[v] = s;
            let shifted = b.mul(&lr).mul_monomial(&Monomial::new(shift), &self.field.one());
            r = r.mul(&lb).sub(&shifted);
        }
        r
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").monic()
    }
}

/// Gcd of two polynomials that are primitive with respect to `v` and both involve `v`.
fn prs_gcd(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = a.pseudo_rem(&b, v);
        if r.is_zero() {
            return b.primitive_in(v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one(a.nvars, a.field);
        }
        a = b;
        b = r.primitive_in(v);
    }
}

/// Nested Horner evaluation of `sum c x^e` at `x_i = linear[i]`, one variable at a time.
fn horner(terms: &[(&[u32], &Scalar)], var: usize, linear: &[Poly], nvars: usize, field: Field) -> Poly {
    if var == linear.len() {
        let mut out = Poly::zero(nvars, field);
        for (_, c) in terms {
            out.add_term(Monomial::one(nvars), c);
        }
        return out;
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Scalar)>> = BTreeMap::new();
    for &(e, c) in terms {
        groups.entry(e[var]).or_default().push((e, c));
    }
    let top = groups.keys().next_back().copied().unwrap_or(0);
    let mut acc = Poly::zero(nvars, field);
    for e in (0..=top).rev() {
        if !acc.is_zero() {
            acc = acc.mul(&linear[var]);
        }
        if let Some(g) = groups.get(&e) {
            acc = acc.add(&horner(g, var + 1, linear, nvars, field));
        }
    }
    acc
}

type IntPoly = HashMap<Monomial, BigInt>;

fn horner_integral(terms: &[(&[u32], &BigInt)], var: usize, linear: &[Vec<(usize, BigInt)>], nvars: usize) -> IntPoly {
    if var == linear.len() {
        let sum: BigInt = terms.iter().map(|(_, c)| *c).sum();
        return IntPoly::from([(Monomial::one(nvars), sum)]);
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &BigInt)>> = BTreeMap::new();
    for &(e, c) in terms {
        groups.entry(e[var]).or_default().push((e, c));
    }
    let top = groups.keys().next_back().copied().unwrap_or(0);
    let mut acc = IntPoly::new();
    for e in (0..=top).rev() {
        if !acc.is_empty() {
            let mut next = IntPoly::with_capacity(acc.len() * 2);
            for (m, c) in &acc {
                for (j, l) in &linear[var] {
                    let mut key = m.clone();
                    key.exps_mut()[*j] += 1;
                    *next.entry(key).or_default() += c * l;
                }
            }
            acc = next;
        }
        if let Some(g) = groups.get(&e) {
            for (m, c) in horner_integral(g, var + 1, linear, nvars) {
                *acc.entry(m).or_default() += c;
            }
        }
    }
    acc
}
