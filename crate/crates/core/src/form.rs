//! Homogeneous forms on either side of the polar pairing.
//!
//! A [`Form`] lives in `S = k[x_1..x_n]` or in `D = k[z_1..z_n]`. The two
//! rings act on each other by differentiation: `g ∘ F = g(∂/∂z) F`, and
//! symmetrically `F ∘ g = F(∂/∂x) g`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{LinearChange, Matrix};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// Which ring a form belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `S = k[x_1..x_n]`
    S,
    /// `D = k[z_1..z_n]`, the graded dual.
    D,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::S => 'x',
            Side::D => 'z',
        }
    }

    pub fn dual(self) -> Side {
        match self {
            Side::S => Side::D,
            Side::D => Side::S,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    side: Side,
    degree: u32,
    poly: Poly,
}

impl Form {
    /// Wraps a homogeneous polynomial. The zero polynomial gets degree 0.
    pub fn new(side: Side, poly: Poly) -> Result<Form> {
        let degree = poly.total_degree().unwrap_or(0);
        Form::with_degree(side, degree, poly)
    }

    /// Wraps `poly`, checking that every term has degree `degree`.
    pub fn with_degree(side: Side, degree: u32, poly: Poly) -> Result<Form> {
        for (m, _) in poly.terms() {
            if m.degree() != degree {
                return Err(Error::NonHomogeneous { first: degree, second: m.degree() });
            }
        }
        Ok(Form { side, degree, poly })
    }

    pub fn zero(n: usize, side: Side, degree: u32, field: Field) -> Form {
        Form { side, degree, poly: Poly::zero(n, field) }
    }

    pub fn from_terms(
        n: usize,
        side: Side,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Form> {
        Form::new(side, Poly::from_terms(n, field, terms))
    }

    /// Convenience constructor with integer coefficients over `field`.
    pub fn from_int_terms(n: usize, side: Side, field: Field, terms: &[(&[u32], i64)]) -> Result<Form> {
        Form::from_terms(
            n,
            side,
            field,
            terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), field.from_i64(*c))),
        )
    }

    pub fn linear(side: Side, coeffs: &[Scalar]) -> Form {
        let n = coeffs.len();
        let field = coeffs.first().map(Scalar::field).unwrap_or(Field::Rationals);
        let poly = Poly::from_terms(
            n,
            field,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())),
        );
        Form { side, degree: 1, poly }
    }

    pub fn n(&self) -> usize {
        self.poly.nvars()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// Terms in grevlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.poly.terms().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.poly.coefficient(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.poly.leading_term()
    }

    /// Variables (0-based) that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        self.poly.variables().into_iter().collect()
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch { expected: self.side, found: other.side });
        }
        if self.n() != other.n() {
            return Err(Error::VariableCountMismatch { left: self.n(), right: other.n() });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn sum_degree(&self, other: &Form) -> Result<u32> {
        self.check_compatible(other)?;
        match (self.is_zero(), other.is_zero()) {
            (true, _) => Ok(other.degree),
            (_, true) => Ok(self.degree),
            _ if self.degree == other.degree => Ok(self.degree),
            _ => Err(Error::DegreeMismatch { left: self.degree, right: other.degree }),
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        let degree = self.sum_degree(other)?;
        Ok(Form { side: self.side, degree, poly: self.poly.add(&other.poly) })
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        let degree = self.sum_degree(other)?;
        Ok(Form { side: self.side, degree, poly: self.poly.sub(&other.poly) })
    }

    pub fn mul(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        Ok(Form { side: self.side, degree: self.degree + other.degree, poly: self.poly.mul(&other.poly) })
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        Form { side: self.side, degree: self.degree, poly: self.poly.scale(c) }
    }

    pub fn neg(&self) -> Form {
        Form { side: self.side, degree: self.degree, poly: self.poly.neg() }
    }

    pub fn pow(&self, e: u32) -> Form {
        Form { side: self.side, degree: self.degree * e, poly: self.poly.pow(e) }
    }

    /// Formal partial derivative with respect to the 0-based variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Form> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange { index: i + 1, n: self.n() });
        }
        Ok(Form {
            side: self.side,
            degree: self.degree.saturating_sub(1),
            poly: self.poly.derivative(i),
        })
    }

    pub fn gradient(&self) -> Vec<Form> {
        (0..self.n()).map(|i| self.partial_derivative(i).expect("index in range")).collect()
    }

    /// `f(M y)`: each old variable `x_i` is replaced by `sum_j M[i][j] y_j`.
    pub fn compose_linear(&self, m: &Matrix) -> Result<Form> {
        if m.rows() != self.n() || m.cols() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} variables",
                m.rows(),
                m.cols(),
                self.n()
            )));
        }
        let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        Ok(Form { side: self.side, degree: self.degree, poly: self.poly.compose_linear(&rows, self.n()) })
    }

    /// Rewrites the form in the basis given by the columns of `change`.
    ///
    /// If `b_j = sum_i B[i][j] x_i` are the new basis vectors, the result `g`
    /// satisfies `f(x) = g(b_1(x), .., b_n(x))`, i.e. `g(y) = f(B^{-T} y)`.
    pub fn substitute_linear(&self, change: &LinearChange) -> Result<Form> {
        self.compose_linear(&change.inverse_transpose())
    }

    /// Scales so the grevlex-leading coefficient is 1; returns `(scalar, normalized)`
    /// with `self = scalar * normalized`.
    pub fn normalized(&self) -> (Scalar, Form) {
        match self.leading_term() {
            None => (self.field().one(), self.clone()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.inv().expect("nonzero");
                (c, self.scale(&inv))
            }
        }
    }

    /// Over the rationals: integer coefficients with gcd 1 and positive leading
    /// coefficient. Over a prime field: monic. Returns `(unit, primitive)`.
    pub fn primitive(&self) -> (Scalar, Form) {
        let (unit, poly) = self.poly.primitive_part();
        (unit, Form { side: self.side, degree: self.degree, poly })
    }

    /// Embeds into a ring with `new_n` variables, sending variable `i` to `map[i]`.
    pub fn rename_vars(&self, map: &[usize], new_n: usize) -> Form {
        Form { side: self.side, degree: self.degree, poly: self.poly.rename_vars(map, new_n) }
    }

    /// Reinterprets the same coefficients on the other side of the pairing.
    pub fn with_side(&self, side: Side) -> Form {
        Form { side, degree: self.degree, poly: self.poly.clone() }
    }

    /// Maps every coefficient into another field (rationals to a prime field).
    pub fn to_field(&self, field: Field) -> Result<Form> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in self.poly.terms() {
            let v = match c {
                Scalar::Rational(q) => field.from_rational(q)?,
                Scalar::Prime { .. } if c.field() == field => c.clone(),
                Scalar::Prime { .. } => return Err(Error::FieldMismatch),
            };
            terms.push((m.clone(), v));
        }
        Ok(Form { side: self.side, degree: self.degree, poly: Poly::from_terms(self.n(), field, terms) })
    }
}

/// The polar pairing: `op ∘ target`, differentiating `target` by `op`.
///
/// `op` and `target` must live on opposite sides. The result lives on the
/// side of `target` and has degree `deg target - deg op` (zero if negative).
pub fn polar_apply(op: &Form, target: &Form) -> Result<Form> {
    if op.side() == target.side() {
        return Err(Error::SideMismatch { expected: target.side().dual(), found: op.side() });
    }
    if op.n() != target.n() {
        return Err(Error::VariableCountMismatch { left: op.n(), right: target.n() });
    }
    if op.field() != target.field() {
        return Err(Error::FieldMismatch);
    }
    let field = target.field();
    let n = target.n();
    if op.degree() > target.degree() {
        return Ok(Form::zero(n, target.side(), 0, field));
    }
    let degree = target.degree() - op.degree();
    let mut out = Poly::zero(n, field);
    for (a, ca) in op.poly().terms() {
        for (b, cb) in target.poly().terms() {
            if let Some(rest) = b.div(a) {
                let w = falling_weight(b, a);
                out.add_term(rest, &(&(ca * cb) * &field.from_bigint(&w)));
            }
        }
    }
    Ok(Form { side: target.side(), degree, poly: out })
}

/// `F ∘ f` for `F` in D acting on `f` in S; the same contraction with roles named
/// from the S side.
pub fn apply_dual(op: &Form, target: &Form) -> Result<Form> {
    polar_apply(op, target)
}

/// `prod_i b_i! / (b_i - a_i)!`
pub(crate) fn falling_weight(b: &Monomial, a: &Monomial) -> BigInt {
    let mut w = BigInt::one();
    for (&bi, &ai) in b.exponents().iter().zip(a.exponents()) {
        for k in 0..ai {
            w *= BigInt::from(bi - k);
        }
    }
    w
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::print_form(self))
    }
}
