//! Exact factorization of homogeneous forms over the rationals or a prime field.
//!
//! Squarefree pieces come from Yun's algorithm. Each piece is factored into
//! irreducibles: binary forms through univariate factorization (Zassenhaus over
//! the rationals, Cantor–Zassenhaus over `F_p`), forms in three or more
//! variables through Hensel lifting from a random line.

mod multivariate;
mod squarefree;
mod upoly;
mod zassenhaus;
mod zp;

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apolarity::essential_space;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::monomial::Monomial;
use crate::options::Options;
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// An irreducible primitive factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub form: Form,
    pub multiplicity: u32,
    /// Essential variables of `form`, in the dual ambient of degree 1.
    pub essential: Subspace,
}

/// `unit * prod factor^multiplicity`, factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub unit: Scalar,
    pub factors: Vec<Factor>,
}

impl FactorList {
    /// Multiplies everything back out.
    pub fn expand(&self) -> Result<Form> {
        let mut it = self.factors.iter();
        let first = match it.next() {
            None => return Err(Error::ZeroForm),
            Some(f) => f.form.pow(f.multiplicity),
        };
        let mut acc = first;
        for f in it {
            acc = acc.mul(&f.form.pow(f.multiplicity))?;
        }
        Ok(acc.scale(&self.unit))
    }

    /// Number of distinct irreducible factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when some factor appears with multiplicity at least 2.
    pub fn has_repeated_factor(&self) -> bool {
        self.factors.iter().any(|f| f.multiplicity >= 2)
    }

    /// Degrees of the factors, repeated by multiplicity, sorted.
    pub fn degree_multiset(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat(f.form.degree()).take(f.multiplicity as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Irreducible factors of a univariate polynomial (not necessarily homogeneous).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFactors {
    pub unit: Scalar,
    /// Primitive factors with multiplicities, ascending by degree.
    pub factors: Vec<(Poly, u32)>,
}

impl UnivariateFactors {
    pub fn expand(&self) -> Poly {
        let field = self.unit.field();
        self.factors
            .iter()
            .fold(Poly::constant(1, self.unit.clone()), |acc, (p, m)| acc.mul(&p.pow(*m)))
            .scale(&field.one())
    }
}

/// Yun decomposition `F = c * prod P_i^i`: squarefree, pairwise coprime pieces,
/// one per multiplicity, each primitive.
pub fn squarefree_decomposition(f: &Form) -> Result<Vec<(Form, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    check_characteristic(f.field(), f.n(), f.degree())?;
    let (_, pieces) = squarefree::squarefree_pieces(f.poly());
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, i) in pieces {
        match merged.iter_mut().find(|(_, j)| *j == i) {
            Some(entry) => entry.0 = entry.0.mul(&p),
            None => merged.push((p, i)),
        }
    }
    merged.sort_by_key(|(_, i)| *i);
    merged
        .into_iter()
        .map(|(p, i)| Ok((Form::new(f.side(), p.primitive_part().1)?, i)))
        .collect()
}

/// Irreducible factorization of a homogeneous form, verified by expansion.
pub fn factor_form(f: &Form, opts: &Options) -> Result<FactorList> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let present = f.variables().len();
    if present > opts.max_factor_vars {
        return Err(Error::GuardExceeded {
            what: "factor variables".into(),
            value: present,
            limit: opts.max_factor_vars,
        });
    }
    if f.degree() > opts.max_factor_degree {
        return Err(Error::GuardExceeded {
            what: "factor degree".into(),
            value: f.degree() as usize,
            limit: opts.max_factor_degree as usize,
        });
    }
    check_characteristic(f.field(), f.n(), f.degree())?;
    let (unit, factors) = factor_homogeneous_poly(f.poly(), opts)?;
    let factors = factors
        .into_iter()
        .map(|(p, m)| {
            let form = Form::new(f.side(), p)?;
            let essential = essential_space(&form);
            Ok(Factor { form, multiplicity: m, essential })
        })
        .collect::<Result<Vec<_>>>()?;
    let list = FactorList { unit, factors };
    if list.expand()? != *f {
        return Err(Error::InternalInconsistency("factor expansion differs from input".into()));
    }
    Ok(list)
}

/// Irreducible factorization of a polynomial in one variable.
pub fn factor_univariate(f: &Poly, opts: &Options) -> Result<UnivariateFactors> {
    if f.nvars() != 1 {
        return Err(Error::VariableCountMismatch { left: f.nvars(), right: 1 });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let field = f.field();
    let d = f.total_degree().unwrap_or(0);
    check_characteristic(field, 1, d)?;
    // Homogenize as a binary form in (t, y) and factor that.
    let hom = Poly::from_terms(
        2,
        field,
        f.terms().map(|(m, c)| (Monomial::new(vec![d - m.exp(0), m.exp(0)]), c.clone())),
    );
    let (unit, factors) = factor_homogeneous_poly(&hom, opts)?;
    let mut out: Vec<(Poly, u32)> = factors
        .into_iter()
        .filter(|(p, _)| p.degree_in(1) > 0)
        .map(|(p, m)| {
            let q = Poly::from_terms(1, field, p.terms().map(|(e, c)| (Monomial::new(vec![e.exp(1)]), c.clone())));
            (q, m)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_degree().cmp(&b.0.total_degree()).then_with(|| canonical_order(&a.0, &b.0)));
    let prod = out.iter().fold(Poly::one(1, field), |acc, (p, m)| acc.mul(&p.pow(*m)));
    let unit = if prod.is_zero() { unit } else { &f.leading_coefficient() / &prod.leading_coefficient() };
    let result = UnivariateFactors { unit, factors: out };
    if result.expand() != *f {
        return Err(Error::InternalInconsistency("univariate factor expansion differs from input".into()));
    }
    Ok(result)
}

fn check_characteristic(field: Field, n: usize, degree: u32) -> Result<()> {
    if let Field::Prime(p) = field {
        if p <= degree as u64 {
            return Err(Error::CharacteristicGuard { p, n, degree });
        }
    }
    Ok(())
}

/// Factors a nonzero homogeneous polynomial; factors are primitive and sorted canonically.
fn factor_homogeneous_poly(f: &Poly, opts: &Options) -> Result<(Scalar, Vec<(Poly, u32)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (_, pieces) = squarefree::squarefree_pieces(f);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (piece, m) in pieces {
        for g in multivariate::factor_squarefree_homogeneous(&piece, &mut rng)? {
            let g = g.primitive_part().1;
            if g.is_constant() {
                continue;
            }
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += m,
                None => out.push((g, m)),
            }
        }
    }
    out.sort_by(|a, b| canonical_order(&a.0, &b.0));
    let n = f.nvars();
    let field = f.field();
    let prod = out.iter().fold(Poly::one(n, field), |acc, (p, m)| acc.mul(&p.pow(*m)));
    let unit = &f.leading_coefficient() / &prod.leading_coefficient();
    if prod.scale(&unit) != *f {
        return Err(Error::InternalInconsistency("factor expansion differs from input".into()));
    }
    Ok((unit, out))
}

/// Ascending by leading monomial, then by the full term list from the top.
fn canonical_order(a: &Poly, b: &Poly) -> Ordering {
    let la = a.leading_term().map(|(m, _)| m.clone());
    let lb = b.leading_term().map(|(m, _)| m.clone());
    la.cmp(&lb).then_with(|| {
        for ((ma, ca), (mb, cb)) in a.terms().rev().zip(b.terms().rev()) {
            let o = ma.cmp(mb).then_with(|| scalar_order(ca, cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    })
}

fn scalar_order(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
        (Scalar::Prime { value: x, .. }, Scalar::Prime { value: y, .. }) => x.cmp(y),
        _ => Ordering::Equal,
    }
}
