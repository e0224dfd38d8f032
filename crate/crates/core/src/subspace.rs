//! Linear subspaces of a graded piece, stored by a canonical RREF basis.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::form::{Form, Side};
use crate::linalg::Matrix;
use crate::monomial::{count_of_degree, Monomial};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// A graded piece `S_e` or `D_e` with its grevlex-descending monomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub side: Side,
    pub n: usize,
    pub degree: u32,
}

impl Ambient {
    pub fn new(side: Side, n: usize, degree: u32) -> Ambient {
        Ambient { side, n, degree }
    }

    pub fn dim(&self) -> usize {
        count_of_degree(self.n, self.degree)
    }

    pub fn basis(&self) -> Vec<Monomial> {
        Monomial::all_of_degree(self.n, self.degree)
    }

    pub fn index_map(&self) -> HashMap<Monomial, usize> {
        self.basis().into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    pub fn dual(&self) -> Ambient {
        Ambient { side: self.side.dual(), ..*self }
    }

    /// Coordinates of `f` in the monomial basis.
    pub fn coordinates(&self, f: &Form, index: &HashMap<Monomial, usize>) -> Vec<Scalar> {
        let mut v = vec![f.field().zero(); self.dim()];
        for (m, c) in f.terms() {
            v[index[m]] = c.clone();
        }
        v
    }

    /// The form with the given coordinates.
    pub fn form(&self, field: Field, coords: &[Scalar], basis: &[Monomial]) -> Form {
        let poly = Poly::from_terms(
            self.n,
            field,
            basis.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        );
        Form::with_degree(self.side, self.degree, poly).expect("homogeneous by construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: Ambient,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: Ambient, field: Field) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(0, ambient.dim(), field) }
    }

    pub fn full(ambient: Ambient, field: Field) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(ambient.dim(), field) }
    }

    /// The span of the rows of `rows` (coordinates in the ambient's basis).
    pub fn from_rows(ambient: Ambient, rows: &Matrix) -> Result<Subspace> {
        if rows.cols() != ambient.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for an ambient of dimension {}",
                rows.cols(),
                ambient.dim()
            )));
        }
        Ok(Subspace { ambient, basis: rows.row_space() })
    }

    /// The span of a list of forms of the ambient's degree and side.
    pub fn span(ambient: Ambient, field: Field, forms: &[Form]) -> Result<Subspace> {
        let index = ambient.index_map();
        let mut rows = Vec::with_capacity(forms.len());
        for f in forms {
            if f.is_zero() {
                continue;
            }
            if f.side() != ambient.side {
                return Err(Error::SideMismatch { expected: ambient.side, found: f.side() });
            }
            if f.degree() != ambient.degree {
                return Err(Error::DegreeMismatch { left: ambient.degree, right: f.degree() });
            }
            if f.n() != ambient.n {
                return Err(Error::VariableCountMismatch { left: ambient.n, right: f.n() });
            }
            rows.push(ambient.coordinates(f, &index));
        }
        let m = Matrix::from_rows(field, ambient.dim(), rows)?;
        Subspace::from_rows(ambient, &m)
    }

    /// Right nullspace of `m`, whose columns are indexed by the ambient's basis.
    pub fn kernel_of(ambient: Ambient, m: &Matrix) -> Result<Subspace> {
        if m.cols() != ambient.dim() {
            return Err(Error::DimensionMismatch(format!("{} columns vs dimension {}", m.cols(), ambient.dim())));
        }
        Ok(Subspace { ambient, basis: m.kernel() })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// RREF basis, one row per basis vector.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_forms(&self) -> Vec<Form> {
        let mons = self.ambient.basis();
        (0..self.dim()).map(|i| self.ambient.form(self.field(), self.basis.row(i), &mons)).collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Subspace::from_rows(self.ambient, &stacked)
    }

    /// Intersection computed by duality: `A ∩ B = (A^c + B^c)^c` with `^c` the
    /// dot-product complement.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let ca = self.basis.kernel();
        let cb = other.basis.kernel();
        let stacked = ca.vstack(&cb)?;
        Ok(Subspace { ambient: self.ambient, basis: stacked.kernel() })
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let row = Matrix::from_rows(self.field(), self.ambient.dim(), vec![v.to_vec()]).expect("right length");
        self.basis.vstack(&row).expect("same width").rank() == self.dim()
    }

    pub fn contains_form(&self, f: &Form) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.side() != self.ambient.side || f.degree() != self.ambient.degree || f.n() != self.ambient.n {
            return false;
        }
        let v = self.ambient.coordinates(f, &self.ambient.index_map());
        self.contains_vector(&v)
    }

    /// Dot-product complement in the same ambient: `{v : v · w = 0 for all w}`.
    pub fn complement(&self) -> Subspace {
        Subspace { ambient: self.ambient, basis: self.basis.kernel() }
    }

    /// Annihilator under the polar pairing, living in the dual ambient.
    ///
    /// With `<x^a, z^b> = a! δ_ab`, this is `{v : <v, w> = 0 for all w}`. In
    /// degree one the weights are all 1 and this is the usual dual annihilator.
    pub fn annihilator(&self) -> Subspace {
        let field = self.field();
        let mons = self.ambient.basis();
        let weights: Vec<Scalar> = mons.iter().map(|m| field.from_bigint(&m.factorial_weight())).collect();
        let mut weighted = self.basis.clone();
        for i in 0..weighted.rows() {
            for (j, w) in weights.iter().enumerate() {
                let v = weighted.get(i, j) * w;
                weighted.set(i, j, v);
            }
        }
        Subspace { ambient: self.ambient.dual(), basis: weighted.kernel() }
    }
}
