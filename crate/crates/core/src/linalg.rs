//! Dense exact matrices and reduced row echelon forms.
//!
//! Over the rationals, elimination runs fraction-free on integer rows (each
//! row scaled to a primitive integer vector) and converts back to rationals
//! only at the end, which keeps coefficient growth in check. Over a prime
//! field rows are plain `u64` residues.
//!
//! Rational kernels are computed modulo several primes first and lifted by
//! Chinese remaindering and rational reconstruction; a lifted basis is only
//! accepted after an exact check, with plain elimination as the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{inv_mod, is_prime, mul_mod, reduce_bigint, Field, Scalar};

/// Row-update work above which elimination steps run in parallel.
const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if r.iter().any(|v| v.field() != field) {
                return Err(Error::FieldMismatch);
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, field, data })
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns, vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data })
    }

    pub fn rref(&self) -> Rref {
        let (rows, pivots) = rref_rows(self.field, self.cols, self.to_rows());
        let rank = pivots.len();
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for r in rows {
            data.extend(r);
        }
        data.resize(self.rows * self.cols, self.field.zero());
        Rref { matrix: Matrix { rows: self.rows, cols: self.cols, field: self.field, data }, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        if let Some(r) = self.modular_rank_if_full() {
            return r;
        }
        if let Some(k) = self.multimodular_kernel() {
            return self.cols - k.len();
        }
        rref_rows(self.field, self.cols, self.to_rows()).1.len()
    }

    /// Rank modulo a large prime, returned only when it already equals
    /// `min(rows, cols)`: the rank over the rationals can only be larger.
    fn modular_rank_if_full(&self) -> Option<usize> {
        if self.field != Field::Rationals {
            return None;
        }
        let full = self.rows.min(self.cols);
        let r = rank_mod_p(self, CERT_PRIME)?;
        (r == full).then_some(r)
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let (rows, pivots) = rref_rows(self.field, self.cols, self.to_rows());
        let mut data = Vec::with_capacity(pivots.len() * self.cols);
        for r in rows.into_iter().take(pivots.len()) {
            data.extend(r);
        }
        Matrix { rows: pivots.len(), cols: self.cols, field: self.field, data }
    }

    /// RREF basis of the right nullspace, as rows.
    pub fn kernel(&self) -> Matrix {
        if let Some(basis) = self.multimodular_kernel() {
            let m = Matrix::from_rows(self.field, self.cols, basis).expect("rectangular");
            return m.row_space();
        }
        let (rows, pivots) = rref_rows(self.field, self.cols, self.to_rows());
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][fc];
            }
            basis.push(v);
        }
        // Rows indexed by free columns; reduce to the canonical RREF.
        let m = Matrix::from_rows(self.field, self.cols, basis).expect("rectangular");
        m.row_space()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] * &inv;
                for j in c..n {
                    if !a[c][j].is_zero() {
                        let t = &factor * &a[c][j];
                        a[r][j] -= &t;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        for (i, r) in rows.iter_mut().enumerate() {
            for j in 0..n {
                r.push(if i == j { self.field.one() } else { self.field.zero() });
            }
        }
        let (red, pivots) = rref_rows(self.field, 2 * n, rows);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let out: Vec<Vec<Scalar>> = red.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(self.field, n, out)
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(field: Field, blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(Matrix::rows).sum();
        let mut m = Matrix::zeros(n, n, field);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows();
        }
        m
    }
}

impl Matrix {
    /// Kernel basis of a rational matrix lifted from its images modulo primes.
    ///
    /// The nullity modulo any prime is at least the rational nullity, so an
    /// exactly verified set of that many independent rational kernel vectors
    /// spans the kernel. `None` if reconstruction does not settle.
    fn multimodular_kernel(&self) -> Option<Vec<Vec<Scalar>>> {
        if self.field != Field::Rationals || self.rows == 0 {
            return None;
        }
        let ints: Vec<Vec<BigInt>> = (0..self.rows).map(|i| primitive_row(self.row(i))).collect();
        let mut modulus = BigInt::one();
        let mut residues: Vec<Vec<BigInt>> = Vec::new();
        let mut shape: Option<Vec<usize>> = None;
        let mut previous: Option<Vec<Vec<BigRational>>> = None;
        let mut prime = MODULAR_PRIME_START;
        for _ in 0..MAX_KERNEL_PRIMES {
            prime = previous_prime(prime);
            let mut rows: Vec<Vec<u64>> =
                ints.iter().map(|r| r.iter().map(|v| reduce_bigint(v, prime)).collect()).collect();
            let pivots = eliminate_mod_p(&mut rows, self.cols, prime);
            match &shape {
                // More pivots, or earlier ones at equal rank, mean the old primes were unlucky.
                Some(old) if old.len() > pivots.len() || (old.len() == pivots.len() && *old <= pivots) => {
                    if *old != pivots {
                        continue;
                    }
                }
                _ => {
                    shape = Some(pivots.clone());
                    modulus = BigInt::one();
                    residues.clear();
                    previous = None;
                }
            }
            let kernel = kernel_from_rref_mod_p(&rows, &pivots, self.cols, prime);
            if kernel.is_empty() {
                return Some(Vec::new());
            }
            let pb = BigInt::from(prime);
            if residues.is_empty() {
                residues = kernel.iter().flatten().map(|&v| BigInt::from(v)).collect::<Vec<_>>().chunks(self.cols).map(|c| c.to_vec()).collect();
            } else {
                let inv = mod_inverse(&(&modulus % &pb), &pb)?;
                for (acc_row, new_row) in residues.iter_mut().zip(&kernel) {
                    for (acc, &v) in acc_row.iter_mut().zip(new_row) {
                        // acc + modulus * ((v - acc) * modulus^{-1} mod p)
                        let diff = (BigInt::from(v) - &*acc).mod_floor(&pb);
                        let t = (diff * &inv).mod_floor(&pb);
                        *acc += &modulus * t;
                    }
                }
            }
            modulus *= &pb;
            let Some(candidate) = residues
                .iter()
                .map(|row| row.iter().map(|a| rational_reconstruction(a, &modulus)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if previous.as_ref() == Some(&candidate) && in_kernel(&ints, &candidate) {
                return Some(
                    candidate.into_iter().map(|r| r.into_iter().map(Scalar::Rational).collect()).collect(),
                );
            }
            previous = Some(candidate);
        }
        None
    }
}

/// Kernel vectors normalized to 1 on one free column and 0 on the others.
fn kernel_from_rref_mod_p(rows: &[Vec<u64>], pivots: &[usize], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let x = rows[i][fc];
                v[pc] = if x == 0 { 0 } else { p - x };
            }
            v
        })
        .collect()
}

fn in_kernel(ints: &[Vec<BigInt>], vectors: &[Vec<BigRational>]) -> bool {
    vectors.iter().all(|v| {
        let den = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let w: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        ints.iter().all(|row| {
            row.iter().zip(&w).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum::<BigInt>().is_zero()
        })
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `r / s ≡ a (mod m)` with `|r|, |s| <= sqrt(m / 2)`, if it exists.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || num_traits::Signed::abs(&s1) > bound {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn previous_prime(mut p: u64) -> u64 {
    loop {
        p -= 1;
        if is_prime(p) {
            return p;
        }
    }
}

const MODULAR_PRIME_START: u64 = 1 << 62;
const MAX_KERNEL_PRIMES: usize = 400;

/// Prime used for modular rank certificates.
const CERT_PRIME: u64 = (1 << 61) - 1;

/// Rank of the matrix reduced modulo `p`, or `None` if some denominator is divisible by `p`.
fn rank_mod_p(m: &Matrix, p: u64) -> Option<usize> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut r = Vec::with_capacity(m.cols);
        for v in m.row(i) {
            let q = v.as_rational()?;
            let d = reduce_bigint(q.denom(), p);
            let inv = inv_mod(d, p)?;
            r.push(mul_mod(reduce_bigint(q.numer(), p), inv, p));
        }
        rows.push(r);
    }
    Some(eliminate_mod_p(&mut rows, m.cols, p).len())
}

/// Gauss–Jordan over `F_p` in place; returns pivot columns. Pivot rows end up first.
fn eliminate_mod_p(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p).expect("nonzero pivot");
        for v in rows[r][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[r].clone();
        let nz: Vec<usize> = (c..cols).filter(|&j| pivot_row[j] != 0).collect();
        let update = |(i, row): (usize, &mut Vec<u64>)| {
            if i == r || row[c] == 0 {
                return;
            }
            let a = row[c];
            for &j in &nz {
                let t = mul_mod(a, pivot_row[j], p);
                row[j] = if row[j] >= t { row[j] - t } else { row[j] + p - t };
            }
        };
        if rows.len() * nz.len() > PAR_THRESHOLD {
            rows.par_iter_mut().enumerate().for_each(update);
        } else {
            rows.iter_mut().enumerate().for_each(update);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Canonical RREF of a list of rows. Returns all rows (pivot rows first, then
/// zero rows) and the pivot columns.
pub(crate) fn rref_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    match field {
        Field::Prime(p) => {
            let mut raw: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| match v {
                            Scalar::Prime { value, .. } => *value,
                            Scalar::Rational(_) => panic!("scalar field mismatch"),
                        })
                        .collect()
                })
                .collect();
            let pivots = eliminate_mod_p(&mut raw, cols, p);
            let out = raw
                .into_iter()
                .map(|r| r.into_iter().map(|v| Scalar::Prime { value: v, modulus: p }).collect())
                .collect();
            (out, pivots)
        }
        Field::Rationals => rref_rational(cols, rows),
    }
}

fn primitive_row(row: &[Scalar]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for v in row {
        if let Scalar::Rational(q) = v {
            if !q.is_zero() {
                l = l.lcm(q.denom());
            }
        }
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| {
            let q = v.as_rational().expect("rational entry");
            if q.is_zero() {
                BigInt::zero()
            } else {
                q.numer() * (&l / q.denom())
            }
        })
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

fn rref_rational(cols: usize, rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut ints: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
    let nrows = ints.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| !ints[k][c].is_zero()) else { continue };
        ints.swap(r, k);
        let pivot_row = ints[r].clone();
        let p = pivot_row[c].clone();
        let nz: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let update = |(i, row): (usize, &mut Vec<BigInt>)| {
            if i == r || row[c].is_zero() {
                return;
            }
            let g = p.gcd(&row[c]);
            let pm = &p / &g;
            let am = &row[c] / &g;
            if !pm.is_one() {
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v *= &pm;
                    }
                }
            }
            for &j in &nz {
                let t = &am * &pivot_row[j];
                row[j] -= t;
            }
            remove_content(row);
        };
        if nrows * nz.len() > PAR_THRESHOLD {
            ints.par_iter_mut().enumerate().for_each(update);
        } else {
            ints.iter_mut().enumerate().for_each(update);
        }
        pivots.push(c);
        r += 1;
    }
    let out = ints
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if i < pivots.len() {
                let p = row[pivots[i]].clone();
                row.into_iter()
                    .map(|v| {
                        if v.is_zero() {
                            Field::Rationals.zero()
                        } else {
                            Scalar::Rational(BigRational::new(v, p.clone()))
                        }
                    })
                    .collect()
            } else {
                vec![Field::Rationals.zero(); cols]
            }
        })
        .collect();
    (out, pivots)
}

/// An invertible change of basis of `V`.
///
/// Column `j` holds the old-coordinate expression of the new basis vector
/// `b_j = sum_i M[i][j] x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearChange {
    matrix: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<LinearChange> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", matrix.rows(), matrix.cols())));
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(n: usize, field: Field) -> LinearChange {
        LinearChange { matrix: Matrix::identity(n, field) }
    }

    /// Basis vectors given as coefficient lists in the old coordinates.
    pub fn from_columns(columns: &[Vec<Scalar>]) -> Result<LinearChange> {
        let n = columns.len();
        let field = columns.first().and_then(|c| c.first()).map_or(Field::Rationals, Scalar::field);
        let m = Matrix::from_rows(field, n, columns.to_vec())?;
        LinearChange::new(m.transpose())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Old-coordinate coefficients of the `j`-th new basis vector.
    pub fn basis_vector(&self, j: usize) -> Vec<Scalar> {
        self.matrix.column(j)
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange { matrix: self.matrix.inverse().expect("invertible by construction") }
    }

    pub fn inverse_transpose(&self) -> Matrix {
        self.matrix.inverse().expect("invertible by construction").transpose()
    }

    /// The change that first applies `self` and then `inner` inside the new
    /// coordinates: its basis vectors are `self.matrix * inner.matrix`.
    pub fn then(&self, inner: &LinearChange) -> LinearChange {
        LinearChange { matrix: self.matrix.mul(&inner.matrix).expect("same size") }
    }

    /// Divides every basis vector by its first nonzero coordinate.
    pub fn normalized_columns(&self) -> LinearChange {
        let n = self.n();
        let mut m = self.matrix.clone();
        for j in 0..n {
            let lead = (0..n).map(|i| m.get(i, j).clone()).find(|v| !v.is_zero()).expect("nonzero column");
            let inv = lead.inv().expect("nonzero");
            for i in 0..n {
                let v = m.get(i, j) * &inv;
                m.set(i, j, v);
            }
        }
        LinearChange { matrix: m }
    }
}
