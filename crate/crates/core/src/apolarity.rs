//! Jacobian and apolar ideals in a fixed degree, and the objects built from them.
//!
//! For a form `f` of degree `d + 1` in `n` variables, the Jacobian ideal
//! `J_f` is generated by the partials. When `f` is smooth, `S / J_f` is
//! Gorenstein with socle in degree `N = n(d - 1)`, and the associated form
//! `A(f)` spans the one-dimensional space of `F` in `D_N` killed by `(J_f)_N`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::form::{falling_weight, Form, Side};
use crate::linalg::Matrix;
use crate::monomial::{count_of_degree, Monomial};
use crate::options::Options;
use crate::scalar::Scalar;
use crate::subspace::{Ambient, Subspace};

/// The partials of `f` together with their span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientPoint {
    pub partials: Vec<Form>,
    pub span: Subspace,
}

impl GradientPoint {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

fn check_nonzero(f: &Form) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroForm)
    } else {
        Ok(())
    }
}

fn guard(what: &str, value: usize, opts: &Options) -> Result<()> {
    if value > opts.max_ambient_dim {
        return Err(Error::GuardExceeded { what: what.to_string(), value, limit: opts.max_ambient_dim });
    }
    Ok(())
}

/// Socle degree `n(d - 1)` for a form of degree `d + 1`.
pub fn socle_degree(n: usize, degree: u32) -> u32 {
    (n as u32) * degree.saturating_sub(2)
}

/// The degree-`e` piece of the ideal generated by `gens`, spanned by all
/// monomial multiples `m * g`.
pub fn graded_ideal_piece(gens: &[Form], e: u32) -> Result<Subspace> {
    let first = gens.first().ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    let (n, side, field) = (first.n(), first.side(), first.field());
    let ambient = Ambient::new(side, n, e);
    let index = ambient.index_map();
    let mut rows = Vec::new();
    for g in gens {
        if g.n() != n {
            return Err(Error::VariableCountMismatch { left: n, right: g.n() });
        }
        if g.side() != side {
            return Err(Error::SideMismatch { expected: side, found: g.side() });
        }
        if g.is_zero() || g.degree() > e {
            continue;
        }
        for m in Monomial::all_of_degree(n, e - g.degree()) {
            let mut row = vec![field.zero(); ambient.dim()];
            for (gm, c) in g.terms() {
                row[index[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let mat = Matrix::from_rows(field, ambient.dim(), rows)?;
    Subspace::from_rows(ambient, &mat)
}

pub fn gradient_point(f: &Form) -> Result<GradientPoint> {
    check_nonzero(f)?;
    let partials = f.gradient();
    let ambient = Ambient::new(f.side(), f.n(), f.degree().saturating_sub(1));
    let span = Subspace::span(ambient, f.field(), &partials)?;
    Ok(GradientPoint { partials, span })
}

/// True iff the partials of `f` are linearly independent.
pub fn is_concise(f: &Form) -> Result<(bool, GradientPoint)> {
    let gp = gradient_point(f)?;
    Ok((gp.dim() == f.n(), gp))
}

/// A coordinate point `e_i` where every partial of `f` vanishes, if any.
///
/// The partial `∂f/∂x_k` at `e_i` is a multiple of the coefficient of
/// `x_i^d x_k` in `f`, so `e_i` is singular exactly when `f` has no term of
/// that shape.
pub fn singular_coordinate_point(f: &Form) -> Option<usize> {
    let d = f.degree().checked_sub(1)?;
    if d == 0 {
        return None;
    }
    let n = f.n();
    (0..n).find(|&i| !f.terms().any(|(m, _)| m.exp(i) >= d))
}

/// Step-1 smoothness test: `(J_f)_{N+1}` is all of `S_{N+1}`.
pub fn is_smooth(f: &Form, opts: &Options) -> Result<bool> {
    check_nonzero(f)?;
    let n = f.n();
    let degree = f.degree();
    f.field().check_guard(n, degree)?;
    if degree < 2 {
        // Linear forms define smooth hyperplanes; constants are not forms of interest.
        return Ok(degree == 1);
    }
    if singular_coordinate_point(f).is_some() {
        return Ok(false);
    }
    let top = socle_degree(n, degree) + 1;
    guard("dim D_N", count_of_degree(n, top - 1), opts)?;
    guard("dim S_(N+1)", count_of_degree(n, top), opts)?;
    let ambient = Ambient::new(f.side(), n, top);
    let index = ambient.index_map();
    let field = f.field();
    let mut rows = Vec::new();
    for g in f.gradient() {
        if g.is_zero() {
            continue;
        }
        for m in Monomial::all_of_degree(n, top - g.degree()) {
            let mut row = vec![field.zero(); ambient.dim()];
            for (gm, c) in g.terms() {
                row[index[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let mat = Matrix::from_rows(field, ambient.dim(), rows)?;
    Ok(mat.rank() == ambient.dim())
}

/// The matrix of `F ↦ (∂_i f ∘ F)_i` from `D_N` to `⊕_i D_{N-d}`.
fn annihilation_system(f: &Form, top: u32) -> (Matrix, Ambient) {
    let n = f.n();
    let field = f.field();
    let target = Ambient::new(f.side().dual(), n, top);
    let index = target.index_map();
    let mut rows = Vec::new();
    for g in f.gradient() {
        if g.is_zero() {
            continue;
        }
        for c in Monomial::all_of_degree(n, top - g.degree()) {
            let mut row = vec![field.zero(); target.dim()];
            for (a, coef) in g.terms() {
                let b = a.mul(&c);
                let w = field.from_bigint(&falling_weight(&b, a));
                row[index[&b]] = coef * &w;
            }
            rows.push(row);
        }
    }
    (Matrix::from_rows(field, target.dim(), rows).expect("rectangular"), target)
}

/// The associated form `A(f)` in `D_N`, scaled so its grevlex-leading coefficient is 1.
pub fn associated_form(f: &Form, opts: &Options) -> Result<Form> {
    if !is_smooth(f, opts)? {
        return Err(Error::NotSmooth);
    }
    associated_form_unchecked(f, opts)
}

/// As [`associated_form`], without the smoothness gate. Fails with
/// `KernelDimension` if the annihilated space is not a line.
pub fn associated_form_unchecked(f: &Form, opts: &Options) -> Result<Form> {
    check_nonzero(f)?;
    let n = f.n();
    let top = socle_degree(n, f.degree());
    guard("dim D_N", count_of_degree(n, top), opts)?;
    let (mat, target) = annihilation_system(f, top);
    let kernel = Subspace::kernel_of(target, &mat)?;
    if kernel.dim() != 1 {
        return Err(Error::KernelDimension(kernel.dim()));
    }
    // The RREF row already has leading coefficient 1 in grevlex-descending order.
    Ok(kernel.basis_forms().remove(0))
}

/// Space of essential variables: all order-`(deg F - 1)` partials of `F`.
pub fn essential_space(form: &Form) -> Subspace {
    let n = form.n();
    let field = form.field();
    let ambient = Ambient::new(form.side(), n, 1);
    if form.is_zero() || form.degree() == 0 {
        return Subspace::zero(ambient, field);
    }
    let k = form.degree() - 1;
    let mut rows: HashMap<Monomial, Vec<Scalar>> = HashMap::new();
    for (b, c) in form.terms() {
        for i in 0..n {
            if b.exp(i) == 0 {
                continue;
            }
            let mut a = b.clone();
            a.exps_mut()[i] -= 1;
            debug_assert_eq!(a.degree(), k);
            let w = field.from_bigint(&falling_weight(b, &a));
            let row = rows.entry(a).or_insert_with(|| vec![field.zero(); n]);
            row[i] += &(c * &w);
        }
    }
    let mat = Matrix::from_rows(field, n, rows.into_values().collect()).expect("rectangular");
    Subspace::from_rows(ambient, &mat).expect("width n")
}

/// The catalecticant `D_e → S_{deg f - e}`, `F ↦ F ∘ f`, as a matrix whose
/// columns are indexed by the monomials of `D_e`.
fn catalecticant(f: &Form, e: u32) -> (Matrix, Ambient) {
    let n = f.n();
    let field = f.field();
    let source = Ambient::new(f.side().dual(), n, e);
    let mons = source.basis();
    let out_deg = f.degree() - e;
    let out_index: HashMap<Monomial, usize> =
        Monomial::all_of_degree(n, out_deg).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(out_index.len(), mons.len(), field);
    for (j, b) in mons.iter().enumerate() {
        for (a, c) in f.terms() {
            if let Some(rest) = a.div(b) {
                let w = field.from_bigint(&falling_weight(a, b));
                mat.set(out_index[&rest], j, c * &w);
            }
        }
    }
    (mat, source)
}

/// Degree-`e` piece of the apolar ideal `f^⊥ = {F : F ∘ f = 0}`.
pub fn apolar_graded_piece(f: &Form, e: u32) -> Result<Subspace> {
    check_nonzero(f)?;
    let ambient = Ambient::new(f.side().dual(), f.n(), e);
    if e > f.degree() {
        return Ok(Subspace::full(ambient, f.field()));
    }
    let (mat, source) = catalecticant(f, e);
    Subspace::kernel_of(source, &mat)
}

/// True iff `f^⊥` needs a minimal generator in degree `deg f`, i.e.
/// `D_1 · (f^⊥)_d` is strictly smaller than `(f^⊥)_{d+1}`.
pub fn has_topdegree_minimal_generator(f: &Form, opts: &Options) -> Result<bool> {
    check_nonzero(f)?;
    let n = f.n();
    let top = f.degree();
    if top == 0 {
        return Ok(false);
    }
    guard("dim D_(d+1)", count_of_degree(n, top), opts)?;
    let lower = apolar_graded_piece(f, top - 1)?;
    let upper = apolar_graded_piece(f, top)?;
    let ambient = upper.ambient();
    let index = ambient.index_map();
    let field = f.field();
    let mut rows = Vec::new();
    for g in lower.basis_forms() {
        for i in 0..n {
            let mut row = vec![field.zero(); ambient.dim()];
            for (m, c) in g.terms() {
                let mut mm = m.clone();
                mm.exps_mut()[i] += 1;
                row[index[&mm]] = c.clone();
            }
            rows.push(row);
        }
    }
    let products = Matrix::from_rows(field, ambient.dim(), rows)?;
    Ok(products.rank() < upper.dim())
}

/// `W = {g in S_{deg f} : ∂g/∂x_i ∈ ⟨∇f⟩ for all i}`.
pub fn gradient_fiber(f: &Form, opts: &Options) -> Result<Subspace> {
    check_nonzero(f)?;
    let n = f.n();
    let degree = f.degree();
    let field = f.field();
    let ambient = Ambient::new(f.side(), n, degree);
    guard("dim S_(d+1)", ambient.dim(), opts)?;
    if degree == 0 {
        return Ok(Subspace::full(ambient, field));
    }
    let gp = gradient_point(f)?;
    let lower = gp.span.ambient();
    let lower_index = lower.index_map();
    let covectors = gp.span.complement();
    let cov = covectors.basis_matrix();
    let mons = ambient.basis();
    let mut rows = Vec::with_capacity(n * cov.rows());
    for r in 0..cov.rows() {
        let c = cov.row(r);
        for i in 0..n {
            let mut row = vec![field.zero(); mons.len()];
            let mut any = false;
            for (j, a) in mons.iter().enumerate() {
                let ai = a.exp(i);
                if ai == 0 {
                    continue;
                }
                let mut lower_m = a.clone();
                lower_m.exps_mut()[i] -= 1;
                let v = &c[lower_index[&lower_m]];
                if !v.is_zero() {
                    row[j] = v * &field.from_i64(ai as i64);
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let mat = Matrix::from_rows(field, mons.len(), rows)?;
    Subspace::kernel_of(ambient, &mat)
}

/// True iff `f` is on the S side, which every operation here assumes for its input form.
pub fn require_s_side(f: &Form) -> Result<()> {
    if f.side() != Side::S {
        return Err(Error::SideMismatch { expected: Side::S, found: f.side() });
    }
    Ok(())
}

/// Number of monomials of the socle piece for a form of this shape.
pub fn socle_dimension(n: usize, degree: u32) -> usize {
    count_of_degree(n, socle_degree(n, degree))
}

/// Field-independent convenience: the Hilbert function of `S/(x_1^d, .., x_n^d)`
/// in degree `e`, i.e. the coefficient of `T^e` in `((1 - T^d)/(1 - T))^n`.
pub fn complete_intersection_hilbert(n: usize, d: u32, e: u32) -> usize {
    // Number of exponent vectors with sum e and each entry < d.
    let mut counts = vec![0usize; e as usize + 1];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0usize; e as usize + 1];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for k in 0..d as usize {
                if s + k <= e as usize {
                    next[s + k] += c;
                }
            }
        }
        counts = next;
    }
    counts[e as usize]
}
