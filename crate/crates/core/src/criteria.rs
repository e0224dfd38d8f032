//! Necessary conditions for being a direct sum, and generators of test forms.
//!
//! [`factor_criterion`] uses the factorization of `f`: a repeated factor, or a
//! factor whose gradient span is small compared to that of `f`, rules out a
//! direct sum. [`state_criterion`] only looks at which monomials occur in `f`
//! and in its partials.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::gradient_point;
use crate::error::{Error, Result};
use crate::factor::factor_form;
use crate::form::{Form, Side};
use crate::monomial::Monomial;
use crate::options::Options;
use crate::scalar::Field;

/// Outcome of a necessary-condition test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriterionResult {
    NotDirectSum,
    Inconclusive,
}

/// Which clause decided the outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionReason {
    /// Some factor appears at least twice.
    RepeatedFactor { factor: usize, multiplicity: u32 },
    /// Factor `factor` has `dim ∇g <= bound = floor((b - 1) / 2)`.
    SmallFactorGradient { factor: usize, dim: usize, bound: usize },
    /// All four state conditions hold.
    StateConditions,
    /// No clause fired.
    NoClauseFired,
    /// The test does not apply: field too small, degree too low, guard exceeded.
    NotApplicable(String),
    /// A specific state condition failed (numbered 1 to 4).
    StateConditionFailed(u8),
}

impl fmt::Display for CriterionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionReason::RepeatedFactor { factor, multiplicity } => {
                write!(f, "repeated factor #{} with multiplicity {}", factor + 1, multiplicity)
            }
            CriterionReason::SmallFactorGradient { factor, dim, bound } => {
                write!(f, "factor #{} has gradient dimension {} <= {}", factor + 1, dim, bound)
            }
            CriterionReason::StateConditions => write!(f, "state conditions 1-4 hold"),
            CriterionReason::NoClauseFired => write!(f, "no clause fired"),
            CriterionReason::NotApplicable(why) => write!(f, "not applicable: {}", why),
            CriterionReason::StateConditionFailed(k) => write!(f, "state condition {} fails", k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub result: CriterionResult,
    pub reason: CriterionReason,
}

impl CriterionVerdict {
    fn fired(reason: CriterionReason) -> Self {
        CriterionVerdict { result: CriterionResult::NotDirectSum, reason }
    }

    fn inconclusive(reason: CriterionReason) -> Self {
        CriterionVerdict { result: CriterionResult::Inconclusive, reason }
    }

    pub fn is_not_direct_sum(&self) -> bool {
        self.result == CriterionResult::NotDirectSum
    }
}

/// The set of exponent vectors occurring in a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSet {
    pub degree: u32,
    pub indices: BTreeSet<Monomial>,
}

impl StateSet {
    pub fn of(f: &Form) -> StateSet {
        StateSet { degree: f.degree(), indices: f.terms().map(|(m, _)| m.clone()).collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.indices.contains(m)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.indices.is_disjoint(&other.indices)
    }
}

/// Smallest prime for which the factor criterion is enabled: `p > 2 deg^2`.
fn factor_criterion_applies(field: Field, degree: u32) -> bool {
    match field {
        Field::Rationals => true,
        Field::Prime(p) => p > 2 * (degree as u64).pow(2),
    }
}

/// Repeated factors, or a factor `g` with `dim ∇g <= floor((b - 1) / 2)` where
/// `b = dim ∇f`, rule out a direct sum.
pub fn factor_criterion(f: &Form, opts: &Options) -> Result<CriterionVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !factor_criterion_applies(f.field(), f.degree()) {
        return Ok(CriterionVerdict::inconclusive(CriterionReason::NotApplicable(format!(
            "needs p > 2 * {}^2",
            f.degree()
        ))));
    }
    let b = gradient_point(f)?.dim();
    let list = factor_form(f, opts)?;
    if let Some((i, fa)) = list.factors.iter().enumerate().find(|(_, fa)| fa.multiplicity >= 2) {
        return Ok(CriterionVerdict::fired(CriterionReason::RepeatedFactor { factor: i, multiplicity: fa.multiplicity }));
    }
    let bound = b.saturating_sub(1) / 2;
    for (i, fa) in list.factors.iter().enumerate() {
        let dim = gradient_point(&fa.form)?.dim();
        if dim <= bound {
            return Ok(CriterionVerdict::fired(CriterionReason::SmallFactorGradient { factor: i, dim, bound }));
        }
    }
    Ok(CriterionVerdict::inconclusive(CriterionReason::NoClauseFired))
}

/// State conditions: nonempty and pairwise disjoint partial states, a state
/// recoverable from the partial states, and a connected second-partial graph.
pub fn state_criterion(f: &Form) -> CriterionVerdict {
    if f.field() == Field::Prime(2) {
        return CriterionVerdict::inconclusive(CriterionReason::NotApplicable("field has two elements".into()));
    }
    if f.degree() < 3 {
        return CriterionVerdict::inconclusive(CriterionReason::NotApplicable("degree below 3".into()));
    }
    let n = f.n();
    let partials: Vec<StateSet> = f.gradient().iter().map(StateSet::of).collect();
    // (1)
    if partials.iter().any(StateSet::is_empty) {
        return CriterionVerdict::inconclusive(CriterionReason::StateConditionFailed(1));
    }
    // (2)
    for i in 0..n {
        for j in i + 1..n {
            if !partials[i].is_disjoint(&partials[j]) {
                return CriterionVerdict::inconclusive(CriterionReason::StateConditionFailed(2));
            }
        }
    }
    // (3)
    if recoverable_state(f, &partials) != StateSet::of(f).indices {
        return CriterionVerdict::inconclusive(CriterionReason::StateConditionFailed(3));
    }
    // (4)
    if !second_partial_graph_connected(f) {
        return CriterionVerdict::inconclusive(CriterionReason::StateConditionFailed(4));
    }
    CriterionVerdict::fired(CriterionReason::StateConditions)
}

/// Exponent vectors `α` of degree `deg f`, not all entries divisible by the
/// characteristic, whose nonzero first partials all occur in some partial of `f`.
fn recoverable_state(f: &Form, partials: &[StateSet]) -> BTreeSet<Monomial> {
    let n = f.n();
    let p = f.field().characteristic();
    let union: HashSet<&Monomial> = partials.iter().flat_map(|s| s.indices.iter()).collect();
    let survives = |e: u32| p == 0 || (e as u64) % p != 0;
    let mut out = BTreeSet::new();
    for beta in &union {
        for i in 0..n {
            let mut alpha = (*beta).clone();
            alpha.exps_mut()[i] += 1;
            if out.contains(&alpha) || !alpha.exponents().iter().any(|&e| survives(e)) {
                continue;
            }
            let ok = (0..n).all(|k| {
                let e = alpha.exp(k);
                if e == 0 || !survives(e) {
                    return true;
                }
                let mut lower = alpha.clone();
                lower.exps_mut()[k] -= 1;
                union.contains(&lower)
            });
            if ok {
                out.insert(alpha);
            }
        }
    }
    out
}

fn second_partial_graph_connected(f: &Form) -> bool {
    let n = f.n();
    let first = f.gradient();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if !first[i].partial_derivative(j).expect("in range").is_zero() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Families with a prescribed monomial support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructuredKind {
    /// `sum_σ a_σ x_{1σ(1)} .. x_{mσ(m)}` on `m^2` variables `x_{ij}` (index `i*m + j`).
    Determinant,
    Permanent,
    /// Perfect matchings of `K_{2m}` on `C(2m, 2)` variables `x_{ij}`, `i < j`,
    /// indexed lexicographically.
    Pfaffian,
}

impl std::str::FromStr for StructuredKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "determinant" | "det" => Ok(StructuredKind::Determinant),
            "permanent" | "perm" => Ok(StructuredKind::Permanent),
            "pfaffian" | "pf" => Ok(StructuredKind::Pfaffian),
            other => Err(Error::ShapeMismatch(format!("unknown structured kind {}", other))),
        }
    }
}

/// Coefficient choice for [`gen_structured`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Textbook signs: `sgn σ` for determinant and pfaffian, `+1` for permanent.
    Unit,
    /// Seeded nonzero rationals `p / q` with `1 <= |p| <= 9`, `1 <= q <= 5`.
    Seeded(u64),
}

/// Generic-support polynomial of the given kind and size `m >= 3`.
pub fn gen_structured(kind: StructuredKind, m: usize, coeffs: Coefficients) -> Result<Form> {
    if m < 3 {
        return Err(Error::SizeTooSmall(m));
    }
    let field = Field::Rationals;
    let mut rng = match coeffs {
        Coefficients::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Coefficients::Unit => None,
    };
    let mut coefficient = |sign: i64| match rng.as_mut() {
        None => field.from_i64(sign),
        Some(r) => {
            let mut p: i64 = r.gen_range(1..=9);
            if r.gen_bool(0.5) {
                p = -p;
            }
            let q: i64 = r.gen_range(1..=5);
            field.from_ratio(&BigInt::from(p), &BigInt::from(q)).expect("nonzero denominator")
        }
    };
    let mut terms = Vec::new();
    match kind {
        StructuredKind::Determinant | StructuredKind::Permanent => {
            let n = m * m;
            for (perm, sign) in permutations(m) {
                let mut e = vec![0u32; n];
                for (i, &j) in perm.iter().enumerate() {
                    e[i * m + j] = 1;
                }
                let s = if kind == StructuredKind::Determinant { sign } else { 1 };
                terms.push((Monomial::new(e), coefficient(s)));
            }
            Form::from_terms(n, Side::S, field, terms)
        }
        StructuredKind::Pfaffian => {
            let size = 2 * m;
            let pairs: Vec<(usize, usize)> = (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).collect();
            let n = pairs.len();
            let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
            for (matching, sign) in perfect_matchings(size) {
                let mut e = vec![0u32; n];
                for (i, j) in matching {
                    e[index(i, j)] = 1;
                }
                terms.push((Monomial::new(e), coefficient(sign)));
            }
            Form::from_terms(n, Side::S, field, terms)
        }
    }
}

/// All permutations of `0..m` with their signs, in lexicographic order.
fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let m = used.len();
        if prefix.len() == m {
            let inversions = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Perfect matchings of `0..size` (pairs `(i, j)` with `i < j`) with their pfaffian signs.
fn perfect_matchings(size: usize) -> Vec<(Vec<(usize, usize)>, i64)> {
    fn go(rest: Vec<usize>, acc: &mut Vec<(usize, usize)>, sign: i64, out: &mut Vec<(Vec<(usize, usize)>, i64)>) {
        if rest.is_empty() {
            out.push((acc.clone(), sign));
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            let partner = rest[k];
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != 0 && i != k).map(|(_, &v)| v).collect();
            acc.push((first, partner));
            // Moving `partner` next to `first` crosses k - 1 elements.
            let s = if (k - 1) % 2 == 0 { sign } else { -sign };
            go(remaining, acc, s, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go((0..size).collect(), &mut Vec::new(), 1, &mut out);
    out
}

/// `sum_{i < ℓ} x_i ∂H/∂x_{ℓ+i} + G` (variables 0-based).
///
/// `H` may only involve `x_ℓ .. x_{2ℓ-1}` and `G` only `x_ℓ .. x_{n-1}`; both
/// must have the same degree and live in the same ring.
pub fn gen_lds(h: &Form, g: &Form, l: usize) -> Result<Form> {
    let n = h.n();
    if g.n() != n {
        return Err(Error::ShapeMismatch(format!("H has {} variables, G has {}", n, g.n())));
    }
    if h.degree() != g.degree() {
        return Err(Error::ShapeMismatch(format!("H has degree {}, G has degree {}", h.degree(), g.degree())));
    }
    if l == 0 || 2 * l > n {
        return Err(Error::ShapeMismatch(format!("need 1 <= 2*{} <= {}", l, n)));
    }
    if h.variables().iter().any(|&v| v < l || v >= 2 * l) {
        return Err(Error::ShapeMismatch("H involves variables outside the second block".into()));
    }
    if g.variables().iter().any(|&v| v < l) {
        return Err(Error::ShapeMismatch("G involves variables of the first block".into()));
    }
    let mut f = g.clone();
    for i in 0..l {
        let dh = h.partial_derivative(l + i)?;
        let xi = Form::linear(h.side(), &unit_vector(n, i, h.field()));
        f = f.add(&xi.mul(&dh)?)?;
    }
    Ok(f)
}

fn unit_vector(n: usize, i: usize, field: Field) -> Vec<crate::scalar::Scalar> {
    (0..n).map(|k| if k == i { field.one() } else { field.zero() }).collect()
}

/// A seeded LDS form: random integer `H` in `x_ℓ..x_{2ℓ-1}` and `G` in `x_ℓ..x_{n-1}`
/// of the given degree, coefficients in `[-3, 3]`.
pub fn random_lds(n: usize, l: usize, degree: u32, seed: u64) -> Result<Form> {
    if l == 0 || 2 * l > n {
        return Err(Error::ShapeMismatch(format!("need 1 <= 2*{} <= {}", l, n)));
    }
    let field = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_form = |vars: std::ops::Range<usize>| {
        let k = vars.len();
        let start = vars.start;
        let terms = Monomial::all_of_degree(k, degree).into_iter().filter_map(|m| {
            let c: i64 = rng.gen_range(-3..=3);
            (c != 0).then(|| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[start + i] = x;
                }
                (Monomial::new(e), field.from_i64(c))
            })
        });
        let collected: Vec<_> = terms.collect();
        Form::from_terms(n, Side::S, field, collected)
    };
    let mut h = random_form(l..2 * l)?;
    if h.is_zero() {
        let mut e = vec![0u32; n];
        e[l] = degree;
        h = Form::from_terms(n, Side::S, field, vec![(Monomial::new(e), field.one())])?;
    }
    let g = random_form(l..n)?;
    let g = if g.is_zero() { Form::zero(n, Side::S, degree, field) } else { g };
    gen_lds(&h, &g, l)
}
