//! Direct-sum decomposition of homogeneous polynomials via associated forms.

pub mod apolarity;
pub mod criteria;
pub mod decomposition;
pub mod error;
pub mod factor;
pub mod form;
pub mod linalg;
pub mod monomial;
pub mod options;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use criteria::{CriterionResult, CriterionVerdict};
pub use decomposition::{classify, DecompositionReport, Verdict};
pub use error::{Error, Result};
pub use factor::{factor_form, factor_univariate, squarefree_decomposition, Factor, FactorList, UnivariateFactors};
pub use form::{apply_dual, polar_apply, Form, Side};
pub use linalg::{LinearChange, Matrix, Rref};
pub use monomial::Monomial;
pub use parse::{parse_form, parse_form_infer, print_form};
pub use poly::Poly;
pub use scalar::{Field, Scalar};
pub use subspace::{Ambient, Subspace};
pub use options::Options;
