/// Tunables shared by the analysis pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest graded piece the linear algebra may build.
    pub max_ambient_dim: usize,
    /// Seed for every randomized step (evaluation points, mod-p splitting).
    pub seed: u64,
    /// Largest number of variables accepted by multivariate factorization.
    pub max_factor_vars: usize,
    /// Largest degree accepted by multivariate factorization.
    pub max_factor_degree: u32,
}

pub const DEFAULT_SEED: u64 = 0x5EED;

impl Default for Options {
    fn default() -> Self {
        Options { max_ambient_dim: 100_000, seed: DEFAULT_SEED, max_factor_vars: 6, max_factor_degree: 24 }
    }
}

impl Options {
    pub fn with_seed(seed: u64) -> Self {
        Options { seed, ..Options::default() }
    }
}
