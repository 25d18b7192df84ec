use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear map is singular")]
    Singular,

    #[error("degenerate metric: eigenvalue {eigenvalue:e} lies within tolerance of zero")]
    DegenerateMetric { eigenvalue: f64 },

    #[error("metric is not symmetric at entry ({0}, {1})")]
    AsymmetricMetric(usize, usize),

    #[error("structure constants are not antisymmetric at (i={i}, j={j}, k={k})")]
    Antisymmetry { i: usize, j: usize, k: usize },

    #[error(
        "Jacobi identity fails on basis triple ({i}, {j}, {k}), component {l}: residual {residual}"
    )]
    Jacobi { i: usize, j: usize, k: usize, l: usize, residual: String },

    #[error("map is not an involution (max residual {0:e})")]
    NotInvolution(f64),

    #[error("map is not an isometry of the metric (max residual {0:e})")]
    NotIsometry(f64),

    #[error("map is not a Lie algebra automorphism (max residual {0:e})")]
    NotAutomorphism(f64),

    #[error("{0} is not a Cartan involution of the metric")]
    NotMetricCartan(&'static str),

    #[error("{0} is not a Cartan involution of the metric that is also an automorphism")]
    NotLieCartan(&'static str),

    #[error("algebra is not semisimple: the Killing form is degenerate")]
    NotSemisimple,

    #[error("could not extract an adapted basis: the metric is degenerate on an eigenspace")]
    DegenerateBasis,

    #[error("invalid scalar literal {0:?}")]
    Literal(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("unknown catalog entry {name:?}; available: {}", available.join(", "))]
    UnknownCatalog { name: String, available: Vec<String> },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
