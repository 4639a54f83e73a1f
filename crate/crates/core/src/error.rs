use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("not a permutation of the vertex set")]
    BadPermutation,
    #[error("labeled enumeration supports 1 <= n <= 7, got {0}")]
    EnumerationRange(usize),
    #[error("invalid family parameters: {0}")]
    FamilyParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {offset}: malformed header byte {byte:#04x}")]
    BadHeader { offset: usize, byte: u8 },
    #[error("byte {offset}: graph6 long form (n > 62) is not supported")]
    TooLarge { offset: usize },
    #[error("graph on {0} vertices cannot be written in graph6 short form")]
    WriteTooLarge(usize),
    #[error("byte {offset}: payload truncated, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: invalid payload byte {byte:#04x}")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: nonzero padding bits")]
    NonzeroPadding { offset: usize },
    #[error("byte {offset}: trailing garbage after payload")]
    TrailingGarbage { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("eigenvalue {value:e} below -{tol:e}; matrix is not positive semidefinite")]
    Negative { value: f64, tol: f64 },
    #[error("index {t} outside 1..={n}")]
    IndexRange { t: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("t = {t} outside the audited range {lo}..={hi}")]
    TRange { t: usize, lo: usize, hi: usize },
    #[error("graph is regular: no vertex of degree below the maximum exists")]
    GraphIsRegular,
    #[error("graph has an isolated vertex")]
    HasIsolatedVertex,
    #[error("t + 1 + d_v = {lhs} >= n = {n}; the max-degree case applies instead")]
    HypothesisNotMet { lhs: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("edge count {m} outside 0..={max} for n = {n}")]
    EdgeCount { n: usize, m: usize, max: usize },
    #[error("vertex count {n} outside {lo}..={hi}")]
    VertexCount { n: usize, lo: usize, hi: usize },
}
