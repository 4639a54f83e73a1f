//! Laplacian spectra of small graphs, the Brouwer partial-sum bounds
//! `S_t(G) <= m + t(t+1)/2`, and falsifiable audits of each inequality in a
//! proposed reduction proof of those bounds.
//!
//! Heavy loops (exhaustive enumeration, random corpora, extremal searches)
//! run through [`exec::Exec`], which uses rayon when the `parallel` feature
//! is enabled and plain iterators otherwise.

pub mod audit;
pub mod brouwer;
pub mod error;
pub mod exec;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod scan;
pub mod spectral;
pub mod threshold;

pub use brouwer::{brouwer_bound, check_all_t, duality_excess_gap, excess, BrouwerReport};
pub use exec::Exec;
pub use family::Family;
pub use graph::{enumerate_labeled_graphs, DegreeSequence, Graph, Vertex};
pub use graph6::{parse_graph6, write_graph6};
pub use spectral::{
    complement_spectrum, eigenvalues_desc, laplacian, laplacian_energy, laplacian_spectrum, Spectrum,
};
