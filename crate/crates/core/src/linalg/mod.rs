//! Dense complex linear algebra: matrix types, a Hermitian eigensolver, and
//! operations on bipartite (tensor-product) spaces.

mod bipartite;
mod eig;
mod matrix;

pub use bipartite::{
    kron, max_entangled_vector, partial_trace_matrix, partial_transpose_matrix, schmidt,
    tensor_vec, BipartiteOperator, SchmidtDecomposition, Slot,
};
pub use eig::{herm_eig, psd_project, psd_split, SpectralDecomposition};
pub use matrix::{
    outer, pairing, vec_inner, vec_norm, vec_normalized, ComplexMatrix, HermitianMatrix,
    HERMITIAN_INGEST_TOL,
};
