//! Brute-force checks: a dense symmetric eigensolver, Kronecker sums and
//! finite-difference discretizations.

mod eigen;
mod fd;
mod kron;
mod matrix;

pub use eigen::{eigenvalues, symmetric_eigen_dense, EigenMethod, JACOBI_MAX_ORDER};
pub use fd::{
    box0_rectangle_operator, disc_dirichlet_operator, disc_nodes, fd_box0_rectangle,
    fd_dirichlet_disc, fd_dirichlet_interval, fd_dirichlet_rect, interval_operator,
    lattice_dirichlet_operator, rect_dirichlet_operator, GridSpec,
};
pub use kron::kronecker_sum;
pub use matrix::{DenseSymMatrix, MAX_ORDER};
