//! Exact algebraic and geometric tools for group relaxations of integer programs
//! `min c·x, Ax = b, x ∈ N^n`.

pub mod error;
pub mod face;
pub mod family;
pub mod fiber;
pub mod groebner;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod oracle;
pub mod relax;
pub mod stdpairs;
pub mod triangulation;

pub use error::{Error, Result};
pub use face::Face;
pub use matrix::{face_determinant, gcd_maximal_minors, kernel_lattice_basis, IntMatrix, LatticeBasis};
pub use triangulation::{regular_subdivision, unimodularity_report, RegularTriangulation};
pub use family::Family;
