//! Lower bounds for projective cubature formulas on the real, complex and
//! quaternionic projective spaces, equivalently for the number of summands in
//! isometric embeddings `l_2^m -> l_p^n` with even `p`.
//!
//! The crate is organized bottom-up:
//!
//! * [`jacobi`]: Jacobi polynomials, norms, largest roots and Gauss–Jacobi rules.
//! * [`special`]: log-Gamma, the Euler-integral hypergeometric value and Bessel zeros.
//! * [`testfn`]: the convolution test function `f_l = g * h` and its Jacobi–Fourier data.
//! * [`bounds`]: the linear programming bound, the Yudin-type bound and the `m = 2` tables.
//! * [`verifier`]: a Jacobi moment test for weighted point sets over R, C and H.
//! * [`cli`]: rendering of reports and tables shared by the `projbound` binary.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod field;
pub mod jacobi;
pub mod quaternion;
pub mod special;
pub mod sum;
pub mod testfn;
pub mod verifier;

pub use bounds::{lp_bound, yudin_bound, BoundReport, LpBound};
pub use error::{Error, Result};
pub use field::Field;
pub use jacobi::{JacobiParams, QuadratureRule};
pub use quaternion::Quaternion;
pub use testfn::{build_test_function, YudinTestFunction};
pub use verifier::{
    circle_design, line_from_sphere, moment_test, verify, PointSet, PointSetFile,
    VerificationReport,
};
