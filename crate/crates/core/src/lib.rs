//! Exact-rational feasibility certificates for mixed-integer programs with
//! one quadratic constraint: find `x in Z^p x R^q` with `A x <= b` and
//! `x^T H x + c^T x + d <= 0`, or report that none exists.
//!
//! All arithmetic is over arbitrary-precision rationals; nothing is rounded.

pub mod certifier;
pub mod cone;
pub mod error;
pub mod exact;
pub mod format;
pub mod maxcut;
pub mod milp;
pub mod oracle;
pub mod par;
pub mod polyhedra;
pub mod qp;

pub use certifier::{find_certificate, verify_certificate, Branch, Certificate, MiqpInstance, Trace, VerificationReport};
pub use error::{Error, Result};
pub use exact::{EncodingSize, Encoded, Integer, QMatrix, QVector, Rational};
pub use oracle::{brute_force_feasibility, OracleVerdict};
pub use polyhedra::HPolyhedron;
pub use qp::QuadraticForm;
