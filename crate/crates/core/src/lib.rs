//! Exact computer algebra for Gelfand-Dorfman superalgebras and quadratic
//! Lie conformal superalgebras.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in the crate. The main pieces:
//!
//! - [`exactpoly`]: sparse multivariate polynomials in a small set of named
//!   formal variables (`∂`, `λ`, `μ`, `x`) with exact rational coefficients,
//!   plus vector-valued polynomials and exact linear algebra.
//! - [`gdcore`]: finite-dimensional superalgebras given by structure
//!   constants, axiom checkers (Novikov, Lie, GD, Poisson), the commutator
//!   GD construction and the loop-algebra brute-force oracle.
//! - [`confalg`]: the λ-bracket engine on free `k[∂]`-modules — quadratic
//!   brackets, skew-symmetry and conformal Jacobi checks, Poisson conformal
//!   superalgebras, cocycles and twisted representations.
//! - [`envelope`]: truncated free differential (Poisson) supercommutative
//!   algebras, the defining ideal of the universal envelope, weight-graded
//!   quotient bases, and the exceptionality certificate.
//! - [`confrep`]: conformal representations — the `gc_{n|m}` matrix algebra,
//!   module axiom checks, faithfulness tests, and the finite faithful
//!   representation builder.
//! - [`algfile`]: the line-oriented structure-constant file format and the
//!   bundled fixture algebras.
//! - [`cli`]: the subcommand pipelines behind the `gdconf` binary, producing
//!   deterministic machine-readable reports.

pub mod algfile;
pub mod cli;
pub mod confalg;
pub mod confrep;
pub mod envelope;
pub mod error;
pub mod exactpoly;
pub mod gdcore;
pub mod linalg;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
