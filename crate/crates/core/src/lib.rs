//! Exact arithmetic for positive definite integral ternary quadratic forms.
//!
//! The crate enumerates the genera of discriminant `p²` and `16p²`, computes
//! automorphism groups, masses, representation numbers and local densities,
//! implements Watson's `λ_m` transformation, and checks the identities
//! `s(p²n) − p s(n) = 48 Σ R_f(n)/|Aut f| − 96 Σ R_f(n)/|Aut f|` exactly.
//!
//! Every algorithm is generic over [`Scalar`]; the aliases below fix the common choices.
//!
//! ```
//! use ternary::{canonical, rep_count, Form64};
//!
//! let h1 = Form64::from_i64([31, 5, 11, 1, -14, 6]);
//! assert_eq!(h1.discriminant(), 73 * 73);
//! assert_eq!(rep_count(&h1, &31).unwrap(), 2);
//! assert_eq!(canonical(&h1).unwrap().discriminant(), 5329);
//! ```

pub mod count;
pub mod enumerate;
pub mod error;
pub mod form;
pub mod genus;
pub mod isometry;
pub mod kronecker;
pub mod local;
pub mod matrix;
pub mod rational;
pub mod reduce;
pub mod scalar;
pub mod shapes;
pub mod verify;
pub mod watson;

pub use count::{rep_count, s, theta, ThetaVector};
pub use error::{Error, Result};
pub use form::{TernaryForm, UnimodularMap};
pub use genus::{build_tg2, enumerate_tg1, genus_pair, GenusCache, GenusClass, GenusLabel, GenusSet};
pub use isometry::{automorphs, equivalent, AutomorphGroup};
pub use local::{local_density, LocalDensity};
pub use matrix::Mat3;
pub use rational::Rational;
pub use reduce::{canonical, reduce};
pub use scalar::Scalar;
pub use watson::{lambda_lattice, lambda_m, phi, phi_inverse, transport_automorph, WatsonLattice};

/// Forms with arbitrary-precision coefficients.
pub type Form = TernaryForm<num_bigint::BigInt>;
pub type Form64 = TernaryForm<i64>;
pub type Form128 = TernaryForm<i128>;
pub type Map = UnimodularMap<num_bigint::BigInt>;
pub type Map64 = UnimodularMap<i64>;
