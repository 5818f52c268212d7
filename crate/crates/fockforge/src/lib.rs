//! Finite-mode, truncation-degree bosonic Fock-space toolkit.
//!
//! Everything is built over `m` modes with a hard degree cap `D`: states are
//! sparse coefficient maps over the normalized occupation basis, operators are
//! either sparse actions on those maps or dense matrices in graded-lex basis
//! order. The crate covers the symmetric-algebra inner product (permanents),
//! creators/annihilators/field operators, coherent and Gaussian vectors with
//! their closed-form norms and pairings, real-symplectic maps in `(C, A)`
//! form, generalized Fock implementers with the metaplectic cocycle, and the
//! coherent-state (Weyl) picture. The `verify` module bundles the identity
//! suite that `fockforge verify` and the acceptance tests run.

pub mod combin;
pub mod config;
pub mod error;
pub mod experiments;
pub mod exponentials;
pub mod fock_vector;
pub mod implementer;
pub mod linalg;
pub mod multi_index;
pub mod ops;
pub mod permanent;
pub mod symplectic;
pub mod verify;
pub mod weyl;

pub use error::FockError;
pub use exponentials::SymAntilinear;
pub use fock_vector::FockVector;
pub use implementer::Implementer;
pub use linalg::{CMatrix, CVector, RMatrix, C64};
pub use multi_index::{Basis, MultiIndex};
pub use ops::{OpKind, OperatorMatrix};
pub use symplectic::SympMap;
pub use weyl::CoherentSpan;
