//! Exact computations with orthosymplectic Lie superalgebras over
//! finite-dimensional supercommutative superalgebras over ℚ.
//!
//! The layers build on each other:
//!
//! * [`superring`]: coefficient superalgebras given by structure constants;
//! * [`supermodule`]: free supermodules and their quadratic forms;
//! * [`osp`]: graded endomorphisms, the operators `E_{m,n}`, `osp(q)` and
//!   `eosp(q)`;
//! * [`einfty`]: the 3-graded Lie superalgebra `E_∞` built from a form;
//! * [`derivations`]: derivation algebras, the `S`/`T` parameter spaces and
//!   the structure checks relating them;
//! * [`jordan`]: the Jordan superalgebra of a form and its module `E ⊕ M`;
//! * [`solver`]: the exact linear-algebra kernel used throughout.
//!
//! All arithmetic is exact over `ℚ`.

pub mod derivations;
pub mod einfty;
pub mod error;
pub mod instance;
pub mod jordan;
pub mod osp;
pub mod par;
pub mod parity;
pub mod report;
pub mod solver;
pub mod supermodule;
pub mod superring;

pub use error::{Error, Result};
pub use parity::Parity;
pub use solver::Q;
