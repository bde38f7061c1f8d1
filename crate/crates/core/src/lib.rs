//! Finite-dimensional (qudit) coherent states and their nonclassicality.
//!
//! Two constructions are provided: the *nonlinear* state obtained by applying
//! the truncated displacement operator to the vacuum, and the *linear* state
//! obtained by truncating the Poissonian Fock expansion of a coherent state.
//! On top of these sit the moment-based witnesses (higher-order antibunching,
//! Hong-Mandel squeezing, higher-order sub-Poissonian statistics,
//! Agarwal-Tara `A3`, Klyshko `B(n)`) and the quantitative measures
//! (negativity and concurrence potentials, anticlassicality).
//!
//! Every compact expression has a brute-force counterpart in [`oracle`] built
//! from dense ladder matrices, which the test suites use as ground truth.
//!
//! ```
//! use qcs_core::{states, witnesses};
//!
//! let state = states::linear_qcs(3, 1.0.into()).unwrap();
//! assert!((qcs_core::fock::mean_photon(&state) - 0.8).abs() < 1e-12);
//! assert!(witnesses::hoa(&state, 1) < 0.0);
//! ```

pub mod error;
pub mod fock;
pub mod hermite;
pub mod measures;
pub mod oracle;
pub mod states;
pub mod sweep;
pub mod witnesses;

pub use error::{QcsError, Result};
pub use fock::{FockVector, MomentTable};
pub use states::{QcsSpec, StateKind};

pub use num_complex::Complex64;
