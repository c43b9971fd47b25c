//! Three-player, two-strategy, maximally entangled EWL quantum games.
//!
//! The crate computes outcome distributions of the quantized game two ways:
//! a direct state-vector simulation of the EWL protocol ([`ewl`]) and the
//! octonionic closed form ([`closed_form`]), which writes every outcome
//! probability as a sum of squared projections of left-associated triple
//! products `(s t) u` of unit octonions. On top of both sits [`game`], which
//! evaluates pure, mixed and Haar-uniform quantum strategy profiles and
//! searches for best responses and equilibria.
//!
//! ```
//! use ewl_core::closed_form::theorem1_distribution;
//! use ewl_core::ewl::EwlInstance;
//! use ewl_core::quantum::SU2Strategy;
//!
//! let eta = ewl_core::ewl::canonical_eta(3).unwrap();
//! let flip = SU2Strategy::flip(eta);
//! let no_flip = SU2Strategy::no_flip();
//! let strategies = [flip, no_flip, flip];
//!
//! let closed = theorem1_distribution(&strategies[0], &strategies[1], &strategies[2]);
//! let oracle = EwlInstance::canonical(3).unwrap().simulate(&strategies).unwrap();
//! assert!(closed.linf_distance(&oracle) < 1e-12);
//! assert!((closed.probs()[0b101] - 1.0).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod closed_form;
mod error;
pub mod ewl;
pub mod game;
pub mod quantum;

pub use error::{Error, Result};
