//! Exact arithmetic at precision `p^a` over the p-adic integers, with the
//! machinery built on top of it: Smith normal form and Haar-uniform sampling
//! of `GL_d`, the Grassmannian of corank-`i` direct summands of `Z_p^d` with
//! its neighborhood basis and exact measures, Monte-Carlo and certificate
//! checks for genericity statements, truncated power-series arithmetic with
//! Weierstrass preparation and characteristic-ideal descent, splitting-profile
//! invariants, and the Fukuda-type stopping criterion on class-number towers.
//!
//! Every operation is deterministic: randomized routines draw from
//! counter-based streams keyed by `(seed, draw index)` so results do not
//! depend on scheduling or worker count.

pub mod error;
pub mod fukuda;
pub mod genericity;
pub mod grassmann;
pub mod invariants;
pub mod iwasawa;
pub mod padic;
pub mod rng;

pub use error::{Error, Result};
