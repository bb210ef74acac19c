//! Simulation and verification of topological quantum computation with
//! level-3 SU(2) anyons.
//!
//! * [`anyon`]: labels, fusion rules, quantum dimensions, fusion paths.
//! * [`rep`]: Temperley-Lieb and braid-group matrices on the path basis.
//! * [`link`]: plat closures, c/w/m, Kauffman bracket, Jones at e^{2πi/5}.
//! * [`qc`]: reference qubit-circuit simulator.
//! * [`topo`]: the anyonic register, braiding, pair measurement and the
//!   closed-form Jones route to the same probability.
//! * [`compiler`]: braid words approximating target gates.
//! * [`kcode`]: the k-code condition on subspaces of qudit products.

pub mod anyon;
pub mod calibration;
pub mod compiler;
pub mod constants;
pub mod error;
pub mod kcode;
pub mod linalg;
pub mod link;
pub mod qc;
pub mod rep;
pub mod topo;
pub mod word;

pub use error::{Error, Result};
pub use word::BraidWord;
