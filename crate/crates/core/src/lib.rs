//! Local-unitary polynomial invariants and entanglement monotones of N-qubit
//! pure states, built from the determinants of 2×2 amplitude matrices
//! ("negativity fonts").
//!
//! * [`state`]: dense states, basis conventions, named and random states.
//! * [`fonts`]: font enumeration, determinants and their transformation rules.
//! * [`transpose`]: global and K-way partial transposes, negativity.
//! * [`invariants`]: N-tangles, pair invariants and the full report.
//! * [`verify`]: randomized and benchmark checks of every identity.
//! * [`cli`]: the `tanglekit` command line.

pub mod cli;
pub mod error;
pub mod fonts;
pub mod invariants;
pub mod state;
pub mod tolerance;
pub mod transpose;
pub mod verify;

pub use error::{Error, Result};
pub use fonts::{FontSpec, FontValue};
pub use invariants::InvariantReport;
pub use state::{LocalUnitary, NamedState, PureState, QubitIndex};
pub use transpose::TransposedMatrix;
pub use verify::CheckResult;
