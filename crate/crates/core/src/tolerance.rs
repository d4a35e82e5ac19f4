//! Tolerance ladder shared by tests, the verification harness and the CLI.

/// Algebraic identities on exactly representable amplitudes, and exact
/// benchmark values.
pub const EXACT: f64 = 1e-12;

/// Algebraic identities evaluated on random states.
pub const IDENTITY: f64 = 1e-10;

/// Invariance along local-unitary orbits (accumulated unitary roundoff).
pub const ORBIT: f64 = 1e-9;

/// Elementwise decomposition of the global partial transpose into K-way parts.
pub const DECOMPOSITION: f64 = 1e-14;
