//! Algebra engine for general quantum variables: qudits of any dimension d ≥ 2
//! and the continuous-variable case under one parameterization.
//!
//! The symbolic layer ([`ring`], [`pauli`], [`clifford`], [`synth`]) does exact
//! arithmetic in the coordinate and phase rings; the [`dense`] layer builds the
//! same objects as explicit complex matrices straight from their defining
//! equations and serves as the independent oracle for every symbolic rule.

pub mod approx;
pub mod clifford;
pub mod dense;
pub mod error;
pub mod pauli;
pub mod ring;
pub mod suites;
pub mod synth;
pub mod text;
pub mod tol;

pub use clifford::{CliffordCircuit, GeneratorGate, Tableau};
pub use error::GqvError;
pub use pauli::PauliElement;
pub use ring::{Coord, DimensionSpec, PhaseExp, UnitPhase};
