//! Numerical tolerances, centralized so every comparison in the crate pins to
//! one named constant.

/// Equality threshold for continuous-case coordinates and phase exponents.
pub const CONTINUOUS_EPS: f64 = 1e-9;

/// Per-entry threshold for dense matrix and amplitude comparisons.
pub const DENSE_ENTRY: f64 = 1e-10;

/// Threshold for ‖U·U† − I‖_max on constructed gate matrices.
pub const UNITARITY: f64 = 1e-10;

/// Aggregate pass threshold for verification suites (overridable at the CLI
/// via the `GQV_TOLERANCE` environment variable).
pub const SUITE: f64 = 1e-9;

/// Threshold for comparing unit-circle phase values.
pub const PHASE_UNIT: f64 = 1e-12;

/// Threshold for the numeric Clifford witness.
pub const WITNESS: f64 = 1e-8;

/// Threshold for mutually-unbiased-basis magnitude checks.
pub const MUB: f64 = 1e-10;

/// Threshold for Euler-decomposition reconstruction error.
pub const EULER: f64 = 1e-9;

/// Threshold for Gauss-sum brute-vs-closed-form agreement.
pub const GAUSS: f64 = 1e-12;

/// Threshold for Fourier structural identities (unitarity, F⁴ = I, parity).
pub const FOURIER_STRUCTURE: f64 = 1e-12;

/// Suite threshold after applying the `GQV_TOLERANCE` environment override.
pub fn suite_tolerance() -> f64 {
    std::env::var("GQV_TOLERANCE")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(SUITE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_tolerance_when_env_unset() {
        // Tests may run in parallel; only assert the fallback when unset.
        if std::env::var("GQV_TOLERANCE").is_err() {
            assert_eq!(suite_tolerance(), SUITE);
        }
    }
}
