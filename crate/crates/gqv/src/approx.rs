//! Approximation procedures: diagonal-rotation orbit search and the qubit
//! Euler decomposition into rotations and Fourier gates.

use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::dense::{dagger, identity_matrix, mat_mul, max_abs_diff, DenseOperator};
use crate::error::GqvError;
use crate::ring::DimensionSpec;
use crate::tol;

const TAU: f64 = 2.0 * PI;

/// A diagonal rotation given by one angle per level, normalized so the
/// angle at level 0 is zero and all angles lie in [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    spec: DimensionSpec,
    phases: Vec<f64>,
}

impl PhaseVector {
    pub fn new(spec: DimensionSpec, phases: Vec<f64>) -> Result<Self, GqvError> {
        let d = spec.dim().ok_or_else(|| {
            GqvError::UnsupportedDimension("phase vectors need a finite dimension".into())
        })?;
        if phases.len() != d as usize {
            return Err(GqvError::InvalidInput(format!(
                "phase vector over dimension {d} needs {d} angles, got {}",
                phases.len()
            )));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(GqvError::InvalidInput("angles must be finite".into()));
        }
        let phases: Vec<f64> = phases.iter().map(|p| p.rem_euclid(TAU)).collect();
        if phases[0] != 0.0 {
            return Err(GqvError::InvalidInput(
                "the angle at level 0 must be zero".into(),
            ));
        }
        Ok(PhaseVector { spec, phases })
    }

    pub fn spec(&self) -> DimensionSpec {
        self.spec
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

/// Distance between two points on the unit circle given as angles.
fn circle_dist(a: f64, b: f64) -> f64 {
    (Complex64::from_polar(1.0, a) - Complex64::from_polar(1.0, b)).norm()
}

/// Smallest N ≤ n_max whose orbit point N·φ⃗ (mod 2π) approximates the
/// target entrywise within eps on the unit circle; None if no N qualifies.
pub fn rotation_orbit_search(
    phi: &PhaseVector,
    target: &PhaseVector,
    eps: f64,
    n_max: u64,
) -> Result<Option<u64>, GqvError> {
    phi.spec.require_same(&target.spec)?;
    if eps <= 0.0 || eps.is_nan() {
        return Err(GqvError::InvalidInput("eps must be positive".into()));
    }
    if n_max < 1 {
        return Err(GqvError::InvalidInput("n_max must be at least 1".into()));
    }
    for n in 1..=n_max {
        let worst = phi
            .phases
            .iter()
            .zip(target.phases.iter())
            .map(|(&p, &t)| circle_dist((n as f64 * p).rem_euclid(TAU), t))
            .fold(0.0, f64::max);
        if worst <= eps {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The orbit point N·φ⃗ mod 2π.
pub fn orbit_point(phi: &PhaseVector, n: u64) -> Vec<f64> {
    phi.phases
        .iter()
        .map(|&p| (n as f64 * p).rem_euclid(TAU))
        .collect()
}

/// Angles of the decomposition U = e^{iφ}·R(θ₁)·F·R(θ₂)·F·R(θ₃), where
/// R(χ) = diag(1, e^{iχ}) and F is the qubit Fourier (Hadamard) gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

fn wrap(a: f64) -> f64 {
    a.rem_euclid(TAU)
}

/// Decompose a 2×2 unitary into rotation and Fourier factors.
///
/// The product R(θ₁)·F·R(θ₂)·F·R(θ₃) works out to
/// e^{iθ₂/2}·[[c, −i·s·e^{iθ₃}], [−i·s·e^{iθ₁}, c·e^{i(θ₁+θ₃)}]]
/// with c = cos(θ₂/2), s = sin(θ₂/2), so the angles read off the entry
/// magnitudes and arguments directly.
pub fn qubit_euler_decompose(u: &DenseOperator) -> Result<EulerAngles, GqvError> {
    match u.spec() {
        DimensionSpec::Qudit(2) => {}
        other => {
            return Err(GqvError::InvalidInput(format!(
                "the Euler decomposition covers qubits, got {other}"
            )))
        }
    }
    if u.n() != 1 {
        return Err(GqvError::InvalidInput(
            "the Euler decomposition takes a single-register gate".into(),
        ));
    }
    let m = u.entries();
    let prod = mat_mul(m, &dagger(m));
    if max_abs_diff(&prod, &identity_matrix(2)) > tol::UNITARITY {
        return Err(GqvError::InvalidInput("input is not unitary".into()));
    }

    let u00 = m[[0, 0]];
    let u01 = m[[0, 1]];
    let u10 = m[[1, 0]];
    let u11 = m[[1, 1]];
    let c = u00.norm().clamp(0.0, 1.0);
    let s = u01.norm().clamp(0.0, 1.0);
    let theta2 = 2.0 * c.acos();

    let (phi, theta1, theta3) = if c <= 1e-12 {
        // Fully off-diagonal: fold θ₃ into the other angles.
        let phi = u01.arg();
        (phi, u10.arg() - phi, 0.0)
    } else if s <= 1e-12 {
        // Diagonal: θ₂ = θ₃ = 0, read θ₁ across the diagonal.
        (u00.arg(), u11.arg() - u00.arg(), 0.0)
    } else {
        let base = u00.arg();
        (
            base - theta2 / 2.0,
            u10.arg() - base + PI / 2.0,
            u01.arg() - base + PI / 2.0,
        )
    };
    Ok(EulerAngles {
        phi: wrap(phi),
        theta1: wrap(theta1),
        theta2: wrap(theta2),
        theta3: wrap(theta3),
    })
}

/// e^{iφ}·R(θ₁)·F·R(θ₂)·F·R(θ₃) as an explicit 2×2 matrix.
pub fn euler_reconstruct(angles: &EulerAngles) -> Array2<Complex64> {
    let r = |chi: f64| {
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = Complex64::new(1.0, 0.0);
        m[[1, 1]] = Complex64::from_polar(1.0, chi);
        m
    };
    let s = 1.0 / 2.0f64.sqrt();
    let mut f = Array2::zeros((2, 2));
    f[[0, 0]] = Complex64::new(s, 0.0);
    f[[0, 1]] = Complex64::new(s, 0.0);
    f[[1, 0]] = Complex64::new(s, 0.0);
    f[[1, 1]] = Complex64::new(-s, 0.0);
    let m = mat_mul(
        &r(angles.theta1),
        &mat_mul(
            &f,
            &mat_mul(&r(angles.theta2), &mat_mul(&f, &r(angles.theta3))),
        ),
    );
    m.mapv(|v| v * Complex64::from_polar(1.0, angles.phi))
}

/// A random 2×2 unitary: a global phase times an SU(2) element drawn from
/// uniform angles.
pub fn random_unitary_2x2<R: rand::Rng + ?Sized>(rng: &mut R) -> Array2<Complex64> {
    let theta: f64 = rng.random_range(0.0..PI / 2.0);
    let p1: f64 = rng.random_range(0.0..TAU);
    let p2: f64 = rng.random_range(0.0..TAU);
    let p3: f64 = rng.random_range(0.0..TAU);
    let a = Complex64::from_polar(theta.cos(), p2);
    let b = Complex64::from_polar(theta.sin(), p3);
    let g = Complex64::from_polar(1.0, p1);
    let mut m = Array2::zeros((2, 2));
    m[[0, 0]] = g * a;
    m[[0, 1]] = g * b;
    m[[1, 0]] = -g * b.conj();
    m[[1, 1]] = g * a.conj();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(d: u64) -> DimensionSpec {
        DimensionSpec::qudit(d).unwrap()
    }

    fn pv(d: u64, phases: &[f64]) -> PhaseVector {
        PhaseVector::new(q(d), phases.to_vec()).unwrap()
    }

    #[test]
    fn phase_vector_validation() {
        assert!(matches!(
            PhaseVector::new(q(2), vec![0.0]),
            Err(GqvError::InvalidInput(_))
        ));
        assert!(matches!(
            PhaseVector::new(q(2), vec![0.1, 0.0]),
            Err(GqvError::InvalidInput(_))
        ));
        assert!(matches!(
            PhaseVector::new(DimensionSpec::continuous(), vec![0.0]),
            Err(GqvError::UnsupportedDimension(_))
        ));
        // Angles wrap into [0, 2π).
        let v = pv(2, &[0.0, -1.0]);
        assert!((v.phases()[1] - (TAU - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn orbit_finds_the_target_immediately_when_equal() {
        let phi = pv(2, &[0.0, 1.0]);
        assert_eq!(rotation_orbit_search(&phi, &phi, 0.5, 10).unwrap(), Some(1));
    }

    #[test]
    fn generic_angle_reaches_a_generic_target() {
        let phi = pv(2, &[0.0, 1.0]);
        let target = pv(2, &[0.0, PI / 4.0]);
        let n = rotation_orbit_search(&phi, &target, 0.01, 100_000)
            .unwrap()
            .expect("dense orbit should land near the target");
        assert!(n <= 100_000);
        // The hit actually approximates the target.
        let point = orbit_point(&phi, n);
        assert!(circle_dist(point[1], PI / 4.0) <= 0.01);
    }

    #[test]
    fn two_point_orbit_misses_a_generic_target() {
        let phi = pv(2, &[0.0, PI]);
        let target = pv(2, &[0.0, PI / 4.0]);
        assert_eq!(
            rotation_orbit_search(&phi, &target, 0.01, 200_000).unwrap(),
            None
        );
    }

    #[test]
    fn lower_precision_never_needs_more_steps() {
        let phi = pv(3, &[0.0, 1.0, 2.2]);
        let target = pv(3, &[0.0, 2.0, 1.0]);
        let tight = rotation_orbit_search(&phi, &target, 0.05, 1_000_000).unwrap();
        let loose = rotation_orbit_search(&phi, &target, 0.2, 1_000_000).unwrap();
        if let (Some(nt), Some(nl)) = (tight, loose) {
            assert!(nl <= nt);
        } else {
            assert!(tight.is_none());
        }
    }

    #[test]
    fn scaled_angles_match_repeated_addition() {
        let phi = pv(2, &[0.0, 1.2345]);
        let mut acc = [0.0f64, 0.0];
        for n in 1..=10_000u64 {
            for (a, &p) in acc.iter_mut().zip(phi.phases()) {
                *a = (*a + p).rem_euclid(TAU);
            }
            let direct = orbit_point(&phi, n);
            for (a, b) in acc.iter().zip(direct.iter()) {
                assert!(circle_dist(*a, *b) <= 1e-9, "drift at N={n}");
            }
        }
    }

    #[test]
    fn identity_decomposes_to_zero_angles() {
        let u = DenseOperator::new(q(2), 1, identity_matrix(2)).unwrap();
        let angles = qubit_euler_decompose(&u).unwrap();
        assert_eq!(
            (angles.phi, angles.theta1, angles.theta2, angles.theta3),
            (0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn hadamard_reconstructs() {
        let s = 1.0 / 2.0f64.sqrt();
        let mut f = Array2::zeros((2, 2));
        f[[0, 0]] = Complex64::new(s, 0.0);
        f[[0, 1]] = Complex64::new(s, 0.0);
        f[[1, 0]] = Complex64::new(s, 0.0);
        f[[1, 1]] = Complex64::new(-s, 0.0);
        let u = DenseOperator::new(q(2), 1, f.clone()).unwrap();
        let angles = qubit_euler_decompose(&u).unwrap();
        assert!(max_abs_diff(&euler_reconstruct(&angles), &f) <= tol::EULER);
    }

    #[test]
    fn random_unitaries_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            let m = random_unitary_2x2(&mut rng);
            let u = DenseOperator::new(q(2), 1, m.clone()).unwrap();
            let angles = qubit_euler_decompose(&u).unwrap();
            let err = max_abs_diff(&euler_reconstruct(&angles), &m);
            assert!(err <= tol::EULER, "reconstruction error {err}");
        }
    }

    #[test]
    fn structured_unitaries_reconstruct() {
        // Diagonal, antidiagonal, and near-degenerate inputs.
        let cases: Vec<Array2<Complex64>> = vec![
            {
                let mut m = Array2::zeros((2, 2));
                m[[0, 0]] = Complex64::from_polar(1.0, 0.3);
                m[[1, 1]] = Complex64::from_polar(1.0, -1.1);
                m
            },
            {
                let mut m = Array2::zeros((2, 2));
                m[[0, 1]] = Complex64::from_polar(1.0, 2.5);
                m[[1, 0]] = Complex64::from_polar(1.0, 0.4);
                m
            },
            {
                // cos(θ₂/2) = 1e−8: still reconstructs via the generic path.
                let c = 1e-8f64;
                let s = (1.0 - c * c).sqrt();
                let mut m = Array2::zeros((2, 2));
                m[[0, 0]] = Complex64::new(c, 0.0);
                m[[0, 1]] = Complex64::new(0.0, -s);
                m[[1, 0]] = Complex64::new(0.0, -s);
                m[[1, 1]] = Complex64::new(c, 0.0);
                m
            },
        ];
        for m in cases {
            let u = DenseOperator::new(q(2), 1, m.clone()).unwrap();
            let angles = qubit_euler_decompose(&u).unwrap();
            assert!(max_abs_diff(&euler_reconstruct(&angles), &m) <= tol::EULER);
        }
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = Complex64::new(2.0, 0.0);
        m[[1, 1]] = Complex64::new(1.0, 0.0);
        let u = DenseOperator::new(q(2), 1, m).unwrap();
        assert!(matches!(
            qubit_euler_decompose(&u),
            Err(GqvError::InvalidInput(_))
        ));
    }
}
