//! Phase-decorated Pauli elements p_{ξ,q⃗} = ω^{ξ/2}·X(x₁)Z(z₁) ⊗ … ⊗ X(x_n)Z(z_n)
//! and their exact group arithmetic.
//!
//! Composition follows the Weyl relation Z(q)X(q') = ω^{qq'}X(q')Z(q): moving
//! the left factor's Z parts across the right factor's X parts contributes
//! 2·Σᵢ a.z_i·b.x_i to the stored exponent.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::GqvError;
use crate::ring::{Coord, DimensionSpec, PhaseExp};

/// Which single-register Pauli family a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// An element of the n-register Pauli group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliElement {
    spec: DimensionSpec,
    xi: PhaseExp,
    xs: Vec<Coord>,
    zs: Vec<Coord>,
}

impl PauliElement {
    /// Element with explicit phase exponent and coordinates; validates
    /// canonical form against the spec.
    pub fn new(
        spec: DimensionSpec,
        xi: PhaseExp,
        xs: Vec<Coord>,
        zs: Vec<Coord>,
    ) -> Result<Self, GqvError> {
        if xs.is_empty() || xs.len() != zs.len() {
            return Err(GqvError::RegisterCountMismatch(xs.len(), zs.len()));
        }
        spec.check_phase(xi)?;
        for &c in xs.iter().chain(zs.iter()) {
            spec.check_coord(c)?;
        }
        Ok(PauliElement { spec, xi, xs, zs })
    }

    /// The group identity on n registers.
    pub fn identity(spec: DimensionSpec, n: usize) -> Result<Self, GqvError> {
        Self::new(
            spec,
            spec.phase_zero(),
            vec![spec.coord_zero(); n],
            vec![spec.coord_zero(); n],
        )
    }

    /// Single-register X(q), Y(q) or Z(q) embedded at `target` among n registers.
    ///
    /// Y(q) carries exponent q(q+ϱ_d) + 2q²: its definition ω^{q(q+ϱ_d)/2}Z(q)X(q)
    /// reorders to X-before-Z storage through the Weyl relation, which adds 2q².
    pub fn from_gate(
        spec: DimensionSpec,
        n: usize,
        axis: PauliAxis,
        target: usize,
        q: Coord,
    ) -> Result<Self, GqvError> {
        if target >= n {
            return Err(GqvError::IndexError {
                index: target,
                count: n,
            });
        }
        spec.check_coord(q)?;
        let mut xs = vec![spec.coord_zero(); n];
        let mut zs = vec![spec.coord_zero(); n];
        let mut xi = spec.phase_zero();
        match axis {
            PauliAxis::X => xs[target] = q,
            PauliAxis::Z => zs[target] = q,
            PauliAxis::Y => {
                xs[target] = q;
                zs[target] = q;
                // q(q+ϱ) + 2q², assembled in the phase ring.
                let rho = if spec.rho() == 1 {
                    spec.coord_one()
                } else {
                    spec.coord_zero()
                };
                let q_plus_rho = spec.coord_add(q, rho)?;
                let base = spec.phase_product(q, q_plus_rho)?;
                let sq2 = spec.phase_double_product(q, q)?;
                xi = spec.phase_add(base, sq2)?;
            }
        }
        Self::new(spec, xi, xs, zs)
    }

    pub fn spec(&self) -> DimensionSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xi(&self) -> PhaseExp {
        self.xi
    }

    pub fn x(&self, i: usize) -> Coord {
        self.xs[i]
    }

    pub fn z(&self, i: usize) -> Coord {
        self.zs[i]
    }

    pub fn xs(&self) -> &[Coord] {
        &self.xs
    }

    pub fn zs(&self) -> &[Coord] {
        &self.zs
    }

    /// Re-validate canonical form (used after deserialization).
    pub fn validate(&self) -> Result<(), GqvError> {
        Self::new(self.spec, self.xi, self.xs.clone(), self.zs.clone()).map(|_| ())
    }

    fn require_compatible(&self, other: &PauliElement) -> Result<(), GqvError> {
        self.spec.require_same(&other.spec)?;
        if self.n() != other.n() {
            return Err(GqvError::RegisterCountMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Group product self·other (matrix-product order: `other` acts first).
    pub fn compose(&self, other: &PauliElement) -> Result<PauliElement, GqvError> {
        self.require_compatible(other)?;
        let spec = self.spec;
        let mut xi = spec.phase_add(self.xi, other.xi)?;
        for i in 0..self.n() {
            xi = spec.phase_add(xi, spec.phase_double_product(self.zs[i], other.xs[i])?)?;
        }
        let mut xs = Vec::with_capacity(self.n());
        let mut zs = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            xs.push(spec.coord_add(self.xs[i], other.xs[i])?);
            zs.push(spec.coord_add(self.zs[i], other.zs[i])?);
        }
        PauliElement::new(spec, xi, xs, zs)
    }

    /// Group inverse: p_{−ξ+2Σxᵢzᵢ, −q⃗}.
    pub fn inverse(&self) -> Result<PauliElement, GqvError> {
        let spec = self.spec;
        let mut xi = spec.phase_neg(self.xi)?;
        for i in 0..self.n() {
            xi = spec.phase_add(xi, spec.phase_double_product(self.zs[i], self.xs[i])?)?;
        }
        let xs = self
            .xs
            .iter()
            .map(|&c| spec.coord_neg(c))
            .collect::<Result<_, _>>()?;
        let zs = self
            .zs
            .iter()
            .map(|&c| spec.coord_neg(c))
            .collect::<Result<_, _>>()?;
        PauliElement::new(spec, xi, xs, zs)
    }

    /// The c with self·other = ω^c·other·self:
    /// c = Σᵢ (self.z_i·other.x_i − self.x_i·other.z_i) in the phase ring.
    pub fn commutation_phase(&self, other: &PauliElement) -> Result<PhaseExp, GqvError> {
        self.require_compatible(other)?;
        let spec = self.spec;
        let mut c = spec.phase_zero();
        for i in 0..self.n() {
            c = spec.phase_add(c, spec.phase_product(self.zs[i], other.xs[i])?)?;
            c = spec.phase_sub(c, spec.phase_product(self.xs[i], other.zs[i])?)?;
        }
        Ok(c)
    }

    /// One-parameter power p^t = p_{tξ + t(t−1)Σxᵢzᵢ, t·q⃗}.
    ///
    /// For qudits t is the canonical residue used as an integer exponent; for
    /// the continuous case the same polynomial gives the one-parameter flow
    /// through the element (real t).
    pub fn power(&self, t: Coord) -> Result<PauliElement, GqvError> {
        let spec = self.spec;
        spec.check_coord(t)?;
        // K = Σ xᵢzᵢ in the phase ring.
        let mut k = spec.phase_zero();
        for i in 0..self.n() {
            k = spec.phase_add(k, spec.phase_product(self.xs[i], self.zs[i])?)?;
        }
        let mut xi = spec.phase_scale(t, self.xi)?;
        // t(t−1) as an exact integer for qudits (t < d, so no overflow in u128),
        // as a real product otherwise; always even for integers, so the result
        // is well defined mod 2d.
        let tt1 = match (spec, t) {
            (DimensionSpec::Qudit(d), Coord::Int(v)) => {
                let m = 2 * d as u128;
                let e = (v as u128) * (v as u128 + m - 1) % m;
                PhaseExp::Int(e as u64)
            }
            (DimensionSpec::Continuous, Coord::Real(v)) => PhaseExp::Real(v * (v - 1.0)),
            _ => unreachable!("check_coord enforces matching kinds"),
        };
        let quad = match (spec, tt1, k) {
            (DimensionSpec::Qudit(d), PhaseExp::Int(e), PhaseExp::Int(kk)) => {
                PhaseExp::Int((e as u128 * kk as u128 % (2 * d as u128)) as u64)
            }
            (DimensionSpec::Continuous, PhaseExp::Real(e), PhaseExp::Real(kk)) => {
                PhaseExp::Real(e * kk)
            }
            _ => unreachable!(),
        };
        xi = spec.phase_add(xi, quad)?;
        let xs = self
            .xs
            .iter()
            .map(|&c| spec.coord_mul(t, c))
            .collect::<Result<_, _>>()?;
        let zs = self
            .zs
            .iter()
            .map(|&c| spec.coord_mul(t, c))
            .collect::<Result<_, _>>()?;
        PauliElement::new(spec, xi, xs, zs)
    }

    /// Add a phase exponent to the element (multiply by ω^{delta/2}).
    pub fn with_added_phase(&self, delta: PhaseExp) -> Result<PauliElement, GqvError> {
        PauliElement::new(
            self.spec,
            self.spec.phase_add(self.xi, delta)?,
            self.xs.clone(),
            self.zs.clone(),
        )
    }

    /// Operator equality: coordinates equal (exact / ε) and phases equal as
    /// ω^{ξ/2} values (exact mod 2d for qudits, unit circle for continuous).
    pub fn equals(&self, other: &PauliElement) -> Result<bool, GqvError> {
        if self.require_compatible(other).is_err() {
            return Ok(false);
        }
        let spec = self.spec;
        for i in 0..self.n() {
            if !spec.coord_eq(self.xs[i], other.xs[i])?
                || !spec.coord_eq(self.zs[i], other.zs[i])?
            {
                return Ok(false);
            }
        }
        spec.phase_value_eq(self.xi, other.xi)
    }

    /// Whether this is the group identity (as an operator).
    pub fn is_identity(&self) -> Result<bool, GqvError> {
        let id = PauliElement::identity(self.spec, self.n())?;
        self.equals(&id)
    }

    /// Uniformly random element (coordinates across the ring; for the
    /// continuous case, coordinates in [−2,2] and exponent in [−4π,4π)).
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        spec: DimensionSpec,
        n: usize,
    ) -> Result<PauliElement, GqvError> {
        let mut xs = Vec::with_capacity(n);
        let mut zs = Vec::with_capacity(n);
        let xi = match spec {
            DimensionSpec::Qudit(d) => {
                for _ in 0..n {
                    xs.push(Coord::Int(rng.random_range(0..d)));
                    zs.push(Coord::Int(rng.random_range(0..d)));
                }
                PhaseExp::Int(rng.random_range(0..2 * d))
            }
            DimensionSpec::Continuous => {
                for _ in 0..n {
                    xs.push(Coord::Real(rng.random_range(-2.0..2.0)));
                    zs.push(Coord::Real(rng.random_range(-2.0..2.0)));
                }
                PhaseExp::Real(
                    rng.random_range(-4.0 * std::f64::consts::PI..4.0 * std::f64::consts::PI),
                )
            }
        };
        PauliElement::new(spec, xi, xs, zs)
    }
}

impl fmt::Display for PauliElement {
    /// Renders as `w^{ξ/2} X(x1)Z(z1) ⊗ X(x2)Z(z2) ⊗ …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{{{}/2}} ", self.xi)?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "X({})Z({})", self.xs[i], self.zs[i])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(d: u64) -> DimensionSpec {
        DimensionSpec::qudit(d).unwrap()
    }

    fn pe(spec: DimensionSpec, xi: i64, xs: &[i64], zs: &[i64]) -> PauliElement {
        PauliElement::new(
            spec,
            spec.phase_from_int(xi),
            xs.iter().map(|&v| spec.coord_from_int(v)).collect(),
            zs.iter().map(|&v| spec.coord_from_int(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn composition_order_of_x_and_z_at_d2() {
        // Frozen against the 2×2 matrix products: X·Z has no reordering phase
        // in X-before-Z storage, Z·X picks up ω^{2/2} = −1.
        let spec = q(2);
        let x = PauliElement::from_gate(spec, 1, PauliAxis::X, 0, Coord::Int(1)).unwrap();
        let z = PauliElement::from_gate(spec, 1, PauliAxis::Z, 0, Coord::Int(1)).unwrap();
        assert_eq!(x.compose(&z).unwrap(), pe(spec, 0, &[1], &[1]));
        assert_eq!(z.compose(&x).unwrap(), pe(spec, 2, &[1], &[1]));
    }

    #[test]
    fn weyl_phase_at_d3() {
        // Z(1)·X(1) = ω^{2/2}·X(1)Z(1) = ω·X(1)Z(1): commutation phase covers it.
        let spec = q(3);
        let x = PauliElement::from_gate(spec, 1, PauliAxis::X, 0, Coord::Int(1)).unwrap();
        let z = PauliElement::from_gate(spec, 1, PauliAxis::Z, 0, Coord::Int(1)).unwrap();
        // c with z·x = ω^c·x·z must satisfy ω^c = ω.
        let c = z.commutation_phase(&x).unwrap();
        assert_eq!(spec.phase_to_coord(c).unwrap(), Coord::Int(1));
    }

    #[test]
    fn y_generator_exponent_reorders_through_weyl() {
        // Y(q) = ω^{q(q+ϱ)/2}Z(q)X(q) stored X-first: ξ = q(q+ϱ) + 2q².
        let d3 = q(3);
        let y = PauliElement::from_gate(d3, 1, PauliAxis::Y, 0, Coord::Int(1)).unwrap();
        assert_eq!(y, pe(d3, 4, &[1], &[1])); // 1·2 + 2 = 4

        let d2 = q(2);
        let y2 = PauliElement::from_gate(d2, 1, PauliAxis::Y, 0, Coord::Int(1)).unwrap();
        assert_eq!(y2, pe(d2, 3, &[1], &[1])); // 1·1 + 2 = 3

        // And as a composition: phase-free Z·X times the defining prefactor.
        let z = PauliElement::from_gate(d3, 1, PauliAxis::Z, 0, Coord::Int(1)).unwrap();
        let x = PauliElement::from_gate(d3, 1, PauliAxis::X, 0, Coord::Int(1)).unwrap();
        let zx = z.compose(&x).unwrap();
        let y_again = zx.with_added_phase(d3.phase_from_int(2)).unwrap(); // q(q+ϱ) = 2
        assert_eq!(y, y_again);
    }

    #[test]
    fn inverse_cancels_on_both_sides() {
        let specs = [q(2), q(3), q(4), q(6), DimensionSpec::continuous()];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in specs {
            for n in 1..=3 {
                for _ in 0..200 {
                    let p = PauliElement::random(&mut rng, spec, n).unwrap();
                    let inv = p.inverse().unwrap();
                    assert!(p.compose(&inv).unwrap().is_identity().unwrap());
                    assert!(inv.compose(&p).unwrap().is_identity().unwrap());
                }
            }
        }
    }

    #[test]
    fn inverse_example_x_at_d3() {
        let spec = q(3);
        let x = pe(spec, 0, &[1], &[0]);
        assert_eq!(x.inverse().unwrap(), pe(spec, 0, &[2], &[0]));
    }

    #[test]
    fn associativity_random_triples() {
        let specs = [q(2), q(3), q(4), q(6), DimensionSpec::continuous()];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in specs {
            for n in 1..=3 {
                for _ in 0..400 {
                    let a = PauliElement::random(&mut rng, spec, n).unwrap();
                    let b = PauliElement::random(&mut rng, spec, n).unwrap();
                    let c = PauliElement::random(&mut rng, spec, n).unwrap();
                    let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
                    let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
                    assert!(ab_c.equals(&a_bc).unwrap());
                }
            }
        }
    }

    #[test]
    fn commutation_phase_antisymmetry_and_disjoint_supports() {
        let spec = q(2);
        let a = pe(spec, 0, &[1, 0], &[0, 0]); // X ⊗ I
        let b = pe(spec, 0, &[0, 0], &[0, 1]); // I ⊗ Z
        assert_eq!(a.commutation_phase(&b).unwrap(), PhaseExp::Int(0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = PauliElement::random(&mut rng, spec, 2).unwrap();
            assert_eq!(p.commutation_phase(&p).unwrap(), PhaseExp::Int(0));
        }
    }

    #[test]
    fn commutation_phase_is_the_group_commutator() {
        // a·b = ω^c·b·a exactly, for random pairs in several specs.
        let specs = [q(2), q(3), q(5), DimensionSpec::continuous()];
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for spec in specs {
            for _ in 0..300 {
                let a = PauliElement::random(&mut rng, spec, 2).unwrap();
                let b = PauliElement::random(&mut rng, spec, 2).unwrap();
                let c = a.commutation_phase(&b).unwrap();
                let lhs = a.compose(&b).unwrap();
                let rhs = b
                    .compose(&a)
                    .unwrap()
                    .with_added_phase(spec.phase_add(c, c).unwrap())
                    .unwrap();
                assert!(lhs.equals(&rhs).unwrap());
            }
        }
    }

    #[test]
    fn delta_convention_invariance() {
        // Reducing δ mod d before doubling gives the same stored exponent as
        // working mod 2d throughout: 2δ and 2(δ mod d) agree mod 2d.
        let specs = [q(2), q(3), q(4), q(6), q(7)];
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for spec in specs {
            let d = spec.dim().unwrap();
            for _ in 0..500 {
                let a = PauliElement::random(&mut rng, spec, 3).unwrap();
                let b = PauliElement::random(&mut rng, spec, 3).unwrap();
                // δ as an unreduced integer.
                let mut delta: u128 = 0;
                for i in 0..3 {
                    let (az, bx) = match (a.z(i), b.x(i)) {
                        (Coord::Int(u), Coord::Int(v)) => (u as u128, v as u128),
                        _ => unreachable!(),
                    };
                    delta += az * bx;
                }
                let m = 2 * d as u128;
                let two_delta_mod2d = (2 * (delta % m)) % m;
                let two_delta_via_mod_d = (2 * (delta % d as u128)) % m;
                assert_eq!(two_delta_mod2d, two_delta_via_mod_d);
            }
        }
    }

    #[test]
    fn power_matches_repeated_composition() {
        let specs = [q(2), q(3), q(5), q(6)];
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for spec in specs {
            let d = spec.dim().unwrap();
            for _ in 0..100 {
                let p = PauliElement::random(&mut rng, spec, 2).unwrap();
                let mut acc = PauliElement::identity(spec, 2).unwrap();
                for t in 0..d {
                    assert!(
                        p.power(Coord::Int(t)).unwrap().equals(&acc).unwrap(),
                        "power {t} mismatch"
                    );
                    acc = acc.compose(&p).unwrap();
                }
            }
        }
    }

    #[test]
    fn continuous_power_is_a_one_parameter_flow() {
        // p^(s+t) = p^s · p^t for the continuous case.
        let cv = DimensionSpec::continuous();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let p = PauliElement::random(&mut rng, cv, 2).unwrap();
            let s: f64 = rng.random_range(-2.0..2.0);
            let t: f64 = rng.random_range(-2.0..2.0);
            let lhs = p.power(Coord::Real(s + t)).unwrap();
            let rhs = p
                .power(Coord::Real(s))
                .unwrap()
                .compose(&p.power(Coord::Real(t)).unwrap())
                .unwrap();
            assert!(lhs.equals(&rhs).unwrap());
        }
    }

    #[test]
    fn from_gate_examples() {
        assert_eq!(
            PauliElement::from_gate(q(2), 1, PauliAxis::Z, 0, Coord::Int(1)).unwrap(),
            pe(q(2), 0, &[0], &[1])
        );
        let cv = DimensionSpec::continuous();
        let x = PauliElement::from_gate(cv, 1, PauliAxis::X, 0, Coord::Real(1.5)).unwrap();
        assert_eq!(x.x(0), Coord::Real(1.5));
        assert_eq!(x.z(0), Coord::Real(0.0));
        assert!(matches!(
            PauliElement::from_gate(q(2), 1, PauliAxis::X, 1, Coord::Int(1)),
            Err(GqvError::IndexError { index: 1, count: 1 })
        ));
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = pe(q(2), 0, &[1], &[0]);
        let b = pe(q(3), 0, &[1], &[0]);
        assert!(matches!(a.compose(&b), Err(GqvError::SpecMismatch(_, _))));
        let c = pe(q(2), 0, &[1, 0], &[0, 0]);
        assert!(matches!(
            a.compose(&c),
            Err(GqvError::RegisterCountMismatch(1, 2))
        ));
    }

    #[test]
    fn rendering_format() {
        let p = pe(q(2), 3, &[1, 0], &[1, 1]);
        assert_eq!(p.to_string(), "w^{3/2} X(1)Z(1) ⊗ X(0)Z(1)");
        let cv = DimensionSpec::continuous();
        let r = PauliElement::new(
            cv,
            PhaseExp::Real(0.5),
            vec![Coord::Real(1.5)],
            vec![Coord::Real(0.0)],
        )
        .unwrap();
        assert_eq!(r.to_string(), "w^{0.5/2} X(1.5)Z(0)");
    }
}
