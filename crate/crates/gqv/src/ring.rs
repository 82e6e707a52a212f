//! Coordinate and phase-exponent arithmetic for a general quantum variable.
//!
//! A variable is described by a [`DimensionSpec`]: a finite dimension d ≥ 2
//! with coordinate ring ℤ(d) and phase-exponent ring ℤ(2d), or the continuous
//! case where both rings are ℝ and the primitive phase is e^i. All arithmetic
//! on [`Coord`] and [`PhaseExp`] values goes through the spec so that qudit
//! values stay canonical residues and continuous values stay plain reals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::GqvError;
use crate::tol;

/// Which kind of quantum variable a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DimensionSpec {
    /// Finite dimension d ≥ 2; coordinates live in ℤ(d), phase exponents in ℤ(2d).
    Qudit(u64),
    /// Continuous variable; coordinates and phase exponents are reals.
    Continuous,
}

/// An element of the coordinate ring S_d: a canonical residue in [0,d) for
/// qudits, or a real for the continuous case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(u64),
    Real(f64),
}

/// An element of the phase-exponent ring S_D: a canonical residue in [0,2d)
/// for qudits, or a real for the continuous case. Phases enter operators as
/// ω^{ξ/2}, which is why the ring has twice the coordinate modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhaseExp {
    Int(u64),
    Real(f64),
}

/// A unit-modulus complex number, the value of ω raised to some exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPhase(pub Complex64);

impl UnitPhase {
    /// Unit-circle distance to another phase value.
    pub fn dist(&self, other: &UnitPhase) -> f64 {
        (self.0 - other.0).norm()
    }

    /// Whether this phase equals `other` within the unit-circle tolerance.
    pub fn approx_eq(&self, other: &UnitPhase) -> bool {
        self.dist(other) <= tol::PHASE_UNIT
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Int(v) => write!(f, "{v}"),
            Coord::Real(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for PhaseExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseExp::Int(v) => write!(f, "{v}"),
            PhaseExp::Real(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for DimensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionSpec::Qudit(d) => write!(f, "qudit d={d}"),
            DimensionSpec::Continuous => write!(f, "continuous"),
        }
    }
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g = gcd(a,b).
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl DimensionSpec {
    /// Finite-dimension spec; rejects d < 2.
    pub fn qudit(d: u64) -> Result<Self, GqvError> {
        if d < 2 {
            return Err(GqvError::InvalidInput(format!(
                "qudit dimension must be at least 2, got {d}"
            )));
        }
        Ok(DimensionSpec::Qudit(d))
    }

    /// The continuous-variable spec.
    pub fn continuous() -> Self {
        DimensionSpec::Continuous
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self, DimensionSpec::Continuous)
    }

    /// Finite dimension, if any.
    pub fn dim(&self) -> Option<u64> {
        match self {
            DimensionSpec::Qudit(d) => Some(*d),
            DimensionSpec::Continuous => None,
        }
    }

    /// Parity constant ϱ_d: 1 for odd qudit dimension, 0 otherwise.
    pub fn rho(&self) -> u64 {
        match self {
            DimensionSpec::Qudit(d) if d % 2 == 1 => 1,
            _ => 0,
        }
    }

    /// Error when two values from different specs are combined.
    pub fn require_same(&self, other: &DimensionSpec) -> Result<(), GqvError> {
        if self == other {
            Ok(())
        } else {
            Err(GqvError::SpecMismatch(self.to_string(), other.to_string()))
        }
    }

    fn int_coord(&self, c: Coord) -> Result<u64, GqvError> {
        match c {
            Coord::Int(v) => Ok(v),
            Coord::Real(_) => Err(GqvError::InvalidInput(format!(
                "real coordinate used with {self}"
            ))),
        }
    }

    fn real_coord(&self, c: Coord) -> Result<f64, GqvError> {
        match c {
            Coord::Real(v) => Ok(v),
            Coord::Int(_) => Err(GqvError::InvalidInput(format!(
                "integer coordinate used with {self}"
            ))),
        }
    }

    fn int_phase(&self, x: PhaseExp) -> Result<u64, GqvError> {
        match x {
            PhaseExp::Int(v) => Ok(v),
            PhaseExp::Real(_) => Err(GqvError::InvalidInput(format!(
                "real phase exponent used with {self}"
            ))),
        }
    }

    fn real_phase(&self, x: PhaseExp) -> Result<f64, GqvError> {
        match x {
            PhaseExp::Real(v) => Ok(v),
            PhaseExp::Int(_) => Err(GqvError::InvalidInput(format!(
                "integer phase exponent used with {self}"
            ))),
        }
    }

    // ---- coordinate ring -------------------------------------------------

    /// Additive identity of the coordinate ring.
    pub fn coord_zero(&self) -> Coord {
        match self {
            DimensionSpec::Qudit(_) => Coord::Int(0),
            DimensionSpec::Continuous => Coord::Real(0.0),
        }
    }

    /// Multiplicative identity of the coordinate ring.
    pub fn coord_one(&self) -> Coord {
        match self {
            DimensionSpec::Qudit(_) => Coord::Int(1),
            DimensionSpec::Continuous => Coord::Real(1.0),
        }
    }

    /// Canonical coordinate from a possibly negative integer.
    pub fn coord_from_int(&self, v: i64) -> Coord {
        match self {
            DimensionSpec::Qudit(d) => Coord::Int((v as i128).rem_euclid(*d as i128) as u64),
            DimensionSpec::Continuous => Coord::Real(v as f64),
        }
    }

    /// Continuous coordinate from a real; rejected for qudits.
    pub fn coord_from_real(&self, v: f64) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => Err(GqvError::InvalidInput(format!(
                "real coordinate {v} not valid for {self}"
            ))),
            DimensionSpec::Continuous => {
                if v.is_finite() {
                    Ok(Coord::Real(v))
                } else {
                    Err(GqvError::InvalidInput("non-finite coordinate".into()))
                }
            }
        }
    }

    /// Whether `c` is a canonical coordinate for this spec.
    pub fn check_coord(&self, c: Coord) -> Result<(), GqvError> {
        match (self, c) {
            (DimensionSpec::Qudit(d), Coord::Int(v)) if v < *d => Ok(()),
            (DimensionSpec::Qudit(d), Coord::Int(v)) => Err(GqvError::InvalidInput(format!(
                "coordinate {v} outside [0,{d})"
            ))),
            (DimensionSpec::Continuous, Coord::Real(v)) if v.is_finite() => Ok(()),
            (DimensionSpec::Continuous, Coord::Real(_)) => {
                Err(GqvError::InvalidInput("non-finite coordinate".into()))
            }
            _ => Err(GqvError::InvalidInput(format!(
                "coordinate kind does not match {self}"
            ))),
        }
    }

    pub fn coord_add(&self, a: Coord, b: Coord) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let (a, b) = (self.int_coord(a)? as u128, self.int_coord(b)? as u128);
                Ok(Coord::Int(((a + b) % *d as u128) as u64))
            }
            DimensionSpec::Continuous => Ok(Coord::Real(self.real_coord(a)? + self.real_coord(b)?)),
        }
    }

    pub fn coord_sub(&self, a: Coord, b: Coord) -> Result<Coord, GqvError> {
        self.coord_add(a, self.coord_neg(b)?)
    }

    pub fn coord_neg(&self, a: Coord) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let a = self.int_coord(a)?;
                Ok(Coord::Int(if a == 0 { 0 } else { d - a }))
            }
            DimensionSpec::Continuous => Ok(Coord::Real(-self.real_coord(a)?)),
        }
    }

    pub fn coord_mul(&self, a: Coord, b: Coord) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let (a, b) = (self.int_coord(a)? as u128, self.int_coord(b)? as u128);
                Ok(Coord::Int(((a * b) % *d as u128) as u64))
            }
            DimensionSpec::Continuous => Ok(Coord::Real(self.real_coord(a)? * self.real_coord(b)?)),
        }
    }

    /// Multiplicative inverse of a unit; NotAUnit otherwise.
    pub fn coord_inverse(&self, s: Coord) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let v = self.int_coord(s)?;
                let (g, x, _) = egcd(v as i128, *d as i128);
                if g != 1 {
                    return Err(GqvError::NotAUnit(format!("{v} (mod {d})")));
                }
                Ok(Coord::Int(x.rem_euclid(*d as i128) as u64))
            }
            DimensionSpec::Continuous => {
                let v = self.real_coord(s)?;
                if v.abs() <= tol::CONTINUOUS_EPS {
                    return Err(GqvError::NotAUnit(format!("{v}")));
                }
                Ok(Coord::Real(1.0 / v))
            }
        }
    }

    /// Whether `s` has a multiplicative inverse.
    pub fn coord_is_unit(&self, s: Coord) -> bool {
        self.coord_inverse(s).is_ok()
    }

    /// Equality in the coordinate ring (exact for qudits, ε for continuous).
    pub fn coord_eq(&self, a: Coord, b: Coord) -> Result<bool, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => Ok(self.int_coord(a)? == self.int_coord(b)?),
            DimensionSpec::Continuous => {
                Ok((self.real_coord(a)? - self.real_coord(b)?).abs() <= tol::CONTINUOUS_EPS)
            }
        }
    }

    pub fn coord_is_zero(&self, a: Coord) -> Result<bool, GqvError> {
        self.coord_eq(a, self.coord_zero())
    }

    // ---- phase-exponent ring ---------------------------------------------

    /// Additive identity of the phase-exponent ring.
    pub fn phase_zero(&self) -> PhaseExp {
        match self {
            DimensionSpec::Qudit(_) => PhaseExp::Int(0),
            DimensionSpec::Continuous => PhaseExp::Real(0.0),
        }
    }

    /// Canonical phase exponent from a possibly negative integer (mod 2d).
    pub fn phase_from_int(&self, v: i64) -> PhaseExp {
        match self {
            DimensionSpec::Qudit(d) => PhaseExp::Int((v as i128).rem_euclid(2 * *d as i128) as u64),
            DimensionSpec::Continuous => PhaseExp::Real(v as f64),
        }
    }

    /// Continuous phase exponent from a real; rejected for qudits.
    pub fn phase_from_real(&self, v: f64) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => Err(GqvError::InvalidInput(format!(
                "real phase exponent {v} not valid for {self}"
            ))),
            DimensionSpec::Continuous => {
                if v.is_finite() {
                    Ok(PhaseExp::Real(v))
                } else {
                    Err(GqvError::InvalidInput("non-finite phase exponent".into()))
                }
            }
        }
    }

    /// Whether `x` is a canonical phase exponent for this spec.
    pub fn check_phase(&self, x: PhaseExp) -> Result<(), GqvError> {
        match (self, x) {
            (DimensionSpec::Qudit(d), PhaseExp::Int(v)) if v < 2 * d => Ok(()),
            (DimensionSpec::Qudit(d), PhaseExp::Int(v)) => Err(GqvError::InvalidInput(format!(
                "phase exponent {v} outside [0,{})",
                2 * d
            ))),
            (DimensionSpec::Continuous, PhaseExp::Real(v)) if v.is_finite() => Ok(()),
            (DimensionSpec::Continuous, PhaseExp::Real(_)) => {
                Err(GqvError::InvalidInput("non-finite phase exponent".into()))
            }
            _ => Err(GqvError::InvalidInput(format!(
                "phase-exponent kind does not match {self}"
            ))),
        }
    }

    pub fn phase_add(&self, a: PhaseExp, b: PhaseExp) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let (a, b) = (self.int_phase(a)? as u128, self.int_phase(b)? as u128);
                Ok(PhaseExp::Int(((a + b) % (2 * *d as u128)) as u64))
            }
            DimensionSpec::Continuous => {
                Ok(PhaseExp::Real(self.real_phase(a)? + self.real_phase(b)?))
            }
        }
    }

    pub fn phase_neg(&self, a: PhaseExp) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let a = self.int_phase(a)?;
                Ok(PhaseExp::Int(if a == 0 { 0 } else { 2 * d - a }))
            }
            DimensionSpec::Continuous => Ok(PhaseExp::Real(-self.real_phase(a)?)),
        }
    }

    pub fn phase_sub(&self, a: PhaseExp, b: PhaseExp) -> Result<PhaseExp, GqvError> {
        self.phase_add(a, self.phase_neg(b)?)
    }

    /// Raw equality of stored exponents (mod 2d for qudits, ε for continuous).
    pub fn phase_eq(&self, a: PhaseExp, b: PhaseExp) -> Result<bool, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => Ok(self.int_phase(a)? == self.int_phase(b)?),
            DimensionSpec::Continuous => {
                Ok((self.real_phase(a)? - self.real_phase(b)?).abs() <= tol::CONTINUOUS_EPS)
            }
        }
    }

    /// Equality of the operator phases ω^{a/2} and ω^{b/2}. For qudits this is
    /// the same as raw equality; for the continuous case exponents are only
    /// meaningful on the unit circle (period 4π), so compare there.
    pub fn phase_value_eq(&self, a: PhaseExp, b: PhaseExp) -> Result<bool, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => self.phase_eq(a, b),
            DimensionSpec::Continuous => {
                let pa = self.omega_pow(a, true)?;
                let pb = self.omega_pow(b, true)?;
                Ok(pa.dist(&pb) <= tol::CONTINUOUS_EPS)
            }
        }
    }

    /// Product of two coordinates landing in the phase ring: a·b mod 2d.
    pub fn phase_product(&self, a: Coord, b: Coord) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let (a, b) = (self.int_coord(a)? as u128, self.int_coord(b)? as u128);
                Ok(PhaseExp::Int(((a * b) % (2 * *d as u128)) as u64))
            }
            DimensionSpec::Continuous => {
                Ok(PhaseExp::Real(self.real_coord(a)? * self.real_coord(b)?))
            }
        }
    }

    /// Doubled product 2·a·b in the phase ring — the commutator contribution.
    pub fn phase_double_product(&self, a: Coord, b: Coord) -> Result<PhaseExp, GqvError> {
        let p = self.phase_product(a, b)?;
        self.phase_add(p, p)
    }

    /// Scale a phase exponent by a coordinate: k·x mod 2d.
    pub fn phase_scale(&self, k: Coord, x: PhaseExp) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let (k, x) = (self.int_coord(k)? as u128, self.int_phase(x)? as u128);
                Ok(PhaseExp::Int(((k * x) % (2 * *d as u128)) as u64))
            }
            DimensionSpec::Continuous => {
                Ok(PhaseExp::Real(self.real_coord(k)? * self.real_phase(x)?))
            }
        }
    }

    /// The shear contribution p·x·(x+ϱ_d) in the phase ring.
    pub fn phase_shear_term(&self, p: PhaseExp, x: Coord) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => {
                let m = 2 * *d as u128;
                let p = self.int_phase(p)? as u128;
                let x = self.int_coord(x)? as u128;
                Ok(PhaseExp::Int(
                    ((p % m) * ((x * ((x + self.rho() as u128) % m)) % m) % m) as u64,
                ))
            }
            DimensionSpec::Continuous => {
                let p = self.real_phase(p)?;
                let x = self.real_coord(x)?;
                Ok(PhaseExp::Real(p * x * x))
            }
        }
    }

    /// Reduce a phase exponent into the coordinate ring (mod d).
    pub fn phase_to_coord(&self, p: PhaseExp) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => Ok(Coord::Int(self.int_phase(p)? % d)),
            DimensionSpec::Continuous => Ok(Coord::Real(self.real_phase(p)?)),
        }
    }

    /// Lift a coordinate into the phase ring (the canonical residue).
    pub fn coord_to_phase(&self, c: Coord) -> Result<PhaseExp, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => Ok(PhaseExp::Int(self.int_coord(c)?)),
            DimensionSpec::Continuous => Ok(PhaseExp::Real(self.real_coord(c)?)),
        }
    }

    /// Halve a phase exponent into a coordinate: the x with 2x ≡ p (mod 2d).
    /// For qudits an odd exponent has no half and is rejected.
    pub fn phase_halved_to_coord(&self, p: PhaseExp) -> Result<Coord, GqvError> {
        match self {
            DimensionSpec::Qudit(_) => {
                let v = self.int_phase(p)?;
                if v % 2 != 0 {
                    return Err(GqvError::InvalidInput(format!(
                        "phase exponent {v} is odd and cannot be halved into the coordinate ring"
                    )));
                }
                Ok(Coord::Int(v / 2))
            }
            DimensionSpec::Continuous => Ok(Coord::Real(self.real_phase(p)? / 2.0)),
        }
    }

    /// Evaluate ω^x (or ω^{x/2} when `half`), where ω = e^{2πi/d} for qudits
    /// and e^i for the continuous case.
    pub fn omega_pow(&self, x: PhaseExp, half: bool) -> Result<UnitPhase, GqvError> {
        let angle = match self {
            DimensionSpec::Qudit(d) => {
                let v = self.int_phase(x)? % (2 * d);
                let unit = 2.0 * std::f64::consts::PI / *d as f64;
                if half {
                    0.5 * unit * v as f64
                } else {
                    unit * v as f64
                }
            }
            DimensionSpec::Continuous => {
                let v = self.real_phase(x)?;
                if half {
                    0.5 * v
                } else {
                    v
                }
            }
        };
        Ok(UnitPhase(Complex64::from_polar(1.0, angle)))
    }

    /// All units of the coordinate ring for a finite dimension.
    pub fn units(&self) -> Result<Vec<u64>, GqvError> {
        match self {
            DimensionSpec::Qudit(d) => Ok((1..*d).filter(|v| gcd(*v, *d) == 1).collect()),
            DimensionSpec::Continuous => Err(GqvError::UnsupportedDimension(
                "unit enumeration needs a finite dimension".into(),
            )),
        }
    }

    /// Whether the finite dimension is prime.
    pub fn is_prime_dim(&self) -> bool {
        match self {
            DimensionSpec::Qudit(d) => is_prime(*d),
            DimensionSpec::Continuous => false,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}
