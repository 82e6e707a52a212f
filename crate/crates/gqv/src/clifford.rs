//! Heisenberg-picture Clifford engine: generator gates, closed-form
//! conjugation of Pauli elements through circuits, and tableaux (the images of
//! the elementary X and Z generators under conjugation).

use serde::{Deserialize, Serialize};

use crate::error::GqvError;
use crate::pauli::{PauliAxis, PauliElement};
use crate::ring::{Coord, DimensionSpec, PhaseExp};
use crate::tol;

/// One gate from the Clifford generating set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeneratorGate {
    /// Pauli Z(p) on register t.
    Z { p: Coord, t: usize },
    /// Pauli X(p) on register t.
    X { p: Coord, t: usize },
    /// Pauli Y(p) on register t.
    Y { p: Coord, t: usize },
    /// Fourier gate on register t.
    F { t: usize },
    /// Inverse Fourier gate on register t.
    Finv { t: usize },
    /// Phase gate P(p) on register t; p lives in the phase-exponent ring.
    P { p: PhaseExp, t: usize },
    /// Squeezing gate S(s)|q⟩ = |sq⟩ on register t; s must be a unit.
    Sq { s: Coord, t: usize },
    /// Controlled-Z on registers (a,b); symmetric.
    Cz { a: usize, b: usize },
    /// SUM gate |q_c,q_t⟩ → |q_c, q_t+q_c⟩ (control c, target t).
    Sum { c: usize, t: usize },
    /// Swap of registers (a,b).
    Swap { a: usize, b: usize },
}

impl GeneratorGate {
    /// Registers the gate touches.
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            GeneratorGate::Z { t, .. }
            | GeneratorGate::X { t, .. }
            | GeneratorGate::Y { t, .. }
            | GeneratorGate::F { t }
            | GeneratorGate::Finv { t }
            | GeneratorGate::P { t, .. }
            | GeneratorGate::Sq { t, .. } => vec![t],
            GeneratorGate::Cz { a, b } | GeneratorGate::Swap { a, b } => vec![a, b],
            GeneratorGate::Sum { c, t } => vec![c, t],
        }
    }

    /// Check targets and parameters against a spec and register count.
    pub fn validate(&self, spec: DimensionSpec, n: usize) -> Result<(), GqvError> {
        for t in self.targets() {
            if t >= n {
                return Err(GqvError::IndexError { index: t, count: n });
            }
        }
        match *self {
            GeneratorGate::Z { p, .. }
            | GeneratorGate::X { p, .. }
            | GeneratorGate::Y { p, .. } => spec.check_coord(p)?,
            GeneratorGate::P { p, .. } => spec.check_phase(p)?,
            GeneratorGate::Sq { s, .. } => {
                spec.check_coord(s)?;
                spec.coord_inverse(s).map(|_| ())?;
            }
            GeneratorGate::Cz { a, b } | GeneratorGate::Swap { a, b } => {
                if a == b {
                    return Err(GqvError::InvalidInput(
                        "two-register gate needs distinct targets".into(),
                    ));
                }
            }
            GeneratorGate::Sum { c, t } => {
                if c == t {
                    return Err(GqvError::InvalidInput(
                        "two-register gate needs distinct targets".into(),
                    ));
                }
            }
            GeneratorGate::F { .. } | GeneratorGate::Finv { .. } => {}
        }
        Ok(())
    }
}

/// An ordered gate list over a fixed spec and register count.
/// List order is application order: the leftmost gate acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliffordCircuit {
    spec: DimensionSpec,
    n: usize,
    gates: Vec<GeneratorGate>,
}

impl CliffordCircuit {
    pub fn new(spec: DimensionSpec, n: usize, gates: Vec<GeneratorGate>) -> Result<Self, GqvError> {
        if n == 0 {
            return Err(GqvError::InvalidInput(
                "a circuit needs at least one register".into(),
            ));
        }
        for g in &gates {
            g.validate(spec, n)?;
        }
        Ok(CliffordCircuit { spec, n, gates })
    }

    pub fn spec(&self) -> DimensionSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[GeneratorGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// This circuit followed by `other`.
    pub fn then(&self, other: &CliffordCircuit) -> Result<CliffordCircuit, GqvError> {
        self.spec.require_same(&other.spec)?;
        if self.n != other.n {
            return Err(GqvError::RegisterCountMismatch(self.n, other.n));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        CliffordCircuit::new(self.spec, self.n, gates)
    }
}

/// Working coordinates of a Pauli element during conjugation.
struct Working {
    xi: PhaseExp,
    xs: Vec<Coord>,
    zs: Vec<Coord>,
}

/// Apply one gate's conjugation rule in place: p ↦ g·p·g†.
fn apply_gate(spec: DimensionSpec, g: &GeneratorGate, w: &mut Working) -> Result<(), GqvError> {
    match *g {
        // Pauli gates contribute only the group commutator phase.
        GeneratorGate::Z { p, t } => {
            w.xi = spec.phase_add(w.xi, spec.phase_double_product(p, w.xs[t])?)?;
        }
        GeneratorGate::X { p, t } => {
            w.xi = spec.phase_sub(w.xi, spec.phase_double_product(p, w.zs[t])?)?;
        }
        GeneratorGate::Y { p, t } => {
            let diff = spec.coord_sub(w.xs[t], w.zs[t])?;
            w.xi = spec.phase_add(w.xi, spec.phase_double_product(p, diff)?)?;
        }
        // Fourier: (x,z) ↦ (−z, x) with phase −2xz.
        GeneratorGate::F { t } => {
            w.xi = spec.phase_sub(w.xi, spec.phase_double_product(w.xs[t], w.zs[t])?)?;
            let (x, z) = (w.xs[t], w.zs[t]);
            w.xs[t] = spec.coord_neg(z)?;
            w.zs[t] = x;
        }
        // Inverse Fourier = F³: (x,z) ↦ (z, −x) with the same phase term.
        GeneratorGate::Finv { t } => {
            w.xi = spec.phase_sub(w.xi, spec.phase_double_product(w.xs[t], w.zs[t])?)?;
            let (x, z) = (w.xs[t], w.zs[t]);
            w.xs[t] = z;
            w.zs[t] = spec.coord_neg(x)?;
        }
        // Phase gate: ξ += p·x(x+ϱ), z += p·x.
        GeneratorGate::P { p, t } => {
            w.xi = spec.phase_add(w.xi, spec.phase_shear_term(p, w.xs[t])?)?;
            let pc = spec.phase_to_coord(p)?;
            w.zs[t] = spec.coord_add(w.zs[t], spec.coord_mul(pc, w.xs[t])?)?;
        }
        // Squeezing: (x,z) ↦ (s·x, s⁻¹·z), no phase.
        GeneratorGate::Sq { s, t } => {
            let sinv = spec.coord_inverse(s)?;
            w.xs[t] = spec.coord_mul(s, w.xs[t])?;
            w.zs[t] = spec.coord_mul(sinv, w.zs[t])?;
        }
        // Controlled-Z: ξ += 2·x_a·x_b, z_a += x_b, z_b += x_a.
        GeneratorGate::Cz { a, b } => {
            w.xi = spec.phase_add(w.xi, spec.phase_double_product(w.xs[a], w.xs[b])?)?;
            let (xa, xb) = (w.xs[a], w.xs[b]);
            w.zs[a] = spec.coord_add(w.zs[a], xb)?;
            w.zs[b] = spec.coord_add(w.zs[b], xa)?;
        }
        // SUM: x_t += x_c, z_c −= z_t, no phase.
        GeneratorGate::Sum { c, t } => {
            let (xc, zt) = (w.xs[c], w.zs[t]);
            w.xs[t] = spec.coord_add(w.xs[t], xc)?;
            w.zs[c] = spec.coord_sub(w.zs[c], zt)?;
        }
        GeneratorGate::Swap { a, b } => {
            w.xs.swap(a, b);
            w.zs.swap(a, b);
        }
    }
    Ok(())
}

/// Conjugate p through a circuit: returns U·p·U† with U the circuit read
/// left-to-right (leftmost gate applied first).
pub fn conjugate(circuit: &CliffordCircuit, p: &PauliElement) -> Result<PauliElement, GqvError> {
    circuit.spec.require_same(&p.spec())?;
    if circuit.n != p.n() {
        return Err(GqvError::RegisterCountMismatch(circuit.n, p.n()));
    }
    let mut w = Working {
        xi: p.xi(),
        xs: p.xs().to_vec(),
        zs: p.zs().to_vec(),
    };
    for g in &circuit.gates {
        apply_gate(circuit.spec, g, &mut w)?;
    }
    PauliElement::new(circuit.spec, w.xi, w.xs, w.zs)
}

/// The Heisenberg record of a Clifford unitary: conjugation images of the
/// elementary generators X_i(1) and Z_i(1). Layout: images[0..n] are the X
/// images, images[n..2n] the Z images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tableau {
    spec: DimensionSpec,
    n: usize,
    images: Vec<PauliElement>,
}

/// The 2n elementary generators X_i(1), Z_i(1) in tableau layout.
pub fn elementary_generators(spec: DimensionSpec, n: usize) -> Result<Vec<PauliElement>, GqvError> {
    let one = spec.coord_one();
    let mut gens = Vec::with_capacity(2 * n);
    for i in 0..n {
        gens.push(PauliElement::from_gate(spec, n, PauliAxis::X, i, one)?);
    }
    for i in 0..n {
        gens.push(PauliElement::from_gate(spec, n, PauliAxis::Z, i, one)?);
    }
    Ok(gens)
}

impl Tableau {
    /// Build from explicit images; validates shape and the commutation
    /// invariant (images must reproduce the generators' Weyl phases at the
    /// ω level — mod d for qudits, on the unit circle for continuous).
    pub fn from_images(
        spec: DimensionSpec,
        n: usize,
        images: Vec<PauliElement>,
    ) -> Result<Self, GqvError> {
        let t = Tableau::from_images_unchecked(spec, n, images)?;
        t.check_commutation()?;
        Ok(t)
    }

    /// Build from images checking only shape, not the commutation invariant.
    /// Synthesis uses this to accept untrusted input and report NonSymplectic
    /// with context.
    pub fn from_images_unchecked(
        spec: DimensionSpec,
        n: usize,
        images: Vec<PauliElement>,
    ) -> Result<Self, GqvError> {
        if n == 0 || images.len() != 2 * n {
            return Err(GqvError::InvalidInput(format!(
                "a tableau over {n} registers needs {} images, got {}",
                2 * n,
                images.len()
            )));
        }
        for img in &images {
            spec.require_same(&img.spec())?;
            if img.n() != n {
                return Err(GqvError::RegisterCountMismatch(img.n(), n));
            }
            img.validate()?;
        }
        Ok(Tableau { spec, n, images })
    }

    /// Identity tableau: images are the elementary generators themselves.
    pub fn identity(spec: DimensionSpec, n: usize) -> Result<Self, GqvError> {
        Tableau::from_images_unchecked(spec, n, elementary_generators(spec, n)?)
    }

    pub fn spec(&self) -> DimensionSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliElement] {
        &self.images
    }

    pub fn image_x(&self, i: usize) -> &PauliElement {
        &self.images[i]
    }

    pub fn image_z(&self, i: usize) -> &PauliElement {
        &self.images[self.n + i]
    }

    /// Verify the commutation invariant: for every generator pair, the images
    /// commute with the same ω-power as the generators themselves.
    pub fn check_commutation(&self) -> Result<(), GqvError> {
        let gens = elementary_generators(self.spec, self.n)?;
        for i in 0..2 * self.n {
            for j in (i + 1)..2 * self.n {
                let want = gens[i].commutation_phase(&gens[j])?;
                let got = self.images[i].commutation_phase(&self.images[j])?;
                let same = match self.spec {
                    DimensionSpec::Qudit(_) => self.spec.coord_eq(
                        self.spec.phase_to_coord(want)?,
                        self.spec.phase_to_coord(got)?,
                    )?,
                    DimensionSpec::Continuous => {
                        let a = self.spec.omega_pow(want, false)?;
                        let b = self.spec.omega_pow(got, false)?;
                        a.dist(&b) <= tol::CONTINUOUS_EPS
                    }
                };
                if !same {
                    return Err(GqvError::NonSymplectic(format!(
                        "images {i} and {j} do not reproduce the generator commutation phase"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Operator equality of the represented unitaries' conjugation actions.
    pub fn equals(&self, other: &Tableau) -> Result<bool, GqvError> {
        if self.spec != other.spec || self.n != other.n {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(other.images.iter()) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Tableau of a circuit: conjugate every elementary generator through it.
pub fn tableau_from_circuit(circuit: &CliffordCircuit) -> Result<Tableau, GqvError> {
    let images = elementary_generators(circuit.spec, circuit.n)?
        .iter()
        .map(|g| conjugate(circuit, g))
        .collect::<Result<Vec<_>, _>>()?;
    Tableau::from_images_unchecked(circuit.spec, circuit.n, images)
}

/// Conjugate an arbitrary Pauli element by the unitary a tableau records.
///
/// Writing p = ω^{ξ/2}·Π_i X_i(x_i)Z_i(z_i) and inserting U†U between factors,
/// U p U† = ω^{ξ/2}·Π_i (image of X_i)^{x_i}·(image of Z_i)^{z_i}, with every
/// product taken through the exact group law so all reordering phases appear.
pub fn apply_tableau(t: &Tableau, p: &PauliElement) -> Result<PauliElement, GqvError> {
    t.spec.require_same(&p.spec())?;
    if t.n != p.n() {
        return Err(GqvError::RegisterCountMismatch(t.n, p.n()));
    }
    let mut acc = PauliElement::identity(t.spec, t.n)?;
    for i in 0..t.n {
        acc = acc.compose(&t.image_x(i).power(p.x(i))?)?;
        acc = acc.compose(&t.image_z(i).power(p.z(i))?)?;
    }
    acc.with_added_phase(p.xi())
}

/// Tableau of "b after a" (the unitary of b composed onto that of a).
pub fn tableau_compose(a: &Tableau, b: &Tableau) -> Result<Tableau, GqvError> {
    a.spec.require_same(&b.spec)?;
    if a.n != b.n {
        return Err(GqvError::RegisterCountMismatch(a.n, b.n));
    }
    let images = a
        .images
        .iter()
        .map(|img| apply_tableau(b, img))
        .collect::<Result<Vec<_>, _>>()?;
    Tableau::from_images_unchecked(a.spec, a.n, images)
}

/// Sample a uniformly random coordinate (qudit residue, or a real in ±2).
pub fn random_coord<R: rand::Rng + ?Sized>(rng: &mut R, spec: DimensionSpec) -> Coord {
    match spec {
        DimensionSpec::Qudit(d) => Coord::Int(rng.random_range(0..d)),
        DimensionSpec::Continuous => Coord::Real(rng.random_range(-2.0..2.0)),
    }
}

/// Sample a random phase exponent (mod-2d residue, or a real in ±3).
pub fn random_phase<R: rand::Rng + ?Sized>(rng: &mut R, spec: DimensionSpec) -> PhaseExp {
    match spec {
        DimensionSpec::Qudit(d) => PhaseExp::Int(rng.random_range(0..2 * d)),
        DimensionSpec::Continuous => PhaseExp::Real(rng.random_range(-3.0..3.0)),
    }
}

/// Sample a random invertible coordinate, suitable as a squeezing parameter.
pub fn random_unit<R: rand::Rng + ?Sized>(rng: &mut R, spec: DimensionSpec) -> Coord {
    match spec {
        DimensionSpec::Qudit(_) => {
            let units = spec.units().expect("finite spec has units");
            Coord::Int(units[rng.random_range(0..units.len())])
        }
        DimensionSpec::Continuous => {
            let mut v: f64 = rng.random_range(-2.0..2.0);
            if v.abs() < 0.1 {
                v = if v >= 0.0 { 0.5 } else { -0.5 };
            }
            Coord::Real(v)
        }
    }
}

/// Sample a random circuit of the given length over all gate kinds valid
/// for (spec, n).
pub fn random_circuit<R: rand::Rng + ?Sized>(
    rng: &mut R,
    spec: DimensionSpec,
    n: usize,
    len: usize,
) -> CliffordCircuit {
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let t = rng.random_range(0..n);
        let kinds = if n >= 2 { 10 } else { 7 };
        let g = match rng.random_range(0..kinds) {
            0 => GeneratorGate::F { t },
            1 => GeneratorGate::Finv { t },
            2 => GeneratorGate::P {
                p: random_phase(rng, spec),
                t,
            },
            3 => GeneratorGate::Z {
                p: random_coord(rng, spec),
                t,
            },
            4 => GeneratorGate::X {
                p: random_coord(rng, spec),
                t,
            },
            5 => GeneratorGate::Y {
                p: random_coord(rng, spec),
                t,
            },
            6 => GeneratorGate::Sq {
                s: random_unit(rng, spec),
                t,
            },
            k => {
                let mut u = rng.random_range(0..n);
                if u == t {
                    u = (u + 1) % n;
                }
                match k {
                    7 => GeneratorGate::Cz { a: t, b: u },
                    8 => GeneratorGate::Sum { c: t, t: u },
                    _ => GeneratorGate::Swap { a: t, b: u },
                }
            }
        };
        gates.push(g);
    }
    CliffordCircuit::new(spec, n, gates).expect("sampled gates are valid by construction")
}

/// Whether F²·P^{d−1}·F²·P acts as Z (up to global phase), checked at the
/// tableau level. Defined for d = 2 and odd d.
pub fn check_generator_identity(spec: DimensionSpec) -> Result<bool, GqvError> {
    let d = match spec {
        DimensionSpec::Qudit(d) if d == 2 || d % 2 == 1 => d,
        _ => {
            return Err(GqvError::UnsupportedDimension(format!(
                "generator identity holds for d = 2 and odd d, not {spec}"
            )))
        }
    };
    let one = PhaseExp::Int(1);
    let dm1 = PhaseExp::Int(d - 1);
    // Operator F²P^{d−1}F²P: rightmost factor applies first.
    let circuit = CliffordCircuit::new(
        spec,
        1,
        vec![
            GeneratorGate::P { p: one, t: 0 },
            GeneratorGate::F { t: 0 },
            GeneratorGate::F { t: 0 },
            GeneratorGate::P { p: dm1, t: 0 },
            GeneratorGate::F { t: 0 },
            GeneratorGate::F { t: 0 },
        ],
    )?;
    let z = CliffordCircuit::new(
        spec,
        1,
        vec![GeneratorGate::Z {
            p: spec.coord_one(),
            t: 0,
        }],
    )?;
    let ta = tableau_from_circuit(&circuit)?;
    let tb = tableau_from_circuit(&z)?;
    ta.equals(&tb)
}
