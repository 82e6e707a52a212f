//! Dense complex-matrix oracle for finite dimensions: explicit gate
//! unitaries, the three bases with their overlap closed forms, Gauss sums,
//! and Clifford/non-Clifford witnesses — independent ground truth for the
//! symbolic engine.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::clifford::{conjugate, CliffordCircuit, GeneratorGate};
use crate::error::GqvError;
use crate::pauli::PauliElement;
use crate::ring::{Coord, DimensionSpec, PhaseExp};
use crate::tol;

/// Largest total dimension d^n the oracle will materialize.
pub const MAX_TOTAL_DIM: usize = 4096;

/// Largest single dimension accepted by the exhaustive witnesses and suites.
pub const MAX_SUITE_DIM: u64 = 16;

/// One of the three single-register bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    Computational,
    Fourier,
    Phase,
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisKind::Computational => write!(f, "computational"),
            BasisKind::Fourier => write!(f, "fourier"),
            BasisKind::Phase => write!(f, "phase"),
        }
    }
}

/// A d^n × d^n complex matrix tagged with its spec and register count.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    spec: DimensionSpec,
    n: usize,
    entries: Array2<Complex64>,
}

impl DenseOperator {
    pub fn new(
        spec: DimensionSpec,
        n: usize,
        entries: Array2<Complex64>,
    ) -> Result<Self, GqvError> {
        let d = finite_dim(spec)?;
        let size = total_dim(d, n)?;
        if entries.nrows() != size || entries.ncols() != size {
            return Err(GqvError::InvalidInput(format!(
                "operator over {n} registers of dimension {d} needs a {size}x{size} matrix"
            )));
        }
        Ok(DenseOperator { spec, n, entries })
    }

    pub fn spec(&self) -> DimensionSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }
}

/// A d^n complex amplitude vector tagged with its spec and register count.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    spec: DimensionSpec,
    n: usize,
    entries: Array1<Complex64>,
}

impl StateVector {
    pub fn new(
        spec: DimensionSpec,
        n: usize,
        entries: Array1<Complex64>,
    ) -> Result<Self, GqvError> {
        let d = finite_dim(spec)?;
        let size = total_dim(d, n)?;
        if entries.len() != size {
            return Err(GqvError::InvalidInput(format!(
                "state over {n} registers of dimension {d} needs {size} amplitudes"
            )));
        }
        Ok(StateVector { spec, n, entries })
    }

    pub fn spec(&self) -> DimensionSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Array1<Complex64> {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// A gate the dense layer can materialize: the Clifford generators plus the
/// diagonal rotation, the cubic-phase gate, the displacement operator, and
/// the position/momentum observables.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseGate {
    Generator(GeneratorGate),
    /// Diagonal rotation with one angle per level; angle 0 must be 0.
    Rotation {
        thetas: Vec<f64>,
    },
    /// Diagonal gate |q⟩ ↦ ω^{q³·power/scale}|q⟩.
    CubicPhase {
        power: u64,
        scale: u64,
    },
    /// ω^{−2⁻¹·x·z}·Z(z)·X(x). Parameters are integer lifts: for even
    /// dimensions the phase factor distinguishes (x, z) from (x ± d, z).
    Displacement {
        x: i64,
        z: i64,
    },
    /// diag(0, 1, …, d−1).
    PositionObservable,
    /// Fourier conjugate of the position observable.
    MomentumObservable,
}

fn finite_dim(spec: DimensionSpec) -> Result<u64, GqvError> {
    spec.dim().ok_or_else(|| {
        GqvError::UnsupportedDimension("the dense oracle covers finite dimensions only".into())
    })
}

fn total_dim(d: u64, n: usize) -> Result<usize, GqvError> {
    if n == 0 {
        return Err(GqvError::InvalidInput("need at least one register".into()));
    }
    let mut size: usize = 1;
    for _ in 0..n {
        size = size
            .checked_mul(d as usize)
            .filter(|&s| s <= MAX_TOTAL_DIM)
            .ok_or_else(|| {
                GqvError::TooLarge(format!(
                    "total dimension {d}^{n} exceeds the oracle cap of {MAX_TOTAL_DIM}"
                ))
            })?;
    }
    Ok(size)
}

/// e^{iπe/d}: the primitive 2d-th root of unity raised to an integer power.
/// This carries half-integer powers of ω = e^{2πi/d} exactly.
pub(crate) fn half_power(d: u64, e: i128) -> Complex64 {
    let m = e.rem_euclid(2 * d as i128) as f64;
    Complex64::from_polar(1.0, PI * m / d as f64)
}

/// ω^e with ω = e^{2πi/d}.
pub(crate) fn root_power(d: u64, e: i128) -> Complex64 {
    half_power(d, 2 * e)
}

fn coord_int(c: Coord) -> Result<i128, GqvError> {
    match c {
        Coord::Int(v) => Ok(v as i128),
        Coord::Real(_) => Err(GqvError::UnsupportedDimension(
            "the dense oracle needs integer coordinates".into(),
        )),
    }
}

fn phase_int(p: PhaseExp) -> Result<i128, GqvError> {
    match p {
        PhaseExp::Int(v) => Ok(v as i128),
        PhaseExp::Real(_) => Err(GqvError::UnsupportedDimension(
            "the dense oracle needs integer phase exponents".into(),
        )),
    }
}

/// Digit of register `t` (register 0 most significant) in flat index `q`.
fn digit(q: usize, d: usize, n: usize, t: usize) -> usize {
    let stride = d.pow((n - 1 - t) as u32);
    (q / stride) % d
}

/// Flat index with register `t`'s digit replaced by `v`.
fn with_digit(q: usize, d: usize, n: usize, t: usize, v: usize) -> usize {
    let stride = d.pow((n - 1 - t) as u32);
    q - digit(q, d, n, t) * stride + v * stride
}

// ---------------------------------------------------------------------------
// Matrix utilities
// ---------------------------------------------------------------------------

pub fn identity_matrix(size: usize) -> Array2<Complex64> {
    let mut m = Array2::zeros((size, size));
    for i in 0..size {
        m[[i, i]] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Plain triple-loop product, row-major friendly.
pub fn mat_mul(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (m, ka) = a.dim();
    let (kb, n) = b.dim();
    assert_eq!(ka, kb, "inner dimensions must agree");
    let mut out = Array2::zeros((m, n));
    let bs = b.as_slice().expect("row-major");
    let os = out.as_slice_mut().expect("row-major");
    for i in 0..m {
        for k in 0..ka {
            let aik = a[[i, k]];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            let brow = &bs[k * n..(k + 1) * n];
            let orow = &mut os[i * n..(i + 1) * n];
            for j in 0..n {
                orow[j] += aik * brow[j];
            }
        }
    }
    out
}

pub fn dagger(a: &Array2<Complex64>) -> Array2<Complex64> {
    let (m, n) = a.dim();
    let mut out = Array2::zeros((n, m));
    for i in 0..m {
        for j in 0..n {
            out[[j, i]] = a[[i, j]].conj();
        }
    }
    out
}

pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_unitary_matrix(a: &Array2<Complex64>, tol: f64) -> bool {
    let (m, n) = a.dim();
    if m != n {
        return false;
    }
    let prod = mat_mul(a, &dagger(a));
    max_abs_diff(&prod, &identity_matrix(n)) <= tol
}

/// Whether b = c·a for a single unimodular scalar c, within tol per entry.
pub fn equal_up_to_global_phase(a: &Array2<Complex64>, b: &Array2<Complex64>, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let mut pivot = (0usize, 0usize);
    let mut best = 0.0f64;
    for ((i, j), v) in a.indexed_iter() {
        if v.norm() > best {
            best = v.norm();
            pivot = (i, j);
        }
    }
    if best == 0.0 {
        return max_abs_diff(a, b) <= tol;
    }
    let ratio = b[[pivot.0, pivot.1]] / a[[pivot.0, pivot.1]];
    if (ratio.norm() - 1.0).abs() > tol {
        return false;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x * ratio - y).norm())
        .fold(0.0, f64::max)
        <= tol
}

// ---------------------------------------------------------------------------
// Structural gate application
// ---------------------------------------------------------------------------

/// The d×d Fourier matrix F[r,q] = ω^{rq}/√d (or its inverse).
fn fourier_block(d: u64, inverse: bool) -> Array2<Complex64> {
    let dd = d as usize;
    let scale = 1.0 / (d as f64).sqrt();
    let mut f = Array2::zeros((dd, dd));
    for r in 0..dd {
        for q in 0..dd {
            let e = (r * q) as i128;
            let v = root_power(d, if inverse { -e } else { e });
            f[[r, q]] = v * scale;
        }
    }
    f
}

/// Permutation-with-phases form of a structural gate: column q maps to row
/// perm[q] with coefficient phase[q].
fn structural_action(
    d: u64,
    n: usize,
    g: &GeneratorGate,
) -> Result<(Vec<usize>, Vec<Complex64>), GqvError> {
    let dd = d as usize;
    let size = total_dim(d, n)?;
    let rho = if d % 2 == 1 { 1i128 } else { 0 };
    let mut perm = Vec::with_capacity(size);
    let mut phase = Vec::with_capacity(size);
    for q in 0..size {
        let (target, e2) = match *g {
            GeneratorGate::Z { p, t } => {
                let p = coord_int(p)?;
                (q, 2 * p * digit(q, dd, n, t) as i128)
            }
            GeneratorGate::X { p, t } => {
                let p = coord_int(p)?;
                let qt = digit(q, dd, n, t) as i128;
                let v = (qt + p).rem_euclid(d as i128) as usize;
                (with_digit(q, dd, n, t, v), 0)
            }
            GeneratorGate::Y { p, t } => {
                let p = coord_int(p)?;
                let qt = digit(q, dd, n, t) as i128;
                let v = (qt + p).rem_euclid(d as i128) as usize;
                (with_digit(q, dd, n, t, v), p * (p + rho) + 2 * p * (qt + p))
            }
            GeneratorGate::P { p, t } => {
                let p = phase_int(p)?;
                let qt = digit(q, dd, n, t) as i128;
                (q, p * qt * (qt + rho))
            }
            GeneratorGate::Sq { s, t } => {
                let s = coord_int(s)?;
                let qt = digit(q, dd, n, t) as i128;
                let v = (s * qt).rem_euclid(d as i128) as usize;
                (with_digit(q, dd, n, t, v), 0)
            }
            GeneratorGate::Cz { a, b } => {
                let qa = digit(q, dd, n, a) as i128;
                let qb = digit(q, dd, n, b) as i128;
                (q, 2 * qa * qb)
            }
            GeneratorGate::Sum { c, t } => {
                let qc = digit(q, dd, n, c) as i128;
                let qt = digit(q, dd, n, t) as i128;
                let v = (qt + qc).rem_euclid(d as i128) as usize;
                (with_digit(q, dd, n, t, v), 0)
            }
            GeneratorGate::Swap { a, b } => {
                let qa = digit(q, dd, n, a);
                let qb = digit(q, dd, n, b);
                (with_digit(with_digit(q, dd, n, a, qb), dd, n, b, qa), 0)
            }
            GeneratorGate::F { .. } | GeneratorGate::Finv { .. } => {
                unreachable!("Fourier gates take the dense path")
            }
        };
        perm.push(target);
        phase.push(half_power(d, e2));
    }
    Ok((perm, phase))
}

/// G·U for a permutation-with-phases G.
fn left_apply_perm_phase(
    perm: &[usize],
    phase: &[Complex64],
    u: &Array2<Complex64>,
) -> Array2<Complex64> {
    let (rows, cols) = u.dim();
    let mut out = Array2::zeros((rows, cols));
    let us = u.as_slice().expect("row-major");
    let os = out.as_slice_mut().expect("row-major");
    for q in 0..rows {
        let src = &us[q * cols..(q + 1) * cols];
        let dst_base = perm[q] * cols;
        let ph = phase[q];
        for j in 0..cols {
            os[dst_base + j] = ph * src[j];
        }
    }
    out
}

/// (F on register t)·U, mixing row groups through the d×d Fourier block.
fn left_apply_fourier(
    d: u64,
    n: usize,
    t: usize,
    inverse: bool,
    u: &Array2<Complex64>,
) -> Array2<Complex64> {
    let dd = d as usize;
    let (rows, cols) = u.dim();
    let f = fourier_block(d, inverse);
    let stride = dd.pow((n - 1 - t) as u32);
    let mut out = Array2::zeros((rows, cols));
    let us = u.as_slice().expect("row-major");
    let os = out.as_slice_mut().expect("row-major");
    let groups = rows / (stride * dd);
    for hi in 0..groups {
        for lo in 0..stride {
            let base = hi * stride * dd + lo;
            for rt in 0..dd {
                let dst = (base + rt * stride) * cols;
                for k in 0..dd {
                    let coef = f[[rt, k]];
                    let src = (base + k * stride) * cols;
                    for j in 0..cols {
                        os[dst + j] += coef * us[src + j];
                    }
                }
            }
        }
    }
    out
}

fn left_apply_gate(
    d: u64,
    n: usize,
    g: &GeneratorGate,
    u: &Array2<Complex64>,
) -> Result<Array2<Complex64>, GqvError> {
    match *g {
        GeneratorGate::F { t } => Ok(left_apply_fourier(d, n, t, false, u)),
        GeneratorGate::Finv { t } => Ok(left_apply_fourier(d, n, t, true, u)),
        _ => {
            let (perm, phase) = structural_action(d, n, g)?;
            Ok(left_apply_perm_phase(&perm, &phase, u))
        }
    }
}

/// The full unitary of a circuit (leftmost gate applied first).
pub fn circuit_unitary(circuit: &CliffordCircuit) -> Result<DenseOperator, GqvError> {
    let d = finite_dim(circuit.spec())?;
    let size = total_dim(d, circuit.n())?;
    let mut u = identity_matrix(size);
    for g in circuit.gates() {
        u = left_apply_gate(d, circuit.n(), g, &u)?;
    }
    DenseOperator::new(circuit.spec(), circuit.n(), u)
}

// ---------------------------------------------------------------------------
// Gate matrices
// ---------------------------------------------------------------------------

/// Materialize one gate as an explicit matrix over max(targets)+1 registers
/// (one register for the extended single-register gates).
pub fn gate_matrix(spec: DimensionSpec, gate: &DenseGate) -> Result<DenseOperator, GqvError> {
    let d = finite_dim(spec)?;
    match gate {
        DenseGate::Generator(g) => {
            let n = g.targets().iter().max().copied().unwrap_or(0) + 1;
            g.validate(spec, n)?;
            let size = total_dim(d, n)?;
            let u = left_apply_gate(d, n, g, &identity_matrix(size))?;
            DenseOperator::new(spec, n, u)
        }
        DenseGate::Rotation { thetas } => {
            if thetas.len() != d as usize {
                return Err(GqvError::InvalidInput(format!(
                    "rotation over dimension {d} needs {d} angles, got {}",
                    thetas.len()
                )));
            }
            if thetas[0] != 0.0 {
                return Err(GqvError::InvalidInput(
                    "rotation angle at level 0 must be zero".into(),
                ));
            }
            let mut m = Array2::zeros((d as usize, d as usize));
            for (q, &th) in thetas.iter().enumerate() {
                m[[q, q]] = Complex64::from_polar(1.0, th);
            }
            DenseOperator::new(spec, 1, m)
        }
        DenseGate::CubicPhase { power, scale } => {
            if *scale == 0 {
                return Err(GqvError::InvalidInput(
                    "cubic-phase scale must be positive".into(),
                ));
            }
            let mut m = Array2::zeros((d as usize, d as usize));
            for q in 0..d as usize {
                let cube = (q as f64).powi(3);
                let angle = 2.0 * PI * cube * (*power as f64) / (*scale as f64 * d as f64);
                m[[q, q]] = Complex64::from_polar(1.0, angle);
            }
            DenseOperator::new(spec, 1, m)
        }
        DenseGate::Displacement { x, z } => {
            // Global factor ω^{−2⁻¹·x·z}: for odd d, 2⁻¹ = (d+1)/2 is exact
            // in the residue ring; for even d the product x·z is taken over
            // the integer lifts and the half lands on the 2d-th root of
            // unity, so Disp(x,z)·Disp(−x,−z) = I holds identically.
            let global = if d % 2 == 1 {
                let inv2 = d.div_ceil(2) as i128;
                root_power(d, -inv2 * *x as i128 * *z as i128)
            } else {
                half_power(d, -(*x as i128) * *z as i128)
            };
            let (xr, zr) = (
                (*x as i128).rem_euclid(d as i128) as u64,
                (*z as i128).rem_euclid(d as i128) as u64,
            );
            let mut m = Array2::zeros((d as usize, d as usize));
            for c in 0..d {
                let r = (c + xr) % d;
                m[[r as usize, c as usize]] = global * root_power(d, (zr * r) as i128);
            }
            DenseOperator::new(spec, 1, m)
        }
        DenseGate::PositionObservable => {
            let mut m = Array2::zeros((d as usize, d as usize));
            for q in 0..d as usize {
                m[[q, q]] = Complex64::new(q as f64, 0.0);
            }
            DenseOperator::new(spec, 1, m)
        }
        DenseGate::MomentumObservable => {
            let x = gate_matrix(spec, &DenseGate::PositionObservable)?;
            let f = fourier_block(d, false);
            let m = mat_mul(&f, &mat_mul(x.entries(), &dagger(&f)));
            DenseOperator::new(spec, 1, m)
        }
    }
}

// ---------------------------------------------------------------------------
// Pauli densification and the conjugation oracle
// ---------------------------------------------------------------------------

/// Permutation-with-phases form of a Pauli element over flat indices.
fn pauli_perm_phase(p: &PauliElement) -> Result<(Vec<usize>, Vec<Complex64>), GqvError> {
    let d = finite_dim(p.spec())?;
    let dd = d as usize;
    let n = p.n();
    let size = total_dim(d, n)?;
    let xi = phase_int(p.xi())?;
    let global = half_power(d, xi);
    let mut xs = Vec::with_capacity(n);
    let mut zs = Vec::with_capacity(n);
    for i in 0..n {
        xs.push(coord_int(p.x(i))?);
        zs.push(coord_int(p.z(i))?);
    }
    let mut perm = Vec::with_capacity(size);
    let mut phase = Vec::with_capacity(size);
    for c in 0..size {
        let mut target = c;
        let mut e: i128 = 0;
        for i in 0..n {
            let ci = digit(c, dd, n, i) as i128;
            e += zs[i] * ci;
            let v = (ci + xs[i]).rem_euclid(d as i128) as usize;
            target = with_digit(target, dd, n, i, v);
        }
        perm.push(target);
        phase.push(global * root_power(d, e));
    }
    Ok((perm, phase))
}

/// The explicit matrix of a Pauli element.
pub fn densify(p: &PauliElement) -> Result<DenseOperator, GqvError> {
    let d = finite_dim(p.spec())?;
    let size = total_dim(d, p.n())?;
    let (perm, phase) = pauli_perm_phase(p)?;
    let mut m = Array2::zeros((size, size));
    for c in 0..size {
        m[[perm[c], c]] = phase[c];
    }
    DenseOperator::new(p.spec(), p.n(), m)
}

/// Largest entry of U·densify(p)·U† − densify(conjugate(circuit, p)):
/// the ground-truth check that the symbolic rules track the matrices.
pub fn verify_conjugation(circuit: &CliffordCircuit, p: &PauliElement) -> Result<f64, GqvError> {
    circuit.spec().require_same(&p.spec())?;
    if circuit.n() != p.n() {
        return Err(GqvError::RegisterCountMismatch(circuit.n(), p.n()));
    }
    let u = circuit_unitary(circuit)?;
    let size = u.entries().nrows();
    let (perm, phase) = pauli_perm_phase(p)?;
    // U·P column-by-column: P sends e_c to phase[c]·e_perm[c].
    let mut up = Array2::zeros((size, size));
    for c in 0..size {
        let ph = phase[c];
        let src = perm[c];
        for r in 0..size {
            up[[r, c]] = ph * u.entries()[[r, src]];
        }
    }
    let lhs = mat_mul(&up, &dagger(u.entries()));
    let rhs = densify(&conjugate(circuit, p)?)?;
    Ok(max_abs_diff(&lhs, rhs.entries()))
}

// ---------------------------------------------------------------------------
// Bases and overlaps
// ---------------------------------------------------------------------------

/// A labelled basis state: computational e_q, Fourier F·e_q, or phase
/// P(1)·F·e_q.
pub fn basis_state(
    spec: DimensionSpec,
    kind: BasisKind,
    q: Coord,
) -> Result<StateVector, GqvError> {
    let d = finite_dim(spec)?;
    spec.check_coord(q)?;
    let q = coord_int(spec.coord_from_int(coord_int(q)? as i64))? as usize;
    let dd = d as usize;
    let rho = if d % 2 == 1 { 1i128 } else { 0 };
    let scale = 1.0 / (d as f64).sqrt();
    let mut v = Array1::zeros(dd);
    match kind {
        BasisKind::Computational => {
            v[q] = Complex64::new(1.0, 0.0);
        }
        BasisKind::Fourier => {
            for r in 0..dd {
                v[r] = root_power(d, (r * q) as i128) * scale;
            }
        }
        BasisKind::Phase => {
            for r in 0..dd {
                let r128 = r as i128;
                v[r] = half_power(d, r128 * (r128 + rho)) * root_power(d, (r * q) as i128) * scale;
            }
        }
    }
    StateVector::new(spec, 1, v)
}

/// ⟨a|b⟩.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64, GqvError> {
    a.spec().require_same(&b.spec())?;
    if a.n() != b.n() {
        return Err(GqvError::RegisterCountMismatch(a.n(), b.n()));
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries().iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Closed form for ⟨q|+_{q'}⟩ = ω^{qq'}/√d.
pub fn overlap_comp_fourier_closed(d: u64, q: u64, qp: u64) -> Complex64 {
    root_power(d, (q * qp) as i128) / (d as f64).sqrt()
}

/// Closed form for ⟨q|×_{q'}⟩ = ω^{qq'}·ω^{q(q+ϱ)/2}/√d.
pub fn overlap_comp_phase_closed(d: u64, q: u64, qp: u64) -> Complex64 {
    let rho = if d % 2 == 1 { 1i128 } else { 0 };
    let q128 = q as i128;
    root_power(d, (q * qp) as i128) * half_power(d, q128 * (q128 + rho)) / (d as f64).sqrt()
}

/// Closed form for ⟨+_q|×_{q'}⟩: a quadratic Gauss sum at b = 2(q'−q)+ϱ.
pub fn overlap_fourier_phase_closed(d: u64, q: u64, qp: u64) -> Complex64 {
    let rho = if d % 2 == 1 { 1i64 } else { 0 };
    let b = 2 * (qp as i64 - q as i64) + rho;
    gauss_closed(d, b)
}

/// Report from a mutual-unbiasedness check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MubReport {
    /// The common squared overlap magnitude (1/d when the check passes).
    pub k: f64,
    pub pass: bool,
}

/// Check that every cross-basis overlap between the given bases has squared
/// magnitude 1/d.
pub fn mub_check(spec: DimensionSpec, kinds: &[BasisKind]) -> Result<MubReport, GqvError> {
    let d = finite_dim(spec)?;
    let mut distinct: Vec<BasisKind> = Vec::new();
    for k in kinds {
        if !distinct.contains(k) {
            distinct.push(*k);
        }
    }
    if distinct.len() < 2 {
        return Err(GqvError::InvalidInput(
            "mutual unbiasedness needs at least two distinct bases".into(),
        ));
    }
    let k_expected = 1.0 / d as f64;
    let mut pass = true;
    for (i, a) in distinct.iter().enumerate() {
        for b in distinct.iter().skip(i + 1) {
            for q in 0..d {
                for qp in 0..d {
                    let va = basis_state(spec, *a, Coord::Int(q))?;
                    let vb = basis_state(spec, *b, Coord::Int(qp))?;
                    let s = overlap(&va, &vb)?.norm_sqr();
                    if (s - k_expected).abs() > tol::MUB {
                        pass = false;
                    }
                }
            }
        }
    }
    Ok(MubReport {
        k: k_expected,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Gauss sums
// ---------------------------------------------------------------------------

/// Brute-force and closed-form values of the normalized quadratic Gauss sum
/// (1/a)Σ_{k<a} e^{iπ(k²+bk)/a}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSumPair {
    pub brute: Complex64,
    pub closed: Complex64,
}

fn gauss_closed(a: u64, b: i64) -> Complex64 {
    let corner = Complex64::from_polar(1.0, PI / 4.0);
    let sq = Complex64::from_polar(1.0, -PI * (b as f64) * (b as f64) / (4.0 * a as f64));
    corner * sq / (a as f64).sqrt()
}

pub fn gauss_sum(a: u64, b: i64) -> Result<GaussSumPair, GqvError> {
    if a == 0 {
        return Err(GqvError::InvalidInput("gauss sum needs a > 0".into()));
    }
    if (a as i128 + b as i128).rem_euclid(2) != 0 {
        return Err(GqvError::InvalidInput("gauss sum needs a + b even".into()));
    }
    let mut brute = Complex64::new(0.0, 0.0);
    for k in 0..a as i128 {
        let e = k * k + b as i128 * k;
        // e^{iπe/a}: reduce modulo 2a to keep the angle small.
        let m = e.rem_euclid(2 * a as i128) as f64;
        brute += Complex64::from_polar(1.0, PI * m / a as f64);
    }
    brute /= a as f64;
    Ok(GaussSumPair {
        brute,
        closed: gauss_closed(a, b),
    })
}

// ---------------------------------------------------------------------------
// Eigenrelation suite
// ---------------------------------------------------------------------------

/// Max amplitude error of one eigen-action relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRelationReport {
    pub name: String,
    pub max_err: f64,
}

/// Exhaustively check the action of X(q'), Y(q'), Z(q') on all three bases:
/// each maps a basis state to a half-power phase times another basis state.
pub fn eigenrelation_suite(spec: DimensionSpec) -> Result<Vec<EigenRelationReport>, GqvError> {
    let d = finite_dim(spec)?;
    if d > MAX_SUITE_DIM {
        return Err(GqvError::InvalidInput(format!(
            "eigenrelation suite covers d ≤ {MAX_SUITE_DIM}, got {d}"
        )));
    }
    let rho = if d % 2 == 1 { 1i128 } else { 0 };
    let di = d as i128;

    // (axis name, basis, doubled phase exponent, target index) per relation.
    type Rel = (
        &'static str,
        BasisKind,
        fn(i128, i128, i128) -> i128,
        fn(i128, i128) -> i128,
    );
    let relations: [Rel; 9] = [
        (
            "X on computational",
            BasisKind::Computational,
            |_, _, _| 0,
            |q, qp| q + qp,
        ),
        (
            "Y on computational",
            BasisKind::Computational,
            |q, qp, rho| qp * (3 * qp + 2 * q + rho),
            |q, qp| q + qp,
        ),
        (
            "Z on computational",
            BasisKind::Computational,
            |q, qp, _| 2 * q * qp,
            |q, _| q,
        ),
        (
            "X on fourier",
            BasisKind::Fourier,
            |q, qp, _| -2 * q * qp,
            |q, _| q,
        ),
        (
            "Y on fourier",
            BasisKind::Fourier,
            |q, qp, rho| qp * (qp - 2 * q + rho),
            |q, qp| q + qp,
        ),
        (
            "Z on fourier",
            BasisKind::Fourier,
            |_, _, _| 0,
            |q, qp| q + qp,
        ),
        (
            "X on phase",
            BasisKind::Phase,
            |q, qp, rho| qp * (qp - 2 * q - rho),
            |q, qp| q - qp,
        ),
        ("Z on phase", BasisKind::Phase, |_, _, _| 0, |q, qp| q + qp),
        (
            "Y on phase",
            BasisKind::Phase,
            |q, qp, _| 2 * qp * qp - 2 * q * qp,
            |q, _| q,
        ),
    ];

    let mut reports = Vec::with_capacity(relations.len());
    for (name, kind, exp2, target) in relations {
        let axis = name.as_bytes()[0];
        let mut max_err = 0.0f64;
        for qp in 0..d {
            let gate = match axis {
                b'X' => GeneratorGate::X {
                    p: Coord::Int(qp),
                    t: 0,
                },
                b'Y' => GeneratorGate::Y {
                    p: Coord::Int(qp),
                    t: 0,
                },
                _ => GeneratorGate::Z {
                    p: Coord::Int(qp),
                    t: 0,
                },
            };
            let u = gate_matrix(spec, &DenseGate::Generator(gate))?;
            for q in 0..d {
                let input = basis_state(spec, kind, Coord::Int(q))?;
                let lhs = apply_operator(&u, &input)?;
                let tgt = target(q as i128, qp as i128).rem_euclid(di) as u64;
                let rhs_state = basis_state(spec, kind, Coord::Int(tgt))?;
                let ph = half_power(d, exp2(q as i128, qp as i128, rho));
                let err = lhs
                    .entries()
                    .iter()
                    .zip(rhs_state.entries().iter())
                    .map(|(l, r)| (l - ph * r).norm())
                    .fold(0.0, f64::max);
                max_err = max_err.max(err);
            }
        }
        reports.push(EigenRelationReport {
            name: name.to_string(),
            max_err,
        });
    }
    Ok(reports)
}

/// U|v⟩.
pub fn apply_operator(u: &DenseOperator, v: &StateVector) -> Result<StateVector, GqvError> {
    u.spec().require_same(&v.spec())?;
    if u.n() != v.n() {
        return Err(GqvError::RegisterCountMismatch(u.n(), v.n()));
    }
    let size = v.entries().len();
    let mut out = Array1::zeros(size);
    for r in 0..size {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in 0..size {
            acc += u.entries()[[r, c]] * v.entries()[c];
        }
        out[r] = acc;
    }
    StateVector::new(v.spec(), v.n(), out)
}

// ---------------------------------------------------------------------------
// Clifford witness
// ---------------------------------------------------------------------------

/// Whether g·X(1)·g† and g·Z(1)·g† are numerically of the form
/// ω^{ξ/2}X(a)Z(b): the operational test separating Clifford gates from
/// gates like the cubic-phase diagonal.
pub fn is_clifford_witness(g: &DenseOperator) -> Result<bool, GqvError> {
    let d = finite_dim(g.spec())?;
    if g.n() != 1 {
        return Err(GqvError::InvalidInput(
            "the Clifford witness takes a single-register gate".into(),
        ));
    }
    if d > MAX_SUITE_DIM {
        return Err(GqvError::InvalidInput(format!(
            "the Clifford witness covers d ≤ {MAX_SUITE_DIM}, got {d}"
        )));
    }
    let gd = dagger(g.entries());
    for axis in [
        GeneratorGate::X {
            p: Coord::Int(1),
            t: 0,
        },
        GeneratorGate::Z {
            p: Coord::Int(1),
            t: 0,
        },
    ] {
        let b = gate_matrix(g.spec(), &DenseGate::Generator(axis))?;
        let m = mat_mul(g.entries(), &mat_mul(b.entries(), &gd));
        if !has_pauli_form(d, &m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether m ≈ c·X(a)Z(b) for some unimodular c and integers a, b: a cyclic
/// shift permutation whose phases run through consecutive powers of a d-th
/// root of unity.
fn has_pauli_form(d: u64, m: &Array2<Complex64>) -> bool {
    let dd = d as usize;
    let eps = tol::WITNESS;
    // Column q must hold exactly one non-negligible entry, unimodular.
    let mut rows = vec![0usize; dd];
    let mut vals = vec![Complex64::new(0.0, 0.0); dd];
    for q in 0..dd {
        let mut found: Option<usize> = None;
        for r in 0..dd {
            if m[[r, q]].norm() > eps {
                if found.is_some() {
                    return false;
                }
                found = Some(r);
            }
        }
        match found {
            Some(r) if (m[[r, q]].norm() - 1.0).abs() <= eps => {
                rows[q] = r;
                vals[q] = m[[r, q]];
            }
            _ => return false,
        }
    }
    // The permutation must be a uniform shift q ↦ q + a.
    let a = (rows[0] + dd) % dd;
    for (q, &row) in rows.iter().enumerate() {
        if row != (q + a) % dd {
            return false;
        }
    }
    // Phases must be e_q = e_0·ω^{bq} for an integer b: fit b from the first
    // ratio, reject a non-integer fit, then verify every entry.
    let b = if dd == 1 {
        0i128
    } else {
        let ratio = vals[1] / vals[0];
        let fit = ratio.arg() * d as f64 / (2.0 * PI);
        let b = fit.round();
        if (fit - b).abs() > 1e-4 {
            return false;
        }
        b as i128
    };
    for q in 0..dd {
        let expect = vals[0] * root_power(d, b * q as i128);
        if (vals[q] - expect).norm() > eps {
            return false;
        }
    }
    true
}
