//! Named verification suites with JSON-ready reports: group-law checks,
//! dense-oracle conjugation, basis unbiasedness, Gauss sums, eigenrelations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::random_circuit;
use crate::dense::{
    basis_state, eigenrelation_suite, gauss_sum, mub_check, overlap, overlap_comp_fourier_closed,
    overlap_comp_phase_closed, overlap_fourier_phase_closed, verify_conjugation, BasisKind,
};
use crate::error::GqvError;
use crate::pauli::PauliElement;
use crate::ring::{Coord, DimensionSpec};
use crate::text::render_pauli_literal;
use crate::tol;

/// Configuration shared by the verification suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Qudit dimensions to cover.
    pub dims: Vec<u64>,
    /// Registers per case for circuit-based suites.
    pub n: usize,
    /// Random cases per dimension.
    pub cases: u64,
    pub seed: u64,
    /// Largest Gauss-sum denominator.
    pub a_max: u64,
    /// Numeric threshold for the oracle-backed checks.
    pub tolerance: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dims: vec![2, 3, 5],
            n: 2,
            cases: 200,
            seed: 1,
            a_max: 16,
            tolerance: tol::suite_tolerance(),
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub max_error: f64,
    pub cases: u64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Aggregated outcome of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

pub const SUITE_NAMES: [&str; 5] = ["pauli", "clifford", "mub", "gauss", "eigen"];

/// Running tally shared by the suite bodies.
struct Tally {
    max_error: f64,
    cases: u64,
    counterexample: Option<String>,
    tolerance: f64,
}

impl Tally {
    fn new(tolerance: f64) -> Self {
        Tally {
            max_error: 0.0,
            cases: 0,
            counterexample: None,
            tolerance,
        }
    }

    fn record(&mut self, err: f64, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if err > self.max_error {
            self.max_error = err;
        }
        if err > self.tolerance && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn into_report(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            pass: self.counterexample.is_none(),
            max_error: self.max_error,
            cases: self.cases,
            tolerance: self.tolerance,
            counterexample: self.counterexample,
        }
    }
}

fn real_of(c: Coord) -> f64 {
    match c {
        Coord::Int(v) => v as f64,
        Coord::Real(r) => r,
    }
}

/// Numeric distance between two Pauli elements: coordinate gaps plus the
/// unit-circle distance of their phases (0/1 indicator for qudits).
fn pauli_deviation(a: &PauliElement, b: &PauliElement) -> Result<f64, GqvError> {
    let spec = a.spec();
    match spec {
        DimensionSpec::Qudit(_) => Ok(if a.equals(b)? { 0.0 } else { 1.0 }),
        DimensionSpec::Continuous => {
            let mut worst: f64 = 0.0;
            for i in 0..a.n() {
                worst = worst.max((real_of(a.x(i)) - real_of(b.x(i))).abs());
                worst = worst.max((real_of(a.z(i)) - real_of(b.z(i))).abs());
            }
            let pa = spec.omega_pow(a.xi(), true)?;
            let pb = spec.omega_pow(b.xi(), true)?;
            Ok(worst.max(pa.dist(&pb)))
        }
    }
}

fn spec_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn spec_label(spec: DimensionSpec) -> String {
    match spec {
        DimensionSpec::Qudit(d) => format!("d={d}"),
        DimensionSpec::Continuous => "cv".to_string(),
    }
}

/// Group-law suite: associativity, the commutation phase convention,
/// inverses, and integer powers, over every dimension plus the continuous
/// case.
fn run_pauli(config: &SuiteConfig) -> Result<SuiteReport, GqvError> {
    let mut tally = Tally::new(config.tolerance);
    let mut specs: Vec<DimensionSpec> = Vec::new();
    for &d in &config.dims {
        specs.push(DimensionSpec::qudit(d)?);
    }
    specs.push(DimensionSpec::continuous());

    for (idx, &spec) in specs.iter().enumerate() {
        let mut rng = spec_rng(config.seed, idx);
        let n = config.n.max(1);
        for _ in 0..config.cases {
            let a = PauliElement::random(&mut rng, spec, n)?;
            let b = PauliElement::random(&mut rng, spec, n)?;
            let c = PauliElement::random(&mut rng, spec, n)?;
            let witness = |tag: &str| {
                let tag = tag.to_string();
                let (la, lb, lc) = (
                    render_pauli_literal(&a),
                    render_pauli_literal(&b),
                    render_pauli_literal(&c),
                );
                let label = spec_label(spec);
                move || format!("{label} {tag}: a=[{la}] b=[{lb}] c=[{lc}]")
            };

            // Associativity.
            let ab_c = a.compose(&b)?.compose(&c)?;
            let a_bc = a.compose(&b.compose(&c)?)?;
            tally.record(pauli_deviation(&ab_c, &a_bc)?, witness("associativity"));

            // a·b = ω^c · b·a with c the commutation phase.
            let comm = a.commutation_phase(&b)?;
            let doubled = spec.phase_add(comm, comm)?;
            let ab = a.compose(&b)?;
            let ba_shifted = b.compose(&a)?.with_added_phase(doubled)?;
            tally.record(pauli_deviation(&ab, &ba_shifted)?, witness("commutation"));

            // Inverse.
            let prod = a.compose(&a.inverse()?)?;
            let id = PauliElement::identity(spec, n)?;
            tally.record(pauli_deviation(&prod, &id)?, witness("inverse"));

            // Integer power against repeated composition.
            let reps = match spec {
                DimensionSpec::Qudit(d) => rng.random_range(0..d.min(9)),
                DimensionSpec::Continuous => rng.random_range(0..4u64),
            };
            let t = match spec {
                DimensionSpec::Qudit(_) => Coord::Int(reps),
                DimensionSpec::Continuous => Coord::Real(reps as f64),
            };
            let by_formula = a.power(t)?;
            let mut acc = PauliElement::identity(spec, n)?;
            for _ in 0..reps {
                acc = acc.compose(&a)?;
            }
            tally.record(pauli_deviation(&by_formula, &acc)?, witness("power"));
        }
    }
    Ok(tally.into_report("pauli"))
}

/// Dense-oracle suite: random circuits conjugating random Pauli elements,
/// checked entrywise against explicit matrices.
fn run_clifford(config: &SuiteConfig) -> Result<SuiteReport, GqvError> {
    let mut tally = Tally::new(config.tolerance);
    for (idx, &d) in config.dims.iter().enumerate() {
        let spec = DimensionSpec::qudit(d)?;
        let mut rng = spec_rng(config.seed, idx);
        let n = config.n.max(1);
        for _ in 0..config.cases {
            let circuit = random_circuit(&mut rng, spec, n, 20);
            let p = PauliElement::random(&mut rng, spec, n)?;
            let err = verify_conjugation(&circuit, &p)?;
            tally.record(err, || {
                format!(
                    "d={d} n={n} p=[{}] circuit:\n{}",
                    render_pauli_literal(&p),
                    crate::text::render_circuit(&circuit)
                )
            });
        }
    }
    Ok(tally.into_report("clifford"))
}

const ALL_BASES: [BasisKind; 3] = [
    BasisKind::Computational,
    BasisKind::Fourier,
    BasisKind::Phase,
];

/// Basis suite: every cross-basis overlap has squared magnitude 1/d, and the
/// closed-form overlap expressions match brute-force inner products.
fn run_mub(config: &SuiteConfig) -> Result<SuiteReport, GqvError> {
    let mut tally = Tally::new(tol::MUB);
    for &d in &config.dims {
        let spec = DimensionSpec::qudit(d)?;
        let report = mub_check(spec, &ALL_BASES)?;
        tally.record(if report.pass { 0.0 } else { 1.0 }, || {
            format!("d={d}: common overlap magnitude check failed")
        });

        let k = 1.0 / d as f64;
        for (i, &a) in ALL_BASES.iter().enumerate() {
            for &b in ALL_BASES.iter().skip(i + 1) {
                for q in 0..d {
                    for qp in 0..d {
                        let va = basis_state(spec, a, Coord::Int(q))?;
                        let vb = basis_state(spec, b, Coord::Int(qp))?;
                        let ov = overlap(&va, &vb)?;
                        tally.record((ov.norm_sqr() - k).abs(), || {
                            format!("d={d} |<{a} {q}|{b} {qp}>|^2 != 1/d")
                        });
                        let closed = match (a, b) {
                            (BasisKind::Computational, BasisKind::Fourier) => {
                                overlap_comp_fourier_closed(d, q, qp)
                            }
                            (BasisKind::Computational, BasisKind::Phase) => {
                                overlap_comp_phase_closed(d, q, qp)
                            }
                            (BasisKind::Fourier, BasisKind::Phase) => {
                                overlap_fourier_phase_closed(d, q, qp)
                            }
                            _ => unreachable!("ordered pairs over three bases"),
                        };
                        tally.record((ov - closed).norm(), || {
                            format!("d={d} closed form <{a} {q}|{b} {qp}> mismatch")
                        });
                    }
                }
            }
        }
    }
    Ok(tally.into_report("mub"))
}

/// Gauss-sum suite: brute quadratic sums against the closed form for every
/// valid parameter pair up to the configured bound.
fn run_gauss(config: &SuiteConfig) -> Result<SuiteReport, GqvError> {
    let mut tally = Tally::new(tol::GAUSS);
    for a in 1..=config.a_max.max(1) {
        let bound = 2 * a as i64;
        for b in -bound..=bound {
            if (a as i64 + b) % 2 != 0 {
                continue;
            }
            let pair = gauss_sum(a, b)?;
            tally.record((pair.brute - pair.closed).norm(), || {
                format!(
                    "a={a} b={b}: brute {} vs closed {}",
                    pair.brute, pair.closed
                )
            });
        }
    }
    Ok(tally.into_report("gauss"))
}

/// Eigenrelation suite: the nine basis-action identities, exhaustively.
fn run_eigen(config: &SuiteConfig) -> Result<SuiteReport, GqvError> {
    let mut tally = Tally::new(tol::DENSE_ENTRY);
    for &d in &config.dims {
        let spec = DimensionSpec::qudit(d)?;
        for rel in eigenrelation_suite(spec)? {
            tally.record(rel.max_err, || format!("d={d} relation {}", rel.name));
        }
    }
    Ok(tally.into_report("eigen"))
}

/// Run one suite by name.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport, GqvError> {
    match name {
        "pauli" => run_pauli(config),
        "clifford" => run_clifford(config),
        "mub" => run_mub(config),
        "gauss" => run_gauss(config),
        "eigen" => run_eigen(config),
        other => Err(GqvError::InvalidInput(format!(
            "unknown suite `{other}` (expected one of {SUITE_NAMES:?} or `all`)"
        ))),
    }
}

/// Run one suite or `all`, aggregating into a single report.
pub fn run_verify(name: &str, config: &SuiteConfig) -> Result<VerifyReport, GqvError> {
    let names: Vec<&str> = if name == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut suites = Vec::with_capacity(names.len());
    for n in names {
        suites.push(run_suite(n, config)?);
    }
    Ok(VerifyReport {
        pass: suites.iter().all(|s| s.pass),
        seed: config.seed,
        suites,
    })
}
