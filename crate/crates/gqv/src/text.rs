//! Text formats: the circuit file grammar and Pauli literals, with
//! renderers that round-trip through the parsers.

use crate::clifford::{CliffordCircuit, GeneratorGate};
use crate::error::GqvError;
use crate::pauli::PauliElement;
use crate::ring::{Coord, DimensionSpec, PhaseExp};

fn err(line: usize, message: impl Into<String>) -> GqvError {
    GqvError::ParseError {
        line,
        message: message.into(),
    }
}

fn parse_register(token: &str, line: usize) -> Result<usize, GqvError> {
    token
        .parse::<usize>()
        .map_err(|_| err(line, format!("expected a register index, got `{token}`")))
}

fn parse_coord(spec: DimensionSpec, token: &str, line: usize) -> Result<Coord, GqvError> {
    if spec.is_continuous() {
        let v: f64 = token
            .parse()
            .map_err(|_| err(line, format!("expected a decimal parameter, got `{token}`")))?;
        spec.coord_from_real(v)
            .map_err(|e| err(line, e.to_string()))
    } else {
        let v: i64 = token.parse().map_err(|_| {
            err(
                line,
                format!("expected an integer parameter, got `{token}`"),
            )
        })?;
        Ok(spec.coord_from_int(v))
    }
}

fn parse_phase(spec: DimensionSpec, token: &str, line: usize) -> Result<PhaseExp, GqvError> {
    if spec.is_continuous() {
        let v: f64 = token
            .parse()
            .map_err(|_| err(line, format!("expected a decimal parameter, got `{token}`")))?;
        spec.phase_from_real(v)
            .map_err(|e| err(line, e.to_string()))
    } else {
        let v: i64 = token.parse().map_err(|_| {
            err(
                line,
                format!("expected an integer parameter, got `{token}`"),
            )
        })?;
        Ok(spec.phase_from_int(v))
    }
}

/// Render a coordinate as circuit-file text: canonical residue for qudits,
/// a round-tripping decimal for continuous values.
pub fn coord_text(c: Coord) -> String {
    match c {
        Coord::Int(v) => v.to_string(),
        Coord::Real(r) => real_text(r),
    }
}

/// Render a phase exponent as circuit-file text.
pub fn phase_text(p: PhaseExp) -> String {
    match p {
        PhaseExp::Int(v) => v.to_string(),
        PhaseExp::Real(r) => real_text(r),
    }
}

fn real_text(r: f64) -> String {
    if r.fract() == 0.0 && r.abs() < 1e15 {
        format!("{r:.1}")
    } else {
        format!("{r}")
    }
}

/// Parse the circuit file grammar: a `dim` line, a `gqvs` line, then one
/// gate per line; `#` starts a comment. Errors carry 1-based line numbers.
pub fn parse_circuit(text: &str) -> Result<CliffordCircuit, GqvError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, content)| !content.is_empty());

    let (dim_line, dim_text) = lines.next().ok_or_else(|| err(1, "missing `dim` header"))?;
    let mut tok = dim_text.split_whitespace();
    if tok.next() != Some("dim") {
        return Err(err(dim_line, "first line must be `dim <d>` or `dim cv`"));
    }
    let spec = match tok.next() {
        Some("cv") => DimensionSpec::continuous(),
        Some(word) => {
            let d: u64 = word
                .parse()
                .map_err(|_| err(dim_line, format!("bad dimension `{word}`")))?;
            DimensionSpec::qudit(d).map_err(|e| err(dim_line, e.to_string()))?
        }
        None => return Err(err(dim_line, "missing dimension after `dim`")),
    };
    if tok.next().is_some() {
        return Err(err(dim_line, "trailing tokens after the dimension"));
    }

    let (n_line, n_text) = lines
        .next()
        .ok_or_else(|| err(dim_line + 1, "missing `gqvs` header"))?;
    let mut tok = n_text.split_whitespace();
    if tok.next() != Some("gqvs") {
        return Err(err(n_line, "second line must be `gqvs <n>`"));
    }
    let n: usize = match tok.next() {
        Some(word) => word
            .parse()
            .map_err(|_| err(n_line, format!("bad register count `{word}`")))?,
        None => return Err(err(n_line, "missing register count after `gqvs`")),
    };
    if n == 0 {
        return Err(err(n_line, "register count must be at least 1"));
    }
    if tok.next().is_some() {
        return Err(err(n_line, "trailing tokens after the register count"));
    }

    let mut gates = Vec::new();
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let name = tokens[0];
        let want = |k: usize| -> Result<(), GqvError> {
            if tokens.len() == k + 1 {
                Ok(())
            } else {
                Err(err(
                    line,
                    format!("`{name}` takes {k} argument(s), got {}", tokens.len() - 1),
                ))
            }
        };
        let gate = match name {
            "F" => {
                want(1)?;
                GeneratorGate::F {
                    t: parse_register(tokens[1], line)?,
                }
            }
            "FINV" => {
                want(1)?;
                GeneratorGate::Finv {
                    t: parse_register(tokens[1], line)?,
                }
            }
            "P" => {
                want(2)?;
                GeneratorGate::P {
                    p: parse_phase(spec, tokens[1], line)?,
                    t: parse_register(tokens[2], line)?,
                }
            }
            "Z" => {
                want(2)?;
                GeneratorGate::Z {
                    p: parse_coord(spec, tokens[1], line)?,
                    t: parse_register(tokens[2], line)?,
                }
            }
            "X" => {
                want(2)?;
                GeneratorGate::X {
                    p: parse_coord(spec, tokens[1], line)?,
                    t: parse_register(tokens[2], line)?,
                }
            }
            "Y" => {
                want(2)?;
                GeneratorGate::Y {
                    p: parse_coord(spec, tokens[1], line)?,
                    t: parse_register(tokens[2], line)?,
                }
            }
            "SQ" => {
                want(2)?;
                GeneratorGate::Sq {
                    s: parse_coord(spec, tokens[1], line)?,
                    t: parse_register(tokens[2], line)?,
                }
            }
            "CZ" => {
                want(2)?;
                GeneratorGate::Cz {
                    a: parse_register(tokens[1], line)?,
                    b: parse_register(tokens[2], line)?,
                }
            }
            "SUM" => {
                want(2)?;
                GeneratorGate::Sum {
                    c: parse_register(tokens[1], line)?,
                    t: parse_register(tokens[2], line)?,
                }
            }
            "SWAP" => {
                want(2)?;
                GeneratorGate::Swap {
                    a: parse_register(tokens[1], line)?,
                    b: parse_register(tokens[2], line)?,
                }
            }
            other => return Err(err(line, format!("unknown gate `{other}`"))),
        };
        gate.validate(spec, n)
            .map_err(|e| err(line, e.to_string()))?;
        gates.push(gate);
    }
    CliffordCircuit::new(spec, n, gates)
}

/// Render one gate as a circuit-file line.
pub fn gate_text(gate: &GeneratorGate) -> String {
    match *gate {
        GeneratorGate::F { t } => format!("F {t}"),
        GeneratorGate::Finv { t } => format!("FINV {t}"),
        GeneratorGate::P { p, t } => format!("P {} {t}", phase_text(p)),
        GeneratorGate::Z { p, t } => format!("Z {} {t}", coord_text(p)),
        GeneratorGate::X { p, t } => format!("X {} {t}", coord_text(p)),
        GeneratorGate::Y { p, t } => format!("Y {} {t}", coord_text(p)),
        GeneratorGate::Sq { s, t } => format!("SQ {} {t}", coord_text(s)),
        GeneratorGate::Cz { a, b } => format!("CZ {a} {b}"),
        GeneratorGate::Sum { c, t } => format!("SUM {c} {t}"),
        GeneratorGate::Swap { a, b } => format!("SWAP {a} {b}"),
    }
}

/// Render a circuit in the file grammar; `parse_circuit` reads it back.
pub fn render_circuit(circuit: &CliffordCircuit) -> String {
    let mut out = String::new();
    match circuit.spec() {
        DimensionSpec::Qudit(d) => out.push_str(&format!("dim {d}\n")),
        DimensionSpec::Continuous => out.push_str("dim cv\n"),
    }
    out.push_str(&format!("gqvs {}\n", circuit.n()));
    for gate in circuit.gates() {
        out.push_str(&gate_text(gate));
        out.push('\n');
    }
    out
}

/// Parse a Pauli literal `xi:<v> x:<v1,..,vn> z:<v1,..,vn>`.
pub fn parse_pauli_literal(
    spec: DimensionSpec,
    n: usize,
    text: &str,
) -> Result<PauliElement, GqvError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(GqvError::InvalidInput(
            "a Pauli literal has three fields: xi:<v> x:<v1,..> z:<v1,..>".into(),
        ));
    }
    let field = |idx: usize, key: &str| -> Result<&str, GqvError> {
        fields[idx].strip_prefix(key).ok_or_else(|| {
            GqvError::InvalidInput(format!("field {} must start with `{key}`", idx + 1))
        })
    };
    let xi_text = field(0, "xi:")?;
    let xi = if spec.is_continuous() {
        let v: f64 = xi_text
            .parse()
            .map_err(|_| GqvError::InvalidInput(format!("bad phase exponent `{xi_text}`")))?;
        spec.phase_from_real(v)?
    } else {
        let v: i64 = xi_text
            .parse()
            .map_err(|_| GqvError::InvalidInput(format!("bad phase exponent `{xi_text}`")))?;
        spec.phase_from_int(v)
    };
    let coords = |text: &str| -> Result<Vec<Coord>, GqvError> {
        text.split(',')
            .map(|t| {
                if spec.is_continuous() {
                    let v: f64 = t
                        .parse()
                        .map_err(|_| GqvError::InvalidInput(format!("bad coordinate `{t}`")))?;
                    spec.coord_from_real(v)
                } else {
                    let v: i64 = t
                        .parse()
                        .map_err(|_| GqvError::InvalidInput(format!("bad coordinate `{t}`")))?;
                    Ok(spec.coord_from_int(v))
                }
            })
            .collect()
    };
    let xs = coords(field(1, "x:")?)?;
    let zs = coords(field(2, "z:")?)?;
    if xs.len() != n || zs.len() != n {
        return Err(GqvError::RegisterCountMismatch(xs.len().max(zs.len()), n));
    }
    PauliElement::new(spec, xi, xs, zs)
}

/// Render a Pauli element as a literal that `parse_pauli_literal` reads back.
pub fn render_pauli_literal(p: &PauliElement) -> String {
    let coords = |cs: &[Coord]| {
        cs.iter()
            .map(|&c| coord_text(c))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "xi:{} x:{} z:{}",
        phase_text(p.xi()),
        coords(p.xs()),
        coords(p.zs())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::random_circuit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_a_single_fourier_gate() {
        let c = parse_circuit("dim 3\ngqvs 1\nF 0").unwrap();
        assert_eq!(c.spec(), DimensionSpec::qudit(3).unwrap());
        assert_eq!(c.n(), 1);
        assert_eq!(c.gates(), &[GeneratorGate::F { t: 0 }]);
    }

    #[test]
    fn parses_a_continuous_circuit() {
        let c = parse_circuit("dim cv\ngqvs 2\nSQ 2.0 0\nCZ 0 1").unwrap();
        assert_eq!(c.spec(), DimensionSpec::continuous());
        assert_eq!(c.n(), 2);
        assert_eq!(
            c.gates(),
            &[
                GeneratorGate::Sq {
                    s: Coord::Real(2.0),
                    t: 0
                },
                GeneratorGate::Cz { a: 0, b: 1 },
            ]
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text =
            "# header comment\n\ndim 2\ngqvs 2  # two registers\n\nF 0 # fourier\nSWAP 0 1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn non_unit_squeeze_is_rejected_with_its_line() {
        let e = parse_circuit("dim 4\ngqvs 1\nSQ 2 0").unwrap_err();
        match e {
            GqvError::ParseError { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("unit"), "message: {message}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_two_register_targets_are_rejected() {
        let e = parse_circuit("dim 3\ngqvs 2\nCZ 1 1").unwrap_err();
        assert!(matches!(e, GqvError::ParseError { line: 3, .. }));
    }

    #[test]
    fn out_of_range_register_is_rejected() {
        let e = parse_circuit("dim 3\ngqvs 1\nF 2").unwrap_err();
        assert!(matches!(e, GqvError::ParseError { line: 3, .. }));
    }

    #[test]
    fn unknown_gate_and_bad_headers_carry_line_numbers() {
        assert!(matches!(
            parse_circuit("dim 3\ngqvs 1\nQQ 0").unwrap_err(),
            GqvError::ParseError { line: 3, .. }
        ));
        assert!(matches!(
            parse_circuit("gqvs 1\ndim 3").unwrap_err(),
            GqvError::ParseError { line: 1, .. }
        ));
        assert!(matches!(
            parse_circuit("dim 1\ngqvs 1").unwrap_err(),
            GqvError::ParseError { line: 1, .. }
        ));
        assert!(matches!(
            parse_circuit("dim 3").unwrap_err(),
            GqvError::ParseError { line: 2, .. }
        ));
        assert!(matches!(
            parse_circuit("").unwrap_err(),
            GqvError::ParseError { line: 1, .. }
        ));
    }

    #[test]
    fn headers_allow_an_empty_gate_list() {
        let c = parse_circuit("dim 5\ngqvs 3\n").unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn render_parse_round_trip_on_random_circuits() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for spec in [
            DimensionSpec::qudit(2).unwrap(),
            DimensionSpec::qudit(5).unwrap(),
            DimensionSpec::qudit(12).unwrap(),
            DimensionSpec::continuous(),
        ] {
            for n in 1..=3usize {
                for _ in 0..25 {
                    let c = random_circuit(&mut rng, spec, n, 15);
                    let text = render_circuit(&c);
                    let back = parse_circuit(&text).unwrap();
                    assert_eq!(&back, &c, "round trip failed for:\n{text}");
                }
            }
        }
    }

    #[test]
    fn pauli_literal_round_trip() {
        let spec = DimensionSpec::qudit(3).unwrap();
        let p = parse_pauli_literal(spec, 2, "xi:5 x:1,2 z:0,1").unwrap();
        assert_eq!(p.xi(), PhaseExp::Int(5));
        assert_eq!(p.xs(), &[Coord::Int(1), Coord::Int(2)]);
        let text = render_pauli_literal(&p);
        assert_eq!(text, "xi:5 x:1,2 z:0,1");
        assert!(parse_pauli_literal(spec, 2, &text)
            .unwrap()
            .equals(&p)
            .unwrap());

        let cv = DimensionSpec::continuous();
        let p = parse_pauli_literal(cv, 1, "xi:0.5 x:-1.25 z:2.0").unwrap();
        let text = render_pauli_literal(&p);
        assert!(parse_pauli_literal(cv, 1, &text)
            .unwrap()
            .equals(&p)
            .unwrap());
    }

    #[test]
    fn pauli_literal_errors() {
        let spec = DimensionSpec::qudit(3).unwrap();
        assert!(matches!(
            parse_pauli_literal(spec, 2, "xi:0 x:1 z:0,0"),
            Err(GqvError::RegisterCountMismatch(_, _))
        ));
        assert!(matches!(
            parse_pauli_literal(spec, 1, "x:1 z:0"),
            Err(GqvError::InvalidInput(_))
        ));
        assert!(matches!(
            parse_pauli_literal(spec, 1, "xi:z x:1 z:0"),
            Err(GqvError::InvalidInput(_))
        ));
    }

    #[test]
    fn canonical_rendering_of_negative_parameters() {
        let spec = DimensionSpec::qudit(5).unwrap();
        let c = parse_circuit("dim 5\ngqvs 1\nZ -1 0").unwrap();
        let text = render_circuit(&c);
        assert!(text.contains("Z 4 0"), "got: {text}");
        assert_eq!(parse_circuit(&text).unwrap(), c);
        let _ = spec;
    }
}
