//! JSON state descriptions accepted by the command-line tool.
//!
//! One of
//! `{"dense": [[[re, im], ...], ...], "dims": [2, 2]}`,
//! `{"family": "werner", "f": 0.9}`,
//! `{"family": "bell_diagonal", "gamma": [g1, g2, g3, g4]}`,
//! `{"family": "mq_b" | "mq_c" | "mq_d", "purity": P}` or
//! `{"family": "classical_quantum", "probs": [...], "basis": "computational" | [theta, phi], "rho_b": [dense, ...]}`.

use serde_json::Value;

use super::{
    bell_diagonal, classical_quantum, mq_family, werner, BellDiagonalSpectrum, DensityMatrix, MqFamily,
    OrthonormalBasis, WernerParameter,
};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// A parsed state together with how it was described.
#[derive(Debug, Clone)]
pub struct StateSource {
    pub state: DensityMatrix,
    /// Present when the state is Bell-diagonal, however it was described.
    pub bell_spectrum: Option<BellDiagonalSpectrum>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what} must be a number")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn number_array(v: &Value, what: &str) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of numbers")))?
        .iter()
        .map(|x| number(x, what))
        .collect()
}

/// Parses `[[[re, im], ...], ...]`; plain numbers are accepted as real entries.
pub fn parse_dense(v: &Value) -> Result<ComplexMatrix> {
    let rows = v.as_array().ok_or_else(|| bad("dense must be an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("dense rows must be arrays"))?;
        let mut parsed = Vec::with_capacity(row.len());
        for entry in row {
            let z = match entry {
                Value::Array(pair) if pair.len() == 2 => {
                    C64::new(number(&pair[0], "matrix entry")?, number(&pair[1], "matrix entry")?)
                }
                Value::Number(_) => C64::new(number(entry, "matrix entry")?, 0.0),
                _ => return Err(bad("matrix entries must be [re, im] pairs")),
            };
            parsed.push(z);
        }
        out.push(parsed);
    }
    ComplexMatrix::from_rows(&out)
}

pub fn parse_state_json(text: &str) -> Result<StateSource> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    parse_state_value(&v)
}

pub fn parse_state_value(v: &Value) -> Result<StateSource> {
    if !v.is_object() {
        return Err(bad("state description must be a JSON object"));
    }
    if let Some(dense) = v.get("dense") {
        let m = parse_dense(dense)?;
        let n = m.ensure_square()?;
        let (da, db) = match v.get("dims") {
            Some(d) => {
                let dims = number_array(d, "dims")?;
                if dims.len() != 2 || dims.iter().any(|x| *x < 1.0 || x.fract() != 0.0) {
                    return Err(bad("dims must be two positive integers"));
                }
                (dims[0] as usize, dims[1] as usize)
            }
            None if n == 4 => (2, 2),
            None => return Err(bad("missing field \"dims\"")),
        };
        let state = DensityMatrix::from_dense(m, da, db)?;
        return Ok(StateSource {
            bell_spectrum: BellDiagonalSpectrum::of_state(&state),
            state,
        });
    }
    let family = field(v, "family")?
        .as_str()
        .ok_or_else(|| bad("family must be a string"))?;
    match family {
        "werner" => {
            let f = WernerParameter::new(number(field(v, "f")?, "f")?)?;
            Ok(StateSource {
                state: werner(f),
                bell_spectrum: Some(f.spectrum()),
            })
        }
        "bell_diagonal" => {
            let g = number_array(field(v, "gamma")?, "gamma")?;
            let gamma: [f64; 4] = g
                .try_into()
                .map_err(|_| bad("gamma must have exactly four entries"))?;
            let spectrum = BellDiagonalSpectrum::new(gamma)?;
            Ok(StateSource {
                state: bell_diagonal(&spectrum),
                bell_spectrum: Some(spectrum),
            })
        }
        "mq_b" | "mq_c" | "mq_d" => {
            let fam = match family {
                "mq_b" => MqFamily::B,
                "mq_c" => MqFamily::C,
                _ => MqFamily::D,
            };
            let p = number(field(v, "purity")?, "purity")?;
            let state = mq_family(fam, p)?;
            Ok(StateSource {
                bell_spectrum: BellDiagonalSpectrum::of_state(&state),
                state,
            })
        }
        "classical_quantum" => {
            let probs = number_array(field(v, "probs")?, "probs")?;
            let basis = match v.get("basis") {
                None => OrthonormalBasis::computational(probs.len()),
                Some(Value::String(s)) if s == "computational" => OrthonormalBasis::computational(probs.len()),
                Some(b @ Value::Array(_)) => {
                    let angles = number_array(b, "basis")?;
                    if angles.len() != 2 {
                        return Err(bad("basis angles must be [theta, phi]"));
                    }
                    OrthonormalBasis::qubit(angles[0], angles[1])
                }
                Some(_) => return Err(bad("basis must be \"computational\" or [theta, phi]")),
            };
            let rho_b = field(v, "rho_b")?
                .as_array()
                .ok_or_else(|| bad("rho_b must be an array of dense matrices"))?
                .iter()
                .map(|m| DensityMatrix::single(parse_dense(m)?))
                .collect::<Result<Vec<_>>>()?;
            let state = classical_quantum(&probs, &basis, &rho_b)?;
            Ok(StateSource {
                bell_spectrum: BellDiagonalSpectrum::of_state(&state),
                state,
            })
        }
        other => Err(bad(format!("unknown family \"{other}\""))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_form() {
        let w = parse_state_json(r#"{"family": "werner", "f": 0.9}"#).unwrap();
        assert!((w.state.purity() - 0.813333).abs() < 1e-6);
        assert!(w.bell_spectrum.is_some());

        let b = parse_state_json(r#"{"family": "bell_diagonal", "gamma": [0.5, 0.3, 0.1, 0.1]}"#).unwrap();
        assert!((b.state.matrix()[(0, 3)].re - 0.1).abs() < 1e-15);

        let m = parse_state_json(r#"{"family": "mq_b", "purity": 0.35}"#).unwrap();
        assert!((m.state.purity() - 0.35).abs() < 1e-9);

        let d = parse_state_json(
            r#"{"dense": [[[0.5,0],[0,0],[0,0],[0,0]],[[0,0],[0.5,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]], "dims": [2, 2]}"#,
        )
        .unwrap();
        assert!((d.state.purity() - 0.5).abs() < 1e-15);

        let cq = parse_state_json(
            r#"{"family": "classical_quantum", "probs": [0.5, 0.5], "basis": "computational",
                "rho_b": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}"#,
        )
        .unwrap();
        assert!((cq.state.matrix()[(3, 3)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn errors_name_the_problem() {
        let e = parse_state_json(r#"{"family": "werner", "f": 2}"#).unwrap_err();
        assert!(matches!(e, Error::OutOfRange { .. }));
        let e = parse_state_json(r#"{"dense": [[1, 0], [0, 1]], "dims": [2, 1]}"#).unwrap_err();
        assert!(matches!(e, Error::NotUnitTrace { .. }));
        let e = parse_state_json(r#"{"family": "nope"}"#).unwrap_err();
        assert!(e.to_string().contains("nope"));
        assert!(parse_state_json("not json").is_err());
        assert!(parse_state_json(r#"{"family": "bell_diagonal", "gamma": [1, 0]}"#).is_err());
    }
}
