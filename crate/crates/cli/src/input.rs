use std::fs;
use std::path::Path;

use qweyl::{CommAlgebra, MapWeight, Scalar, WeightVector};

/// Failure attributable to the command line or its input files.
#[derive(Debug)]
pub struct InputError(pub String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

/// `C`, `poly:N` for `C[t]/(t^N)`, or `sum:X,Y` for `X ⊕ Y`.
pub fn parse_coeff(spec: &str) -> Result<CommAlgebra, InputError> {
    let spec = spec.trim();
    if spec == "C" {
        return Ok(CommAlgebra::field());
    }
    if let Some(n) = spec.strip_prefix("poly:") {
        let n: usize = n.parse().map_err(|_| InputError::new(format!("bad truncation degree in {spec:?}")))?;
        return CommAlgebra::truncated_poly(n).map_err(|e| InputError::new(e.to_string()));
    }
    if let Some(rest) = spec.strip_prefix("sum:") {
        let (x, y) = rest
            .split_once(',')
            .ok_or_else(|| InputError::new(format!("sum needs two summands: {spec:?}")))?;
        return Ok(CommAlgebra::direct_sum(&parse_coeff(x)?, &parse_coeff(y)?));
    }
    Err(InputError::new(format!("unknown coefficient algebra {spec:?}")))
}

pub fn parse_lambda(s: &str, n: usize) -> Result<WeightVector, InputError> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| InputError::new(format!("bad weight coordinate {x:?}"))))
        .collect::<Result<_, _>>()?;
    if coords.len() != n {
        return Err(InputError::new(format!("weight has {} coordinates, expected {n}", coords.len())));
    }
    Ok(WeightVector(coords))
}

/// ψ from a JSON file holding an `n × dim A` matrix of scalar strings.
pub fn read_psi(path: &Path, coeff: &CommAlgebra, n: usize) -> Result<MapWeight, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::new(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<String>> =
        serde_json::from_str(&text).map_err(|e| InputError::new(format!("{}: {e}", path.display())))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != coeff.dim()) {
        return Err(InputError::new(format!("ψ must be a {n} × {} matrix", coeff.dim())));
    }
    let values = rows
        .iter()
        .map(|r| r.iter().map(|x| x.parse::<Scalar>().map_err(|e| InputError::new(e.to_string()))).collect())
        .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
    MapWeight::new(values, coeff).map_err(|e| InputError::new(e.to_string()))
}

/// ψ = λ ⊗ χ with χ the distinguished character of `A`.
pub fn psi_from_lambda(lambda: &WeightVector, coeff: &CommAlgebra) -> Result<MapWeight, InputError> {
    let chi = coeff
        .augmentation()
        .ok_or_else(|| InputError::new("coefficient algebra has no distinguished character; pass --psi"))?;
    MapWeight::from_character(lambda, chi, coeff).map_err(|e| InputError::new(e.to_string()))
}
