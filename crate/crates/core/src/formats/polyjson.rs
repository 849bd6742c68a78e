use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::matrix::PolynomialParityMatrix;

#[derive(Serialize, Deserialize)]
struct Wire {
    n_c: usize,
    n_v: usize,
    lifting: usize,
    entries: Vec<Vec<Vec<u32>>>,
}

/// Parses `{"n_c": .., "n_v": .., "lifting": N, "entries": [[[exponents]]]}`.
pub fn parse_polyjson(text: &str) -> Result<PolynomialParityMatrix, FormatError> {
    let w: Wire = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    Ok(PolynomialParityMatrix::new(w.n_c, w.n_v, w.lifting, w.entries)?)
}

pub fn write_polyjson(pm: &PolynomialParityMatrix) -> String {
    let w = Wire {
        n_c: pm.n_c(),
        n_v: pm.n_v(),
        lifting: pm.lifting(),
        entries: pm.entries().to_vec(),
    };
    serde_json::to_string(&w).expect("plain data serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tanner_155;
    use crate::matrix::MatrixError;

    #[test]
    fn round_trip() {
        let pm = tanner_155();
        assert_eq!(parse_polyjson(&write_polyjson(&pm)).unwrap(), pm);
    }

    #[test]
    fn validates() {
        let err = parse_polyjson(r#"{"n_c":1,"n_v":1,"lifting":3,"entries":[[[5]]]}"#).unwrap_err();
        assert!(matches!(err, FormatError::Matrix(MatrixError::ExponentOutOfRange { .. })));
        assert!(matches!(parse_polyjson("{"), Err(FormatError::Json(_))));
    }
}
