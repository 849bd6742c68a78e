use num_bigint::BigInt;

use super::constants::{a_constants, MAX_CLOSED_FORM_K};
use crate::matrix::{BiregularProfile, Girth};
use crate::spectral::PowerSumTable;

/// `T_j == |E| A_{2j}` for one `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCondition {
    pub j: u32,
    pub trace: BigInt,
    pub tree_value: BigInt,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthCertificate {
    /// Conditions checked in ascending `j`, stopping at the first failure.
    pub conditions: Vec<CertificateCondition>,
    /// Exact girth when some condition failed.
    pub girth: Option<Girth>,
    /// Proven lower bound on the girth.
    pub lower_bound: u32,
}

impl GirthCertificate {
    /// Largest `k` with `g >= 2k` established.
    pub fn certified_k(&self) -> u32 {
        self.lower_bound / 2
    }

    pub fn first_failure(&self) -> Option<&CertificateCondition> {
        self.conditions.iter().find(|c| !c.holds)
    }
}

/// Girth from the traces alone. Closed walks of length `2j` agree with the
/// tree count exactly when no cycle of length `<= 2j` exists, so, with all
/// lower conditions holding, `T_j == |E| A_{2j}` iff `g >= 2j + 2`. The first
/// failing `j` pins the girth at `2j`.
pub fn girth_certificate(profile: &BiregularProfile, traces: &PowerSumTable) -> GirthCertificate {
    let a = a_constants(profile.q1, profile.q2);
    let edges = BigInt::from(profile.edge_count);
    let top = (traces.max_power() as u32).min(MAX_CLOSED_FORM_K);
    let mut conditions = Vec::new();
    let mut lower_bound = 4;
    for j in 2..=top {
        let trace = traces.get(j as usize).clone();
        let tree_value = &edges * a.get(j);
        let holds = trace == tree_value;
        conditions.push(CertificateCondition {
            j,
            trace,
            tree_value,
            holds,
        });
        if !holds {
            return GirthCertificate {
                conditions,
                girth: Some(Girth::Finite(2 * j)),
                lower_bound: 2 * j,
            };
        }
        lower_bound = 2 * j + 2;
    }
    GirthCertificate {
        conditions,
        girth: None,
        lower_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{monomial_family, tanner_155};
    use crate::matrix::{expand_qc, validate_biregular, ScalarParityMatrix};
    use crate::spectral::gram_power_traces;

    fn certify(h: &ScalarParityMatrix, k: usize) -> GirthCertificate {
        girth_certificate(&validate_biregular(h).unwrap(), &gram_power_traces(h, k))
    }

    #[test]
    fn k33_fails_first_condition() {
        let c = certify(&ScalarParityMatrix::from_dense(&vec![vec![1u8; 3]; 3]).unwrap(), 4);
        assert_eq!(c.girth, Some(Girth::Finite(4)));
        let f = c.first_failure().unwrap();
        assert_eq!((f.j, f.trace.clone(), f.tree_value.clone()), (2, BigInt::from(81), BigInt::from(45)));
    }

    #[test]
    fn tanner_code_has_girth_eight() {
        let c = certify(&expand_qc(&tanner_155()), 7);
        assert_eq!(c.conditions.iter().map(|x| x.holds).collect::<Vec<_>>(), vec![true, true, false]);
        assert_eq!(c.girth, Some(Girth::Finite(8)));
        assert_eq!(c.certified_k(), 4);
    }

    #[test]
    fn monomial_family_has_girth_six() {
        let c = certify(&expand_qc(&monomial_family(5).unwrap().matrix), 7);
        assert_eq!(c.girth, Some(Girth::Finite(6)));
    }

    #[test]
    fn shallow_table_gives_lower_bound() {
        let c = certify(&expand_qc(&tanner_155()), 3);
        assert_eq!((c.girth, c.lower_bound), (None, 8));
    }
}
