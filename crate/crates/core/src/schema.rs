//! JSON documents exchanged by the command-line tool.
//!
//! Every document carries `schema` = [`SCHEMA_VERSION`]. Basis indices in
//! cycle and one-line notation are 1-based; everything else is 0-based.

use serde::{Deserialize, Serialize};

use crate::automorphism::{parse_cycles, AutomorphismGroup, Permutation};
use crate::error::{Error, Result};
use crate::rs::CodeSpec;
use crate::rs::{ExponentTable, IdempotentConvention, MMatrix, PolyParityMatrix, UVectors};

pub const SCHEMA_VERSION: &str = "tripar/1";

fn schema() -> String {
    SCHEMA_VERSION.to_string()
}

/// Degree and defining polynomial, e.g. `{"m": 5, "poly": "0x25"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldId {
    pub m: usize,
    pub poly: String,
}

impl FieldId {
    pub fn of(spec: &CodeSpec) -> Self {
        FieldId {
            m: spec.m(),
            poly: format!("{:#x}", spec.field().poly()),
        }
    }
}

/// One ring entry of the polynomial parity matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "poly", rename_all = "snake_case")]
pub enum PolyEntry {
    Zero,
    /// `1 + x + … + x^(n-1)`.
    Theta1,
    /// `θ(x)·x^shift`.
    Theta {
        shift: usize,
    },
}

/// Entries of the polynomial parity matrix, row by row.
pub fn poly_parity_entries(pm: &PolyParityMatrix, n: usize) -> Vec<Vec<PolyEntry>> {
    let u = pm.u_vectors();
    let m = u.u1.len();
    let mut rows: Vec<Vec<PolyEntry>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    if r == c {
                        PolyEntry::Theta1
                    } else {
                        PolyEntry::Zero
                    }
                })
                .collect()
        })
        .collect();
    for uv in std::iter::once(&u.u1).chain(u.u2.as_ref()) {
        for k in 0..m {
            rows.push(
                uv.iter()
                    .map(|&ui| PolyEntry::Theta {
                        shift: (ui + k) % n,
                    })
                    .collect(),
            );
        }
    }
    rows
}

/// Output of `build`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildReport {
    pub schema: String,
    pub field: FieldId,
    pub n: usize,
    pub k: usize,
    pub parity: usize,
    pub convention: IdempotentConvention,
    /// Exponents `j` with `θ_j = 1`.
    pub theta_support: Vec<usize>,
    /// u-vector of the double-parity matrix.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u1: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u2: Option<Vec<usize>>,
    pub poly_parity: Vec<Vec<PolyEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_matrix: Option<MMatrixReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MMatrixReport {
    /// `b_{ij}` with `null` on the diagonal; each row starts its first
    /// off-diagonal entry at 0.
    pub exponents: ExponentTable,
}

impl BuildReport {
    pub fn new(spec: &CodeSpec, pm: &PolyParityMatrix, mm: Option<&MMatrix>) -> Self {
        let UVectors { u1, u2 } = pm.u_vectors().clone();
        let (u, u1) = if spec.parity() == 2 {
            (Some(u1), None)
        } else {
            (None, Some(u1))
        };
        BuildReport {
            schema: schema(),
            field: FieldId::of(spec),
            n: spec.n(),
            k: spec.k(),
            parity: spec.parity(),
            convention: pm.convention(),
            theta_support: pm.theta().coeffs().iter_ones().collect(),
            u,
            u1,
            u2,
            poly_parity: poly_parity_entries(pm, spec.n()),
            m_matrix: mm.map(|mm| MMatrixReport {
                exponents: mm.table(),
            }),
        }
    }
}

/// A permutation `(σ, a, l)` as written in the automorphism tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationEntry {
    /// Cycle notation, e.g. `(1,2)(4,5)` or `id`.
    pub sigma: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub one_line: Option<Vec<usize>>,
    pub a: Vec<usize>,
    pub l: usize,
}

impl PermutationEntry {
    pub fn from_permutation(p: &Permutation) -> Self {
        PermutationEntry {
            sigma: p.cycle_notation(),
            one_line: Some(p.one_line()),
            a: p.a().to_vec(),
            l: p.l(),
        }
    }

    pub fn to_permutation(&self, m: usize, n: usize) -> Result<Permutation> {
        let sigma = parse_cycles(&self.sigma, m)?;
        if let Some(ol) = &self.one_line {
            let from_ol: Vec<usize> = ol.iter().map(|&s| s.wrapping_sub(1)).collect();
            if from_ol != sigma {
                return Err(Error::InvalidPermutation(format!(
                    "one_line {ol:?} disagrees with {}",
                    self.sigma
                )));
            }
        }
        if let Some(&bad) = self.a.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidPermutation(format!(
                "a entry {bad} not in Z_{n}"
            )));
        }
        Permutation::new(sigma, self.a.clone(), self.l, n)
    }
}

/// Output of `search`, also accepted by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub schema: String,
    pub field: FieldId,
    pub order: usize,
    /// Elements of the form `[i, j] ↦ [i, j + s]`.
    pub column_shifts: usize,
    /// Representatives with `a_1 = 0`; each stands for `a + s`, `s ∈ Z_n`.
    pub classes: Vec<PermutationEntry>,
}

impl GroupReport {
    pub fn new(spec: &CodeSpec, group: &AutomorphismGroup) -> Self {
        GroupReport {
            schema: schema(),
            field: FieldId::of(spec),
            order: group.order(),
            column_shifts: group.column_shift_count(),
            classes: group
                .classes()
                .iter()
                .map(PermutationEntry::from_permutation)
                .collect(),
        }
    }
}

/// Input of `verify`: a field and a list of permutations. A [`GroupReport`]
/// is accepted as is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationList {
    pub field: FieldId,
    #[serde(alias = "permutations")]
    pub classes: Vec<PermutationEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs::build_poly_parity_matrix;

    #[test]
    fn entry_round_trip() {
        let p = Permutation::new(vec![3, 4, 2, 0, 1], vec![0, 29, 9, 18, 20], 0, 31).unwrap();
        let e = PermutationEntry::from_permutation(&p);
        assert_eq!(e.sigma, "(1,4)(2,5)");
        let json = serde_json::to_string(&e).unwrap();
        let back: PermutationEntry = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_permutation(5, 31).unwrap(), p);
        let mut bad = e.clone();
        bad.one_line = Some(vec![1, 2, 3, 4, 5]);
        assert!(bad.to_permutation(5, 31).is_err());
        bad.one_line = None;
        bad.a[1] = 31;
        assert!(bad.to_permutation(5, 31).is_err());
    }

    #[test]
    fn build_report_keys() {
        let spec = CodeSpec::new(4, 2).unwrap();
        let pm = build_poly_parity_matrix(&spec).unwrap();
        let v = serde_json::to_value(BuildReport::new(&spec, &pm, None)).unwrap();
        assert_eq!(v["u"], serde_json::json!([2, 1, 0, 14]));
        assert!(v.get("u1").is_none());
        assert_eq!(v["field"]["poly"], "0x13");
        assert_eq!(
            v["poly_parity"][4][3],
            serde_json::json!({"poly": "theta", "shift": 14})
        );
        assert_eq!(
            v["poly_parity"][0][0],
            serde_json::json!({"poly": "theta1"})
        );
    }
}
