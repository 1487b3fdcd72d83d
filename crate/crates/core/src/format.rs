//! The on-disk JSON code format.
//!
//! Node and row indices are 1-based in files and 0-based in memory. Constant
//! repair matrices use the wildcard key `*,j`; helper-dependent ones use
//! `i,j` and fully general ones `i,j,<sorted helper list>`. Unknown keys are
//! rejected everywhere so typos surface as parse errors rather than silently
//! ignored sections.

use crate::algebra::{FieldError, FieldSpec, Matrix, MatrixError};
use crate::code::{CodeError, CodeParams, CodeSpec};
use crate::repair::{RepairMatrix, RepairScheme, SchemeMode};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid code file: {0}")]
    Semantic(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireField {
    p: u64,
    m: u32,
    poly: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireParams {
    n: usize,
    k: usize,
    d: usize,
    alpha: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRepairMatrix {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    access: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    full: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRepair {
    w_nodes: Vec<usize>,
    mode: String,
    matrices: BTreeMap<String, WireRepairMatrix>,
}

/// Optional construction metadata; verification never depends on it beyond
/// choosing which structure verifier to run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureMeta {
    pub case: u8,
    #[serde(rename = "Q")]
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub supports: Option<Vec<Vec<usize>>>,
    pub coefficient_sources: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeFile {
    field: WireField,
    params: WireParams,
    systematic: Vec<usize>,
    parity: Vec<usize>,
    #[serde(rename = "A")]
    a: Vec<Vec<Vec<Vec<u64>>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    repair: Option<WireRepair>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    structure: Option<StructureMeta>,
}

#[derive(Debug)]
pub struct LoadedCode {
    pub spec: CodeSpec,
    pub scheme: Option<RepairScheme>,
    pub structure: Option<StructureMeta>,
}

fn mode_name(mode: SchemeMode) -> &'static str {
    match mode {
        SchemeMode::General => "general",
        SchemeMode::HelperIndependent => "helper_independent",
        SchemeMode::Constant => "constant",
    }
}

fn mode_from_name(name: &str) -> Result<SchemeMode, FormatError> {
    match name {
        "general" => Ok(SchemeMode::General),
        "helper_independent" => Ok(SchemeMode::HelperIndependent),
        "constant" => Ok(SchemeMode::Constant),
        other => Err(FormatError::Semantic(format!("unknown repair mode {other:?}"))),
    }
}

fn one_based(v: usize) -> usize {
    v + 1
}

fn zero_based(v: usize, n: usize, what: &str) -> Result<usize, FormatError> {
    if v == 0 || v > n {
        return Err(FormatError::Semantic(format!(
            "{what} index {v} out of range 1..={n}"
        )));
    }
    Ok(v - 1)
}

fn encode_matrix(rm: &RepairMatrix) -> WireRepairMatrix {
    match rm {
        RepairMatrix::Access(rows) => WireRepairMatrix {
            access: Some(rows.iter().map(|&r| one_based(r)).collect()),
            full: None,
        },
        RepairMatrix::Full(m) => WireRepairMatrix { access: None, full: Some(m.to_nested()) },
    }
}

fn decode_matrix(
    wire: &WireRepairMatrix,
    field: &FieldSpec,
    alpha: usize,
    key: &str,
) -> Result<RepairMatrix, FormatError> {
    match (&wire.access, &wire.full) {
        (Some(rows), None) => {
            let decoded: Result<Vec<usize>, FormatError> = rows
                .iter()
                .map(|&r| zero_based(r, alpha, "access row"))
                .collect();
            Ok(RepairMatrix::Access(decoded?))
        }
        (None, Some(rows)) => {
            if rows.iter().any(|r| r.len() != alpha) {
                return Err(FormatError::Semantic(format!(
                    "matrix {key:?}: rows must have alpha = {alpha} columns"
                )));
            }
            Ok(RepairMatrix::Full(Matrix::from_rows(field, rows)?))
        }
        _ => Err(FormatError::Semantic(format!(
            "matrix {key:?} must have exactly one of \"access\" or \"full\""
        ))),
    }
}

fn encode_repair(scheme: &RepairScheme) -> WireRepair {
    let mut matrices = BTreeMap::new();
    for (key, rm) in scheme.entries() {
        let name = match (&key.helper, &key.helper_set) {
            (None, _) => format!("*,{}", one_based(key.failed)),
            (Some(h), None) => format!("{},{}", one_based(*h), one_based(key.failed)),
            (Some(h), Some(hs)) => {
                let list = hs.iter().map(|&v| one_based(v).to_string()).collect::<Vec<_>>();
                format!("{},{},{}", one_based(*h), one_based(key.failed), list.join(","))
            }
        };
        matrices.insert(name, encode_matrix(rm));
    }
    WireRepair {
        w_nodes: scheme.w_nodes.iter().map(|&v| one_based(v)).collect(),
        mode: mode_name(scheme.mode).to_string(),
        matrices,
    }
}

fn decode_repair(
    wire: &WireRepair,
    field: &FieldSpec,
    n: usize,
    alpha: usize,
) -> Result<RepairScheme, FormatError> {
    let mode = mode_from_name(&wire.mode)?;
    let w_nodes: Result<Vec<usize>, FormatError> = wire
        .w_nodes
        .iter()
        .map(|&v| zero_based(v, n, "w_nodes"))
        .collect();
    let mut scheme = RepairScheme::new(mode, w_nodes?);
    for (key, wm) in &wire.matrices {
        let parts: Vec<&str> = key.split(',').collect();
        let rm = decode_matrix(wm, field, alpha, key)?;
        match mode {
            SchemeMode::Constant => {
                let [star, j] = parts.as_slice() else {
                    return Err(FormatError::Semantic(format!(
                        "constant-mode key {key:?} must be \"*,j\""
                    )));
                };
                if *star != "*" {
                    return Err(FormatError::Semantic(format!(
                        "constant-mode key {key:?} must start with \"*\""
                    )));
                }
                let failed = parse_index(j, n, "failed node")?;
                scheme.insert_constant(failed, rm);
            }
            SchemeMode::HelperIndependent => {
                let [i, j] = parts.as_slice() else {
                    return Err(FormatError::Semantic(format!(
                        "helper_independent key {key:?} must be \"i,j\""
                    )));
                };
                let helper = parse_index(i, n, "helper")?;
                let failed = parse_index(j, n, "failed node")?;
                scheme.insert_helper_independent(helper, failed, rm);
            }
            SchemeMode::General => {
                if parts.len() < 3 {
                    return Err(FormatError::Semantic(format!(
                        "general key {key:?} must be \"i,j,<helper set>\""
                    )));
                }
                let helper = parse_index(parts[0], n, "helper")?;
                let failed = parse_index(parts[1], n, "failed node")?;
                let d_set: Result<Vec<usize>, FormatError> = parts[2..]
                    .iter()
                    .map(|p| parse_index(p, n, "helper-set member"))
                    .collect();
                scheme.insert_general(helper, failed, d_set?, rm);
            }
        }
    }
    Ok(scheme)
}

fn parse_index(text: &str, n: usize, what: &str) -> Result<usize, FormatError> {
    let v: usize = text
        .parse()
        .map_err(|_| FormatError::Semantic(format!("{what} {text:?} is not an integer")))?;
    zero_based(v, n, what)
}

/// Serializes a code (with optional scheme and structure metadata) to the
/// canonical pretty-printed JSON form. Output is deterministic: maps are
/// ordered and field order is fixed by the wire structs.
pub fn to_json(
    spec: &CodeSpec,
    scheme: Option<&RepairScheme>,
    structure: Option<&StructureMeta>,
) -> String {
    let f = spec.field();
    let file = CodeFile {
        field: WireField {
            p: f.p(),
            m: f.m(),
            poly: f.reduction_poly().map(|p| p.to_vec()),
        },
        params: WireParams {
            n: spec.params.n,
            k: spec.params.k,
            d: spec.params.d,
            alpha: spec.params.alpha,
        },
        systematic: spec.systematic_nodes.iter().map(|&v| one_based(v)).collect(),
        parity: spec.parity_nodes.iter().map(|&v| one_based(v)).collect(),
        a: spec
            .blocks
            .iter()
            .map(|row| row.iter().map(|m| m.to_nested()).collect())
            .collect(),
        repair: scheme.map(encode_repair),
        structure: structure.cloned(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<LoadedCode, FormatError> {
    let file: CodeFile = serde_json::from_str(text)?;
    let field = FieldSpec::new(file.field.p, file.field.m, file.field.poly.as_deref())?;
    let params = CodeParams::new(
        file.params.n,
        file.params.k,
        file.params.d,
        file.params.alpha,
        field.clone(),
    )?;
    let n = params.n;
    let systematic: Result<Vec<usize>, FormatError> = file
        .systematic
        .iter()
        .map(|&v| zero_based(v, n, "systematic node"))
        .collect();
    let parity: Result<Vec<usize>, FormatError> = file
        .parity
        .iter()
        .map(|&v| zero_based(v, n, "parity node"))
        .collect();
    let alpha = params.alpha;
    let mut blocks = Vec::with_capacity(file.a.len());
    for (i, row) in file.a.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            if cell.len() != alpha || cell.iter().any(|r| r.len() != alpha) {
                return Err(FormatError::Semantic(format!(
                    "A[{}][{}] must be a {alpha}x{alpha} array",
                    i + 1,
                    j + 1
                )));
            }
            for r in cell {
                for &v in r {
                    if !field.contains(v) {
                        return Err(FormatError::Semantic(format!(
                            "A[{}][{}] entry {v} outside the field of order {}",
                            i + 1,
                            j + 1,
                            field.order()
                        )));
                    }
                }
            }
            out.push(Matrix::from_rows(&field, cell)?);
        }
        blocks.push(out);
    }
    let spec = CodeSpec::new(params, systematic?, parity?, blocks)?;
    let scheme = match &file.repair {
        Some(wire) => Some(decode_repair(wire, spec.field(), n, alpha)?),
        None => None,
    };
    Ok(LoadedCode { spec, scheme, structure: file.structure })
}
