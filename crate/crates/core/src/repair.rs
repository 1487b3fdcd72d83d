//! Repair schemes, combination-map derivation, node repair, and the
//! alignment / full-rank / optimal-access checks.

use crate::algebra::{FieldSpec, Matrix, MatrixError, Subspace};
use crate::code::{CodeError, CodeSpec, Codeword};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepairError {
    #[error("scheme does not repair node {failed} from helper set {helpers:?}")]
    Infeasible { failed: usize, helpers: Vec<usize> },
    #[error("no repair matrix for helper {helper}, failed node {failed}")]
    MissingMatrix { helper: usize, failed: usize },
    #[error("node {0} is not in the scheme's repairable set")]
    NotRepairable(usize),
    #[error("helper set must have d = {expected} nodes excluding the failed node, got {got}")]
    BadHelperSet { expected: usize, got: usize },
    #[error("repair matrix for helper {helper}, failed {failed} has rank {rank}, expected beta = {beta}")]
    RankDeficient {
        helper: usize,
        failed: usize,
        rank: usize,
        beta: usize,
    },
    #[error("check requires a helper-independent or constant scheme")]
    NotWildcardMode,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A beta x alpha repair map, either as an explicit matrix or as a list of
/// accessed row indices (rows of the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepairMatrix {
    /// 0-based row indices a_1..a_beta, meaning rows e_{a_t}.
    Access(Vec<usize>),
    Full(Matrix),
}

impl RepairMatrix {
    pub fn to_matrix(&self, field: &FieldSpec, alpha: usize) -> Matrix {
        match self {
            RepairMatrix::Access(rows) => {
                let mut m = Matrix::zero(field, rows.len(), alpha);
                for (t, &a) in rows.iter().enumerate() {
                    m.set(t, a, 1);
                }
                m
            }
            RepairMatrix::Full(m) => m.clone(),
        }
    }

    pub fn beta(&self) -> usize {
        match self {
            RepairMatrix::Access(rows) => rows.len(),
            RepairMatrix::Full(m) => m.rows(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SchemeMode {
    /// S^D_{(i,j)} keyed by helper, failed node and helper set.
    General,
    /// S_{(i,j)}: independent of the identity of the remaining helpers.
    HelperIndependent,
    /// S_j: depends only on the failed node.
    Constant,
}

/// Key for a stored repair matrix. Wildcard fields are None.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SchemeKey {
    pub helper: Option<usize>,
    pub failed: usize,
    pub helper_set: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairScheme {
    pub mode: SchemeMode,
    pub w_nodes: BTreeSet<usize>,
    entries: BTreeMap<SchemeKey, RepairMatrix>,
}

impl RepairScheme {
    pub fn new(mode: SchemeMode, w_nodes: impl IntoIterator<Item = usize>) -> Self {
        RepairScheme {
            mode,
            w_nodes: w_nodes.into_iter().collect(),
            entries: BTreeMap::new(),
        }
    }

    /// Constant-mode scheme S_j = e_{rows(j)} for the given (node, access rows).
    pub fn constant_access(entries: impl IntoIterator<Item = (usize, Vec<usize>)>) -> Self {
        let mut scheme = RepairScheme::new(SchemeMode::Constant, std::iter::empty());
        for (j, rows) in entries {
            scheme.w_nodes.insert(j);
            scheme.insert_constant(j, RepairMatrix::Access(rows));
        }
        scheme
    }

    pub fn insert_constant(&mut self, failed: usize, m: RepairMatrix) {
        self.entries.insert(
            SchemeKey { helper: None, failed, helper_set: None },
            m,
        );
    }

    pub fn insert_helper_independent(&mut self, helper: usize, failed: usize, m: RepairMatrix) {
        self.entries.insert(
            SchemeKey { helper: Some(helper), failed, helper_set: None },
            m,
        );
    }

    pub fn insert_general(
        &mut self,
        helper: usize,
        failed: usize,
        helper_set: Vec<usize>,
        m: RepairMatrix,
    ) {
        let mut hs = helper_set;
        hs.sort_unstable();
        self.entries.insert(
            SchemeKey { helper: Some(helper), failed, helper_set: Some(hs) },
            m,
        );
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SchemeKey, &RepairMatrix)> {
        self.entries.iter()
    }

    pub fn is_wildcard_mode(&self) -> bool {
        matches!(self.mode, SchemeMode::HelperIndependent | SchemeMode::Constant)
    }

    /// Looks up the repair matrix for (helper, failed, helper set) under the
    /// scheme's mode.
    pub fn get(
        &self,
        helper: usize,
        failed: usize,
        helper_set: Option<&[usize]>,
    ) -> Result<&RepairMatrix, RepairError> {
        let key = match self.mode {
            SchemeMode::Constant => SchemeKey { helper: None, failed, helper_set: None },
            SchemeMode::HelperIndependent => SchemeKey {
                helper: Some(helper),
                failed,
                helper_set: None,
            },
            SchemeMode::General => {
                let mut hs = helper_set
                    .ok_or(RepairError::MissingMatrix { helper, failed })?
                    .to_vec();
                hs.sort_unstable();
                SchemeKey { helper: Some(helper), failed, helper_set: Some(hs) }
            }
        };
        self.entries
            .get(&key)
            .ok_or(RepairError::MissingMatrix { helper, failed })
    }

    pub fn matrix_for(
        &self,
        field: &FieldSpec,
        alpha: usize,
        helper: usize,
        failed: usize,
        helper_set: Option<&[usize]>,
    ) -> Result<Matrix, RepairError> {
        Ok(self.get(helper, failed, helper_set)?.to_matrix(field, alpha))
    }

    /// Re-asserts the rank invariant on every stored matrix.
    pub fn validate_ranks(&self, field: &FieldSpec, alpha: usize, beta: usize) -> Result<(), RepairError> {
        for (key, rm) in &self.entries {
            if rm.beta() != beta {
                return Err(RepairError::RankDeficient {
                    helper: key.helper.unwrap_or(usize::MAX),
                    failed: key.failed,
                    rank: rm.beta(),
                    beta,
                });
            }
            let m = rm.to_matrix(field, alpha);
            let rank = m.rank();
            if rank != beta {
                return Err(RepairError::RankDeficient {
                    helper: key.helper.unwrap_or(usize::MAX),
                    failed: key.failed,
                    rank,
                    beta,
                });
            }
            if let RepairMatrix::Access(rows) = rm {
                let set: BTreeSet<usize> = rows.iter().copied().collect();
                if set.len() != rows.len() || rows.iter().any(|&a| a >= alpha) {
                    return Err(RepairError::RankDeficient {
                        helper: key.helper.unwrap_or(usize::MAX),
                        failed: key.failed,
                        rank: set.len(),
                        beta,
                    });
                }
            }
        }
        Ok(())
    }
}

/// The per-helper combination blocks T_{(i,j)} that assemble the replacement
/// node content from downloaded symbols.
#[derive(Debug, Clone)]
pub struct CombinationMap {
    pub failed: usize,
    pub helpers: Vec<usize>,
    /// One alpha x beta block per helper, in `helpers` order.
    pub blocks: Vec<Matrix>,
}

/// Solves for the combination map: sum_i T_i S_i G_i = G_j over all messages.
pub fn derive_combination(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    failed: usize,
    helpers: &[usize],
) -> Result<CombinationMap, RepairError> {
    if !scheme.w_nodes.contains(&failed) {
        return Err(RepairError::NotRepairable(failed));
    }
    if helpers.len() != spec.params.d || helpers.contains(&failed) {
        return Err(RepairError::BadHelperSet {
            expected: spec.params.d,
            got: helpers.len(),
        });
    }
    let f = spec.field();
    let alpha = spec.params.alpha;
    let beta = spec.params.beta();
    // stacked (d*beta) x (k*alpha) matrix of S_i * G_i
    let mut stacked_parts = Vec::with_capacity(helpers.len());
    for &i in helpers {
        let s = scheme.matrix_for(f, alpha, i, failed, Some(helpers))?;
        let g = spec.node_generator(i);
        stacked_parts.push(s.mul(&g)?);
    }
    let refs: Vec<&Matrix> = stacked_parts.iter().collect();
    let stacked = Matrix::vstack(&refs)?;
    let target = spec.node_generator(failed);
    let t = stacked.solve_left(&target).map_err(|e| match e {
        MatrixError::Infeasible => RepairError::Infeasible {
            failed,
            helpers: helpers.to_vec(),
        },
        other => RepairError::Matrix(other),
    })?;
    let blocks = (0..helpers.len())
        .map(|idx| {
            t.select(
                &(0..alpha).collect::<Vec<_>>(),
                &(idx * beta..(idx + 1) * beta).collect::<Vec<_>>(),
            )
        })
        .collect();
    Ok(CombinationMap {
        failed,
        helpers: helpers.to_vec(),
        blocks,
    })
}

/// Repairs one node of a codeword, downloading exactly d*beta symbols.
pub fn repair_node(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    codeword: &Codeword,
    failed: usize,
    helpers: &[usize],
) -> Result<Vec<u64>, RepairError> {
    let comb = derive_combination(spec, scheme, failed, helpers)?;
    let f = spec.field();
    let alpha = spec.params.alpha;
    let mut downloaded = 0usize;
    let mut acc = vec![0u64; alpha];
    for (idx, &i) in helpers.iter().enumerate() {
        let s = scheme.matrix_for(f, alpha, i, failed, Some(helpers))?;
        let piece = s.mul_vec(&codeword.blocks[i])?;
        downloaded += piece.len();
        let contrib = comb.blocks[idx].mul_vec(&piece)?;
        for (a, v) in acc.iter_mut().zip(contrib) {
            *a = f.add(*a, v);
        }
    }
    assert_eq!(downloaded, spec.params.repair_bandwidth());
    Ok(acc)
}

/// One failing condition of a structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub what: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub pass: bool,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn passing() -> Self {
        CheckReport { pass: true, failures: Vec::new() }
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.pass = false;
        self.failures.push(CheckFailure { what: what.into() });
    }
}

/// Interference alignment for repair of systematic node `failed`:
/// <S_{(u_b, failed)}> must equal <S_{(p_i, failed)} * A_{p_i, u_b}> for every
/// parity p_i and every systematic b != failed. Row spaces are compared via
/// their canonical RREF bases.
pub fn check_interference_alignment(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    failed: usize,
) -> Result<CheckReport, RepairError> {
    if !scheme.is_wildcard_mode() {
        return Err(RepairError::NotWildcardMode);
    }
    if !scheme.w_nodes.contains(&failed) {
        return Err(RepairError::NotRepairable(failed));
    }
    let f = spec.field();
    let alpha = spec.params.alpha;
    let mut report = CheckReport::passing();
    let Some(_) = spec.systematic_index(failed) else {
        // alignment conditions are stated for systematic repair
        return Ok(report);
    };
    for (b, &u_b) in spec.systematic_nodes.iter().enumerate() {
        if u_b == failed {
            continue;
        }
        let direct = scheme.matrix_for(f, alpha, u_b, failed, None)?;
        let direct_space = Subspace::row_space(&direct);
        for (i, &p_i) in spec.parity_nodes.iter().enumerate() {
            let s = scheme.matrix_for(f, alpha, p_i, failed, None)?;
            let transformed = Subspace::row_space(&s.mul(&spec.blocks[i][b])?);
            if transformed != direct_space {
                report.fail(format!(
                    "alignment fails for parity p_{i} (node {p_i}), systematic block {b} (node {u_b})"
                ));
            }
        }
    }
    Ok(report)
}

/// Full-rank repair condition: the stack of S_{(p_i, failed)} * A_{p_i, u_j}
/// over parity helpers in D must have rank alpha (j = failed's block index).
pub fn check_full_rank(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    failed: usize,
    helpers: &[usize],
) -> Result<CheckReport, RepairError> {
    if !scheme.w_nodes.contains(&failed) {
        return Err(RepairError::NotRepairable(failed));
    }
    let f = spec.field();
    let alpha = spec.params.alpha;
    let j = spec
        .systematic_index(failed)
        .ok_or(RepairError::NotRepairable(failed))?;
    let mut parts = Vec::new();
    for &h in helpers {
        if let Some(i) = spec.parity_index(h) {
            let s = scheme.matrix_for(f, alpha, h, failed, Some(helpers))?;
            parts.push(s.mul(&spec.blocks[i][j])?);
        }
        // systematic helpers store no component of message block j, so they
        // contribute nothing to this stack
    }
    let mut report = CheckReport::passing();
    if parts.is_empty() {
        report.fail("no parity helpers in D".to_string());
        return Ok(report);
    }
    let refs: Vec<&Matrix> = parts.iter().collect();
    let stacked = Matrix::vstack(&refs)?;
    let rank = stacked.rank();
    if rank != alpha {
        report.fail(format!("stacked rank {rank} != alpha {alpha}"));
    }
    Ok(report)
}

/// Optimal-access report: offenders and the implied access pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessReport {
    pub pass: bool,
    pub offenders: Vec<String>,
    /// Per scheme entry, the accessed row indices when the entry passes.
    pub access_pattern: BTreeMap<String, Vec<usize>>,
}

/// Strict: every repair-matrix row is exactly a standard basis vector.
/// Lenient: a nonzero scalar multiple of one.
pub fn check_optimal_access(scheme: &RepairScheme, strict: bool) -> AccessReport {
    let mut report = AccessReport {
        pass: true,
        offenders: Vec::new(),
        access_pattern: BTreeMap::new(),
    };
    for (key, rm) in scheme.entries() {
        let label = match (&key.helper, &key.helper_set) {
            (None, _) => format!("S_{}", key.failed),
            (Some(h), None) => format!("S_({h},{})", key.failed),
            (Some(h), Some(d)) => format!("S^{d:?}_({h},{})", key.failed),
        };
        match rm {
            RepairMatrix::Access(rows) => {
                report.access_pattern.insert(label, rows.clone());
            }
            RepairMatrix::Full(m) => {
                let mut rows_accessed = Vec::new();
                let mut ok = true;
                for t in 0..m.rows() {
                    let nonzero: Vec<usize> =
                        (0..m.cols()).filter(|&c| m.get(t, c) != 0).collect();
                    let good = match nonzero.as_slice() {
                        [c] => strict.then(|| m.get(t, *c) == 1).unwrap_or(true),
                        _ => false,
                    };
                    if good {
                        rows_accessed.push(nonzero[0]);
                    } else {
                        ok = false;
                        report
                            .offenders
                            .push(format!("{label} row {t}: {:?}", m.row(t)));
                    }
                }
                if ok {
                    report.access_pattern.insert(label, rows_accessed);
                } else {
                    report.pass = false;
                }
            }
        }
    }
    report
}

/// beta and total repair bandwidth for a parameter set.
pub fn bandwidth(params: &crate::code::CodeParams) -> (usize, usize) {
    (params.beta(), params.repair_bandwidth())
}

/// All d-subsets of [n] minus the failed node.
pub fn helper_sets(n: usize, d: usize, failed: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n)
        .filter(|&v| v != failed)
        .combinations(d)
        .collect()
}
