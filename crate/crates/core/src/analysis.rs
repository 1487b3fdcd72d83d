//! Instance-level audits of the proof machinery behind the sub-packetization
//! bound: repair-subspace intersection invariance and inequality, the
//! dimension cascade, basis-vector membership counting, and the bipartite
//! counting argument.

use crate::algebra::{Matrix, Subspace};
use crate::code::CodeSpec;
use crate::repair::{check_optimal_access, RepairError, RepairScheme};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Repair(#[from] RepairError),
    #[error("audit requires an optimal-access scheme")]
    NotOptimalAccess,
    #[error("set U must contain at least {0} nodes")]
    SetTooSmall(usize),
    #[error("audit is vacuous for alpha = 1 or s = 1")]
    DegenerateParams,
}

/// dim of the iterated intersection of the repair subspaces <S_{(p,u)}>,
/// u ranging over U, for a fixed helper p.
pub fn intersection_dim(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    helper: usize,
    failed_set: &[usize],
) -> Result<usize, AnalysisError> {
    Ok(intersection_space(spec, scheme, helper, failed_set)?.dim())
}

pub fn intersection_space(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    helper: usize,
    failed_set: &[usize],
) -> Result<Subspace, AnalysisError> {
    let f = spec.field();
    let alpha = spec.params.alpha;
    let mut acc: Option<Subspace> = None;
    for &u in failed_set {
        let s = scheme.matrix_for(f, alpha, helper, u, None)?;
        let space = Subspace::row_space(&s);
        acc = Some(match acc {
            None => space,
            Some(prev) => prev.intersect(&space).expect("same ambient"),
        });
    }
    acc.ok_or(AnalysisError::SetTooSmall(1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub pass: bool,
    /// dim per helper p, in the order given.
    pub dims: Vec<(usize, usize)>,
}

/// The |U|-fold intersection dimension must not depend on which helper in P
/// contributes the repair subspaces.
pub fn check_invariance(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    helpers: &[usize],
    failed_set: &[usize],
) -> Result<InvarianceReport, AnalysisError> {
    let mut dims = Vec::with_capacity(helpers.len());
    for &p in helpers {
        dims.push((p, intersection_dim(spec, scheme, p, failed_set)?));
    }
    let pass = dims.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(InvarianceReport { pass, dims })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub pass: bool,
    /// Sum over helpers of the |U|-fold intersection dims.
    pub lhs: usize,
    /// (|U|-1)-fold intersection dim at the distinguished helper.
    pub rhs: usize,
}

/// Sum over p_i in P of dim(|U|-fold intersection) <= dim of the
/// (|U|-1)-fold intersection (dropping the last node of U) at any p in P.
pub fn check_lemma_inequality(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    helpers: &[usize],
    failed_set: &[usize],
    distinguished: usize,
) -> Result<InequalityReport, AnalysisError> {
    if failed_set.len() < 2 {
        return Err(AnalysisError::SetTooSmall(2));
    }
    let mut lhs = 0usize;
    for &p in helpers {
        lhs += intersection_dim(spec, scheme, p, failed_set)?;
    }
    let reduced = &failed_set[..failed_set.len() - 1];
    let rhs = intersection_dim(spec, scheme, distinguished, reduced)?;
    Ok(InequalityReport { pass: lhs <= rhs, lhs, rhs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeReport {
    pub pass: bool,
    pub dim: usize,
    /// dim * s^|U| <= alpha, compared in exact integers.
    pub scaled_dim: u128,
    pub alpha: usize,
}

/// dim of the |U|-fold intersection <= alpha / s^|U|, checked as
/// dim * s^|U| <= alpha so no rounding is involved.
pub fn check_cascade(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    helper: usize,
    failed_set: &[usize],
) -> Result<CascadeReport, AnalysisError> {
    let dim = intersection_dim(spec, scheme, helper, failed_set)?;
    let s = spec.params.s() as u128;
    let scaled = (dim as u128) * s.pow(failed_set.len() as u32);
    Ok(CascadeReport {
        pass: scaled <= spec.params.alpha as u128,
        dim,
        scaled_dim: scaled,
        alpha: spec.params.alpha,
    })
}

/// floor(log_s alpha) computed by repeated multiplication.
pub fn floor_log(base: usize, value: usize) -> Option<usize> {
    if base < 2 || value == 0 {
        return None;
    }
    let mut acc = 1usize;
    let mut e = 0usize;
    while acc <= value / base {
        acc *= base;
        e += 1;
    }
    // acc = base^e <= value < base^(e+1)
    if acc * base <= value {
        Some(e + 1)
    } else {
        Some(e)
    }
}

/// Selects which repair subspaces form the right side of the bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    /// S_{(n, j)} for j over all other nodes (all-node repair).
    AllNodes,
    /// S_j for every node (constant repair matrices).
    Constant,
    /// S_{(n, j)} for j in the scheme's repairable set W.
    Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteAudit {
    /// Edge membership degree per basis vector e_t.
    pub left_degrees: Vec<usize>,
    /// Degree per right node (failed node id, degree).
    pub right_degrees: Vec<(usize, usize)>,
    pub edge_count: usize,
    pub max_left_degree: usize,
    pub membership_bound: usize,
    /// s^ceil(#right / s), the lower bound on alpha implied by the counting.
    pub implied_bound: u128,
    /// Edge-count identity and membership bound both hold.
    pub pass: bool,
}

fn right_nodes(spec: &CodeSpec, scheme: &RepairScheme, mode: AuditMode) -> Vec<usize> {
    let n = spec.params.n;
    match mode {
        AuditMode::AllNodes => (0..n - 1).collect(),
        AuditMode::Constant => (0..n).collect(),
        AuditMode::Subset => scheme.w_nodes.iter().copied().collect(),
    }
}

/// Maximum number of right-set repair subspaces containing a single basis
/// vector; the counting argument needs this to stay within floor(log_s alpha).
pub fn max_membership(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    mode: AuditMode,
    helper: usize,
) -> Result<usize, AnalysisError> {
    let audit = bipartite_audit(spec, scheme, mode, helper)?;
    Ok(audit.max_left_degree)
}

/// Builds the basis-vector / repair-subspace bipartite graph and audits the
/// counting identities behind the bound.
pub fn bipartite_audit(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    mode: AuditMode,
    helper: usize,
) -> Result<BipartiteAudit, AnalysisError> {
    if !check_optimal_access(scheme, true).pass {
        return Err(AnalysisError::NotOptimalAccess);
    }
    let alpha = spec.params.alpha;
    let s = spec.params.s();
    if alpha == 1 || s == 1 {
        return Err(AnalysisError::DegenerateParams);
    }
    let f = spec.field();
    let targets = right_nodes(spec, scheme, mode);
    let mut left = vec![0usize; alpha];
    let mut right = Vec::with_capacity(targets.len());
    for &j in &targets {
        if j == helper && mode != AuditMode::Constant {
            continue;
        }
        let m = scheme.matrix_for(f, alpha, helper, j, None)?;
        let space = Subspace::row_space(&m);
        let mut deg = 0usize;
        for t in 0..alpha {
            let e = Matrix::basis_row(f, alpha, t);
            if space.contains_vector(e.row(0)) {
                left[t] += 1;
                deg += 1;
            }
        }
        right.push((j, deg));
    }
    let edge_count: usize = left.iter().sum();
    let right_total: usize = right.iter().map(|&(_, d)| d).sum();
    let beta = spec.params.beta();
    let membership_bound = floor_log(s, alpha).expect("s >= 2, alpha >= 2");
    let max_left = left.iter().copied().max().unwrap_or(0);
    let n_right = right.len();
    let implied = if n_right == 0 {
        1u128
    } else {
        (s as u128).pow(n_right.div_ceil(s) as u32)
    };
    let identity_ok = edge_count == right_total && right_total == beta * n_right;
    let pass = identity_ok && max_left <= membership_bound;
    Ok(BipartiteAudit {
        left_degrees: left,
        right_degrees: right,
        edge_count,
        max_left_degree: max_left,
        membership_bound,
        implied_bound: implied,
        pass,
    })
}
