//! Constructors for codes achieving the sub-packetization lower bounds:
//! the Case-2 family (alpha = Q = d-k+1, repair of Q systematic nodes), the
//! fixed coupled-layer example (Q=3, r=4, k=4), and a best-effort Case-1
//! builder (alpha = s^{k/s}, repair of all k systematic nodes), together with
//! structure verifiers for both cases.
//!
//! The structure theorems dictate shapes, not coefficients. Coefficients come
//! from Vandermonde columns (the v rows) and per-plane Cauchy arrays (all
//! diagonal entries); each attempt is then verified globally (MDS and repair
//! feasibility from every helper set) with witness-guided resampling of the
//! implicated coefficients, up to `max_retries` fresh attempts. Small fields
//! such as GF(13) admit valid coefficient choices but reject most random
//! ones, so the guided walk matters: it converges where independent uniform
//! sampling essentially never does.

use crate::algebra::{FieldSpec, Matrix};
use crate::code::{CodeError, CodeParams, CodeSpec};
use crate::repair::{
    check_full_rank, check_interference_alignment, check_optimal_access, helper_sets,
    CheckReport, RepairError, RepairScheme, SchemeMode,
};
use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("construction failed after {retries} attempts: {reason}")]
    ConstructionFailed { retries: usize, reason: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Repair(#[from] RepairError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionConfig {
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig { seed: 0, max_retries: 64 }
    }
}

/// Case-2 coefficient record: for j < Q the block A_{p_i,u_j} is diagonal
/// except row j, which holds v_{i,j}; for j >= Q it is the diagonal P'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Form {
    pub q: usize,
    /// diagonals[i][j][l] for l != j; the slot l == j is unused (0).
    pub diagonals: Vec<Vec<Vec<u64>>>,
    /// v_rows[i][j], each a length-Q row, j < Q.
    pub v_rows: Vec<Vec<Vec<u64>>>,
    /// pprime[i][j - Q], a length-Q diagonal, for Q <= j < k.
    pub pprime: Vec<Vec<Vec<u64>>>,
}

/// Case-1 shape record: per failed node the accessed rows and the supports
/// (digit lines) of its v rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case1Form {
    pub s: usize,
    pub beta: usize,
    /// access[j]: sorted 0-based accessed rows of node u_j.
    pub access: Vec<Vec<usize>>,
    /// supports[j][t]: support of the v row at access position access[j][t].
    pub supports: Vec<Vec<Vec<usize>>>,
}

fn nonzero(rng: &mut ChaCha8Rng, f: &FieldSpec) -> u64 {
    rng.gen_range(1..f.order())
}

/// `count` distinct elements of the field, optionally excluding zero.
fn distinct_elements(
    rng: &mut ChaCha8Rng,
    f: &FieldSpec,
    count: usize,
    exclude_zero: bool,
) -> Option<Vec<u64>> {
    let pool = f.order() as usize - usize::from(exclude_zero);
    if count > pool {
        return None;
    }
    let picks = rand::seq::index::sample(rng, pool, count);
    Some(
        picks
            .iter()
            .map(|i| i as u64 + u64::from(exclude_zero))
            .collect(),
    )
}

/// Runs every post-construction check a builder output must satisfy.
fn verify_built(
    spec: &CodeSpec,
    scheme: &RepairScheme,
    structure: &dyn Fn(&CodeSpec, &RepairScheme) -> CheckReport,
) -> Result<(), String> {
    scheme
        .validate_ranks(spec.field(), spec.params.alpha, spec.params.beta())
        .map_err(|e| e.to_string())?;
    let access = check_optimal_access(scheme, true);
    if !access.pass {
        return Err(format!("optimal access: {:?}", access.offenders));
    }
    for &j in &scheme.w_nodes {
        let ia = check_interference_alignment(spec, scheme, j).map_err(|e| e.to_string())?;
        if !ia.pass {
            return Err(format!("interference alignment at node {j}: {:?}", ia.failures));
        }
        for d_set in helper_sets(spec.params.n, spec.params.d, j) {
            let fr = check_full_rank(spec, scheme, j, &d_set).map_err(|e| e.to_string())?;
            if !fr.pass {
                return Err(format!(
                    "full rank at node {j}, helpers {d_set:?}: {:?}",
                    fr.failures
                ));
            }
        }
    }
    let st = structure(spec, scheme);
    if !st.pass {
        return Err(format!("structure: {:?}", st.failures));
    }
    Ok(())
}

/// Number of witness-guided resampling steps per fresh attempt.
const REPAIR_STEPS: usize = 600;

/// A scaled [r,Q] Vandermonde column family on distinct nonzero points:
/// per parity i a length-`width` row (scale_i, scale_i*x_i, scale_i*x_i^2, ..),
/// every `width`-subset of which is a basis and every entry nonzero.
fn sample_v_column(
    rng: &mut ChaCha8Rng,
    f: &FieldSpec,
    r: usize,
    width: usize,
) -> Vec<Vec<u64>> {
    let points = distinct_elements(rng, f, r, true).expect("q > r checked");
    points
        .iter()
        .map(|&x| {
            let scale = nonzero(rng, f);
            let mut acc = 1u64;
            (0..width)
                .map(|_| {
                    let v = f.mul(scale, acc);
                    acc = f.mul(acc, x);
                    v
                })
                .collect()
        })
        .collect()
}

/// A row/column-scaled r x k Cauchy array: every square submatrix invertible.
fn sample_plane(rng: &mut ChaCha8Rng, f: &FieldSpec, r: usize, k: usize) -> Vec<Vec<u64>> {
    let pts = distinct_elements(rng, f, r + k, false).expect("q >= r + k checked");
    let (xs, ys) = pts.split_at(r);
    let row_scale: Vec<u64> = (0..r).map(|_| nonzero(rng, f)).collect();
    let col_scale: Vec<u64> = (0..k).map(|_| nonzero(rng, f)).collect();
    (0..r)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let denom = f.sub(xs[i], ys[j]);
                    f.div(f.mul(row_scale[i], col_scale[j]), denom).expect("distinct points")
                })
                .collect()
        })
        .collect()
}

/// First (failed node, helper set) whose combination map cannot be solved.
fn first_infeasible(spec: &CodeSpec, scheme: &RepairScheme) -> Option<(usize, Vec<usize>)> {
    for &j in &scheme.w_nodes {
        for d_set in helper_sets(spec.params.n, spec.params.d, j) {
            if crate::repair::derive_combination(spec, scheme, j, &d_set).is_err() {
                return Some((j, d_set));
            }
        }
    }
    None
}

/// Builds a Case-2 code: alpha = Q = d-k+1, beta = 1, repairable set
/// W = first Q systematic nodes with constant access S_{u_j} = e_j.
pub fn build_case2(
    n: usize,
    k: usize,
    d: usize,
    field: &FieldSpec,
    config: &ConstructionConfig,
) -> Result<(CodeSpec, RepairScheme, Case2Form), ConstructionError> {
    if config.max_retries == 0 {
        return Err(ConstructionError::ParamViolation("max_retries must be >= 1".into()));
    }
    if d < k + 1 {
        return Err(ConstructionError::ParamViolation(format!(
            "Case 2 needs d >= k+1, got d={d} k={k}"
        )));
    }
    if k < 3 {
        return Err(ConstructionError::ParamViolation(format!("Case 2 needs k >= 3, got k={k}")));
    }
    if n < d + 1 {
        return Err(ConstructionError::ParamViolation(format!(
            "need n >= d+1, got n={n} d={d}"
        )));
    }
    let q_nodes = d - k + 1;
    if q_nodes > k {
        return Err(ConstructionError::ParamViolation(format!(
            "Case 2 needs Q = d-k+1 <= k, got Q={q_nodes} k={k}"
        )));
    }
    let r = n - k;
    let q = field.order();
    if q <= r as u64 {
        return Err(ConstructionError::ParamViolation(format!(
            "field of order {q} too small: need q > r = {r} for distinct nonzero evaluation points"
        )));
    }
    if (q as usize) < r + k {
        return Err(ConstructionError::ParamViolation(format!(
            "field of order {q} too small: per-plane Cauchy arrays need q >= r + k = {}",
            r + k
        )));
    }

    let params = CodeParams::new(n, k, d, q_nodes, field.clone())?;
    let scheme = RepairScheme::constant_access((0..q_nodes).map(|j| (j, vec![j])));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut last_reason = String::new();
    for _attempt in 0..config.max_retries {
        // v[i][j] and planes[l][i][j]
        let mut v: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); q_nodes]; r];
        for j in 0..q_nodes {
            let col = sample_v_column(&mut rng, field, r, q_nodes);
            for (i, row) in col.into_iter().enumerate() {
                v[i][j] = row;
            }
        }
        let mut planes: Vec<Vec<Vec<u64>>> =
            (0..q_nodes).map(|_| sample_plane(&mut rng, field, r, k)).collect();

        for _step in 0..REPAIR_STEPS {
            let blocks = case2_blocks(field, r, k, q_nodes, &v, &planes);
            let spec =
                CodeSpec::new(params.clone(), (0..k).collect(), (k..n).collect(), blocks)?;
            let mds = spec.mds_check()?;
            if let Some((_, cols)) = &mds.witness {
                for &j in cols {
                    if j < q_nodes {
                        let col = sample_v_column(&mut rng, field, r, q_nodes);
                        for (i, row) in col.into_iter().enumerate() {
                            v[i][j] = row;
                        }
                    }
                }
                let l = rng.gen_range(0..q_nodes);
                planes[l] = sample_plane(&mut rng, field, r, k);
                last_reason = format!("mds_check witness {:?}", mds.witness);
                continue;
            }
            if let Some((j, d_set)) = first_infeasible(&spec, &scheme) {
                let col = sample_v_column(&mut rng, field, r, q_nodes);
                for (i, row) in col.into_iter().enumerate() {
                    v[i][j] = row;
                }
                planes[j] = sample_plane(&mut rng, field, r, k);
                last_reason = format!("repair of node {j} infeasible from {d_set:?}");
                continue;
            }
            let structure = |s: &CodeSpec, sc: &RepairScheme| verify_structure_case2(s, sc);
            match verify_built(&spec, &scheme, &structure) {
                Ok(()) => {
                    let form = case2_form(r, k, q_nodes, &v, &planes);
                    return Ok((spec, scheme, form));
                }
                Err(reason) => {
                    last_reason = reason;
                    break;
                }
            }
        }
    }
    Err(ConstructionError::ConstructionFailed {
        retries: config.max_retries,
        reason: last_reason,
    })
}

fn case2_form(
    r: usize,
    k: usize,
    q_nodes: usize,
    v: &[Vec<Vec<u64>>],
    planes: &[Vec<Vec<u64>>],
) -> Case2Form {
    let mut diagonals = vec![vec![vec![0u64; q_nodes]; q_nodes]; r];
    let mut pprime = vec![vec![vec![0u64; q_nodes]; k - q_nodes]; r];
    for i in 0..r {
        for l in 0..q_nodes {
            for j in 0..k {
                if j < q_nodes {
                    if l != j {
                        diagonals[i][j][l] = planes[l][i][j];
                    }
                } else {
                    pprime[i][j - q_nodes][l] = planes[l][i][j];
                }
            }
        }
    }
    Case2Form {
        q: q_nodes,
        diagonals,
        v_rows: v.to_vec(),
        pprime,
    }
}

fn case2_blocks(
    f: &FieldSpec,
    r: usize,
    k: usize,
    q_nodes: usize,
    v: &[Vec<Vec<u64>>],
    planes: &[Vec<Vec<u64>>],
) -> Vec<Vec<Matrix>> {
    let mut blocks = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let mut a = Matrix::zero(f, q_nodes, q_nodes);
            for l in 0..q_nodes {
                if j < q_nodes && l == j {
                    for c in 0..q_nodes {
                        a.set(l, c, v[i][j][c]);
                    }
                } else {
                    a.set(l, l, planes[l][i][j]);
                }
            }
            row.push(a);
        }
        blocks.push(row);
    }
    blocks
}

/// Structural conditions of the Case-2 form: for each repairable node, its
/// block column is diagonal outside the accessed row, the v rows form
/// [r,Q]-MDS columns, and the remaining block columns are diagonal with each
/// plane's r x (k-Q) coefficient array totally invertible.
pub fn verify_structure_case2(spec: &CodeSpec, scheme: &RepairScheme) -> CheckReport {
    let mut report = CheckReport::passing();
    let p = &spec.params;
    let (r, k, alpha) = (p.r(), p.k, p.alpha);
    let q_nodes = p.s();
    if alpha != q_nodes {
        report.fail(format!("alpha {alpha} != Q {q_nodes}"));
        return report;
    }
    if p.beta() != 1 {
        report.fail(format!("beta {} != 1", p.beta()));
        return report;
    }
    let access = check_optimal_access(scheme, true);
    if !access.pass {
        report.fail("scheme is not strict optimal-access".to_string());
        return report;
    }
    if scheme.mode != SchemeMode::Constant {
        report.fail("Case-2 scheme must use constant repair matrices".to_string());
        return report;
    }
    if scheme.w_nodes.len() != q_nodes {
        report.fail(format!("|W| = {} != Q = {q_nodes}", scheme.w_nodes.len()));
    }
    // accessed row per repairable node, required pairwise distinct
    let mut w_rows: Vec<(usize, usize, usize)> = Vec::new(); // (block col, node, row)
    for &w in &scheme.w_nodes {
        let Some(b) = spec.systematic_index(w) else {
            report.fail(format!("repairable node {w} is not systematic"));
            continue;
        };
        match scheme.get(w, w, None) {
            Ok(m) => {
                let rows = m.to_matrix(spec.field(), alpha);
                let accessed: Vec<usize> =
                    (0..alpha).filter(|&c| rows.get(0, c) != 0).collect();
                if rows.rows() != 1 || accessed.len() != 1 {
                    report.fail(format!("node {w}: expected a single accessed row"));
                    continue;
                }
                w_rows.push((b, w, accessed[0]));
            }
            Err(e) => report.fail(format!("node {w}: {e}")),
        }
    }
    let distinct: BTreeSet<usize> = w_rows.iter().map(|&(_, _, l)| l).collect();
    if distinct.len() != w_rows.len() {
        report.fail("accessed rows of W are not pairwise distinct".to_string());
    }
    let w_cols: BTreeSet<usize> = w_rows.iter().map(|&(b, _, _)| b).collect();

    // diagonal-except-v shape and the [r,Q] MDS column condition
    for &(b, w, vrow) in &w_rows {
        for i in 0..r {
            let a = &spec.blocks[i][b];
            for l in 0..alpha {
                if l == vrow {
                    continue;
                }
                let bad = (0..alpha).any(|c| (c != l) && a.get(l, c) != 0);
                if bad || a.get(l, l) == 0 {
                    report.fail(format!(
                        "A[p_{i}][u block {b}] row {l}: expected a nonzero diagonal entry only"
                    ));
                }
            }
        }
        if r < q_nodes {
            report.fail(format!(
                "node {w}: need at least Q = {q_nodes} parities for the [r,Q] MDS columns, have r = {r}"
            ));
            continue;
        }
        for subset in (0..r).combinations(q_nodes) {
            let rows: Vec<Vec<u64>> = subset
                .iter()
                .map(|&i| spec.blocks[i][b].row(vrow).to_vec())
                .collect();
            let m = Matrix::from_rows(spec.field(), &rows).expect("uniform width");
            if !m.is_nonsingular() {
                report.fail(format!(
                    "node {w}: v rows of parities {subset:?} are singular (MDS-column condition)"
                ));
                break;
            }
        }
    }

    // non-repairable systematic columns: diagonal, planes totally invertible
    let others: Vec<usize> = (0..k).filter(|b| !w_cols.contains(b)).collect();
    for &b in &others {
        for i in 0..r {
            let a = &spec.blocks[i][b];
            for l in 0..alpha {
                let bad = (0..alpha).any(|c| (c != l) && a.get(l, c) != 0);
                if bad || a.get(l, l) == 0 {
                    report.fail(format!(
                        "A[p_{i}][u block {b}] must be diagonal with nonzero entries (row {l})"
                    ));
                }
            }
        }
    }
    if !others.is_empty() {
        for l in 0..alpha {
            let plane_rows: Vec<Vec<u64>> = (0..r)
                .map(|i| others.iter().map(|&b| spec.blocks[i][b].get(l, l)).collect())
                .collect();
            let plane = Matrix::from_rows(spec.field(), &plane_rows).expect("rect");
            for m in 1..=r.min(others.len()) {
                for rows in (0..r).combinations(m) {
                    for cols in (0..others.len()).combinations(m) {
                        let sub = plane.select(&rows, &cols);
                        if !sub.is_nonsingular() {
                            report.fail(format!(
                                "plane {l}: P' submatrix rows {rows:?} cols {cols:?} singular"
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}

/// The fixed nonzero-position template of the coupled example's parity-check
/// matrix (Q=3, r=4, k=4, n=8): per parity block row, diagonal entries in
/// every systematic section except a full coupling row per plane, plus the
/// identity section.
pub fn coupled_template_positions() -> BTreeSet<(usize, usize)> {
    let (q_nodes, r, k) = (3usize, 4usize, 4usize);
    let mut set = BTreeSet::new();
    for i in 0..r {
        for j in 0..k {
            for l in 0..q_nodes {
                if j < q_nodes && l == j {
                    for c in 0..q_nodes {
                        set.insert((i * q_nodes + l, j * q_nodes + c));
                    }
                } else {
                    set.insert((i * q_nodes + l, j * q_nodes + l));
                }
            }
        }
        for l in 0..q_nodes {
            set.insert((i * q_nodes + l, (k + i) * q_nodes + l));
        }
    }
    set
}

/// Builds the coupled-layer example: n=8, k=4, d=6, Q=3, r=4, alpha=3.
pub fn build_coupled_example(
    field: &FieldSpec,
    config: &ConstructionConfig,
) -> Result<(CodeSpec, RepairScheme), ConstructionError> {
    let (spec, scheme, _) = build_case2(8, 4, 6, field, config).map_err(|e| match e {
        err @ ConstructionError::ConstructionFailed { .. } => err,
        other => ConstructionError::ConstructionFailed { retries: 0, reason: other.to_string() },
    })?;
    let h = spec.parity_check_matrix();
    let mut positions = BTreeSet::new();
    for rrow in 0..h.rows() {
        for c in 0..h.cols() {
            if h.get(rrow, c) != 0 {
                positions.insert((rrow, c));
            }
        }
    }
    if positions != coupled_template_positions() {
        return Err(ConstructionError::ConstructionFailed {
            retries: config.max_retries,
            reason: "parity-check sparsity deviates from the coupled template".into(),
        });
    }
    Ok((spec, scheme))
}

/// Base-s digit `g` (0 = least significant) of `t`.
fn digit(t: usize, g: usize, s: usize) -> usize {
    (t / s.pow(g as u32)) % s
}

/// Case-1 access set of the j-th systematic node: all t whose digit in the
/// node's group equals the node's residue. Each basis vector then lies in
/// exactly k/s = log_s(alpha) access sets — the saturated counting.
pub fn case1_access(j: usize, s: usize, alpha: usize) -> Vec<usize> {
    let (g, c) = (j / s, j % s);
    (0..alpha).filter(|&t| digit(t, g, s) == c).collect()
}

/// Best-effort Case-1 builder: alpha = s^{k/s}, all k systematic nodes
/// repairable. The structure theorem is necessary, not sufficient, so this
/// may fail even at valid parameters; failures are reported, never hidden.
pub fn build_case1(
    n: usize,
    k: usize,
    d: usize,
    field: &FieldSpec,
    config: &ConstructionConfig,
) -> Result<(CodeSpec, RepairScheme, Case1Form), ConstructionError> {
    if config.max_retries == 0 {
        return Err(ConstructionError::ParamViolation("max_retries must be >= 1".into()));
    }
    if d < k + 1 {
        return Err(ConstructionError::ParamViolation(format!(
            "Case 1 needs d >= k+1, got d={d} k={k}"
        )));
    }
    if k < 3 {
        return Err(ConstructionError::ParamViolation(format!("Case 1 needs k >= 3, got k={k}")));
    }
    if n < d + 1 {
        return Err(ConstructionError::ParamViolation(format!(
            "need n >= d+1, got n={n} d={d}"
        )));
    }
    let s = d - k + 1;
    if k % s != 0 {
        return Err(ConstructionError::ParamViolation(format!(
            "Case 1 needs s = d-k+1 to divide k, got s={s} k={k}"
        )));
    }
    let r = n - k;
    let q = field.order();
    if q <= r as u64 {
        return Err(ConstructionError::ParamViolation(format!(
            "field of order {q} too small: need q > r = {r}"
        )));
    }
    if (q as usize) < r + k {
        return Err(ConstructionError::ParamViolation(format!(
            "field of order {q} too small: per-row Cauchy arrays need q >= r + k = {}",
            r + k
        )));
    }
    let groups = k / s;
    let alpha = s.checked_pow(groups as u32).filter(|&a| a <= 1 << 16).ok_or_else(|| {
        ConstructionError::ParamViolation(format!("alpha = {s}^{groups} too large"))
    })?;
    let params = CodeParams::new(n, k, d, alpha, field.clone())?;
    let beta = params.beta();

    let access: Vec<Vec<usize>> = (0..k).map(|j| case1_access(j, s, alpha)).collect();
    let supports: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|j| {
            let g = j / s;
            access[j]
                .iter()
                .map(|&t| {
                    let base = t - digit(t, g, s) * s.pow(g as u32);
                    (0..s).map(|m| base + m * s.pow(g as u32)).collect()
                })
                .collect()
        })
        .collect();
    let form = Case1Form { s, beta, access: access.clone(), supports: supports.clone() };

    let scheme = RepairScheme::constant_access((0..k).map(|j| (j, access[j].clone())));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut last_reason = String::new();
    for _attempt in 0..config.max_retries {
        // v_lines[j][t_idx][i]: coefficients along the support line, one
        // [r,s]-MDS Vandermonde column family per line
        let mut v_lines: Vec<Vec<Vec<Vec<u64>>>> = (0..k)
            .map(|j| {
                (0..access[j].len())
                    .map(|_| sample_v_column(&mut rng, field, r, s))
                    .collect()
            })
            .collect();
        // planes[t][i][j]: the scaled-basis row entries, Cauchy per row t
        let mut planes: Vec<Vec<Vec<u64>>> =
            (0..alpha).map(|_| sample_plane(&mut rng, field, r, k)).collect();

        for _step in 0..REPAIR_STEPS {
            let mut blocks = vec![vec![Matrix::zero(field, alpha, alpha); k]; r];
            for j in 0..k {
                for (t_idx, &t) in access[j].iter().enumerate() {
                    for i in 0..r {
                        for (m, &col) in supports[j][t_idx].iter().enumerate() {
                            blocks[i][j].set(t, col, v_lines[j][t_idx][i][m]);
                        }
                    }
                }
                for t in 0..alpha {
                    if !access[j].contains(&t) {
                        for i in 0..r {
                            blocks[i][j].set(t, t, planes[t][i][j]);
                        }
                    }
                }
            }
            let spec =
                CodeSpec::new(params.clone(), (0..k).collect(), (k..n).collect(), blocks)?;
            let mds = spec.mds_check()?;
            if let Some((_, cols)) = &mds.witness {
                for &j in cols {
                    for t_idx in 0..access[j].len() {
                        v_lines[j][t_idx] = sample_v_column(&mut rng, field, r, s);
                    }
                }
                let t = rng.gen_range(0..alpha);
                planes[t] = sample_plane(&mut rng, field, r, k);
                last_reason = format!("mds_check witness {:?}", mds.witness);
                continue;
            }
            if let Some((j, d_set)) = first_infeasible(&spec, &scheme) {
                for t_idx in 0..access[j].len() {
                    v_lines[j][t_idx] = sample_v_column(&mut rng, field, r, s);
                }
                let t = rng.gen_range(0..alpha);
                planes[t] = sample_plane(&mut rng, field, r, k);
                last_reason = format!("repair of node {j} infeasible from {d_set:?}");
                continue;
            }
            let structure = |sp: &CodeSpec, sc: &RepairScheme| verify_structure_case1(sp, sc);
            match verify_built(&spec, &scheme, &structure) {
                Ok(()) => return Ok((spec, scheme, form)),
                Err(reason) => {
                    last_reason = reason;
                    break;
                }
            }
        }
    }
    Err(ConstructionError::ConstructionFailed {
        retries: config.max_retries,
        reason: last_reason,
    })
}

/// Structural conditions of the Case-1 form: per (parity, systematic) block,
/// v rows with cardinality-s pairwise-disjoint supports independent of the
/// parity index, v columns forming an [r,s] MDS generator per line, and the
/// remaining rows nonzero multiples of their own basis vector.
pub fn verify_structure_case1(spec: &CodeSpec, scheme: &RepairScheme) -> CheckReport {
    let mut report = CheckReport::passing();
    let p = &spec.params;
    let (r, k, alpha, s) = (p.r(), p.k, p.alpha, p.s());
    if s < 2 {
        report.fail("Case 1 needs s >= 2".to_string());
        return report;
    }
    if k % s != 0 || alpha != s.pow((k / s) as u32) {
        report.fail(format!("alpha {alpha} != s^(k/s) for s={s}, k={k}"));
        return report;
    }
    let beta = p.beta();
    let access_rep = check_optimal_access(scheme, true);
    if !access_rep.pass {
        report.fail("scheme is not strict optimal-access".to_string());
        return report;
    }
    if scheme.mode != SchemeMode::Constant {
        report.fail("Case-1 scheme must use constant repair matrices".to_string());
        return report;
    }
    let want: BTreeSet<usize> = spec.systematic_nodes.iter().copied().collect();
    if scheme.w_nodes != want {
        report.fail("Case 1 requires repair of exactly the systematic nodes".to_string());
        return report;
    }
    if r < s {
        report.fail(format!("need r >= s for the [r,s] MDS columns, have r={r} s={s}"));
        return report;
    }
    for (b, &u) in spec.systematic_nodes.iter().enumerate() {
        let m = match scheme.get(u, u, None) {
            Ok(rm) => rm.to_matrix(spec.field(), alpha),
            Err(e) => {
                report.fail(format!("node {u}: {e}"));
                continue;
            }
        };
        let mut accessed: Vec<usize> = Vec::new();
        for row in 0..m.rows() {
            accessed.extend((0..alpha).filter(|&c| m.get(row, c) != 0));
        }
        accessed.sort_unstable();
        if accessed.len() != beta {
            report.fail(format!("node {u}: expected beta = {beta} accessed rows"));
            continue;
        }
        // supports of the v rows: size s, disjoint, independent of i
        let mut line_supports: Vec<Vec<usize>> = Vec::with_capacity(beta);
        for &t in &accessed {
            let supp0: Vec<usize> =
                (0..alpha).filter(|&c| spec.blocks[0][b].get(t, c) != 0).collect();
            if supp0.len() != s {
                report.fail(format!(
                    "node {u}, accessed row {t}: v support has size {} != s = {s}",
                    supp0.len()
                ));
            }
            for i in 1..r {
                let supp: Vec<usize> =
                    (0..alpha).filter(|&c| spec.blocks[i][b].get(t, c) != 0).collect();
                if supp != supp0 {
                    report.fail(format!(
                        "node {u}, accessed row {t}: support differs between parities 0 and {i}"
                    ));
                }
            }
            line_supports.push(supp0);
        }
        let flat: BTreeSet<usize> = line_supports.iter().flatten().copied().collect();
        if flat.len() != line_supports.iter().map(|v| v.len()).sum::<usize>() {
            report.fail(format!("node {u}: v supports are not pairwise disjoint"));
        }
        // [r,s] MDS columns per line
        for (t_idx, &t) in accessed.iter().enumerate() {
            let supp = &line_supports[t_idx];
            if supp.len() != s {
                continue;
            }
            for subset in (0..r).combinations(s) {
                let rows: Vec<Vec<u64>> = subset
                    .iter()
                    .map(|&i| supp.iter().map(|&c| spec.blocks[i][b].get(t, c)).collect())
                    .collect();
                let vm = Matrix::from_rows(spec.field(), &rows).expect("rect");
                if !vm.is_nonsingular() {
                    report.fail(format!(
                        "node {u}, line at row {t}: parities {subset:?} not [r,s]-MDS"
                    ));
                    break;
                }
            }
        }
        // remaining rows: nonzero multiple of the row's own basis vector
        for t in 0..alpha {
            if accessed.contains(&t) {
                continue;
            }
            for i in 0..r {
                let a = &spec.blocks[i][b];
                let bad = (0..alpha).any(|c| (c != t) && a.get(t, c) != 0);
                if bad || a.get(t, t) == 0 {
                    report.fail(format!(
                        "node {u}, parity {i}, row {t}: expected a scaled basis vector e_{t}"
                    ));
                }
            }
        }
    }
    report
}
