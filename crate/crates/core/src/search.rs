//! Brute-force oracle over optimal-access repair schemes for a fixed code.
//!
//! The space is restricted to helper-set-independent access-list schemes:
//! per (helper, failed) pair, a choice of beta accessed rows out of alpha.
//! Feasibility of a candidate for one failed node involves only that node's
//! matrices, so the search factors per node and results combine by cross
//! product.

use crate::code::CodeSpec;
use crate::repair::{derive_combination, helper_sets, RepairMatrix, RepairScheme, SchemeMode};
use itertools::Itertools;
use rayon::prelude::*;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("candidate space {candidates} exceeds the limit {limit}")]
    LimitExceeded { candidates: u128, limit: u128 },
    #[error("invalid search input: {0}")]
    InvalidInput(String),
}

pub const DEFAULT_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone)]
pub struct SearchSpec {
    /// Nodes whose repair the scheme must provide.
    pub targets: Vec<usize>,
    /// Maximum candidate count per target node.
    pub limit: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStats {
    pub node: usize,
    pub candidates: u128,
    pub feasible_count: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub per_node: Vec<NodeStats>,
    pub elapsed_ms: u128,
}

#[derive(Debug)]
pub struct SearchOutcome {
    /// A full scheme if every target node has a feasible candidate.
    pub found: Option<RepairScheme>,
    pub stats: SearchStats,
}

/// True iff the per-helper access lists repair `failed` from every admissible
/// helper set (for d = n-1 there is exactly one).
pub fn node_feasible(
    spec: &CodeSpec,
    failed: usize,
    candidate: &[(usize, Vec<usize>)],
) -> bool {
    let mut scheme = RepairScheme::new(SchemeMode::HelperIndependent, [failed]);
    for (helper, rows) in candidate {
        scheme.insert_helper_independent(*helper, failed, RepairMatrix::Access(rows.clone()));
    }
    helper_sets(spec.params.n, spec.params.d, failed)
        .iter()
        .all(|d_set| derive_combination(spec, &scheme, failed, d_set).is_ok())
}

/// Lexicographic list of all beta-subsets of 0..alpha.
fn access_choices(alpha: usize, beta: usize) -> Vec<Vec<usize>> {
    (0..alpha).combinations(beta).collect()
}

/// Decodes candidate index -> per-helper choice indices (mixed-radix, most
/// significant digit on the first helper, so enumeration is lexicographic).
fn decode_candidate(index: u128, helpers: usize, base: u128) -> Vec<usize> {
    let mut digits = vec![0usize; helpers];
    let mut rest = index;
    for d in (0..helpers).rev() {
        digits[d] = (rest % base) as usize;
        rest /= base;
    }
    digits
}

pub fn exhaustive_search(
    spec: &CodeSpec,
    search: &SearchSpec,
) -> Result<SearchOutcome, SearchError> {
    let start = Instant::now();
    let n = spec.params.n;
    let alpha = spec.params.alpha;
    let beta = spec.params.beta();
    for &t in &search.targets {
        if t >= n {
            return Err(SearchError::InvalidInput(format!("target node {t} out of range")));
        }
    }
    let choices = access_choices(alpha, beta);
    let base = choices.len() as u128;
    let helpers_per_node = n - 1;
    let candidates = base
        .checked_pow(helpers_per_node as u32)
        .ok_or(SearchError::LimitExceeded { candidates: u128::MAX, limit: search.limit })?;
    if candidates > search.limit {
        return Err(SearchError::LimitExceeded { candidates, limit: search.limit });
    }

    let mut per_node = Vec::with_capacity(search.targets.len());
    let mut winners: Vec<Option<(usize, Vec<(usize, Vec<usize>)>)>> = Vec::new();
    for &failed in &search.targets {
        let helper_ids: Vec<usize> = (0..n).filter(|&v| v != failed).collect();
        // deterministic: feasible candidates recorded by index, first kept
        let feasible: Vec<u128> = (0..candidates)
            .into_par_iter()
            .filter(|&idx| {
                let digits = decode_candidate(idx, helpers_per_node, base);
                let candidate: Vec<(usize, Vec<usize>)> = helper_ids
                    .iter()
                    .zip(&digits)
                    .map(|(&h, &c)| (h, choices[c].clone()))
                    .collect();
                node_feasible(spec, failed, &candidate)
            })
            .collect();
        let first = feasible.iter().copied().min();
        per_node.push(NodeStats {
            node: failed,
            candidates,
            feasible_count: feasible.len() as u128,
        });
        winners.push(first.map(|idx| {
            let digits = decode_candidate(idx, helpers_per_node, base);
            let candidate: Vec<(usize, Vec<usize>)> = helper_ids
                .iter()
                .zip(&digits)
                .map(|(&h, &c)| (h, choices[c].clone()))
                .collect();
            (failed, candidate)
        }));
    }

    let found = if winners.iter().all(|w| w.is_some()) && !winners.is_empty() {
        let mut scheme =
            RepairScheme::new(SchemeMode::HelperIndependent, search.targets.iter().copied());
        for w in winners.into_iter().flatten() {
            let (failed, candidate) = w;
            for (helper, rows) in candidate {
                scheme.insert_helper_independent(helper, failed, RepairMatrix::Access(rows));
            }
        }
        Some(scheme)
    } else {
        None
    };
    Ok(SearchOutcome {
        found,
        stats: SearchStats { per_node, elapsed_ms: start.elapsed().as_millis() },
    })
}
