//! Systematic vector-code model: parameters, block generator matrix,
//! encoding, MDS checks, decoding and puncturing.
//!
//! Node indices are 0-based everywhere in this crate; the JSON format
//! converts to the 1-based external convention.

use crate::algebra::{FieldSpec, Matrix, MatrixError, Subspace};
use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("beta = alpha/(d-k+1) must be an integer: alpha = {alpha}, s = {s}")]
    DivisibilityError { alpha: usize, s: usize },
    #[error("block A[{i}][{j}] has size {rows}x{cols}, expected {alpha}x{alpha}")]
    BlockSizeMismatch {
        i: usize,
        j: usize,
        rows: usize,
        cols: usize,
        alpha: usize,
    },
    #[error("value belongs to a different field than the code")]
    FieldMismatch,
    #[error("decoding underdetermined: need at least k nodes of full rank")]
    Underdetermined,
    #[error("puncturing must keep every systematic node")]
    UnsupportedPuncture,
    #[error("mds_check refuses n = {0} > 12 (exponential minor count)")]
    TooLargeForMinorCheck(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// MSR/MDS parameter set {(n,k,d), (alpha,beta), B, F_q}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub alpha: usize,
    pub field: FieldSpec,
}

impl CodeParams {
    pub fn new(
        n: usize,
        k: usize,
        d: usize,
        alpha: usize,
        field: FieldSpec,
    ) -> Result<Self, CodeError> {
        if k == 0 || n == 0 || k > n {
            return Err(CodeError::InvalidParams(format!("need 1 <= k <= n, got n={n} k={k}")));
        }
        if !(k <= d && d <= n.saturating_sub(1)) && n != k {
            return Err(CodeError::InvalidParams(format!(
                "need k <= d <= n-1, got k={k} d={d} n={n}"
            )));
        }
        if alpha == 0 {
            return Err(CodeError::InvalidParams("alpha must be positive".into()));
        }
        let params = CodeParams { n, k, d, alpha, field };
        let s = params.s();
        if alpha % s != 0 {
            return Err(CodeError::DivisibilityError { alpha, s });
        }
        Ok(params)
    }

    /// s = d - k + 1, the repair-bandwidth divisor.
    pub fn s(&self) -> usize {
        self.d - self.k + 1
    }

    /// Per-helper download beta = alpha / s.
    pub fn beta(&self) -> usize {
        self.alpha / self.s()
    }

    /// Number of parity nodes.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    /// Total message symbols B = k * alpha.
    pub fn message_len(&self) -> usize {
        self.k * self.alpha
    }

    /// Total repair download d * beta.
    pub fn repair_bandwidth(&self) -> usize {
        self.d * self.beta()
    }
}

/// A systematic vector code given by its r x k grid of alpha x alpha blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub params: CodeParams,
    /// Node ids of the k systematic nodes, in message-block order.
    pub systematic_nodes: Vec<usize>,
    /// Node ids of the r parity nodes.
    pub parity_nodes: Vec<usize>,
    /// blocks[i][j] = A_{p_i, u_j}.
    pub blocks: Vec<Vec<Matrix>>,
}

/// Message of k blocks, each a length-alpha column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub blocks: Vec<Vec<u64>>,
}

/// Codeword of n blocks ordered by node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub blocks: Vec<Vec<u64>>,
}

/// Result of the MDS block-minor check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdsReport {
    pub pass: bool,
    /// First failing (parity rows, systematic cols) pair, 0-based grid indices.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl CodeSpec {
    pub fn new(
        params: CodeParams,
        systematic_nodes: Vec<usize>,
        parity_nodes: Vec<usize>,
        blocks: Vec<Vec<Matrix>>,
    ) -> Result<Self, CodeError> {
        let (n, k, r, alpha) = (params.n, params.k, params.r(), params.alpha);
        if systematic_nodes.len() != k || parity_nodes.len() != r {
            return Err(CodeError::InvalidParams("node list sizes".into()));
        }
        let mut seen = vec![false; n];
        for &v in systematic_nodes.iter().chain(&parity_nodes) {
            if v >= n || seen[v] {
                return Err(CodeError::InvalidParams("node lists must partition [n]".into()));
            }
            seen[v] = true;
        }
        if blocks.len() != r {
            return Err(CodeError::InvalidParams("block grid row count".into()));
        }
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != k {
                return Err(CodeError::InvalidParams("block grid column count".into()));
            }
            for (j, a) in row.iter().enumerate() {
                if a.rows() != alpha || a.cols() != alpha {
                    return Err(CodeError::BlockSizeMismatch {
                        i,
                        j,
                        rows: a.rows(),
                        cols: a.cols(),
                        alpha,
                    });
                }
                if a.field() != &params.field {
                    return Err(CodeError::FieldMismatch);
                }
            }
        }
        Ok(CodeSpec {
            params,
            systematic_nodes,
            parity_nodes,
            blocks,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.params.field
    }

    /// Message-block index of a systematic node, if it is one.
    pub fn systematic_index(&self, node: usize) -> Option<usize> {
        self.systematic_nodes.iter().position(|&u| u == node)
    }

    pub fn parity_index(&self, node: usize) -> Option<usize> {
        self.parity_nodes.iter().position(|&p| p == node)
    }

    /// The alpha x (k*alpha) generator rows of a single node.
    pub fn node_generator(&self, node: usize) -> Matrix {
        let (k, alpha) = (self.params.k, self.params.alpha);
        let f = self.field();
        if let Some(j) = self.systematic_index(node) {
            let mut g = Matrix::zero(f, alpha, k * alpha);
            for t in 0..alpha {
                g.set(t, j * alpha + t, 1);
            }
            g
        } else {
            let i = self.parity_index(node).expect("node id in range");
            let row: Vec<&Matrix> = self.blocks[i].iter().collect();
            Matrix::hstack(&row).expect("block sizes validated")
        }
    }

    /// Full n*alpha x k*alpha generator, rows ordered by node index.
    pub fn assemble_generator(&self) -> Matrix {
        let parts: Vec<Matrix> = (0..self.params.n).map(|v| self.node_generator(v)).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::vstack(&refs).expect("uniform widths")
    }

    /// Parity-check matrix H with H*c = 0 for every codeword: [-A | I] under
    /// node ordering, vacuous sign over GF(2).
    pub fn parity_check_matrix(&self) -> Matrix {
        let (n, r, alpha) = (self.params.n, self.params.r(), self.params.alpha);
        let f = self.field();
        let mut h = Matrix::zero(f, r * alpha, n * alpha);
        for (i, _) in self.parity_nodes.iter().enumerate() {
            for v in 0..n {
                if let Some(j) = self.systematic_index(v) {
                    let neg = self.blocks[i][j].neg();
                    for a in 0..alpha {
                        for b in 0..alpha {
                            h.set(i * alpha + a, v * alpha + b, neg.get(a, b));
                        }
                    }
                } else if self.parity_index(v) == Some(i) {
                    for a in 0..alpha {
                        h.set(i * alpha + a, v * alpha + a, 1);
                    }
                }
            }
        }
        h
    }

    pub fn encode(&self, m: &Message) -> Result<Codeword, CodeError> {
        let (k, alpha) = (self.params.k, self.params.alpha);
        if m.blocks.len() != k || m.blocks.iter().any(|b| b.len() != alpha) {
            return Err(CodeError::InvalidParams("message shape".into()));
        }
        for b in &m.blocks {
            for &v in b {
                if !self.field().contains(v) {
                    return Err(CodeError::FieldMismatch);
                }
            }
        }
        let f = self.field();
        let mut out = vec![Vec::new(); self.params.n];
        for (j, &u) in self.systematic_nodes.iter().enumerate() {
            out[u] = m.blocks[j].clone();
        }
        for (i, &p) in self.parity_nodes.iter().enumerate() {
            let mut acc = vec![0u64; alpha];
            for (j, block) in self.blocks[i].iter().enumerate() {
                let part = block.mul_vec(&m.blocks[j])?;
                for (a, v) in acc.iter_mut().zip(part) {
                    *a = f.add(*a, v);
                }
            }
            out[p] = acc;
        }
        Ok(Codeword { blocks: out })
    }

    /// Basis message with a 1 in block `j`, position `t`, zero elsewhere.
    pub fn basis_message(&self, j: usize, t: usize) -> Message {
        let mut blocks = vec![vec![0u64; self.params.alpha]; self.params.k];
        blocks[j][t] = 1;
        Message { blocks }
    }

    /// MDS block-minor criterion: every m x m block submatrix of the A-grid
    /// must be nonsingular, 1 <= m <= min(r,k). Matches the square-submatrix
    /// condition on the generator grid.
    pub fn mds_check(&self) -> Result<MdsReport, CodeError> {
        if self.params.n > 12 {
            return Err(CodeError::TooLargeForMinorCheck(self.params.n));
        }
        let (r, k, alpha) = (self.params.r(), self.params.k, self.params.alpha);
        for m in 1..=r.min(k) {
            for rows in (0..r).combinations(m) {
                for cols in (0..k).combinations(m) {
                    let mut grid: Vec<Vec<&Matrix>> = Vec::with_capacity(m);
                    for &i in &rows {
                        grid.push(cols.iter().map(|&j| &self.blocks[i][j]).collect());
                    }
                    let row_mats: Vec<Matrix> = grid
                        .iter()
                        .map(|r| Matrix::hstack(r).expect("uniform"))
                        .collect();
                    let refs: Vec<&Matrix> = row_mats.iter().collect();
                    let big = Matrix::vstack(&refs)?;
                    if big.rank() != m * alpha {
                        return Ok(MdsReport {
                            pass: false,
                            witness: Some((rows, cols)),
                        });
                    }
                }
            }
        }
        Ok(MdsReport { pass: true, witness: None })
    }

    /// Recovers the message from the contents of the given nodes.
    pub fn decode_from_nodes(
        &self,
        nodes: &[usize],
        symbols: &[Vec<u64>],
    ) -> Result<Message, CodeError> {
        let (k, alpha) = (self.params.k, self.params.alpha);
        if nodes.len() < k {
            return Err(CodeError::Underdetermined);
        }
        if nodes.len() != symbols.len() || symbols.iter().any(|s| s.len() != alpha) {
            return Err(CodeError::InvalidParams("symbol shape".into()));
        }
        let gens: Vec<Matrix> = nodes.iter().map(|&v| self.node_generator(v)).collect();
        let refs: Vec<&Matrix> = gens.iter().collect();
        let coeff = Matrix::vstack(&refs)?;
        let rhs_rows: Vec<Vec<u64>> = symbols
            .iter()
            .flat_map(|s| s.iter().map(|&v| vec![v]))
            .collect();
        let rhs = Matrix::from_rows(self.field(), &rhs_rows)?;
        let sol = coeff.solve_unique(&rhs).map_err(|e| match e {
            MatrixError::Singular => CodeError::Underdetermined,
            other => CodeError::Matrix(other),
        })?;
        let blocks = (0..k)
            .map(|j| (0..alpha).map(|t| sol.get(j * alpha + t, 0)).collect())
            .collect();
        Ok(Message { blocks })
    }

    /// Restriction to a node subset that keeps every systematic node.
    pub fn puncture(&self, keep: &[usize]) -> Result<CodeSpec, CodeError> {
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        for &u in &self.systematic_nodes {
            if !keep_sorted.contains(&u) {
                return Err(CodeError::UnsupportedPuncture);
            }
        }
        if keep_sorted.len() < self.params.k {
            return Err(CodeError::InvalidParams("keep set smaller than k".into()));
        }
        // renumber nodes to 0..keep.len() preserving order
        let remap = |old: usize| keep_sorted.iter().position(|&v| v == old);
        let new_n = keep_sorted.len();
        let kept_parities: Vec<usize> = self
            .parity_nodes
            .iter()
            .enumerate()
            .filter(|(_, p)| keep_sorted.contains(p))
            .map(|(i, _)| i)
            .collect();
        let new_d = self.params.d.min(new_n - 1).max(self.params.k);
        // keep d when possible; a punctured code used for Corollary-4 style
        // arguments sets n' = d+1 so d is still valid
        let new_d = if self.params.d <= new_n - 1 { self.params.d } else { new_d };
        let params = CodeParams::new(
            new_n,
            self.params.k,
            new_d,
            self.params.alpha,
            self.params.field.clone(),
        )?;
        let systematic_nodes: Vec<usize> = self
            .systematic_nodes
            .iter()
            .map(|&u| remap(u).expect("kept"))
            .collect();
        let parity_nodes: Vec<usize> = self
            .parity_nodes
            .iter()
            .filter_map(|&p| remap(p))
            .collect();
        let blocks: Vec<Vec<Matrix>> = kept_parities
            .iter()
            .map(|&i| self.blocks[i].clone())
            .collect();
        CodeSpec::new(params, systematic_nodes, parity_nodes, blocks)
    }

    /// Exhaustive decode-based MDS oracle: every k-subset of nodes must
    /// determine the message. Test-grade; O(C(n,k)) solves.
    pub fn mds_check_by_decoding(&self) -> Result<bool, CodeError> {
        let g = self.assemble_generator();
        let (k, alpha, n) = (self.params.k, self.params.alpha, self.params.n);
        for subset in (0..n).combinations(k) {
            let rows: Vec<usize> = subset
                .iter()
                .flat_map(|&v| v * alpha..(v + 1) * alpha)
                .collect();
            let sub = g.select(&rows, &(0..k * alpha).collect::<Vec<_>>());
            if sub.rank() != k * alpha {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row space of a node's generator block, used by audits.
    pub fn node_row_space(&self, node: usize) -> Subspace {
        Subspace::row_space(&self.node_generator(node))
    }
}
