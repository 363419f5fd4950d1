//! Source problems of the reductions, with independent witness checkers and
//! exhaustive decision oracles.
//!
//! Oracles are exponential on purpose and refuse inputs beyond desk scale:
//! 16 vectors of dimension 4, strings of length 20, 9x9 grids and graphs on
//! 20 vertices.

use serde::{Deserialize, Serialize};

use crate::alliance::InstanceParams;
use crate::graph::{ChordDiagram, Graph, GraphError, GraphSpec, VertexSet};
use crate::solvers::min_vertex_cover;

pub const MAX_VECTORS: usize = 16;
pub const MAX_DIMENSION: usize = 4;
pub const MAX_STRING_LENGTH: usize = 20;
pub const MAX_GRID_SIDE: usize = 9;
pub const MAX_ORACLE_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SourceError {
    #[error("{what} is {got}, above the desk-scale cap {cap}")]
    TooLarge { what: &'static str, got: usize, cap: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("strings of lengths {0} and {1} differ")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn cap(what: &'static str, got: usize, cap: usize) -> Result<(), SourceError> {
    if got > cap {
        Err(SourceError::TooLarge { what, got, cap })
    } else {
        Ok(())
    }
}

/// Multidimensional relaxed subset sum: pick at most `kprime` of the
/// vectors so that their sum dominates `target` in every coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrssInstance {
    pub k: usize,
    pub kprime: usize,
    pub vectors: Vec<Vec<u64>>,
    pub target: Vec<u64>,
}

impl MrssInstance {
    pub fn new(kprime: usize, vectors: Vec<Vec<u64>>, target: Vec<u64>) -> Self {
        Self { k: target.len(), kprime, vectors, target }
    }

    pub fn validate(&self) -> Result<(), SourceError> {
        if self.target.len() != self.k {
            return Err(SourceError::Invalid(format!(
                "target has {} coordinates, k = {}",
                self.target.len(),
                self.k
            )));
        }
        if let Some(i) = self.vectors.iter().position(|s| s.len() != self.k) {
            return Err(SourceError::Invalid(format!("vector {i} does not have {} coordinates", self.k)));
        }
        Ok(())
    }

    /// `max(s)` of vector `i`.
    pub fn max_entry(&self, i: usize) -> u64 {
        self.vectors[i].iter().copied().max().unwrap_or(0)
    }

    /// Sum over all vectors of coordinate `j`.
    pub fn column_sum(&self, j: usize) -> u64 {
        self.vectors.iter().map(|s| s[j]).sum()
    }

    pub fn is_witness(&self, subset: &[usize]) -> bool {
        let mut seen = vec![false; self.vectors.len()];
        for &i in subset {
            if i >= self.vectors.len() || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        subset.len() <= self.kprime
            && (0..self.k).all(|j| subset.iter().map(|&i| self.vectors[i][j]).sum::<u64>() >= self.target[j])
    }
}

/// Least-cardinality, then lexicographically least, index subset of size at
/// most `kprime` whose sum dominates the target.
pub fn oracle_mrss(inst: &MrssInstance) -> Result<Option<Vec<usize>>, SourceError> {
    inst.validate()?;
    cap("number of vectors", inst.vectors.len(), MAX_VECTORS)?;
    cap("dimension", inst.k, MAX_DIMENSION)?;
    let n = inst.vectors.len();
    let mut best: Option<(u32, Vec<usize>)> = None;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones();
        if size as usize > inst.kprime {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !inst.is_witness(&subset) {
            continue;
        }
        let better = match &best {
            None => true,
            Some((s, b)) => size < *s || (size == *s && subset < *b),
        };
        if better {
            best = Some((size, subset));
        }
    }
    Ok(best.map(|(_, s)| s))
}

/// A grid cell `(row, column)`, both 0-based.
pub type Cell = (usize, usize);

/// k x k permutation hitting set with thin sets: choose one cell per row,
/// with distinct columns, meeting every member of `family`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhsInstance {
    pub k: usize,
    pub family: Vec<Vec<Cell>>,
}

impl PhsInstance {
    /// Checks bounds and thinness (at most one cell per row in each set).
    pub fn validate(&self) -> Result<(), SourceError> {
        for (f, set) in self.family.iter().enumerate() {
            let mut rows = vec![false; self.k];
            for &(i, j) in set {
                if i >= self.k || j >= self.k {
                    return Err(SourceError::Invalid(format!("set {f}: cell ({i},{j}) outside the grid")));
                }
                if std::mem::replace(&mut rows[i], true) {
                    return Err(SourceError::Invalid(format!("set {f} is not thin: two cells in row {i}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_witness(&self, x: &[Cell]) -> bool {
        let mut rows = vec![false; self.k];
        let mut cols = vec![false; self.k];
        for &(i, j) in x {
            if i >= self.k || j >= self.k || rows[i] || cols[j] {
                return false;
            }
            rows[i] = true;
            cols[j] = true;
        }
        x.len() == self.k && self.family.iter().all(|f| f.iter().any(|c| x.contains(c)))
    }
}

/// First permutation hitting set in lexicographic order of the column
/// sequence, or `None`.
pub fn oracle_phs(inst: &PhsInstance) -> Result<Option<Vec<Cell>>, SourceError> {
    inst.validate()?;
    cap("grid side", inst.k, MAX_GRID_SIDE)?;
    let mut perm: Vec<usize> = (0..inst.k).collect();
    loop {
        let x: Vec<Cell> = perm.iter().enumerate().map(|(i, &j)| (i, j)).collect();
        if inst.is_witness(&x) {
            return Ok(Some(x));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Closest string over the binary alphabet `{'0', '1'}`: is there a string
/// within Hamming distance `d` of every input?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosestStringInstance {
    pub strings: Vec<String>,
    pub d: usize,
}

impl ClosestStringInstance {
    pub fn length(&self) -> usize {
        self.strings.first().map_or(0, String::len)
    }

    pub fn validate(&self) -> Result<(), SourceError> {
        if self.strings.is_empty() {
            return Err(SourceError::Invalid("no strings".into()));
        }
        let n = self.length();
        for s in &self.strings {
            if s.len() != n {
                return Err(SourceError::LengthMismatch(n, s.len()));
            }
            if !s.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(SourceError::Invalid(format!("{s:?} is not a binary string")));
            }
        }
        Ok(())
    }

    pub fn is_witness(&self, y: &str) -> bool {
        self.strings
            .iter()
            .all(|x| hamming(x, y).is_ok_and(|h| h <= self.d))
            && y.bytes().all(|b| b == b'0' || b == b'1')
    }
}

/// Number of positions where `x` and `y` differ.
pub fn hamming(x: &str, y: &str) -> Result<usize, SourceError> {
    if x.len() != y.len() {
        return Err(SourceError::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.bytes().zip(y.bytes()).filter(|(a, b)| a != b).count())
}

/// Lexicographically least central string, or `None`.
pub fn oracle_closest_string(inst: &ClosestStringInstance) -> Result<Option<String>, SourceError> {
    inst.validate()?;
    let n = inst.length();
    cap("string length", n, MAX_STRING_LENGTH)?;
    let to_mask = |s: &str| s.bytes().fold(0u32, |m, b| m << 1 | u32::from(b == b'1'));
    let masks: Vec<u32> = inst.strings.iter().map(|s| to_mask(s)).collect();
    for y in 0u32..(1 << n) {
        if masks.iter().all(|&x| (x ^ y).count_ones() as usize <= inst.d) {
            let s: String = (0..n).rev().map(|b| if y >> b & 1 == 1 { '1' } else { '0' }).collect();
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Vertex cover of size at most `k`; `max_degree_3` marks instances drawn
/// from the max-degree-3 restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcInstance {
    #[serde(flatten)]
    pub graph: Graph,
    pub k: usize,
    #[serde(default)]
    pub max_degree_3: bool,
}

impl VcInstance {
    pub fn validate(&self) -> Result<(), SourceError> {
        if self.max_degree_3 && self.graph.order() > 0 && self.graph.max_degree()? > 3 {
            return Err(SourceError::Invalid("maximum degree exceeds 3".into()));
        }
        Ok(())
    }
}

pub fn is_vertex_cover(g: &Graph, c: &VertexSet) -> bool {
    g.edges().all(|(u, v)| c.contains(&u) || c.contains(&v))
}

/// Minimum vertex cover if its size is at most `k`.
pub fn oracle_vertex_cover(inst: &VcInstance) -> Result<Option<VertexSet>, SourceError> {
    inst.validate()?;
    cap("number of vertices", inst.graph.order(), MAX_ORACLE_VERTICES)?;
    let c = min_vertex_cover(&inst.graph);
    Ok((c.len() <= inst.k).then_some(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsInstance {
    #[serde(flatten)]
    pub graph: Graph,
    pub k: usize,
}

pub fn is_dominating_set(g: &Graph, d: &VertexSet) -> bool {
    d.iter().all(|&v| v < g.order())
        && (0..g.order()).all(|v| d.contains(&v) || g.neighbors(v).any(|w| d.contains(&w)))
}

/// Minimum (lexicographically least among minimum) dominating set if its
/// size is at most `k`.
pub fn oracle_dominating_set(g: &Graph, k: usize) -> Result<Option<VertexSet>, SourceError> {
    let n = g.order();
    cap("number of vertices", n, MAX_ORACLE_VERTICES)?;
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(1u32 << v, |m, w| m | 1 << w))
        .collect();
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    for size in 0..=k.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if idx.iter().fold(0u32, |m, &v| m | closed[v]) == full {
                return Ok(Some(idx.into_iter().collect()));
            }
            if !crate::solvers::next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Dominating set on a circle graph given by its chord diagram. Every chord
/// must cross at least two others.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleDsInstance {
    pub diagram: ChordDiagram,
    pub k: usize,
}

impl CircleDsInstance {
    pub fn graph(&self) -> Graph {
        crate::graph::chord_diagram_to_graph(&self.diagram)
    }

    pub fn validate(&self) -> Result<(), SourceError> {
        let g = self.graph();
        if let Some(v) = (0..g.order()).find(|&v| g.degree(v) < 2) {
            return Err(SourceError::Invalid(format!("chord {v} has degree {} (< 2)", g.degree(v))));
        }
        Ok(())
    }
}

/// An alliance instance in JSON form (graph plus constraints), accepted by
/// the reductions that transform alliance instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllianceSpec {
    #[serde(flatten)]
    pub graph: GraphSpec,
    #[serde(flatten)]
    pub params: InstanceParams,
}

/// Every instance kind the toolkit reads or writes, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceInstance {
    Mrss(MrssInstance),
    Phs(PhsInstance),
    ClosestString(ClosestStringInstance),
    VertexCover(VcInstance),
    DominatingSet(DsInstance),
    CircleDs(CircleDsInstance),
    Alliance(AllianceSpec),
}

impl SourceInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            SourceInstance::Mrss(_) => "mrss",
            SourceInstance::Phs(_) => "phs",
            SourceInstance::ClosestString(_) => "closest-string",
            SourceInstance::VertexCover(_) => "vertex-cover",
            SourceInstance::DominatingSet(_) => "dominating-set",
            SourceInstance::CircleDs(_) => "circle-ds",
            SourceInstance::Alliance(_) => "alliance",
        }
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_vec(self).expect("instances serialize");
        hex::encode(Sha256::digest(json))
    }
}
