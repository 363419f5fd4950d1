//! Gadget constructions mapping source problems (and constrained alliance
//! variants) to alliance instances, each with a solution lift and, where the
//! correctness argument provides one, a solution projection.
//!
//! Vertex identifiers follow construction order. Lifts and projections find
//! vertices through the role map (`"T[0].x"`, `"D_tri[3]"`, ...), never
//! through raw offsets.

mod apex;
mod circle;
mod closest_string;
mod collapse;
mod mrss;
mod oaf_oa;
mod phs;
mod pipeline;
mod registry;
mod soafn_oaf;
mod vc_bipartite;
mod vc_split;

use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alliance::{check_instance_solution, AllianceInstance, ViolationReport};
use crate::graph::{
    Bipartition, ChordDiagram, GraphBuilder, GraphError, GraphSpec, HungPosition, SplitPartition,
    Vertex, VertexSet, MATERIALIZE_CAP,
};
use crate::source::{AllianceSpec, SourceError};

pub use apex::{lift_apex, pds_to_soa_apex, planarity_edge_bound_holds, project_apex};
pub use circle::{circle_ds_to_oa, lift_circle, project_circle};
pub use closest_string::{closest_string_to_oa, lift_closest_string, project_closest_string};
pub use collapse::{collapse_necessary, lift_collapse, project_collapse};
pub use mrss::{lift_mrss, mrss_to_soafn, project_mrss};
pub use oaf_oa::{lift_oaf_oa, oaf_to_oa, project_oaf_oa};
pub use phs::{lift_phs, phs_to_oa, project_phs};
pub use pipeline::{lift_pipeline, mrss_to_oa_pipeline, project_pipeline};
pub use registry::{ReductionKind, Source, Witness};
pub use soafn_oaf::{lift_soafn_oaf, project_soafn_oaf, soafn_to_oaf};
pub use vc_bipartite::{lift_vc_bipartite, project_vc_bipartite, vc3_to_oa_bipartite};
pub use vc_split::{lift_vc_split, project_vc_split, vc3_to_oa_split};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coordinate {coordinate}: target exceeds the column sum by more than one")]
    NegativePendantSet { coordinate: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("forbidden set lacks the required pendant structure: {0:?}")]
    ForbiddenStructure(ViolationReport),
    #[error("no vertex has role {0:?}")]
    UnknownRole(String),
    #[error("malformed witness: {0}")]
    Witness(String),
    #[error("projection undefined: {0}")]
    Projection(String),
}

/// How "any"/"arbitrary" picks in the constructions are made: the lowest
/// identifiers, or a seeded random choice for fuzzing choice-invariance.
#[derive(Debug, Clone)]
pub struct Choice {
    rng: Option<ChaCha8Rng>,
}

impl Default for Choice {
    fn default() -> Self {
        Self::lowest()
    }
}

impl Choice {
    pub fn lowest() -> Self {
        Self { rng: None }
    }

    pub fn seeded(seed: u64) -> Self {
        Self { rng: Some(ChaCha8Rng::seed_from_u64(seed)) }
    }

    /// `k` distinct positions out of `0..n`, ascending.
    pub fn pick(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot pick {k} of {n}");
        match &mut self.rng {
            None => (0..k).collect(),
            Some(rng) => {
                let mut v = rand::seq::index::sample(rng, n, k).into_vec();
                v.sort_unstable();
                v
            }
        }
    }

    /// One element of a non-empty slice.
    pub fn pick_one<T: Copy>(&mut self, items: &[T]) -> T {
        items[self.pick(items.len(), 1)[0]]
    }
}

/// Role label of every explicit vertex, with reverse lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoleMap {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    hung_prefix: Option<String>,
}

impl RoleMap {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn push(&mut self, name: String) -> Vertex {
        let v = self.names.len();
        let previous = self.index.insert(name.clone(), v);
        assert!(previous.is_none(), "duplicate role {name}");
        self.names.push(name);
        v
    }

    pub fn get(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: Vertex) -> Option<&str> {
        self.names.get(v).map(String::as_str)
    }
}

/// One stage of a (possibly composed) construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub reduction: String,
    /// Role prefix of the vertices this stage added.
    pub prefix: String,
    /// Explicit vertex count of the stage input.
    pub input_order: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub reduction: String,
    pub source_digest: String,
    /// Source quantities the size bound is computed from.
    pub parameters: BTreeMap<String, i64>,
    pub r: usize,
    pub stages: Vec<StageRecord>,
}

/// Claims a construction makes about its output, for independent checking.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralClaims {
    pub bipartition: Option<Bipartition>,
    pub split: Option<SplitPartition>,
    pub declared_cover: Option<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub instance: AllianceInstance,
    pub roles: RoleMap,
    pub provenance: Provenance,
    /// Vertex-deletion set the construction claims leaves shallow trees.
    pub modulator: VertexSet,
    pub diagram: Option<ChordDiagram>,
    pub claims: StructuralClaims,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub lifted: VertexSet,
    pub verification: ViolationReport,
    pub size: usize,
    pub bound: usize,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.verification.is_valid()
    }
}

impl ReducedInstance {
    /// Wraps a plain alliance instance so the instance-to-instance stages can
    /// take it as input. Vertices get roles `v[i]`.
    pub fn from_alliance(spec: &AllianceSpec) -> Result<Self, ReductionError> {
        let graph = spec.graph.build()?;
        let instance = AllianceInstance::with_constraints(graph, &spec.params)
            .map_err(|e| ReductionError::Precondition(e.to_string()))?;
        let mut roles = RoleMap::default();
        for v in 0..instance.graph.order() {
            roles.push(format!("v[{v}]"));
        }
        let source_digest = crate::source::SourceInstance::Alliance(spec.clone()).digest();
        Ok(Self {
            provenance: Provenance {
                reduction: "alliance".into(),
                source_digest,
                parameters: BTreeMap::new(),
                r: instance.r,
                stages: Vec::new(),
            },
            instance,
            roles,
            modulator: VertexSet::new(),
            diagram: None,
            claims: StructuralClaims::default(),
        })
    }

    /// Role of any vertex, hung-tree vertices included.
    pub fn role(&self, v: Vertex) -> Option<String> {
        if let Some(name) = self.roles.name(v) {
            return Some(name.to_string());
        }
        let prefix = self.roles.hung_prefix.as_deref().unwrap_or("hung");
        match self.instance.graph.hung_position(v)? {
            HungPosition::Child { root, child } => Some(format!("{prefix}.T[{root}].child[{child}]")),
            HungPosition::Leaf { root, child, leaf } => {
                Some(format!("{prefix}.T[{root}].leaf[{child}][{leaf}]"))
            }
        }
    }

    pub fn vertex(&self, role: &str) -> Result<Vertex, ReductionError> {
        self.roles.get(role).ok_or_else(|| ReductionError::UnknownRole(role.to_string()))
    }

    /// Vertices `name[0]`, `name[1]`, ... up to the first missing index.
    pub fn group(&self, name: &str) -> Vec<Vertex> {
        (0..).map_while(|j| self.roles.get(&format!("{name}[{j}]"))).collect()
    }

    /// Full identifier-to-role map, refused above the materialization cap.
    pub fn role_table(&self) -> Result<BTreeMap<Vertex, String>, GraphError> {
        let order = self.instance.graph.order();
        if order > MATERIALIZE_CAP {
            return Err(GraphError::TooLarge { order, cap: MATERIALIZE_CAP });
        }
        Ok((0..order).map(|v| (v, self.role(v).expect("every vertex has a role"))).collect())
    }

    /// The instance in JSON form; refused above the materialization cap.
    pub fn alliance_spec(&self) -> Result<AllianceSpec, GraphError> {
        let order = self.instance.graph.order();
        if order > MATERIALIZE_CAP {
            return Err(GraphError::TooLarge { order, cap: MATERIALIZE_CAP });
        }
        Ok(AllianceSpec {
            graph: GraphSpec::from_graph(&self.instance.graph),
            params: self.instance.params(),
        })
    }

    /// Checks a candidate target solution against the instance.
    pub fn verify(&self, lifted: VertexSet) -> LiftReport {
        LiftReport {
            verification: check_instance_solution(&self.instance, &lifted),
            size: lifted.len(),
            bound: self.instance.r,
            lifted,
        }
    }

    /// Most recent stage of the named reduction.
    pub(crate) fn stage(&self, reduction: &str) -> Result<&StageRecord, ReductionError> {
        self.provenance
            .stages
            .iter()
            .rev()
            .find(|s| s.reduction == reduction)
            .ok_or_else(|| ReductionError::Precondition(format!("no {reduction} stage recorded")))
    }

    /// Role prefix for a new stage of `reduction`: the name itself, with a
    /// counter appended when the stage repeats.
    pub(crate) fn next_prefix(&self, reduction: &str) -> String {
        let seen = self.provenance.stages.iter().filter(|s| s.reduction == reduction).count();
        if seen == 0 {
            reduction.to_string()
        } else {
            format!("{reduction}#{}", seen + 1)
        }
    }

    /// Digest of this instance as a stage input.
    pub(crate) fn input_digest(&self) -> String {
        match self.alliance_spec() {
            Ok(spec) => crate::source::SourceInstance::Alliance(spec).digest(),
            Err(_) => self.provenance.source_digest.clone(),
        }
    }
}

/// Graph builder that names every vertex it creates.
pub(crate) struct Construction {
    pub(crate) graph: GraphBuilder,
    pub(crate) roles: RoleMap,
}

impl Construction {
    pub(crate) fn new() -> Self {
        Self { graph: GraphBuilder::new(), roles: RoleMap::default() }
    }

    /// Continues an existing explicit instance; identifiers are kept.
    pub(crate) fn extend(ri: &ReducedInstance) -> Result<Self, ReductionError> {
        if !ri.instance.graph.is_explicit() {
            return Err(ReductionError::Precondition("input carries hung trees".into()));
        }
        Ok(Self { graph: GraphBuilder::from_graph(&ri.instance.graph), roles: ri.roles.clone() })
    }

    pub(crate) fn vertex(&mut self, name: impl Into<String>) -> Vertex {
        let v = self.graph.add_vertex();
        let r = self.roles.push(name.into());
        debug_assert_eq!(v, r);
        v
    }

    /// `count` vertices named `name[0]`..`name[count-1]`.
    pub(crate) fn group(&mut self, name: &str, count: usize) -> Vec<Vertex> {
        (0..count).map(|j| self.vertex(format!("{name}[{j}]"))).collect()
    }

    pub(crate) fn edge(&mut self, u: Vertex, v: Vertex) {
        self.graph.add_edge(u, v);
    }

    pub(crate) fn join(&mut self, u: Vertex, to: &[Vertex]) {
        self.graph.connect_all(u, to.iter().copied());
    }

    pub(crate) fn clique(&mut self, vs: &[Vertex]) {
        self.graph.add_clique(vs);
    }
}

pub(crate) fn set_of(vs: impl IntoIterator<Item = Vertex>) -> VertexSet {
    vs.into_iter().collect()
}

pub(crate) fn as_i64(x: impl TryInto<i64>) -> i64 {
    x.try_into().unwrap_or(i64::MAX)
}
