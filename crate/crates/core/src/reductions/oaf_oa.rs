//! Offensive alliance with forbidden vertices to plain offensive alliance:
//! every degree-1 forbidden vertex `u` gets a depth-2 tree with `4r`
//! children of `4r` leaves each, which no alliance of size at most `r` can
//! afford to touch. The trees are kept implicit in the graph.

use crate::alliance::validate_forbidden_structure;
use crate::graph::{Vertex, VertexSet};

use super::{as_i64, LiftReport, ReducedInstance, ReductionError, StageRecord};

pub const NAME: &str = "oaf-oa";

pub fn oaf_to_oa(ri: &ReducedInstance) -> Result<ReducedInstance, ReductionError> {
    let old = &ri.instance;
    if old.strength != 1 {
        return Err(ReductionError::Precondition(format!("strength is {}, expected 1", old.strength)));
    }
    if !old.necessary.is_empty() {
        return Err(ReductionError::Precondition("necessary vertices present".into()));
    }
    if !old.graph.is_explicit() {
        return Err(ReductionError::Precondition("input already carries hung trees".into()));
    }
    let report = validate_forbidden_structure(&old.graph, &old.forbidden);
    if !report.is_valid() {
        return Err(ReductionError::ForbiddenStructure(report));
    }
    let roots: Vec<Vertex> =
        old.forbidden.iter().copied().filter(|&v| old.graph.degree(v) == 1).collect();
    let fanout = 4 * old.r;
    let prefix = ri.next_prefix(NAME);

    let mut out = ri.clone();
    out.instance.graph = old.graph.with_hung_trees(&roots, fanout)?;
    out.instance.forbidden.clear();
    out.roles.hung_prefix = Some(prefix.clone());
    out.provenance.parameters.insert(format!("{prefix}.roots"), as_i64(roots.len()));
    out.provenance.parameters.insert(format!("{prefix}.fanout"), as_i64(fanout));
    out.provenance.stages.push(StageRecord {
        reduction: NAME.into(),
        prefix,
        input_order: old.graph.order(),
        r: out.instance.r,
    });
    Ok(out)
}

/// The solution is kept as is.
pub fn lift_oaf_oa(ri: &ReducedInstance, prior: &VertexSet) -> Result<LiftReport, ReductionError> {
    ri.stage(NAME)?;
    Ok(ri.verify(prior.clone()))
}

/// `R' ∩ V(G)`.
pub fn project_oaf_oa(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let cut = ri.stage(NAME)?.input_order;
    Ok(alliance.iter().copied().filter(|&v| v < cut).collect())
}
