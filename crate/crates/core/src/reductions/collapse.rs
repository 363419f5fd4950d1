//! Replaces the necessary set by a single necessary vertex `y`: a forbidden
//! hub `x` adjacent to `y`, to every old necessary vertex and to
//! `|V_tri| - 1` forbidden pendants can only be satisfied when all of them
//! are in the alliance.

use crate::graph::VertexSet;

use super::{as_i64, Construction, LiftReport, ReducedInstance, ReductionError, StageRecord};

pub const NAME: &str = "collapse";

pub fn collapse_necessary(ri: &ReducedInstance) -> Result<ReducedInstance, ReductionError> {
    let old = &ri.instance;
    if old.necessary.is_empty() {
        return Err(ReductionError::Precondition("no necessary vertices to collapse".into()));
    }
    let prefix = ri.next_prefix(NAME);
    let input_order = old.graph.order();
    let mut c = Construction::extend(ri)?;
    let x = c.vertex(format!("{prefix}.x"));
    let y = c.vertex(format!("{prefix}.y"));
    let pendants = c.group(&format!("{prefix}.V_box"), old.necessary.len() - 1);
    c.edge(x, y);
    for &v in &old.necessary {
        c.edge(x, v);
    }
    c.join(x, &pendants);

    let mut out = ri.clone();
    out.instance.graph = c.graph.build();
    out.instance.r = old.r + 1;
    out.instance.forbidden.insert(x);
    out.instance.forbidden.extend(&pendants);
    out.instance.necessary = VertexSet::from([y]);
    out.roles = c.roles;
    out.modulator.insert(x);
    out.provenance.r = out.instance.r;
    out.provenance
        .parameters
        .insert(format!("{prefix}.necessary"), as_i64(old.necessary.len()));
    out.provenance.stages.push(StageRecord {
        reduction: NAME.into(),
        prefix,
        input_order,
        r: out.instance.r,
    });
    Ok(out)
}

pub(crate) fn lifted_set(ri: &ReducedInstance, prior: &VertexSet) -> Result<VertexSet, ReductionError> {
    let stage = ri.stage(NAME)?;
    let mut lifted = prior.clone();
    lifted.insert(ri.vertex(&format!("{}.y", stage.prefix))?);
    Ok(lifted)
}

/// The input solution plus `y`.
pub fn lift_collapse(ri: &ReducedInstance, prior: &VertexSet) -> Result<LiftReport, ReductionError> {
    Ok(ri.verify(lifted_set(ri, prior)?))
}

/// Drops the gadget vertices.
pub fn project_collapse(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let cut = ri.stage(NAME)?.input_order;
    Ok(alliance.iter().copied().filter(|&v| v < cut).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{lift_mrss, mrss_to_soafn, project_mrss, Choice};
    use crate::source::MrssInstance;

    #[test]
    fn small_stage() {
        let inst = MrssInstance::new(2, vec![vec![2, 1], vec![1, 1], vec![1, 2]], vec![3, 3]);
        let first = mrss_to_soafn(&inst, &mut Choice::lowest()).unwrap();
        let out = collapse_necessary(&first).unwrap();
        let l = first.instance.necessary.len();
        assert_eq!(out.instance.graph.order(), first.instance.graph.order() + l + 1);
        assert_eq!(out.instance.forbidden.len(), first.instance.forbidden.len() + l);
        assert_eq!(out.instance.necessary.len(), 1);
        assert_eq!(out.instance.r, 45);

        let prior = lift_mrss(&first, &[0, 2]).unwrap().lifted;
        let report = lift_collapse(&out, &prior).unwrap();
        assert!(report.passed(), "{:?}", report.verification);
        let back = project_collapse(&out, &report.lifted).unwrap();
        assert_eq!(back, prior);
        assert_eq!(project_mrss(&first, &back).unwrap(), vec![0, 2]);
    }

    #[test]
    fn single_necessary_vertex_is_still_transformed() {
        let spec = serde_json::from_str(
            r#"{"n":2,"edges":[[0,1]],"r":1,"strength":2,"necessary":[0]}"#,
        )
        .unwrap();
        let ri = ReducedInstance::from_alliance(&spec).unwrap();
        let out = collapse_necessary(&ri).unwrap();
        assert_eq!(out.instance.graph.order(), 4);
        assert_eq!(out.instance.r, 2);
        assert_eq!(out.group("collapse.V_box").len(), 0);
        assert_eq!(out.instance.forbidden, VertexSet::from([out.vertex("collapse.x").unwrap()]));
    }
}
