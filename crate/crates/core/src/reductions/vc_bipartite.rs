//! Vertex cover on graphs of maximum degree 3 to offensive alliance on
//! bipartite graphs with `k' = k + 5`.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{Bipartition, Vertex, VertexSet};
use crate::source::{SourceInstance, VcInstance};

use super::{
    as_i64, Construction, LiftReport, Provenance, ReducedInstance, ReductionError, StageRecord,
    StructuralClaims,
};

pub const NAME: &str = "vc-bipartite";

const HUBS: [&str; 5] = ["a", "b", "c", "d", "e"];

pub(crate) fn check_degree(inst: &VcInstance) -> Result<(), ReductionError> {
    let g = &inst.graph;
    if g.order() > 0 && g.max_degree()? > 3 {
        return Err(ReductionError::Precondition(format!("maximum degree {} exceeds 3", g.max_degree()?)));
    }
    Ok(())
}

pub fn vc3_to_oa_bipartite(inst: &VcInstance) -> Result<ReducedInstance, ReductionError> {
    check_degree(inst)?;
    let g = &inst.graph;
    let n = g.order();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let kk = inst.k + 5;

    let mut c = Construction::new();
    let v0 = c.group("v0", n);
    let v1 = c.group("v1", n);
    let e0 = c.group("e", edges.len());
    let [a, b, cc, d, e] = HUBS.map(|h| c.vertex(h));
    let pendants: Vec<Vec<Vertex>> = HUBS.iter().map(|h| c.group(&format!("V_{h}"), 4 * kk)).collect();

    for (j, &(x, y)) in edges.iter().enumerate() {
        c.edge(v0[x], e0[j]);
        c.edge(v0[y], e0[j]);
    }
    for i in 0..n {
        c.edge(v0[i], v1[i]);
    }
    for (hub, set) in [a, b, cc, d, e].into_iter().zip(&pendants) {
        c.join(hub, set);
    }
    c.join(a, &e0);
    c.join(e, &e0);
    c.join(b, &v1);
    c.join(cc, &v1);
    c.join(d, &[a, b, cc, e]);

    let mut left: VertexSet = [d].into_iter().chain(v1.iter().copied()).chain(e0.iter().copied()).collect();
    for h in [0, 1, 2, 4] {
        left.extend(&pendants[h]);
    }
    let mut right: VertexSet = [a, b, cc, e].into_iter().chain(v0.iter().copied()).collect();
    right.extend(&pendants[3]);

    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), as_i64(n));
    parameters.insert("m".into(), as_i64(edges.len()));
    parameters.insert("k".into(), as_i64(inst.k));
    Ok(ReducedInstance {
        instance: AllianceInstance::new(c.graph.build(), kk, 1),
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::VertexCover(inst.clone()).digest(),
            parameters,
            r: kk,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r: kk }],
        },
        modulator: VertexSet::new(),
        diagram: None,
        claims: StructuralClaims { bipartition: Some(Bipartition { left, right }), ..Default::default() },
    })
}

pub(crate) fn check_cover_ids(cover: &VertexSet, n: usize) -> Result<(), ReductionError> {
    match cover.iter().find(|&&v| v >= n) {
        Some(v) => Err(ReductionError::Witness(format!("vertex {v} out of range for {n} vertices"))),
        None => Ok(()),
    }
}

/// Copies of the cover in `V_0` plus the five hubs.
pub fn lift_vc_bipartite(ri: &ReducedInstance, cover: &VertexSet) -> Result<LiftReport, ReductionError> {
    let v0 = ri.group("v0");
    check_cover_ids(cover, v0.len())?;
    let mut lifted: VertexSet = cover.iter().map(|&v| v0[v]).collect();
    for h in HUBS {
        lifted.insert(ri.vertex(h)?);
    }
    Ok(ri.verify(lifted))
}

/// Moves every edge vertex in the alliance onto its lower endpoint copy
/// (or drops it when an endpoint copy is already in), then reads the cover
/// off `V_0`.
pub fn project_vc_bipartite(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let v0 = ri.group("v0");
    let index: BTreeMap<Vertex, usize> = v0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cover: VertexSet = alliance.iter().filter_map(|v| index.get(v).copied()).collect();
    let g = &ri.instance.graph;
    for (j, e) in ri.group("e").into_iter().enumerate() {
        if !alliance.contains(&e) {
            continue;
        }
        let mut ends: Vec<usize> = g.neighbors(e).filter_map(|w| index.get(&w).copied()).collect();
        ends.sort_unstable();
        if ends.is_empty() {
            return Err(ReductionError::Projection(format!("edge vertex {j} has no endpoint copies")));
        }
        if !ends.iter().any(|x| cover.contains(x)) {
            cover.insert(ends[0]);
        }
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_bipartite, Graph};

    #[test]
    fn k2_counts_and_claims() {
        let inst = VcInstance { graph: Graph::complete(2), k: 1, max_degree_3: true };
        let ri = vc3_to_oa_bipartite(&inst).unwrap();
        assert_eq!(ri.instance.graph.order(), 130);
        assert_eq!(ri.instance.r, 6);
        assert!(ri.claims.bipartition.as_ref().unwrap().is_valid_for(&ri.instance.graph));
        assert!(is_bipartite(&ri.instance.graph).is_some());

        let report = lift_vc_bipartite(&ri, &VertexSet::from([1])).unwrap();
        assert!(report.passed(), "{:?}", report.verification);
        assert_eq!(project_vc_bipartite(&ri, &report.lifted).unwrap(), VertexSet::from([1]));
    }

    #[test]
    fn edge_vertices_project_to_endpoints() {
        let inst = VcInstance { graph: Graph::path(3), k: 1, max_degree_3: true };
        let ri = vc3_to_oa_bipartite(&inst).unwrap();
        let mut s: VertexSet = HUBS.iter().map(|h| ri.vertex(h).unwrap()).collect();
        s.insert(ri.vertex("e[0]").unwrap());
        s.insert(ri.vertex("v0[1]").unwrap());
        assert_eq!(project_vc_bipartite(&ri, &s).unwrap(), VertexSet::from([1]));
        s.remove(&ri.vertex("v0[1]").unwrap());
        assert_eq!(project_vc_bipartite(&ri, &s).unwrap(), VertexSet::from([0]));
    }

    #[test]
    fn degree_precondition() {
        let inst = VcInstance { graph: Graph::star(4), k: 1, max_degree_3: false };
        assert!(matches!(vc3_to_oa_bipartite(&inst), Err(ReductionError::Precondition(_))));
    }
}
