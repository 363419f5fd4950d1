//! Vertex cover on graphs of maximum degree 3 to offensive alliance on split
//! graphs with `k' = k + m + 1`. Edge vertices and `Y` form the clique,
//! original vertices and `X` the independent side.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{SplitPartition, Vertex, VertexSet};
use crate::source::{SourceInstance, VcInstance};

use super::vc_bipartite::{check_cover_ids, check_degree};
use super::{
    as_i64, Construction, LiftReport, Provenance, ReducedInstance, ReductionError, StageRecord,
    StructuralClaims,
};

pub const NAME: &str = "vc-split";

pub fn vc3_to_oa_split(inst: &VcInstance) -> Result<ReducedInstance, ReductionError> {
    check_degree(inst)?;
    let g = &inst.graph;
    let n = g.order();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let m = edges.len();

    let mut c = Construction::new();
    let v = c.group("v", n);
    let ve = c.group("e", m);
    let y = c.group("y", m + 1);
    let x = c.group("x", 4 * (n + m));
    for (j, &(a, b)) in edges.iter().enumerate() {
        c.edge(v[a], ve[j]);
        c.edge(v[b], ve[j]);
    }
    let clique: Vec<Vertex> = ve.iter().chain(&y).copied().collect();
    c.clique(&clique);
    for &xi in &x {
        c.join(xi, &y);
    }

    let r = inst.k + m + 1;
    let split = SplitPartition {
        clique: clique.iter().copied().collect(),
        independent: v.iter().chain(&x).copied().collect(),
    };
    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), as_i64(n));
    parameters.insert("m".into(), as_i64(m));
    parameters.insert("k".into(), as_i64(inst.k));
    Ok(ReducedInstance {
        instance: AllianceInstance::new(c.graph.build(), r, 1),
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::VertexCover(inst.clone()).digest(),
            parameters,
            r,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r }],
        },
        modulator: VertexSet::new(),
        diagram: None,
        claims: StructuralClaims { split: Some(split), ..Default::default() },
    })
}

/// `D = S ∪ Y`.
pub fn lift_vc_split(ri: &ReducedInstance, cover: &VertexSet) -> Result<LiftReport, ReductionError> {
    let v = ri.group("v");
    check_cover_ids(cover, v.len())?;
    let lifted = cover.iter().map(|&i| v[i]).chain(ri.group("y")).collect();
    Ok(ri.verify(lifted))
}

/// Replaces each edge vertex in the alliance by its lower endpoint unless an
/// endpoint is already in, drops `X`, and keeps the original vertices.
pub fn project_vc_split(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let v = ri.group("v");
    let index: BTreeMap<Vertex, usize> = v.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut cover: VertexSet = alliance.iter().filter_map(|u| index.get(u).copied()).collect();
    let g = &ri.instance.graph;
    for (j, e) in ri.group("e").into_iter().enumerate() {
        if !alliance.contains(&e) {
            continue;
        }
        let mut ends: Vec<usize> = g.neighbors(e).filter_map(|w| index.get(&w).copied()).collect();
        ends.sort_unstable();
        if ends.is_empty() {
            return Err(ReductionError::Projection(format!("edge vertex {j} has no endpoints")));
        }
        if !ends.iter().any(|u| cover.contains(u)) {
            cover.insert(ends[0]);
        }
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_split, Graph};

    #[test]
    fn k3_counts_and_claims() {
        let inst = VcInstance { graph: Graph::complete(3), k: 2, max_degree_3: true };
        let ri = vc3_to_oa_split(&inst).unwrap();
        assert_eq!(ri.instance.graph.order(), 34);
        assert_eq!(ri.instance.graph.edge_count(), 123);
        assert_eq!(ri.instance.r, inst.k + 4);
        assert!(ri.claims.split.as_ref().unwrap().is_valid_for(&ri.instance.graph));
        assert!(is_split(&ri.instance.graph).is_some());

        let report = lift_vc_split(&ri, &VertexSet::from([0, 1])).unwrap();
        assert!(report.passed(), "{:?}", report.verification);
        assert_eq!(project_vc_split(&ri, &report.lifted).unwrap(), VertexSet::from([0, 1]));
    }

    #[test]
    fn normalization() {
        let inst = VcInstance { graph: Graph::path(3), k: 1, max_degree_3: true };
        let ri = vc3_to_oa_split(&inst).unwrap();
        let mut d: VertexSet = ri.group("y").into_iter().collect();
        d.insert(ri.vertex("e[1]").unwrap());
        d.insert(ri.vertex("x[0]").unwrap());
        assert_eq!(project_vc_split(&ri, &d).unwrap(), VertexSet::from([1]));
    }
}
