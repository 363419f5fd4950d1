//! Dominating set on connected (planar) graphs to strong offensive alliance
//! on apex graphs with `k' = m + k + 2`. Each edge gets a parallel path
//! through a new vertex `v_e`, which doubles every original degree; the apex
//! `x` sees all the edge gadgets.
//!
//! The parallel edge is never materialized: `v_e` is added directly with its
//! two path edges.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{is_connected, Vertex, VertexSet};
use crate::source::{DsInstance, SourceInstance};

use super::{
    as_i64, Construction, LiftReport, Provenance, ReducedInstance, ReductionError, StageRecord,
    StructuralClaims,
};

pub const NAME: &str = "pds-apex";

pub fn pds_to_soa_apex(inst: &DsInstance) -> Result<ReducedInstance, ReductionError> {
    let g = &inst.graph;
    let n = g.order();
    if n == 0 || !is_connected(g) {
        return Err(ReductionError::Precondition("source graph must be connected and non-empty".into()));
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let m = edges.len();

    let mut c = Construction::new();
    let v = c.group("v", n);
    for &(a, b) in &edges {
        c.edge(v[a], v[b]);
    }
    let mut gadgets = Vec::with_capacity(4 * m);
    for (j, &(a, b)) in edges.iter().enumerate() {
        let ve = c.vertex(format!("v_e[{j}]"));
        let h = c.group(&format!("h[{j}]"), 3);
        c.edge(ve, v[a]);
        c.edge(ve, v[b]);
        c.join(ve, &h);
        gadgets.push(ve);
        gadgets.extend(h);
    }
    let x = c.vertex("x");
    let x2 = c.vertex("x'");
    let shared = c.group("V_x_box", 6 * n);
    c.join(x, &shared);
    c.join(x2, &shared);
    c.join(x, &gadgets);

    let r = m + inst.k + 2;
    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), as_i64(n));
    parameters.insert("m".into(), as_i64(m));
    parameters.insert("k".into(), as_i64(inst.k));
    Ok(ReducedInstance {
        instance: AllianceInstance::new(c.graph.build(), r, 2),
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::DominatingSet(inst.clone()).digest(),
            parameters,
            r,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r }],
        },
        modulator: VertexSet::from([x]),
        diagram: None,
        claims: StructuralClaims::default(),
    })
}

/// Edge-count condition every planar graph meets: after deleting the
/// modulator, `|E| <= 3|V| - 6` (or fewer than three vertices remain).
pub fn planarity_edge_bound_holds(ri: &ReducedInstance) -> bool {
    let g = &ri.instance.graph;
    let removed = &ri.modulator;
    let order = g.order() - removed.len();
    let lost = g
        .edges()
        .filter(|(a, b)| removed.contains(a) || removed.contains(b))
        .count();
    let size = g.edge_count() - lost;
    order < 3 || size + 6 <= 3 * order
}

/// `D ∪ {x, x'} ∪ {v_e : e in E}`.
pub fn lift_apex(ri: &ReducedInstance, dominating: &VertexSet) -> Result<LiftReport, ReductionError> {
    let v = ri.group("v");
    if let Some(u) = dominating.iter().find(|&&u| u >= v.len()) {
        return Err(ReductionError::Witness(format!("vertex {u} out of range for {} vertices", v.len())));
    }
    let mut lifted: VertexSet = dominating.iter().map(|&u| v[u]).collect();
    lifted.insert(ri.vertex("x")?);
    lifted.insert(ri.vertex("x'")?);
    lifted.extend(ri.group("v_e"));
    Ok(ri.verify(lifted))
}

/// Normalizes the alliance so that every `v_e` is in and no pendant `h` is,
/// adding both endpoints of an edge whose `v_e` was out, then keeps the
/// original vertices.
pub fn project_apex(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let v = ri.group("v");
    let index: BTreeMap<Vertex, usize> = v.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut dominating: VertexSet = alliance.iter().filter_map(|u| index.get(u).copied()).collect();
    let g = &ri.instance.graph;
    for ve in ri.group("v_e") {
        if !alliance.contains(&ve) {
            dominating.extend(g.neighbors(ve).filter_map(|w| index.get(&w).copied()));
        }
    }
    Ok(dominating)
}
