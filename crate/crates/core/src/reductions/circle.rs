//! Dominating set on circle graphs to offensive alliance on circle graphs
//! with `r = 2m + k`.
//!
//! Every chord `v` gets two cliques joined to it, one per endpoint, sized
//! `floor(d(v)/2)` and `ceil(d(v)/2)`; every clique vertex gets `2r`
//! pendants. Walking the circle from endpoint 0, the clique met at one
//! endpoint is linked to the clique met at the next (cyclically), last
//! clique chord to first clique chord.
//!
//! The output diagram is built on the endpoint sequence: each endpoint of
//! `v` becomes `[x_1..x_s, v, x_1..x_s]` for its clique `x`, the two
//! endpoints at every arc boundary are swapped to make the linking chords
//! cross, and one endpoint of every clique chord is wrapped in nested
//! pendant chords.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{ChordDiagram, Vertex, VertexSet};
use crate::source::{CircleDsInstance, SourceInstance};

use super::{
    as_i64, Construction, LiftReport, Provenance, ReducedInstance, ReductionError, StageRecord,
    StructuralClaims,
};

pub const NAME: &str = "ds-circle";

pub fn circle_ds_to_oa(inst: &CircleDsInstance) -> Result<ReducedInstance, ReductionError> {
    inst.validate()?;
    let g = inst.graph();
    let n = g.order();
    if n == 0 {
        return Err(ReductionError::Precondition("empty chord diagram".into()));
    }
    let m = g.edge_count();
    let r = 2 * m + inst.k;

    let mut c = Construction::new();
    let v = c.group("v", n);
    for (a, b) in g.edges() {
        c.edge(v[a], v[b]);
    }
    // cliques[u][0] sits at the first endpoint of chord u, cliques[u][1] at
    // the second.
    let mut cliques: Vec<[Vec<Vertex>; 2]> = Vec::with_capacity(n);
    for u in 0..n {
        let d = g.degree(u);
        let first = c.group(&format!("C1[{u}]"), d / 2);
        let second = c.group(&format!("C2[{u}]"), d - d / 2);
        for clique in [&first, &second] {
            c.join(v[u], clique);
            c.clique(clique);
        }
        cliques.push([first, second]);
    }
    let mut pendants: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for u in 0..n {
        for (which, clique) in cliques[u].iter().enumerate() {
            for (j, &x) in clique.iter().enumerate() {
                let p = c.group(&format!("C{}[{u}][{j}].pend", which + 1), 2 * r);
                c.join(x, &p);
                pendants.insert(x, p);
            }
        }
    }

    let sequence = inst.diagram.endpoints();
    let mut seen = vec![false; n];
    let at: Vec<&[Vertex]> = sequence
        .iter()
        .map(|&u| {
            let which = usize::from(std::mem::replace(&mut seen[u], true));
            cliques[u][which].as_slice()
        })
        .collect();
    let len = at.len();
    for p in 0..len {
        let next = (p + 1) % len;
        c.edge(*at[p].last().unwrap(), at[next][0]);
    }

    let mut endpoints: Vec<Vertex> = Vec::new();
    let mut boundaries = Vec::with_capacity(len);
    for (p, &u) in sequence.iter().enumerate() {
        endpoints.extend(at[p]);
        endpoints.push(v[u]);
        endpoints.extend(at[p]);
        boundaries.push(endpoints.len());
    }
    let total = endpoints.len();
    for b in boundaries {
        endpoints.swap(b - 1, b % total);
    }
    let mut wrapped = Vec::with_capacity(total + 4 * r * pendants.len());
    let mut done = VertexSet::new();
    for &chord in &endpoints {
        match pendants.get(&chord) {
            Some(p) if done.insert(chord) => {
                wrapped.extend(p);
                wrapped.push(chord);
                wrapped.extend(p.iter().rev());
            }
            _ => wrapped.push(chord),
        }
    }
    let diagram = ChordDiagram::new(wrapped)?;

    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), as_i64(n));
    parameters.insert("m".into(), as_i64(m));
    parameters.insert("k".into(), as_i64(inst.k));
    Ok(ReducedInstance {
        instance: AllianceInstance::new(c.graph.build(), r, 1),
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::CircleDs(inst.clone()).digest(),
            parameters,
            r,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r }],
        },
        modulator: VertexSet::new(),
        diagram: Some(diagram),
        claims: StructuralClaims::default(),
    })
}

fn clique_vertices(ri: &ReducedInstance, chords: usize) -> Vec<Vertex> {
    (0..chords)
        .flat_map(|u| {
            let mut both = ri.group(&format!("C1[{u}]"));
            both.extend(ri.group(&format!("C2[{u}]")));
            both
        })
        .collect()
}

/// Every clique vertex plus the dominating set.
pub fn lift_circle(ri: &ReducedInstance, dominating: &VertexSet) -> Result<LiftReport, ReductionError> {
    let v = ri.group("v");
    if let Some(u) = dominating.iter().find(|&&u| u >= v.len()) {
        return Err(ReductionError::Witness(format!("chord {u} out of range for {} chords", v.len())));
    }
    let lifted = clique_vertices(ri, v.len())
        .into_iter()
        .chain(dominating.iter().map(|&u| v[u]))
        .collect();
    Ok(ri.verify(lifted))
}

/// `D ∩ V(G)`.
pub fn project_circle(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let n = ri.group("v").len();
    Ok(alliance.iter().copied().filter(|&u| u < n).collect())
}
