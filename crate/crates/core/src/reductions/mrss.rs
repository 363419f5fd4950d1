//! MRSS to strong offensive alliance with forbidden and necessary vertices.
//!
//! Every vector `s` gets a tree `T_s` whose `x_s` is in the alliance exactly
//! when `s` is picked; the coordinate vertices `u_i` see `s(i)` vertices of
//! each picked `A_s` and can only be satisfied when the picked vectors reach
//! the target.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{Vertex, VertexSet};
use crate::source::{MrssInstance, SourceInstance};

use super::{
    as_i64, set_of, Choice, Construction, LiftReport, Provenance, ReducedInstance, ReductionError,
    StageRecord, StructuralClaims,
};

pub const NAME: &str = "mrss-soafn";

pub fn mrss_to_soafn(inst: &MrssInstance, choice: &mut Choice) -> Result<ReducedInstance, ReductionError> {
    inst.validate()?;
    let k = inst.k;
    let n = inst.vectors.len();
    // With max(s) = 0 the vertex y_s has only two C_s neighbours and can
    // never be covered when s is left out.
    if let Some(s) = (0..n).find(|&s| inst.max_entry(s) == 0) {
        return Err(ReductionError::Precondition(format!("vector {s} is zero")));
    }
    let col: Vec<u64> = (0..k).map(|i| inst.column_sum(i)).collect();
    let mut tri_sizes = Vec::with_capacity(k);
    for i in 0..k {
        let size = 2 * (col[i] as i64 - inst.target[i] as i64 + 1);
        if size < 0 {
            return Err(ReductionError::NegativePendantSet { coordinate: i });
        }
        tri_sizes.push(size as usize);
    }

    let mut c = Construction::new();
    let mut forbidden = VertexSet::new();
    let mut necessary = VertexSet::new();

    let u = c.group("u", k);
    forbidden.extend(&u);

    let mut a_sets = Vec::with_capacity(n);
    let mut abc = Vec::new();
    for s in 0..n {
        let m = inst.max_entry(s) as usize;
        let t = format!("T[{s}]");
        let a = c.group(&format!("{t}.A"), m + 1);
        let b = c.group(&format!("{t}.B"), m + 1);
        let a_box = c.group(&format!("{t}.A_box"), m + 1);
        let b_box = c.group(&format!("{t}.B_box"), m + 1);
        let cs = c.group(&format!("{t}.C"), 2 * m + 2);
        let z_tri = c.group(&format!("{t}.Z_tri"), 5);
        let z_box = c.vertex(format!("{t}.Z_box"));
        let x = c.vertex(format!("{t}.x"));
        let y = c.vertex(format!("{t}.y"));
        let z = c.vertex(format!("{t}.z"));
        for j in 0..=m {
            c.edge(a_box[j], b_box[j]);
            c.edge(a_box[j], a[j]);
            c.edge(a_box[j], b[j]);
            c.edge(x, a_box[j]);
        }
        c.join(z, &z_tri);
        c.edge(z, z_box);
        c.edge(x, z);
        c.edge(z, y);
        c.join(y, &cs);
        necessary.extend(&z_tri);
        forbidden.extend(a_box.iter().chain(&b_box).copied());
        forbidden.extend([z, z_box]);
        abc.extend(a.iter().chain(&b).chain(&cs).copied());
        a_sets.push(a);
    }

    let a = c.vertex("a");
    let a_tri = c.group("A_tri", 3);
    let a_box = c.vertex("A_box");
    c.join(a, &a_tri);
    c.edge(a, a_box);
    c.join(a, &abc);
    necessary.extend(&a_tri);
    forbidden.extend([a, a_box]);

    for i in 0..k {
        for (s, vector) in inst.vectors.iter().enumerate() {
            let picks = choice.pick(a_sets[s].len(), vector[i] as usize);
            let targets: Vec<Vertex> = picks.into_iter().map(|p| a_sets[s][p]).collect();
            c.join(u[i], &targets);
        }
    }
    for i in 0..k {
        let v_box = c.group(&format!("V_box[u[{i}]]"), col[i] as usize);
        let v_tri = c.group(&format!("V_tri[u[{i}]]"), tri_sizes[i]);
        c.join(u[i], &v_box);
        c.join(u[i], &v_tri);
        forbidden.extend(&v_box);
        necessary.extend(&v_tri);
    }

    let sum_max: u64 = (0..n).map(|s| inst.max_entry(s)).sum();
    let r = tri_sizes.iter().sum::<usize>() + 2 * (sum_max as usize + n) + 5 * n + 3 + inst.kprime;

    let mut parameters = BTreeMap::new();
    parameters.insert("k".into(), as_i64(k));
    parameters.insert("kprime".into(), as_i64(inst.kprime));
    parameters.insert("n".into(), as_i64(n));
    parameters.insert("sum_max".into(), as_i64(sum_max));
    parameters.insert("sum_columns".into(), as_i64(col.iter().sum::<u64>()));
    parameters.insert("sum_target".into(), as_i64(inst.target.iter().sum::<u64>()));

    let graph = c.graph.build();
    let instance = AllianceInstance { graph, r, strength: 2, forbidden, necessary, exact: false };
    Ok(ReducedInstance {
        instance,
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::Mrss(inst.clone()).digest(),
            parameters,
            r,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r }],
        },
        modulator: set_of(u.iter().copied().chain([a])),
        diagram: None,
        claims: StructuralClaims::default(),
    })
}

fn vector_count(ri: &ReducedInstance) -> usize {
    (0..).take_while(|s| ri.roles.get(&format!("T[{s}].x")).is_some()).count()
}

/// The alliance built from a subset of vector indices, found through roles
/// so that later stages can reuse it.
pub(crate) fn lifted_set(ri: &ReducedInstance, subset: &[usize]) -> Result<VertexSet, ReductionError> {
    let n = vector_count(ri);
    let mut picked = vec![false; n];
    for &s in subset {
        if s >= n {
            return Err(ReductionError::Witness(format!("vector index {s} out of range for {n} vectors")));
        }
        if std::mem::replace(&mut picked[s], true) {
            return Err(ReductionError::Witness(format!("vector index {s} repeated")));
        }
    }
    let mut lifted = VertexSet::new();
    for i in 0.. {
        let tri = ri.group(&format!("V_tri[u[{i}]]"));
        if tri.is_empty() && ri.roles.get(&format!("u[{i}]")).is_none() {
            break;
        }
        lifted.extend(tri);
    }
    lifted.extend(ri.group("A_tri"));
    for (s, &p) in picked.iter().enumerate() {
        let t = format!("T[{s}]");
        lifted.extend(ri.group(&format!("{t}.Z_tri")));
        if p {
            lifted.extend(ri.group(&format!("{t}.A")));
            lifted.extend(ri.group(&format!("{t}.B")));
            lifted.insert(ri.vertex(&format!("{t}.x"))?);
        } else {
            lifted.extend(ri.group(&format!("{t}.C")));
        }
    }
    Ok(lifted)
}

pub fn lift_mrss(ri: &ReducedInstance, subset: &[usize]) -> Result<LiftReport, ReductionError> {
    Ok(ri.verify(lifted_set(ri, subset)?))
}

/// `{s : x_s in R}`, ascending.
pub fn project_mrss(ri: &ReducedInstance, alliance: &VertexSet) -> Result<Vec<usize>, ReductionError> {
    let n = vector_count(ri);
    let mut subset = Vec::new();
    for s in 0..n {
        if alliance.contains(&ri.vertex(&format!("T[{s}].x"))?) {
            subset.push(s);
        }
    }
    Ok(subset)
}
