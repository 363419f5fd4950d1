//! k x k permutation hitting set with thin sets to offensive alliance with
//! `r = 5k`. The intended alliance is the clique `D_tri` plus one grid
//! vertex `w[i][j]` per row; the row and column vertices force a
//! permutation and every set vertex `v_F` forces a hit.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{Vertex, VertexSet};
use crate::source::{Cell, PhsInstance, SourceInstance};

use super::{
    as_i64, Choice, Construction, LiftReport, Provenance, ReducedInstance, ReductionError, StageRecord,
    StructuralClaims,
};

pub const NAME: &str = "phs-oa";

fn pick_from(choice: &mut Choice, pool: &[Vertex], count: usize) -> Vec<Vertex> {
    choice.pick(pool.len(), count).into_iter().map(|i| pool[i]).collect()
}

pub fn phs_to_oa(inst: &PhsInstance, choice: &mut Choice) -> Result<ReducedInstance, ReductionError> {
    inst.validate()?;
    let k = inst.k;
    if k == 0 {
        return Err(ReductionError::Precondition("grid side must be positive".into()));
    }
    let mut c = Construction::new();
    let v_f = c.group("v_F", inst.family.len());
    let w: Vec<Vec<Vertex>> = (0..k).map(|i| c.group(&format!("w[{i}]"), k)).collect();
    let d_tri = c.group("D_tri", 4 * k);
    for (j, &d) in d_tri.iter().enumerate() {
        let pendants = c.group(&format!("D_tri[{j}].pend"), 10 * k);
        c.join(d, &pendants);
    }
    let d_box = c.group("D_box", 12 * k + 1);
    let rows = c.group("r", k);
    let cols = c.group("c", k);

    c.clique(&d_tri);
    c.clique(&d_box);
    for (f, set) in inst.family.iter().enumerate() {
        for &(i, j) in set {
            c.edge(v_f[f], w[i][j]);
        }
        c.join(v_f[f], &d_tri);
        let boxes = pick_from(choice, &d_box, 4 * k - set.len() + 1);
        c.join(v_f[f], &boxes);
    }
    for i in 0..k {
        c.join(rows[i], &w[i]);
        c.join(rows[i], &d_tri);
        let boxes = pick_from(choice, &d_box, 3 * k + 1);
        c.join(rows[i], &boxes);
    }
    for j in 0..k {
        let column: Vec<Vertex> = (0..k).map(|i| w[i][j]).collect();
        c.join(cols[j], &column);
        c.join(cols[j], &d_tri);
        let boxes = pick_from(choice, &d_box, 3 * k + 1);
        c.join(cols[j], &boxes);
    }

    let r = 5 * k;
    let mut parameters = BTreeMap::new();
    parameters.insert("k".into(), as_i64(k));
    parameters.insert("sets".into(), as_i64(inst.family.len()));
    Ok(ReducedInstance {
        instance: AllianceInstance::new(c.graph.build(), r, 1),
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::Phs(inst.clone()).digest(),
            parameters,
            r,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r }],
        },
        modulator: VertexSet::new(),
        diagram: None,
        claims: StructuralClaims::default(),
    })
}

fn grid_side(ri: &ReducedInstance) -> usize {
    ri.group("r").len()
}

/// `D_tri ∪ {w[i][j] : (i, j) in X}`.
pub fn lift_phs(ri: &ReducedInstance, cells: &[Cell]) -> Result<LiftReport, ReductionError> {
    let k = grid_side(ri);
    let mut lifted: VertexSet = ri.group("D_tri").into_iter().collect();
    for &(i, j) in cells {
        if i >= k || j >= k {
            return Err(ReductionError::Witness(format!("cell ({i},{j}) outside the {k}x{k} grid")));
        }
        lifted.insert(ri.vertex(&format!("w[{i}][{j}]"))?);
    }
    Ok(ri.verify(lifted))
}

/// `{(i, j) : w[i][j] in S}`, row-major.
pub fn project_phs(ri: &ReducedInstance, alliance: &VertexSet) -> Result<Vec<Cell>, ReductionError> {
    let k = grid_side(ri);
    let mut cells = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if alliance.contains(&ri.vertex(&format!("w[{i}][{j}]"))?) {
                cells.push((i, j));
            }
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let inst = PhsInstance { k: 2, family: vec![vec![(0, 1)]] };
        let ri = phs_to_oa(&inst, &mut Choice::lowest()).unwrap();
        assert_eq!(ri.instance.graph.order(), 202);
        assert_eq!(ri.instance.r, 10);
    }

    #[test]
    fn lift_and_project() {
        let inst = PhsInstance { k: 3, family: vec![vec![(0, 1), (2, 2)], vec![(1, 0)]] };
        for seed in [None, Some(7)] {
            let mut choice = seed.map_or_else(Choice::lowest, Choice::seeded);
            let ri = phs_to_oa(&inst, &mut choice).unwrap();
            let x = vec![(0, 1), (1, 0), (2, 2)];
            let report = lift_phs(&ri, &x).unwrap();
            assert!(report.passed(), "{:?}", report.verification);
            assert_eq!(report.size, 15);
            assert_eq!(project_phs(&ri, &report.lifted).unwrap(), x);

            let miss = lift_phs(&ri, &[(0, 0), (1, 1), (2, 2)]).unwrap();
            assert!(!miss.passed());
        }
    }
}
