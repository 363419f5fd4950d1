//! Binary closest string to offensive alliance with `r = 4n + 2d + 1`.
//! Position `i` of a central string picks one of `w[i][0]` (letter `'0'`)
//! and `w[i][1]` (letter `'1'`); a string vertex `v_x` is satisfied exactly
//! when at most `d` picks disagree with `x`.

use std::collections::BTreeMap;

use crate::alliance::AllianceInstance;
use crate::graph::{Vertex, VertexSet};
use crate::source::{ClosestStringInstance, SourceInstance};

use super::{
    as_i64, Choice, Construction, LiftReport, Provenance, ReducedInstance, ReductionError, StageRecord,
    StructuralClaims,
};

pub const NAME: &str = "cs-oa";

fn pick_from(choice: &mut Choice, pool: &[Vertex], count: usize) -> Vec<Vertex> {
    choice.pick(pool.len(), count).into_iter().map(|i| pool[i]).collect()
}

fn letter(b: u8) -> usize {
    usize::from(b == b'1')
}

pub fn closest_string_to_oa(
    inst: &ClosestStringInstance,
    choice: &mut Choice,
) -> Result<ReducedInstance, ReductionError> {
    inst.validate()?;
    let n = inst.length();
    if n == 0 {
        return Err(ReductionError::Precondition("strings are empty".into()));
    }
    let d = inst.d;
    let mut c = Construction::new();
    let v_x = c.group("v_x", inst.strings.len());
    let w: Vec<[Vertex; 2]> = (0..n)
        .map(|i| [c.vertex(format!("w[{i}][0]")), c.vertex(format!("w[{i}][1]"))])
        .collect();
    let d_tri = c.group("D_tri", 3 * n + 2 * d + 1);
    for (j, &v) in d_tri.iter().enumerate() {
        let pendants = c.group(&format!("D_tri[{j}].pend"), 12 * n);
        c.join(v, &pendants);
    }
    let d_box = c.group("D_box", 12 * n + 1);
    let rows = c.group("r", n);

    c.clique(&d_tri);
    c.clique(&d_box);
    for (s, x) in inst.strings.iter().enumerate() {
        for (i, b) in x.bytes().enumerate() {
            c.edge(v_x[s], w[i][letter(b)]);
        }
        c.join(v_x[s], &d_tri);
        let boxes = pick_from(choice, &d_box, 4 * n);
        c.join(v_x[s], &boxes);
    }
    for i in 0..n {
        c.join(rows[i], &w[i]);
        let tris = pick_from(choice, &d_tri, 3);
        c.join(rows[i], &tris);
        let boxes = pick_from(choice, &d_box, 2);
        c.join(rows[i], &boxes);
    }

    let cover: VertexSet =
        rows.iter().chain(w.iter().flatten()).chain(&d_box).chain(&d_tri).copied().collect();
    let r = 4 * n + 2 * d + 1;
    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), as_i64(n));
    parameters.insert("d".into(), as_i64(d));
    parameters.insert("strings".into(), as_i64(inst.strings.len()));
    Ok(ReducedInstance {
        instance: AllianceInstance::new(c.graph.build(), r, 1),
        roles: c.roles,
        provenance: Provenance {
            reduction: NAME.into(),
            source_digest: SourceInstance::ClosestString(inst.clone()).digest(),
            parameters,
            r,
            stages: vec![StageRecord { reduction: NAME.into(), prefix: String::new(), input_order: 0, r }],
        },
        modulator: VertexSet::new(),
        diagram: None,
        claims: StructuralClaims { declared_cover: Some(cover), ..Default::default() },
    })
}

fn string_length(ri: &ReducedInstance) -> usize {
    ri.group("r").len()
}

/// `D_tri ∪ {w[i][y[i]]}`.
pub fn lift_closest_string(ri: &ReducedInstance, y: &str) -> Result<LiftReport, ReductionError> {
    let n = string_length(ri);
    if y.len() != n || !y.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(ReductionError::Witness(format!("{y:?} is not a binary string of length {n}")));
    }
    let mut lifted: VertexSet = ri.group("D_tri").into_iter().collect();
    for (i, b) in y.bytes().enumerate() {
        lifted.insert(ri.vertex(&format!("w[{i}][{}]", letter(b)))?);
    }
    Ok(ri.verify(lifted))
}

/// Reads `y[i]` off whichever of `w[i][0]`, `w[i][1]` is in the alliance.
pub fn project_closest_string(ri: &ReducedInstance, alliance: &VertexSet) -> Result<String, ReductionError> {
    let n = string_length(ri);
    let mut y = String::with_capacity(n);
    for i in 0..n {
        let zero = alliance.contains(&ri.vertex(&format!("w[{i}][0]"))?);
        let one = alliance.contains(&ri.vertex(&format!("w[{i}][1]"))?);
        match (zero, one) {
            (true, false) => y.push('0'),
            (false, true) => y.push('1'),
            _ => {
                return Err(ReductionError::Projection(format!(
                    "position {i} needs exactly one of its two letter vertices"
                )))
            }
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::is_vertex_cover;

    #[test]
    fn counts_and_cover() {
        let inst = ClosestStringInstance { strings: vec!["01".into(), "10".into()], d: 1 };
        let ri = closest_string_to_oa(&inst, &mut Choice::lowest()).unwrap();
        assert_eq!(ri.instance.graph.order(), 258);
        assert_eq!(ri.instance.r, 11);
        let cover = ri.claims.declared_cover.as_ref().unwrap();
        assert_eq!(cover.len(), 40);
        assert!(is_vertex_cover(&ri.instance.graph, cover));
    }

    #[test]
    fn small_strings_lift_and_project() {
        let inst = ClosestStringInstance {
            strings: vec!["1011100".into(), "1101010".into(), "1110001".into()],
            d: 3,
        };
        let ri = closest_string_to_oa(&inst, &mut Choice::lowest()).unwrap();
        let report = lift_closest_string(&ri, "1000000").unwrap();
        assert!(report.passed(), "{:?}", report.verification);
        assert_eq!(project_closest_string(&ri, &report.lifted).unwrap(), "1000000");
        assert!(!lift_closest_string(&ri, "0000000").unwrap().passed());
        assert!(lift_closest_string(&ri, "10").is_err());
    }
}
