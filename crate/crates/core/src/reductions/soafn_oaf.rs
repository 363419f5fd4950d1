//! Strong offensive alliance with one necessary vertex `x` to offensive
//! alliance with forbidden vertices. A forbidden hub `x_box` adjacent to
//! every vertex except the degree-1 forbidden ones lowers the slack from 2
//! to 1, and a bridge set `T` under a second hub `t_box` forces `x` in.

use crate::graph::VertexSet;

use super::{as_i64, Construction, LiftReport, ReducedInstance, ReductionError, StageRecord};

pub const NAME: &str = "soafn-oaf";

pub fn soafn_to_oaf(ri: &ReducedInstance) -> Result<ReducedInstance, ReductionError> {
    let old = &ri.instance;
    if old.strength != 2 {
        return Err(ReductionError::Precondition(format!("strength is {}, expected 2", old.strength)));
    }
    if old.necessary.len() != 1 {
        return Err(ReductionError::Precondition(format!(
            "{} necessary vertices, expected exactly one",
            old.necessary.len()
        )));
    }
    let x = *old.necessary.iter().next().unwrap();
    let g = &old.graph;
    let n = g.order();
    let pendant_forbidden: VertexSet =
        old.forbidden.iter().copied().filter(|&v| g.degree(v) == 1).collect();

    let prefix = ri.next_prefix(NAME);
    let mut c = Construction::extend(ri)?;
    let t_box = c.vertex(format!("{prefix}.t_box"));
    let x_box = c.vertex(format!("{prefix}.x_box"));
    let v_t_box = c.group(&format!("{prefix}.V_t_box"), 4 * n);
    let v_x_box = c.group(&format!("{prefix}.V_x_box"), n);
    let t = c.group(&format!("{prefix}.T"), 4 * n);
    c.join(t_box, &t);
    c.join(t_box, &v_t_box);
    c.edge(t_box, x);
    c.join(x_box, &t);
    c.join(x_box, &v_x_box);
    let rest: Vec<_> = (0..n).filter(|v| !pendant_forbidden.contains(v)).collect();
    c.join(x_box, &rest);

    let mut out = ri.clone();
    out.instance.graph = c.graph.build();
    out.instance.r = old.r + 4 * n;
    out.instance.strength = 1;
    out.instance.necessary.clear();
    out.instance.forbidden.extend([t_box, x_box]);
    out.instance.forbidden.extend(v_t_box.iter().chain(&v_x_box).copied());
    out.roles = c.roles;
    out.modulator.extend([t_box, x_box]);
    out.provenance.r = out.instance.r;
    out.provenance.parameters.insert(format!("{prefix}.n"), as_i64(n));
    out.provenance.stages.push(StageRecord {
        reduction: NAME.into(),
        prefix,
        input_order: n,
        r: out.instance.r,
    });
    Ok(out)
}

pub(crate) fn lifted_set(ri: &ReducedInstance, prior: &VertexSet) -> Result<VertexSet, ReductionError> {
    let stage = ri.stage(NAME)?;
    let t = ri.group(&format!("{}.T", stage.prefix));
    Ok(prior.iter().copied().chain(t).collect())
}

/// `R ∪ T`.
pub fn lift_soafn_oaf(ri: &ReducedInstance, prior: &VertexSet) -> Result<LiftReport, ReductionError> {
    Ok(ri.verify(lifted_set(ri, prior)?))
}

/// `R' ∩ V(G)`.
pub fn project_soafn_oaf(ri: &ReducedInstance, alliance: &VertexSet) -> Result<VertexSet, ReductionError> {
    let cut = ri.stage(NAME)?.input_order;
    Ok(alliance.iter().copied().filter(|&v| v < cut).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alliance::{check_instance_solution, validate_forbidden_structure};
    use crate::reductions::{collapse_necessary, lift_collapse, lift_mrss, mrss_to_soafn, Choice};
    use crate::source::MrssInstance;

    fn staged() -> (ReducedInstance, VertexSet) {
        let inst = MrssInstance::new(2, vec![vec![2, 1], vec![1, 1], vec![1, 2]], vec![3, 3]);
        let first = mrss_to_soafn(&inst, &mut Choice::lowest()).unwrap();
        let second = collapse_necessary(&first).unwrap();
        let prior = lift_collapse(&second, &lift_mrss(&first, &[0, 2]).unwrap().lifted).unwrap().lifted;
        (second, prior)
    }

    #[test]
    fn counts_and_round_trip() {
        let (input, prior) = staged();
        let n = input.instance.graph.order();
        let out = soafn_to_oaf(&input).unwrap();
        assert_eq!(out.instance.graph.order(), 10 * n + 2);
        assert_eq!(out.instance.r, input.instance.r + 4 * n);
        assert!(validate_forbidden_structure(&out.instance.graph, &out.instance.forbidden).is_valid());

        let report = lift_soafn_oaf(&out, &prior).unwrap();
        assert!(report.passed(), "{:?}", report.verification);
        let back = project_soafn_oaf(&out, &report.lifted).unwrap();
        assert_eq!(back, prior);
        assert!(check_instance_solution(&input.instance, &back).is_valid());
    }

    #[test]
    fn rejects_wrong_shape() {
        let (input, _) = staged();
        let first = soafn_to_oaf(&input).unwrap();
        assert!(matches!(soafn_to_oaf(&first), Err(ReductionError::Precondition(_))));
    }
}
