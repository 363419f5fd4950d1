//! MRSS all the way to plain offensive alliance, through the three
//! instance-to-instance stages. Lifts and projections compose stagewise.

use crate::graph::VertexSet;
use crate::source::MrssInstance;

use super::{
    collapse, mrss, oaf_oa, soafn_oaf, Choice, LiftReport, ReducedInstance, ReductionError,
};

pub const NAME: &str = "mrss-oa";

pub fn mrss_to_oa_pipeline(inst: &MrssInstance, choice: &mut Choice) -> Result<ReducedInstance, ReductionError> {
    let first = mrss::mrss_to_soafn(inst, choice)?;
    let second = collapse::collapse_necessary(&first)?;
    let third = soafn_oaf::soafn_to_oaf(&second)?;
    let mut out = oaf_oa::oaf_to_oa(&third)?;
    out.provenance.reduction = NAME.into();
    Ok(out)
}

pub fn lift_pipeline(ri: &ReducedInstance, subset: &[usize]) -> Result<LiftReport, ReductionError> {
    let lifted = mrss::lifted_set(ri, subset)?;
    let lifted = collapse::lifted_set(ri, &lifted)?;
    let lifted = soafn_oaf::lifted_set(ri, &lifted)?;
    ri.stage(oaf_oa::NAME)?;
    Ok(ri.verify(lifted))
}

pub fn project_pipeline(ri: &ReducedInstance, alliance: &VertexSet) -> Result<Vec<usize>, ReductionError> {
    let r = oaf_oa::project_oaf_oa(ri, alliance)?;
    let r = soafn_oaf::project_soafn_oaf(ri, &r)?;
    let r = collapse::project_collapse(ri, &r)?;
    mrss::project_mrss(ri, &r)
}
