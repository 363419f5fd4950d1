//! Uniform access to the reductions by name, for the harness and the CLI.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alliance::check_instance_solution;
use crate::graph::VertexSet;
use crate::solvers::{solve_branching, SearchBudget, SolveOutcome};
use crate::source::{
    is_dominating_set, is_vertex_cover, oracle_closest_string, oracle_dominating_set, oracle_mrss,
    oracle_phs, oracle_vertex_cover, Cell, SourceInstance,
};

use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    MrssSoafn,
    Collapse,
    SoafnOaf,
    OafOa,
    MrssOa,
    PhsOa,
    CsOa,
    VcBipartite,
    VcSplit,
    PdsApex,
    DsCircle,
}

/// Input of a reduction: a source problem instance, or the output of an
/// earlier stage for the instance-to-instance reductions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Problem(SourceInstance),
    Stage(Box<ReducedInstance>),
}

/// A solution of a source instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// Vector indices (MRSS).
    Subset(Vec<usize>),
    /// Grid cells (permutation hitting set).
    Cells(Vec<Cell>),
    /// Central string.
    Word(String),
    /// Vertex cover, dominating set or alliance.
    Vertices(VertexSet),
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown reduction {s:?}"))
    }
}

fn expect_vertices(w: &Witness) -> Result<&VertexSet, ReductionError> {
    match w {
        Witness::Vertices(v) => Ok(v),
        other => Err(ReductionError::Witness(format!("expected a vertex set, got {other:?}"))),
    }
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 11] = [
        ReductionKind::MrssSoafn,
        ReductionKind::Collapse,
        ReductionKind::SoafnOaf,
        ReductionKind::OafOa,
        ReductionKind::MrssOa,
        ReductionKind::PhsOa,
        ReductionKind::CsOa,
        ReductionKind::VcBipartite,
        ReductionKind::VcSplit,
        ReductionKind::PdsApex,
        ReductionKind::DsCircle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::MrssSoafn => mrss::NAME,
            ReductionKind::Collapse => collapse::NAME,
            ReductionKind::SoafnOaf => soafn_oaf::NAME,
            ReductionKind::OafOa => oaf_oa::NAME,
            ReductionKind::MrssOa => pipeline::NAME,
            ReductionKind::PhsOa => phs::NAME,
            ReductionKind::CsOa => closest_string::NAME,
            ReductionKind::VcBipartite => vc_bipartite::NAME,
            ReductionKind::VcSplit => vc_split::NAME,
            ReductionKind::PdsApex => apex::NAME,
            ReductionKind::DsCircle => circle::NAME,
        }
    }

    /// Whether the reduction takes an alliance instance rather than a
    /// source problem.
    pub fn is_stage(self) -> bool {
        matches!(self, ReductionKind::Collapse | ReductionKind::SoafnOaf | ReductionKind::OafOa)
    }

    pub fn reduce(self, source: &Source, choice: &mut Choice) -> Result<ReducedInstance, ReductionError> {
        if self.is_stage() {
            let staged;
            let input = match source {
                Source::Stage(ri) => ri.as_ref(),
                Source::Problem(SourceInstance::Alliance(spec)) => {
                    staged = ReducedInstance::from_alliance(spec)?;
                    &staged
                }
                Source::Problem(other) => return Err(mismatch(self, other.kind())),
            };
            return match self {
                ReductionKind::Collapse => collapse_necessary(input),
                ReductionKind::SoafnOaf => soafn_to_oaf(input),
                _ => oaf_to_oa(input),
            };
        }
        let Source::Problem(problem) = source else {
            return Err(mismatch(self, "alliance stage"));
        };
        match (self, problem) {
            (ReductionKind::MrssSoafn, SourceInstance::Mrss(i)) => mrss_to_soafn(i, choice),
            (ReductionKind::MrssOa, SourceInstance::Mrss(i)) => mrss_to_oa_pipeline(i, choice),
            (ReductionKind::PhsOa, SourceInstance::Phs(i)) => phs_to_oa(i, choice),
            (ReductionKind::CsOa, SourceInstance::ClosestString(i)) => closest_string_to_oa(i, choice),
            (ReductionKind::VcBipartite, SourceInstance::VertexCover(i)) => vc3_to_oa_bipartite(i),
            (ReductionKind::VcSplit, SourceInstance::VertexCover(i)) => vc3_to_oa_split(i),
            (ReductionKind::PdsApex, SourceInstance::DominatingSet(i)) => pds_to_soa_apex(i),
            (ReductionKind::DsCircle, SourceInstance::CircleDs(i)) => circle_ds_to_oa(i),
            (_, other) => Err(mismatch(self, other.kind())),
        }
    }

    /// Maps a source witness to a candidate target solution and verifies it.
    pub fn lift(self, ri: &ReducedInstance, witness: &Witness) -> Result<LiftReport, ReductionError> {
        match (self, witness) {
            (ReductionKind::MrssSoafn, Witness::Subset(s)) => lift_mrss(ri, s),
            (ReductionKind::MrssOa, Witness::Subset(s)) => lift_pipeline(ri, s),
            (ReductionKind::PhsOa, Witness::Cells(x)) => lift_phs(ri, x),
            (ReductionKind::CsOa, Witness::Word(y)) => lift_closest_string(ri, y),
            (ReductionKind::Collapse, w) => lift_collapse(ri, expect_vertices(w)?),
            (ReductionKind::SoafnOaf, w) => lift_soafn_oaf(ri, expect_vertices(w)?),
            (ReductionKind::OafOa, w) => lift_oaf_oa(ri, expect_vertices(w)?),
            (ReductionKind::VcBipartite, w) => lift_vc_bipartite(ri, expect_vertices(w)?),
            (ReductionKind::VcSplit, w) => lift_vc_split(ri, expect_vertices(w)?),
            (ReductionKind::PdsApex, w) => lift_apex(ri, expect_vertices(w)?),
            (ReductionKind::DsCircle, w) => lift_circle(ri, expect_vertices(w)?),
            (_, w) => Err(ReductionError::Witness(format!("{self} cannot lift {w:?}"))),
        }
    }

    /// Maps a target solution back to a candidate source witness.
    pub fn project(self, ri: &ReducedInstance, alliance: &VertexSet) -> Result<Witness, ReductionError> {
        Ok(match self {
            ReductionKind::MrssSoafn => Witness::Subset(project_mrss(ri, alliance)?),
            ReductionKind::MrssOa => Witness::Subset(project_pipeline(ri, alliance)?),
            ReductionKind::PhsOa => Witness::Cells(project_phs(ri, alliance)?),
            ReductionKind::CsOa => Witness::Word(project_closest_string(ri, alliance)?),
            ReductionKind::Collapse => Witness::Vertices(project_collapse(ri, alliance)?),
            ReductionKind::SoafnOaf => Witness::Vertices(project_soafn_oaf(ri, alliance)?),
            ReductionKind::OafOa => Witness::Vertices(project_oaf_oa(ri, alliance)?),
            ReductionKind::VcBipartite => Witness::Vertices(project_vc_bipartite(ri, alliance)?),
            ReductionKind::VcSplit => Witness::Vertices(project_vc_split(ri, alliance)?),
            ReductionKind::PdsApex => Witness::Vertices(project_apex(ri, alliance)?),
            ReductionKind::DsCircle => Witness::Vertices(project_circle(ri, alliance)?),
        })
    }
}

fn mismatch(kind: ReductionKind, got: &str) -> ReductionError {
    ReductionError::Precondition(format!("{kind} does not accept a {got} instance"))
}

impl Source {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Problem(p) => p.kind(),
            Source::Stage(_) => "alliance",
        }
    }

    pub fn digest(&self) -> String {
        match self {
            Source::Problem(p) => p.digest(),
            Source::Stage(ri) => ri.input_digest(),
        }
    }

    /// Decides the source exhaustively. Alliance sources are decided with
    /// the branching solver under `budget`; `Ok(None)` means no witness,
    /// and an exhausted budget is an error.
    pub fn oracle(&self, budget: &SearchBudget) -> Result<Option<Witness>, ReductionError> {
        let alliance = |inst: &crate::alliance::AllianceInstance| match solve_branching(inst, budget) {
            SolveOutcome::Found { solution, .. } => Ok(Some(Witness::Vertices(solution))),
            SolveOutcome::NoneWithinBound => Ok(None),
            SolveOutcome::BudgetExhausted { .. } => {
                Err(ReductionError::Precondition("oracle budget exhausted".into()))
            }
        };
        Ok(match self {
            Source::Stage(ri) => return alliance(&ri.instance),
            Source::Problem(SourceInstance::Alliance(spec)) => {
                return alliance(&ReducedInstance::from_alliance(spec)?.instance)
            }
            Source::Problem(SourceInstance::Mrss(i)) => oracle_mrss(i)?.map(Witness::Subset),
            Source::Problem(SourceInstance::Phs(i)) => oracle_phs(i)?.map(Witness::Cells),
            Source::Problem(SourceInstance::ClosestString(i)) => oracle_closest_string(i)?.map(Witness::Word),
            Source::Problem(SourceInstance::VertexCover(i)) => oracle_vertex_cover(i)?.map(Witness::Vertices),
            Source::Problem(SourceInstance::DominatingSet(i)) => {
                oracle_dominating_set(&i.graph, i.k)?.map(Witness::Vertices)
            }
            Source::Problem(SourceInstance::CircleDs(i)) => {
                oracle_dominating_set(&i.graph(), i.k)?.map(Witness::Vertices)
            }
        })
    }

    /// Independent check of a witness against the source's own predicate.
    pub fn is_witness(&self, w: &Witness) -> bool {
        match (self, w) {
            (Source::Stage(ri), Witness::Vertices(s)) => check_instance_solution(&ri.instance, s).is_valid(),
            (Source::Problem(p), w) => match (p, w) {
                (SourceInstance::Mrss(i), Witness::Subset(s)) => i.is_witness(s),
                (SourceInstance::Phs(i), Witness::Cells(x)) => i.is_witness(x),
                (SourceInstance::ClosestString(i), Witness::Word(y)) => i.is_witness(y),
                (SourceInstance::VertexCover(i), Witness::Vertices(c)) => {
                    c.len() <= i.k && c.iter().all(|&v| v < i.graph.order()) && is_vertex_cover(&i.graph, c)
                }
                (SourceInstance::DominatingSet(i), Witness::Vertices(d)) => {
                    d.len() <= i.k && is_dominating_set(&i.graph, d)
                }
                (SourceInstance::CircleDs(i), Witness::Vertices(d)) => {
                    d.len() <= i.k && is_dominating_set(&i.graph(), d)
                }
                (SourceInstance::Alliance(spec), Witness::Vertices(s)) => ReducedInstance::from_alliance(spec)
                    .map(|ri| check_instance_solution(&ri.instance, s).is_valid())
                    .unwrap_or(false),
                _ => false,
            },
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::MrssInstance;

    #[test]
    fn names_round_trip() {
        for k in ReductionKind::ALL {
            assert_eq!(k.name().parse::<ReductionKind>(), Ok(k));
        }
        assert!("nope".parse::<ReductionKind>().is_err());
    }

    #[test]
    fn dispatch_small_mrss() {
        let inst = MrssInstance::new(2, vec![vec![2, 1], vec![1, 1], vec![1, 2]], vec![3, 3]);
        let src = Source::Problem(SourceInstance::Mrss(inst));
        let w = src.oracle(&SearchBudget::default()).unwrap().unwrap();
        assert!(src.is_witness(&w));
        let kind = ReductionKind::MrssSoafn;
        let ri = kind.reduce(&src, &mut Choice::lowest()).unwrap();
        let report = kind.lift(&ri, &w).unwrap();
        assert!(report.passed());
        assert_eq!(kind.project(&ri, &report.lifted).unwrap(), w);

        let next = ReductionKind::Collapse.reduce(&Source::Stage(Box::new(ri)), &mut Choice::lowest()).unwrap();
        assert_eq!(next.instance.r, 45);
        assert!(ReductionKind::PhsOa.reduce(&src, &mut Choice::lowest()).is_err());
    }
}
