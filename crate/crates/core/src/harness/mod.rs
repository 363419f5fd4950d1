//! Instance generators and the three-tier reduction checks: lift, round trip
//! and budgeted bidirectional equivalence.

pub mod fixtures;
mod gen;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::graph::VertexSet;
use crate::reductions::{Choice, ReducedInstance, ReductionError, ReductionKind, Source, Witness};
use crate::solvers::{orbit_count, solve_bruteforce, solve_by_twin_orbits, SearchBudget, SolveOutcome};
use crate::source::{SourceError, SourceInstance};

pub use gen::{
    gen_connected_graph, gen_cycle_diagram, gen_grid, gen_random_circle, gen_random_ds, gen_random_graph,
    gen_random_mrss, gen_random_phs, gen_random_strings, gen_random_vc3, MAX_RANDOM_ORDER,
};

/// Brute force on the target is attempted only when `C(|V|, r)` stays below
/// this count.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{what} is {got}, above the cap {cap}")]
    Cap { what: &'static str, got: usize, cap: usize },
    #[error("invalid generator arguments: {0}")]
    Invalid(String),
    #[error("no {0} found within the rejection limit")]
    Rejection(&'static str),
    #[error("source has no witness, a lift check needs a yes-instance")]
    NotYesInstance,
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Lift,
    Roundtrip,
    Equiv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Budget,
}

/// One named check inside a report; `value` holds the measured quantity or,
/// on failure, the violating object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub check: String,
    pub passed: bool,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub reduction: String,
    pub source_digest: String,
    pub tier: Tier,
    pub verdict: Verdict,
    /// Seed that regenerates the case and the construction choices.
    pub seed: Option<u64>,
    pub details: Vec<Detail>,
    pub wall_seconds: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct Recorder {
    kind: ReductionKind,
    digest: String,
    tier: Tier,
    seed: Option<u64>,
    details: Vec<Detail>,
    start: Instant,
}

impl Recorder {
    fn new(kind: ReductionKind, source: &Source, tier: Tier, seed: Option<u64>) -> Self {
        Self { kind, digest: source.digest(), tier, seed, details: Vec::new(), start: Instant::now() }
    }

    fn record(&mut self, check: &str, passed: bool, value: Value) -> bool {
        self.details.push(Detail { check: check.into(), passed, value });
        passed
    }

    fn finish(self, budget: bool) -> CheckReport {
        let verdict = if self.details.iter().any(|d| !d.passed) {
            Verdict::Fail
        } else if budget {
            Verdict::Budget
        } else {
            Verdict::Pass
        };
        CheckReport {
            reduction: self.kind.name().into(),
            source_digest: self.digest,
            tier: self.tier,
            verdict,
            seed: self.seed,
            details: self.details,
            wall_seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

fn choice_for(seed: Option<u64>) -> Choice {
    seed.map_or_else(Choice::lowest, Choice::seeded)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn witness_or_oracle(source: &Source, witness: Option<&Witness>, budget: &SearchBudget) -> Result<Witness, HarnessError> {
    match witness {
        Some(w) => Ok(w.clone()),
        None => source.oracle(budget)?.ok_or(HarnessError::NotYesInstance),
    }
}

fn lift_into(rec: &mut Recorder, ri: &ReducedInstance, w: &Witness) -> Result<Option<VertexSet>, HarnessError> {
    let report = rec.kind.lift(ri, w)?;
    let ok = report.passed();
    let value = if ok {
        json!({ "size": report.size, "bound": report.bound, "order": ri.instance.graph.order() })
    } else {
        json!({ "lifted": report.lifted, "violations": report.verification })
    };
    rec.record("lift-verifies", ok, value);
    rec.record("lift-size", report.size <= report.bound, json!({ "size": report.size, "bound": report.bound }));
    Ok(ok.then_some(report.lifted))
}

/// Forward direction: reduce, lift the witness (or the oracle's), verify.
pub fn run_lift_check(
    kind: ReductionKind,
    source: &Source,
    witness: Option<&Witness>,
    seed: Option<u64>,
) -> Result<CheckReport, HarnessError> {
    let mut rec = Recorder::new(kind, source, Tier::Lift, seed);
    let w = witness_or_oracle(source, witness, &SearchBudget::default())?;
    if rec.record("source-witness", source.is_witness(&w), to_value(&w)) {
        let ri = kind.reduce(source, &mut choice_for(seed))?;
        lift_into(&mut rec, &ri, &w)?;
    }
    Ok(rec.finish(false))
}

/// Reverse direction on the lifted set: `project(lift(w))` must be a
/// witness of the source. The MRSS reductions must give `w` back exactly.
pub fn run_roundtrip_check(
    kind: ReductionKind,
    source: &Source,
    witness: Option<&Witness>,
    seed: Option<u64>,
) -> Result<CheckReport, HarnessError> {
    let mut rec = Recorder::new(kind, source, Tier::Roundtrip, seed);
    let w = witness_or_oracle(source, witness, &SearchBudget::default())?;
    if !rec.record("source-witness", source.is_witness(&w), to_value(&w)) {
        return Ok(rec.finish(false));
    }
    let ri = kind.reduce(source, &mut choice_for(seed))?;
    let Some(lifted) = lift_into(&mut rec, &ri, &w)? else {
        return Ok(rec.finish(false));
    };
    match kind.project(&ri, &lifted) {
        Ok(back) => {
            rec.record("projection-valid", source.is_witness(&back), to_value(&back));
            if matches!(kind, ReductionKind::MrssSoafn | ReductionKind::MrssOa) {
                rec.record("projection-identity", back == w, json!({ "projected": back, "witness": w }));
            }
        }
        Err(e) => {
            rec.record("projection-defined", false, json!(e.to_string()));
        }
    }
    Ok(rec.finish(false))
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of candidate sets brute force visits on `ri`: all sizes up to `r`
/// over the free vertices.
fn enumeration_count(ri: &ReducedInstance) -> u128 {
    let inst = &ri.instance;
    let free = inst.graph.order() - inst.forbidden.len() - inst.necessary.len();
    let extra = inst.r.saturating_sub(inst.necessary.len());
    (0..=extra.min(free)).fold(0u128, |a, s| a.saturating_add(binomial(free, s)))
}

/// Largest target on which the twin-orbit fallback is attempted.
const ORBIT_ORDER_LIMIT: usize = 100_000;

/// Both directions at once: the source oracle's decision must equal the
/// exact size-bounded decision on the target. Brute force runs when
/// `C(|V|, <= r)` fits [`ENUMERATION_LIMIT`] and the budget, and the exact
/// twin-orbit search when it visits fewer sets; if neither fits, the
/// verdict is `budget`.
pub fn run_equiv_check(
    kind: ReductionKind,
    source: &Source,
    budget: &SearchBudget,
    seed: Option<u64>,
) -> Result<CheckReport, HarnessError> {
    let mut rec = Recorder::new(kind, source, Tier::Equiv, seed);
    let ri = kind.reduce(source, &mut choice_for(seed))?;
    let source_yes = match source.oracle(budget) {
        Ok(w) => w.is_some(),
        Err(ReductionError::Source(SourceError::TooLarge { .. })) => {
            rec.record("source-oracle", true, json!("source beyond oracle caps"));
            return Ok(rec.finish(true));
        }
        Err(e) => return Err(e.into()),
    };
    let limit = ENUMERATION_LIMIT.min(u128::from(budget.max_candidates));
    let candidates = enumeration_count(&ri);
    let orbits = if ri.instance.graph.order() <= ORBIT_ORDER_LIMIT {
        orbit_count(&ri.instance)
    } else {
        u128::MAX
    };
    let outcome = if candidates <= limit && candidates <= orbits {
        rec.record("method", true, json!({ "brute-force": candidates.to_string() }));
        solve_bruteforce(&ri.instance, budget)
    } else if orbits <= u128::from(budget.max_candidates) {
        rec.record("method", true, json!({ "twin-orbits": orbits.to_string() }));
        solve_by_twin_orbits(&ri.instance, budget)
    } else {
        rec.record(
            "method",
            true,
            json!({ "skipped": { "candidates": candidates.to_string(), "orbits": orbits.to_string() } }),
        );
        return Ok(rec.finish(true));
    };
    match outcome.decision() {
        None => {
            rec.record("target-solver", true, to_value(&outcome));
            Ok(rec.finish(true))
        }
        Some(target_yes) => {
            let value = json!({ "source": source_yes, "target": target_yes, "target-outcome": outcome });
            rec.record("decisions-agree", source_yes == target_yes, value);
            if let SolveOutcome::Found { solution, .. } = &outcome {
                // Informational: the projections are only promised on lifted
                // sets, so an arbitrary minimum alliance may project to a
                // non-witness without the decisions disagreeing.
                if let Ok(back) = kind.project(&ri, solution) {
                    let valid = source.is_witness(&back);
                    rec.record("solver-solution-projection", true, json!({ "projected": back, "witness": valid }));
                }
            }
            Ok(rec.finish(false))
        }
    }
}

/// A seeded random yes-instance for `kind` together with a witness.
/// Instance-to-instance stages draw their inputs from the MRSS chain.
pub fn random_case(kind: ReductionKind, seed: u64) -> Result<(Source, Witness), HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let problem = |inst: SourceInstance| Source::Problem(inst);
    let source = match kind {
        ReductionKind::MrssSoafn | ReductionKind::MrssOa => {
            let k = rng.gen_range(1..=2);
            let n = rng.gen_range(2..=3);
            problem(SourceInstance::Mrss(gen_random_mrss(k, n, 2, rng.gen())?))
        }
        ReductionKind::Collapse | ReductionKind::SoafnOaf | ReductionKind::OafOa => {
            return stage_case(kind, seed);
        }
        ReductionKind::PhsOa => {
            let k = rng.gen_range(2..=3);
            let sets = rng.gen_range(1..=3);
            problem(SourceInstance::Phs(gen_random_phs(k, sets, rng.gen())?))
        }
        ReductionKind::CsOa => {
            let k = rng.gen_range(2..=3);
            let n = rng.gen_range(3..=5);
            let d = rng.gen_range(1..=2);
            problem(SourceInstance::ClosestString(gen_random_strings(k, n, d, rng.gen())?))
        }
        ReductionKind::VcBipartite | ReductionKind::VcSplit => {
            let n = rng.gen_range(2..=7);
            problem(SourceInstance::VertexCover(gen_random_vc3(n, rng.gen())?))
        }
        ReductionKind::PdsApex => {
            let n = rng.gen_range(2..=7);
            problem(SourceInstance::DominatingSet(gen_random_ds(n, 0.4, rng.gen())?))
        }
        ReductionKind::DsCircle => {
            let n = rng.gen_range(3..=6);
            problem(SourceInstance::CircleDs(gen_random_circle(n, rng.gen())?))
        }
    };
    let witness = source.oracle(&SearchBudget::default())?.ok_or(HarnessError::NotYesInstance)?;
    Ok((source, witness))
}

/// Walks the MRSS chain up to the input of `kind`, lifting the MRSS
/// witness through every earlier stage.
fn stage_case(kind: ReductionKind, seed: u64) -> Result<(Source, Witness), HarnessError> {
    let (mrss, w) = random_case(ReductionKind::MrssSoafn, seed)?;
    let chain = [ReductionKind::MrssSoafn, ReductionKind::Collapse, ReductionKind::SoafnOaf];
    let mut source = mrss;
    let mut witness = w;
    for step in chain {
        if step == kind {
            break;
        }
        let ri = step.reduce(&source, &mut Choice::seeded(seed))?;
        let report = step.lift(&ri, &witness)?;
        if !report.passed() {
            return Err(ReductionError::Witness(format!("{step} lift failed while preparing a stage case")).into());
        }
        witness = Witness::Vertices(report.lifted);
        source = Source::Stage(Box::new(ri));
    }
    Ok((source, witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random cases per reduction for the lift and round-trip tiers.
    pub cases: usize,
    /// Random cases per reduction for the equivalence tier.
    pub equiv_cases: usize,
    pub budget: SearchBudget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 0, cases: 5, equiv_cases: 1, budget: SearchBudget::new(1_000_000, 10.0) }
    }
}

/// Every reduction on `cases` random yes-instances: lift and round trip on
/// each, equivalence on the first `equiv_cases`.
pub fn suite(config: &SuiteConfig) -> Result<Vec<CheckReport>, HarnessError> {
    let mut reports = Vec::new();
    for kind in ReductionKind::ALL {
        for i in 0..config.cases {
            let seed = config.seed.wrapping_add(i as u64);
            let (source, witness) = random_case(kind, seed)?;
            reports.push(run_lift_check(kind, &source, Some(&witness), Some(seed))?);
            reports.push(run_roundtrip_check(kind, &source, Some(&witness), Some(seed))?);
            if i < config.equiv_cases {
                reports.push(run_equiv_check(kind, &source, &config.budget, Some(seed))?);
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::source::VcInstance;

    #[test]
    fn binomials() {
        assert_eq!(binomial(34, 5), 278_256);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(300, 150), u128::MAX);
    }

    #[test]
    fn fixture_lifts() {
        let mrss = Source::Problem(SourceInstance::Mrss(fixtures::mrss_small()));
        assert!(run_lift_check(ReductionKind::MrssSoafn, &mrss, None, None).unwrap().passed());
        let cs = Source::Problem(SourceInstance::ClosestString(fixtures::closest_string_small()));
        let y = Witness::Word(fixtures::CLOSEST_STRING_CENTRE.into());
        assert!(run_lift_check(ReductionKind::CsOa, &cs, Some(&y), None).unwrap().passed());
        let k3 = Source::Problem(SourceInstance::VertexCover(VcInstance {
            graph: Graph::complete(3),
            k: 2,
            max_degree_3: true,
        }));
        assert!(run_lift_check(ReductionKind::VcSplit, &k3, None, None).unwrap().passed());
    }

    #[test]
    fn bad_witness_fails_with_object() {
        let mrss = Source::Problem(SourceInstance::Mrss(fixtures::mrss_small()));
        let r = run_lift_check(ReductionKind::MrssSoafn, &mrss, Some(&Witness::Subset(vec![1])), Some(3)).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.seed, Some(3));
        assert_eq!(r.details[0].value, json!({ "subset": [1] }));
    }

    #[test]
    fn k3_no_instance_is_no_on_target() {
        let src = Source::Problem(SourceInstance::VertexCover(VcInstance {
            graph: Graph::complete(3),
            k: 1,
            max_degree_3: true,
        }));
        let r = run_equiv_check(ReductionKind::VcSplit, &src, &SearchBudget::default(), None).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(r.details.last().unwrap().value["target"], json!(false));
    }

    #[test]
    fn phs_equivalence_is_out_of_budget() {
        let src = Source::Problem(SourceInstance::Phs(gen_random_phs(2, 1, 0).unwrap()));
        let r = run_equiv_check(ReductionKind::PhsOa, &src, &SearchBudget::new(1_000_000, 5.0), None).unwrap();
        assert_eq!(r.verdict, Verdict::Budget, "{r:?}");
    }

    #[test]
    fn every_kind_has_random_cases() {
        for kind in ReductionKind::ALL {
            let (source, w) = random_case(kind, 11).unwrap();
            assert!(source.is_witness(&w), "{kind}");
            assert!(run_roundtrip_check(kind, &source, Some(&w), Some(11)).unwrap().passed(), "{kind}");
        }
    }
}
