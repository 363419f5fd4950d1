//! Exact minimum offensive-alliance search.

mod branching;
mod brute;
mod orbit;
mod vc;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::alliance::{offensive_threshold, AllianceInstance};
use crate::graph::{Graph, Vertex, VertexSet, MATERIALIZE_CAP};

pub use branching::solve_branching;
pub use brute::solve_bruteforce;
pub(crate) use brute::next_combination;
pub use orbit::{orbit_count, solve_by_twin_orbits, twin_classes};
pub use vc::{min_vertex_cover, solve_via_vertex_cover};

/// Limits on a search: candidate subsets (or branch nodes) and wall time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_candidates: u64,
    pub max_seconds: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_candidates: 100_000_000, max_seconds: 60.0 }
    }
}

impl SearchBudget {
    pub fn new(max_candidates: u64, max_seconds: f64) -> Self {
        Self { max_candidates, max_seconds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SolveOutcome {
    Found { solution: VertexSet, size: usize },
    NoneWithinBound,
    BudgetExhausted { explored: u64 },
}

impl SolveOutcome {
    pub fn found(solution: VertexSet) -> Self {
        let size = solution.len();
        SolveOutcome::Found { solution, size }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            SolveOutcome::Found { size, .. } => Some(*size),
            _ => None,
        }
    }

    pub fn solution(&self) -> Option<&VertexSet> {
        match self {
            SolveOutcome::Found { solution, .. } => Some(solution),
            _ => None,
        }
    }

    /// `Some(true)` found, `Some(false)` proven absent, `None` budget.
    pub fn decision(&self) -> Option<bool> {
        match self {
            SolveOutcome::Found { .. } => Some(true),
            SolveOutcome::NoneWithinBound => Some(false),
            SolveOutcome::BudgetExhausted { .. } => None,
        }
    }
}

/// Counts work and watches the clock, sampling time every 1024 ticks.
#[derive(Debug)]
pub(crate) struct Meter {
    ticks: u64,
    limit: u64,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        let deadline = (budget.max_seconds.is_finite() && budget.max_seconds >= 0.0)
            .then(|| Instant::now() + Duration::from_secs_f64(budget.max_seconds));
        Self { ticks: 0, limit: budget.max_candidates, deadline }
    }

    /// Records one unit of work; false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks > self.limit {
            return false;
        }
        if self.ticks.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.limit = 0;
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn exhausted(&self) -> SolveOutcome {
        SolveOutcome::BudgetExhausted { explored: self.ticks }
    }
}

/// Reusable offensive-alliance test for many small candidate sets over one
/// explicit graph.
pub(crate) struct FastChecker<'a> {
    g: &'a Graph,
    threshold: Vec<i64>,
    inside: Vec<bool>,
    count: Vec<i64>,
    touched: Vec<Vertex>,
}

impl<'a> FastChecker<'a> {
    pub(crate) fn new(g: &'a Graph, strength: i64) -> Self {
        let n = g.order();
        Self {
            g,
            threshold: (0..n).map(|v| offensive_threshold(g.degree(v), strength)).collect(),
            inside: vec![false; n],
            count: vec![0; n],
            touched: Vec::new(),
        }
    }

    pub(crate) fn is_alliance(&mut self, s: &[Vertex]) -> bool {
        for &v in s {
            self.inside[v] = true;
        }
        for &v in s {
            for w in self.g.neighbors(v) {
                if !self.inside[w] {
                    if self.count[w] == 0 {
                        self.touched.push(w);
                    }
                    self.count[w] += 1;
                }
            }
        }
        let ok = self.touched.iter().all(|&w| self.count[w] >= self.threshold[w]);
        for &w in &self.touched {
            self.count[w] = 0;
        }
        self.touched.clear();
        for &v in s {
            self.inside[v] = false;
        }
        ok
    }
}

/// Shared preconditions: explicit-size graph and a satisfiable size window.
/// Returns the inclusive range of admissible sizes, or an early outcome.
pub(crate) fn size_window(inst: &AllianceInstance) -> Result<(usize, usize), SolveOutcome> {
    if inst.graph.order() > MATERIALIZE_CAP {
        return Err(SolveOutcome::BudgetExhausted { explored: 0 });
    }
    let t = inst.necessary.len();
    let available = inst.graph.order() - inst.forbidden.len();
    let hi = inst.r.min(available);
    let lo = if inst.exact { inst.r } else { t.max(1) };
    if inst.r == 0 || available == 0 || lo > hi || t > hi {
        return Err(SolveOutcome::NoneWithinBound);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_counts() {
        let mut m = Meter::new(&SearchBudget::new(2, 10.0));
        assert!(m.tick());
        assert!(m.tick());
        assert!(!m.tick());
        assert_eq!(m.exhausted(), SolveOutcome::BudgetExhausted { explored: 3 });
    }

    #[test]
    fn fast_checker_agrees_with_verifier() {
        let g = Graph::cycle(5);
        let mut fc = FastChecker::new(&g, 1);
        for mask in 1u32..32 {
            let s: Vec<usize> = (0..5).filter(|v| mask >> v & 1 == 1).collect();
            let set: VertexSet = s.iter().copied().collect();
            assert_eq!(
                fc.is_alliance(&s),
                crate::alliance::check_offensive(&g, &set, 1).is_valid()
            );
        }
    }
}
