//! Offensive and defensive alliance verifiers.
//!
//! A non-empty set `S` is an offensive `l`-alliance when every vertex `v`
//! outside `S` with a neighbour in `S` satisfies `d_S(v) >= d_{S^c}(v) + l`
//! (`l = 1` offensive, `l = 2` strong offensive). It is a defensive alliance
//! when every `v` in `S` satisfies `d_S(v) + 1 >= d_{S^c}(v)`.
//!
//! The verifiers only touch `S` and its neighbours, so they work on graphs
//! whose hung-tree layer has billions of vertices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("vertex {0} is both forbidden and necessary")]
    Overlap(Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// Alliance question: is there a set `S` with `1 <= |S| <= r` (or `|S| = r`
/// when `exact`) that avoids `forbidden`, contains `necessary` and is an
/// offensive `strength`-alliance?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllianceInstance {
    pub graph: Graph,
    pub r: usize,
    pub strength: i64,
    pub forbidden: VertexSet,
    pub necessary: VertexSet,
    pub exact: bool,
}

/// The non-graph part of an instance, as stored next to an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub r: usize,
    pub strength: i64,
    #[serde(default)]
    pub forbidden: VertexSet,
    #[serde(default)]
    pub necessary: VertexSet,
    #[serde(default)]
    pub exact: bool,
}

impl AllianceInstance {
    pub fn new(graph: Graph, r: usize, strength: i64) -> Self {
        Self {
            graph,
            r,
            strength,
            forbidden: VertexSet::new(),
            necessary: VertexSet::new(),
            exact: false,
        }
    }

    pub fn with_constraints(
        graph: Graph,
        params: &InstanceParams,
    ) -> Result<Self, InstanceError> {
        let inst = Self {
            graph,
            r: params.r,
            strength: params.strength,
            forbidden: params.forbidden.clone(),
            necessary: params.necessary.clone(),
            exact: params.exact,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let n = self.graph.order();
        if let Some(&v) = self.forbidden.iter().chain(&self.necessary).find(|&&v| v >= n) {
            return Err(InstanceError::OutOfRange { vertex: v, n });
        }
        if let Some(&v) = self.forbidden.intersection(&self.necessary).next() {
            return Err(InstanceError::Overlap(v));
        }
        Ok(())
    }

    pub fn params(&self) -> InstanceParams {
        InstanceParams {
            r: self.r,
            strength: self.strength,
            forbidden: self.forbidden.clone(),
            necessary: self.necessary.clone(),
            exact: self.exact,
        }
    }

    /// Smallest `d_S(v)` that satisfies `v` on the boundary:
    /// `d_S >= d - d_S + l`, i.e. `ceil((d + l) / 2)`.
    pub fn threshold(&self, degree: usize) -> i64 {
        offensive_threshold(degree, self.strength)
    }
}

/// `ceil((degree + strength) / 2)`; may be zero or negative for small or
/// negative strengths.
pub fn offensive_threshold(degree: usize, strength: i64) -> i64 {
    (degree as i64 + strength).div_euclid(2) + (degree as i64 + strength).rem_euclid(2)
}

/// One vertex failing its degree inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: Vertex,
    /// `d_S(v)`.
    pub inside: usize,
    /// `d_{S^c}(v)`.
    pub outside: usize,
    /// Slack the inequality demands: `l` for offensive checks, `-1` for the
    /// defensive `d_S + 1 >= d_{S^c}`.
    pub required_slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstraintFailure {
    EmptySet,
    Size { size: usize, bound: usize, exact: bool },
    Forbidden { vertices: Vec<Vertex> },
    Necessary { missing: Vec<Vertex> },
    OutOfRange { vertices: Vec<Vertex> },
    /// A forbidden vertex breaking the pendant structure required of
    /// forbidden sets.
    ForbiddenStructure { vertex: Vertex, reason: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
    pub constraint_failures: Vec<ConstraintFailure>,
}

impl ViolationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.constraint_failures.is_empty()
    }
}

/// `N(S)`: vertices outside `S` with at least one neighbour in `S`.
pub fn boundary(g: &Graph, s: &VertexSet) -> VertexSet {
    s.iter()
        .filter(|&&v| v < g.order())
        .flat_map(|&v| g.neighbors(v))
        .filter(|w| !s.contains(w))
        .collect()
}

/// `d_S(v)` for every `v` outside `S` adjacent to `S`.
fn boundary_counts(g: &Graph, s: &VertexSet) -> HashMap<Vertex, usize> {
    let mut counts = HashMap::new();
    for &v in s {
        for w in g.neighbors(v) {
            if !s.contains(&w) {
                *counts.entry(w).or_insert(0) += 1;
            }
        }
    }
    counts
}

fn range_failure(g: &Graph, s: &VertexSet) -> Option<ConstraintFailure> {
    let bad: Vec<Vertex> = s.iter().copied().filter(|&v| v >= g.order()).collect();
    (!bad.is_empty()).then_some(ConstraintFailure::OutOfRange { vertices: bad })
}

/// Reports every boundary vertex with `d_S(v) < d_{S^c}(v) + strength`.
pub fn check_offensive(g: &Graph, s: &VertexSet, strength: i64) -> ViolationReport {
    let mut report = ViolationReport::default();
    if s.is_empty() {
        report.constraint_failures.push(ConstraintFailure::EmptySet);
        return report;
    }
    if let Some(f) = range_failure(g, s) {
        report.constraint_failures.push(f);
        return report;
    }
    let mut violations: Vec<Violation> = boundary_counts(g, s)
        .into_iter()
        .filter_map(|(v, inside)| {
            let outside = g.degree(v) - inside;
            ((inside as i64) < outside as i64 + strength).then_some(Violation {
                vertex: v,
                inside,
                outside,
                required_slack: strength,
            })
        })
        .collect();
    violations.sort_by_key(|x| x.vertex);
    report.violations = violations;
    report
}

/// Reports every `v` in `S` with `d_S(v) + 1 < d_{S^c}(v)`.
pub fn check_defensive(g: &Graph, s: &VertexSet) -> ViolationReport {
    let mut report = ViolationReport::default();
    if s.is_empty() {
        report.constraint_failures.push(ConstraintFailure::EmptySet);
        return report;
    }
    if let Some(f) = range_failure(g, s) {
        report.constraint_failures.push(f);
        return report;
    }
    for &v in s {
        let inside = g.neighbors(v).filter(|w| s.contains(w)).count();
        let outside = g.degree(v) - inside;
        if inside + 1 < outside {
            report.violations.push(Violation { vertex: v, inside, outside, required_slack: -1 });
        }
    }
    report
}

/// Full instance check: the offensive inequality at the instance strength
/// plus the size, forbidden and necessary constraints.
pub fn check_instance_solution(inst: &AllianceInstance, s: &VertexSet) -> ViolationReport {
    let mut report = check_offensive(&inst.graph, s, inst.strength);
    let size_ok = if inst.exact { s.len() == inst.r } else { s.len() <= inst.r };
    if !s.is_empty() && !size_ok {
        report.constraint_failures.push(ConstraintFailure::Size {
            size: s.len(),
            bound: inst.r,
            exact: inst.exact,
        });
    }
    let hit: Vec<Vertex> = s.intersection(&inst.forbidden).copied().collect();
    if !hit.is_empty() {
        report.constraint_failures.push(ConstraintFailure::Forbidden { vertices: hit });
    }
    let missing: Vec<Vertex> = inst.necessary.difference(s).copied().collect();
    if !missing.is_empty() {
        report.constraint_failures.push(ConstraintFailure::Necessary { missing });
    }
    report
}

/// Checks the pendant structure of a forbidden set: every degree-1
/// forbidden vertex has a forbidden neighbour, and every forbidden vertex of
/// larger degree has a degree-1 forbidden neighbour.
pub fn validate_forbidden_structure(g: &Graph, forbidden: &VertexSet) -> ViolationReport {
    let mut report = ViolationReport::default();
    if let Some(f) = range_failure(g, forbidden) {
        report.constraint_failures.push(f);
        return report;
    }
    for &v in forbidden {
        let failure = match g.degree(v) {
            0 => None,
            1 => (!g.neighbors(v).any(|w| forbidden.contains(&w)))
                .then_some("degree-1 forbidden vertex without a forbidden neighbour"),
            _ => (!g.neighbors(v).any(|w| forbidden.contains(&w) && g.degree(w) == 1))
                .then_some("forbidden vertex without a degree-1 forbidden neighbour"),
        };
        if let Some(reason) = failure {
            report
                .constraint_failures
                .push(ConstraintFailure::ForbiddenStructure { vertex: v, reason: reason.into() });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary(&Graph::path(3), &set(&[1])), set(&[0, 2]));
        assert_eq!(boundary(&Graph::complete(4), &set(&[0, 1, 2, 3])), set(&[]));
        assert_eq!(boundary(&Graph::cycle(5), &set(&[0, 2])), set(&[1, 3, 4]));
    }

    #[test]
    fn offensive_examples() {
        let p3 = Graph::path(3);
        assert!(check_offensive(&p3, &set(&[1]), 1).is_valid());
        let r = check_offensive(&p3, &set(&[0]), 1);
        assert_eq!(
            r.violations,
            vec![Violation { vertex: 1, inside: 1, outside: 1, required_slack: 1 }]
        );
        assert!(check_offensive(&Graph::complete(3), &set(&[0, 1]), 1).is_valid());
        let k4 = check_offensive(&Graph::complete(4), &set(&[0, 1]), 2);
        assert_eq!(k4.violations.len(), 2);
        assert!(k4.violations.iter().all(|v| v.inside == 2 && v.outside == 1));
        assert_eq!(
            check_offensive(&p3, &set(&[]), 1).constraint_failures,
            vec![ConstraintFailure::EmptySet]
        );
    }

    #[test]
    fn defensive_examples() {
        assert!(check_defensive(&Graph::path(2), &set(&[0])).is_valid());
        let star = check_defensive(&Graph::star(3), &set(&[0]));
        assert_eq!(
            star.violations,
            vec![Violation { vertex: 0, inside: 0, outside: 3, required_slack: -1 }]
        );
        assert!(check_defensive(&Graph::cycle(5), &set(&[0, 1])).is_valid());
        assert!(!check_defensive(&Graph::cycle(5), &set(&[])).is_valid());
    }

    #[test]
    fn instance_constraints() {
        let inst = AllianceInstance::new(Graph::path(3), 0, 1);
        let r = check_instance_solution(&inst, &set(&[1]));
        assert_eq!(
            r.constraint_failures,
            vec![ConstraintFailure::Size { size: 1, bound: 0, exact: false }]
        );

        let mut inst = AllianceInstance::new(Graph::path(3), 3, 1);
        inst.forbidden = set(&[1]);
        inst.necessary = set(&[2]);
        let r = check_instance_solution(&inst, &set(&[0, 1]));
        assert!(r.constraint_failures.contains(&ConstraintFailure::Forbidden { vertices: vec![1] }));
        assert!(r.constraint_failures.contains(&ConstraintFailure::Necessary { missing: vec![2] }));

        inst.exact = true;
        let r = check_instance_solution(&inst, &set(&[2]));
        assert!(r
            .constraint_failures
            .contains(&ConstraintFailure::Size { size: 1, bound: 3, exact: true }));
    }

    #[test]
    fn instance_validation() {
        let params = InstanceParams {
            r: 1,
            strength: 1,
            forbidden: set(&[0]),
            necessary: set(&[0]),
            exact: false,
        };
        assert_eq!(
            AllianceInstance::with_constraints(Graph::path(2), &params),
            Err(InstanceError::Overlap(0))
        );
        let params = InstanceParams { forbidden: set(&[5]), necessary: set(&[]), ..params };
        assert!(matches!(
            AllianceInstance::with_constraints(Graph::path(2), &params),
            Err(InstanceError::OutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn forbidden_structure() {
        // 0 - 1 - 2 with 0 forbidden pendant of non-forbidden 1.
        let g = Graph::path(3);
        assert!(!validate_forbidden_structure(&g, &set(&[0])).is_valid());
        assert!(validate_forbidden_structure(&g, &set(&[])).is_valid());
        // Pendant 0 and its forbidden neighbour 1 of degree 2.
        assert!(validate_forbidden_structure(&g, &set(&[0, 1])).is_valid());
        // Degree-2 forbidden vertex with no pendant forbidden neighbour.
        assert!(!validate_forbidden_structure(&Graph::cycle(4), &set(&[0])).is_valid());
    }

    #[test]
    fn thresholds() {
        assert_eq!(offensive_threshold(3, 1), 2);
        assert_eq!(offensive_threshold(4, 1), 3);
        assert_eq!(offensive_threshold(4, 2), 3);
        assert_eq!(offensive_threshold(0, -1), 0);
        assert_eq!(offensive_threshold(1, -4), -1);
    }
}
