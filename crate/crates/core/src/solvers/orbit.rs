use std::collections::BTreeMap;

use super::{size_window, FastChecker, Meter, SearchBudget, SolveOutcome};
use crate::alliance::AllianceInstance;
use crate::graph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Role {
    Free,
    Forbidden,
    Necessary,
}

/// Partition of the vertices into twin classes with equal constraint status:
/// first false twins (same open neighbourhood), then, among the vertices left
/// alone, true twins (same closed neighbourhood). Any permutation inside a
/// class is an automorphism that preserves the instance. Classes are sorted
/// by smallest member; members ascend.
pub fn twin_classes(inst: &AllianceInstance) -> Vec<Vec<Vertex>> {
    let g = &inst.graph;
    let role = |v: Vertex| {
        if inst.forbidden.contains(&v) {
            Role::Forbidden
        } else if inst.necessary.contains(&v) {
            Role::Necessary
        } else {
            Role::Free
        }
    };
    let mut open: BTreeMap<(Role, Vec<Vertex>), Vec<Vertex>> = BTreeMap::new();
    for v in 0..g.order() {
        let mut nb: Vec<Vertex> = g.neighbors(v).collect();
        nb.sort_unstable();
        open.entry((role(v), nb)).or_default().push(v);
    }
    let mut classes = Vec::new();
    let mut closed: BTreeMap<(Role, Vec<Vertex>), Vec<Vertex>> = BTreeMap::new();
    for (_, members) in open {
        if members.len() > 1 {
            classes.push(members);
        } else {
            let v = members[0];
            let mut nb: Vec<Vertex> = g.neighbors(v).chain([v]).collect();
            nb.sort_unstable();
            closed.entry((role(v), nb)).or_default().push(v);
        }
    }
    classes.extend(closed.into_values());
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Number of per-class count vectors the orbit search visits for sizes up to
/// `inst.r` (saturating).
pub fn orbit_count(inst: &AllianceInstance) -> u128 {
    let classes = twin_classes(inst);
    let r = inst.r;
    let mut ways = vec![0u128; r + 1];
    ways[0] = 1;
    for class in &classes {
        let (lo, hi) = allowed(inst, class);
        let mut next = vec![0u128; r + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for c in lo..=hi {
                if s + c <= r {
                    next[s + c] = next[s + c].saturating_add(w);
                }
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

fn allowed(inst: &AllianceInstance, class: &[Vertex]) -> (usize, usize) {
    if inst.forbidden.contains(&class[0]) {
        (0, 0)
    } else if inst.necessary.contains(&class[0]) {
        (class.len(), class.len())
    } else {
        (0, class.len())
    }
}

/// Decides the instance exactly by enumerating one representative per orbit
/// of the twin-class automorphisms: how many vertices to take from each
/// class, always the lowest identifiers. Sizes ascend, so a found set has
/// minimum size.
pub fn solve_by_twin_orbits(inst: &AllianceInstance, budget: &SearchBudget) -> SolveOutcome {
    let (lo, hi) = match size_window(inst) {
        Ok(w) => w,
        Err(outcome) => return outcome,
    };
    let classes = twin_classes(inst);
    let limits: Vec<(usize, usize)> = classes.iter().map(|c| allowed(inst, c)).collect();
    let mut checker = FastChecker::new(&inst.graph, inst.strength);
    let mut meter = Meter::new(budget);
    let mut counts = vec![0usize; classes.len()];
    for size in lo..=hi {
        let mut walk = Walk {
            classes: &classes,
            limits: &limits,
            checker: &mut checker,
            meter: &mut meter,
            set: Vec::new(),
        };
        match walk.fill(0, size, &mut counts) {
            Some(true) => return SolveOutcome::found(walk.set.iter().copied().collect()),
            Some(false) => {}
            None => return meter.exhausted(),
        }
    }
    SolveOutcome::NoneWithinBound
}

struct Walk<'a, 'g> {
    classes: &'a [Vec<Vertex>],
    limits: &'a [(usize, usize)],
    checker: &'a mut FastChecker<'g>,
    meter: &'a mut Meter,
    set: Vec<Vertex>,
}

impl Walk<'_, '_> {
    fn fill(&mut self, i: usize, left: usize, counts: &mut [usize]) -> Option<bool> {
        if i == self.classes.len() {
            if left > 0 {
                return Some(false);
            }
            if !self.meter.tick() {
                return None;
            }
            self.set.clear();
            for (class, &c) in self.classes.iter().zip(counts.iter()) {
                self.set.extend(&class[..c]);
            }
            return Some(self.checker.is_alliance(&self.set));
        }
        let rest_max: usize = self.limits[i + 1..].iter().map(|l| l.1).sum();
        let rest_min: usize = self.limits[i + 1..].iter().map(|l| l.0).sum();
        let (lo, hi) = self.limits[i];
        for c in lo..=hi.min(left) {
            if left - c > rest_max || left - c < rest_min {
                continue;
            }
            counts[i] = c;
            match self.fill(i + 1, left - c, counts) {
                Some(false) => {}
                other => return other,
            }
        }
        counts[i] = 0;
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, VertexSet};
    use crate::solvers::solve_bruteforce;

    #[test]
    fn classes_of_small_graphs() {
        let star = AllianceInstance::new(Graph::star(4), 1, 1);
        assert_eq!(twin_classes(&star), vec![vec![0], vec![1, 2, 3, 4]]);
        let k4 = AllianceInstance::new(Graph::complete(4), 1, 1);
        assert_eq!(twin_classes(&k4), vec![vec![0, 1, 2, 3]]);
        let mut p3 = AllianceInstance::new(Graph::path(3), 1, 1);
        p3.forbidden = VertexSet::from([0]);
        assert_eq!(twin_classes(&p3), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn orbit_counts() {
        // K_{1,4} with r = 2: counts (a, b) with a <= 1, b <= 4, a + b <= 2.
        assert_eq!(orbit_count(&AllianceInstance::new(Graph::star(4), 2, 1)), 5);
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let r = rng.gen_range(0..=n);
            let strength = rng.gen_range(1..=2);
            let inst = AllianceInstance::new(Graph::from_edges(n, &edges).unwrap(), r, strength);
            let b = SearchBudget::default();
            let orbit = solve_by_twin_orbits(&inst, &b);
            assert_eq!(orbit.size(), solve_bruteforce(&inst, &b).size(), "{edges:?} r={r}");
            if let Some(s) = orbit.solution() {
                assert!(crate::alliance::check_instance_solution(&inst, s).is_valid());
            }
        }
    }
}
