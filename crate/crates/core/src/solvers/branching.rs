use super::{size_window, Meter, SearchBudget, SolveOutcome};
use crate::alliance::{offensive_threshold, AllianceInstance};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    In,
    Out,
    Free,
}

/// Propagation-and-branching search over In/Out/Free tripartitions.
///
/// Sizes are tried in increasing order, so the first solution found has
/// minimum size. For each size bound the search is seeded with one vertex
/// (earlier seeds are fixed Out), or with the necessary set when there is
/// one, and grows the solution only where a boundary vertex still lacks
/// neighbours inside.
pub fn solve_branching(inst: &AllianceInstance, budget: &SearchBudget) -> SolveOutcome {
    let (lo, hi) = match size_window(inst) {
        Ok(w) => w,
        Err(outcome) => return outcome,
    };
    let mut search = Search::new(inst, Meter::new(budget));
    for bound in lo..=hi {
        match search.run(bound) {
            Some(true) => {
                let solution = (0..inst.graph.order())
                    .filter(|&v| search.status[v] == Status::In)
                    .collect();
                return SolveOutcome::found(solution);
            }
            Some(false) => {}
            None => return search.meter.exhausted(),
        }
    }
    SolveOutcome::NoneWithinBound
}

struct Search<'a> {
    g: &'a Graph,
    inst: &'a AllianceInstance,
    meter: Meter,
    threshold: Vec<i64>,
    status: Vec<Status>,
    d_in: Vec<i64>,
    free_nb: Vec<i64>,
    in_count: usize,
    bound: usize,
    trail: Vec<Vertex>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a AllianceInstance, meter: Meter) -> Self {
        let g = &inst.graph;
        let n = g.order();
        Self {
            g,
            inst,
            meter,
            threshold: (0..n).map(|v| offensive_threshold(g.degree(v), inst.strength)).collect(),
            status: vec![Status::Free; n],
            d_in: vec![0; n],
            free_nb: (0..n).map(|v| g.degree(v) as i64).collect(),
            in_count: 0,
            bound: 0,
            trail: Vec::new(),
        }
    }

    /// Some(true) with `status` holding a solution, Some(false) if none of
    /// size within `bound` exists, None when the budget ran out.
    fn run(&mut self, bound: usize) -> Option<bool> {
        self.bound = bound;
        let mut base = Vec::new();
        for &v in &self.inst.forbidden {
            self.assign(v, Status::Out, &mut base);
        }
        for &v in &self.inst.necessary {
            self.assign(v, Status::In, &mut base);
        }
        let result = if !self.inst.necessary.is_empty() {
            self.root(base)
        } else {
            let seeds: Vec<Vertex> =
                (0..self.g.order()).filter(|v| !self.inst.forbidden.contains(v)).collect();
            let mut found = Some(false);
            let mut mark = self.trail.len();
            for seed in seeds {
                let mut queue = Vec::new();
                self.assign(seed, Status::In, &mut queue);
                match self.root(queue) {
                    Some(false) => {}
                    other => {
                        found = other;
                        break;
                    }
                }
                self.undo_to(mark);
                // Later seeds never need an earlier seed inside.
                let mut queue = Vec::new();
                self.assign(seed, Status::Out, &mut queue);
                mark = self.trail.len();
            }
            found
        };
        if result != Some(true) {
            self.undo_to(0);
        }
        result
    }

    fn root(&mut self, queue: Vec<Vertex>) -> Option<bool> {
        let mark = self.trail.len();
        let r = if self.propagate(queue) { self.branch() } else { Some(false) };
        if r != Some(true) {
            self.undo_to(mark);
        }
        r
    }

    fn assign(&mut self, v: Vertex, to: Status, touched: &mut Vec<Vertex>) {
        debug_assert_eq!(self.status[v], Status::Free);
        self.status[v] = to;
        if to == Status::In {
            self.in_count += 1;
        }
        for w in self.g.neighbors(v) {
            self.free_nb[w] -= 1;
            if to == Status::In {
                self.d_in[w] += 1;
            }
            touched.push(w);
        }
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let was_in = self.status[v] == Status::In;
            if was_in {
                self.in_count -= 1;
            }
            self.status[v] = Status::Free;
            for w in self.g.neighbors(v) {
                self.free_nb[w] += 1;
                if was_in {
                    self.d_in[w] -= 1;
                }
            }
        }
    }

    fn deficit(&self, v: Vertex) -> i64 {
        self.threshold[v] - self.d_in[v]
    }

    fn remaining(&self) -> i64 {
        self.bound as i64 - self.in_count as i64
    }

    /// Applies the forcing rules until nothing changes; false on conflict.
    fn propagate(&mut self, mut queue: Vec<Vertex>) -> bool {
        while let Some(v) = queue.pop() {
            if self.in_count > self.bound {
                return false;
            }
            if self.status[v] == Status::In || self.d_in[v] == 0 {
                continue;
            }
            let deficit = self.deficit(v);
            if deficit <= 0 {
                continue;
            }
            match self.status[v] {
                Status::Out => {
                    if deficit > self.free_nb[v] || deficit > self.remaining() {
                        return false;
                    }
                    if deficit == self.free_nb[v] {
                        let free: Vec<Vertex> = self
                            .g
                            .neighbors(v)
                            .filter(|&w| self.status[w] == Status::Free)
                            .collect();
                        for u in free {
                            self.assign(u, Status::In, &mut queue);
                        }
                    }
                }
                Status::Free => {
                    if deficit > self.free_nb[v] || deficit > self.remaining() {
                        self.assign(v, Status::In, &mut queue);
                    }
                }
                Status::In => unreachable!(),
            }
        }
        self.in_count <= self.bound
    }

    fn branch(&mut self) -> Option<bool> {
        if !self.meter.tick() {
            return None;
        }
        let n = self.g.order();
        let mut free_demand = None;
        let mut out_demand = None;
        for v in 0..n {
            if self.status[v] == Status::In || self.d_in[v] == 0 || self.deficit(v) <= 0 {
                continue;
            }
            match self.status[v] {
                Status::Out => {
                    out_demand = Some(v);
                    break;
                }
                Status::Free if free_demand.is_none() => free_demand = Some(v),
                _ => {}
            }
        }
        if let Some(v) = out_demand {
            // Some free neighbour of v must join: branch on the first one
            // that does.
            let free: Vec<Vertex> =
                self.g.neighbors(v).filter(|&w| self.status[w] == Status::Free).collect();
            let mark = self.trail.len();
            for (i, &u) in free.iter().enumerate() {
                let mut queue = Vec::new();
                for &w in &free[..i] {
                    self.assign(w, Status::Out, &mut queue);
                }
                self.assign(u, Status::In, &mut queue);
                if let r @ (Some(true) | None) = self.child(queue) {
                    return r;
                }
                self.undo_to(mark);
            }
            return Some(false);
        }
        if let Some(v) = free_demand {
            return self.binary(v);
        }
        // Every boundary vertex is satisfied with the Free ones left out.
        if self.in_count >= 1 && (!self.inst.exact || self.in_count == self.bound) {
            return Some(true);
        }
        match (0..n).find(|&v| self.status[v] == Status::Free) {
            Some(v) if self.in_count < self.bound => self.binary(v),
            _ => Some(false),
        }
    }

    fn binary(&mut self, v: Vertex) -> Option<bool> {
        let mark = self.trail.len();
        for to in [Status::In, Status::Out] {
            let mut queue = Vec::new();
            self.assign(v, to, &mut queue);
            if let r @ (Some(true) | None) = self.child(queue) {
                return r;
            }
            self.undo_to(mark);
        }
        Some(false)
    }

    fn child(&mut self, queue: Vec<Vertex>) -> Option<bool> {
        if self.propagate(queue) {
            self.branch()
        } else {
            Some(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn solve(g: Graph, r: usize, strength: i64) -> SolveOutcome {
        solve_branching(&AllianceInstance::new(g, r, strength), &SearchBudget::default())
    }

    #[test]
    fn examples() {
        assert_eq!(solve(Graph::path(3), 1, 1).solution(), Some(&VertexSet::from([1])));
        assert_eq!(solve(Graph::path(3), 0, 1), SolveOutcome::NoneWithinBound);
        assert_eq!(solve(Graph::complete(4), 4, 1).size(), Some(2));
        assert_eq!(solve(Graph::cycle(5), 2, 1), SolveOutcome::NoneWithinBound);
        assert_eq!(solve(Graph::cycle(5), 5, 1).size(), Some(3));
        assert_eq!(solve(Graph::star(5), 6, 1).size(), Some(1));
        assert_eq!(solve(Graph::empty(1), 1, 1).size(), Some(1));
    }

    #[test]
    fn exact_and_constrained() {
        let mut inst = AllianceInstance::new(Graph::path(4), 3, 1);
        inst.exact = true;
        let out = solve_branching(&inst, &SearchBudget::default());
        assert_eq!(out.size(), Some(3));
        assert!(crate::alliance::check_instance_solution(&inst, out.solution().unwrap()).is_valid());

        let mut inst = AllianceInstance::new(Graph::path(3), 3, 1);
        inst.forbidden = VertexSet::from([1]);
        inst.necessary = VertexSet::from([0]);
        assert_eq!(
            solve_branching(&inst, &SearchBudget::default()).solution(),
            Some(&VertexSet::from([0, 2]))
        );
    }

    #[test]
    fn budget() {
        let inst = AllianceInstance::new(Graph::cycle(12), 12, 2);
        assert!(matches!(
            solve_branching(&inst, &SearchBudget::new(3, 10.0)),
            SolveOutcome::BudgetExhausted { .. }
        ));
    }
}
