use super::{solve_branching, SearchBudget, SolveOutcome};
use crate::alliance::AllianceInstance;
use crate::graph::{Graph, Vertex, VertexSet};

/// Exact minimum vertex cover by branching on the lowest uncovered edge
/// `uv` (take `u`, or take all of `N(u)`), pruned with a greedy matching
/// lower bound.
pub fn min_vertex_cover(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut best: Vec<bool> = (0..n).map(|v| g.degree(v) > 0).collect();
    let mut best_size = best.iter().filter(|&&b| b).count();
    let mut cover = vec![false; n];
    cover_rec(g, &mut cover, 0, &mut best, &mut best_size);
    (0..n).filter(|&v| best[v]).collect()
}

fn uncovered_edge(g: &Graph, cover: &[bool]) -> Option<(Vertex, Vertex)> {
    (0..g.order())
        .filter(|&u| !cover[u])
        .find_map(|u| g.neighbors(u).find(|&w| !cover[w]).map(|w| (u, w)))
}

fn matching_bound(g: &Graph, cover: &[bool]) -> usize {
    let mut used = cover.to_vec();
    let mut size = 0;
    for u in 0..g.order() {
        if used[u] {
            continue;
        }
        if let Some(w) = g.neighbors(u).find(|&w| !used[w]) {
            used[u] = true;
            used[w] = true;
            size += 1;
        }
    }
    size
}

fn cover_rec(g: &Graph, cover: &mut Vec<bool>, size: usize, best: &mut Vec<bool>, best_size: &mut usize) {
    let Some((u, _)) = uncovered_edge(g, cover) else {
        if size < *best_size {
            *best_size = size;
            best.clone_from(cover);
        }
        return;
    };
    if size + matching_bound(g, cover) >= *best_size {
        return;
    }
    cover[u] = true;
    cover_rec(g, cover, size + 1, best, best_size);
    cover[u] = false;

    let added: Vec<Vertex> = g.neighbors(u).filter(|&w| !cover[w]).collect();
    for &w in &added {
        cover[w] = true;
    }
    cover_rec(g, cover, size + added.len(), best, best_size);
    for &w in &added {
        cover[w] = false;
    }
}

/// Minimum offensive alliance searched within the vertex cover number: every
/// vertex cover is an offensive alliance, so `r = vc(G)` always suffices.
/// Edgeless graphs use `r = 1` (any single vertex is an alliance there).
pub fn solve_via_vertex_cover(g: &Graph, budget: &SearchBudget) -> SolveOutcome {
    let vc = min_vertex_cover(g).len();
    solve_branching(&AllianceInstance::new(g.clone(), vc.max(1), 1), budget)
}
