use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    /// True when both sides partition `V(g)` and no edge stays inside a side.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.left.len() + self.right.len() == g.order()
            && self.left.is_disjoint(&self.right)
            && self.left.iter().chain(&self.right).all(|&v| v < g.order())
            && g.edges().all(|(u, v)| self.left.contains(&u) != self.left.contains(&v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub independent: VertexSet,
}

impl SplitPartition {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.clique.len() + self.independent.len() == g.order()
            && self.clique.is_disjoint(&self.independent)
            && self.clique.iter().chain(&self.independent).all(|&v| v < g.order())
            && self
                .clique
                .iter()
                .all(|&u| self.clique.range(u + 1..).all(|&v| g.has_edge(u, v)))
            && self
                .independent
                .iter()
                .all(|&u| g.neighbors(u).all(|w| !self.independent.contains(&w)))
    }
}

/// Breadth-first 2-colouring; `None` when an odd cycle exists. Vertices of
/// each component's starting side go to `left`.
pub fn is_bipartite(g: &Graph) -> Option<Bipartition> {
    let n = g.order();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut left, mut right) = (VertexSet::new(), VertexSet::new());
    for (v, s) in side.into_iter().enumerate() {
        if s == Some(false) {
            left.insert(v);
        } else {
            right.insert(v);
        }
    }
    let part = Bipartition { left, right };
    debug_assert!(part.is_valid_for(g));
    Some(part)
}

/// Split recognition from the degree sequence: with degrees sorted
/// non-increasingly (ties by identifier) and `m` the largest `i` with
/// `d_i >= i - 1`, a graph is split iff the first `m` vertices form a clique
/// and the rest an independent set. The candidate is verified explicitly.
pub fn is_split(g: &Graph) -> Option<SplitPartition> {
    let n = g.order();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = (1..=n).filter(|&i| g.degree(order[i - 1]) + 1 >= i).max().unwrap_or(0);
    let part = SplitPartition {
        clique: order[..m].iter().copied().collect(),
        independent: order[m..].iter().copied().collect(),
    };
    part.is_valid_for(g).then_some(part)
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Height of the forest `g - d`, each tree rooted at a centre (so a tree of
/// diameter `D` has height `ceil(D / 2)`); `None` if a cycle remains.
///
/// Hung trees are first compressed to at most two children per node; this
/// keeps the height and acyclicity of every component unchanged. `d` must
/// consist of explicit vertices.
pub fn forest_height_after_deletion(g: &Graph, d: &VertexSet) -> Option<usize> {
    let compressed;
    let g = if g.is_explicit() {
        g
    } else {
        compressed = g.compress_hung_trees();
        &compressed
    };
    let n = g.order();
    let mut removed = vec![false; n];
    for &v in d {
        if v < n {
            removed[v] = true;
        }
    }
    let mut seen = vec![false; n];
    let mut height = 0;
    for s in 0..n {
        if removed[s] || seen[s] {
            continue;
        }
        let (far, _, members) = bfs_farthest(g, &removed, s);
        for &u in &members {
            seen[u] = true;
        }
        let edges: usize = members
            .iter()
            .map(|&u| g.neighbors(u).filter(|&w| !removed[w]).count())
            .sum::<usize>()
            / 2;
        if edges + 1 != members.len() {
            return None;
        }
        let (_, diameter, _) = bfs_farthest(g, &removed, far);
        height = height.max(diameter.div_ceil(2));
    }
    Some(height)
}

/// Returns the vertex farthest from `s` in `g - removed`, its distance, and
/// the component of `s`.
fn bfs_farthest(g: &Graph, removed: &[bool], s: Vertex) -> (Vertex, usize, Vec<Vertex>) {
    let mut dist = HashMap::from([(s, 0usize)]);
    let mut queue = VecDeque::from([s]);
    let mut members = vec![s];
    let (mut far, mut best) = (s, 0);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        if du > best {
            far = u;
            best = du;
        }
        for w in g.neighbors(u) {
            if !removed[w] && !dist.contains_key(&w) {
                dist.insert(w, du + 1);
                members.push(w);
                queue.push_back(w);
            }
        }
    }
    (far, best, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn bipartite_examples() {
        let p = is_bipartite(&Graph::cycle(4)).unwrap();
        assert_eq!((p.left, p.right), (set(&[0, 2]), set(&[1, 3])));
        assert!(is_bipartite(&Graph::complete(3)).is_none());
        assert!(is_bipartite(&Graph::empty(3)).is_some());
    }

    #[test]
    fn split_examples() {
        let p = is_split(&Graph::complete(3)).unwrap();
        assert_eq!((p.clique, p.independent), (set(&[0, 1, 2]), set(&[])));
        assert!(is_split(&Graph::cycle(4)).is_none());
        assert!(is_split(&Graph::star(4)).is_some());
        assert!(is_split(&Graph::empty(0)).is_some());
    }

    #[test]
    fn split_matches_exhaustive_search_up_to_five_vertices() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let exhaustive = (0u32..(1 << n)).any(|cm| {
                    let part = SplitPartition {
                        clique: (0..n).filter(|v| cm >> v & 1 == 1).collect(),
                        independent: (0..n).filter(|v| cm >> v & 1 == 0).collect(),
                    };
                    part.is_valid_for(&g)
                });
                assert_eq!(is_split(&g).is_some(), exhaustive, "n={n} edges={edges:?}");
            }
        }
    }

    #[test]
    fn forest_height_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(forest_height_after_deletion(&k3, &set(&[0])), Some(1));
        assert_eq!(forest_height_after_deletion(&k3, &set(&[])), None);
        assert_eq!(forest_height_after_deletion(&Graph::path(5), &set(&[])), Some(2));
        assert_eq!(forest_height_after_deletion(&Graph::path(6), &set(&[])), Some(3));
        assert_eq!(forest_height_after_deletion(&Graph::star(7), &set(&[])), Some(1));
        assert_eq!(forest_height_after_deletion(&Graph::empty(3), &set(&[])), Some(0));
    }

    #[test]
    fn forest_height_sees_hung_trees() {
        // P2 with depth-2 trees below both ends: leaf-to-leaf path of 5 edges.
        let g = Graph::path(2).with_hung_trees(&[0, 1], 5).unwrap();
        assert_eq!(forest_height_after_deletion(&g, &set(&[])), Some(3));
        assert_eq!(forest_height_after_deletion(&g, &set(&[0])), Some(2));
        let m = g.materialize().unwrap();
        assert_eq!(forest_height_after_deletion(&m, &set(&[])), Some(3));
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&Graph::path(4)));
        assert!(!is_connected(&Graph::empty(2)));
    }
}
