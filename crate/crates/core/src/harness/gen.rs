//! Seeded instance generators. Every generator is deterministic per seed and
//! refuses sizes beyond the oracle caps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{chord_diagram_to_graph, is_connected, ChordDiagram, Graph, Vertex, VertexSet};
use crate::solvers::min_vertex_cover;
use crate::source::{
    oracle_dominating_set, ClosestStringInstance, CircleDsInstance, DsInstance, MrssInstance, PhsInstance,
    VcInstance, MAX_DIMENSION, MAX_GRID_SIDE, MAX_ORACLE_VERTICES, MAX_STRING_LENGTH, MAX_VECTORS,
};

use super::HarnessError;

/// Largest graph `gen_random_graph` produces.
pub const MAX_RANDOM_ORDER: usize = 64;
const MAX_ENTRY: u64 = 8;
const MAX_FAMILY: usize = 16;
const MAX_STRINGS: usize = 8;
const REJECTION_ROUNDS: usize = 10_000;

fn cap(what: &'static str, got: usize, cap: usize) -> Result<(), HarnessError> {
    if got > cap {
        Err(HarnessError::Cap { what, got, cap })
    } else {
        Ok(())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, HarnessError> {
    cap("vertices", n, MAX_RANDOM_ORDER)?;
    let p = p.clamp(0.0, 1.0);
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Connected `G(n, p)` by rejection.
pub fn gen_connected_graph(n: usize, p: f64, seed: u64) -> Result<Graph, HarnessError> {
    let mut rng = rng(seed);
    for _ in 0..REJECTION_ROUNDS {
        let g = gen_random_graph(n, p, rng.gen())?;
        if is_connected(&g) {
            return Ok(g);
        }
    }
    Err(HarnessError::Rejection("connected graph"))
}

/// Random graph of maximum degree 3: candidate edges are visited in random
/// order and each is rejected if it would push an endpoint past degree 3.
/// `k` is the vertex cover number, so the instance is a yes-instance.
pub fn gen_random_vc3(n: usize, seed: u64) -> Result<VcInstance, HarnessError> {
    cap("vertices", n, MAX_ORACLE_VERTICES)?;
    let mut rng = rng(seed);
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if degree[u] < 3 && degree[v] < 3 && rng.gen_bool(0.5) {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    let k = min_vertex_cover(&graph).len();
    Ok(VcInstance { graph, k, max_degree_3: true })
}

/// `n` non-zero vectors of dimension `k` with entries in `0..=max_entry`,
/// every coordinate having a positive column sum. A random subset of size
/// `k'` is fixed and the target is its sum minus random slack, so the
/// instance is a yes-instance.
pub fn gen_random_mrss(k: usize, n: usize, max_entry: u64, seed: u64) -> Result<MrssInstance, HarnessError> {
    cap("dimension", k, MAX_DIMENSION)?;
    cap("vectors", n, MAX_VECTORS)?;
    cap("max entry", max_entry as usize, MAX_ENTRY as usize)?;
    if n == 0 || k == 0 || max_entry == 0 {
        return Err(HarnessError::Invalid("need a vector, a coordinate and a positive max entry".into()));
    }
    let mut rng = rng(seed);
    let mut vectors: Vec<Vec<u64>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..=max_entry)).collect()).collect();
    for v in &mut vectors {
        if v.iter().all(|&x| x == 0) {
            v[rng.gen_range(0..k)] = rng.gen_range(1..=max_entry);
        }
    }
    for j in 0..k {
        if vectors.iter().all(|v| v[j] == 0) {
            let i = rng.gen_range(0..n);
            vectors[i][j] = rng.gen_range(1..=max_entry);
        }
    }
    let kprime = rng.gen_range(1..=n);
    let chosen = rand::seq::index::sample(&mut rng, n, kprime).into_vec();
    let target = (0..k)
        .map(|j| {
            let sum: u64 = chosen.iter().map(|&i| vectors[i][j]).sum();
            rng.gen_range(0..=sum)
        })
        .collect();
    Ok(MrssInstance::new(kprime, vectors, target))
}

/// `sets` thin sets over a `k x k` grid, each meeting a hidden permutation.
pub fn gen_random_phs(k: usize, sets: usize, seed: u64) -> Result<PhsInstance, HarnessError> {
    cap("grid side", k, MAX_GRID_SIDE)?;
    cap("family size", sets, MAX_FAMILY)?;
    if k == 0 {
        return Err(HarnessError::Invalid("grid side must be positive".into()));
    }
    let mut rng = rng(seed);
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(&mut rng);
    let family = (0..sets)
        .map(|_| {
            let hit = rng.gen_range(0..k);
            let mut set: Vec<(usize, usize)> = (0..k)
                .filter_map(|i| {
                    if i == hit {
                        Some((i, perm[i]))
                    } else if rng.gen_bool(0.3) {
                        Some((i, rng.gen_range(0..k)))
                    } else {
                        None
                    }
                })
                .collect();
            set.shuffle(&mut rng);
            set
        })
        .collect();
    Ok(PhsInstance { k, family })
}

/// `k` binary strings of length `n`, each within distance `d` of a hidden
/// centre.
pub fn gen_random_strings(k: usize, n: usize, d: usize, seed: u64) -> Result<ClosestStringInstance, HarnessError> {
    cap("strings", k, MAX_STRINGS)?;
    cap("string length", n, MAX_STRING_LENGTH)?;
    if k == 0 {
        return Err(HarnessError::Invalid("need at least one string".into()));
    }
    let mut rng = rng(seed);
    let centre: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let strings = (0..k)
        .map(|_| {
            let flips = rng.gen_range(0..=d.min(n));
            let at = rand::seq::index::sample(&mut rng, n, flips).into_vec();
            let mut s = centre.clone();
            for i in at {
                s[i] = !s[i];
            }
            s.iter().map(|&b| if b { '1' } else { '0' }).collect()
        })
        .collect();
    Ok(ClosestStringInstance { strings, d })
}

fn domination_number(g: &Graph) -> Result<usize, HarnessError> {
    let found = oracle_dominating_set(g, g.order())?;
    Ok(found.map_or(g.order(), |d| d.len()))
}

/// Chord `i` joins endpoints `2i` and `2i + 3 (mod 2n)`, giving the cycle
/// `C_n`; `k` is its domination number `ceil(n / 3)`.
pub fn gen_cycle_diagram(n: usize) -> Result<CircleDsInstance, HarnessError> {
    cap("chords", n, MAX_ORACLE_VERTICES)?;
    if n < 3 {
        return Err(HarnessError::Invalid("a cycle needs at least 3 chords".into()));
    }
    let mut endpoints = vec![0; 2 * n];
    for i in 0..n {
        endpoints[2 * i] = i;
        endpoints[(2 * i + 3) % (2 * n)] = i;
    }
    Ok(CircleDsInstance { diagram: ChordDiagram::new(endpoints)?, k: n.div_ceil(3) })
}

/// Random chord diagram whose circle graph has minimum degree 2, by
/// rejection; `k` is the domination number.
pub fn gen_random_circle(n: usize, seed: u64) -> Result<CircleDsInstance, HarnessError> {
    cap("chords", n, MAX_ORACLE_VERTICES)?;
    if n < 3 {
        return Err(HarnessError::Invalid("minimum degree 2 needs at least 3 chords".into()));
    }
    let mut rng = rng(seed);
    let mut endpoints: Vec<usize> = (0..n).flat_map(|i| [i, i]).collect();
    for _ in 0..REJECTION_ROUNDS {
        endpoints.shuffle(&mut rng);
        let diagram = ChordDiagram::new(endpoints.clone())?;
        let g = chord_diagram_to_graph(&diagram);
        if (0..n).all(|v| g.degree(v) >= 2) {
            return Ok(CircleDsInstance { k: domination_number(&g)?, diagram });
        }
    }
    Err(HarnessError::Rejection("circle diagram of minimum degree 2"))
}

/// The `w x h` grid graph; `k` is the domination number when the grid fits
/// the oracle, otherwise the size of a greedy dominating set.
pub fn gen_grid(w: usize, h: usize) -> Result<DsInstance, HarnessError> {
    cap("grid width", w, MAX_GRID_SIDE)?;
    cap("grid height", h, MAX_GRID_SIDE)?;
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    let graph = Graph::from_edges(w * h, &edges)?;
    let k = if graph.order() <= MAX_ORACLE_VERTICES {
        domination_number(&graph)?
    } else {
        greedy_dominating_set(&graph).len()
    };
    Ok(DsInstance { graph, k })
}

/// Random connected graph with `k` set to its domination number.
pub fn gen_random_ds(n: usize, p: f64, seed: u64) -> Result<DsInstance, HarnessError> {
    cap("vertices", n, MAX_ORACLE_VERTICES)?;
    let graph = gen_connected_graph(n, p, seed)?;
    Ok(DsInstance { k: domination_number(&graph)?, graph })
}

fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut covered = vec![false; n];
    let mut d = VertexSet::new();
    while covered.iter().any(|&c| !c) {
        let gain = |v: Vertex| g.neighbors(v).chain([v]).filter(|&w| !covered[w]).count();
        let best = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).unwrap();
        for w in g.neighbors(best).chain([best]) {
            covered[w] = true;
        }
        d.insert(best);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{is_dominating_set, oracle_closest_string, oracle_mrss, oracle_phs};

    #[test]
    fn cycle_diagram_is_cycle() {
        for n in 3..9 {
            let inst = gen_cycle_diagram(n).unwrap();
            assert_eq!(inst.graph(), Graph::cycle(n));
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_random_graph(10, 0.3, 7).unwrap(), gen_random_graph(10, 0.3, 7).unwrap());
        assert_eq!(gen_random_mrss(2, 3, 2, 7).unwrap(), gen_random_mrss(2, 3, 2, 7).unwrap());
        assert_eq!(gen_random_circle(5, 7).unwrap(), gen_random_circle(5, 7).unwrap());
    }

    #[test]
    fn generated_sources_are_yes_instances() {
        for seed in 0..30 {
            let vc = gen_random_vc3(6, seed).unwrap();
            assert!(vc.graph.order() == 0 || vc.graph.max_degree().unwrap() <= 3);
            let m = gen_random_mrss(2, 3, 2, seed).unwrap();
            assert!(m.validate().is_ok());
            assert!(oracle_mrss(&m).unwrap().is_some());
            assert!((0..2).all(|j| m.column_sum(j) >= 1));
            let p = gen_random_phs(3, 3, seed).unwrap();
            assert!(p.validate().is_ok());
            assert!(oracle_phs(&p).unwrap().is_some());
            let s = gen_random_strings(3, 5, 2, seed).unwrap();
            assert!(oracle_closest_string(&s).unwrap().is_some());
            let c = gen_random_circle(5, seed).unwrap();
            assert!(c.validate().is_ok());
        }
    }

    #[test]
    fn grid_domination() {
        let g = gen_grid(3, 3).unwrap();
        assert_eq!(g.k, 3);
        let big = gen_grid(9, 9).unwrap();
        assert!(is_dominating_set(&big.graph, &greedy_dominating_set(&big.graph)));
        assert!(gen_grid(10, 2).is_err());
    }
}
