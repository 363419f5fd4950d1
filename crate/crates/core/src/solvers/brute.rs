use super::{size_window, FastChecker, Meter, SearchBudget, SolveOutcome};
use crate::alliance::AllianceInstance;
use crate::graph::Vertex;

/// Exhaustive search: subsets of `V - V_box` containing `V_tri`, by
/// nondecreasing size and lexicographically within a size. Returns the first
/// alliance met, which is the lexicographically least of minimum size.
pub fn solve_bruteforce(inst: &AllianceInstance, budget: &SearchBudget) -> SolveOutcome {
    let (lo, hi) = match size_window(inst) {
        Ok(w) => w,
        Err(outcome) => return outcome,
    };
    let pool: Vec<Vertex> = (0..inst.graph.order())
        .filter(|v| !inst.forbidden.contains(v) && !inst.necessary.contains(v))
        .collect();
    let fixed: Vec<Vertex> = inst.necessary.iter().copied().collect();
    let t = fixed.len();
    let mut checker = FastChecker::new(&inst.graph, inst.strength);
    let mut meter = Meter::new(budget);
    let mut set = fixed.clone();
    for size in lo..=hi {
        let extra = size - t;
        if extra > pool.len() {
            break;
        }
        let mut idx: Vec<usize> = (0..extra).collect();
        loop {
            if !meter.tick() {
                return meter.exhausted();
            }
            set.truncate(t);
            set.extend(idx.iter().map(|&i| pool[i]));
            if checker.is_alliance(&set) {
                return SolveOutcome::found(set.iter().copied().collect());
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    SolveOutcome::NoneWithinBound
}

/// Advances `idx` (strictly increasing indices into `0..n`) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
