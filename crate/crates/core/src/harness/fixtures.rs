//! Small hand-written instances used as regression fixtures.

use crate::graph::ChordDiagram;
use crate::source::{CircleDsInstance, ClosestStringInstance, MrssInstance, PhsInstance};

/// Three 2-dimensional vectors (2,1), (1,1), (1,2), target (3,3), at most
/// two vectors. Witness: the first and third vector.
pub fn mrss_small() -> MrssInstance {
    MrssInstance::new(2, vec![vec![2, 1], vec![1, 1], vec![1, 2]], vec![3, 3])
}

/// Three thin sets over a 5 x 5 grid (0-based cells).
pub fn phs_small() -> PhsInstance {
    let one_based: [&[(usize, usize)]; 3] = [
        &[(1, 1), (2, 1), (4, 4), (5, 3)],
        &[(1, 4), (3, 4), (5, 1)],
        &[(1, 1), (2, 5), (3, 2), (5, 5)],
    ];
    PhsInstance {
        k: 5,
        family: one_based
            .iter()
            .map(|set| set.iter().map(|&(i, j)| (i - 1, j - 1)).collect())
            .collect(),
    }
}

/// Three strings of length 7 with `d = 3`; `1000000` is a central string.
pub fn closest_string_small() -> ClosestStringInstance {
    ClosestStringInstance {
        strings: ["1011100", "1101010", "1110001"].map(String::from).to_vec(),
        d: 3,
    }
}

pub const CLOSEST_STRING_CENTRE: &str = "1000000";

/// Diagram `a b d c a d b c` (a=0, b=1, c=2, d=3): chord `a` crosses all
/// others, `c` crosses all others, so the graph has 5 edges and `{a}`
/// dominates it.
pub fn circle_small() -> CircleDsInstance {
    CircleDsInstance { diagram: ChordDiagram::new(vec![0, 1, 3, 2, 0, 3, 1, 2]).unwrap(), k: 1 }
}
