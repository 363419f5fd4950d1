use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, GraphError};

/// Circle representation of a circle graph: the chord identifiers met while
/// walking once around the circle. Every chord `0..c` occurs exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct ChordDiagram {
    endpoints: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    endpoints: Vec<usize>,
}

impl TryFrom<RawDiagram> for ChordDiagram {
    type Error = GraphError;

    fn try_from(raw: RawDiagram) -> Result<Self, GraphError> {
        Self::new(raw.endpoints)
    }
}

impl From<ChordDiagram> for RawDiagram {
    fn from(cd: ChordDiagram) -> Self {
        RawDiagram { endpoints: cd.endpoints }
    }
}

impl ChordDiagram {
    pub fn new(endpoints: Vec<usize>) -> Result<Self, GraphError> {
        let chords = endpoints.len() / 2;
        let mut count = vec![0usize; chords];
        for &id in &endpoints {
            if id >= chords {
                return Err(GraphError::MalformedDiagram { chord: id, count: 1 });
            }
            count[id] += 1;
        }
        if let Some((chord, &count)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(GraphError::MalformedDiagram { chord, count });
        }
        if endpoints.len() % 2 == 1 {
            return Err(GraphError::MalformedDiagram { chord: chords, count: 1 });
        }
        Ok(Self { endpoints })
    }

    pub fn endpoints(&self) -> &[usize] {
        &self.endpoints
    }

    pub fn chord_count(&self) -> usize {
        self.endpoints.len() / 2
    }

    /// Positions `(first, second)` of each chord along the sequence.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.chord_count()];
        for (i, &id) in self.endpoints.iter().enumerate() {
            if pos[id].0 == usize::MAX {
                pos[id].0 = i;
            } else {
                pos[id].1 = i;
            }
        }
        pos
    }
}

/// Intersection graph of the chords: two chords are adjacent iff their
/// endpoints interleave around the circle.
pub fn chord_diagram_to_graph(cd: &ChordDiagram) -> Graph {
    let pos = cd.positions();
    let mut b = GraphBuilder::with_vertices(pos.len());
    // Sweep: a chord opened at p1 crosses exactly the chords opened after p1
    // that are still open when it closes.
    let mut open: Vec<usize> = Vec::new();
    for (i, &id) in cd.endpoints.iter().enumerate() {
        if pos[id].0 == i {
            open.push(id);
        } else {
            let at = open.iter().position(|&c| c == id).expect("chord opened before closing");
            for &other in &open[at + 1..] {
                b.add_edge(id, other);
            }
            open.remove(at);
        }
    }
    b.build()
}
