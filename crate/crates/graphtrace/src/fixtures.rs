//! Ready-made worked-example instances, one per task.
//!
//! These small instances are exercised throughout the test suite and the
//! runnable examples; each parses from its canonical instance text.

use crate::graph::{parse_instance_text, TaskInstance, TaskKind};

pub const CONNECTED_TEXT: &str = "The graph has 7 nodes. The nodes are numbered from 0 to 6, and the edges are: [(0, 3), (2, 6), (3, 4), (4, 6)].";

pub const DISTANCE_TEXT: &str = "The graph has 9 nodes. The nodes are numbered from 0 to 8, and the edges are: [(0, 7), (0, 8), (1, 3), (1, 8), (2, 6), (3, 6), (4, 8), (6, 7), (7, 8)]. The source node is 4, and the target node is 3.";

pub const NEIGHBOR_TEXT: &str = "The graph has 10 nodes. The nodes are numbered from 0 to 9, and the edges are: [(0, 1), (0, 3), (0, 5), (0, 7), (0, 8), (1, 3), (1, 6), (1, 7), (1, 8), (1, 9), (2, 3), (2, 4), (2, 7), (2, 8), (2, 9), (3, 5), (3, 6), (3, 7), (3, 9), (4, 7), (4, 9), (5, 6), (5, 8), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9)]. The given nodes are [7, 3].";

pub const MVC_TEXT: &str = "The graph has 10 nodes. The nodes are numbered from 0 to 9, and the edges are: [(1, 5), (1, 6), (2, 7)].";

pub const MIS_TEXT: &str = "The graph has 8 nodes. The nodes are numbered from 0 to 7, and the edges are: [(3, 4), (5, 6)].";

pub const DIAMETER_TEXT: &str = "The graph has 10 nodes. The nodes are numbered from 0 to 9, and the edges are: [(0, 1), (0, 9), (1, 3), (2, 3), (3, 4), (3, 6), (4, 6), (5, 9), (6, 8), (7, 8)].";

pub const MCP_TEXT: &str = "The graph has 9 nodes. The nodes are numbered from 0 to 8, and the edges are: [(2, 8), (3, 6), (4, 5), (5, 7)].";

pub const TSP_TEXT: &str = "The graph has 7 nodes. The nodes are numbered from 0 to 6, and the edges are: [(0, 1, 8309), (0, 2, 3986), (0, 3, 2254), (0, 4, 1983), (0, 5, 396), (0, 6, 2655), (1, 2, 1416), (1, 3, 9346), (1, 4, 3061), (1, 5, 3220), (1, 6, 7309), (2, 3, 8945), (2, 4, 6117), (2, 5, 9132), (2, 6, 4310), (3, 4, 7830), (3, 5, 1095), (3, 6, 3040), (4, 5, 9538), (4, 6, 6771), (5, 6, 1899)].";

pub const MCS_TEXT: &str = "The graph G has 5 nodes, the nodes are numbered from 0 to 4, and the edges are: [(0, 4), (1, 2), (1, 3), (1, 4), (3, 4)]. The graph H has 5 nodes, the nodes are numbered from 0 to 4, and the edges are: [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 4)].";

pub const GED_TEXT: &str = "The graph G has 5 nodes, the nodes are: [(0, 'Si'), (1, 'O'), (2, 'Si'), (3, 'Na'), (4, 'S')], and the edges are: [(0, 2), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)]. The graph H has 5 nodes, the nodes are: [(0, 'C'), (1, 'Na'), (2, 'N'), (3, 'Mg'), (4, 'N')], and the edges are: [(0, 1), (0, 2), (0, 3), (1, 3), (1, 4), (2, 3), (2, 4)].";

pub fn example_text(kind: TaskKind) -> &'static str {
    match kind {
        TaskKind::Neighbor => NEIGHBOR_TEXT,
        TaskKind::Distance => DISTANCE_TEXT,
        TaskKind::Connected => CONNECTED_TEXT,
        TaskKind::Diameter => DIAMETER_TEXT,
        TaskKind::Mcp => MCP_TEXT,
        TaskKind::Mis => MIS_TEXT,
        TaskKind::Mvc => MVC_TEXT,
        TaskKind::Mcs => MCS_TEXT,
        TaskKind::Ged => GED_TEXT,
        TaskKind::Tsp => TSP_TEXT,
    }
}

/// Parses the worked example for a task.
pub fn example_instance(kind: TaskKind) -> TaskInstance {
    parse_instance_text(example_text(kind), kind).expect("fixture text parses")
}
