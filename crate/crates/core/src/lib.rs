//! Exact k-degree shortest-path queries on unweighted scale-free graphs.
//!
//! High-degree hubs make plain breadth-first search explode. This crate
//! keeps them in check two ways: a distance-preserving hub-network that hub
//! vertices are confined to during bidirectional search, and a Hub²-labeling
//! index (hub-pair distance matrix plus per-vertex core-hub labels) whose
//! estimate bounds a bidirectional search that never expands a hub.
//!
//! ```
//! use hubpath::{build, hl_query, select_hubs, Graph};
//!
//! let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)], false);
//! let hubs = select_hubs(&g, 1);
//! let idx = build(&g, &hubs, 6).unwrap();
//! let r = hl_query(&g, &idx, 1, 2).unwrap();
//! assert_eq!(r.distance, Some(2));
//! ```

pub mod graph;
pub mod hubnet;
pub mod hubs;
pub mod index;
pub mod query;
pub mod synth;
pub mod workload;

pub use graph::{load_edge_list, validate_path, Graph, GraphError, Path, VertexId};
pub use hubnet::{discover, network_stats, verify_distance_preserving, HubNetwork};
pub use hubs::{default_hub_count, select_hubs, HubSet};
pub use index::{build, deserialize, index_stats, serialize, Hub2Index, IndexError};
pub use query::{
    bfs_query, bibfs_query, estimate, estimate_full_join, hl_query, hn_query, hp_bbfs, Engine, QueryResult,
    Searcher,
};
