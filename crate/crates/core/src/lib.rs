//! Preference fusion with belief functions and Condorcet cycle avoidance.
//!
//! Agents give four belief degrees per alternative pair, one per relation
//! (strict preference, inverse preference, indifference, incomparability).
//! [`fusion`] turns those into one mass function per pair and decides a
//! collective relation by pignistic probability. The decided relations form
//! a directed graph which may contain Condorcet cycles; [`graph`] removes
//! them by demoting the relations closest to incomparability, either with
//! a repeated strongly-connected-component sweep or with an incremental
//! reachability-gated builder.
//!
//! ```
//! use prefuse::fusion::{fuse_profile, Strategy};
//! use prefuse::graph::{build_graph, check_dag2, naive_dag2};
//! use prefuse::io::{parse_profile, FIVE_ALTERNATIVES};
//!
//! let profile = parse_profile(FIVE_ALTERNATIVES).unwrap();
//! let fused = fuse_profile(&profile, Strategy::A).unwrap();
//! let graph = build_graph(&fused).unwrap();
//! assert!(!check_dag2(&graph).is_valid());
//!
//! let resolved = naive_dag2(&graph);
//! assert!(check_dag2(&resolved).is_valid());
//! assert_eq!(resolved.demoted().len(), 1);
//! ```

pub mod bench;
pub mod evidence;
pub mod fusion;
pub mod graph;
pub mod io;
pub mod synth;
