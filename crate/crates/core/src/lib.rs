//! Normal trees in finite graphs.
//!
//! A rooted tree `T` in a graph `G` is *normal* when the two ends of every
//! `T`-path are comparable in the tree order. This crate provides the tree
//! order and a normality checker ([`tree`]), Menger connectivity
//! ([`connectivity`]), a family of normal-tree constructions ([`nst`]),
//! finite fat-TK certificates ([`fat_tk`]), and truncations of infinite
//! graphs given by a neighbour rule ([`generator`]).

pub mod connectivity;
pub mod error;
pub mod fat_tk;
mod flow;
pub mod generator;
pub mod graph;
pub mod io;
pub mod nst;
pub mod tree;

pub use connectivity::{kappa, max_independent_paths, min_separator, Path, PathFamily, Separator};
pub use error::{Error, Result};
pub use fat_tk::{find_fat_tk, is_dispersed, kappa_necessary_check, verify_fat_tk, FatTkCertificate};
pub use generator::{truncate, GraphGenerator};
pub use graph::{components, induced_subgraph, neighborhood, Graph, Vertex, VertexSet};
pub use nst::{
    attach, dfs_nst, extend_into_component, jung_subtree, levels_of, local_normal_tree, nst_from_dispersed_cover,
    omega_nst, DispersedCover, RunTrace, Termination,
};
pub use tree::{down_closure, is_chain, is_normal, separates_incomparable, tree_leq, NormalityReport, RootedTree};
