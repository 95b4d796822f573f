//! Augmented k-ary n-cube construction and fault-tolerant strong Menger
//! connectivity verification.
//!
//! The library builds the cube family, injects vertex and edge faults,
//! counts disjoint paths by unit-capacity max-flow, analyzes surviving
//! components, constructs the sharpness witnesses, and drives reproducible
//! verification campaigns over enumerated or sampled fault spaces. The
//! `aqmenger` binary exposes the same campaigns on the command line.

#![forbid(unsafe_code)]

pub mod campaign;
pub mod components;
pub mod error;
pub mod faults;
pub mod menger;
pub mod topology;

pub use campaign::{
    run_campaign, CampaignConfig, CampaignMode, CampaignReport, Target,
};
pub use components::{
    check_component_premise, check_large_component_edge, check_large_component_vertex,
    check_two_component_shape, components_after_faults, open_neighborhood, ComponentReport,
    EdgeFaultTier, PremiseReport, ShapeVerdict, SmallerShape,
};
pub use error::{Error, Result};
pub use faults::{
    conditional_edge_fault_set, conditional_triangle_witness, count_subsets, edge_star_witness,
    enumerate_fault_sets, random_fault_set, vertex_cut_witness, WitnessCase, WitnessKind,
};
pub use menger::{
    disjoint_path_count, is_strongly_menger, max_edge_disjoint_paths, max_vertex_disjoint_paths,
    min_cut, surviving_degree, CutSet, DisjointMode, FaultSet, FaultVariant, MengerVerdict,
    PairWitness, PathBundle,
};
pub use topology::{
    make_graph, AqGraph, AqParams, EdgeId, EdgeKind, Sign, Vertex, VertexId,
};
