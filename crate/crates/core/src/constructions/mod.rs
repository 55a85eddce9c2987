//! Constructions on cubic graphs: association with eulerian graphs,
//! crossing replacement and the star construction.

mod associate;
mod replace;
mod star;

pub(crate) use associate::associate_trail;
pub use associate::{associate, trail_from_transitions, transitions_from_trail, Association};

pub use replace::{extend_cdc, replace_crossing, CrossingReplacementRecord, Replacement};
pub use star::{
    injectivity_experiment, star_construction, star_construction_on, star_construction_with, suppress_blocks, InjectivityReport, InstanceCensus,
    StarConstruction,
};
