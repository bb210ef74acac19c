//! Braid closures as link diagrams, their invariants c, w, m, the Kauffman
//! bracket and the Jones polynomial at a fifth root of unity.

pub mod bracket;
pub mod diagram;
pub mod invariants;
pub mod moves;

pub use bracket::{jones_at, kauffman_bracket, state_histogram, StateHistogram};
pub use diagram::{
    insert_measurement_loop, plat_closure, plat_conjugate, DiagramJson, Level, LinkDiagram,
    LoopMarker, Over,
};
pub use invariants::{count_components, count_minima, link_stats, writhe, LinkStats, Orientation};
pub use moves::{reidemeister_one, reidemeister_three, reidemeister_three_sites, reidemeister_two};
