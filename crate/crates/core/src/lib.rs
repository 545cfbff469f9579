//! Simulation and verification kit for the heptagrid mantilla construction,
//! the abstract brackets, interwoven triangles and the antenna signal.

pub mod heptagrid;
pub mod wangkit;
pub mod brackets;
pub mod mantilla;
pub mod isocline;
pub mod trilateral;
pub mod antenna;
pub mod computing;
pub mod suites;
