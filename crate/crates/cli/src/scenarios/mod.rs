pub mod closed_dynamics;
pub mod open_dynamics;
pub mod optics;
pub mod photon_stats;
pub mod states;
