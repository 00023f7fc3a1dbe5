//! Simulation and analysis of quantum autonomous Boolean networks, where
//! classical Boolean functions act as reversible bit oracles and a fixed
//! wiring routes outputs back to inputs every step, alongside a classical
//! synchronous Boolean network engine for comparison.
//!
//! ```
//! use qabn::analysis::detect_state_cycle_orbit;
//! use qabn::network::{build_step_operator, initial_state, NetworkSpec};
//!
//! let spec = NetworkSpec::parse("OR", &[0, 1, 2], "(11,0)").unwrap();
//! let w = build_step_operator(&spec).unwrap();
//! let report = detect_state_cycle_orbit(&w, &initial_state(&spec).unwrap()).unwrap();
//! assert_eq!(report.state_period, 2u32.into());
//! ```

pub mod analysis;
pub mod boolean;
pub mod classical;
pub mod error;
pub mod network;
pub mod oracle;
pub mod perm;
pub mod presets;
pub mod specfile;

pub use error::{QabnError, Result};
