//! Batch front end: run configurations, dispatch and CSV output.
//!
//! A configuration is a flat TOML document, for example
//!
//! ```toml
//! mode = "spectrum"
//! xi1 = 0.1
//! omega_a1 = 0.01
//! omega_b1 = 0.01
//! omega_a2 = 0.01
//! omega_b2 = 0.01
//! L = 2
//! omega_min = 0.005
//! omega_max = 0.015
//! omega_count = 1001
//! adaptive = true
//! ```
//!
//! Unset keys take the defaults `omega_c = 0`, `xi0 = 1`, `eta = 1e-6`,
//! `delta = 0`, `breaking = "none"`. Unknown keys are rejected.

mod config;
mod run;

pub use config::{
    parse_config, parse_config_for_mode, DynamicsSpec, GridSpec, InitialState, Mode, RunConfig,
};
pub use run::{format_number, output_path, run, run_direction, BAND_EDGE_TOKEN};
