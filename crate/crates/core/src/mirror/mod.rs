//! Birkhoff factorization, mirror maps and Gromov-Witten readout.

pub mod birkhoff;
pub mod maps;
pub mod pipeline;
pub mod polylog;

pub use birkhoff::{birkhoff, no_positive_hbar, Birkhoff};
pub use maps::{extract_mirror_maps, extract_w, jacobian, normalize_j, restrict_w, MirrorData, Monomial};
pub use pipeline::{default_window, gw_table, read_table, run_pipeline, PipelineRun};
pub use polylog::{polylog_invert, polylog_sum, GWTable};
