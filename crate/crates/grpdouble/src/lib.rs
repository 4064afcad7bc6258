//! Command-line companion to `grpdouble-core`: group and set parsing from
//! text specs, Cayley tables from JSON files, deterministic RNG, report
//! formats, and the multi-threaded survey engine.

pub mod analyze;
pub mod groupio;
pub mod report;
pub mod rng;
pub mod setspec;
pub mod survey;

pub use groupio::resolve_group;
pub use report::{render_table, Document, Section};
pub use rng::SplitMix64;
pub use setspec::parse_set_spec;
pub use survey::{parse_checks, run_survey, Check, SubsetMode, Survey, SurveyConfig, SurveyRow};
