//! Ensemble braces built from click streams, and the frequency/phase
//! statistics extracted from them.

pub mod brace;
pub mod clicks;
pub mod mixture;
pub mod stats;

pub use brace::{EnsembleBrace, Primitive, UnitaryBrace};
pub use clicks::{
    ingest_clicks, read_jsonl, simulate_brace_parallel, simulate_clicks, simulate_clicks_on,
    write_jsonl, ClickRecord, OutcomeSampler, SimulationSpec,
};
pub use mixture::{check_weights, mix_braces, BraceComponent, BraceMixture};
pub use stats::{convex_mix, BraceStatistics, Distribution, KappaSigmaPair};
