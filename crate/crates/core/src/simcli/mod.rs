//! Scenario engines, JSON report types and the command-line front end.

pub mod cli;
pub mod io;
pub mod scenario;

pub use scenario::{
    boosted_probabilities, boosted_probabilities_direct, outcomes, report_invariants,
    scenario1_sample, ElementInvariants, InvariantReport, ObserverBoost, OutcomeTally, RngSeed,
    ScenarioOutcome, SimulationReport,
};
