//! Shared inputs for the benchmarks.

use vdemask_core::scenario::GridSpec;
use vdemask_core::Scenario;

/// Default scenario evaluated on a grid of `step` degrees.
pub fn scenario_with_step(step: f64) -> Scenario {
    Scenario {
        grid: GridSpec {
            start: 0.0,
            end: 90.0,
            step,
        },
        ..Scenario::default()
    }
}
