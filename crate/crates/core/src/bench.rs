//! Timing of the length-only solver over generated instances.

use std::time::{Duration, Instant};

use crate::automaton::{normalize, ExclusionAutomaton};
use crate::error::Result;
use crate::gen::Instance;
use crate::solver::solve_length_rolling;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    /// Total length of the constraints after normalization.
    pub r: usize,
    pub s: usize,
    /// Median over the repeats. Excludes automaton construction.
    pub elapsed: Duration,
}

impl BenchRow {
    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

/// Runs the rolling solver `repeats` times (at least once) and keeps the
/// median wall time.
pub fn time_instance(inst: &Instance, repeats: usize) -> Result<BenchRow> {
    let cs = normalize(&inst.patterns)?;
    let automaton = ExclusionAutomaton::new(&cs);
    let mut times = Vec::with_capacity(repeats.max(1));
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        std::hint::black_box(solve_length_rolling(&inst.x, &inst.y, &automaton)?);
        times.push(start.elapsed());
    }
    times.sort_unstable();
    Ok(BenchRow {
        n: inst.x.len(),
        m: inst.y.len(),
        r: cs.r(),
        s: automaton.s(),
        elapsed: times[times.len() / 2],
    })
}
