use std::time::{Duration, Instant};

use rcplan_core::search::Clock;

/// Wall clock started at construction.
#[derive(Debug, Clone, Copy)]
pub struct StdClock(Instant);

impl StdClock {
    pub fn start() -> StdClock {
        StdClock(Instant::now())
    }
}

impl Clock for StdClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}
