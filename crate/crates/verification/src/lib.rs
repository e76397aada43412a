//! A small runner that executes named criteria, times them and prints one
//! PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Default)]
pub struct Runner {
    results: Vec<(u32, String, bool)>,
}

impl Runner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs one criterion. A panic counts as a failure, and so does
    /// exceeding `limit`.
    pub fn run(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(v) => v,
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Verdict::new(false, format!("panicked: {msg}"))
            }
        };
        let in_time = elapsed <= limit;
        let passed = verdict.passed && in_time;
        println!(
            "{} #{id:<2} {name} ({:.1} s of {} s): {}{}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            verdict.detail,
            if in_time { "" } else { " [time limit exceeded]" },
        );
        self.results.push((id, name.to_string(), passed));
    }

    pub fn failed(&self) -> Vec<u32> {
        self.results.iter().filter(|r| !r.2).map(|r| r.0).collect()
    }

    /// Prints the tally and returns the process exit status.
    pub fn finish(&self) -> i32 {
        let failed = self.failed();
        println!(
            "acceptance: {} passed, {} failed{}",
            self.results.len() - failed.len(),
            failed.len(),
            if failed.is_empty() { String::new() } else { format!(" ({failed:?})") }
        );
        i32::from(!failed.is_empty())
    }
}
