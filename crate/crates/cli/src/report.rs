//! Golden-check results and their one-line summaries.

use std::fmt;

/// Outcome of one golden-value check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Human-readable measured value / deviation / tolerance.
    pub detail: String,
}

impl CheckResult {
    /// Absolute-deviation check: |measured − expected| ≤ tol.
    pub fn deviation(name: &'static str, measured: f64, expected: f64, tol: f64) -> Self {
        let dev = (measured - expected).abs();
        CheckResult {
            name,
            passed: dev <= tol,
            detail: format!("measured {measured:.10}, expected {expected}, |dev| = {dev:.3e} (tol {tol:.1e})"),
        }
    }

    /// Bound check: measured ≤ bound.
    pub fn at_most(name: &'static str, measured: f64, bound: f64) -> Self {
        CheckResult {
            name,
            passed: measured <= bound,
            detail: format!("measured {measured:.3e} (must be <= {bound:.3e})"),
        }
    }

    /// Bound check: measured ≥ bound.
    pub fn at_least(name: &'static str, measured: f64, bound: f64) -> Self {
        CheckResult {
            name,
            passed: measured >= bound,
            detail: format!("measured {measured:.10} (must be >= {bound})"),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}
