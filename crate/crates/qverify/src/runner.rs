//! Evaluate identities and produce reports, optionally in parallel.

use std::time::Instant;

use qseries::{exp, EqOutcome};

use crate::eval::eval_series;
use crate::parser::exp_to_string;
use crate::registry::Identity;
use crate::report::{Mismatch, Report, Status};

/// Verify one identity at `order` (falling back to the identity's own order).
///
/// Never panics on math errors: evaluation failures become `Status::Error`
/// with a human-readable detail line.
pub fn run_one(id: &Identity, order_override: Option<i64>) -> Report {
    let order = order_override.unwrap_or(id.order);
    let started = Instant::now();
    let outcome = check(id, order);
    let ms = started.elapsed().as_millis() as u64;
    match outcome {
        Ok(EqOutcome::Equal) => Report {
            identity: id.name.clone(),
            order,
            status: Status::Ok,
            first_mismatch: None,
            ms,
            detail: None,
        },
        Ok(EqOutcome::MismatchAt { exp, lhs, rhs }) => Report {
            identity: id.name.clone(),
            order,
            status: Status::Fail,
            first_mismatch: Some(Mismatch {
                exponent: exp_to_string(exp),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
            ms,
            detail: None,
        },
        Err(e) => Report {
            identity: id.name.clone(),
            order,
            status: Status::Error,
            first_mismatch: None,
            ms,
            detail: Some(e.to_string()),
        },
    }
}

fn check(id: &Identity, order: i64) -> qseries::Result<EqOutcome> {
    let lhs = eval_series(&id.lhs, exp(order))?;
    let rhs = eval_series(&id.rhs, exp(order))?;
    lhs.eq_up_to(&rhs, exp(order))
}

/// Verify a batch of identities on `jobs` worker threads.
///
/// Reports come back sorted by identity name, so the output is deterministic
/// regardless of the thread count.
pub fn run_all(ids: &[&Identity], order_override: Option<i64>, jobs: usize) -> Vec<Report> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("failed to build worker thread pool");
    let mut reports: Vec<Report> = pool.install(|| {
        ids.par_iter()
            .map(|id| run_one(id, order_override))
            .collect()
    });
    reports.sort_by(|a, b| a.identity.cmp(&b.identity));
    reports
}
