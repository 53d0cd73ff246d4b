use std::time::Instant;

use rayon::prelude::*;
use serde_json::Value;

use super::registry::{lookup, Entry, Res, Scope};
use super::{CheckOptions, CheckReport, Status, SweepReport};
use crate::arith::primes_in;
use crate::error::{Error, Result};

fn status(entry: &Entry, res: &Res) -> Status {
    match (res, entry.proven) {
        (Res::Skip, _) => Status::Skipped,
        (Res::Cmp { ok: true, .. }, true) => Status::Pass,
        (Res::Cmp { ok: false, .. }, true) => Status::Fail,
        (Res::Cmp { ok: true, .. }, false) => Status::ReportOnlyPass,
        (Res::Cmp { ok: false, .. }, false) => Status::ReportOnlyFail,
        (Res::Err(_), true) => Status::Error,
        (Res::Err(_), false) => Status::ReportOnlyFail,
    }
}

fn reports_for(entry: &Entry, q: Option<u64>, opts: &CheckOptions, timings: bool) -> Result<Vec<CheckReport>> {
    let start = Instant::now();
    let outcomes = entry.outcomes(q, opts)?;
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    let q = if entry.scope == Scope::Independent { None } else { q };
    Ok(outcomes
        .into_iter()
        .map(|o| {
            let (guard, guard_ok) = o.guard.clone().unwrap_or_else(|| (entry.guard.to_string(), true));
            let status = status(entry, &o.res);
            let (lhs, rhs) = match o.res {
                Res::Cmp { lhs, rhs, .. } => (lhs, rhs),
                Res::Skip => (Value::Null, Value::Null),
                Res::Err(msg) => (serde_json::json!({ "error": msg }), Value::Null),
            };
            CheckReport {
                check: entry.id.to_string(),
                variant: o.variant,
                q,
                guard,
                guard_ok,
                modulus: o.modulus.unwrap_or_else(|| entry.modulus.to_string()),
                status,
                lhs,
                rhs,
                millis,
            }
        })
        .collect())
}

/// One check at one field size (ignored for prime-independent checks).
pub fn run_check(id: &str, q: Option<u64>, opts: &CheckOptions) -> Result<Vec<CheckReport>> {
    reports_for(lookup(id)?, q, opts, false)
}

/// Every id at every odd prime in [lo, hi].
pub fn sweep(
    ids: &[String],
    lo: u64,
    hi: u64,
    jobs: usize,
    opts: &CheckOptions,
    timings: bool,
    invocation: &str,
) -> Result<SweepReport> {
    let qs: Vec<u64> = primes_in(lo, hi).into_iter().filter(|&p| p != 2).collect();
    sweep_qs(ids, &qs, jobs, opts, timings, invocation)
}

/// Every id at every listed field size; the result does not depend on `jobs`.
#[allow(clippy::too_many_arguments)]
pub fn sweep_qs(
    ids: &[String],
    qs: &[u64],
    jobs: usize,
    opts: &CheckOptions,
    timings: bool,
    invocation: &str,
) -> Result<SweepReport> {
    let entries = ids.iter().map(|id| lookup(id)).collect::<Result<Vec<_>>>()?;
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut tasks: Vec<(&Entry, Option<u64>)> = Vec::new();
    for e in &entries {
        if e.scope == Scope::Independent {
            tasks.push((e, None));
        } else {
            tasks.extend(qs.iter().map(|&q| (*e, Some(q))));
        }
    }
    tasks.sort_by(|a, b| (a.0.id, a.1).cmp(&(b.0.id, b.1)));
    tasks.dedup_by(|a, b| a.0.id == b.0.id && a.1 == b.1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let rows: Vec<Result<Vec<CheckReport>>> =
        pool.install(|| tasks.par_iter().map(|(e, q)| reports_for(e, *q, opts, timings)).collect());
    let mut reports = Vec::new();
    for r in rows {
        reports.extend(r?);
    }
    Ok(SweepReport { invocation: invocation.to_string(), reports })
}
