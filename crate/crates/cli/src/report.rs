//! Verification runs and their reports.

use std::time::Instant;

use pcf_core::identities::{descriptor, verify, ParameterPoint, VerificationRecord};
use pcf_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{GridConfig, Task};
use crate::literal::format_real;

/// One grid element of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReportEntry {
    Verified(VerificationRecord),
    Skipped {
        identity_id: String,
        point: ParameterPoint,
        reason: String,
    },
}

impl ReportEntry {
    pub fn identity_id(&self) -> &str {
        match self {
            ReportEntry::Verified(r) => &r.identity_id,
            ReportEntry::Skipped { identity_id, .. } => identity_id,
        }
    }
}

/// Tallies for one identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySummary {
    pub id: String,
    pub label: String,
    pub report_only: bool,
    pub tested: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Largest relative error among tested points; null if none were tested
    /// or a side failed to evaluate.
    pub max_rel_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub config: GridConfig,
    pub summary: Vec<IdentitySummary>,
    pub records: Vec<ReportEntry>,
}

impl RunReport {
    /// Failures outside report-only identities.
    pub fn counted_failures(&self) -> usize {
        self.summary.iter().filter(|s| !s.report_only).map(|s| s.failed).sum()
    }

    pub fn tested(&self) -> usize {
        self.summary.iter().map(|s| s.tested).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per grid element.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "identity", "status", "nu_re", "nu_im", "mu_re", "mu_im", "z_re", "z_im", "a_re", "a_im", "lhs_re",
            "lhs_im", "rhs_re", "rhs_im", "rel_err", "pass", "reason",
        ])
        .expect("in-memory write");
        for e in &self.records {
            let (status, point, values, reason) = match e {
                ReportEntry::Verified(r) => {
                    let mut v = [
                        r.lhs_value.re,
                        r.lhs_value.im,
                        r.rhs_value.re,
                        r.rhs_value.im,
                        r.rel_err,
                    ]
                    .map(format_real)
                    .to_vec();
                    v.push(r.pass.to_string());
                    let status = if r.pass { "pass" } else { "fail" };
                    (status, &r.point, v, r.diagnostics.error.clone().unwrap_or_default())
                }
                ReportEntry::Skipped { point, reason, .. } => {
                    ("skipped", point, vec![String::new(); 6], reason.clone())
                }
            };
            let mut row = vec![e.identity_id().to_string(), status.to_string()];
            for c in [point.nu, point.mu, point.z, point.a] {
                row.push(format_real(c.re));
                row.push(format_real(c.im));
            }
            row.extend(values);
            row.push(reason);
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

fn run_task(task: &Task) -> (ReportEntry, f64) {
    let start = Instant::now();
    let entry = match verify(&task.id, &task.point, task.tol) {
        Ok(r) => ReportEntry::Verified(r),
        Err(Error::OutOfDomain { reason, .. }) => ReportEntry::Skipped {
            identity_id: task.id.clone(),
            point: task.point,
            reason,
        },
        Err(e) => ReportEntry::Skipped {
            identity_id: task.id.clone(),
            point: task.point,
            reason: e.to_string(),
        },
    };
    (entry, start.elapsed().as_secs_f64())
}

/// Runs every task of `config` in parallel and assembles the report in
/// grid order. Wall times are included only when `timings` is set.
pub fn run_verify(config: &GridConfig, timings: bool) -> RunReport {
    let tasks = config.tasks();
    let results: Vec<(ReportEntry, f64)> = tasks.par_iter().map(run_task).collect();
    let mut summary: Vec<IdentitySummary> = Vec::new();
    for (entry, secs) in &results {
        let id = entry.identity_id();
        let idx = match summary.iter().position(|s| s.id == id) {
            Some(i) => i,
            None => {
                let d = descriptor(id).expect("validated id");
                summary.push(IdentitySummary {
                    id: id.to_string(),
                    label: d.label.to_string(),
                    report_only: d.report_only,
                    tested: 0,
                    passed: 0,
                    failed: 0,
                    skipped: 0,
                    max_rel_err: None,
                    wall_time_s: timings.then_some(0.0),
                });
                summary.len() - 1
            }
        };
        let s = &mut summary[idx];
        if let Some(t) = s.wall_time_s.as_mut() {
            *t += secs;
        }
        match entry {
            ReportEntry::Verified(r) => {
                s.tested += 1;
                if r.pass {
                    s.passed += 1;
                } else {
                    s.failed += 1;
                }
                let e = if r.rel_err.is_nan() { f64::INFINITY } else { r.rel_err };
                s.max_rel_err = Some(s.max_rel_err.map_or(e, |m| m.max(e)));
            }
            ReportEntry::Skipped { .. } => s.skipped += 1,
        }
    }
    for s in &mut summary {
        if s.max_rel_err == Some(f64::INFINITY) {
            s.max_rel_err = None;
        }
    }
    RunReport {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        summary,
        records: results.into_iter().map(|(e, _)| e).collect(),
    }
}
