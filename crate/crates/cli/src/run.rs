//! Suite dispatch and reports.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use tgklo_core::poisson::{identity_cases, ideal_cases, ideal_orders, Identity};
use tgklo_core::relcheck::{cases, control_cases, Case, CheckReport, Status, Tag};
use tgklo_core::Gklo;

use crate::config::{JobConfig, Suite};

/// The cases of one suite for a job.
pub fn suite_cases(cfg: &JobConfig, g: &Arc<Gklo>, suite: Suite) -> Vec<Case> {
    let n = cfg.shape.n;
    let order = cfg.truncation;
    let tags = |ts: &[Tag]| ts.iter().flat_map(|&t| cases(g, t)).collect::<Vec<_>>();
    let ids = |is: &[Identity]| is.iter().flat_map(|&i| identity_cases(i, n, order)).collect::<Vec<_>>();
    match suite {
        Suite::GkloDefining => {
            let mut t = Tag::DEFINING.to_vec();
            t.push(Tag::PowerRange);
            tags(&t)
        }
        Suite::GkloAux => tags(&Tag::AUX),
        Suite::Abcd => tags(&[Tag::AbcdSubset]),
        Suite::Kernel => tags(&[Tag::Kernel]),
        Suite::Central => tags(&[Tag::Central]),
        Suite::Semiclassical => tags(&[Tag::Semiclassical]),
        Suite::PoissonRtt => ids(&[
            Identity::RttPoisson,
            Identity::MinorBracketFormula,
            Identity::DetCentral,
            Identity::Jacobi,
            Identity::TauCompatibility,
        ]),
        Suite::Dirac => ids(&[
            Identity::DiracClosure,
            Identity::IdealProofIdentities,
            Identity::NonvanishingSteps,
            Identity::ShiftedGenerators,
        ]),
        Suite::Desnanot => ids(&[Identity::DesnanotJacobi]),
        Suite::IdealClosure => ideal_cases(n, order, ideal_orders(&cfg.shape)),
        Suite::NegativeControls => control_cases(&cfg.shape),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub relation: String,
    pub indices: Vec<usize>,
    pub status: &'static str,
    pub witness: Option<String>,
    pub ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: &'static str,
    pub cases: Vec<CaseReport>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub expected_fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub config: Value,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("config {}\n", self.config);
        for s in &self.suites {
            out.push_str(&format!("\n[{}]\n", s.id));
            for c in &s.cases {
                let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("  {:<13} {:<50} [{}]", c.status, c.relation, idx.join(",")));
                if let Some(w) = &c.witness {
                    // full witnesses are in the JSON report
                    let short: String = w.chars().take(TEXT_WITNESS_CHARS).collect();
                    let more = if short.len() < w.len() { " …" } else { "" };
                    out.push_str(&format!("  {}{}", short, more));
                }
                out.push('\n');
            }
        }
        out.push_str(&format!(
            "\npass {}  fail {}  expected-fail {}\n",
            self.summary.pass, self.summary.fail, self.summary.expected_fail
        ));
        out
    }
}

const TEXT_WITNESS_CHARS: usize = 160;

fn case_report(r: CheckReport) -> CaseReport {
    CaseReport {
        relation: r.relation,
        indices: r.indices,
        status: r.status.name(),
        witness: r.witness,
        ms: r.ms,
    }
}

/// Runs every suite of the job on the current rayon pool. Cases from all
/// suites share the pool; results are sorted per suite.
pub fn run(cfg: &JobConfig) -> RunReport {
    let start = Instant::now();
    let g = Arc::new(Gklo::new(cfg.shape.clone()));
    let label = cfg.shape.label();
    let jobs: Vec<(usize, Case)> = cfg
        .suites
        .iter()
        .enumerate()
        .flat_map(|(k, &s)| suite_cases(cfg, &g, s).into_iter().map(move |c| (k, c)))
        .collect();
    let done: Vec<(usize, CheckReport)> = jobs.par_iter().map(|(k, c)| (*k, c.run(&label))).collect();
    let mut suites: Vec<SuiteReport> = cfg
        .suites
        .iter()
        .map(|s| SuiteReport {
            id: s.name(),
            cases: Vec::new(),
        })
        .collect();
    let mut summary = Summary::default();
    for (k, r) in done {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::ExpectedFail => summary.expected_fail += 1,
        }
        suites[k].cases.push(case_report(r));
    }
    for s in &mut suites {
        s.cases.sort_by(|a, b| (&a.relation, &a.indices).cmp(&(&b.relation, &b.indices)));
    }
    RunReport {
        config: cfg.echo(),
        suites,
        summary,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
