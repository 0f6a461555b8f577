use std::sync::Arc;

use crate::gklo::{Gklo, Mutation, Shape};

use super::{cases, Case, CheckReport, Outcome, Status, Tag};

/// Relation families each mutation is expected to break.
pub fn expected_failures(m: Mutation) -> &'static [Tag] {
    match m {
        Mutation::DropRInKappaPrime => &[Tag::BBSame],
        Mutation::FlipSignKappa => &[Tag::BBSame],
        Mutation::ShiftDenominator => &[Tag::BBSame],
    }
}

/// One expected-fail case per (mutation, relation family). The case fails
/// as expected when some instance of the family does not hold for the
/// mutated images.
pub fn control_cases(shape: &Shape) -> Vec<Case> {
    let mut out = Vec::new();
    if shape.m.iter().all(|&m| m == 0) {
        return out;
    }
    for (n, m) in Mutation::ALL.into_iter().enumerate() {
        for &tag in expected_failures(m) {
            let g = Arc::new(Gklo::with_mutation(shape.clone(), Some(m)));
            let label = shape.label();
            out.push(
                Case::new(format!("negative-control/{}/{}", m.name(), tag.name()), vec![n], move || {
                    let reports = super::run_cases(&label, &cases(&g, tag));
                    let failed = reports.iter().find(|r| r.status == Status::Fail);
                    Ok(Outcome::Verdict(failed.map(|r| {
                        format!("{} {:?}: {}", r.relation, r.indices, r.witness.clone().unwrap_or_default())
                    })))
                })
                .expecting_failure(),
            );
        }
    }
    out
}

/// Runs all negative controls on `shape`.
pub fn negative_control(shape: &Shape) -> Vec<CheckReport> {
    super::run_cases(&shape.label(), &control_cases(shape))
}
