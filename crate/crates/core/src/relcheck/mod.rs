//! Exact verification of the relations satisfied by the GKLO images.

mod abcd;
mod auxiliary;
mod defining;
mod negative;
mod semiclassical;

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::diffop::DiffOp;
use crate::error::Result;
use crate::gklo::{Gklo, Shape};

pub use negative::{control_cases, expected_failures, negative_control};
pub use semiclassical::{classical_bracket, semiclassical_check, semiclassical_elements};

/// Relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    ZEven,
    HH,
    HB,
    BBFar,
    BBSame,
    BBAdjacent,
    Serre,
    AuxFive,
    AuxReformulated,
    AuxMixed3,
    AuxST,
    AbcdSubset,
    PowerRange,
    Kernel,
    Central,
    Semiclassical,
}

impl Tag {
    pub const DEFINING: [Tag; 7] = [
        Tag::ZEven,
        Tag::HH,
        Tag::HB,
        Tag::BBFar,
        Tag::BBSame,
        Tag::BBAdjacent,
        Tag::Serre,
    ];

    pub const AUX: [Tag; 4] = [Tag::AuxFive, Tag::AuxReformulated, Tag::AuxMixed3, Tag::AuxST];

    pub const ALL: [Tag; 16] = [
        Tag::ZEven,
        Tag::HH,
        Tag::HB,
        Tag::BBFar,
        Tag::BBSame,
        Tag::BBAdjacent,
        Tag::Serre,
        Tag::AuxFive,
        Tag::AuxReformulated,
        Tag::AuxMixed3,
        Tag::AuxST,
        Tag::AbcdSubset,
        Tag::PowerRange,
        Tag::Kernel,
        Tag::Central,
        Tag::Semiclassical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::ZEven => "z-even",
            Tag::HH => "h-h",
            Tag::HB => "h-b",
            Tag::BBFar => "b-b-far",
            Tag::BBSame => "b-b-same",
            Tag::BBAdjacent => "b-b-adjacent",
            Tag::Serre => "serre",
            Tag::AuxFive => "aux-five",
            Tag::AuxReformulated => "aux-reformulated",
            Tag::AuxMixed3 => "aux-mixed3",
            Tag::AuxST => "aux-xxxST",
            Tag::AbcdSubset => "abcd-subset",
            Tag::PowerRange => "power-range",
            Tag::Kernel => "kernel",
            Tag::Central => "central",
            Tag::Semiclassical => "semiclassical",
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        Tag::ALL.into_iter().find(|t| t.name() == s)
    }

    /// Tags that only make sense for `μ = 0`.
    pub fn needs_unshifted(self) -> bool {
        matches!(self, Tag::AbcdSubset | Tag::Kernel | Tag::Central)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// A deliberately wrong statement failed, as it should.
    ExpectedFail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedFail => "expected-fail",
        }
    }

    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub relation: String,
    pub indices: Vec<usize>,
    pub shape: String,
    pub status: Status,
    pub witness: Option<String>,
    pub ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// What a check computes: an element that must vanish, or a direct verdict.
pub(crate) enum Outcome {
    /// Must be exactly zero.
    Zero(DiffOp),
    /// `None` means pass; `Some(w)` is a failure witness.
    Verdict(Option<String>),
    /// Report-only finding; always passes and carries the note as witness.
    Note(String),
}

type Job = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

/// A lazily evaluated check.
pub struct Case {
    pub relation: String,
    pub indices: Vec<usize>,
    pub expect_fail: bool,
    job: Job,
}

impl Case {
    pub(crate) fn new(
        relation: impl Into<String>,
        indices: Vec<usize>,
        job: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
    ) -> Case {
        Case {
            relation: relation.into(),
            indices,
            expect_fail: false,
            job: Box::new(job),
        }
    }

    pub(crate) fn zero(
        relation: impl Into<String>,
        indices: Vec<usize>,
        job: impl Fn() -> Result<DiffOp> + Send + Sync + 'static,
    ) -> Case {
        Case::new(relation, indices, move || job().map(Outcome::Zero))
    }

    pub(crate) fn expecting_failure(mut self) -> Case {
        self.expect_fail = true;
        self
    }

    pub fn run(&self, shape: &str) -> CheckReport {
        let start = Instant::now();
        let failure = match (self.job)() {
            Ok(Outcome::Zero(d)) => {
                if d.is_zero() {
                    None
                } else {
                    Some(d.witness().map(|w| w.to_string()).unwrap_or_default())
                }
            }
            Ok(Outcome::Verdict(v)) => v,
            Ok(Outcome::Note(n)) => {
                return CheckReport {
                    relation: self.relation.clone(),
                    indices: self.indices.clone(),
                    shape: shape.to_string(),
                    status: Status::Pass,
                    witness: Some(n),
                    ms: start.elapsed().as_millis(),
                }
            }
            Err(e) => Some(format!("error: {}", e)),
        };
        let (status, witness) = match (failure, self.expect_fail) {
            (None, false) => (Status::Pass, None),
            (Some(w), false) => (Status::Fail, Some(w)),
            (Some(w), true) => (Status::ExpectedFail, Some(w)),
            (None, true) => (
                Status::Fail,
                Some("expected failure not observed".to_string()),
            ),
        };
        CheckReport {
            relation: self.relation.clone(),
            indices: self.indices.clone(),
            shape: shape.to_string(),
            status,
            witness,
            ms: start.elapsed().as_millis(),
        }
    }
}

/// Builds the cases of one relation family.
pub fn cases(g: &Arc<Gklo>, tag: Tag) -> Vec<Case> {
    if tag.needs_unshifted() && !g.shape.is_unshifted() {
        return Vec::new();
    }
    match tag {
        Tag::ZEven => defining::z_even(g),
        Tag::HH => defining::h_h(g),
        Tag::HB => defining::h_b(g),
        Tag::BBFar => defining::b_b_far(g),
        Tag::BBSame => defining::b_b_same(g),
        Tag::BBAdjacent => defining::b_b_adjacent(g),
        Tag::Serre => defining::serre(g),
        Tag::PowerRange => defining::power_range(g),
        Tag::AuxFive => auxiliary::five(g),
        Tag::AuxReformulated => auxiliary::reformulated(g),
        Tag::AuxMixed3 => auxiliary::mixed3(g),
        Tag::AuxST => auxiliary::st(g),
        Tag::AbcdSubset => abcd::subset(g),
        Tag::Kernel => abcd::kernel(g),
        Tag::Central => abcd::central(g),
        Tag::Semiclassical => semiclassical::cases(g),
    }
}

/// Runs cases in parallel and returns reports in deterministic order.
pub fn run_cases(shape: &str, cases: &[Case]) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = cases.par_iter().map(|c| c.run(shape)).collect();
    out.sort_by(|a, b| (&a.relation, &a.indices).cmp(&(&b.relation, &b.indices)));
    out
}

/// All reports for one tag.
pub fn check_relation(shape: &Shape, tag: Tag) -> Vec<CheckReport> {
    let g = Arc::new(Gklo::new(shape.clone()));
    run_cases(&shape.label(), &cases(&g, tag))
}

/// Runs every requested tag; reports sorted by tag, then relation, then indices.
pub fn run_suite(shape: &Shape, tags: &[Tag]) -> Vec<CheckReport> {
    let g = Arc::new(Gklo::new(shape.clone()));
    let mut tags = tags.to_vec();
    tags.sort();
    tags.dedup();
    let all: Vec<(usize, Case)> = tags
        .iter()
        .enumerate()
        .flat_map(|(n, t)| cases(&g, *t).into_iter().map(move |c| (n, c)))
        .collect();
    let label = shape.label();
    let mut out: Vec<(usize, CheckReport)> = all.par_iter().map(|(n, c)| (*n, c.run(&label))).collect();
    out.sort_by(|a, b| (a.0, &a.1.relation, &a.1.indices).cmp(&(b.0, &b.1.relation, &b.1.indices)));
    out.into_iter().map(|p| p.1).collect()
}
