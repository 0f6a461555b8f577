//! Acceptance criteria 1–9. Prints one line per criterion, plus one line per
//! documented erratum. A criterion whose only failures are documented
//! errata prints FAIL but does not fail the target; anything else does.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use tgklo_core::gklo::{test_matrix, Mutation, Shape};
use tgklo_core::poisson::{check_identity, ConjectureEvidence, Identity};
use tgklo_core::relcheck::{negative_control, run_suite, CheckReport, Status, Tag};

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    errata: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn absorb(&mut self, reports: &[CheckReport]) {
        for r in reports {
            self.checked += 1;
            match r.status {
                Status::Pass => {}
                Status::ExpectedFail => self.errata.push(format!("{} on {}", r.relation, r.shape)),
                Status::Fail => self.failures.push(format!(
                    "{} {:?} on {}: {}",
                    r.relation,
                    r.indices,
                    r.shape,
                    r.witness.clone().unwrap_or_default().chars().take(200).collect::<String>()
                )),
            }
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn unshifted() -> Vec<Shape> {
    test_matrix().into_iter().filter(|s| s.is_unshifted()).collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::default();
    let mut seen = std::collections::BTreeSet::new();
    for s in test_matrix() {
        let reps = run_suite(&s, &Tag::DEFINING);
        for r in &reps {
            seen.insert(r.relation.split('/').next().unwrap_or("").to_string());
        }
        o.absorb(&reps);
    }
    // relations such as b-b-far only exist for larger n; each must be
    // exercised somewhere in the matrix
    for t in Tag::DEFINING {
        o.require(seen.contains(t.name()), format!("{} has no cases in the matrix", t));
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::default();
    for s in test_matrix() {
        o.absorb(&run_suite(&s, &Tag::AUX));
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::default();
    for s in unshifted() {
        o.absorb(&run_suite(&s, &[Tag::Kernel]));
    }
    o
}

fn small_unshifted() -> Vec<Shape> {
    unshifted().into_iter().filter(|s| s.n <= 3).collect()
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::default();
    for s in small_unshifted() {
        o.absorb(&run_suite(&s, &[Tag::AbcdSubset]));
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::default();
    for s in small_unshifted() {
        let reps = run_suite(&s, &[Tag::Central]);
        o.require(reps.iter().any(|r| r.relation == "central/c-b"), format!("no c-b case on {}", s));
        o.require(reps.iter().any(|r| r.relation == "central/c-h"), format!("no c-h case on {}", s));
        o.absorb(&reps);
    }
    o
}

/// Returns the outcome of the parts that must hold, and separately the
/// ideal-proof identities read verbatim.
fn criterion_6() -> (Outcome, Outcome) {
    let mut o = Outcome::default();
    for (n, order) in [(2, 6), (3, 4)] {
        let reps = check_identity(Identity::RttPoisson, n, order);
        let rtt: Vec<&CheckReport> = reps.iter().filter(|r| r.relation == "rtt-poisson/quotient").collect();
        o.require(rtt.len() == order * (order - 1) / 2, format!("rtt mode pairs missing at n={}", n));
        o.absorb(&reps);
    }
    for n in [3, 4] {
        o.absorb(&check_identity(Identity::DesnanotJacobi, n, 4));
    }
    let jac = check_identity(Identity::Jacobi, 2, 5);
    o.require(jac.len() == 4, "jacobi mode signatures missing");
    o.absorb(&jac);

    let mut verbatim = Outcome::default();
    for r in check_identity(Identity::IdealProofIdentities, 3, 5) {
        let verbatim_form = r.relation.ends_with("-as-printed") || r.relation.ends_with("second-display");
        verbatim.require(
            !verbatim_form || r.status == Status::Pass,
            format!("{} r={:?}: {}", r.relation.replace("-as-printed", ""), r.indices, r.witness.clone().unwrap_or_default()),
        );
        if !verbatim_form {
            // the sign-corrected forms must hold
            o.absorb(std::slice::from_ref(&r));
        }
    }
    (o, verbatim)
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::default();
    for s in test_matrix() {
        let reps = run_suite(&s, &[Tag::Semiclassical]);
        o.require(reps.len() >= 50 || s.m.iter().all(|&m| m == 0), format!("only {} pairs on {}", reps.len(), s));
        o.absorb(&reps);
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::default();
    let mut caught: BTreeMap<&str, usize> = BTreeMap::new();
    for s in test_matrix() {
        for r in negative_control(&s) {
            o.checked += 1;
            match r.status {
                Status::ExpectedFail => {
                    let m = Mutation::ALL.into_iter().find(|m| r.relation.contains(m.name())).expect("mutation name");
                    *caught.entry(m.name()).or_default() += 1;
                }
                _ => o.failures.push(format!("{} on {}: {:?}", r.relation, r.shape, r.witness)),
            }
        }
    }
    for m in Mutation::ALL {
        o.require(caught.get(m.name()).copied().unwrap_or(0) > 0, format!("{} never caught", m.name()));
    }
    o
}

fn criterion_9() -> (Outcome, String) {
    let mut o = Outcome::default();
    let e = ConjectureEvidence::at(2, 6, &[2]);
    o.require(e.dim_without_b == 0, format!("degree {} has dimension {} without B", e.degree, e.dim_without_b));
    o.require(e.dim_with_b >= 1, "B adds nothing");
    (
        o,
        format!("loop degree {}: {} without B, {} with B", e.degree, e.dim_without_b, e.dim_with_b),
    )
}

fn main() -> ExitCode {
    let total = Instant::now();
    let mut fatal = false;
    let mut line = |k: usize, title: &str, o: Outcome, t: Instant, extra: &str| {
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {} {} ({} checks, {:.1}s){}",
            k,
            status,
            title,
            o.checked,
            t.elapsed().as_secs_f64(),
            extra
        );
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for e in &o.errata {
            *counts.entry(e.split(" on ").next().unwrap_or(e)).or_default() += 1;
        }
        for (e, k) in counts {
            println!("    erratum observed: {} ({} cases)", e, k);
        }
        for f in o.failures.iter().take(10) {
            println!("    failure: {}", f);
        }
        fatal |= !o.failures.is_empty();
    };
    let t = Instant::now();
    line(1, "GKLO homomorphism, defining relations", criterion_1(), t, "");
    let t = Instant::now();
    line(2, "auxiliary identities", criterion_2(), t, "");
    let t = Instant::now();
    line(3, "kernel and truncation", criterion_3(), t, "");
    let t = Instant::now();
    line(4, "ABCD subset", criterion_4(), t, "");
    let t = Instant::now();
    line(5, "centrality", criterion_5(), t, "");
    let t = Instant::now();
    let (six, verbatim) = criterion_6();
    line(6, "Poisson engine: RTT, Desnanot-Jacobi, Jacobi, corrected ideal-proof identities", six, t, "");
    let t = Instant::now();
    line(7, "semiclassical consistency", criterion_7(), t, "");
    let t = Instant::now();
    line(8, "negative controls", criterion_8(), t, "");
    let t = Instant::now();
    let (nine, note) = criterion_9();
    line(9, "reducedness evidence", nine, t, &format!(": {}", note));

    // Both displays verbatim cannot hold under one bracket sign; this is a
    // recorded finding, so it is reported but not fatal as long as the
    // failure is exactly the recorded one.
    let expected: Vec<&str> = vec!["first-display", "inline"];
    let failed: Vec<String> = verbatim.failures.iter().map(|f| f.split(' ').next().unwrap_or("").to_string()).collect();
    let matches_record = !failed.is_empty()
        && failed.iter().all(|f| expected.iter().any(|e| f.ends_with(e)))
        && verbatim.failures.iter().all(|f| f.contains("holds only with factor -1"));
    println!(
        "criterion 6 (ideal-proof identities verbatim, n=3, r in {{2,4}}): {} ({} checks)",
        if verbatim.failures.is_empty() { "PASS" } else { "FAIL" },
        verbatim.checked
    );
    for f in &verbatim.failures {
        println!("    failure: {}", f.chars().take(160).collect::<String>());
    }
    if !verbatim.failures.is_empty() {
        if matches_record {
            println!("    recorded erratum: the second display holds verbatim; the inline identity and the first display hold with factor -1; no single bracket sign satisfies both displays");
        } else {
            fatal = true;
        }
    }
    println!("total {:.1}s", total.elapsed().as_secs_f64());
    if fatal {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
