//! Acceptance checks, one test per criterion. Each prints its report line.

use quandle_core::finite::corpus::{standard_corpus, CorpusQuandle};
use quandle_core::suite::{self, CriterionReport};

fn corpus() -> Vec<CorpusQuandle> {
    standard_corpus().expect("corpus builds")
}

fn check(r: CriterionReport) {
    println!("{r}");
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_1_worked_example() {
    check(suite::worked_example());
}

#[test]
fn criterion_2_axiom_suite() {
    check(suite::axiom_suite());
}

#[test]
fn criterion_3_identity_decisions() {
    check(suite::identity_oracle(&corpus()));
}

#[test]
fn criterion_4_joyce_equivalence() {
    check(suite::joyce_equivalence());
}

#[test]
fn criterion_5_subvariety_characterizations() {
    check(suite::subvariety_characterizations(&corpus()));
}

#[test]
fn criterion_6_medial_iff_dis_abelian() {
    check(suite::medial_dis(&corpus()));
}

#[test]
fn criterion_7_crt_layer() {
    check(suite::crt_layer());
}

#[test]
fn criterion_8_dis_generating_sets() {
    check(suite::dis_generators(&corpus()));
}
