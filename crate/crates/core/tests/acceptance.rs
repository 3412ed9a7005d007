//! Acceptance criteria. Each test writes one `[PASS]`/`[FAIL]` line straight
//! to stdout, so the lines show up without `--nocapture`.

use std::io::Write;
use std::sync::OnceLock;

use weylfan::verify::{self, CriterionResult, InstanceFamily, VerifyConfig};

fn config() -> &'static VerifyConfig {
    static CFG: OnceLock<VerifyConfig> = OnceLock::new();
    CFG.get_or_init(VerifyConfig::default)
}

fn family() -> &'static InstanceFamily {
    static FAM: OnceLock<InstanceFamily> = OnceLock::new();
    FAM.get_or_init(|| verify::instance_family(config()).expect("instance family builds"))
}

fn report(r: weylfan::Result<CriterionResult>) {
    let r = r.expect("criterion ran");
    let mut out = std::io::stdout().lock();
    writeln!(out, "{r}").unwrap();
    for e in &r.examples {
        writeln!(out, "    {e}").unwrap();
    }
    out.flush().unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_1_diagonal_split_table() {
    report(verify::diagonal_split_table());
}

#[test]
fn criterion_2_witness_pairings() {
    report(verify::witness_pairings());
}

#[test]
fn criterion_3_normality() {
    report(verify::normality(family()));
}

#[test]
fn criterion_4_oracle_equivalence() {
    report(verify::oracle_equivalence(family(), config()));
}

#[test]
fn criterion_5_quadraticity() {
    report(verify::quadraticity(family(), config()));
}

#[test]
fn criterion_6_closure_and_still_winning() {
    report(verify::closure_and_still_winning(family()));
}

#[test]
fn criterion_7_numbers_game() {
    report(verify::numbers_game(family(), config()));
}

#[test]
fn criterion_8_dominant_order() {
    report(verify::dominant_order(family()));
}
