use cactus::verify::{run_criterion, CRITERIA, DEFAULT_SEED};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let outcome = run_criterion(id, DEFAULT_SEED);
        println!("{outcome}");
        if !outcome.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
