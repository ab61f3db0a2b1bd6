//! Empirical falsification sweep: classify every family in an exhaustive
//! slice and assert that the witness-free ones respect the closed-form
//! bounds (r ≤ 6m and g ≤ 1 + 2^{m−1}(3m − 2) over (Z/2)^m; r ≤ 2Nm in
//! general). A completed sweep with an empty violation list is the check.

use abelian_covers::enumerate::{verify_bounds, EnumerationTask, SweepMode};
use abelian_covers::{ModularVector, SpecializedOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let task = EnumerationTask::new(2, 2, 14);
    let report = verify_bounds(&task, SweepMode::Torelli, None, None)?;
    println!(
        "Jacobian side, N = 2, m = 2, r <= 14: {} classes from {} candidates",
        report.equivalence_classes, report.total_candidates
    );
    for (status, count) in &report.status_counts {
        println!("  {status}: {count}");
    }
    println!(
        "  witness-free maxima: r = {:?}, genus = {:?}, row branch count = {:?}",
        report.max_r_without_witness,
        report.max_genus_without_witness,
        report.max_beta_without_witness
    );
    println!("  violations: {}", report.violations.len());

    let sigma = ModularVector::new(4, vec![2])?;
    let oracle = SpecializedOracle::default();
    let report = verify_bounds(
        &EnumerationTask::new(4, 1, 8),
        SweepMode::Prym,
        Some(sigma),
        Some(&oracle),
    )?;
    println!(
        "\nPrym side, N = 4, m = 1, r <= 8, sigma = (2): {} classes",
        report.equivalence_classes
    );
    for (status, count) in &report.status_counts {
        println!("  {status}: {count}");
    }
    println!("  violations: {}", report.violations.len());
    Ok(())
}
