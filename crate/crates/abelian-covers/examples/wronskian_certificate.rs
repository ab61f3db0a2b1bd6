//! Non-vanishing certificates. For a pair of eigenforms with opposite
//! characters, the reduced rational function f1·f3·(L3 − L1) is the
//! Wronskian of the pencil they span: it vanishes identically exactly on
//! proportional inputs, and a nonzero result certifies that the witness
//! quadric maps to a nonzero quartic differential.

use abelian_covers::exact::{case_two_certificate, wronskian_certificate, SpecializationAssignment};
use abelian_covers::{CoverSpec, ModularVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cover = CoverSpec::validate(
        4,
        &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
    )?;
    let classes = cover.character_classes()?;
    let class_of = |rep: &[u64]| {
        classes
            .iter()
            .find(|c| c.representative == ModularVector::new(4, rep.to_vec()).unwrap())
            .expect("class exists")
    };

    let beta = cover.basis_forms(class_of(&[1, 2]));
    let gamma = cover.basis_forms(class_of(&[3, 2]));
    let t = SpecializationAssignment::seeded(8, 7);

    let w = wronskian_certificate(&beta[0], &gamma[0], &t)?;
    println!("certificate for the (1,2)/(3,2) witness pair:");
    println!("  {}", w);
    println!("  identically zero: {}", w.is_zero());

    let swapped = wronskian_certificate(&gamma[0], &beta[0], &t)?;
    println!("  antisymmetry check: w + w_swapped = 0 is {}", w.add(&swapped).is_zero());

    // proportional inputs vanish: an order-2 class paired against itself
    let cover2 = CoverSpec::validate(2, &[vec![1; 10]])?;
    let forms = cover2.basis_forms(&cover2.character_classes()?[1]);
    let t2 = SpecializationAssignment::seeded(10, 7);
    let z = wronskian_certificate(&forms[0], &forms[0], &t2)?;
    println!("\nsame form against itself: zero = {}", z.is_zero());
    let w01 = wronskian_certificate(&forms[0], &forms[1], &t2)?;
    println!("against x·(itself): zero = {}", w01.is_zero());

    // order-2 witnesses need no computation: the image is forced to be a
    // nonzero square multiple
    println!("\ncase-TWO certificate: {}", case_two_certificate(&forms[0]));
    Ok(())
}
