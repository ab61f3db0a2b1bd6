//! Work with the exact-arithmetic layer directly: multiply basis forms,
//! build the invariant symmetric basis, extract a kernel basis and test
//! membership of a hand-written quadric.

use num::BigRational;

use abelian_covers::exact::{
    kernel_basis, product_polynomial, quadric_image, quadric_in_kernel, symmetric_basis,
    QuadricSpec, QuadricTerm, SpecializationAssignment,
};
use abelian_covers::{CoverSpec, ModularVector, PairSelection};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cover = CoverSpec::validate(
        2,
        &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![1, 1, 1, 1, 1, 1, 1, 1]],
    )?;
    let sigma = ModularVector::new(2, vec![1, 1])?;
    let selection = PairSelection::MinusInvariant { sigma };
    let t = SpecializationAssignment::seeded_with_pins(
        8,
        7,
        &[(4, rat(0)), (5, rat(1)), (6, rat(-1)), (7, rat(4))],
    )?;

    let basis = symmetric_basis(&cover, &selection)?;
    println!("form registry:");
    for (i, f) in basis.forms.iter().enumerate() {
        println!("  w{i}: class {} with nu = {}", f.representative, f.nu);
    }
    println!("{} symmetric pairs span (S^2 V_-)^G", basis.pairs.len());

    // products of eigenforms collapse to rational functions of x
    let f = &basis.forms[1];
    let g = &basis.forms[2];
    println!("\nw1 · w2 = {}", product_polynomial(f, g, &t)?);

    let kb = kernel_basis(&cover, &selection, &t)?;
    println!("\nkernel dimension: {}", kb.quadrics.len());
    for (i, q) in kb.quadrics.iter().enumerate() {
        let rendered: Vec<String> = q
            .terms()
            .iter()
            .map(|term| format!("{}·(w{} ⊙ w{})", term.coeff, term.a, term.b))
            .collect();
        println!("  Q{}: {}", i + 1, rendered.join(" + "));
    }

    // the quadric w1 ⊙ w3 − w2 ⊙ w2 annihilates under multiplication
    let q = QuadricSpec::new(
        &kb.forms,
        vec![
            QuadricTerm { coeff: rat(1), a: 1, b: 3 },
            QuadricTerm { coeff: rat(-1), a: 2, b: 2 },
        ],
    )?;
    println!("\nq = w1 ⊙ w3 − w2 ⊙ w2");
    println!("image under the multiplication map: {}", quadric_image(&kb.forms, &q, &t)?);
    println!("kernel member: {}", quadric_in_kernel(&kb.forms, &q, &t)?);
    Ok(())
}
