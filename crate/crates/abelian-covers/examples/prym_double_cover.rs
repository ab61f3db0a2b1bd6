//! A branched double cover inside a (Z/2)^2 family: branch count, quotient
//! genus, anti-invariant eigenspaces and the kernel of the multiplication
//! map, computed exactly at pinned rational branch points.

use num::BigRational;

use abelian_covers::exact::{kernel_basis, mult_map_rank, SpecializationAssignment};
use abelian_covers::{prym, CoverSpec, ModularVector, PairSelection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // w1^2 = (x-t1)...(x-t4), w2^2 = (x-t1)...(x-t8)
    let cover = CoverSpec::validate(
        2,
        &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![1, 1, 1, 1, 1, 1, 1, 1]],
    )?;
    let sigma = ModularVector::new(2, vec![1, 1])?;
    let spec = prym::PrymSpec::new(cover.clone(), sigma.clone())?;

    println!("cover genus  = {}", spec.cover_genus);
    println!("branch count = {}  (sigma fixes two points over each of t1..t4)", spec.branch_count);
    println!("quotient genus = {}", spec.quotient_genus);
    println!("prym dimension = {}", spec.prym_dimension);

    println!("\nanti-invariant eigenspaces:");
    for md in prym::minus_dims(&cover, &sigma)? {
        if md.dim > 0 {
            println!("  dim (V_-)_{} = {}", md.class.representative, md.dim);
        }
    }

    // pin t5 = 0, t6 = 1, t7 = -1, t8 = 9/2; draw the rest from a seed
    let tau = BigRational::new(9.into(), 2.into());
    let t = SpecializationAssignment::seeded_with_pins(
        8,
        7,
        &[
            (4, BigRational::from_integer(0.into())),
            (5, BigRational::from_integer(1.into())),
            (6, BigRational::from_integer((-1).into())),
            (7, tau),
        ],
    )?;
    let selection = PairSelection::MinusInvariant { sigma };
    let rk = mult_map_rank(&cover, &selection, &t)?;
    println!(
        "\nmultiplication map on (S^2 V_-)^G: {} pairs, rank {}, kernel {}",
        rk.pairs, rk.rank, rk.kernel_dim
    );

    let kb = kernel_basis(&cover, &selection, &t)?;
    println!("kernel quadrics over the registry (alpha_1; alpha_2..alpha_4):");
    for q in &kb.quadrics {
        let rendered: Vec<String> = q
            .terms()
            .iter()
            .map(|term| format!("{}·(w{} ⊙ w{})", term.coeff, term.a, term.b))
            .collect();
        println!("  {}", rendered.join(" + "));
    }

    let classification = prym::classify_prym(&cover, &ModularVector::new(2, vec![1, 1])?, None)?;
    println!(
        "\nsurjectivity: {:?} (b = {} >= 6), classification: {:?}",
        classification.evidence, spec.branch_count, classification.status
    );
    Ok(())
}
