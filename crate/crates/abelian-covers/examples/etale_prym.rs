//! An etale double cover inside a (Z/4)^2 family: zero branch points, so
//! surjectivity of the multiplication map is not automatic and must be
//! certified by an exact rank computation on a restricted block.

use abelian_covers::exact::{mult_map_rank, SpecializationAssignment};
use abelian_covers::{prym, CoverSpec, ModularVector, PairSelection, SpecializedOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // w1^4 = (x-t1)...(x-t4), w2^4 = (x-t5)...(x-t8)
    let cover = CoverSpec::validate(
        4,
        &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
    )?;
    let sigma = ModularVector::new(4, vec![2, 2])?;
    let spec = prym::PrymSpec::new(cover.clone(), sigma.clone())?;

    println!("cover genus  = {}", spec.cover_genus);
    println!("branch count = {}  (the double cover is etale)", spec.branch_count);
    println!("quotient genus = {}", spec.quotient_genus);

    println!("\nanti-invariant eigenspaces:");
    for md in prym::minus_dims(&cover, &sigma)? {
        if md.dim > 0 {
            println!("  dim (V_-)_{} = {}", md.class.representative, md.dim);
        }
    }

    // the witness pair (1,2)/(3,2) spans an 8-dimensional block whose image
    // already fills the 5-dimensional target
    let block = PairSelection::Block {
        alpha: ModularVector::new(4, vec![1, 1, 1, 1, 2, 2, 2, 2])?,
        paired_alpha: ModularVector::new(4, vec![3, 3, 3, 3, 2, 2, 2, 2])?,
    };
    let t = SpecializationAssignment::seeded(8, 7);
    let rk = mult_map_rank(&cover, &block, &t)?;
    println!(
        "\nrestriction to (V_-)_(1,2) ⊗ (V_-)_(3,2): {} pairs, rank {}, kernel {}",
        rk.pairs, rk.rank, rk.kernel_dim
    );

    let oracle = SpecializedOracle { seed: 7, attempts: 3 };
    let classification = prym::classify_prym(&cover, &sigma, Some(&oracle))?;
    println!(
        "full map rank {:?}, surjectivity: {:?}",
        classification.certified_rank, classification.evidence
    );
    if let Some(w) = &classification.witness {
        println!(
            "witness ({:?}): {} paired with {}",
            w.case,
            w.class.representative,
            w.paired.as_ref().unwrap().representative
        );
    }
    println!("classification: {:?}", classification.status);
    Ok(())
}
