//! Analyze one family end to end: genus, character table, the
//! invariant-dimension equality and the witnesses that rule out totally
//! geodesic.
//!
//! The family here is the order-8 cover with equations
//! w1^2 = (x-t1)...(x-t4), w2^4 = (x-t5)...(x-t8); its Jacobians trace out
//! a 5-dimensional subvariety of the moduli of genus-13 abelian varieties.

use abelian_covers::torelli;
use abelian_covers::CoverSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cover = CoverSpec::validate(
        4,
        &[vec![2, 2, 2, 2, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
    )?;

    println!("modulus N = {}", cover.modulus());
    println!("group order d = {}", cover.group().order());
    println!("genus g = {}", cover.genus()?);

    println!("\ncharacter table (representative, alpha, d_n, order):");
    for row in cover.char_table()? {
        println!(
            "  n = {}  alpha = {}  d = {}  order = {}  -n = {}",
            row.class.representative,
            row.class.alpha,
            row.class.dim,
            row.class.order,
            row.negative
        );
    }

    let classification = torelli::classify_torelli(&cover)?;
    println!(
        "\ndim (S^2 V)^G = {}   dim H^0(K^2)^G = {}",
        classification.sym2_dim, classification.quadratic_dim
    );
    println!("sufficient condition for Shimura: {}", torelli::condition_star(&cover)?);

    if let Some(w) = &classification.witness {
        println!(
            "witness ({:?}): n = {} with d = {}{}",
            w.case,
            w.class.representative,
            w.dim,
            w.paired
                .as_ref()
                .map(|p| format!(", paired with {} (d = {})", p.representative, w.paired_dim.unwrap()))
                .unwrap_or_default()
        );
    }
    println!("classification: {:?}", classification.status);
    Ok(())
}
