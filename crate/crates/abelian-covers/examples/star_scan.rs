//! Scan small parameter slices for families satisfying the Shimura
//! sufficient condition dim (S²V)^G = dim H⁰(K²)^G.

use abelian_covers::enumerate::{star_scan, EnumerationTask};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, m, rmax) in [(2u64, 1usize, 8usize), (3, 1, 6), (4, 1, 6), (2, 2, 8)] {
        let task = EnumerationTask::new(n, m, rmax);
        let hits = star_scan(&task)?;
        println!("N = {n}, m = {m}, r <= {rmax}: {} candidate(s)", hits.len());
        for hit in &hits {
            println!(
                "  genus {:2}  dims {} = {}  rows {:?}",
                hit.genus, hit.sym2_dim, hit.quadratic_dim,
                hit.cover.row_entries()
            );
        }
    }
    Ok(())
}
