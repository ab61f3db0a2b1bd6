//! Closed-form bounds a totally geodesic family must satisfy, tabulated for
//! a few group shapes. Witness-free sweeps (see `verify_bounds`) check
//! these empirically on exhaustive slices.

use abelian_covers::{prym, torelli};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("elementary 2-groups (Z/2)^m — m is capped at 6 outright:");
    for m in 1..=6usize {
        let b = torelli::bound_report(2, m, 1u128 << m, None)?;
        println!("  m = {m}: r <= {:2}, g <= {}", b.r_max, b.genus_max);
    }

    println!("\ngeneral subgroups of (Z/NZ)^m at full order d = N^m:");
    for (n, m) in [(3u64, 2usize), (4, 2), (5, 2), (6, 3)] {
        let d = (n as u128).pow(m as u32);
        let b = torelli::bound_report(n, m, d, None)?;
        println!("  N = {n}, m = {m}: r <= {:3}, g <= {}", b.r_max, b.genus_max);
    }

    println!("\nelementary p-groups (Z/pZ)^m, p odd prime — m is capped at 2p:");
    for p in [3u64, 5, 7] {
        let b = torelli::bound_report(p, 1, p as u128, Some(p))?;
        println!(
            "  p = {p}: m <= {}, r <= {:3}, g <= {}",
            b.m_max.unwrap(),
            b.r_max,
            b.genus_max
        );
    }

    println!("\nPrym families over (Z/NZ)^m, N even (bounds on the cover genus):");
    for (n, m) in [(2u64, 3usize), (2, 4), (4, 2), (6, 2)] {
        let b = prym::prym_bound_report(n, m)?;
        println!("  N = {n}, m = {m}: r <= {:2}, cover genus <= {}", b.r_max, b.genus_max);
    }
    Ok(())
}
