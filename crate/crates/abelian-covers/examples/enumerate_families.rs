//! Enumerate all families for a small task, one canonical representative
//! per equivalence class (column permutation composed with a group
//! automorphism).

use abelian_covers::enumerate::{enumerate_families, Canonicalization, EnumerationTask};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut task = EnumerationTask::new(4, 1, 8);
    task.canonicalization = Canonicalization::PermutationAndAutomorphism;

    let outcome = enumerate_families(&task)?;
    println!(
        "N = {}, m = {}, r in {}..={}: {} admissible candidates, {} classes",
        task.modulus,
        task.ambient_dim,
        task.r_min,
        task.r_max,
        outcome.raw_candidates,
        outcome.families.len()
    );
    println!("automorphism reduction active: {}\n", outcome.automorphism_reduction);

    for cover in &outcome.families {
        let dims: Vec<usize> =
            cover.char_table()?.iter().map(|row| row.class.dim).collect();
        println!(
            "r = {}  genus = {:2}  d = {:2}  rows = {:?}  eigenspace dims = {:?}",
            cover.column_count(),
            cover.genus()?,
            cover.group().order(),
            cover.row_entries(),
            dims
        );
    }

    // permutation-only canonicalization keeps more representatives
    let mut perm_task = task.clone();
    perm_task.canonicalization = Canonicalization::PermutationOnly;
    let perm = enumerate_families(&perm_task)?;
    println!(
        "\npermutation-only classes: {} (orbit reduction merged {})",
        perm.families.len(),
        perm.families.len() - outcome.families.len()
    );
    Ok(())
}
