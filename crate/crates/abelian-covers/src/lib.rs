//! Exact invariants for families of abelian covers of the projective line.
//!
//! A family is given by an m×r monodromy matrix A over Z/NZ: the j-th
//! column is the local monodromy around the branch point t_j, the curves
//! are w_i^N = ∏_j (x − t_j)^{r̃_ij}, and the Galois group is the subgroup
//! of (Z/NZ)^m generated by the columns. Everything the library computes is
//! exact: genus, character eigenspace dimensions, Prym data of a chosen
//! involution, rational-arithmetic ranks and kernels of multiplication
//! maps, and the resulting classification of each family as a Shimura
//! candidate, provably not totally geodesic, or undetermined.
//!
//! ## Where to start
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example analyze_family        # genus, char table, classification
//! cargo run --example prym_double_cover     # branched double cover, kernel quadrics
//! cargo run --example etale_prym            # etale double cover, restricted rank
//! cargo run --example kernel_quadrics       # exact multiplication-map kernels
//! cargo run --example wronskian_certificate # non-vanishing certificates
//! cargo run --example enumerate_families    # canonical forms up to equivalence
//! cargo run --example verify_bounds         # empirical bound falsification sweeps
//! cargo run --example star_scan             # Shimura candidates in a sweep
//! cargo run --example bound_tables          # the closed-form bound tables
//! ```
//!
//! The same functionality is scriptable through the thin `covers` binary
//! (`analyze`, `prym`, `enumerate`, `verify-bounds`, `star-scan`, `bounds`),
//! which reads and writes JSON documents; see the README.
//!
//! ## Crate layout
//!
//! - [`modular`] — arithmetic in (Z/NZ)^m: subgroup closure, involutions,
//!   character classes, automorphisms.
//! - [`cover`] — monodromy-matrix validation, genus, eigenspace dimension
//!   tables, symbolic basis forms.
//! - [`torelli`] — the Shimura sufficient condition and the
//!   not-totally-geodesic witnesses on the Jacobian side, plus bound tables.
//! - [`prym`] — double-cover data for an involution, anti-invariant
//!   dimensions, Prym classification.
//! - [`exact`] — arbitrary-precision rational specialization: products of
//!   forms, multiplication-map ranks and kernels, Wronskian certificates.
//! - [`enumerate`] — exhaustive generation of families up to column
//!   permutation and group automorphism, with bound-verification sweeps.
//! - [`report`] — JSON documents and reports behind the CLI.

pub mod cover;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod modular;
pub mod prym;
pub mod report;
pub mod torelli;

pub use cover::{CoverSpec, FormSpec};
pub use error::{Error, Result};
pub use exact::{
    PairSelection, QuadricSpec, RankKernel, SpecializationAssignment, SpecializedOracle,
};
pub use modular::{CharacterClass, GroupData, ModularVector};
pub use prym::{PrymClassification, PrymSpec, SurjectivityEvidence};
pub use torelli::{Classification, Status, Witness, WitnessCase};
