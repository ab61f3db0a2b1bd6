//! Double-cover data for a chosen involution σ in the Galois group: branch
//! count, quotient genus, anti-invariant eigenspace dimensions, witnesses
//! and the classification of the induced family of Prym varieties.

use serde::{Deserialize, Serialize};

use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::modular::{self, CharacterClass, ModularVector};
use crate::torelli::{find_witnesses, sym2_invariant_dim, Status, Witness};

/// A cover together with an involution σ of its Galois group and the data
/// of the induced degree-2 quotient.
#[derive(Debug, Clone)]
pub struct PrymSpec {
    pub cover: CoverSpec,
    pub sigma: ModularVector,
    /// Branch count of the double cover.
    pub branch_count: u64,
    /// Genus of the quotient curve.
    pub quotient_genus: u64,
    /// Genus of the covering curve.
    pub cover_genus: u64,
    /// g − 1 + b/2 = g̃ − g.
    pub prym_dimension: u64,
}

impl PrymSpec {
    pub fn new(cover: CoverSpec, sigma: ModularVector) -> Result<Self> {
        let b = branch_count(&cover, &sigma)?;
        let cover_genus = cover.genus()?;
        let quotient_genus = quotient_genus(cover_genus, b)?;
        let prym_dimension = cover_genus - quotient_genus;
        // Riemann-Hurwitz for the degree-2 quotient, rechecked
        if 2 * cover_genus as i128 - 2 != 2 * (2 * quotient_genus as i128 - 2) + b as i128 {
            return Err(Error::Internal("Riemann-Hurwitz mismatch for the double cover".into()));
        }
        Ok(Self { cover, sigma, branch_count: b, quotient_genus, cover_genus, prym_dimension })
    }
}

fn check_sigma(cover: &CoverSpec, sigma: &ModularVector) -> Result<()> {
    if sigma.modulus() != cover.modulus() || sigma.len() != cover.row_count() {
        return Err(Error::Structure("sigma has the wrong modulus or length".into()));
    }
    if sigma.order() != 2 {
        return Err(Error::Unsupported(format!(
            "sigma {sigma} has order {}, need exactly 2",
            sigma.order()
        )));
    }
    if !cover.group().contains(sigma) {
        return Err(Error::Unsupported(format!(
            "sigma {sigma} is not in the column-generated Galois group"
        )));
    }
    Ok(())
}

/// Number of fixed points of σ on the cover: a fiber point over t_j is
/// σ-fixed exactly when σ lies in the cyclic stabilizer generated by the
/// column l_j, and the fiber over t_j has d/m_j points.
pub fn branch_count(cover: &CoverSpec, sigma: &ModularVector) -> Result<u64> {
    check_sigma(cover, sigma)?;
    let d = cover.group().order() as u64;
    let mut b = 0;
    for col in cover.columns() {
        let order = col.order();
        let mut in_stabilizer = false;
        let mut k = ModularVector::zero(col.modulus(), col.len());
        for _ in 0..order {
            k = k.add(col);
            if &k == sigma {
                in_stabilizer = true;
                break;
            }
        }
        if in_stabilizer {
            b += d / order;
        }
    }
    Ok(b)
}

/// Genus g of the quotient, from 2g̃ − 2 = 2(2g − 2) + b.
pub fn quotient_genus(cover_genus: u64, branch_count: u64) -> Result<u64> {
    let numerator = 2 * cover_genus as i128 + 2 - branch_count as i128;
    if numerator % 4 != 0 || numerator < 0 {
        return Err(Error::Internal(format!(
            "inconsistent double-cover data: genus {cover_genus}, branch count {branch_count}"
        )));
    }
    Ok((numerator / 4) as u64)
}

/// One class with its anti-invariant dimension.
#[derive(Debug, Clone)]
pub struct MinusDimension {
    pub class: CharacterClass,
    /// dim (V₋)_n: equal to d_n when the character takes value −1 on σ,
    /// zero otherwise.
    pub dim: usize,
}

/// Anti-invariant eigenspace dimensions for every class: the character of
/// n takes value −1 on σ exactly when n·σ ≡ N/2 (mod N). On the standard
/// involution (N/2, …, N/2, 0, …, 0) this is the parity of n_1 + ⋯ + n_k;
/// the dot-product form works uniformly for any σ in any subgroup.
pub fn minus_dims(cover: &CoverSpec, sigma: &ModularVector) -> Result<Vec<MinusDimension>> {
    check_sigma(cover, sigma)?;
    let half = cover.modulus() / 2;
    Ok(cover
        .character_classes()?
        .into_iter()
        .map(|class| {
            let anti = class.representative.dot(sigma) == half;
            let dim = if anti { class.dim } else { 0 };
            MinusDimension { class, dim }
        })
        .collect())
}

/// First witness over the anti-invariant dimensions, deterministic order,
/// case ONE preferred. Requires cover genus at least 4.
pub fn prym_witness(cover: &CoverSpec, sigma: &ModularVector) -> Result<Option<Witness>> {
    if cover.genus()? < 4 {
        return Err(Error::Unsupported("theorem hypothesis g̃ >= 4 not met".into()));
    }
    let entries: Vec<(CharacterClass, usize)> =
        minus_dims(cover, sigma)?.into_iter().map(|md| (md.class, md.dim)).collect();
    let (one, two) = find_witnesses(&entries);
    Ok(one.or(two))
}

/// How surjectivity of the multiplication map onto the invariant quadratic
/// differentials was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurjectivityEvidence {
    /// b ≥ 6 branch points force surjectivity.
    #[serde(rename = "B_AT_LEAST_6")]
    BAtLeastSix,
    /// An exact rank computation reached the target dimension r − 3.
    #[serde(rename = "EXACT_RANK_CERTIFIED")]
    ExactRankCertified,
    #[serde(rename = "UNVERIFIED")]
    Unverified,
}

#[derive(Debug, Clone)]
pub struct PrymClassification {
    pub status: Status,
    pub witness: Option<Witness>,
    pub evidence: SurjectivityEvidence,
    /// dim (S²V₋)^G.
    pub sym2_minus_dim: usize,
    /// dim H⁰(K²)^G = r − 3.
    pub target_dim: usize,
    /// (rank, kernel dimension) of the full anti-invariant multiplication
    /// map, when an oracle ran.
    pub certified_rank: Option<(usize, usize)>,
}

/// Exact rank backend for the anti-invariant multiplication map; the
/// implementation lives in [`crate::exact`].
pub trait RankOracle {
    /// Returns (rank, kernel dimension) of m on (S²V₋)^G, certified at
    /// rational specializations of the branch points.
    fn minus_map_rank(&self, cover: &CoverSpec, sigma: &ModularVector) -> Result<(usize, usize)>;
}

/// Classifies the family of Pryms. NOT_TOTALLY_GEODESIC needs a witness
/// plus surjectivity evidence; SHIMURA_CANDIDATE needs the multiplication
/// map to be an isomorphism, certified by an exact rank equal to both the
/// source and the target dimension.
pub fn classify_prym(
    cover: &CoverSpec,
    sigma: &ModularVector,
    oracle: Option<&dyn RankOracle>,
) -> Result<PrymClassification> {
    let rank = match oracle {
        Some(oracle) => Some(oracle.minus_map_rank(cover, sigma)?),
        None => None,
    };
    classify_prym_with_rank(cover, sigma, rank)
}

/// Classification from an already-computed (rank, kernel) pair, so command
/// drivers can reuse their own oracle runs.
pub fn classify_prym_with_rank(
    cover: &CoverSpec,
    sigma: &ModularVector,
    rank: Option<(usize, usize)>,
) -> Result<PrymClassification> {
    let cover_genus = cover.genus()?;
    if cover_genus < 2 {
        return Err(Error::Unsupported("classification needs genus >= 2".into()));
    }
    let b = branch_count(cover, sigma)?;
    let minus = minus_dims(cover, sigma)?;
    let alpha_entries: Vec<(ModularVector, usize)> =
        minus.iter().map(|md| (md.class.alpha.clone(), md.dim)).collect();
    let sym2_minus_dim = sym2_invariant_dim(&alpha_entries);
    let target_dim = cover.column_count() - 3;
    let witness = if cover_genus >= 4 {
        let entries: Vec<(CharacterClass, usize)> =
            minus.into_iter().map(|md| (md.class, md.dim)).collect();
        let (one, two) = find_witnesses(&entries);
        one.or(two)
    } else {
        None
    };
    let evidence = if b >= 6 {
        SurjectivityEvidence::BAtLeastSix
    } else if rank.map(|(r, _)| r == target_dim).unwrap_or(false) {
        SurjectivityEvidence::ExactRankCertified
    } else {
        SurjectivityEvidence::Unverified
    };
    let status = if witness.is_some() && evidence != SurjectivityEvidence::Unverified {
        Status::NotTotallyGeodesic
    } else if witness.is_none()
        && sym2_minus_dim == target_dim
        && rank.map(|(r, _)| r == target_dim).unwrap_or(false)
    {
        Status::ShimuraCandidate
    } else {
        Status::Undetermined
    };
    Ok(PrymClassification {
        status,
        witness,
        evidence,
        sym2_minus_dim,
        target_dim,
        certified_rank: rank,
    })
}

/// Bounds on r and the cover genus for a totally geodesic family of Pryms
/// over the full group (Z/NZ)^m, N even.
pub fn prym_bound_report(modulus: u64, ambient_dim: usize) -> Result<crate::torelli::BoundReport> {
    if modulus % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "no involution exists for odd modulus {modulus}"
        )));
    }
    let group_order = (modulus as u128)
        .checked_pow(ambient_dim as u32)
        .ok_or_else(|| Error::Unsupported("bound arithmetic overflows u128".into()))?;
    crate::torelli::bound_report(modulus, ambient_dim, group_order, None)
}

/// The standard involution (N/2, …, N/2).
pub fn standard_involution(modulus: u64, dim: usize) -> Result<ModularVector> {
    if modulus % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "no involution exists for odd modulus {modulus}"
        )));
    }
    ModularVector::new(modulus, vec![modulus / 2; dim])
}

/// Optional normalization pass: an automorphism of the Galois group taking
/// σ to the standard involution, when one exists under the cap. On the
/// full group (Z/NZ)^m one always does; proper subgroups may not contain
/// the standard involution at all.
pub fn normalize_sigma(
    cover: &CoverSpec,
    sigma: &ModularVector,
    cap: usize,
) -> Result<Option<modular::Automorphism>> {
    check_sigma(cover, sigma)?;
    let target = standard_involution(cover.modulus(), cover.row_count())?;
    if !cover.group().contains(&target) {
        return Ok(None);
    }
    if sigma == &target {
        return Ok(Some(modular::Automorphism {
            perm: (0..cover.group().order()).collect(),
        }));
    }
    for auto in modular::automorphism_group(cover.group(), cap)? {
        if auto.apply(cover.group(), sigma) == target {
            return Ok(Some(auto));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torelli::WitnessCase;

    fn example1() -> CoverSpec {
        CoverSpec::validate(2, &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![1, 1, 1, 1, 1, 1, 1, 1]])
            .unwrap()
    }

    fn example2() -> CoverSpec {
        CoverSpec::validate(4, &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]])
            .unwrap()
    }

    fn mv(n: u64, e: &[u64]) -> ModularVector {
        ModularVector::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn branch_counts() {
        assert_eq!(branch_count(&example1(), &mv(2, &[1, 1])).unwrap(), 8);
        assert_eq!(branch_count(&example2(), &mv(4, &[2, 2])).unwrap(), 0);
        let hyper = CoverSpec::validate(2, &[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(branch_count(&hyper, &mv(2, &[1])).unwrap(), 4);
    }

    #[test]
    fn sigma_preconditions() {
        assert!(matches!(
            branch_count(&example2(), &mv(4, &[1, 1])),
            Err(Error::Unsupported(_))
        ));
        // (2,0) has order 2 and sits inside the group: it fixes all four
        // points of each fiber over t_1..t_4
        assert_eq!(branch_count(&example2(), &mv(4, &[2, 0])).unwrap(), 16);
        // order-2 element outside a proper subgroup
        let sub = CoverSpec::validate(
            4,
            &[vec![2, 2, 2, 2, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
        )
        .unwrap();
        assert!(matches!(
            branch_count(&sub, &mv(4, &[2, 1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn quotient_genus_values() {
        assert_eq!(quotient_genus(5, 8).unwrap(), 1);
        assert_eq!(quotient_genus(33, 0).unwrap(), 17);
        assert_eq!(quotient_genus(2, 6).unwrap(), 0);
        assert!(matches!(quotient_genus(5, 7), Err(Error::Internal(_))));
    }

    #[test]
    fn prym_spec_dimensions() {
        let spec = PrymSpec::new(example1(), mv(2, &[1, 1])).unwrap();
        assert_eq!(spec.branch_count, 8);
        assert_eq!(spec.quotient_genus, 1);
        assert_eq!(spec.prym_dimension, 4);

        let spec = PrymSpec::new(example2(), mv(4, &[2, 2])).unwrap();
        assert_eq!(spec.branch_count, 0);
        assert_eq!(spec.quotient_genus, 17);
        assert_eq!(spec.prym_dimension, 16);
    }

    fn minus_of(cover: &CoverSpec, sigma: &ModularVector, rep: &[u64]) -> usize {
        minus_dims(cover, sigma)
            .unwrap()
            .into_iter()
            .find(|md| md.class.representative == mv(cover.modulus(), rep))
            .expect("class")
            .dim
    }

    #[test]
    fn minus_dims_of_example1() {
        let cover = example1();
        let sigma = mv(2, &[1, 1]);
        assert_eq!(minus_of(&cover, &sigma, &[1, 0]), 1);
        assert_eq!(minus_of(&cover, &sigma, &[0, 1]), 3);
        assert_eq!(minus_of(&cover, &sigma, &[1, 1]), 0);
    }

    #[test]
    fn minus_dims_of_example2() {
        let cover = example2();
        let sigma = mv(4, &[2, 2]);
        assert_eq!(minus_of(&cover, &sigma, &[1, 2]), 4);
        assert_eq!(minus_of(&cover, &sigma, &[3, 2]), 2);
        assert_eq!(minus_of(&cover, &sigma, &[1, 0]), 2);
        assert_eq!(minus_of(&cover, &sigma, &[3, 0]), 0);
        assert_eq!(minus_of(&cover, &sigma, &[2, 2]), 0);
    }

    #[test]
    fn minus_dims_sum_to_prym_dimension() {
        for (cover, sigma) in [(example1(), mv(2, &[1, 1])), (example2(), mv(4, &[2, 2]))] {
            let spec = PrymSpec::new(cover.clone(), sigma.clone()).unwrap();
            let total: usize = minus_dims(&cover, &sigma).unwrap().iter().map(|md| md.dim).sum();
            assert_eq!(total as u64, spec.prym_dimension);
        }
    }

    #[test]
    fn parity_rule_matches_dot_product_on_standard_sigma() {
        // sigma = (N/2, N/2, 0): anti-invariance is the parity of n_1 + n_2
        let cover = CoverSpec::validate(
            4,
            &[
                vec![1, 1, 1, 1, 0, 0, 0, 0],
                vec![1, 1, 1, 1, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap();
        let sigma = mv(4, &[2, 2, 0]);
        assert!(cover.group().contains(&sigma));
        for md in minus_dims(&cover, &sigma).unwrap() {
            let n = md.class.representative.entries();
            let expected = if (n[0] + n[1]) % 2 == 1 { md.class.dim } else { 0 };
            assert_eq!(md.dim, expected);
        }
    }

    #[test]
    fn witnesses_of_the_reference_examples() {
        let w = prym_witness(&example1(), &mv(2, &[1, 1])).unwrap().expect("witness");
        assert_eq!(w.case, WitnessCase::Two);
        assert_eq!(w.class.representative, mv(2, &[0, 1]));
        assert_eq!(w.dim, 3);

        let w = prym_witness(&example2(), &mv(4, &[2, 2])).unwrap().expect("witness");
        assert_eq!(w.case, WitnessCase::One);
        assert_eq!(w.class.representative, mv(4, &[1, 2]));
        assert_eq!(w.dim, 4);
        assert_eq!(w.paired.unwrap().representative, mv(4, &[3, 2]));
        assert_eq!(w.paired_dim, Some(2));
    }

    #[test]
    fn witness_search_needs_genus_4() {
        let cover = CoverSpec::validate(2, &[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(cover.genus().unwrap(), 1);
        assert!(matches!(
            prym_witness(&cover, &mv(2, &[1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn witness_can_be_absent() {
        // genus 5, but no anti-invariant class reaches the thresholds
        let cover = CoverSpec::validate(
            2,
            &[vec![1, 1, 1, 1, 0, 0, 1, 1], vec![0, 0, 0, 0, 1, 1, 1, 1]],
        )
        .unwrap();
        assert_eq!(cover.genus().unwrap(), 5);
        let sigma = mv(2, &[1, 1]);
        assert!(prym_witness(&cover, &sigma).unwrap().is_none());
    }

    #[test]
    fn classify_with_b_at_least_6() {
        let c = classify_prym(&example1(), &mv(2, &[1, 1]), None).unwrap();
        assert_eq!(c.status, Status::NotTotallyGeodesic);
        assert_eq!(c.evidence, SurjectivityEvidence::BAtLeastSix);
        assert_eq!(c.sym2_minus_dim, 7);
        assert_eq!(c.target_dim, 5);
    }

    #[test]
    fn classify_unverified_without_oracle() {
        let c = classify_prym(&example2(), &mv(4, &[2, 2]), None).unwrap();
        assert_eq!(c.status, Status::Undetermined);
        assert_eq!(c.evidence, SurjectivityEvidence::Unverified);
        assert_eq!(c.sym2_minus_dim, 16);
    }

    #[test]
    fn prym_bounds() {
        let b = prym_bound_report(2, 4).unwrap();
        assert_eq!((b.r_max, b.genus_max), (24, 81));
        let b = prym_bound_report(4, 2).unwrap();
        assert_eq!((b.r_max, b.genus_max), (16, 81));
        assert!(matches!(prym_bound_report(3, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sigma_normalization_on_the_full_group() {
        let cover = example2();
        let sigma = mv(4, &[2, 0]);
        let auto = normalize_sigma(&cover, &sigma, 256).unwrap().expect("automorphism");
        assert_eq!(auto.apply(cover.group(), &sigma), mv(4, &[2, 2]));
    }
}
