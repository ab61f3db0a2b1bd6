//! Decides the sufficient condition for a family of abelian covers to yield
//! a Shimura (hence totally geodesic) subvariety — equality of the invariant
//! symmetric-square and quadratic-differential dimensions — and searches for
//! the eigenspace-dimension witnesses that rule totally geodesic out.

use serde::{Deserialize, Serialize};

use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::modular::{CharacterClass, ModularVector};

/// Which of the two witness shapes applies.
///
/// Case ONE: a character n with n ≠ −n, d_n ≥ 2 and d_{−n} ≥ 2.
/// Case TWO: a character of order 2 with d_n ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessCase {
    #[serde(rename = "ONE")]
    One,
    #[serde(rename = "TWO")]
    Two,
}

/// A character class whose eigenspace dimensions rule out totally geodesic
/// (for genus at least 4).
#[derive(Debug, Clone)]
pub struct Witness {
    pub case: WitnessCase,
    /// The witnessing class, with the dimension that qualified it.
    pub class: CharacterClass,
    pub dim: usize,
    /// The class of the opposite character, for case ONE.
    pub paired: Option<CharacterClass>,
    pub paired_dim: Option<usize>,
}

/// Decided status of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "SHIMURA_CANDIDATE")]
    ShimuraCandidate,
    #[serde(rename = "NOT_TOTALLY_GEODESIC")]
    NotTotallyGeodesic,
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub status: Status,
    pub witness: Option<Witness>,
    /// dim (S²H⁰(K))^G.
    pub sym2_dim: usize,
    /// dim H⁰(K²)^G = r − 3.
    pub quadratic_dim: usize,
}

/// dim of the G-invariant part of S²V from an eigenspace dimension table.
///
/// A product V_n ⊙ V_{n'} is invariant exactly when the characters cancel,
/// so the dimension is Σ d_n·d_{−n} over unordered pairs {n, −n} with
/// n ≠ −n, plus Σ d_n(d_n+1)/2 over self-paired classes.
pub fn sym2_invariant_dim(entries: &[(ModularVector, usize)]) -> usize {
    let dims: std::collections::BTreeMap<&ModularVector, usize> =
        entries.iter().map(|(alpha, d)| (alpha, *d)).collect();
    let mut total = 0;
    for (alpha, d) in entries {
        if *d == 0 {
            continue;
        }
        let neg = alpha.neg();
        if neg == *alpha {
            total += d * (d + 1) / 2;
        } else if *alpha < neg {
            total += d * dims.get(&neg).copied().unwrap_or(0);
        }
    }
    total
}

/// Table of (alpha, d_n) pairs for a cover.
pub fn full_dim_entries(cover: &CoverSpec) -> Result<Vec<(ModularVector, usize)>> {
    Ok(cover
        .character_classes()?
        .into_iter()
        .map(|c| (c.alpha, c.dim))
        .collect())
}

/// dim H⁰(K²)^G = r − 3, the tangent dimension of the family.
pub fn invariant_quadratic_dim(cover: &CoverSpec) -> Result<usize> {
    if cover.genus()? < 2 {
        return Err(Error::Unsupported(
            "invariant quadratic differentials need genus >= 2".into(),
        ));
    }
    Ok(cover.column_count() - 3)
}

/// The sufficient condition for a Shimura subvariety:
/// dim (S²H⁰(K))^G = dim H⁰(K²)^G.
pub fn condition_star(cover: &CoverSpec) -> Result<bool> {
    let quadratic = invariant_quadratic_dim(cover)?;
    let sym2 = sym2_invariant_dim(&full_dim_entries(cover)?);
    Ok(sym2 == quadratic)
}

/// Structural witness search over (class, effective dimension) entries,
/// scanned in the given order. Returns the first qualifying class for each
/// case. Shared with the Prym side, where the dimensions are those of the
/// anti-invariant eigenspaces.
pub fn find_witnesses(
    entries: &[(CharacterClass, usize)],
) -> (Option<Witness>, Option<Witness>) {
    let dims: std::collections::BTreeMap<ModularVector, (usize, usize)> = entries
        .iter()
        .enumerate()
        .map(|(i, (c, d))| (c.alpha.clone(), (i, *d)))
        .collect();
    let mut case_one = None;
    let mut case_two = None;
    for (class, dim) in entries {
        if case_one.is_none() && class.order > 2 && *dim >= 2 {
            if let Some(&(neg_idx, neg_dim)) = dims.get(&class.negated_alpha()) {
                if neg_dim >= 2 {
                    case_one = Some(Witness {
                        case: WitnessCase::One,
                        class: class.clone(),
                        dim: *dim,
                        paired: Some(entries[neg_idx].0.clone()),
                        paired_dim: Some(neg_dim),
                    });
                }
            }
        }
        if case_two.is_none() && class.order == 2 && *dim >= 3 {
            case_two = Some(Witness {
                case: WitnessCase::Two,
                class: class.clone(),
                dim: *dim,
                paired: None,
                paired_dim: None,
            });
        }
        if case_one.is_some() && case_two.is_some() {
            break;
        }
    }
    (case_one, case_two)
}

/// First witness in deterministic class order, case ONE preferred.
/// The theorems assume genus at least 4.
pub fn torelli_witness(cover: &CoverSpec) -> Result<Option<Witness>> {
    if cover.genus()? < 4 {
        return Err(Error::Unsupported("theorem hypothesis g >= 4 not met".into()));
    }
    let entries: Vec<(CharacterClass, usize)> = cover
        .character_classes()?
        .into_iter()
        .map(|c| {
            let d = c.dim;
            (c, d)
        })
        .collect();
    let (one, two) = find_witnesses(&entries);
    Ok(one.or(two))
}

/// Classifies a family on the Torelli side. NOT_TOTALLY_GEODESIC requires a
/// witness and genus at least 4; SHIMURA_CANDIDATE is the dimension
/// equality; the two can never hold together.
pub fn classify_torelli(cover: &CoverSpec) -> Result<Classification> {
    let genus = cover.genus()?;
    if genus < 2 {
        return Err(Error::Unsupported("classification needs genus >= 2".into()));
    }
    let quadratic_dim = cover.column_count() - 3;
    let classes = cover.character_classes()?;
    let alpha_entries: Vec<(ModularVector, usize)> =
        classes.iter().map(|c| (c.alpha.clone(), c.dim)).collect();
    let sym2_dim = sym2_invariant_dim(&alpha_entries);
    let star = sym2_dim == quadratic_dim;
    let witness = if genus >= 4 {
        let entries: Vec<(CharacterClass, usize)> =
            classes.into_iter().map(|c| (c.clone(), c.dim)).collect();
        let (one, two) = find_witnesses(&entries);
        one.or(two)
    } else {
        None
    };
    if star && witness.is_some() {
        return Err(Error::Internal(
            "witnessed family satisfies the Shimura sufficient condition".into(),
        ));
    }
    let status = if witness.is_some() {
        Status::NotTotallyGeodesic
    } else if star {
        Status::ShimuraCandidate
    } else {
        Status::Undetermined
    };
    Ok(Classification { status, witness, sym2_dim, quadratic_dim })
}

/// Which bound family a report was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundFamily {
    /// G = (Z/2Z)^m.
    #[serde(rename = "ELEMENTARY_2")]
    ElementaryTwo,
    /// G ⊆ (Z/NZ)^m, N ≥ 3.
    #[serde(rename = "GENERAL")]
    General,
    /// G = (Z/pZ)^m, p an odd prime.
    #[serde(rename = "ODD_PRIME")]
    OddPrime,
}

/// Numeric bounds a totally geodesic family must satisfy.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub modulus: u64,
    pub ambient_dim: usize,
    pub group_order: u128,
    pub r_max: u128,
    pub genus_max: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u128>,
}

fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Unsupported("bound arithmetic overflows u128".into()))
}

/// Bounds on r and the genus for a totally geodesic family over
/// G ⊆ (Z/NZ)^m of order d. Passing a prime p (with N = p ≥ 3 and
/// G = (Z/pZ)^m) switches to the sharper elementary-p-group bounds.
pub fn bound_report(
    modulus: u64,
    ambient_dim: usize,
    group_order: u128,
    prime: Option<u64>,
) -> Result<BoundReport> {
    if modulus < 2 {
        return Err(Error::Structure(format!("modulus must be >= 2, got {modulus}")));
    }
    let n = modulus as u128;
    let m = ambient_dim as u128;
    if let Some(p) = prime {
        if p < 3 || p as u128 != n {
            return Err(Error::Unsupported(
                "prime bounds need N = p an odd prime".into(),
            ));
        }
        if !(2..p).all(|k| p % k != 0) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        let p = p as u128;
        // m <= 2p, r <= 4p^2, g <= 1 + p^(2p) (2p(p-1) - 1)
        let m_max = 2 * p;
        let r_max = 4 * p * p;
        let genus_max = 1 + checked_pow(p, (2 * p) as u32)? * (2 * p * (p - 1) - 1);
        return Ok(BoundReport {
            family: BoundFamily::OddPrime,
            modulus,
            ambient_dim,
            group_order,
            r_max,
            genus_max,
            m_max: Some(m_max),
        });
    }
    if modulus == 2 {
        // r <= 6m, g <= 1 + 2^(m-1)(3m-2), and m <= 6 outright
        let r_max = 6 * m;
        let genus_max = 1 + checked_pow(2, ambient_dim.saturating_sub(1) as u32)? * (3 * m - 2);
        Ok(BoundReport {
            family: BoundFamily::ElementaryTwo,
            modulus,
            ambient_dim,
            group_order,
            r_max,
            genus_max,
            m_max: Some(6),
        })
    } else {
        // r <= 2Nm, g <= 1 + d(m(N-1) - 1)
        let r_max = 2 * n * m;
        let genus_max = 1 + group_order * (m * (n - 1) - 1);
        Ok(BoundReport {
            family: BoundFamily::General,
            modulus,
            ambient_dim,
            group_order,
            r_max,
            genus_max,
            m_max: None,
        })
    }
}
