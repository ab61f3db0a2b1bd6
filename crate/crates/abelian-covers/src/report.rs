//! JSON documents and reports behind the command-line interface. A cover is
//! described by a single document (matrix rows plus optional involution,
//! branch-point values and seed); every number in a report is reproducible
//! from the echoed input and the recorded seed.

use num::{BigInt, BigRational, One};
use serde::{Deserialize, Serialize};

use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::exact::{
    self, kernel_basis, mult_map_rank, PairSelection, SpecializationAssignment,
    DEFAULT_SEED, DEFAULT_SPECIALIZATIONS,
};
use crate::modular::ModularVector;
use crate::prym;
use crate::torelli::{self, Status, Witness};

/// An exact rational in a document or report: serialized as an integer when
/// integral, as a "p/q" string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalValue(pub BigRational);

impl Serialize for RationalValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Ok(v) = i64::try_from(self.0.numer().clone()) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(RationalValue(BigRational::from(BigInt::from(v)))),
            Raw::Str(s) => parse_rational(&s)
                .map(RationalValue)
                .map_err(|e| serde::de::Error::custom(e.to_string())),
        }
    }
}

/// Parses "p", "-p" or "p/q".
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Structure(format!("malformed rational: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from(parse_int(s)?)),
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == BigInt::from(0) {
                return Err(Error::Structure(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, denom))
        }
    }
}

/// Input document for `analyze` and `prym`: the monodromy matrix in
/// row-major order plus the optional involution, branch-point values, seed
/// and specialization count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverDocument {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub rows: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<RationalValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub specializations: Option<u32>,
}

impl CoverDocument {
    pub fn new(modulus: u64, rows: Vec<Vec<i64>>) -> Self {
        Self { modulus, rows, sigma: None, t: None, seed: None, specializations: None }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json)
            .map_err(|e| Error::Structure(format!("malformed document: {e}")))
    }

    /// Fills in defaults so the echoed input fully determines the run.
    pub fn normalized(&self) -> Self {
        let mut doc = self.clone();
        doc.seed = Some(doc.seed.unwrap_or(DEFAULT_SEED));
        doc.specializations = Some(doc.specializations.unwrap_or(DEFAULT_SPECIALIZATIONS));
        doc
    }

    pub fn cover(&self) -> Result<CoverSpec> {
        CoverSpec::validate(self.modulus, &self.rows)
    }

    pub fn sigma_vector(&self) -> Result<Option<ModularVector>> {
        self.sigma
            .as_ref()
            .map(|s| ModularVector::from_signed(self.modulus, s))
            .transpose()
    }

    fn assignment(&self, r: usize, seed: u64) -> Result<SpecializationAssignment> {
        match &self.t {
            Some(values) => {
                if values.len() != r {
                    return Err(Error::Structure(format!(
                        "t has {} values, the cover has {} branch points",
                        values.len(),
                        r
                    )));
                }
                SpecializationAssignment::new(values.iter().map(|v| v.0.clone()).collect())
            }
            None => Ok(SpecializationAssignment::seeded(r, seed)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharRowInfo {
    pub representative: Vec<u64>,
    pub alpha: Vec<u64>,
    pub dimension: usize,
    pub order: u64,
    pub negative: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessInfo {
    pub case: torelli::WitnessCase,
    pub representative: Vec<u64>,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paired_representative: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paired_dimension: Option<usize>,
}

impl From<&Witness> for WitnessInfo {
    fn from(w: &Witness) -> Self {
        Self {
            case: w.case,
            representative: w.class.representative.entries().to_vec(),
            dimension: w.dim,
            paired_representative: w
                .paired
                .as_ref()
                .map(|c| c.representative.entries().to_vec()),
            paired_dimension: w.paired_dim,
        }
    }
}

/// Full Torelli-side report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub input: CoverDocument,
    pub genus: u64,
    pub group_order: usize,
    pub char_table: Vec<CharRowInfo>,
    pub sym2_invariant_dim: usize,
    pub invariant_quadratic_dim: usize,
    pub condition_star: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_case_one: Option<WitnessInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_case_two: Option<WitnessInfo>,
    pub classification: Status,
    pub bounds: torelli::BoundReport,
}

fn char_table_info(cover: &CoverSpec) -> Result<Vec<CharRowInfo>> {
    Ok(cover
        .char_table()?
        .into_iter()
        .map(|row| CharRowInfo {
            representative: row.class.representative.entries().to_vec(),
            alpha: row.class.alpha.entries().to_vec(),
            dimension: row.class.dim,
            order: row.class.order,
            negative: row.negative.entries().to_vec(),
        })
        .collect())
}

/// Runs the Torelli-side analysis of a document.
pub fn cmd_analyze(doc: &CoverDocument) -> Result<AnalyzeReport> {
    let input = doc.normalized();
    let cover = input.cover()?;
    let genus = cover.genus()?;
    let classification = torelli::classify_torelli(&cover)?;
    let (one, two) = {
        let entries: Vec<_> = cover
            .character_classes()?
            .into_iter()
            .map(|c| {
                let d = c.dim;
                (c, d)
            })
            .collect();
        if genus >= 4 {
            torelli::find_witnesses(&entries)
        } else {
            (None, None)
        }
    };
    let group_order = cover.group().order();
    let prime = if cover.modulus() >= 3
        && (2..cover.modulus()).all(|k| cover.modulus() % k != 0)
        && group_order as u128 == (cover.modulus() as u128).pow(cover.row_count() as u32)
    {
        Some(cover.modulus())
    } else {
        None
    };
    let bounds =
        torelli::bound_report(cover.modulus(), cover.row_count(), group_order as u128, prime)?;
    Ok(AnalyzeReport {
        char_table: char_table_info(&cover)?,
        genus,
        group_order,
        sym2_invariant_dim: classification.sym2_dim,
        invariant_quadratic_dim: classification.quadratic_dim,
        condition_star: classification.sym2_dim == classification.quadratic_dim,
        witness_case_one: one.as_ref().map(WitnessInfo::from),
        witness_case_two: two.as_ref().map(WitnessInfo::from),
        classification: classification.status,
        bounds,
        input,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinusDimInfo {
    pub representative: Vec<u64>,
    pub dimension: usize,
    pub minus_dimension: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttemptInfo {
    pub specialization: Vec<RationalValue>,
    pub rank: usize,
    pub kernel_dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultMapInfo {
    pub pairs: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub attempts: Vec<AttemptInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormInfo {
    pub index: usize,
    pub representative: Vec<u64>,
    pub nu: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricTermInfo {
    pub coeff: RationalValue,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricInfo {
    pub terms: Vec<QuadricTermInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelInfo {
    pub forms: Vec<FormInfo>,
    pub pairs: Vec<(usize, usize)>,
    pub quadrics: Vec<QuadricInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockInfo {
    pub representative: Vec<u64>,
    pub paired_representative: Vec<u64>,
    pub pairs: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// Full Prym-side report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrymReport {
    pub input: CoverDocument,
    pub cover_genus: u64,
    pub branch_count: u64,
    pub quotient_genus: u64,
    pub prym_dimension: u64,
    pub group_order: usize,
    pub minus_dims: Vec<MinusDimInfo>,
    pub sym2_minus_dim: usize,
    pub target_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessInfo>,
    pub multiplication_map: MultMapInfo,
    /// Rank of the restriction to the witness block, for a case-ONE witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_block: Option<BlockInfo>,
    pub kernel_basis: KernelInfo,
    pub surjectivity: prym::SurjectivityEvidence,
    pub classification: Status,
}

/// Runs the Prym-side analysis of a document with an involution.
pub fn cmd_prym(doc: &CoverDocument) -> Result<PrymReport> {
    let input = doc.normalized();
    let cover = input.cover()?;
    let sigma = input
        .sigma_vector()?
        .ok_or_else(|| Error::Structure("prym analysis needs a sigma field".into()))?;
    let spec = prym::PrymSpec::new(cover.clone(), sigma.clone())?;
    let minus = prym::minus_dims(&cover, &sigma)?;
    let minus_info: Vec<MinusDimInfo> = minus
        .iter()
        .map(|md| MinusDimInfo {
            representative: md.class.representative.entries().to_vec(),
            dimension: md.class.dim,
            minus_dimension: md.dim,
        })
        .collect();

    let seed = input.seed.unwrap_or(DEFAULT_SEED);
    let attempts_wanted = if input.t.is_some() {
        1
    } else {
        input.specializations.unwrap_or(DEFAULT_SPECIALIZATIONS).max(1)
    };
    let selection = PairSelection::MinusInvariant { sigma: sigma.clone() };
    let r = cover.column_count();
    let target_dim = r - 3;
    let mut attempts = Vec::new();
    let mut best: Option<(usize, exact::RankKernel, SpecializationAssignment)> = None;
    for k in 0..attempts_wanted {
        let t = input.assignment(r, seed + k as u64)?;
        let rk = mult_map_rank(&cover, &selection, &t)?;
        attempts.push(AttemptInfo {
            specialization: t.values().iter().cloned().map(RationalValue).collect(),
            rank: rk.rank,
            kernel_dim: rk.kernel_dim,
        });
        if best.as_ref().map(|(_, b, _)| rk.rank > b.rank).unwrap_or(true) {
            best = Some((k as usize, rk, t));
        }
    }
    let (_, best_rank, best_t) = best.expect("at least one attempt");

    let kb = kernel_basis(&cover, &selection, &best_t)?;
    let kernel_info = KernelInfo {
        forms: kb
            .forms
            .iter()
            .enumerate()
            .map(|(index, f)| FormInfo {
                index,
                representative: f.representative.entries().to_vec(),
                nu: f.nu,
            })
            .collect(),
        pairs: kb.pairs.clone(),
        quadrics: kb
            .quadrics
            .iter()
            .map(|q| QuadricInfo {
                terms: q
                    .terms()
                    .iter()
                    .map(|t| QuadricTermInfo {
                        coeff: RationalValue(t.coeff.clone()),
                        a: t.a,
                        b: t.b,
                    })
                    .collect(),
            })
            .collect(),
    };

    let classification =
        prym::classify_prym_with_rank(&cover, &sigma, Some((best_rank.rank, best_rank.kernel_dim)))?;
    let restricted_block = match &classification.witness {
        Some(w) if w.case == torelli::WitnessCase::One => {
            let paired = w.paired.as_ref().expect("case ONE stores the pair");
            let block = PairSelection::Block {
                alpha: w.class.alpha.clone(),
                paired_alpha: paired.alpha.clone(),
            };
            let rk = mult_map_rank(&cover, &block, &best_t)?;
            Some(BlockInfo {
                representative: w.class.representative.entries().to_vec(),
                paired_representative: paired.representative.entries().to_vec(),
                pairs: rk.pairs,
                rank: rk.rank,
                kernel_dim: rk.kernel_dim,
            })
        }
        _ => None,
    };

    Ok(PrymReport {
        cover_genus: spec.cover_genus,
        branch_count: spec.branch_count,
        quotient_genus: spec.quotient_genus,
        prym_dimension: spec.prym_dimension,
        group_order: cover.group().order(),
        minus_dims: minus_info,
        sym2_minus_dim: classification.sym2_minus_dim,
        target_dim,
        witness: classification.witness.as_ref().map(WitnessInfo::from),
        multiplication_map: MultMapInfo {
            pairs: best_rank.pairs,
            rank: best_rank.rank,
            kernel_dim: best_rank.kernel_dim,
            attempts,
        },
        restricted_block,
        kernel_basis: kernel_info,
        surjectivity: classification.evidence,
        classification: classification.status,
        input,
    })
}

/// Output encodings offered by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn join(values: &[u64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn render_analyze(report: &AnalyzeReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut out = String::from("representative,alpha,dimension,order,negative\n");
            for row in &report.char_table {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    join(&row.representative),
                    join(&row.alpha),
                    row.dimension,
                    row.order,
                    join(&row.negative)
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "genus {}  group order {}  r {}\n",
                report.genus,
                report.group_order,
                report.input.rows.first().map(|r| r.len()).unwrap_or(0)
            ));
            out.push_str(&format!(
                "dim (S^2 V)^G = {}  dim H^0(K^2)^G = {}  equality: {}\n",
                report.sym2_invariant_dim, report.invariant_quadratic_dim, report.condition_star
            ));
            for (label, w) in [
                ("case ONE", &report.witness_case_one),
                ("case TWO", &report.witness_case_two),
            ] {
                if let Some(w) = w {
                    out.push_str(&format!(
                        "witness {label}: n = ({}), d = {}\n",
                        join(&w.representative),
                        w.dimension
                    ));
                }
            }
            out.push_str(&format!("classification: {:?}\n", report.classification));
            out
        }
    }
}

pub fn render_prym(report: &PrymReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut out = String::from("representative,dimension,minus_dimension\n");
            for row in &report.minus_dims {
                out.push_str(&format!(
                    "{},{},{}\n",
                    join(&row.representative),
                    row.dimension,
                    row.minus_dimension
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "cover genus {}  branch count {}  quotient genus {}  prym dim {}\n",
                report.cover_genus,
                report.branch_count,
                report.quotient_genus,
                report.prym_dimension
            ));
            out.push_str(&format!(
                "dim (S^2 V_-)^G = {}  target {}  rank {}  kernel {}\n",
                report.sym2_minus_dim,
                report.target_dim,
                report.multiplication_map.rank,
                report.multiplication_map.kernel_dim
            ));
            out.push_str(&format!(
                "surjectivity: {:?}  classification: {:?}\n",
                report.surjectivity, report.classification
            ));
            out
        }
    }
}
