//! Exact rational-arithmetic backend: products of basis forms at rational
//! branch points, rank and kernel of the (restricted) multiplication map,
//! and the Wronskian non-vanishing certificate.
//!
//! Everything here is exact: branch points are specialized to distinct
//! rationals and all linear algebra runs over arbitrary-precision
//! rationals. Ranks computed at a specialization bound the generic rank
//! from below (semicontinuity), so a full-rank result is a sound
//! surjectivity certificate; kernel dimensions can only shrink toward the
//! generic value as more specializations are tried.

pub mod matrix;
pub mod poly;

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{CoverSpec, FormSpec};
use crate::error::{Error, Result};
use crate::modular::ModularVector;
use crate::prym::RankOracle;
use matrix::{reduced_echelon, RationalMatrix};
use poly::Poly;

/// Default seed for branch-point specialization when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Default number of independent specializations tried by the rank oracle.
pub const DEFAULT_SPECIALIZATIONS: u32 = 3;

/// Distinct rational values for the branch points t_1, …, t_r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationAssignment {
    values: Vec<BigRational>,
}

impl SpecializationAssignment {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if values[i] == values[j] {
                    return Err(Error::Unsupported(format!(
                        "branch points must be pairwise distinct: t_{} = t_{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { values })
    }

    /// Seeded random assignment: numerators in [−10⁴, 10⁴], denominators in
    /// [1, 64], rejection on collision.
    pub fn seeded(r: usize, seed: u64) -> Self {
        Self::seeded_with_pins(r, seed, &[]).expect("pins are empty")
    }

    /// Seeded assignment with some values pinned (index, value). Pins must
    /// be distinct; random draws avoid them.
    pub fn seeded_with_pins(r: usize, seed: u64, pins: &[(usize, BigRational)]) -> Result<Self> {
        let mut values: Vec<Option<BigRational>> = vec![None; r];
        for (idx, v) in pins {
            if *idx >= r {
                return Err(Error::Structure(format!("pin index {idx} out of range")));
            }
            if values.iter().flatten().any(|w| w == v) {
                return Err(Error::Unsupported("pinned branch points collide".into()));
            }
            values[*idx] = Some(v.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut taken: Vec<BigRational> = values.iter().flatten().cloned().collect();
        for slot in values.iter_mut() {
            if slot.is_some() {
                continue;
            }
            loop {
                let numer: i64 = rng.gen_range(-10_000..=10_000);
                let denom: i64 = rng.gen_range(1..=64);
                let v = BigRational::new(BigInt::from(numer), BigInt::from(denom));
                if !taken.contains(&v) {
                    taken.push(v.clone());
                    *slot = Some(v);
                    break;
                }
            }
        }
        Ok(Self { values: values.into_iter().map(|v| v.expect("filled")).collect() })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// A reduced fraction of polynomials: denominator monic and coprime to the
/// numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionRep {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunctionRep {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Internal("zero denominator in rational function".into()));
        }
        let mut out = Self { numerator, denominator };
        out.reduce();
        Ok(out)
    }

    pub fn zero() -> Self {
        Self { numerator: Poly::zero(), denominator: Poly::one() }
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator = Poly::one();
            return;
        }
        let g = self.numerator.gcd(&self.denominator);
        if g.degree().unwrap_or(0) > 0 {
            self.numerator = self.numerator.div_rem(&g).0;
            self.denominator = self.denominator.div_rem(&g).0;
        }
        let lead = self.denominator.leading().expect("nonzero").clone();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            self.numerator = self.numerator.scale(&inv);
            self.denominator = self.denominator.scale(&inv);
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let numerator = self
            .numerator
            .mul(&other.denominator)
            .add(&other.numerator.mul(&self.denominator));
        let denominator = self.denominator.mul(&other.denominator);
        Self::new(numerator, denominator).expect("nonzero denominator")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
        .expect("nonzero denominator")
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { numerator: self.numerator.neg(), denominator: self.denominator.clone() }
    }
}

impl std::fmt::Display for RationalFunctionRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denominator == Poly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Integer exponent data of a product of two basis forms with canceling
/// characters: f·g = x^{ν_f+ν_g} ∏ (x − t_j)^{E_j} (dx)², with the w-powers
/// eliminated through w_i^N = ∏ (x − t_j)^{r̃_ij}.
#[derive(Debug, Clone)]
struct ProductExponents {
    x_power: usize,
    t_exponents: Vec<i64>,
}

fn product_exponents(f: &FormSpec, g: &FormSpec) -> Result<ProductExponents> {
    let n = f.representative.modulus();
    if g.representative.modulus() != n || f.exponents.len() != g.exponents.len() {
        return Err(Error::Structure("forms come from different covers".into()));
    }
    if !f.alpha.add(&g.alpha).is_zero() {
        return Err(Error::NonInvariantProduct(format!(
            "characters {} and {} do not cancel",
            f.alpha, g.alpha
        )));
    }
    let n = n as i64;
    let t_exponents = f
        .exponents
        .iter()
        .zip(&g.exponents)
        .zip(f.alpha_bar.iter().zip(&g.alpha_bar))
        .map(|((ef, eg), (af, ag))| {
            let total = af + ag;
            if total % n != 0 {
                return Err(Error::Internal("non-integral product exponent".into()));
            }
            Ok(ef + eg + total / n)
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(ProductExponents { x_power: f.nu + g.nu, t_exponents })
}

/// The coefficient function of the invariant quadratic differential f·g at
/// a specialization of the branch points.
pub fn product_polynomial(
    f: &FormSpec,
    g: &FormSpec,
    t: &SpecializationAssignment,
) -> Result<RationalFunctionRep> {
    let exps = product_exponents(f, g)?;
    if t.len() != exps.t_exponents.len() {
        return Err(Error::Structure(format!(
            "specialization has {} values, cover has {} branch points",
            t.len(),
            exps.t_exponents.len()
        )));
    }
    let mut numerator = Poly::monomial(exps.x_power);
    let mut denominator = Poly::one();
    for (tj, &e) in t.values().iter().zip(&exps.t_exponents) {
        if e > 0 {
            numerator = numerator.mul(&Poly::linear_from_root(tj).pow(e as usize));
        } else if e < 0 {
            denominator = denominator.mul(&Poly::linear_from_root(tj).pow((-e) as usize));
        }
    }
    RationalFunctionRep::new(numerator, denominator)
}

/// Which symmetric products enter a rank or kernel computation.
#[derive(Debug, Clone)]
pub enum PairSelection {
    /// All invariant products over the full character table: (S²V)^G.
    FullInvariant,
    /// Products of anti-invariant eigenspaces for the involution: (S²V₋)^G.
    MinusInvariant { sigma: ModularVector },
    /// The products of one eigenspace with its opposite: V_n ⊗ V_{−n}
    /// (symmetric pairs within V_n when n = −n). Classes are named by their
    /// alpha keys.
    Block { alpha: ModularVector, paired_alpha: ModularVector },
}

/// The ordered basis of an invariant subspace of S²V: a registry of forms
/// and the list of index pairs (a ≤ b) spanning it.
#[derive(Debug, Clone)]
pub struct SymmetricBasis {
    pub forms: Vec<FormSpec>,
    pub pairs: Vec<(usize, usize)>,
}

/// Builds the form registry and pair list for a selection. Classes enter in
/// alpha order; within a class forms are ordered by ν; cross-class pairs
/// run row-major over (forms of n) × (forms of −n).
pub fn symmetric_basis(cover: &CoverSpec, selection: &PairSelection) -> Result<SymmetricBasis> {
    let classes = cover.character_classes()?;
    // restrict to the selected classes, keeping alpha order
    let selected: Vec<(&crate::modular::CharacterClass, usize)> = match selection {
        PairSelection::Block { alpha, paired_alpha } => {
            if &alpha.neg() != paired_alpha {
                return Err(Error::NonInvariantProduct(format!(
                    "block classes {alpha} and {paired_alpha} are not opposite"
                )));
            }
            if !classes.iter().any(|c| &c.alpha == alpha) {
                return Err(Error::Unsupported(format!(
                    "{alpha} is not a character class of this cover"
                )));
            }
            classes
                .iter()
                .filter(|c| &c.alpha == alpha || &c.alpha == paired_alpha)
                .map(|c| (c, c.dim))
                .filter(|(_, d)| *d > 0)
                .collect()
        }
        PairSelection::FullInvariant => {
            classes.iter().map(|c| (c, c.dim)).filter(|(_, d)| *d > 0).collect()
        }
        PairSelection::MinusInvariant { sigma } => {
            let minus = crate::prym::minus_dims(cover, sigma)?;
            let dims: std::collections::BTreeMap<ModularVector, usize> =
                minus.into_iter().map(|md| (md.class.alpha.clone(), md.dim)).collect();
            classes
                .iter()
                .map(|c| (c, dims.get(&c.alpha).copied().unwrap_or(0)))
                .filter(|(_, d)| *d > 0)
                .collect()
        }
    };

    let mut forms = Vec::new();
    let mut spans: std::collections::BTreeMap<ModularVector, std::ops::Range<usize>> =
        Default::default();
    for (class, dim) in &selected {
        let start = forms.len();
        let mut fs = cover.basis_forms(class);
        fs.truncate(*dim);
        forms.extend(fs);
        spans.insert(class.alpha.clone(), start..forms.len());
    }
    let mut pairs = Vec::new();
    for (class, _) in &selected {
        let span = spans[&class.alpha].clone();
        let neg = class.negated_alpha();
        if neg == class.alpha {
            for a in span.clone() {
                for b in a..span.end {
                    pairs.push((a, b));
                }
            }
        } else if class.alpha < neg {
            if let Some(neg_span) = spans.get(&neg) {
                for a in span.clone() {
                    for b in neg_span.clone() {
                        pairs.push((a, b));
                    }
                }
            }
        }
    }
    Ok(SymmetricBasis { forms, pairs })
}

/// Exact rank data of the multiplication map restricted to a selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel_dim: usize,
    pub pairs: usize,
}

fn product_matrix(
    basis: &SymmetricBasis,
    t: &SpecializationAssignment,
) -> Result<RationalMatrix> {
    let products: Vec<ProductExponents> = basis
        .pairs
        .iter()
        .map(|&(a, b)| product_exponents(&basis.forms[a], &basis.forms[b]))
        .collect::<Result<_>>()?;
    let r = t.len();
    // common denominator exponents per branch point
    let mut clear = vec![0i64; r];
    for p in &products {
        if p.t_exponents.len() != r {
            return Err(Error::Structure("specialization length mismatch".into()));
        }
        for (c, &e) in clear.iter_mut().zip(&p.t_exponents) {
            *c = (*c).max(-e);
        }
    }
    let numerators: Vec<Poly> = products
        .iter()
        .map(|p| {
            let mut poly = Poly::monomial(p.x_power);
            for ((tj, &e), &c) in t.values().iter().zip(&p.t_exponents).zip(&clear) {
                let shifted = e + c;
                debug_assert!(shifted >= 0);
                if shifted > 0 {
                    poly = poly.mul(&Poly::linear_from_root(tj).pow(shifted as usize));
                }
            }
            poly
        })
        .collect();
    let coeff_rows = numerators
        .iter()
        .map(|p| p.degree().map(|d| d + 1).unwrap_or(0))
        .max()
        .unwrap_or(0);
    // columns are the selected pairs, so the kernel is indexed by pairs
    let mut m = RationalMatrix::zero(coeff_rows, numerators.len());
    for (col, poly) in numerators.iter().enumerate() {
        for (row, coeff) in poly.coeffs().iter().enumerate() {
            m.set(row, col, coeff.clone());
        }
    }
    Ok(m)
}

/// Exact rank and kernel dimension of the multiplication map on the
/// selected products at a specialization. The rank is a lower bound for
/// the generic rank; the kernel dimension an upper bound.
pub fn mult_map_rank(
    cover: &CoverSpec,
    selection: &PairSelection,
    t: &SpecializationAssignment,
) -> Result<RankKernel> {
    let basis = symmetric_basis(cover, selection)?;
    if basis.pairs.is_empty() {
        return Ok(RankKernel { rank: 0, kernel_dim: 0, pairs: 0 });
    }
    let m = product_matrix(&basis, t)?;
    let rank = m.rank();
    Ok(RankKernel { rank, kernel_dim: basis.pairs.len() - rank, pairs: basis.pairs.len() })
}

/// One term c·(ω_a ⊙ ω_b) of an invariant quadric.
#[derive(Debug, Clone)]
pub struct QuadricTerm {
    pub coeff: BigRational,
    pub a: usize,
    pub b: usize,
}

/// A rational symmetric 2-tensor of basis forms, indexed into a form
/// registry. Only invariant quadrics are representable: every term's two
/// characters must cancel.
#[derive(Debug, Clone)]
pub struct QuadricSpec {
    terms: Vec<QuadricTerm>,
}

impl QuadricSpec {
    pub fn new(forms: &[FormSpec], terms: Vec<QuadricTerm>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for term in &terms {
            if term.a > term.b {
                return Err(Error::Structure("quadric term indices must satisfy a <= b".into()));
            }
            if term.b >= forms.len() {
                return Err(Error::Structure("quadric term index out of range".into()));
            }
            if !seen.insert((term.a, term.b)) {
                return Err(Error::Structure("duplicate quadric term".into()));
            }
            if !forms[term.a].alpha.add(&forms[term.b].alpha).is_zero() {
                return Err(Error::NonInvariantProduct(format!(
                    "term ({}, {}) pairs non-opposite characters",
                    term.a, term.b
                )));
            }
        }
        let terms = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[QuadricTerm] {
        &self.terms
    }

    /// Coefficient on the pair (a, b), zero when absent.
    pub fn coeff(&self, a: usize, b: usize) -> BigRational {
        self.terms
            .iter()
            .find(|t| (t.a, t.b) == (a, b))
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

/// The kernel of the multiplication map at a specialization, as quadrics
/// over a form registry.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub forms: Vec<FormSpec>,
    pub pairs: Vec<(usize, usize)>,
    pub quadrics: Vec<QuadricSpec>,
}

/// Reduced-echelon basis of the kernel of the multiplication map on the
/// selected products.
pub fn kernel_basis(
    cover: &CoverSpec,
    selection: &PairSelection,
    t: &SpecializationAssignment,
) -> Result<KernelBasis> {
    let basis = symmetric_basis(cover, selection)?;
    if basis.pairs.is_empty() {
        return Ok(KernelBasis { forms: basis.forms, pairs: basis.pairs, quadrics: Vec::new() });
    }
    let m = product_matrix(&basis, t)?;
    let kernel = reduced_echelon(m.kernel_basis());
    let quadrics = kernel
        .into_iter()
        .map(|vector| {
            let terms = vector
                .into_iter()
                .zip(&basis.pairs)
                .filter(|(c, _)| !c.is_zero())
                .map(|(coeff, &(a, b))| QuadricTerm { coeff, a, b })
                .collect();
            QuadricSpec::new(&basis.forms, terms)
        })
        .collect::<Result<_>>()?;
    Ok(KernelBasis { forms: basis.forms, pairs: basis.pairs, quadrics })
}

/// Image of a quadric under the multiplication map at a specialization:
/// Σ c·(ω_a·ω_b) as a rational function.
pub fn quadric_image(
    forms: &[FormSpec],
    quadric: &QuadricSpec,
    t: &SpecializationAssignment,
) -> Result<RationalFunctionRep> {
    let mut acc = RationalFunctionRep::zero();
    for term in quadric.terms() {
        let p = product_polynomial(&forms[term.a], &forms[term.b], t)?;
        acc = acc.add(&p.scale(&term.coeff));
    }
    Ok(acc)
}

/// Exact kernel membership: the quadric's image is the zero function.
pub fn quadric_in_kernel(
    forms: &[FormSpec],
    quadric: &QuadricSpec,
    t: &SpecializationAssignment,
) -> Result<bool> {
    Ok(quadric_image(forms, quadric, t)?.is_zero())
}

/// The Wronskian certificate f₁·f₃·(L₃ − L₁), where L_i is the logarithmic
/// derivative ν_i/x + Σ_j (ᾱ_j/N + e_j)/(x − t_j) of the coefficient
/// function of ω_i. A nonzero result certifies that the image of the case-ONE
/// witness quadric under the second Gaussian map is not identically zero.
pub fn wronskian_certificate(
    f1: &FormSpec,
    f3: &FormSpec,
    t: &SpecializationAssignment,
) -> Result<RationalFunctionRep> {
    let base = product_polynomial(f1, f3, t)?;
    let n = BigInt::from(f1.representative.modulus());

    // L3 - L1 as a single fraction over x · prod (x - t_j)
    let mut poles: Vec<(Poly, BigRational)> = Vec::new();
    let nu_diff = BigRational::from(BigInt::from(f3.nu as i64 - f1.nu as i64));
    if !nu_diff.is_zero() {
        poles.push((Poly::monomial(1), nu_diff));
    }
    for (j, tj) in t.values().iter().enumerate() {
        let c = BigRational::new(
            BigInt::from(f3.fractional_exponent_num(j) - f1.fractional_exponent_num(j)),
            n.clone(),
        );
        if !c.is_zero() {
            poles.push((Poly::linear_from_root(tj), c));
        }
    }
    let mut diff = RationalFunctionRep::zero();
    for (pole, coeff) in poles {
        let term = RationalFunctionRep::new(Poly::constant(coeff), pole)?;
        diff = diff.add(&term);
    }
    Ok(base.mul(&diff))
}

/// Case-TWO certificate. For the witness quadric ω⊙x²ω − (xω)⊙(xω) the
/// image under the second Gaussian map is a nonzero multiple of the square
/// of the form's coefficient function, so non-vanishing is automatic.
pub fn case_two_certificate(_f1: &FormSpec) -> bool {
    true
}

/// Rank oracle backed by seeded rational specializations: tries a number of
/// independent assignments and keeps the best (largest) rank, stopping
/// early once the target dimension r − 3 is reached.
#[derive(Debug, Clone)]
pub struct SpecializedOracle {
    pub seed: u64,
    pub attempts: u32,
}

impl Default for SpecializedOracle {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, attempts: DEFAULT_SPECIALIZATIONS }
    }
}

impl RankOracle for SpecializedOracle {
    fn minus_map_rank(&self, cover: &CoverSpec, sigma: &ModularVector) -> Result<(usize, usize)> {
        let selection = PairSelection::MinusInvariant { sigma: sigma.clone() };
        let target = cover.column_count() - 3;
        let mut best: Option<RankKernel> = None;
        for k in 0..self.attempts.max(1) {
            let t = SpecializationAssignment::seeded(cover.column_count(), self.seed + k as u64);
            let rk = mult_map_rank(cover, &selection, &t)?;
            if best.map(|b| rk.rank > b.rank).unwrap_or(true) {
                best = Some(rk);
            }
            if best.map(|b| b.rank == target).unwrap_or(false) {
                break;
            }
        }
        let best = best.expect("at least one attempt");
        Ok((best.rank, best.kernel_dim))
    }
}
