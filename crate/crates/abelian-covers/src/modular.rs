//! Exact arithmetic in (Z/NZ)^m: subgroup closure, element orders,
//! involutions, character classes of the column-generated Galois group and
//! brute-force automorphism enumeration for canonicalization.

use std::collections::BTreeMap;

use num::integer::gcd;

use crate::cover::CoverSpec;
use crate::error::{Error, Result};

/// A vector with entries in Z/NZ. Entries are stored reduced to [0, N), so
/// they double as the lifts to Z ∩ [0, N) used in the lifted products.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModularVector {
    modulus: u64,
    entries: Vec<u64>,
}

impl ModularVector {
    pub fn new(modulus: u64, entries: Vec<u64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Structure(format!("modulus must be >= 2, got {modulus}")));
        }
        let entries = entries.into_iter().map(|e| e % modulus).collect();
        Ok(Self { modulus, entries })
    }

    /// Builds a vector from possibly-negative integers, reducing mod N.
    pub fn from_signed(modulus: u64, entries: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Structure(format!("modulus must be >= 2, got {modulus}")));
        }
        let m = modulus as i64;
        let entries = entries.iter().map(|&e| e.rem_euclid(m) as u64).collect();
        Ok(Self { modulus, entries })
    }

    pub fn zero(modulus: u64, len: usize) -> Self {
        Self { modulus, entries: vec![0; len] }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mismatched moduli");
        assert_eq!(self.entries.len(), other.entries.len(), "mismatched lengths");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        Self { modulus: self.modulus, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&e| if e == 0 { 0 } else { self.modulus - e })
            .collect();
        Self { modulus: self.modulus, entries }
    }

    pub fn scale(&self, k: u64) -> Self {
        let entries = self.entries.iter().map(|&e| (e * (k % self.modulus)) % self.modulus).collect();
        Self { modulus: self.modulus, entries }
    }

    /// Smallest k >= 1 with k·v = 0, i.e. N / gcd(N, entries).
    pub fn order(&self) -> u64 {
        let g = self.entries.iter().fold(self.modulus, |acc, &e| gcd(acc, e));
        self.modulus / g
    }

    /// Dot product mod N; both vectors must have the same length.
    pub fn dot(&self, other: &Self) -> u64 {
        assert_eq!(self.modulus, other.modulus, "mismatched moduli");
        assert_eq!(self.entries.len(), other.entries.len(), "mismatched lengths");
        let n = self.modulus as u128;
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % n) as u64
    }
}

impl std::fmt::Display for ModularVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A finite subgroup of (Z/NZ)^m with its element list sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    modulus: u64,
    dim: usize,
    elements: Vec<ModularVector>,
    generators: Vec<ModularVector>,
}

impl GroupData {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ModularVector] {
        &self.elements
    }

    pub fn generators(&self) -> &[ModularVector] {
        &self.generators
    }

    pub fn contains(&self, v: &ModularVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn index_of(&self, v: &ModularVector) -> Option<usize> {
        self.elements.binary_search(v).ok()
    }
}

/// Smallest subset of (Z/NZ)^m containing the given columns and closed
/// under addition.
pub fn subgroup_closure(columns: &[ModularVector]) -> Result<GroupData> {
    let first = columns
        .first()
        .ok_or_else(|| Error::Structure("subgroup closure needs at least one column".into()))?;
    let modulus = first.modulus();
    let dim = first.len();
    for c in columns {
        if c.modulus() != modulus || c.len() != dim {
            return Err(Error::Structure("columns have inconsistent moduli or lengths".into()));
        }
    }
    let mut elements = std::collections::BTreeSet::new();
    elements.insert(ModularVector::zero(modulus, dim));
    let mut frontier: Vec<ModularVector> = vec![ModularVector::zero(modulus, dim)];
    while let Some(e) = frontier.pop() {
        for g in columns {
            let s = e.add(g);
            if elements.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    Ok(GroupData {
        modulus,
        dim,
        elements: elements.into_iter().collect(),
        generators: columns.to_vec(),
    })
}

/// Smallest k >= 1 with k·v = 0 mod N.
pub fn element_order(v: &ModularVector) -> u64 {
    v.order()
}

/// All elements of order exactly 2, in lexicographic order.
pub fn involutions(group: &GroupData) -> Vec<ModularVector> {
    group.elements().iter().filter(|e| e.order() == 2).cloned().collect()
}

/// One character of the abelian Galois group: the eigenvalue pattern
/// alpha = n·A together with the data derived from it.
///
/// Classes are keyed by alpha, not by the row n: for a proper subgroup
/// G of (Z/NZ)^m many rows induce the same character. The stored
/// representative is the lexicographically minimal row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterClass {
    /// Lexicographically minimal row n with n·A = alpha.
    pub representative: ModularVector,
    /// n·A reduced mod N; the class key.
    pub alpha: ModularVector,
    /// Lifted products ᾱ_j = Σ_i ñ_i r̃_ij computed in Z.
    pub alpha_bar: Vec<i64>,
    /// dim H⁰(K)_n for this character; 0 for the trivial class.
    pub dim: usize,
    /// Order of the character, i.e. of alpha in (Z/NZ)^r.
    pub order: u64,
}

impl CharacterClass {
    pub fn is_trivial(&self) -> bool {
        self.alpha.is_zero()
    }

    /// Key of the class of the opposite character.
    pub fn negated_alpha(&self) -> ModularVector {
        self.alpha.neg()
    }
}

/// dim H⁰(K)_n from the eigenvalue pattern: −1 + Σ_j ⟨−α_j/N⟩, with the
/// trivial character pinned to 0 (invariant differentials live on the
/// rational quotient).
pub(crate) fn eigenspace_dim_from_alpha(alpha: &ModularVector) -> Result<usize> {
    if alpha.is_zero() {
        return Ok(0);
    }
    let n = alpha.modulus();
    let sum: u64 = alpha.entries().iter().filter(|&&a| a != 0).map(|&a| n - a).sum();
    if sum % n != 0 {
        return Err(Error::Internal(format!(
            "eigenspace dimension is not an integer for alpha {alpha}"
        )));
    }
    let d = sum / n;
    if d == 0 {
        return Err(Error::Internal(format!(
            "eigenspace dimension would be negative for alpha {alpha}"
        )));
    }
    Ok((d - 1) as usize)
}

/// All character classes of the cover's Galois group, one per distinct
/// alpha-vector, sorted lexicographically by alpha. There are exactly |G|
/// of them: the row span of A has the same cardinality as the column span.
pub fn character_classes(cover: &CoverSpec) -> Result<Vec<CharacterClass>> {
    let n = cover.modulus();
    let m = cover.row_count();
    let r = cover.column_count();
    let rows = cover.rows();

    let mut by_alpha: BTreeMap<Vec<u64>, CharacterClass> = BTreeMap::new();
    // Odometer over rows of (Z/NZ)^m in lexicographic order; the first row
    // hitting each alpha is its lexicographic minimum.
    let mut row = vec![0u64; m];
    loop {
        let mut alpha = vec![0u64; r];
        let mut alpha_bar = vec![0i64; r];
        for (i, &ni) in row.iter().enumerate() {
            for (j, &rij) in rows[i].entries().iter().enumerate() {
                alpha[j] = (alpha[j] + ni * rij) % n;
                alpha_bar[j] += (ni * rij) as i64;
            }
        }
        if !by_alpha.contains_key(&alpha) {
            let alpha_vec = ModularVector::new(n, alpha.clone())?;
            let dim = eigenspace_dim_from_alpha(&alpha_vec)?;
            let order = alpha_vec.order();
            by_alpha.insert(
                alpha,
                CharacterClass {
                    representative: ModularVector::new(n, row.clone())?,
                    alpha: alpha_vec,
                    alpha_bar,
                    dim,
                    order,
                },
            );
        }
        // advance odometer
        let mut k = m;
        loop {
            if k == 0 {
                let classes: Vec<CharacterClass> = by_alpha.into_values().collect();
                if classes.len() != cover.group().order() {
                    return Err(Error::Internal(format!(
                        "character class count {} does not match group order {}",
                        classes.len(),
                        cover.group().order()
                    )));
                }
                return Ok(classes);
            }
            k -= 1;
            row[k] += 1;
            if row[k] < n {
                break;
            }
            row[k] = 0;
        }
    }
}

/// A group automorphism stored as a permutation of the element list:
/// `perm[i]` is the index of the image of `elements[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Automorphism {
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, group: &GroupData, v: &ModularVector) -> ModularVector {
        let i = group.index_of(v).expect("element not in group");
        group.elements()[self.perm[i]].clone()
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Greedy generating sequence: walk the element list and keep whatever
/// enlarges the span.
fn greedy_generators(group: &GroupData) -> Vec<usize> {
    let mut span = std::collections::BTreeSet::new();
    span.insert(ModularVector::zero(group.modulus(), group.dim()));
    let mut gens = Vec::new();
    for (i, e) in group.elements().iter().enumerate() {
        if span.contains(e) {
            continue;
        }
        gens.push(i);
        // span <- span + <e>: add s + a·e for every s in span, a < order(e)
        let order = e.order();
        for s in span.iter().cloned().collect::<Vec<_>>() {
            let mut v = s;
            for _ in 1..order {
                v = v.add(e);
                span.insert(v.clone());
            }
        }
        if span.len() == group.order() {
            break;
        }
    }
    gens
}

const AUTOMORPHISM_COUNT_GUARD: usize = 1_000_000;

/// All automorphisms of a small abelian group, identity first.
///
/// Brute force over generator images with backtracking; `cap` bounds the
/// group order (and an internal guard bounds the output count). Exceeding
/// either aborts with [`Error::AutomorphismCap`] so callers can fall back
/// to permutation-only canonicalization.
pub fn automorphism_group(group: &GroupData, cap: usize) -> Result<Vec<Automorphism>> {
    if group.order() > cap {
        return Err(Error::AutomorphismCap(format!(
            "group order {} exceeds cap {}",
            group.order(),
            cap
        )));
    }
    let gens = greedy_generators(group);
    let zero = ModularVector::zero(group.modulus(), group.dim());
    let zero_idx = group.index_of(&zero).expect("zero in group");

    // Partial map over element indices; usize::MAX = unassigned.
    let unset = usize::MAX;
    let mut map = vec![unset; group.order()];
    let mut used = vec![false; group.order()];
    map[zero_idx] = zero_idx;
    used[zero_idx] = true;
    let mut span: Vec<usize> = vec![zero_idx];
    let mut out: Vec<Automorphism> = Vec::new();

    fn extend(
        group: &GroupData,
        gens: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        span: &mut Vec<usize>,
        out: &mut Vec<Automorphism>,
    ) -> Result<()> {
        if depth == gens.len() {
            if span.len() == group.order() {
                if out.len() >= AUTOMORPHISM_COUNT_GUARD {
                    return Err(Error::AutomorphismCap(format!(
                        "more than {AUTOMORPHISM_COUNT_GUARD} automorphisms"
                    )));
                }
                out.push(Automorphism { perm: map.clone() });
            }
            return Ok(());
        }
        let g = &group.elements()[gens[depth]];
        // q = smallest k >= 1 with k·g in the current span; the lone relation
        // the extension must respect.
        let mut q = 1u64;
        let mut kg = g.clone();
        let span_set: std::collections::BTreeSet<usize> = span.iter().copied().collect();
        while !span_set.contains(&group.index_of(&kg).expect("element")) {
            kg = kg.add(g);
            q += 1;
        }
        let qg_idx = group.index_of(&kg).expect("element");
        for h_idx in 0..group.order() {
            let h = &group.elements()[h_idx];
            // well-definedness: q·h must equal the image of q·g
            let qh = h.scale(q);
            if group.index_of(&qh).expect("element") != map[qg_idx] {
                continue;
            }
            // extend the map over the enlarged span, bailing on collisions
            let mut added: Vec<usize> = Vec::new();
            let mut ok = true;
            'fill: for a in 1..q {
                let ag = g.scale(a);
                let ah = h.scale(a);
                for &s_idx in span.iter() {
                    let s = &group.elements()[s_idx];
                    let src = group.index_of(&s.add(&ag)).expect("element");
                    let dst_v = group.elements()[map[s_idx]].add(&ah);
                    let dst = group.index_of(&dst_v).expect("element");
                    if used[dst] {
                        ok = false;
                        break 'fill;
                    }
                    map[src] = dst;
                    used[dst] = true;
                    added.push(src);
                }
            }
            if ok {
                let span_before = span.len();
                span.extend(added.iter().copied());
                extend(group, gens, depth + 1, map, used, span, out)?;
                span.truncate(span_before);
            }
            for &src in &added {
                used[map[src]] = false;
                map[src] = usize::MAX;
            }
        }
        Ok(())
    }

    extend(group, &gens, 0, &mut map, &mut used, &mut span, &mut out)?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverSpec;

    fn mv(n: u64, e: &[u64]) -> ModularVector {
        ModularVector::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_mixed_generators_has_order_eight() {
        let g = subgroup_closure(&[mv(4, &[2, 0]), mv(4, &[0, 1])]).unwrap();
        assert_eq!(g.order(), 8);
        // Z/2 x Z/4: element orders are 1, 2 and 4 only
        let mut orders: Vec<u64> = g.elements().iter().map(|e| e.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 4, 4, 4, 4]);
    }

    #[test]
    fn closure_of_single_generator_is_cyclic() {
        let g = subgroup_closure(&[mv(2, &[1])]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements(), &[mv(2, &[0]), mv(2, &[1])]);
    }

    #[test]
    fn closure_of_unit_vectors_is_everything() {
        let g = subgroup_closure(&[mv(4, &[1, 0]), mv(4, &[0, 1])]).unwrap();
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn closure_rejects_inconsistent_columns() {
        let err = subgroup_closure(&[mv(4, &[1, 0]), mv(2, &[1])]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        assert!(matches!(subgroup_closure(&[]), Err(Error::Structure(_))));
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&mv(4, &[2, 0])), 2);
        assert_eq!(element_order(&mv(4, &[1, 1])), 4);
        assert_eq!(element_order(&mv(4, &[0, 0])), 1);
    }

    #[test]
    fn involutions_of_small_groups() {
        let g = subgroup_closure(&[mv(2, &[1, 0]), mv(2, &[0, 1])]).unwrap();
        assert_eq!(involutions(&g), vec![mv(2, &[0, 1]), mv(2, &[1, 0]), mv(2, &[1, 1])]);

        // brute-force scan of the 16 elements of (Z/4Z)^2
        let g = subgroup_closure(&[mv(4, &[1, 0]), mv(4, &[0, 1])]).unwrap();
        let expected: Vec<ModularVector> = g
            .elements()
            .iter()
            .filter(|e| !e.is_zero() && e.add(e).is_zero())
            .cloned()
            .collect();
        assert_eq!(expected, vec![mv(4, &[0, 2]), mv(4, &[2, 0]), mv(4, &[2, 2])]);
        assert_eq!(involutions(&g), expected);

        let g = subgroup_closure(&[mv(3, &[1])]).unwrap();
        assert!(involutions(&g).is_empty());
    }

    fn section3_cover() -> CoverSpec {
        CoverSpec::validate(
            4,
            &[vec![2, 2, 2, 2, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn character_class_count_matches_group_order() {
        let cover = section3_cover();
        let classes = character_classes(&cover).unwrap();
        assert_eq!(classes.len(), 8);

        // rows (1,0) and (3,0) induce the same character
        let reps: Vec<&ModularVector> = classes.iter().map(|c| &c.representative).collect();
        assert!(reps.contains(&&mv(4, &[1, 0])));
        assert!(!reps.contains(&&mv(4, &[3, 0])));
    }

    #[test]
    fn character_classes_of_full_rank_matrix() {
        let cover = CoverSpec::validate(
            4,
            &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
        )
        .unwrap();
        let classes = character_classes(&cover).unwrap();
        assert_eq!(classes.len(), 16);
        let c12 = classes
            .iter()
            .find(|c| c.representative == mv(4, &[1, 2]))
            .expect("class of (1,2)");
        assert_eq!(c12.alpha, mv(4, &[1, 1, 1, 1, 2, 2, 2, 2]));
        assert_eq!(c12.dim, 4);
    }

    #[test]
    fn trivial_class_has_dim_zero() {
        let cover = section3_cover();
        let classes = character_classes(&cover).unwrap();
        let zero = classes.iter().find(|c| c.is_trivial()).unwrap();
        assert_eq!(zero.dim, 0);
        assert_eq!(zero.order, 1);
        assert_eq!(zero.representative, mv(4, &[0, 0]));
    }

    #[test]
    fn negation_pairs_dimensions() {
        let cover = section3_cover();
        let classes = character_classes(&cover).unwrap();
        let by_alpha: std::collections::BTreeMap<_, _> =
            classes.iter().map(|c| (c.alpha.clone(), c)).collect();
        for c in &classes {
            let neg = by_alpha.get(&c.negated_alpha()).expect("negative class present");
            // d_n + d_{-n} = #{j : alpha_j != 0} - 2 on nonzero classes
            if !c.is_trivial() {
                let nonzero = c.alpha.entries().iter().filter(|&&a| a != 0).count();
                assert_eq!(c.dim + neg.dim, nonzero - 2);
            }
        }
    }

    #[test]
    fn class_orders_divide_group_order() {
        let cover = section3_cover();
        for c in character_classes(&cover).unwrap() {
            assert_eq!(8 % c.order, 0);
            assert_eq!(c.alpha.order(), c.order);
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        for gens in [
            vec![mv(4, &[2, 0]), mv(4, &[0, 1])],
            vec![mv(6, &[2]), mv(6, &[3])],
            vec![mv(8, &[4, 2])],
        ] {
            let g = subgroup_closure(&gens).unwrap();
            for e in g.elements() {
                assert_eq!(g.order() as u64 % element_order(e), 0);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let z2 = subgroup_closure(&[mv(2, &[1])]).unwrap();
        assert_eq!(automorphism_group(&z2, 256).unwrap().len(), 1);

        let klein = subgroup_closure(&[mv(2, &[1, 0]), mv(2, &[0, 1])]).unwrap();
        let autos = automorphism_group(&klein, 256).unwrap();
        // |GL_2(F_2)| = 6, frozen from the brute-force count below
        let mut brute = 0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                for c in 0..2u64 {
                    for d in 0..2u64 {
                        if (a * d + b * c) % 2 == 1 {
                            brute += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(brute, 6);
        assert_eq!(autos.len(), 6);
        assert!(autos[0].is_identity());

        let z4 = subgroup_closure(&[mv(4, &[1])]).unwrap();
        assert_eq!(automorphism_group(&z4, 256).unwrap().len(), 2);
    }

    #[test]
    fn automorphisms_closed_under_composition_and_inverse() {
        let g = subgroup_closure(&[mv(4, &[2, 0]), mv(4, &[0, 1])]).unwrap();
        let autos = automorphism_group(&g, 256).unwrap();
        let set: std::collections::BTreeSet<Vec<usize>> =
            autos.iter().map(|a| a.perm.clone()).collect();
        for a in &autos {
            for b in &autos {
                assert!(set.contains(&a.compose(b).perm));
            }
            let mut inverse = vec![0usize; a.perm.len()];
            for (i, &p) in a.perm.iter().enumerate() {
                inverse[p] = i;
            }
            assert!(set.contains(&inverse));
        }
    }

    #[test]
    fn automorphism_cap_aborts() {
        let g = subgroup_closure(&[mv(4, &[1, 0]), mv(4, &[0, 1])]).unwrap();
        assert!(matches!(automorphism_group(&g, 8), Err(Error::AutomorphismCap(_))));
    }
}
