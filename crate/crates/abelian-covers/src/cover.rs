//! Monodromy-matrix validation, genus computation, eigenspace dimension
//! tables and symbolic basis forms for a family of abelian covers of the
//! projective line.
//!
//! A family is presented by an m×r matrix A over Z/NZ whose j-th column
//! gives the local monodromy around the branch point t_j. Columns must be
//! nonzero and sum to zero (otherwise the cover would be unramified at t_j,
//! respectively ramified over infinity). Branch points stay symbolic here;
//! rational values enter only in the [`crate::exact`] module.

use num::integer::gcd;

use crate::error::{Error, Result};
use crate::modular::{self, CharacterClass, GroupData, ModularVector};

/// A validated monodromy matrix together with its column-generated Galois
/// group.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    modulus: u64,
    rows: Vec<ModularVector>,
    columns: Vec<ModularVector>,
    group: GroupData,
}

impl CoverSpec {
    /// Validates a matrix given row-major with arbitrary integer entries
    /// (reduced mod N).
    pub fn validate(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Structure(format!("modulus must be >= 2, got {modulus}")));
        }
        if rows.is_empty() {
            return Err(Error::Structure("matrix needs at least one row".into()));
        }
        let r = rows[0].len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::Structure("ragged rows: all rows must have equal length".into()));
        }
        if r < 3 {
            return Err(Error::TooFewBranchPoints { r });
        }
        let rows: Vec<ModularVector> = rows
            .iter()
            .map(|row| ModularVector::from_signed(modulus, row))
            .collect::<Result<_>>()?;
        let m = rows.len();
        let mut columns = Vec::with_capacity(r);
        for j in 0..r {
            let col: Vec<u64> = (0..m).map(|i| rows[i].entries()[j]).collect();
            let col = ModularVector::new(modulus, col)?;
            if col.is_zero() {
                return Err(Error::ZeroColumn { index: j + 1 });
            }
            columns.push(col);
        }
        let mut sum = ModularVector::zero(modulus, m);
        for col in &columns {
            sum = sum.add(col);
        }
        if !sum.is_zero() {
            return Err(Error::RamifiedAtInfinity);
        }
        let group = modular::subgroup_closure(&columns)?;
        Ok(Self { modulus, rows, columns, group })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// m, the number of equations w_i^N = ∏ (x − t_j)^{r̃_ij}.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// r, the number of branch points.
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> &[ModularVector] {
        &self.rows
    }

    pub fn columns(&self) -> &[ModularVector] {
        &self.columns
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    /// Matrix rows as plain integer lists, handy for reports.
    pub fn row_entries(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|row| row.entries().to_vec()).collect()
    }

    /// Genus of a member curve, by Riemann–Hurwitz:
    /// g = 1 + d((r−2)/2 − (1/2N) Σ_j gcd(N, r̃_1j, …, r̃_mj)).
    pub fn genus(&self) -> Result<u64> {
        let n = self.modulus as i128;
        let d = self.group.order() as i128;
        let r = self.column_count() as i128;
        let gcd_sum: i128 = self
            .columns
            .iter()
            .map(|col| col.entries().iter().fold(self.modulus, |acc, &e| gcd(acc, e)) as i128)
            .sum();
        let numerator = d * (n * (r - 2) - gcd_sum);
        if numerator % (2 * n) != 0 {
            return Err(Error::Internal("genus formula produced a non-integer".into()));
        }
        let g = 1 + numerator / (2 * n);
        u64::try_from(g).map_err(|_| Error::Internal("genus formula produced a negative value".into()))
    }

    /// Character classes of the Galois group, sorted by alpha.
    pub fn character_classes(&self) -> Result<Vec<CharacterClass>> {
        modular::character_classes(self)
    }

    /// dim H⁰(K)_n for a class of this cover.
    pub fn eigen_dim(&self, cls: &CharacterClass) -> usize {
        cls.dim
    }

    /// The full eigenspace dimension table, one row per character class in
    /// alpha order, with the representative of the opposite class attached.
    pub fn char_table(&self) -> Result<Vec<CharTableRow>> {
        let classes = self.character_classes()?;
        let by_alpha: std::collections::BTreeMap<ModularVector, ModularVector> = classes
            .iter()
            .map(|c| (c.alpha.clone(), c.representative.clone()))
            .collect();
        classes
            .into_iter()
            .map(|class| {
                let negative = by_alpha
                    .get(&class.negated_alpha())
                    .cloned()
                    .ok_or_else(|| Error::Internal("negative class missing from table".into()))?;
                Ok(CharTableRow { class, negative })
            })
            .collect()
    }

    /// The d_n basis forms ω_{n,ν} of an eigenspace, ν = 0 … d_n − 1, all
    /// sharing the exponent vector e_j = ⌊−ᾱ_j/N⌋ of the stored
    /// representative.
    pub fn basis_forms(&self, cls: &CharacterClass) -> Vec<FormSpec> {
        let n = self.modulus as i64;
        let exponents: Vec<i64> = cls.alpha_bar.iter().map(|&ab| (-ab).div_euclid(n)).collect();
        (0..cls.dim)
            .map(|nu| FormSpec {
                nu,
                representative: cls.representative.clone(),
                alpha: cls.alpha.clone(),
                alpha_bar: cls.alpha_bar.clone(),
                exponents: exponents.clone(),
            })
            .collect()
    }
}

/// One row of the character table.
#[derive(Debug, Clone)]
pub struct CharTableRow {
    pub class: CharacterClass,
    /// Representative of the class of the opposite character.
    pub negative: ModularVector,
}

/// A basis form ω_{n,ν} = x^ν w_1^{n_1}⋯w_m^{n_m} ∏_j (x−t_j)^{e_j} dx,
/// stored by exponent data only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpec {
    /// Power of x, 0 ≤ ν ≤ d_n − 1.
    pub nu: usize,
    /// The representative row n of the character class.
    pub representative: ModularVector,
    /// The class key n·A mod N.
    pub alpha: ModularVector,
    /// Lifted ᾱ_j of the representative.
    pub alpha_bar: Vec<i64>,
    /// e_j = ⌊−ᾱ_j/N⌋ per branch index.
    pub exponents: Vec<i64>,
}

impl FormSpec {
    /// Exact exponent of (x − t_j) in the coefficient function, as a
    /// rational ᾱ_j/N + e_j (always in (−1, 0], depending only on α_j).
    pub fn fractional_exponent_num(&self, j: usize) -> i64 {
        self.alpha_bar[j] + self.exponents[j] * self.representative.modulus() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn section3() -> CoverSpec {
        CoverSpec::validate(4, &[vec![2, 2, 2, 2, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]])
            .unwrap()
    }

    fn example1() -> CoverSpec {
        CoverSpec::validate(2, &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![1, 1, 1, 1, 1, 1, 1, 1]])
            .unwrap()
    }

    fn example2() -> CoverSpec {
        CoverSpec::validate(4, &[vec![1, 1, 1, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]])
            .unwrap()
    }

    #[test]
    fn validate_accepts_the_order_eight_family() {
        let cover = section3();
        assert_eq!(cover.group().order(), 8);
        assert_eq!(cover.column_count(), 8);
    }

    #[test]
    fn validate_rejects_degenerate_input() {
        assert!(matches!(
            CoverSpec::validate(2, &[vec![1, 1], vec![1, 1]]),
            Err(Error::TooFewBranchPoints { r: 2 })
        ));
        assert!(matches!(
            CoverSpec::validate(2, &[vec![1, 0, 1], vec![1, 0, 1]]),
            Err(Error::ZeroColumn { index: 2 })
        ));
        assert!(matches!(
            CoverSpec::validate(4, &[vec![1, 1, 1]]),
            Err(Error::RamifiedAtInfinity)
        ));
        assert!(matches!(CoverSpec::validate(1, &[vec![0, 0, 0]]), Err(Error::Structure(_))));
        assert!(matches!(
            CoverSpec::validate(2, &[vec![1, 1, 1, 1], vec![1, 1, 1]]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn genus_of_reference_families() {
        assert_eq!(section3().genus().unwrap(), 13);
        assert_eq!(example1().genus().unwrap(), 5);
        assert_eq!(example2().genus().unwrap(), 33);
    }

    fn dim_of(cover: &CoverSpec, rep: &[u64]) -> usize {
        let rep = ModularVector::new(cover.modulus(), rep.to_vec()).unwrap();
        cover
            .character_classes()
            .unwrap()
            .into_iter()
            .find(|c| c.representative == rep)
            .expect("class")
            .dim
    }

    #[test]
    fn eigen_dims_of_the_genus_13_family() {
        let cover = section3();
        assert_eq!(dim_of(&cover, &[1, 0]), 1);
        assert_eq!(dim_of(&cover, &[0, 1]), 2);
        assert_eq!(dim_of(&cover, &[1, 1]), 4);
        assert_eq!(dim_of(&cover, &[1, 2]), 3);
        assert_eq!(dim_of(&cover, &[1, 3]), 2);
        assert_eq!(dim_of(&cover, &[0, 2]), 1);
        assert_eq!(dim_of(&cover, &[0, 3]), 0);
        assert_eq!(dim_of(&cover, &[0, 0]), 0);
    }

    #[test]
    fn char_table_sums_to_genus() {
        for cover in [section3(), example1(), example2()] {
            let total: usize = cover.char_table().unwrap().iter().map(|row| row.class.dim).sum();
            assert_eq!(total as u64, cover.genus().unwrap());
        }
    }

    #[test]
    fn char_table_of_branched_z2_square() {
        let cover = example1();
        assert_eq!(dim_of(&cover, &[1, 0]), 1);
        assert_eq!(dim_of(&cover, &[0, 1]), 3);
        assert_eq!(dim_of(&cover, &[1, 1]), 1);
    }

    #[test]
    fn basis_forms_match_eigen_dims() {
        let cover = example1();
        for cls in cover.character_classes().unwrap() {
            let forms = cover.basis_forms(&cls);
            assert_eq!(forms.len(), cover.eigen_dim(&cls));
            for (nu, form) in forms.iter().enumerate() {
                assert_eq!(form.nu, nu);
            }
        }
    }

    #[test]
    fn basis_form_exponents() {
        let cover = example1();
        let classes = cover.character_classes().unwrap();
        let c01 = classes
            .iter()
            .find(|c| c.representative == ModularVector::new(2, vec![0, 1]).unwrap())
            .unwrap();
        let forms = cover.basis_forms(c01);
        assert_eq!(forms.len(), 3);
        for form in &forms {
            assert_eq!(form.exponents, vec![-1; 8]);
        }
        assert_eq!(
            forms.iter().map(|f| f.nu).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );

        let c10 = classes
            .iter()
            .find(|c| c.representative == ModularVector::new(2, vec![1, 0]).unwrap())
            .unwrap();
        let forms = cover.basis_forms(c10);
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].exponents, vec![-1, -1, -1, -1, 0, 0, 0, 0]);
    }

    #[test]
    fn values_are_shareable_across_threads() {
        // everything is immutable after construction
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<CoverSpec>();
        assert_send_sync::<FormSpec>();
        assert_send_sync::<crate::modular::GroupData>();
        assert_send_sync::<crate::modular::CharacterClass>();
        assert_send_sync::<crate::exact::SpecializationAssignment>();
        assert_send_sync::<crate::exact::QuadricSpec>();
    }

    #[test]
    fn genus_invariant_under_column_permutation() {
        let base = CoverSpec::validate(4, &[vec![1, 2, 1, 0, 0], vec![0, 2, 1, 2, 3]]).unwrap();
        let permuted =
            CoverSpec::validate(4, &[vec![0, 1, 2, 0, 1], vec![2, 1, 2, 3, 0]]).unwrap();
        assert_eq!(base.genus().unwrap(), permuted.genus().unwrap());
        let dims = |c: &CoverSpec| {
            let mut d: Vec<usize> =
                c.char_table().unwrap().iter().map(|row| row.class.dim).collect();
            d.sort();
            d
        };
        assert_eq!(dims(&base), dims(&permuted));
    }
}
