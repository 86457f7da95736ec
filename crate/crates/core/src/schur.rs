//! Free presentations `L ≅ F/R` and the invariants read off them: the
//! Schur multiplier `(R ∩ F²)/[R,F]`, the exterior square `F²/[R,F]`, and the
//! exterior center `Z^∧(L)`, whose vanishing decides capability.
//!
//! `F` is the free nilpotent algebra of class `cl(L) + 1` on `dim L/L²`
//! generators rather than the free Lie algebra. This loses nothing: the
//! surjection kills `γ_{c+1}` of the free algebra, so `[R, F]` already
//! contains `γ_{c+2}`, and every quotient used below is unchanged by
//! truncating there.

use crate::error::{Error, Result};
use crate::freelie::{free_nilpotent, FreeNilpotent};
use crate::liealg::{Element, Hom, LieAlgebra};
use crate::linalg::{axpy, kernel, zero_vector, Matrix, SpanBuilder, Subspace};

/// A free presentation of a nilpotent algebra together with `[R, F]` and `R ∩ F²`.
#[derive(Clone, Debug)]
pub struct Presentation {
    algebra: LieAlgebra,
    free: FreeNilpotent,
    pi: Hom,
    relations: Subspace,
    relation_commutators: Subspace,
    relations_in_derived: Subspace,
    section: Vec<Element>,
}

/// Presentation on lifts of the canonical minimal generating set.
pub fn free_presentation(l: &LieAlgebra) -> Result<Presentation> {
    let gens: Vec<Element> = l.minimal_generators().basis().to_vec();
    free_presentation_with(l, &gens)
}

/// Presentation sending the free generators to `generator_images`.
pub fn free_presentation_with(l: &LieAlgebra, generator_images: &[Element]) -> Result<Presentation> {
    let class = l.nilpotency_class()?;
    if generator_images.is_empty() {
        return Err(Error::EmptyFreeAlgebra);
    }
    let free = free_nilpotent(generator_images.len(), class + 1, l.field())?;
    let pi = free.extend_hom(l, generator_images)?;
    if !pi.is_surjective() {
        return Err(Error::NotGenerating);
    }
    let relations = pi.kernel();
    let fa = free.algebra();
    let top = free.basis().degree_range(class + 1);
    let mut commutators = SpanBuilder::new(l.field(), free.dim());
    for r in relations.basis() {
        // relations living purely in the top degree bracket to zero
        let only_top = r
            .iter()
            .enumerate()
            .all(|(k, x)| x.is_zero() || top.contains(&k));
        if only_top {
            continue;
        }
        for g in 0..free.generators() {
            commutators.push(fa.bracket_with_basis(r, g));
        }
    }
    let relation_commutators = commutators.finish();
    let derived = Subspace::coordinate(l.field(), free.dim(), free.derived_indices());
    let relations_in_derived = relations.intersect(&derived)?;
    let section = greedy_section(&free, &pi, l)?;
    Ok(Presentation {
        algebra: l.clone(),
        free,
        pi,
        relations,
        relation_commutators,
        relations_in_derived,
        section,
    })
}

/// Lifts of the basis of `L`: take the first Hall elements whose images are
/// independent, then invert on that frame.
fn greedy_section(free: &FreeNilpotent, pi: &Hom, l: &LieAlgebra) -> Result<Vec<Element>> {
    let n = l.dim();
    let mut seen = SpanBuilder::new(l.field(), n);
    let mut chosen = Vec::with_capacity(n);
    for h in 0..free.dim() {
        if seen.rank() == n {
            break;
        }
        if seen.push(pi.image_of_basis(h).clone()) {
            chosen.push(h);
        }
    }
    if chosen.len() != n {
        return Err(Error::NotGenerating);
    }
    let frame = Matrix::from_rows(
        l.field(),
        n,
        chosen.iter().map(|&h| pi.image_of_basis(h).clone()).collect(),
    )?;
    let inv = frame.inverse()?;
    Ok((0..n)
        .map(|i| {
            let mut v = zero_vector(l.field(), free.dim());
            for (k, &h) in chosen.iter().enumerate() {
                axpy(&mut v, inv.get(i, k), &free.algebra().basis_element(h));
            }
            v
        })
        .collect())
}

impl Presentation {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn free(&self) -> &FreeNilpotent {
        &self.free
    }

    pub fn projection(&self) -> &Hom {
        &self.pi
    }

    /// `R = ker π`.
    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// `[R, F]`.
    pub fn relation_commutators(&self) -> &Subspace {
        &self.relation_commutators
    }

    /// `R ∩ F²`.
    pub fn relations_in_derived(&self) -> &Subspace {
        &self.relations_in_derived
    }

    /// Linear lifts of the basis of `L`; `π(section[i]) = e_i`.
    pub fn section(&self) -> &[Element] {
        &self.section
    }

    /// `dim F²`.
    pub fn derived_dim(&self) -> usize {
        self.free.dim() - self.free.generators()
    }

    /// `dim M(L) = dim (R ∩ F²) - dim [R, F]`.
    pub fn multiplier_dim(&self) -> usize {
        self.relations_in_derived.dim() - self.relation_commutators.dim()
    }

    /// `dim L ∧ L = dim F² - dim [R, F]`.
    pub fn exterior_square_dim(&self) -> usize {
        self.derived_dim() - self.relation_commutators.dim()
    }

    /// `Z^∧(L)` computed with the stored section.
    pub fn exterior_center(&self) -> Subspace {
        self.exterior_center_with(&self.section, 0..self.free.generators())
            .expect("stored section is valid")
    }

    /// `Z^∧(L)` testing against every Hall basis element instead of only the
    /// generators. Slower; used to cross-check the generator shortcut.
    pub fn exterior_center_exhaustive(&self) -> Subspace {
        self.exterior_center_with(&self.section, 0..self.free.dim())
            .expect("stored section is valid")
    }

    /// `Z^∧(L)` computed with an arbitrary section of `π`.
    pub fn exterior_center_with_section(&self, section: &[Element]) -> Result<Subspace> {
        self.exterior_center_with(section, 0..self.free.generators())
    }

    /// Kernel of `z ↦ ([s(z), h] mod [R, F])_h`. Testing generators `h`
    /// suffices since `[R, F]` is an ideal of `F`.
    fn exterior_center_with(&self, section: &[Element], probes: std::ops::Range<usize>) -> Result<Subspace> {
        let n = self.algebra.dim();
        let field = self.algebra.field();
        if section.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: section.len(),
            });
        }
        for (i, s) in section.iter().enumerate() {
            if s.len() != self.free.dim() || self.pi.apply(s) != self.algebra.basis_element(i) {
                return Err(Error::InvalidParameter(format!("section does not lift e_{}", i + 1)));
            }
        }
        let fa = self.free.algebra();
        // column i = the images of [s(e_i), h] for all probes h, stacked
        let columns: Vec<Vec<crate::field::Scalar>> = section
            .iter()
            .map(|s| {
                probes
                    .clone()
                    .flat_map(|h| self.relation_commutators.reduce(&fa.bracket_with_basis(s, h)))
                    .collect()
            })
            .collect();
        let height = columns.first().map_or(0, Vec::len);
        let rows: Vec<Element> = (0..height)
            .filter(|&r| columns.iter().any(|c| !c[r].is_zero()))
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        if rows.is_empty() {
            return Ok(Subspace::full(field, n));
        }
        Ok(kernel(&Matrix::from_rows(field, n, rows)?))
    }

    pub fn report(&self) -> HomologyReport {
        let exterior_center = self.exterior_center();
        HomologyReport {
            dim_multiplier: self.multiplier_dim(),
            dim_exterior_square: self.exterior_square_dim(),
            capable: exterior_center.is_zero(),
            exterior_center,
        }
    }
}

/// Homological invariants of one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub dim_multiplier: usize,
    pub dim_exterior_square: usize,
    /// `Z^∧(L)` as a subspace of `L`.
    pub exterior_center: Subspace,
    pub capable: bool,
}

/// Full homology report; the zero algebra is handled without a presentation.
pub fn analyze(l: &LieAlgebra) -> Result<HomologyReport> {
    if l.dim() == 0 {
        return Ok(HomologyReport {
            dim_multiplier: 0,
            dim_exterior_square: 0,
            exterior_center: Subspace::zero(l.field(), 0),
            capable: true,
        });
    }
    Ok(free_presentation(l)?.report())
}

pub fn schur_multiplier_dim(l: &LieAlgebra) -> Result<usize> {
    if l.dim() == 0 {
        return Ok(0);
    }
    Ok(free_presentation(l)?.multiplier_dim())
}

pub fn exterior_square_dim(l: &LieAlgebra) -> Result<usize> {
    if l.dim() == 0 {
        return Ok(0);
    }
    Ok(free_presentation(l)?.exterior_square_dim())
}

pub fn exterior_center(l: &LieAlgebra) -> Result<Subspace> {
    Ok(analyze(l)?.exterior_center)
}

/// `L` is capable iff `Z^∧(L) = 0`.
pub fn is_capable(l: &LieAlgebra) -> Result<bool> {
    Ok(analyze(l)?.capable)
}

/// Both sides of the multiplier inequality for a central ideal `I`:
/// `dim M(L) ≥ dim M(L/I) - dim(L² ∩ I)`, with equality iff `I ⊆ Z^∧(L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralIdealCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub contained: bool,
}

impl CentralIdealCheck {
    /// Inequality holds and equality matches containment.
    pub fn consistent(&self) -> bool {
        self.lhs >= self.rhs && ((self.lhs == self.rhs) == self.contained)
    }
}

pub fn epicenter_test_dd(l: &LieAlgebra, ideal: &Subspace) -> Result<CentralIdealCheck> {
    let report = analyze(l)?;
    epicenter_test_dd_with(l, &report, ideal)
}

/// As [`epicenter_test_dd`], reusing an existing report for `L`.
pub fn epicenter_test_dd_with(l: &LieAlgebra, report: &HomologyReport, ideal: &Subspace) -> Result<CentralIdealCheck> {
    if !l.center().contains_subspace(ideal) {
        return Err(Error::NotCentral);
    }
    let (q, _) = l.quotient(ideal)?;
    let mq = schur_multiplier_dim(&q)? as i64;
    let overlap = l.derived().intersect(ideal)?.dim() as i64;
    Ok(CentralIdealCheck {
        lhs: report.dim_multiplier as i64,
        rhs: mq - overlap,
        contained: report.exterior_center.contains_subspace(ideal),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn heis(field: FieldSpec) -> LieAlgebra {
        LieAlgebra::from_table_1based(field, 3, &[(1, 2, &[(3, 1)])]).unwrap()
    }

    fn l43(field: FieldSpec) -> LieAlgebra {
        LieAlgebra::from_table_1based(field, 4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]).unwrap()
    }

    #[test]
    fn abelian_presentation() {
        for n in 1..=6 {
            let a = LieAlgebra::abelian(Q, n);
            let p = free_presentation(&a).unwrap();
            let f2 = Subspace::coordinate(Q, p.free().dim(), p.free().derived_indices());
            assert_eq!(p.relations(), &f2);
            assert!(p.relation_commutators().is_zero());
            assert_eq!(p.multiplier_dim(), n * (n - 1) / 2);
        }
        assert_eq!(exterior_square_dim(&LieAlgebra::abelian(Q, 2)).unwrap(), 1);
    }

    #[test]
    fn heisenberg_presentation() {
        let p = free_presentation(&heis(Q)).unwrap();
        assert_eq!(p.free().dim(), 5);
        assert_eq!(p.relations().dim(), 2);
        assert!(p.relation_commutators().is_zero());
        assert_eq!(p.relations_in_derived(), p.relations());
        assert_eq!(p.multiplier_dim(), 2);
        assert_eq!(p.exterior_square_dim(), 3);
        assert!(p.exterior_center().is_zero());
    }

    #[test]
    fn l43_presentation() {
        let p = free_presentation(&l43(Q)).unwrap();
        assert_eq!(p.free().dim(), 8);
        assert_eq!(p.relations().dim(), 4);
        for (i, s) in p.section().iter().enumerate() {
            assert_eq!(p.projection().apply(s), p.algebra().basis_element(i));
        }
        assert!(p.relation_commutators().dim() <= p.relations_in_derived().dim());
        assert!(p.relations().contains_subspace(p.relations_in_derived()));
        assert!(p.relations_in_derived().contains_subspace(p.relation_commutators()));
    }

    #[test]
    fn abelian_line_is_not_capable() {
        let a1 = LieAlgebra::abelian(Q, 1);
        let r = analyze(&a1).unwrap();
        assert_eq!(r.exterior_center, a1.full());
        assert!(!r.capable);
        assert!(is_capable(&LieAlgebra::abelian(Q, 2)).unwrap());
    }

    #[test]
    fn h2_exterior_center_is_derived() {
        let h2 = LieAlgebra::from_table_1based(Q, 5, &[(1, 2, &[(5, 1)]), (3, 4, &[(5, 1)])]).unwrap();
        let z = exterior_center(&h2).unwrap();
        assert_eq!(z, h2.derived());
        assert_eq!(z.dim(), 1);
    }

    #[test]
    fn generator_shortcut_matches_exhaustive_scan() {
        for field in [Q, FieldSpec::Prime(2)] {
            let h2 = LieAlgebra::from_table_1based(field, 5, &[(1, 2, &[(5, 1)]), (3, 4, &[(5, 1)])]).unwrap();
            for l in [heis(field), l43(field), h2] {
                let p = free_presentation(&l).unwrap();
                assert_eq!(p.exterior_center(), p.exterior_center_exhaustive());
            }
        }
    }

    #[test]
    fn section_and_lift_independence() {
        let h2 = LieAlgebra::from_table_1based(Q, 5, &[(1, 2, &[(5, 1)]), (3, 4, &[(5, 1)])]).unwrap();
        let base = free_presentation(&h2).unwrap();
        // shift every lift by a relation
        let r = base.relations().basis()[0].clone();
        let shifted: Vec<Element> = base
            .section()
            .iter()
            .map(|s| {
                let mut t = s.clone();
                axpy(&mut t, &Q.one(), &r);
                t
            })
            .collect();
        assert_eq!(base.exterior_center_with_section(&shifted).unwrap(), base.exterior_center());
        // different generator images: x1 + x2 + z, x2, x3 - z, x4
        let mut gens: Vec<Element> = (0..4).map(|i| h2.basis_element(i)).collect();
        gens[0][1] = Q.one();
        gens[0][4] = Q.one();
        gens[2][4] = Q.from_i64(-1);
        let other = free_presentation_with(&h2, &gens).unwrap();
        assert_eq!(other.multiplier_dim(), base.multiplier_dim());
        assert_eq!(other.exterior_center(), base.exterior_center());
        // a bad section is rejected
        assert!(base.exterior_center_with_section(&shifted[1..]).is_err());
    }

    #[test]
    fn not_generating_is_rejected() {
        let l = l43(Q);
        let gens = vec![l.basis_element(0), l.basis_element(2)];
        assert!(matches!(free_presentation_with(&l, &gens), Err(Error::NotGenerating)));
    }

    #[test]
    fn dd_examples() {
        let h = heis(Q);
        let z = Subspace::coordinate(Q, 3, [2]);
        let c = epicenter_test_dd(&h, &z).unwrap();
        // M(H(1)) = 2, M(A(2)) = 1, overlap 1
        assert_eq!((c.lhs, c.rhs, c.contained), (2, 0, false));
        assert!(c.consistent());
        let zero = Subspace::zero(Q, 3);
        let c = epicenter_test_dd(&h, &zero).unwrap();
        assert_eq!(c.lhs, c.rhs);
        assert!(c.contained);
        assert!(matches!(
            epicenter_test_dd(&h, &Subspace::coordinate(Q, 3, [0])),
            Err(Error::NotCentral)
        ));
    }

    #[test]
    fn zero_algebra() {
        let z = LieAlgebra::abelian(Q, 0);
        let r = analyze(&z).unwrap();
        assert_eq!((r.dim_multiplier, r.capable), (0, true));
    }
}
