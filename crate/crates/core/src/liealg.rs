//! Lie algebras given by structure constants, and the structural
//! operations on them: series, centers, quotients, sums, central products
//! and the stem decomposition.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{axpy, is_zero_vector, kernel, unit_vector, zero_vector, Matrix, Subspace, Vector};

/// Sparse coordinate vector: `(index, coefficient)` pairs, sorted, nonzero.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Coordinates of an algebra element in the algebra's basis.
pub type Element = Vector;

/// `(i, j, &[(k, c)])` rows meaning `[x_i, x_j] = Σ c x_k`, 1-based.
pub type IntTable<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

/// A finite-dimensional Lie algebra over `field` with basis `e_0 .. e_{n-1}`.
///
/// Only the brackets `[e_i, e_j]` with `i < j` are stored; antisymmetry is
/// built into every accessor. The Jacobi identity is *not* assumed: call
/// [`LieAlgebra::validate`].
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<SparseVec>,
    name: Option<String>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

/// Merges accumulated `(index, coeff)` terms into a canonical sparse vector.
fn collapse(mut terms: Vec<(usize, Scalar)>) -> SparseVec {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc = &*acc + &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Outcome of the Jacobi check; lists every violating basis triple `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Boolean structural invariants of a nilpotent algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralFlags {
    pub abelian: bool,
    pub stem: bool,
    /// `Some(rank)` when `L² = Z(L)`, with rank `dim L²`.
    pub generalized_heisenberg: Option<usize>,
    pub maximal_class: bool,
}

impl LieAlgebra {
    /// The abelian algebra `A(n)`.
    pub fn abelian(field: FieldSpec, dim: usize) -> Self {
        LieAlgebra {
            field,
            dim,
            table: vec![Vec::new(); dim * dim.saturating_sub(1) / 2],
            name: None,
        }
    }

    /// Builds an algebra from `(i, j, [e_i, e_j])` triples with 0-based indices.
    pub fn from_brackets<I>(field: FieldSpec, dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    {
        let mut l = Self::abelian(field, dim);
        for (i, j, out) in brackets {
            l.set_bracket(i, j, out)?;
        }
        Ok(l)
    }

    /// Builds an algebra from small-integer structure constants, 1-based
    /// indices: `(i, j, &[(k, c)])` means `[x_i, x_j] = Σ c x_k`.
    pub fn from_table_1based(field: FieldSpec, dim: usize, table: IntTable<'_>) -> Result<Self> {
        Self::from_brackets(
            field,
            dim,
            table.iter().map(|(i, j, out)| {
                (
                    i.wrapping_sub(1),
                    j.wrapping_sub(1),
                    out.iter()
                        .map(|&(k, c)| (k.wrapping_sub(1), field.from_i64(c)))
                        .collect(),
                )
            }),
        )
    }

    /// Sets `[e_i, e_j]`; `[e_j, e_i]` follows by antisymmetry.
    pub fn set_bracket(&mut self, i: usize, j: usize, out: Vec<(usize, Scalar)>) -> Result<()> {
        if i == j || i >= self.dim || j >= self.dim {
            return Err(Error::InvalidIndex(i, j));
        }
        if out.iter().any(|(k, c)| *k >= self.dim || !self.field.contains(c)) {
            return Err(Error::InvalidIndex(i, j));
        }
        let mut out = collapse(out);
        let (a, b) = if i < j {
            (i, j)
        } else {
            for t in out.iter_mut() {
                t.1 = -&t.1;
            }
            (j, i)
        };
        let idx = pair_index(self.dim, a, b);
        self.table[idx] = out;
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored bracket `[e_i, e_j]` for `i < j`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[pair_index(self.dim, i, j)]
    }

    /// Nonzero stored brackets `(i, j, [e_i, e_j])` with `i < j`, in order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Scalar)])> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, self.structure(i, j)))
            .filter(|(_, _, v)| !v.is_empty())
    }

    /// Equality of field, dimension and structure constants (names ignored).
    pub fn same_table(&self, other: &LieAlgebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }

    fn check_element(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch(self.dim, s.ambient_dim()));
        }
        if s.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn zero_element(&self) -> Element {
        zero_vector(self.field, self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        unit_vector(self.field, self.dim, i)
    }

    /// Adds `coeff * [e_i, e_j]` into the dense accumulator `acc`.
    fn add_basis_bracket(&self, acc: &mut [Scalar], coeff: &Scalar, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (a, b, c) = if i < j { (i, j, coeff.clone()) } else { (j, i, -coeff) };
        for (k, x) in self.structure(a, b) {
            acc[*k].add_mul(&c, x);
        }
    }

    /// `[x, e_j]`.
    pub fn bracket_with_basis(&self, x: &[Scalar], j: usize) -> Element {
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                self.add_basis_bracket(&mut out, xi, i, j);
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                self.add_basis_bracket(&mut out, &c, i, j);
            }
        }
        Ok(out)
    }

    /// Sparse `[e_a, v]` accumulated into `terms` with factor `coeff`.
    fn push_ad(&self, terms: &mut Vec<(usize, Scalar)>, coeff: &Scalar, a: usize, v: &[(usize, Scalar)]) {
        for (m, vm) in v {
            if *m == a {
                continue;
            }
            let c = coeff * vm;
            let (lo, hi, c) = if a < *m { (a, *m, c) } else { (*m, a, -c) };
            for (k, x) in self.structure(lo, hi) {
                terms.push((*k, &c * x));
            }
        }
    }

    fn signed_structure(&self, i: usize, j: usize) -> SparseVec {
        if i < j {
            self.structure(i, j).to_vec()
        } else {
            self.structure(j, i).iter().map(|(k, c)| (*k, -c)).collect()
        }
    }

    /// Checks `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0` on all triples.
    pub fn validate(&self) -> JacobiReport {
        let n = self.dim;
        let one = self.field.one();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.structure(i, j);
                for k in j + 1..n {
                    let jk = self.structure(j, k);
                    let ki = self.signed_structure(k, i);
                    if ij.is_empty() && jk.is_empty() && ki.is_empty() {
                        continue;
                    }
                    let mut terms = Vec::new();
                    self.push_ad(&mut terms, &one, i, jk);
                    self.push_ad(&mut terms, &one, j, &ki);
                    self.push_ad(&mut terms, &one, k, ij);
                    if !collapse(terms).is_empty() {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        JacobiReport { violations }
    }

    /// Span of `[a, b]` over basis pairs of `a` and `b`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut out = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                out.push(self.bracket(x, y)?);
            }
        }
        Ok(Subspace::span(self.field, self.dim, out))
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    /// The derived subalgebra `L² = [L, L]`.
    pub fn derived(&self) -> Subspace {
        let vectors = self.nonzero_brackets().map(|(_, _, v)| {
            let mut e = self.zero_element();
            for (k, c) in v {
                e[*k] = c.clone();
            }
            e
        });
        Subspace::span(self.field, self.dim, vectors.collect::<Vec<_>>())
    }

    /// `L¹ = L, L^{i+1} = [L^i, L]`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>> {
        let full = self.full();
        let mut series = vec![full.clone()];
        while !series.last().unwrap().is_zero() {
            if series.len() > self.dim + 1 {
                return Err(Error::NotNilpotent);
            }
            let next = self.bracket_subspaces(series.last().unwrap(), &full)?;
            if next == *series.last().unwrap() {
                return Err(Error::NotNilpotent);
            }
            series.push(next);
        }
        Ok(series)
    }

    /// Nilpotency class: the last index `c` with `L^c ≠ 0` (0 for the zero algebra).
    pub fn nilpotency_class(&self) -> Result<usize> {
        Ok(self.lower_central_series()?.len() - 1)
    }

    /// `{x : [x, e_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            // row k of the block: x ↦ coefficient of e_k in [x, e_j]
            let mut block = vec![zero_vector(self.field, n); n];
            let mut any = false;
            for i in (0..n).filter(|&i| i != j) {
                for (k, c) in self.signed_structure(i, j) {
                    block[k][i] = c;
                    any = true;
                }
            }
            if any {
                rows.extend(block.into_iter().filter(|r| !is_zero_vector(r)));
            }
        }
        if rows.is_empty() {
            return self.full();
        }
        kernel(&Matrix::from_rows(self.field, n, rows).expect("well-formed"))
    }

    /// `Z_0 = 0, Z_{i+1}` = preimage of `Z(L/Z_i)`; stops when the series
    /// reaches `L` or stalls (non-nilpotent input).
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::zero(self.field, self.dim)];
        loop {
            let current = series.last().unwrap().clone();
            if current.dim() == self.dim {
                break;
            }
            let (q, _) = self
                .quotient(&current)
                .expect("upper central terms are ideals");
            let reps = complement_indices(&current);
            let qc = q.center();
            let lifted = qc.basis().iter().map(|row| {
                let mut v = self.zero_element();
                for (a, c) in row.iter().enumerate() {
                    v[reps[a]] = c.clone();
                }
                v
            });
            let next = current
                .sum(&Subspace::span(self.field, self.dim, lifted.collect::<Vec<_>>()))
                .expect("same ambient");
            if next == current {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn predicates(&self) -> Result<StructuralFlags> {
        let class = self.nilpotency_class()?;
        let derived = self.derived();
        let center = self.center();
        Ok(StructuralFlags {
            abelian: derived.is_zero(),
            stem: derived.contains_subspace(&center),
            generalized_heisenberg: (derived == center).then(|| derived.dim()),
            maximal_class: class + 1 == self.dim,
        })
    }

    /// Whether `[L, I] ⊆ I`.
    pub fn is_ideal(&self, ideal: &Subspace) -> Result<bool> {
        self.check_subspace(ideal)?;
        for v in ideal.basis() {
            for j in 0..self.dim {
                if !ideal.contains(&self.bracket_with_basis(v, j)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `L / I` on the basis of standard vectors at the non-pivot columns of
    /// `I`, together with the projection `L → L/I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Hom)> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let reps = complement_indices(ideal);
        let m = reps.len();
        let project = |v: &[Scalar]| -> Vector {
            let r = ideal.reduce(v);
            reps.iter().map(|&k| r[k].clone()).collect()
        };
        let mut q = LieAlgebra::abelian(self.field, m);
        for a in 0..m {
            for b in a + 1..m {
                let mut w = self.zero_element();
                for (k, c) in self.structure(reps[a], reps[b]) {
                    w[*k] = c.clone();
                }
                let out = to_sparse(&project(&w));
                q.table[pair_index(m, a, b)] = out;
            }
        }
        let images = (0..self.dim).map(|j| project(&self.basis_element(j))).collect();
        Ok((q, Hom::new(self.field, self.dim, m, images)))
    }

    /// The subalgebra `S` written in its canonical basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        self.check_subspace(s)?;
        let basis = s.basis();
        let m = basis.len();
        let mut out = LieAlgebra::abelian(self.field, m);
        for a in 0..m {
            for b in a + 1..m {
                let w = self.bracket(&basis[a], &basis[b])?;
                let coords = s.coordinates(&w).ok_or(Error::NotSubalgebra)?;
                out.table[pair_index(m, a, b)] = to_sparse(&coords);
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum `A ⊕ B`; `B`'s basis follows `A`'s.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let off = self.dim;
        let mut out = LieAlgebra::abelian(self.field, self.dim + other.dim);
        for (i, j, v) in self.nonzero_brackets() {
            let idx = pair_index(out.dim, i, j);
            out.table[idx] = v.to_vec();
        }
        for (i, j, v) in other.nonzero_brackets() {
            let idx = pair_index(out.dim, i + off, j + off);
            out.table[idx] = v.iter().map(|(k, c)| (k + off, c.clone())).collect();
        }
        Ok(out)
    }

    /// `(A ⊕ B) / span{(a_i, -b_i)}`: glues the central elements `a_i` of
    /// `self` to the central elements `b_i` of `other`.
    pub fn central_product(&self, other: &LieAlgebra, pairs: &[(Element, Element)]) -> Result<CentralProduct> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let za = self.center();
        let zb = other.center();
        for (a, b) in pairs {
            self.check_element(a)?;
            other.check_element(b)?;
            if !za.contains(a) || !zb.contains(b) {
                return Err(Error::NotCentral);
            }
        }
        let left = Subspace::span(self.field, self.dim, pairs.iter().map(|p| p.0.clone()));
        let right = Subspace::span(self.field, other.dim, pairs.iter().map(|p| p.1.clone()));
        if left.dim() != pairs.len() || right.dim() != pairs.len() {
            return Err(Error::DependentIdentification);
        }
        let sum = self.direct_sum(other)?;
        let glue = Subspace::span(
            self.field,
            sum.dim,
            pairs.iter().map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().map(|x| -x));
                v
            }),
        );
        let (algebra, projection) = sum.quotient(&glue)?;
        let left_image = Subspace::span(
            self.field,
            algebra.dim,
            (0..self.dim).map(|i| projection.image_of_basis(i).clone()),
        );
        let right_image = Subspace::span(
            self.field,
            algebra.dim,
            (0..other.dim).map(|i| projection.image_of_basis(self.dim + i).clone()),
        );
        Ok(CentralProduct {
            algebra,
            projection,
            left_image,
            right_image,
        })
    }

    /// Splits `L = T ⊕ A` with `A` abelian and `T` stem.
    ///
    /// `A` is the canonical complement of `L² ∩ Z(L)` in `Z(L)`, and `T` is
    /// `L²` plus the canonical complement of `L² + A` in `L`.
    pub fn stem_decompose(&self) -> Result<StemDecomposition> {
        let derived = self.derived();
        let center = self.center();
        let core = derived.intersect(&center)?;
        let abelian_subspace = core.complement_in(&center)?;
        let span = derived.sum(&abelian_subspace)?;
        let stem_subspace = derived.sum(&span.complement_in(&self.full())?)?;
        let stem = self.restrict(&stem_subspace)?;
        let abelian = LieAlgebra::abelian(self.field, abelian_subspace.dim());
        Ok(StemDecomposition {
            stem,
            abelian,
            stem_subspace,
            abelian_subspace,
        })
    }

    /// Canonical complement of `L²`; its dimension is the minimal number of generators.
    pub fn minimal_generators(&self) -> Subspace {
        self.derived()
            .complement_in(&self.full())
            .expect("L² ⊆ L")
    }
}

/// Non-pivot columns of a canonical subspace, i.e. the standard vectors
/// spanning its canonical complement.
pub fn complement_indices(s: &Subspace) -> Vec<usize> {
    (0..s.ambient_dim())
        .filter(|c| !s.pivots().contains(c))
        .collect()
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dim {} over {}", self.name.as_deref().unwrap_or("L"), self.dim, self.field)?;
        for (i, j, v) in self.nonzero_brackets() {
            write!(f, "\n  [x{}, x{}] =", i + 1, j + 1)?;
            for (n, (k, c)) in v.iter().enumerate() {
                let sep = if n == 0 { " " } else { " + " };
                if c.is_one() {
                    write!(f, "{sep}x{}", k + 1)?;
                } else {
                    write!(f, "{sep}({c})x{}", k + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// A linear map between algebras, stored by the images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    field: FieldSpec,
    source_dim: usize,
    target_dim: usize,
    images: Vec<Vector>,
}

impl Hom {
    pub fn new(field: FieldSpec, source_dim: usize, target_dim: usize, images: Vec<Vector>) -> Self {
        assert_eq!(images.len(), source_dim);
        debug_assert!(images.iter().all(|v| v.len() == target_dim));
        Hom {
            field,
            source_dim,
            target_dim,
            images,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn image_of_basis(&self, i: usize) -> &Vector {
        &self.images[i]
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.target_dim);
        for (c, img) in v.iter().zip(&self.images) {
            axpy(&mut out, c, img);
        }
        out
    }

    /// `target_dim × source_dim` matrix.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.target_dim, self.images.clone())
            .expect("images have target dimension")
            .transpose()
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.target_dim, self.images.iter().cloned())
    }

    pub fn kernel(&self) -> Subspace {
        if self.target_dim == 0 {
            return Subspace::full(self.field, self.source_dim);
        }
        kernel(&self.matrix())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().dim() == self.target_dim
    }

    /// `φ([e_i, e_j]) = [φ e_i, φ e_j]` on every basis pair.
    pub fn is_bracket_compatible(&self, source: &LieAlgebra, target: &LieAlgebra) -> bool {
        if source.dim != self.source_dim || target.dim != self.target_dim {
            return false;
        }
        for i in 0..self.source_dim {
            for j in i + 1..self.source_dim {
                let mut lhs = zero_vector(self.field, self.target_dim);
                for (k, c) in source.structure(i, j) {
                    axpy(&mut lhs, c, &self.images[*k]);
                }
                let rhs = target
                    .bracket(&self.images[i], &self.images[j])
                    .expect("dimensions checked");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of [`LieAlgebra::central_product`].
#[derive(Clone, Debug)]
pub struct CentralProduct {
    pub algebra: LieAlgebra,
    /// Projection from `A ⊕ B`.
    pub projection: Hom,
    pub left_image: Subspace,
    pub right_image: Subspace,
}

/// Result of [`LieAlgebra::stem_decompose`].
#[derive(Clone, Debug)]
pub struct StemDecomposition {
    pub stem: LieAlgebra,
    pub abelian: LieAlgebra,
    /// `T` inside `L`; its canonical basis is the basis of `stem`.
    pub stem_subspace: Subspace,
    pub abelian_subspace: Subspace,
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn heis(field: FieldSpec) -> LieAlgebra {
        LieAlgebra::from_table_1based(field, 3, &[(1, 2, &[(3, 1)])]).unwrap()
    }

    fn l43(field: FieldSpec) -> LieAlgebra {
        LieAlgebra::from_table_1based(field, 4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]).unwrap()
    }

    fn l55(field: FieldSpec) -> LieAlgebra {
        LieAlgebra::from_table_1based(
            field,
            5,
            &[(1, 2, &[(3, 1)]), (1, 3, &[(5, 1)]), (2, 4, &[(5, 1)])],
        )
        .unwrap()
    }

    fn dims(series: &[Subspace]) -> Vec<usize> {
        series.iter().map(Subspace::dim).collect()
    }

    fn coord(field: FieldSpec, n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(field, n, idx.iter().copied())
    }

    #[test]
    fn validate_examples() {
        assert!(heis(Q).validate().passed());
        assert!(l43(Q).validate().passed());
        let bad = LieAlgebra::from_table_1based(Q, 3, &[(1, 2, &[(3, 1)]), (1, 3, &[(1, 1)])]).unwrap();
        assert_eq!(bad.validate().violations, vec![(0, 1, 2)]);
    }

    #[test]
    fn bracket_examples() {
        let h = heis(Q);
        let z = h.bracket(&h.basis_element(0), &h.basis_element(1)).unwrap();
        assert_eq!(z, h.basis_element(2));
        let x: Element = vec![Q.from_i64(2), Q.from_i64(-1), Q.from_i64(5)];
        assert!(is_zero_vector(&h.bracket(&x, &x).unwrap()));
        let back = h.bracket(&h.basis_element(1), &h.basis_element(0)).unwrap();
        assert_eq!(back, vec![Q.zero(), Q.zero(), Q.from_i64(-1)]);
        let l = l55(Q);
        assert_eq!(l.bracket(&l.basis_element(1), &l.basis_element(3)).unwrap(), l.basis_element(4));
        assert!(h.bracket(&h.basis_element(0), &l.basis_element(0)).is_err());
    }

    #[test]
    fn bracket_subspace_examples() {
        let h = heis(Q);
        assert_eq!(h.bracket_subspaces(&h.full(), &h.full()).unwrap(), coord(Q, 3, &[2]));
        assert!(h
            .bracket_subspaces(&h.full(), &Subspace::zero(Q, 3))
            .unwrap()
            .is_zero());
        let l = l55(Q);
        assert_eq!(l.bracket_subspaces(&l.full(), &l.full()).unwrap(), l.derived());
    }

    #[test]
    fn lower_series_examples() {
        let l = l43(Q);
        assert_eq!(dims(&l.lower_central_series().unwrap()), vec![4, 2, 1, 0]);
        assert_eq!(l.nilpotency_class().unwrap(), 3);
        let a = LieAlgebra::abelian(Q, 3);
        assert_eq!(dims(&a.lower_central_series().unwrap()), vec![3, 0]);
        // sl2-like: [e,f]=h, [h,e]=2e, [h,f]=-2f is not nilpotent
        let sl2 = LieAlgebra::from_table_1based(
            Q,
            3,
            &[(1, 2, &[(3, 1)]), (3, 1, &[(1, 2)]), (3, 2, &[(2, -2)])],
        )
        .unwrap();
        assert!(sl2.validate().passed());
        assert!(matches!(sl2.lower_central_series(), Err(Error::NotNilpotent)));
    }

    #[test]
    fn upper_series_examples() {
        assert_eq!(heis(Q).center(), coord(Q, 3, &[2]));
        let l = l55(Q);
        let upper = l.upper_central_series();
        assert_eq!(upper[1], coord(Q, 5, &[4]));
        assert_eq!(upper[2], coord(Q, 5, &[2, 3, 4]));
        assert_eq!(upper.last().unwrap().dim(), 5);
        assert_eq!(upper.len() - 1, l.nilpotency_class().unwrap());
        let a = LieAlgebra::abelian(Q, 4);
        assert_eq!(a.center(), a.full());
    }

    #[test]
    fn upper_series_matches_direct_centralizers() {
        // Z_{i+1} = {x : [x, e_j] ∈ Z_i for all j}, computed by brute-force membership
        let l = l55(FieldSpec::Prime(3));
        let upper = l.upper_central_series();
        let els = FieldSpec::Prime(3).elements();
        for w in upper.windows(2) {
            let mut count = 0;
            for a in &els {
                for b in &els {
                    for c in &els {
                        for d in &els {
                            for e in &els {
                                let x = vec![a.clone(), b.clone(), c.clone(), d.clone(), e.clone()];
                                let inside = (0..5).all(|j| w[0].contains(&l.bracket_with_basis(&x, j)));
                                assert_eq!(inside, w[1].contains(&x));
                                count += inside as usize;
                            }
                        }
                    }
                }
            }
            assert_eq!(count, 3usize.pow(w[1].dim() as u32));
        }
    }

    #[test]
    fn predicate_examples() {
        let p = l43(Q).predicates().unwrap();
        assert!(p.stem && p.maximal_class && p.generalized_heisenberg.is_none());
        let l58 = LieAlgebra::from_table_1based(Q, 5, &[(1, 2, &[(4, 1)]), (1, 3, &[(5, 1)])]).unwrap();
        assert_eq!(l58.predicates().unwrap().generalized_heisenberg, Some(2));
        let ha = heis(Q).direct_sum(&LieAlgebra::abelian(Q, 1)).unwrap();
        assert!(!ha.predicates().unwrap().stem);
        assert!(LieAlgebra::abelian(Q, 2).predicates().unwrap().abelian);
    }

    #[test]
    fn quotient_examples() {
        let l57 = LieAlgebra::from_table_1based(
            Q,
            5,
            &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (1, 4, &[(5, 1)])],
        )
        .unwrap();
        let (q, proj) = l57.quotient(&coord(Q, 5, &[4])).unwrap();
        assert!(q.same_table(&l43(Q)));
        assert!(proj.is_bracket_compatible(&l57, &q));

        let l = l43(Q);
        let (zero, _) = l.quotient(&l.full()).unwrap();
        assert_eq!(zero.dim(), 0);

        assert!(matches!(l.quotient(&coord(Q, 4, &[0])), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn direct_sum_examples() {
        let s = heis(Q).direct_sum(&LieAlgebra::abelian(Q, 2)).unwrap();
        assert_eq!((s.dim(), s.derived().dim()), (5, 1));
        let l = l43(Q);
        assert!(l.direct_sum(&LieAlgebra::abelian(Q, 0)).unwrap().same_table(&l));
        let s = l.direct_sum(&LieAlgebra::abelian(Q, 1)).unwrap();
        assert_eq!((s.dim(), s.nilpotency_class().unwrap(), s.center().dim()), (5, 3, 2));
        assert!(matches!(
            l.direct_sum(&LieAlgebra::abelian(FieldSpec::Prime(2), 1)),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn central_product_examples() {
        let h = heis(Q);
        let z = h.basis_element(2);
        let cp = h.central_product(&h, &[(z.clone(), z.clone())]).unwrap();
        let h2 = LieAlgebra::from_table_1based(Q, 5, &[(1, 2, &[(5, 1)]), (3, 4, &[(5, 1)])]).unwrap();
        assert!(cp.algebra.same_table(&h2));
        let l = l43(Q);
        let cp = l.central_product(&h, &[(l.basis_element(3), z.clone())]).unwrap();
        let l610 = LieAlgebra::from_table_1based(
            Q,
            6,
            &[(1, 2, &[(3, 1)]), (1, 3, &[(6, 1)]), (4, 5, &[(6, 1)])],
        )
        .unwrap();
        assert!(cp.algebra.same_table(&l610));
        assert!(cp.projection.is_bracket_compatible(&l.direct_sum(&h).unwrap(), &cp.algebra));
        let meet = cp.left_image.intersect(&cp.right_image).unwrap();
        assert!(cp.algebra.center().contains_subspace(&meet));
        assert!(cp
            .algebra
            .bracket_subspaces(&cp.left_image, &cp.right_image)
            .unwrap()
            .is_zero());

        let plain = l.central_product(&h, &[]).unwrap();
        assert!(plain.algebra.same_table(&l.direct_sum(&h).unwrap()));

        assert!(matches!(
            l.central_product(&h, &[(l.basis_element(0), z.clone())]),
            Err(Error::NotCentral)
        ));
        let ha = h.direct_sum(&LieAlgebra::abelian(Q, 1)).unwrap();
        let twice = vec![(ha.basis_element(2), ha.basis_element(2)), (ha.basis_element(2), ha.basis_element(3))];
        assert!(matches!(
            ha.central_product(&ha, &twice),
            Err(Error::DependentIdentification)
        ));
    }

    #[test]
    fn stem_decompose_examples() {
        let l = l43(Q).direct_sum(&LieAlgebra::abelian(Q, 2)).unwrap();
        let d = l.stem_decompose().unwrap();
        assert!(d.stem.same_table(&l43(Q)));
        assert_eq!(d.abelian.dim(), 2);

        let s = l55(Q).stem_decompose().unwrap();
        assert!(s.stem.same_table(&l55(Q)));
        assert_eq!(s.abelian.dim(), 0);

        let l = heis(Q).direct_sum(&LieAlgebra::abelian(Q, 3)).unwrap();
        let d = l.stem_decompose().unwrap();
        assert_eq!((d.stem.dim(), d.abelian.dim()), (3, 3));
        assert!(d.stem.predicates().unwrap().stem);
        assert!(l.bracket_subspaces(&d.stem_subspace, &d.abelian_subspace).unwrap().is_zero());
        assert!(d.stem_subspace.intersect(&d.abelian_subspace).unwrap().is_zero());
        assert_eq!(d.stem_subspace.sum(&d.abelian_subspace).unwrap(), l.full());
    }

    #[test]
    fn minimal_generator_examples() {
        let h2 = LieAlgebra::from_table_1based(Q, 5, &[(1, 2, &[(5, 1)]), (3, 4, &[(5, 1)])]).unwrap();
        assert_eq!(h2.minimal_generators().dim(), 4);
        assert_eq!(l43(Q).minimal_generators().dim(), 2);
        assert_eq!(LieAlgebra::abelian(Q, 5).minimal_generators().dim(), 5);
    }

    #[test]
    fn set_bracket_rejects_diagonal() {
        let mut l = LieAlgebra::abelian(Q, 3);
        assert!(matches!(l.set_bracket(1, 1, vec![]), Err(Error::InvalidIndex(1, 1))));
        l.set_bracket(2, 0, vec![(1, Q.one())]).unwrap();
        assert_eq!(l.structure(0, 2), &[(1, Q.from_i64(-1))]);
    }
}
