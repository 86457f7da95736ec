//! Dense exact linear algebra: row reduction, kernels and canonical subspaces.
//!
//! Subspaces are always stored in reduced row-echelon form, so two subspaces
//! are equal exactly when their `Subspace` values are equal.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`.
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            yi.add_mul(a, xi);
        }
    }
}

pub fn scale(v: &mut [Scalar], a: &Scalar) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * a;
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a
        .first()
        .map(|x| x.field().zero())
        .expect("dot of empty vectors");
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

/// A dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![zero_vector(field, cols); rows],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            if r.iter().any(|x| !field.contains(x)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Matrix { field, cols, rows })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix {
            field,
            cols,
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.rows[i][j] = x;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    t.rows[j][i] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows.len();
        if n != self.cols {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.cols,
            });
        }
        let augmented: Vec<Vector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vector(self.field, n, i));
                row
            })
            .collect();
        let reduced = rref(&Matrix {
            field: self.field,
            cols: 2 * n,
            rows: augmented,
        });
        if reduced.rank < n || reduced.pivots.iter().any(|&p| p >= n) {
            return Err(Error::DivisionByZero);
        }
        let rows = reduced
            .matrix
            .rows
            .into_iter()
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Matrix {
            field: self.field,
            cols: n,
            rows,
        })
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows of the reduced form.
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Incremental row-echelon basis of a growing span.
///
/// Rows are kept in semi-echelon form (leading one at the pivot, zeros in
/// earlier pivot columns); [`SpanBuilder::finish`] back-substitutes into RREF.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vector>,
    pivot_row: Vec<Option<usize>>,
}

impl SpanBuilder {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        SpanBuilder {
            field,
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Clears every pivot column of `v`.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coeff = -&v[c];
                axpy(v, &coeff, &self.rows[r]);
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn push(&mut self, mut v: Vector) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().expect("nonzero leading entry");
        scale(&mut v, &inv);
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn finish(self) -> Subspace {
        let mut order: Vec<usize> = (0..self.dim)
            .filter_map(|c| self.pivot_row[c])
            .collect();
        let pivots: Vec<usize> = (0..self.dim)
            .filter(|&c| self.pivot_row[c].is_some())
            .collect();
        let mut rows: Vec<Vector> = order.drain(..).map(|r| self.rows[r].clone()).collect();
        for i in (0..rows.len()).rev() {
            for j in i + 1..rows.len() {
                let coeff = -&rows[i][pivots[j]];
                if coeff.is_zero() {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(j);
                axpy(&mut head[i], &coeff, &tail[0]);
            }
        }
        Subspace {
            field: self.field,
            ambient: self.dim,
            rows,
            pivots,
        }
    }
}

/// Reduced row-echelon form; the row space is preserved.
pub fn rref(m: &Matrix) -> Rref {
    let mut builder = SpanBuilder::new(m.field, m.cols);
    for r in &m.rows {
        builder.push(r.clone());
    }
    let s = builder.finish();
    let rank = s.dim();
    Rref {
        matrix: Matrix {
            field: m.field,
            cols: m.cols,
            rows: s.rows,
        },
        pivots: s.pivots,
        rank,
    }
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let reduced = rref(m);
    let field = m.field;
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    let mut builder = SpanBuilder::new(field, n);
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = unit_vector(field, n, f);
        for (row, &p) in reduced.matrix.rows.iter().zip(&reduced.pivots) {
            if !row[f].is_zero() {
                v[p] = -&row[f];
            }
        }
        builder.push(v);
    }
    builder.finish()
}

/// A subspace of `field^ambient`, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vectors {
            b.push(v);
        }
        b.finish()
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors at `indices`.
    pub fn coordinate<I: IntoIterator<Item = usize>>(field: FieldSpec, ambient: usize, indices: I) -> Self {
        Self::span(
            field,
            ambient,
            indices.into_iter().map(|i| unit_vector(field, ambient, i)),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix {
            field: self.field,
            cols: self.ambient,
            rows: self.rows.clone(),
        }
    }

    /// Canonical representative of `v` modulo this subspace (zero at every pivot).
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let coeff = -&out[p];
                axpy(&mut out, &coeff, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut v = zero_vector(self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&mut v, c, row);
        }
        v
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut b = SpanBuilder::new(self.field, self.ambient);
        for r in self.rows.iter().chain(&other.rows) {
            b.push(r.clone());
        }
        Ok(b.finish())
    }

    /// Intersection via the annihilator of `other`: a combination of this
    /// basis lies in `other` iff it is orthogonal to every vector of `other^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let annihilator = kernel(&other.basis_matrix());
        if annihilator.is_zero() {
            return Ok(self.clone());
        }
        // constraints[k][i] = <a_i, w_k>
        let constraints: Vec<Vector> = annihilator
            .rows
            .iter()
            .map(|w| self.rows.iter().map(|a| dot(a, w)).collect())
            .collect();
        let coeffs = kernel(&Matrix {
            field: self.field,
            cols: self.rows.len(),
            rows: constraints,
        });
        Ok(Subspace::span(
            self.field,
            self.ambient,
            coeffs.rows.iter().map(|c| self.combine(c)),
        ))
    }

    /// Deterministic complement of `self` inside `ambient`: the canonical
    /// basis rows of `ambient` whose pivots are not pivots of `self`.
    pub fn complement_in(&self, ambient: &Subspace) -> Result<Subspace> {
        self.check_compatible(ambient)?;
        if !ambient.contains_subspace(self) {
            return Err(Error::NotContained);
        }
        Ok(Subspace::span(
            self.field,
            self.ambient,
            ambient
                .rows
                .iter()
                .zip(&ambient.pivots)
                .filter(|(_, p)| !self.pivots.contains(p))
                .map(|(r, _)| r.clone()),
        ))
    }

    /// Image of this subspace under `v ↦ m v`, where `m` maps `ambient` to some other space.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span(self.field, m.nrows(), self.rows.iter().map(|r| m.mul_vec(r)))
    }
}

/// Zassenhaus intersection: reduce `[a | a]` stacked over `[b | 0]`; rows
/// whose left half vanishes span `a ∩ b` in their right half.
pub fn zassenhaus_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_compatible(b)?;
    let n = a.ambient;
    let field = a.field;
    let mut rows = Vec::with_capacity(a.dim() + b.dim());
    for r in &a.rows {
        let mut row = r.clone();
        row.extend(r.iter().cloned());
        rows.push(row);
    }
    for r in &b.rows {
        let mut row = r.clone();
        row.extend(zero_vector(field, n));
        rows.push(row);
    }
    let reduced = rref(&Matrix {
        field,
        cols: 2 * n,
        rows,
    });
    Ok(Subspace::span(
        field,
        n,
        reduced
            .matrix
            .rows
            .into_iter()
            .zip(reduced.pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec()),
    ))
}
