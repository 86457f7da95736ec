//! Free nilpotent Lie algebras `F(d, c)` on a Hall basis.
//!
//! A Hall tree is either a generator or a pair `(l, r)` of earlier Hall
//! trees with `l < r` and, when `r = (r1, r2)`, `r1 ≤ l`. Trees are ordered
//! by degree, then by `(l, r)` index pairs, and the basis index of a tree is
//! its position in that order. Brackets of basis elements are rewritten into
//! the basis with the Jacobi identity; degrees above the class vanish.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::liealg::{Element, Hom, LieAlgebra};
use crate::linalg::{axpy, zero_vector};

/// Default bound on `dim F(d, c)`.
pub const DEFAULT_DIM_LIMIT: usize = 2000;

/// A Hall tree; children refer to basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HallTree {
    Generator(usize),
    Bracket { left: usize, right: usize },
}

/// Hall basis of the free Lie algebra on `d` generators, truncated at degree `c`.
#[derive(Clone, Debug)]
pub struct HallBasis {
    generators: usize,
    class: usize,
    trees: Vec<HallTree>,
    degrees: Vec<usize>,
    offsets: Vec<Range<usize>>,
    lookup: HashMap<(usize, usize), usize>,
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt's formula: dimension of the degree-`k` component of the free Lie
/// algebra on `d` generators, `(1/k) Σ_{m | k} μ(m) d^{k/m}`.
pub fn witt(d: usize, k: usize) -> usize {
    assert!(k >= 1);
    let mut total: i128 = 0;
    for m in 1..=k {
        if k.is_multiple_of(m) {
            total += mobius(m as u64) as i128 * (d as i128).pow((k / m) as u32);
        }
    }
    (total / k as i128) as usize
}

/// `Σ_{k ≤ c} witt(d, k)`.
pub fn free_nilpotent_dim(d: usize, c: usize) -> usize {
    (1..=c).map(|k| witt(d, k)).sum()
}

/// Generates the Hall basis up to degree `c`.
pub fn hall_basis(d: usize, c: usize) -> HallBasis {
    let mut trees: Vec<HallTree> = (0..d).map(HallTree::Generator).collect();
    let mut degrees = vec![1; d];
    let mut offsets = vec![0..0, 0..d];
    let mut lookup = HashMap::new();
    for k in 2..=c {
        let mut fresh = Vec::new();
        for dl in 1..=k / 2 {
            let dr = k - dl;
            for l in offsets[dl].clone() {
                for r in offsets[dr].clone() {
                    if l >= r {
                        continue;
                    }
                    let admissible = match trees[r] {
                        HallTree::Generator(_) => true,
                        HallTree::Bracket { left, .. } => left <= l,
                    };
                    if admissible {
                        fresh.push((l, r));
                    }
                }
            }
        }
        fresh.sort_unstable();
        let start = trees.len();
        for (l, r) in fresh {
            lookup.insert((l, r), trees.len());
            trees.push(HallTree::Bracket { left: l, right: r });
            degrees.push(k);
        }
        offsets.push(start..trees.len());
    }
    HallBasis {
        generators: d,
        class: c,
        trees,
        degrees,
        offsets,
        lookup,
    }
}

impl HallBasis {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn trees(&self) -> &[HallTree] {
        &self.trees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Basis index range of the degree-`k` component (`1 ≤ k ≤ c`).
    pub fn degree_range(&self, k: usize) -> Range<usize> {
        self.offsets.get(k).cloned().unwrap_or(0..0)
    }

    pub fn per_degree_counts(&self) -> Vec<usize> {
        (1..=self.class).map(|k| self.degree_range(k).len()).collect()
    }

    /// Basis index of the Hall pair `(l, r)`, if it is one.
    pub fn index_of(&self, left: usize, right: usize) -> Option<usize> {
        self.lookup.get(&(left, right)).copied()
    }

    /// Bracket notation, e.g. `[x1,[x1,x2]]`.
    pub fn tree_string(&self, i: usize) -> String {
        match self.trees[i] {
            HallTree::Generator(g) => format!("x{}", g + 1),
            HallTree::Bracket { left, right } => {
                format!("[{},{}]", self.tree_string(left), self.tree_string(right))
            }
        }
    }
}

type IntVec = Vec<(usize, i64)>;

/// Memoized rewriting of `[h_i, h_j]` into the Hall basis with integer coefficients.
struct Rewriter<'a> {
    basis: &'a HallBasis,
    memo: HashMap<(usize, usize), IntVec>,
}

fn merge(terms: &mut Vec<(usize, i64)>) {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: IntVec = Vec::with_capacity(terms.len());
    for &(k, c) in terms.iter() {
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    *terms = out;
}

impl Rewriter<'_> {
    fn bracket(&mut self, i: usize, j: usize) -> IntVec {
        let b = self.basis;
        if i == j || b.degrees[i] + b.degrees[j] > b.class {
            return Vec::new();
        }
        if i > j {
            return self.bracket(j, i).into_iter().map(|(k, c)| (k, -c)).collect();
        }
        if let Some(v) = self.memo.get(&(i, j)) {
            return v.clone();
        }
        let result = if let Some(idx) = b.index_of(i, j) {
            vec![(idx, 1)]
        } else {
            // j = (j1, j2) with j1 > i:  [i, [j1, j2]] = [[i, j1], j2] + [j1, [i, j2]]
            let HallTree::Bracket { left: j1, right: j2 } = b.trees[j] else {
                unreachable!("generator pairs within the class bound are Hall");
            };
            let mut terms = Vec::new();
            for (m, u) in self.bracket(i, j1) {
                terms.extend(self.bracket(m, j2).into_iter().map(|(k, c)| (k, u * c)));
            }
            for (m, w) in self.bracket(i, j2) {
                terms.extend(self.bracket(j1, m).into_iter().map(|(k, c)| (k, w * c)));
            }
            merge(&mut terms);
            terms
        };
        self.memo.insert((i, j), result.clone());
        result
    }
}

/// The free nilpotent Lie algebra `F(d, c)` with its Hall basis.
#[derive(Clone, Debug)]
pub struct FreeNilpotent {
    basis: HallBasis,
    algebra: LieAlgebra,
}

/// `F(d, c)` over `field`, bounded by [`DEFAULT_DIM_LIMIT`].
pub fn free_nilpotent(d: usize, c: usize, field: FieldSpec) -> Result<FreeNilpotent> {
    free_nilpotent_with_limit(d, c, field, DEFAULT_DIM_LIMIT)
}

pub fn free_nilpotent_with_limit(d: usize, c: usize, field: FieldSpec, limit: usize) -> Result<FreeNilpotent> {
    if d == 0 || c == 0 {
        return Err(Error::EmptyFreeAlgebra);
    }
    let dim = free_nilpotent_dim(d, c);
    if dim > limit {
        return Err(Error::ResourceLimit { dim, limit });
    }
    let basis = hall_basis(d, c);
    debug_assert_eq!(basis.len(), dim);
    let mut rewriter = Rewriter {
        basis: &basis,
        memo: HashMap::new(),
    };
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            if basis.degrees[i] + basis.degrees[j] > c {
                // degrees are sorted, so later j are heavier still
                break;
            }
            let v = rewriter.bracket(i, j);
            if !v.is_empty() {
                brackets.push((i, j, v.into_iter().map(|(k, x)| (k, field.from_i64(x))).collect()));
            }
        }
    }
    let algebra = LieAlgebra::from_brackets(field, dim, brackets)?.with_name(format!("F({d},{c})"));
    Ok(FreeNilpotent { basis, algebra })
}

impl FreeNilpotent {
    pub fn generators(&self) -> usize {
        self.basis.generators
    }

    pub fn class(&self) -> usize {
        self.basis.class
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    /// `[h_u, h_v]` in Hall coordinates.
    pub fn normalize_bracket(&self, u: usize, v: usize) -> Element {
        self.algebra.bracket_with_basis(&self.algebra.basis_element(u), v)
    }

    /// Indices of the degree-≥2 Hall elements, spanning `F²`.
    pub fn derived_indices(&self) -> Range<usize> {
        self.basis.generators..self.basis.len()
    }

    /// Extends `x_g ↦ images[g]` to the homomorphism `F → L`.
    pub fn extend_hom(&self, target: &LieAlgebra, images: &[Element]) -> Result<Hom> {
        if images.len() != self.generators() {
            return Err(Error::DimensionMismatch {
                expected: self.generators(),
                got: images.len(),
            });
        }
        if target.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        for img in images {
            if img.len() != target.dim() {
                return Err(Error::DimensionMismatch {
                    expected: target.dim(),
                    got: img.len(),
                });
            }
        }
        let class = target.nilpotency_class()?;
        if class > self.class() {
            return Err(Error::ClassTooLarge {
                class,
                bound: self.class(),
            });
        }
        let mut out: Vec<Element> = Vec::with_capacity(self.dim());
        for tree in self.basis.trees() {
            let v = match *tree {
                HallTree::Generator(g) => images[g].clone(),
                HallTree::Bracket { left, right } => target.bracket(&out[left], &out[right])?,
            };
            out.push(v);
        }
        Ok(Hom::new(self.field(), self.dim(), target.dim(), out))
    }

    /// Coordinates of `Σ coeffs[g] x_g` in the Hall basis.
    pub fn generator_combination(&self, coeffs: &[crate::field::Scalar]) -> Element {
        let mut v = zero_vector(self.field(), self.dim());
        for (g, c) in coeffs.iter().enumerate() {
            axpy(&mut v, c, &self.algebra.basis_element(g));
        }
        v
    }
}

impl fmt::Display for FreeNilpotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({}, {}) over {}:", self.generators(), self.class(), self.field())?;
        for i in 0..self.dim() {
            write!(f, " {}", self.basis.tree_string(i))?;
        }
        Ok(())
    }
}
