//! Named nilpotent algebras of small dimension, with basis `x1, x2, …` in
//! the order the defining brackets are written, and a sampler for
//! 7-dimensional generalized Heisenberg algebras of rank 2.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::liealg::LieAlgebra;
use crate::linalg::Subspace;

/// Samples drawn before [`random_gen_heisenberg`] gives up.
pub const REJECTION_BUDGET: usize = 10_000;

/// Names of the catalog families, as accepted by [`CatalogId::from_parts`].
pub const NAMES: [&str; 12] = [
    "A", "H", "L4_3", "L5_5", "L5_7", "L5_8", "L6_7_2", "L6_10", "L6_13", "L6_22", "L27A", "L27B",
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogId {
    /// Abelian of dimension `n`.
    Abelian(usize),
    /// Heisenberg `H(m)` of dimension `2m + 1`.
    Heisenberg(usize),
    L4_3,
    L5_5,
    L5_7,
    L5_8,
    /// Characteristic 2 only; `η ∈ {0, ω}`.
    L6_7_2 { eta: BigRational },
    L6_10,
    L6_13,
    /// Characteristic other than 2.
    L6_22 { eps: BigRational },
    L27A,
    L27B,
}

/// Optional parameters when naming a family.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub eps: Option<BigRational>,
    pub eta: Option<BigRational>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CatalogId {
    /// Resolves a family name plus parameters. Missing `ε`/`η` are errors;
    /// missing `n`/`m` are errors for `A`/`H`.
    pub fn from_parts(name: &str, params: &Params) -> Result<Self> {
        let need = |what: &str| Error::InvalidParameter(format!("{name} requires --{what}"));
        Ok(match name {
            "A" => CatalogId::Abelian(params.n.ok_or_else(|| need("n"))?),
            "H" => {
                let m = params.m.ok_or_else(|| need("m"))?;
                if m == 0 {
                    return Err(Error::InvalidParameter("H(m) requires m ≥ 1".into()));
                }
                CatalogId::Heisenberg(m)
            }
            "L4_3" => CatalogId::L4_3,
            "L5_5" => CatalogId::L5_5,
            "L5_7" => CatalogId::L5_7,
            "L5_8" => CatalogId::L5_8,
            "L6_7_2" => CatalogId::L6_7_2 {
                eta: params.eta.clone().ok_or_else(|| need("eta"))?,
            },
            "L6_10" => CatalogId::L6_10,
            "L6_13" => CatalogId::L6_13,
            "L6_22" => CatalogId::L6_22 {
                eps: params.eps.clone().ok_or_else(|| need("eps"))?,
            },
            "L27A" => CatalogId::L27A,
            "L27B" => CatalogId::L27B,
            other => return Err(Error::InvalidParameter(format!("unknown catalog name {other:?}"))),
        })
    }

    pub fn family(&self) -> &'static str {
        match self {
            CatalogId::Abelian(_) => "A",
            CatalogId::Heisenberg(_) => "H",
            CatalogId::L4_3 => "L4_3",
            CatalogId::L5_5 => "L5_5",
            CatalogId::L5_7 => "L5_7",
            CatalogId::L5_8 => "L5_8",
            CatalogId::L6_7_2 { .. } => "L6_7_2",
            CatalogId::L6_10 => "L6_10",
            CatalogId::L6_13 => "L6_13",
            CatalogId::L6_22 { .. } => "L6_22",
            CatalogId::L27A => "L27A",
            CatalogId::L27B => "L27B",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            CatalogId::Abelian(n) => *n,
            CatalogId::Heisenberg(m) => 2 * m + 1,
            CatalogId::L4_3 => 4,
            CatalogId::L5_5 | CatalogId::L5_7 | CatalogId::L5_8 => 5,
            CatalogId::L6_7_2 { .. } | CatalogId::L6_10 | CatalogId::L6_13 | CatalogId::L6_22 { .. } => 6,
            CatalogId::L27A | CatalogId::L27B => 7,
        }
    }

    /// Whether the family is defined over `field`; parameters are checked by [`build`].
    pub fn supports(&self, field: FieldSpec) -> bool {
        match self {
            CatalogId::L6_7_2 { .. } => field == FieldSpec::Prime(2),
            CatalogId::L6_22 { .. } => field.characteristic() != 2,
            _ => true,
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Abelian(n) => write!(f, "A({n})"),
            CatalogId::Heisenberg(m) => write!(f, "H({m})"),
            CatalogId::L6_7_2 { eta } => write!(f, "L6_7_2({eta})"),
            CatalogId::L6_22 { eps } => write!(f, "L6_22({eps})"),
            other => f.write_str(other.family()),
        }
    }
}

type Table = &'static [(usize, usize, &'static [(usize, i64)])];

const L4_3: Table = &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])];
const L5_5: Table = &[(1, 2, &[(3, 1)]), (1, 3, &[(5, 1)]), (2, 4, &[(5, 1)])];
const L5_7: Table = &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (1, 4, &[(5, 1)])];
const L5_8: Table = &[(1, 2, &[(4, 1)]), (1, 3, &[(5, 1)])];
const L6_10: Table = &[(1, 2, &[(3, 1)]), (1, 3, &[(6, 1)]), (4, 5, &[(6, 1)])];
const L6_13: Table = &[
    (1, 2, &[(3, 1)]),
    (1, 3, &[(5, 1)]),
    (2, 4, &[(5, 1)]),
    (1, 5, &[(6, 1)]),
    (3, 4, &[(6, 1)]),
];
const L27A: Table = &[
    (1, 2, &[(6, 1)]),
    (3, 4, &[(6, 1)]),
    (1, 5, &[(7, 1)]),
    (2, 3, &[(7, 1)]),
];
const L27B: Table = &[(1, 2, &[(6, 1)]), (1, 4, &[(7, 1)]), (3, 5, &[(7, 1)])];

/// Builds the named algebra over `field`.
pub fn build(id: &CatalogId, field: FieldSpec) -> Result<LieAlgebra> {
    let fixed = |t: Table| LieAlgebra::from_table_1based(field, id.dim(), t);
    let l = match id {
        CatalogId::Abelian(n) => LieAlgebra::abelian(field, *n),
        CatalogId::Heisenberg(m) => heisenberg(field, *m)?,
        CatalogId::L4_3 => fixed(L4_3)?,
        CatalogId::L5_5 => fixed(L5_5)?,
        CatalogId::L5_7 => fixed(L5_7)?,
        CatalogId::L5_8 => fixed(L5_8)?,
        CatalogId::L6_10 => fixed(L6_10)?,
        CatalogId::L6_13 => fixed(L6_13)?,
        CatalogId::L27A => fixed(L27A)?,
        CatalogId::L27B => fixed(L27B)?,
        CatalogId::L6_7_2 { eta } => {
            if field != FieldSpec::Prime(2) {
                return Err(Error::Characteristic(format!(
                    "L6_7_2 is defined over GF(2) only, not {field}"
                )));
            }
            let eta = field.from_rational(eta)?;
            let omega = field.find_omega()?;
            if !eta.is_zero() && eta != omega {
                return Err(Error::InvalidParameter(format!("eta must be 0 or {omega}, got {eta}")));
            }
            let mut l = fixed(&[(1, 2, &[(5, 1)]), (1, 3, &[(6, 1)]), (3, 4, &[(5, 1), (6, 1)])])?;
            l.set_bracket(1, 3, vec![(5, eta)])?;
            l
        }
        CatalogId::L6_22 { eps } => {
            if field.characteristic() == 2 {
                return Err(Error::Characteristic(format!(
                    "L6_22 requires characteristic other than 2, not {field}"
                )));
            }
            let eps: Scalar = field.from_rational(eps)?;
            let mut l = fixed(&[(1, 2, &[(5, 1)]), (3, 4, &[(5, 1)]), (1, 3, &[(6, 1)])])?;
            l.set_bracket(1, 3, vec![(5, eps)])?;
            l
        }
    };
    Ok(l.with_name(id.to_string()))
}

/// `H(m)`: `x_{2l-1} = a_l`, `x_{2l} = b_l`, `x_{2m+1} = z`, `[a_l, b_l] = z`.
fn heisenberg(field: FieldSpec, m: usize) -> Result<LieAlgebra> {
    if m == 0 {
        return Err(Error::InvalidParameter("H(m) requires m ≥ 1".into()));
    }
    LieAlgebra::from_brackets(
        field,
        2 * m + 1,
        (0..m).map(|l| (2 * l, 2 * l + 1, vec![(2 * m, field.one())])),
    )
}

/// The instances used by the checks over `field`: every family the field
/// supports, with `ε ∈ {0, 1, -1, 2}`, `η ∈ {0, ω}` and `H(1..=3)`.
pub fn standard_instances(field: FieldSpec) -> Vec<CatalogId> {
    let mut out = vec![
        CatalogId::Abelian(1),
        CatalogId::Abelian(2),
        CatalogId::Heisenberg(1),
        CatalogId::Heisenberg(2),
        CatalogId::Heisenberg(3),
        CatalogId::L4_3,
        CatalogId::L5_5,
        CatalogId::L5_7,
        CatalogId::L5_8,
    ];
    if field == FieldSpec::Prime(2) {
        out.push(CatalogId::L6_7_2 { eta: int(0) });
        out.push(CatalogId::L6_7_2 { eta: int(1) });
    }
    out.push(CatalogId::L6_10);
    out.push(CatalogId::L6_13);
    if field.characteristic() != 2 {
        for e in [0, 1, -1, 2] {
            out.push(CatalogId::L6_22 { eps: int(e) });
        }
    }
    out.push(CatalogId::L27A);
    out.push(CatalogId::L27B);
    out
}

/// Random 7-dimensional generalized Heisenberg algebra of rank 2 over a
/// finite field: brackets of `x1..x5` land in `span{x6, x7}`, and a sample
/// is kept once `L² = Z(L) = span{x6, x7}`.
pub fn random_gen_heisenberg(dim: usize, rank: usize, field: FieldSpec, seed: u64) -> Result<LieAlgebra> {
    if dim != 7 || rank != 2 {
        return Err(Error::OutOfScope(format!(
            "sampler supports dim 7, rank 2 only (got dim {dim}, rank {rank})"
        )));
    }
    if !field.is_finite() {
        return Err(Error::OutOfScope("sampler needs a finite field".into()));
    }
    let gens = dim - rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = Subspace::coordinate(field, dim, gens..dim);
    for _ in 0..REJECTION_BUDGET {
        let mut brackets = Vec::new();
        for i in 0..gens {
            for j in i + 1..gens {
                let out: Vec<(usize, Scalar)> = (gens..dim).map(|k| (k, field.sample(&mut rng, 0))).collect();
                brackets.push((i, j, out));
            }
        }
        let l = LieAlgebra::from_brackets(field, dim, brackets)?;
        if l.derived() == target && l.center() == target {
            return Ok(l.with_name(format!("GH(7,2;seed={seed})")));
        }
    }
    Err(Error::RejectionBudget(REJECTION_BUDGET))
}
