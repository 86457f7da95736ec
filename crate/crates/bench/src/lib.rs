//! Benchmark inputs shared by the criterion targets.

use nilcap::catalog::{build, CatalogId};
use nilcap::{FieldSpec, LieAlgebra};

/// `id ⊕ A(k)` over `field`.
pub fn padded(id: &CatalogId, field: FieldSpec, k: usize) -> LieAlgebra {
    build(id, field)
        .and_then(|l| l.direct_sum(&LieAlgebra::abelian(field, k)))
        .expect("catalog member over a supported field")
}
