//! JSON file format for algebras: 1-based indices, `i < j`, coefficients as
//! canonical strings. Emission is canonical, so emit → parse → emit is
//! byte-identical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::liealg::LieAlgebra;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldDecl {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "GFp")]
    GFp { p: u64 },
}

impl FieldDecl {
    pub fn to_field(&self) -> Result<FieldSpec> {
        match self {
            FieldDecl::Q => Ok(FieldSpec::Rationals),
            FieldDecl::GFp { p } => FieldSpec::prime(*p),
        }
    }

    pub fn from_field(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => FieldDecl::Q,
            FieldSpec::Prime(p) => FieldDecl::GFp { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// `[x_i, x_j] = Σ coeff · x_k` as `(k, coeff)` pairs.
    pub out: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema_version: String,
    pub field: FieldDecl,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        AlgebraFile {
            schema_version: SCHEMA_VERSION.into(),
            field: FieldDecl::from_field(l.field()),
            dim: l.dim(),
            brackets: l
                .nonzero_brackets()
                .map(|(i, j, v)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    out: v.iter().map(|(k, c)| (k + 1, c.to_string())).collect(),
                })
                .collect(),
            name: l.name().map(str::to_owned),
        }
    }

    /// Checks indices and coefficients and builds the algebra. Jacobi is not checked.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        let field = self.field.to_field()?;
        let n = self.dim;
        let mut l = LieAlgebra::abelian(field, n);
        let mut seen = std::collections::BTreeSet::new();
        for (e, b) in self.brackets.iter().enumerate() {
            let at = |msg: String| Error::Format(format!("brackets[{e}]: {msg}"));
            if b.i < 1 || b.i > n || b.j < 1 || b.j > n {
                return Err(at(format!("index out of range 1..={n} in ({}, {})", b.i, b.j)));
            }
            if b.i >= b.j {
                return Err(at(format!("need i < j, got ({}, {})", b.i, b.j)));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(at(format!("duplicate pair ({}, {})", b.i, b.j)));
            }
            let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(b.out.len());
            for (t, (k, c)) in b.out.iter().enumerate() {
                if *k < 1 || *k > n {
                    return Err(at(format!("out[{t}]: index {k} out of range 1..={n}")));
                }
                let c = field
                    .parse(c)
                    .map_err(|err| at(format!("out[{t}]: coefficient {c:?}: {err}")))?;
                out.push((k - 1, c));
            }
            l.set_bracket(b.i - 1, b.j - 1, out)?;
        }
        Ok(match &self.name {
            Some(name) => l.with_name(name.clone()),
            None => l,
        })
    }
}

/// Canonical pretty JSON with a trailing newline.
pub fn emit(l: &LieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(l)).expect("serializable");
    s.push('\n');
    s
}

/// Parses a file; JSON errors carry line and column.
pub fn parse(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.to_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, standard_instances};
    use proptest::prelude::*;

    #[test]
    fn catalog_round_trips_byte_identically() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            for id in standard_instances(field) {
                let l = build(&id, field).unwrap();
                let text = emit(&l);
                let back = parse(&text).unwrap();
                assert!(back.same_table(&l));
                assert_eq!(emit(&back), text);
            }
        }
    }

    #[test]
    fn layout() {
        let l = LieAlgebra::from_table_1based(FieldSpec::Prime(3), 3, &[(1, 2, &[(3, -1)])])
            .unwrap()
            .with_name("t");
        let v: serde_json::Value = serde_json::from_str(&emit(&l)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "schema_version": "1",
                "field": {"kind": "GFp", "p": 3},
                "dim": 3,
                "brackets": [{"i": 1, "j": 2, "out": [[3, "2"]]}],
                "name": "t"
            })
        );
        let text = emit(&l);
        let keys: Vec<usize> = ["schema_version", "field", "dim", "brackets", "name"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    fn doc(brackets: &str) -> String {
        format!(r#"{{"schema_version":"1","field":{{"kind":"Q"}},"dim":3,"brackets":[{brackets}]}}"#)
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            doc(r#"{"i":1,"j":1,"out":[[3,"1"]]}"#),
            doc(r#"{"i":2,"j":1,"out":[[3,"1"]]}"#),
            doc(r#"{"i":1,"j":4,"out":[[3,"1"]]}"#),
            doc(r#"{"i":0,"j":2,"out":[[3,"1"]]}"#),
            doc(r#"{"i":1,"j":2,"out":[[4,"1"]]}"#),
            doc(r#"{"i":1,"j":2,"out":[[3,"x"]]}"#),
            doc(r#"{"i":1,"j":2,"out":[[3,"1/0"]]}"#),
            doc(r#"{"i":1,"j":2,"out":[[3,"1"]]},{"i":1,"j":2,"out":[]}"#),
            r#"{"schema_version":"2","field":{"kind":"Q"},"dim":1,"brackets":[]}"#.into(),
            r#"{"schema_version":"1","field":{"kind":"GFp","p":4},"dim":1,"brackets":[]}"#.into(),
            r#"{"schema_version":"1","field":{"kind":"R"},"dim":1,"brackets":[]}"#.into(),
            r#"{"schema_version":"1","field":{"kind":"Q"},"dim":1}"#.into(),
            "{".into(),
        ] {
            assert!(parse(&bad).is_err(), "{bad}");
        }
        let l = parse(&doc(r#"{"i":1,"j":2,"out":[[3,"2/4"],[3,"1/2"]]}"#)).unwrap();
        assert_eq!(l.structure(0, 1), &[(2, FieldSpec::Rationals.one())]);
    }

    #[test]
    fn json_errors_report_location() {
        let err = parse("{\n  \"dim\": }").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    proptest! {
        #[test]
        fn random_tables_round_trip(
            dim in 1usize..6,
            p in prop_oneof![Just(0u64), Just(2), Just(3), Just(5)],
            entries in proptest::collection::vec((0usize..6, 0usize..6, 0usize..6, -7i64..8, 1i64..5), 0..12),
        ) {
            let field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(p) };
            let mut l = LieAlgebra::abelian(field, dim);
            for (i, j, k, a, b) in entries {
                let (i, j, k) = (i % dim, j % dim, k % dim);
                if i == j {
                    continue;
                }
                let Ok(c) = field.normalize(&a.into(), &b.into()) else { continue };
                l.set_bracket(i, j, vec![(k, c)]).unwrap();
            }
            let text = emit(&l);
            let back = parse(&text).unwrap();
            prop_assert!(back.same_table(&l));
            prop_assert_eq!(emit(&back), text);
        }
    }
}
