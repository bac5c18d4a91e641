//! The JSON input document describing a Lie algebra, a metric and an optional
//! product structure. Numbers are strings (`"p/q"`) so nothing passes through
//! floating point.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "parameters": ["a"],
//!   "structure_constants": [[1, 2, 2, "a"]],
//!   "metric": { "diagonal": ["1", "1"] },
//!   "product_structure": [["1", "0"], ["0", "-1"]]
//! }
//! ```
//!
//! `[i, j, k, c]` sets `[X_i, X_j] = ... + c X_k` (1-based). The opposite
//! orientation is filled in by antisymmetry unless it is listed as well.
//! Row `i`, column `m` of `product_structure` is the `X_i` component of `P X_m`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, Metric};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::poly::{parse_rational, Poly, Var};
use crate::product::ProductStructure;
use crate::tensor::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant(pub usize, pub usize, pub usize, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricInput {
    Diagonal(Vec<String>),
    Dense(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldInput {
    pub dim: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub structure_constants: Vec<StructureConstant>,
    pub metric: MetricInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_structure: Option<Vec<Vec<String>>>,
}

/// A validated input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifold {
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub structure: Option<ProductStructure>,
    pub parameters: Vec<Var>,
}

impl ManifoldInput {
    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("inputs serialize")
    }

    /// Writes out a built-in family instance with `i < j` constants only.
    pub fn from_family(family: &Family) -> Self {
        let n = family.algebra.dim();
        let mut constants = Vec::new();
        let mut params = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = family.algebra.constant(i, j, k);
                    if !c.is_zero() {
                        params.extend(c.variables());
                        constants.push(StructureConstant(i + 1, j + 1, k + 1, c.to_string()));
                    }
                }
            }
        }
        let render = |m: &Matrix| -> Vec<Vec<String>> {
            m.iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        ManifoldInput {
            dim: n,
            parameters: params.into_iter().map(Var::name).collect(),
            structure_constants: constants,
            metric: MetricInput::Dense(render(family.metric.matrix())),
            product_structure: Some(render(family.structure.matrix())),
        }
    }

    pub fn build(&self) -> Result<Manifold> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::InvalidInput("dim must be positive".into()));
        }
        let mut declared = BTreeSet::new();
        for name in &self.parameters {
            if !declared.insert(Var::new(name)?) {
                return Err(Error::InvalidInput(format!(
                    "parameter {name} declared twice"
                )));
            }
        }

        let check_index = |index: usize| {
            if (1..=n).contains(&index) {
                Ok(index - 1)
            } else {
                Err(Error::IndexOutOfRange { index, dim: n })
            }
        };
        let mut listed: BTreeMap<(usize, usize, usize), Poly> = BTreeMap::new();
        for StructureConstant(i, j, k, coefficient) in &self.structure_constants {
            let key = (check_index(*i)?, check_index(*j)?, check_index(*k)?);
            let c: Poly = coefficient.parse()?;
            if let Some(v) = c.variables().into_iter().find(|v| !declared.contains(v)) {
                return Err(Error::InvalidInput(format!(
                    "coefficient {coefficient:?} uses undeclared parameter {}",
                    v.name()
                )));
            }
            if listed.insert(key, c).is_some() {
                return Err(Error::InvalidInput(format!(
                    "structure constant ({i}, {j}, {k}) listed twice"
                )));
            }
        }
        let mut algebra = LieAlgebra::abelian(n);
        for (&(i, j, k), c) in &listed {
            algebra.set_constant(i, j, k, c.clone())?;
            if !listed.contains_key(&(j, i, k)) {
                algebra.set_constant(j, i, k, -c)?;
            }
        }

        let g = match &self.metric {
            MetricInput::Diagonal(d) => {
                expect_len(d.len(), n)?;
                let mut g = vec![vec![Poly::zero(); n]; n];
                for (i, s) in d.iter().enumerate() {
                    g[i][i] = Poly::constant(parse_rational(s)?);
                }
                g
            }
            MetricInput::Dense(rows) => rational_matrix(rows, n)?,
        };
        let metric = Metric::new(g, None)?;
        let structure = self
            .product_structure
            .as_ref()
            .map(|rows| rational_matrix(rows, n).and_then(ProductStructure::new))
            .transpose()?;

        Ok(Manifold {
            algebra,
            metric,
            structure,
            parameters: declared.into_iter().collect(),
        })
    }
}

fn expect_len(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn rational_matrix(rows: &[Vec<String>], n: usize) -> Result<Matrix> {
    expect_len(rows.len(), n)?;
    rows.iter()
        .map(|row| {
            expect_len(row.len(), n)?;
            row.iter()
                .map(|s| parse_rational(s).map(Poly::constant))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilyKind, FamilySpec};

    #[test]
    fn families_round_trip() {
        for kind in FamilyKind::ALL {
            let family = build_family(&FamilySpec::symbolic(kind));
            let input = ManifoldInput::from_family(&family);
            let back = ManifoldInput::from_json(&input.to_json()).unwrap();
            assert_eq!(back, input);
            let m = back.build().unwrap();
            assert_eq!(m.algebra, family.algebra);
            assert_eq!(m.metric, family.metric);
            assert_eq!(m.structure.as_ref(), Some(&family.structure));
            assert_eq!(m.parameters.len(), 4);
        }
    }

    fn doc(constants: &str, metric: &str) -> String {
        format!(
            r#"{{"dim": 2, "parameters": ["a"], "structure_constants": {constants}, "metric": {metric}}}"#
        )
    }

    #[test]
    fn antisymmetry_filled_unless_listed() {
        let m = ManifoldInput::from_json(&doc(r#"[[1,2,2,"a"]]"#, r#"{"diagonal":["1","1"]}"#))
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(m.algebra.constant(1, 0, 1).to_string(), "-a");
        let m = ManifoldInput::from_json(&doc(
            r#"[[1,2,1,"1"],[2,1,1,"1"]]"#,
            r#"{"diagonal":["1","1"]}"#,
        ))
        .unwrap()
        .build()
        .unwrap();
        assert_eq!(m.algebra.constant(1, 0, 0), &Poly::one());
    }

    #[test]
    fn rejections() {
        let bad = |c: &str, g: &str| {
            ManifoldInput::from_json(&doc(c, g))
                .unwrap()
                .build()
                .unwrap_err()
        };
        assert!(matches!(
            bad(r#"[[1,3,1,"1"]]"#, r#"{"diagonal":["1","1"]}"#),
            Error::IndexOutOfRange { index: 3, dim: 2 }
        ));
        assert!(matches!(
            bad(r#"[[1,2,1,"b"]]"#, r#"{"diagonal":["1","1"]}"#),
            Error::InvalidInput(_)
        ));
        assert!(matches!(
            bad("[]", r#"{"diagonal":["1","0"]}"#),
            Error::SingularMetric
        ));
        assert!(matches!(
            bad("[]", r#"{"dense":[["1","2"],["0","1"]]}"#),
            Error::MetricNotSymmetric(1, 2)
        ));
        assert!(matches!(
            bad("[]", r#"{"diagonal":["1","x"]}"#),
            Error::Parse { .. }
        ));
        assert!(ManifoldInput::from_json(r#"{"dim": 2}"#).is_err());
    }
}
