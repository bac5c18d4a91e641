//! The two four-parameter families of Lie groups with Killing metric and
//! non-integrable almost product structure, their theorem predicates, and the
//! comparison of recomputed tables against the transcribed published ones.
//!
//! Riemannian family, metric `diag(1,1,1,1)`, `P X_1 = X_3, P X_2 = X_4`:
//!
//! ```text
//! [X1,X2] =  l1 X3 + l2 X4     [X2,X3] =  l1 X1 + l3 X4
//! [X1,X3] = -l1 X2 + l4 X4     [X2,X4] =  l2 X1 - l3 X3
//! [X1,X4] = -l2 X2 - l4 X3     [X3,X4] =  l4 X1 + l3 X2
//! ```
//!
//! Pseudo-Riemannian family, metric `diag(1,1,-1,-1)`, `P = diag(1,1,-1,-1)`:
//!
//! ```text
//! [X1,X2] =  l2 X3 - l1 X4     [X2,X3] = -l2 X1 - l3 X4
//! [X1,X3] =  l2 X2 + l4 X4     [X2,X4] =  l1 X1 + l3 X3
//! [X1,X4] = -l1 X2 - l4 X3     [X3,X4] = -l4 X1 + l3 X2
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{antisymmetry_check, jacobi_check, killing_check, Check, LieAlgebra, Metric};
use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::geometry::{half_bracket_check, zero_check};
use crate::poly::{is_definite_sum_of_squares, Assignment, Poly, Rational, Var};
use crate::product::{
    compatibility_check, f_hybrid_check, f_symmetry_check, involution_check, PlaneType,
    ProductStructure,
};
use crate::report::{Section, Verdict};
use crate::tensor::{basis_vector, index_label, Tensor, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Riemannian,
    Pseudo,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 2] = [FamilyKind::Riemannian, FamilyKind::Pseudo];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Riemannian => "riemannian",
            FamilyKind::Pseudo => "pseudo",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "riemannian" => Ok(FamilyKind::Riemannian),
            "pseudo" => Ok(FamilyKind::Pseudo),
            other => Err(Error::InvalidInput(format!(
                "unknown family {other:?} (expected riemannian or pseudo)"
            ))),
        }
    }
}

/// A family member: symbolic parameters `l1..l4`, or rational values for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: [Poly; 4],
}

impl FamilySpec {
    pub fn symbolic(kind: FamilyKind) -> Self {
        FamilySpec {
            kind,
            params: [1, 2, 3, 4].map(Poly::lambda),
        }
    }

    pub fn numeric(kind: FamilyKind, lambda: &[Rational; 4]) -> Self {
        FamilySpec {
            kind,
            params: lambda.clone().map(Poly::constant),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub kind: FamilyKind,
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub structure: ProductStructure,
}

pub fn build_family(spec: &FamilySpec) -> Family {
    let [l1, l2, l3, l4] = &spec.params;
    let z = Poly::zero;
    let v = |xs: [Poly; 4]| -> Vector { xs.to_vec() };
    let brackets = match spec.kind {
        FamilyKind::Riemannian => vec![
            (0, 1, v([z(), z(), l1.clone(), l2.clone()])),
            (0, 2, v([z(), -l1, z(), l4.clone()])),
            (0, 3, v([z(), -l2, -l4, z()])),
            (1, 2, v([l1.clone(), z(), z(), l3.clone()])),
            (1, 3, v([l2.clone(), z(), -l3, z()])),
            (2, 3, v([l4.clone(), l3.clone(), z(), z()])),
        ],
        FamilyKind::Pseudo => vec![
            (0, 1, v([z(), z(), l2.clone(), -l1])),
            (0, 2, v([z(), l2.clone(), z(), l4.clone()])),
            (0, 3, v([z(), -l1, -l4, z()])),
            (1, 2, v([-l2, z(), z(), -l3])),
            (1, 3, v([l1.clone(), z(), l3.clone(), z()])),
            (2, 3, v([-l4, l3.clone(), z(), z()])),
        ],
    };
    let algebra =
        LieAlgebra::from_brackets(4, &brackets).expect("family brackets are 4-dimensional");
    let e = |i| basis_vector(4, i);
    let neg = |i| -> Vector { e(i).iter().map(|x| -x).collect() };
    let (metric, images) = match spec.kind {
        FamilyKind::Riemannian => (Metric::euclidean(4), vec![e(2), e(3), e(0), e(1)]),
        // P X2 = X2: the printed "P X2 = X1" would not square to the identity
        FamilyKind::Pseudo => (Metric::neutral4(), vec![e(0), e(1), neg(2), neg(3)]),
    };
    Family {
        kind: spec.kind,
        algebra,
        metric,
        structure: ProductStructure::from_images(images).expect("4x4 structure"),
    }
}

impl Family {
    pub fn analyze(&self) -> Result<Analysis> {
        Analysis::compute(&self.algebra, &self.metric, Some(&self.structure))
    }
}

static RIEMANNIAN_ANALYSIS: LazyLock<Analysis> = LazyLock::new(|| {
    build_family(&FamilySpec::symbolic(FamilyKind::Riemannian))
        .analyze()
        .expect("family analysis")
});

static PSEUDO_ANALYSIS: LazyLock<Analysis> = LazyLock::new(|| {
    build_family(&FamilySpec::symbolic(FamilyKind::Pseudo))
        .analyze()
        .expect("family analysis")
});

/// The full analysis of a family with symbolic parameters, computed once.
pub fn symbolic_analysis(kind: FamilyKind) -> &'static Analysis {
    match kind {
        FamilyKind::Riemannian => &RIEMANNIAN_ANALYSIS,
        FamilyKind::Pseudo => &PSEUDO_ANALYSIS,
    }
}

pub fn lambda_assignment(lambda: &[Rational; 4]) -> Assignment {
    (1..=4)
        .map(|k| (Var::lambda(k), lambda[k - 1].clone()))
        .collect()
}

/// Constant sectional curvature on the P-invariant and on the totally real
/// basic planes of the Riemannian family, decided twice: from the algebraic
/// conditions on λ, and from the recomputed curvatures of the basic planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneCurvatureConstancy {
    pub constant_p_invariant: bool,
    pub constant_totally_real: bool,
    pub curvature_p_invariant: bool,
    pub curvature_totally_real: bool,
}

impl PlaneCurvatureConstancy {
    pub fn consistent(&self) -> bool {
        self.constant_p_invariant == self.curvature_p_invariant
            && self.constant_totally_real == self.curvature_totally_real
    }
}

pub fn plane_curvature_constancy(lambda: &[Rational; 4]) -> PlaneCurvatureConstancy {
    let sq: Vec<Rational> = lambda.iter().map(|x| x * x).collect();
    let analysis = symbolic_analysis(FamilyKind::Riemannian);
    let at = lambda_assignment(lambda);
    let k = |i: usize, j: usize| -> Rational {
        analysis
            .plane(i, j)
            .and_then(|p| p.curvature.as_ref().ok())
            .expect("basic planes of a Riemannian metric are non-degenerate")
            .eval(&at)
            .expect("all parameters assigned")
    };
    let totally_real = [k(0, 1), k(0, 3), k(1, 2), k(2, 3)];
    PlaneCurvatureConstancy {
        constant_p_invariant: &sq[0] + &sq[3] == &sq[1] + &sq[2],
        constant_totally_real: sq[0] == sq[3] && sq[1] == sq[2],
        curvature_p_invariant: k(0, 2) == k(1, 3),
        curvature_totally_real: totally_real.iter().all(|x| *x == totally_real[0]),
    }
}

/// The four propositions for the pseudo-Riemannian family, each evaluated
/// from its own recomputed object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotropyReport {
    /// ‖∇P‖² = 0.
    pub isotropic_p: bool,
    /// τ = 0.
    pub scalar_flat: bool,
    /// ‖N‖² = 0.
    pub nijenhuis_isotropic: bool,
    /// l1² + l2² − l3² − l4² = 0.
    pub condition: bool,
}

impl IsotropyReport {
    pub fn all_equal(&self) -> bool {
        let v = self.isotropic_p;
        self.scalar_flat == v && self.nijenhuis_isotropic == v && self.condition == v
    }
}

pub fn isotropy_check(lambda: &[Rational; 4]) -> IsotropyReport {
    let analysis = symbolic_analysis(FamilyKind::Pseudo);
    let product = analysis
        .product
        .as_ref()
        .expect("family carries a structure");
    let at = lambda_assignment(lambda);
    let vanishes = |p: &Poly| p.eval(&at).expect("all parameters assigned").is_zero();
    let sq: Vec<Rational> = lambda.iter().map(|x| x * x).collect();
    IsotropyReport {
        isotropic_p: crate::product::isotropic_p_check(&product.norm_nabla_p, &at)
            .expect("all parameters assigned"),
        scalar_flat: vanishes(&analysis.scalar),
        nijenhuis_isotropic: vanishes(&product.norm_n),
        condition: (&sq[0] + &sq[1] - &sq[2] - &sq[3]).is_zero(),
    }
}

/// Whether the six basic-plane curvatures of the pseudo family can only
/// coincide at λ = 0: `k(α12) − k(α34)` must be a definite sum of squares.
pub fn pseudo_basic_curvatures_never_constant() -> bool {
    let analysis = symbolic_analysis(FamilyKind::Pseudo);
    match (analysis.sectional_poly(0, 1), analysis.sectional_poly(2, 3)) {
        (Some(k12), Some(k34)) => {
            let diff = &k12 - &k34;
            is_definite_sum_of_squares(&diff) && diff.variables().len() == 4
        }
        _ => false,
    }
}

/// Adds a fresh symbol to one structure constant `C[i][j][k]` (and subtracts it
/// from `C[j][i][k]`), returning the Killing verdict of the result.
pub fn perturbed_killing_check(family: &Family, i: usize, j: usize, k: usize) -> Result<Check> {
    let eps = Poly::var(Var::new(&format!("eps_{}", index_label(&[i, j, k])))?);
    let mut alg = family.algebra.clone();
    let up = alg.constant(i, j, k) + &eps;
    let down = alg.constant(j, i, k) - &eps;
    alg.set_constant(i, j, k, up)?;
    alg.set_constant(j, i, k, down)?;
    killing_check(&alg, &family.metric)
}

/// The nonzero structure constants `C[i][j][k]` with `i < j`.
pub fn nonzero_constants(family: &Family) -> Vec<(usize, usize, usize)> {
    let n = family.algebra.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if !family.algebra.constant(i, j, k).is_zero() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Expected tables as transcribed from the published results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperTables {
    pub schema_version: u32,
    pub family: FamilyKind,
    pub sections: Vec<Section>,
}

impl PaperTables {
    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn shipped(kind: FamilyKind) -> Self {
        let json = match kind {
            FamilyKind::Riemannian => include_str!("../fixtures/riemannian.json"),
            FamilyKind::Pseudo => include_str!("../fixtures/pseudo.json"),
        };
        PaperTables::from_json(json).expect("shipped fixtures parse")
    }

    pub fn component(&self, section: &str, name: &str) -> Option<&str> {
        self.sections
            .iter()
            .find(|s| s.title == section)?
            .components
            .get(name)
            .map(String::as_str)
    }

    /// Overwrites one expected entry, for exercising the mismatch path.
    pub fn corrupt(&mut self, section: &str, name: &str, value: &str) -> bool {
        match self.sections.iter_mut().find(|s| s.title == section) {
            Some(s) if s.components.contains_key(name) => {
                s.components.insert(name.to_string(), value.to_string());
                true
            }
            _ => false,
        }
    }
}

/// One expected-vs-recomputed entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub section: String,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, computed {}",
            self.name, self.expected, self.computed
        )
    }
}

#[derive(Clone, Debug)]
pub struct TableVerification {
    pub kind: FamilyKind,
    pub comparisons: Vec<Comparison>,
    pub checks: Vec<Check>,
    pub notes: BTreeMap<String, String>,
}

impl TableVerification {
    pub fn mismatches(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.matches)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn passed(&self) -> bool {
        self.mismatches().next().is_none() && self.failed_checks().next().is_none()
    }

    pub fn comparison(&self, name: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Report sections: one per table, then structural checks, then notes.
    pub fn to_sections(&self) -> Vec<Section> {
        let mut by_section: BTreeMap<&str, Section> = BTreeMap::new();
        let mut order = Vec::new();
        for c in &self.comparisons {
            let section = by_section.entry(&c.section).or_insert_with(|| {
                order.push(c.section.clone());
                Section::new(format!("{} {}", self.kind, c.section))
            });
            section.component(c.name.clone(), &c.computed);
            if !c.matches {
                section.verdict(
                    Verdict::new(format!("{} matches published value", c.name), false)
                        .with_details(vec![c.to_string()]),
                );
            }
        }
        let mut out: Vec<Section> = order
            .iter()
            .filter_map(|name| by_section.remove(name.as_str()))
            .map(|mut s| {
                if s.verdicts.is_empty() {
                    s.verdict(Verdict::new(
                        format!("{} table matches published values", s.title),
                        true,
                    ));
                }
                s
            })
            .collect();
        let mut structural = Section::new(format!("{} structural checks", self.kind));
        for check in &self.checks {
            structural.verdict(check);
        }
        out.push(structural);
        if !self.notes.is_empty() {
            let mut notes = Section::new(format!("{} notes", self.kind));
            for (k, v) in &self.notes {
                notes.component(k.clone(), v);
            }
            out.push(notes);
        }
        out
    }
}

fn parse_indices(name: &str, symbol: &str) -> Result<Vec<usize>> {
    let digits = name
        .strip_prefix(symbol)
        .and_then(|rest| rest.strip_prefix('_'))
        .ok_or_else(|| Error::InvalidInput(format!("bad component name {name:?}")))?;
    digits
        .chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d >= 1 => Ok(d as usize - 1),
            _ => Err(Error::InvalidInput(format!("bad component name {name:?}"))),
        })
        .collect()
}

/// Index tuples forced equal (up to sign) by the symmetries the published
/// tables rely on to list only representatives.
fn orbit(symbol: &str, idx: &[usize]) -> Vec<Vec<usize>> {
    match (symbol, idx) {
        ("F", &[i, j, k]) => vec![vec![i, j, k], vec![i, k, j]],
        ("rho", &[a, b]) => vec![vec![a, b], vec![b, a]],
        ("R", &[i, j, k, s]) => vec![
            vec![i, j, k, s],
            vec![j, i, k, s],
            vec![i, j, s, k],
            vec![j, i, s, k],
            vec![k, s, i, j],
            vec![s, k, i, j],
            vec![k, s, j, i],
            vec![s, k, j, i],
        ],
        _ => vec![idx.to_vec()],
    }
}

fn compare(section: &str, name: String, expected: &str, computed: Option<Poly>) -> Comparison {
    let parsed = expected.parse::<Poly>();
    let matches = match (&parsed, &computed) {
        (Ok(e), Some(c)) => e == c,
        _ => false,
    };
    Comparison {
        section: section.to_string(),
        name,
        expected: parsed.map_or_else(|e| format!("unparseable ({e})"), |p| p.to_string()),
        computed: computed.map_or_else(|| "unavailable".into(), |p| p.to_string()),
        matches,
    }
}

fn tensor_section(
    tables: &PaperTables,
    title: &str,
    tensor: &Tensor,
    out: &mut Vec<Comparison>,
) -> Result<()> {
    let Some(section) = tables.sections.iter().find(|s| s.title == title) else {
        return Ok(());
    };
    let mut covered = BTreeSet::new();
    for (name, expected) in &section.components {
        let idx = parse_indices(name, title)?;
        if idx.len() != tensor.rank() || idx.iter().any(|&i| i >= tensor.dim()) {
            return Err(Error::InvalidInput(format!(
                "component {name} out of range"
            )));
        }
        covered.extend(orbit(title, &idx));
        out.push(compare(
            title,
            name.clone(),
            expected,
            Some(tensor.get(&idx).clone()),
        ));
    }
    for (idx, value) in tensor.nonzero() {
        if !covered.contains(&idx) {
            out.push(Comparison {
                section: title.to_string(),
                name: format!("{title}_{} (unlisted)", index_label(&idx)),
                expected: "0".into(),
                computed: value.to_string(),
                matches: false,
            });
        }
    }
    Ok(())
}

/// Recomputes every published quantity of a family with symbolic parameters
/// and compares it with `tables`. Disagreements are report content.
pub fn paper_table_verify(kind: FamilyKind, tables: &PaperTables) -> Result<TableVerification> {
    let family = build_family(&FamilySpec::symbolic(kind));
    let analysis = symbolic_analysis(kind);
    let product = analysis
        .product
        .as_ref()
        .expect("family carries a structure");
    let mut comparisons = Vec::new();

    tensor_section(tables, "F", &product.f, &mut comparisons)?;
    tensor_section(tables, "R", &analysis.curvature, &mut comparisons)?;
    tensor_section(tables, "rho", &analysis.ricci, &mut comparisons)?;
    if let Some(expected) = tables.component("tau", "tau") {
        comparisons.push(compare(
            "tau",
            "tau".into(),
            expected,
            Some(analysis.scalar.clone()),
        ));
    }
    if let Some(section) = tables.sections.iter().find(|s| s.title == "k") {
        for (name, expected) in &section.components {
            let idx = parse_indices(name, "k")?;
            let computed = match idx.as_slice() {
                &[i, j] if i < j => analysis.sectional_poly(i, j),
                _ => None,
            };
            comparisons.push(compare("k", name.clone(), expected, computed));
        }
    }
    let norms = [
        ("norm_N", &product.norm_n),
        ("norm_nabla_P", &product.norm_nabla_p),
    ];
    for (name, value) in norms {
        if let Some(expected) = tables.component("norms", name) {
            comparisons.push(compare("norms", name.into(), expected, Some(value.clone())));
        }
    }
    // the published ratio between the two norms against the recomputed one
    if let (Some(n), Some(np)) = (
        tables.component("norms", "norm_N"),
        tables.component("norms", "norm_nabla_P"),
    ) {
        let published = match (n.parse::<Poly>(), np.parse::<Poly>()) {
            (Ok(a), Ok(b)) => a.ratio_to(&b),
            _ => None,
        };
        let computed = product.norm_n.ratio_to(&product.norm_nabla_p);
        comparisons.push(Comparison {
            section: "norms".into(),
            name: "norm_N / norm_nabla_P".into(),
            expected: published
                .as_ref()
                .map_or("undefined".into(), crate::poly::format_rational),
            computed: computed
                .as_ref()
                .map_or("undefined".into(), crate::poly::format_rational),
            matches: published.is_some() && published == computed,
        });
    }

    let mut checks = vec![
        antisymmetry_check(&family.algebra),
        jacobi_check(&family.algebra),
        killing_check(&family.algebra, &family.metric)?,
        involution_check(&family.structure),
        compatibility_check(&family.structure, &family.metric)?,
        half_bracket_check(&analysis.connection, &family.algebra),
    ];
    let mut trace = Check::new("tr P = 0");
    trace.record_scalar(vec![], family.structure.trace());
    checks.push(trace);
    let mut w3 = Check::new("W3 cyclic condition");
    w3.violations = product.class.w3_residuals.clone();
    checks.push(w3);
    checks.push(f_symmetry_check(&product.f));
    checks.push(f_hybrid_check(&product.f, &family.structure));
    match &analysis.weyl {
        Some(w) => checks.push(zero_check("Weyl tensor W = 0", w)),
        None => checks.push(Check {
            name: "Weyl tensor W = 0",
            violations: vec![crate::algebra::Violation {
                indices: vec![],
                residual: vec![Poly::one()],
            }],
        }),
    }
    checks.push(zero_check(
        "locally symmetric (nabla R = 0)",
        &analysis.nabla_curvature,
    ));
    let mut two_path = Check::new("curvature: definition equals Killing closed form");
    match &analysis.curvature_closed_form {
        Some(closed) => {
            for (idx, d) in analysis.curvature.sub(closed)?.nonzero() {
                two_path.record_scalar(idx, d.clone());
            }
        }
        None => two_path.record_scalar(vec![], Poly::one()),
    }
    checks.push(two_path);
    let mut norm_paths = Check::new("norm_N: bracket route equals nabla P route");
    norm_paths.record_scalar(vec![], &product.norm_n - &product.norm_n_via_nabla_p);
    checks.push(norm_paths);
    checks.push(plane_type_check(kind, analysis));
    if kind == FamilyKind::Pseudo {
        let mut never = Check::new("basic-plane curvatures constant only at l = 0");
        if !pseudo_basic_curvatures_never_constant() {
            never.record_scalar(vec![0, 1, 2, 3], Poly::one());
        }
        checks.push(never);
    }

    let mut notes = BTreeMap::new();
    notes.insert(
        "norm_N (complex-form combination)".to_string(),
        product.norm_n_complex_form.to_string(),
    );
    notes.insert("class".to_string(), product.class.label().to_string());

    Ok(TableVerification {
        kind,
        comparisons,
        checks,
        notes,
    })
}

fn plane_type_check(kind: FamilyKind, analysis: &Analysis) -> Check {
    let mut check = Check::new("basic plane types");
    for plane in &analysis.planes {
        let expected = match (kind, plane.i, plane.j) {
            (FamilyKind::Riemannian, 0, 2) | (FamilyKind::Riemannian, 1, 3) => {
                PlaneType::PInvariant
            }
            (FamilyKind::Riemannian, _, _) => PlaneType::TotallyReal,
            (FamilyKind::Pseudo, _, _) => PlaneType::PInvariant,
        };
        if plane.plane_type != Some(expected) {
            check.record_scalar(vec![plane.i, plane.j], Poly::one());
        }
    }
    check
}
