//! The report-producing commands behind the CLI verbs.

use std::collections::BTreeMap;

use crate::algebra::{antisymmetry_check, jacobi_check, killing_check, Check};
use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::families::{build_family, paper_table_verify, FamilyKind, FamilySpec, PaperTables};
use crate::geometry::{component_name, metric_compatibility_check, torsion_check};
use crate::input::{Manifold, ManifoldInput};
use crate::poly::{format_rational, Assignment, Poly, Rational, Var};
use crate::product::{compatibility_check, f_hybrid_check, f_symmetry_check, involution_check};
use crate::report::{Report, Section};
use crate::tensor::Tensor;

/// Where the manifold comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Input(ManifoldInput),
    Family {
        kind: FamilyKind,
        lambda: Option<[Rational; 4]>,
    },
}

impl Source {
    pub fn load(&self) -> Result<Manifold> {
        match self {
            Source::Input(input) => input.build(),
            Source::Family { kind, lambda } => {
                let spec = match lambda {
                    Some(l) => FamilySpec::numeric(*kind, l),
                    None => FamilySpec::symbolic(*kind),
                };
                let f = build_family(&spec);
                let parameters = if lambda.is_some() {
                    Vec::new()
                } else {
                    (1..=4).map(Var::lambda).collect()
                };
                Ok(Manifold {
                    algebra: f.algebra,
                    metric: f.metric,
                    structure: Some(f.structure),
                    parameters,
                })
            }
        }
    }
}

fn summary(m: &Manifold) -> Section {
    let mut s = Section::new("manifold");
    s.component("dim", m.algebra.dim());
    let sig = m
        .metric
        .signature()
        .map_or("undetermined".to_string(), |(p, q)| format!("({p},{q})"));
    s.component("signature", sig);
    let params: Vec<String> = m.parameters.iter().map(|v| v.name()).collect();
    s.component(
        "parameters",
        if params.is_empty() {
            "none".into()
        } else {
            params.join(", ")
        },
    );
    s
}

fn algebra_checks(m: &Manifold) -> Result<Vec<Check>> {
    Ok(vec![
        antisymmetry_check(&m.algebra),
        jacobi_check(&m.algebra),
        killing_check(&m.algebra, &m.metric)?,
    ])
}

fn structure_checks(m: &Manifold) -> Result<Vec<Check>> {
    match &m.structure {
        Some(p) => Ok(vec![
            involution_check(p),
            compatibility_check(p, &m.metric)?,
        ]),
        None => Ok(Vec::new()),
    }
}

fn checks_section(title: &str, checks: &[Check]) -> Section {
    let mut s = Section::new(title);
    for c in checks {
        s.verdict(c);
    }
    s
}

/// Antisymmetry, Jacobi, Killing, and `P² = id` and compatibility when a
/// structure is given.
pub fn cmd_check(m: &Manifold) -> Result<Report> {
    let mut report = Report::new("check");
    report.push(summary(m));
    report.push(checks_section("algebra", &algebra_checks(m)?));
    let structure = structure_checks(m)?;
    if !structure.is_empty() {
        report.push(checks_section("product structure", &structure));
    }
    Ok(report.finish())
}

/// Antisymmetry and Jacobi must hold before any geometry is computed.
fn require_lie_algebra(m: &Manifold, report: &mut Report) -> bool {
    let checks = [antisymmetry_check(&m.algebra), jacobi_check(&m.algebra)];
    let ok = checks.iter().all(Check::passed);
    if !ok {
        report.push(checks_section("algebra", &checks));
    }
    ok
}

/// Substitutes `at` and insists that no declared parameter is left free.
fn specialize(m: &Manifold, at: &Assignment) -> Result<Manifold> {
    if let Some(v) = m.parameters.iter().find(|v| !at.contains_key(v)) {
        return Err(Error::MissingParameter(v.name()));
    }
    Ok(Manifold {
        algebra: m.algebra.substitute(at),
        metric: m.metric.clone(),
        structure: m.structure.clone(),
        parameters: Vec::new(),
    })
}

fn tensor_section(
    title: &str,
    symbol: &str,
    t: &Tensor,
    keep: impl Fn(&[usize]) -> bool,
) -> Section {
    let mut s = Section::new(title);
    for (idx, value) in t.nonzero() {
        if keep(&idx) {
            s.component(component_name(symbol, &idx), value);
        }
    }
    s
}

fn curvature_representative(idx: &[usize]) -> bool {
    idx[0] < idx[1] && idx[2] < idx[3] && (idx[0], idx[1]) <= (idx[2], idx[3])
}

/// Connection, curvature, Ricci, scalar and Weyl tensors, and the sectional
/// curvature of every basic plane. Only nonzero components are listed;
/// curvature components up to the pair symmetries.
pub fn cmd_curvature(m: &Manifold, at: Option<&Assignment>) -> Result<Report> {
    let mut report = Report::new("curvature");
    report.push(summary(m));
    if !require_lie_algebra(m, &mut report) {
        return Ok(report.finish());
    }
    let specialized;
    let m = match at {
        Some(at) => {
            specialized = specialize(m, at)?;
            &specialized
        }
        None => m,
    };
    let a = Analysis::compute(&m.algebra, &m.metric, None)?;
    let n = m.algebra.dim();

    let mut conn = tensor_section(
        "Levi-Civita connection",
        "Gamma",
        &a.connection.as_tensor(),
        |_| true,
    );
    conn.verdict(&torsion_check(&a.connection, &m.algebra));
    conn.verdict(&metric_compatibility_check(&a.connection, &m.metric));
    report.push(conn);

    let mut curv = tensor_section(
        "curvature tensor",
        "R",
        &a.curvature,
        curvature_representative,
    );
    if let Some(closed) = &a.curvature_closed_form {
        let mut two_path = Check::new("definition equals Killing closed form");
        for (idx, d) in a.curvature.sub(closed)?.nonzero() {
            two_path.record_scalar(idx, d.clone());
        }
        curv.verdict(&two_path);
    }
    report.push(curv);
    report.push(tensor_section("Ricci tensor", "rho", &a.ricci, |i| {
        i[0] <= i[1]
    }));
    let mut tau = Section::new("scalar curvature");
    tau.component("tau", &a.scalar);
    report.push(tau);

    let mut weyl = match &a.weyl {
        Some(w) => tensor_section("Weyl tensor", "W", w, curvature_representative),
        None => {
            let mut s = Section::new("Weyl tensor");
            s.component("W", format!("not defined in dimension {n}"));
            s
        }
    };
    if a.weyl.as_ref().is_some_and(Tensor::is_zero) {
        weyl.component("W", "0");
    }
    report.push(weyl);

    let mut planes = Section::new("sectional curvatures");
    for p in &a.planes {
        let name = format!("k_{}{}", p.i + 1, p.j + 1);
        let value = match &p.curvature {
            Ok(k) => match k.as_poly() {
                Some(poly) => poly.to_string(),
                None => format!("({}) / ({})", k.numerator, k.denominator),
            },
            Err(e) => e.clone(),
        };
        planes.component(name, value);
    }
    report.push(planes);

    let mut flat = Section::new("summary");
    flat.component("flat", a.curvature.is_zero());
    flat.component("locally symmetric", a.nabla_curvature.is_zero());
    report.push(flat);
    Ok(report.finish())
}

/// W₀/W₃ membership, the `F` table, the square norms of `N` and `∇P`, and
/// the types of the basic planes.
pub fn cmd_classify(m: &Manifold) -> Result<Report> {
    let mut report = Report::new("classify");
    let Some(p) = &m.structure else {
        return Ok(Report::invalid_input(
            "classify",
            "no product_structure given",
        ));
    };
    report.push(summary(m));
    let pre = structure_checks(m)?;
    let lie = require_lie_algebra(m, &mut report);
    if !lie || !pre.iter().all(Check::passed) {
        report.push(checks_section("product structure", &pre));
        return Ok(report.finish());
    }
    let a = Analysis::compute(&m.algebra, &m.metric, Some(p))?;
    let prod = a.product.as_ref().expect("structure given");

    let mut class = Section::new("classification");
    class.component("class", prod.class.label());
    class.component("W0 (F = 0)", prod.class.is_w0);
    class.component("W3 (cyclic sum of F = 0)", prod.class.is_w3);
    report.push(class);

    let mut f = tensor_section("tensor F", "F", &prod.f, |i| i[1] <= i[2]);
    f.verdict(&f_symmetry_check(&prod.f));
    f.verdict(&f_hybrid_check(&prod.f, p));
    report.push(f);

    let mut norms = Section::new("norms");
    norms.component("norm_N", &prod.norm_n);
    norms.component("norm_nabla_P", &prod.norm_nabla_p);
    norms.component(
        "norm_N (complex-form combination)",
        &prod.norm_n_complex_form,
    );
    if let Some(ratio) = prod.norm_n.ratio_to(&prod.norm_nabla_p) {
        norms.component("norm_N / norm_nabla_P", format_rational(&ratio));
    }
    match prod.norm_nabla_p.as_constant() {
        Some(c) => norms.component("isotropic P", num_traits::Zero::is_zero(&c)),
        None => norms.component("isotropic P", format!("iff {} = 0", prod.norm_nabla_p)),
    }
    norms.component("nabla P = 0", prod.nabla_p.is_zero());
    let mut paths = Check::new("norm_N: bracket route equals nabla P route");
    paths.record_scalar(vec![], &prod.norm_n - &prod.norm_n_via_nabla_p);
    norms.verdict(&paths);
    report.push(norms);

    let mut planes = Section::new("basic plane types");
    for plane in &a.planes {
        if let Some(t) = plane.plane_type {
            planes.component(format!("alpha_{}{}", plane.i + 1, plane.j + 1), t);
        }
    }
    report.push(planes);
    Ok(report.finish())
}

/// Recomputes the published tables of both families and diffs them against
/// `tables` (the shipped transcriptions unless overridden).
pub fn cmd_verify_paper(tables: &BTreeMap<FamilyKind, PaperTables>) -> Result<Report> {
    let mut report = Report::new("verify-paper");
    for kind in FamilyKind::ALL {
        let shipped;
        let t = match tables.get(&kind) {
            Some(t) => t,
            None => {
                shipped = PaperTables::shipped(kind);
                &shipped
            }
        };
        if t.family != kind {
            return Err(Error::InvalidInput(format!(
                "fixture for {kind} declares family {}",
                t.family
            )));
        }
        for s in paper_table_verify(kind, t)?.to_sections() {
            report.push(s);
        }
    }
    Ok(report.finish())
}

/// Parses `p/q,p/q,p/q,p/q`.
pub fn parse_lambda(csv: &str) -> Result<[Rational; 4]> {
    let values = csv
        .split(',')
        .map(|s| crate::poly::parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    values
        .try_into()
        .map_err(|v: Vec<Rational>| Error::DimensionMismatch {
            expected: 4,
            found: v.len(),
        })
}

pub fn lambda_poly(lambda: &[Rational; 4]) -> Vec<Poly> {
    lambda.iter().cloned().map(Poly::constant).collect()
}

/// `name=p/q` pairs, comma separated.
pub fn parse_assignment(csv: &str) -> Result<Assignment> {
    csv.split(',')
        .map(|pair| {
            let (name, value) = pair.split_once('=').ok_or_else(|| Error::Parse {
                input: pair.to_string(),
                message: "expected name=value".into(),
            })?;
            Ok((
                Var::new(name.trim())?,
                crate::poly::parse_rational(value.trim())?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ExitStatus;

    fn family(kind: FamilyKind) -> Manifold {
        Source::Family { kind, lambda: None }.load().unwrap()
    }

    #[test]
    fn family_checks_pass() {
        for kind in FamilyKind::ALL {
            let r = cmd_check(&family(kind)).unwrap();
            assert_eq!(r.exit_status, ExitStatus::Pass, "{}", r.to_human());
        }
    }

    #[test]
    fn scalar_curvature_rendering() {
        let r = cmd_curvature(&family(FamilyKind::Riemannian), None).unwrap();
        assert_eq!(
            r.section("scalar curvature").unwrap().components["tau"],
            "3/2*l1^2 + 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2"
        );
        let at = parse_assignment("l1=1,l2=1,l3=1,l4=1").unwrap();
        let r = cmd_curvature(&family(FamilyKind::Pseudo), Some(&at)).unwrap();
        assert_eq!(
            r.section("scalar curvature").unwrap().components["tau"],
            "0"
        );
        assert!(matches!(
            cmd_curvature(
                &family(FamilyKind::Pseudo),
                Some(&parse_assignment("l1=1").unwrap())
            ),
            Err(Error::MissingParameter(_))
        ));
    }

    #[test]
    fn classification() {
        let r = cmd_classify(&family(FamilyKind::Riemannian)).unwrap();
        assert_eq!(
            r.section("classification").unwrap().components["class"],
            "W3"
        );
        let r = cmd_classify(&family(FamilyKind::Pseudo)).unwrap();
        let planes = &r.section("basic plane types").unwrap().components;
        assert_eq!(planes.len(), 6);
        assert!(planes.values().all(|t| t == "P-invariant"));
        let zero = Source::Family {
            kind: FamilyKind::Riemannian,
            lambda: Some(parse_lambda("0,0,0,0").unwrap()),
        };
        let r = cmd_classify(&zero.load().unwrap()).unwrap();
        assert_eq!(
            r.section("classification").unwrap().components["class"],
            "W0"
        );
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(
            lambda_poly(&parse_lambda("1/2, -3,0,7/5").unwrap())[1],
            Poly::int(-3)
        );
        assert!(parse_lambda("1,2,3").is_err());
        assert!(parse_lambda("1,2,3,x").is_err());
    }
}
