//! Random instances shared by the acceptance and property suites.
#![allow(dead_code)]

use lieprod::algebra::{LieAlgebra, Metric};
use lieprod::families::{build_family, FamilyKind, FamilySpec};
use lieprod::geometry::{curvature, levi_civita, ricci};
use lieprod::poly::{Monomial, Poly, Rational, Var};
use lieprod::product::{f_hybrid_check, f_symmetry_check, f_tensor, nabla_p, ProductStructure};
use lieprod::tensor::{adjugate, determinant, mat_mul, mat_vec, transpose, Matrix, Vector};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `-100..=100`, denominator in `1..=100`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    q(rng.gen_range(-100..=100), rng.gen_range(1..=100))
}

pub fn random_lambda(rng: &mut impl Rng) -> [Rational; 4] {
    std::array::from_fn(|_| random_rational(rng))
}

/// Rotates `(a, b)` by the rational angle with `tan(θ/2) = t`, which keeps
/// `a² + b²`.
pub fn rotate(a: &Rational, b: &Rational, t: &Rational) -> (Rational, Rational) {
    let one = q(1, 1);
    let den = &one + t * t;
    let c = (&one - t * t) / &den;
    let s = (q(2, 1) * t) / &den;
    (&c * a - &s * b, &s * a + &c * b)
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| q(n, d))
}

/// Polynomials in `l1..l4` of degree at most 3 per variable.
pub fn poly_strategy() -> impl Strategy<Value = Poly> {
    let term = (rational_strategy(), prop::collection::vec(0u32..3, 4)).prop_map(|(c, exps)| {
        let m = exps.iter().enumerate().fold(Poly::one(), |acc, (k, &e)| {
            acc * Poly::var(Var::lambda(k + 1)).pow(e)
        });
        let mono = m
            .terms()
            .next()
            .map(|(m, _)| m.clone())
            .unwrap_or_else(Monomial::one);
        (mono, c)
    });
    prop::collection::vec(term, 0..5).prop_map(Poly::from_terms)
}

/// A Lie algebra with metric and compatible product structure, written in a
/// random basis so that nothing is diagonal or Killing in general.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub structure: ProductStructure,
}

fn base_algebra(which: usize, a: &[Rational; 4]) -> LieAlgebra {
    let e = |i: usize, c: Rational| -> Vector {
        let mut v = vec![Poly::zero(); 4];
        v[i] = Poly::constant(c);
        v
    };
    let one = || q(1, 1);
    let brackets = match which {
        0 => vec![
            (0, 1, e(2, one())),
            (1, 2, e(0, one())),
            (2, 0, e(1, one())),
        ],
        1 => vec![
            (0, 1, e(1, q(2, 1))),
            (0, 2, e(2, q(-2, 1))),
            (1, 2, e(0, one())),
        ],
        2 => vec![(0, 1, e(2, one()))],
        3 => vec![(0, 1, e(1, one())), (2, 3, e(3, one()))],
        4 => (0..3).map(|i| (3, i, e(i, a[i].clone()))).collect(),
        5 => return build_family(&FamilySpec::numeric(FamilyKind::Riemannian, a)).algebra,
        _ => return build_family(&FamilySpec::numeric(FamilyKind::Pseudo, a)).algebra,
    };
    LieAlgebra::from_brackets(4, &brackets).expect("4-dimensional")
}

fn int_matrix(rows: &[[i64; 4]; 4]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Poly::int(x)).collect())
        .collect()
}

fn change_basis(alg: &LieAlgebra, a: &Matrix) -> LieAlgebra {
    let det = determinant(a).as_constant().expect("constant matrix");
    let inv: Matrix = adjugate(a)
        .into_iter()
        .map(|row| row.iter().map(|x| x.scale(&det.recip())).collect())
        .collect();
    let cols = transpose(a);
    let mut out = LieAlgebra::abelian(4);
    for i in 0..4 {
        for j in 0..4 {
            let b = mat_vec(
                &inv,
                &alg.bracket(&cols[i], &cols[j]).expect("same dimension"),
            );
            for (k, c) in b.into_iter().enumerate() {
                out.set_constant(i, j, k, c).expect("in range");
            }
        }
    }
    out
}

pub fn instance_strategy() -> impl Strategy<Value = Instance> {
    let nonzero = prop_oneof![-2i64..=-1, 1i64..=2];
    (
        0usize..7,
        prop::array::uniform4(rational_strategy()),
        prop::array::uniform4(prop::array::uniform4(-2i64..=2)),
        prop::array::uniform4(nonzero.clone()),
        prop::array::uniform4(nonzero),
        prop::array::uniform4(any::<bool>()),
    )
        .prop_map(|(which, params, entries, diag, g0, signs)| {
            // A = L·U with L unit lower and U upper triangular, invertible
            let mut l = [[0i64; 4]; 4];
            let mut u = [[0i64; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    if i > j {
                        l[i][j] = entries[i][j];
                    } else if i < j {
                        u[i][j] = entries[i][j];
                    }
                }
                l[i][i] = 1;
                u[i][i] = diag[i];
            }
            let a = mat_mul(&int_matrix(&l), &int_matrix(&u));
            let algebra = change_basis(&base_algebra(which, &params), &a);
            let diagonal = |xs: [i64; 4]| -> Matrix {
                (0..4)
                    .map(|i| {
                        (0..4)
                            .map(|j| {
                                if i == j {
                                    Poly::int(xs[i])
                                } else {
                                    Poly::zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            };
            let g0 = diagonal(g0);
            let p0 = diagonal(signs.map(|s| if s { 1 } else { -1 }));
            let det = determinant(&a).as_constant().expect("constant");
            let a_inv: Matrix = adjugate(&a)
                .into_iter()
                .map(|row| row.iter().map(|x| x.scale(&det.recip())).collect())
                .collect();
            let g = mat_mul(&mat_mul(&transpose(&a), &g0), &a);
            let p = mat_mul(&mat_mul(&a_inv, &p0), &a);
            Instance {
                algebra,
                metric: Metric::new(g, None).expect("congruent to a diagonal metric"),
                structure: ProductStructure::new(p).expect("square"),
            }
        })
}

fn ensure(cond: bool, what: String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what))
    }
}

/// Pair antisymmetries, pair exchange, first Bianchi identity, and symmetry
/// of the Ricci tensor.
pub fn curvature_symmetries(inst: &Instance) -> Result<(), TestCaseError> {
    let conn =
        levi_civita(&inst.algebra, &inst.metric).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let r = curvature(&conn, &inst.algebra, &inst.metric)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for s in 0..4 {
                    let v = r.get(&[i, j, k, s]);
                    ensure(
                        (v + r.get(&[j, i, k, s])).is_zero(),
                        format!("R{i}{j}{k}{s} + R{j}{i}{k}{s}"),
                    )?;
                    ensure(
                        (v + r.get(&[i, j, s, k])).is_zero(),
                        format!("R{i}{j}{k}{s} + R{i}{j}{s}{k}"),
                    )?;
                    ensure(
                        v == r.get(&[k, s, i, j]),
                        format!("R{i}{j}{k}{s} = R{k}{s}{i}{j}"),
                    )?;
                    let bianchi = &(v + r.get(&[j, k, i, s])) + r.get(&[k, i, j, s]);
                    ensure(bianchi.is_zero(), format!("Bianchi at {i}{j}{k}{s}"))?;
                }
            }
        }
    }
    let rho = ricci(&r, &inst.metric).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for a in 0..4 {
        for b in 0..4 {
            ensure(
                rho.get(&[a, b]) == rho.get(&[b, a]),
                format!("rho{a}{b} = rho{b}{a}"),
            )?;
        }
    }
    Ok(())
}

/// `F_ijk = F_ikj` and the hybrid identities with respect to `P`.
pub fn f_symmetries(inst: &Instance) -> Result<(), TestCaseError> {
    let conn =
        levi_civita(&inst.algebra, &inst.metric).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let np = nabla_p(&conn, &inst.structure).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let f = f_tensor(&np, &inst.metric).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let sym = f_symmetry_check(&f);
    ensure(sym.passed(), format!("{:?}", sym.violations.first()))?;
    let hybrid = f_hybrid_check(&f, &inst.structure);
    ensure(hybrid.passed(), format!("{:?}", hybrid.violations.first()))
}

/// Ring axioms on three polynomials.
pub fn ring_axioms((a, b, c): &(Poly, Poly, Poly)) -> Result<(), TestCaseError> {
    let zero = Poly::zero();
    let one = Poly::one();
    ensure((a + b) == (b + a), "a + b = b + a".into())?;
    ensure((a * b) == (b * a), "ab = ba".into())?;
    ensure((&(a + b) + c) == (a + &(b + c)), "(a + b) + c".into())?;
    ensure((&(a * b) * c) == (a * &(b * c)), "(ab)c".into())?;
    ensure((a * &(b + c)) == (&(a * b) + &(a * c)), "a(b + c)".into())?;
    ensure(&(a + &zero) == a && &(a * &one) == a, "identities".into())?;
    ensure((a + &(-a)).is_zero(), "a + (-a)".into())?;
    ensure((a * &zero).is_zero(), "a * 0".into())
}

pub fn triple_strategy() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (poly_strategy(), poly_strategy(), poly_strategy())
}

/// Runs `property` on `cases` deterministic draws from `strategy`.
pub fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    property: impl Fn(&S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&strategy, |v| property(&v))
        .map_err(|e| e.to_string())
}
