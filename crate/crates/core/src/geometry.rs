//! Levi-Civita connection, curvature and its contractions for left-invariant
//! metrics. Every tensor here is constant in the invariant frame, so frame
//! derivatives of components vanish and covariant derivatives reduce to
//! algebra on the connection coefficients.

use crate::algebra::{killing_check, Check, LieAlgebra, Metric};
use crate::error::{Error, Result};
use crate::poly::{Assignment, Poly, Rational};
use crate::tensor::{basis_vector, index_label, zero_vector, Tensor, Valence, Vector};

use num_traits::Zero;

/// Frame components of `∇_{X_i} X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: Vec<Vec<Vector>>,
}

impl Connection {
    pub fn from_coefficients(gamma: Vec<Vec<Vector>>) -> Self {
        Connection { gamma }
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// `∇_{X_i} X_j`.
    pub fn coefficient(&self, i: usize, j: usize) -> &Vector {
        &self.gamma[i][j]
    }

    /// `∇_u v` for vector fields with constant frame components.
    pub fn nabla(&self, u: &[Poly], v: &[Poly]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let coeff = ui * vj;
                for (slot, c) in out.iter_mut().zip(&self.gamma[i][j]) {
                    if !c.is_zero() {
                        *slot += &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// Connection coefficients as a (1,2) tensor indexed `[i, j, k]`.
    pub fn as_tensor(&self) -> Tensor {
        Tensor::from_fn(Valence::mixed(2), self.dim(), |idx| {
            self.gamma[idx[0]][idx[1]][idx[2]].clone()
        })
    }
}

/// `∇_{X_i} X_j − ∇_{X_j} X_i − [X_i, X_j] = 0`.
pub fn torsion_check(conn: &Connection, alg: &LieAlgebra) -> Check {
    let n = conn.dim();
    let mut check = Check::new("torsion-free");
    for i in 0..n {
        for j in i + 1..n {
            let residual = (0..n)
                .map(|k| &(&conn.gamma[i][j][k] - &conn.gamma[j][i][k]) - alg.constant(i, j, k))
                .collect();
            check.record_vector(vec![i, j], residual);
        }
    }
    check
}

/// `g(∇_{X_i} X_j, X_k) + g(X_j, ∇_{X_i} X_k) = 0`, i.e. `∇g = 0` for a
/// frame-constant metric.
pub fn metric_compatibility_check(conn: &Connection, metric: &Metric) -> Check {
    let n = conn.dim();
    let mut check = Check::new("metric-compatible");
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let a = metric.inner(&conn.gamma[i][j], &basis_vector(n, k));
                let b = metric.inner(&basis_vector(n, j), &conn.gamma[i][k]);
                check.record_scalar(vec![i, j, k], &a + &b);
            }
        }
    }
    check
}

/// `∇_{X_i} X_j − ½[X_i, X_j] = 0`, the form the connection takes for a
/// Killing metric.
pub fn half_bracket_check(conn: &Connection, alg: &LieAlgebra) -> Check {
    let n = conn.dim();
    let half = Poly::frac(1, 2);
    let mut check = Check::new("half-bracket connection");
    for i in 0..n {
        for j in 0..n {
            let residual = (0..n)
                .map(|k| &conn.gamma[i][j][k] - &(&half * alg.constant(i, j, k)))
                .collect();
            check.record_vector(vec![i, j], residual);
        }
    }
    check
}

fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn ensure_valence(t: &Tensor, valence: Valence, operation: &'static str) -> Result<()> {
    if t.valence() != valence {
        return Err(Error::Valence {
            upper: t.valence().upper,
            lower: t.valence().lower,
            operation,
        });
    }
    Ok(())
}

/// Levi-Civita connection of a frame-constant metric via the Koszul formula
/// `2g(∇_i X_j, X_k) = g([X_i,X_j],X_k) − g([X_j,X_k],X_i) + g([X_k,X_i],X_j)`.
pub fn levi_civita(alg: &LieAlgebra, metric: &Metric) -> Result<Connection> {
    let n = alg.dim();
    ensure_dim(n, metric.dim())?;
    let half = Poly::frac(1, 2);
    let e = |i| basis_vector(n, i);
    let gamma = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let covector: Vector = (0..n)
                        .map(|k| {
                            let a = metric.inner(&alg.basis_bracket(i, j), &e(k));
                            let b = metric.inner(&alg.basis_bracket(j, k), &e(i));
                            let c = metric.inner(&alg.basis_bracket(k, i), &e(j));
                            &(&(&a - &b) + &c) * &half
                        })
                        .collect();
                    metric.raise(&covector)
                })
                .collect()
        })
        .collect();
    Ok(Connection { gamma })
}

/// `R_{ijks} = g(R(X_i,X_j)X_k, X_s)` with
/// `R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_{[x,y]} z`.
pub fn curvature(conn: &Connection, alg: &LieAlgebra, metric: &Metric) -> Result<Tensor> {
    let n = conn.dim();
    ensure_dim(n, alg.dim())?;
    ensure_dim(n, metric.dim())?;
    // R(X_i,X_j)X_k as frame vectors
    let mut endo = vec![vec![vec![zero_vector(n); n]; n]; n];
    for i in 0..n {
        let ei = basis_vector(n, i);
        for j in 0..n {
            let ej = basis_vector(n, j);
            let bracket = alg.basis_bracket(i, j);
            for (k, slot) in endo[i][j].iter_mut().enumerate() {
                let a = conn.nabla(&ei, &conn.gamma[j][k]);
                let b = conn.nabla(&ej, &conn.gamma[i][k]);
                let c = conn.nabla(&bracket, &basis_vector(n, k));
                *slot = (0..n).map(|m| &(&a[m] - &b[m]) - &c[m]).collect();
            }
        }
    }
    Ok(Tensor::from_fn(Valence::covariant(4), n, |idx| {
        metric.inner(&endo[idx[0]][idx[1]][idx[2]], &basis_vector(n, idx[3]))
    }))
}

/// Closed form `R_{ijks} = −¼ g([X_i,X_j],[X_k,X_s])`, valid only for Killing metrics.
pub fn curvature_killing_shortcut(alg: &LieAlgebra, metric: &Metric) -> Result<Tensor> {
    let check = killing_check(alg, metric)?;
    if !check.passed() {
        let first = &check.violations[0];
        return Err(Error::Precondition(format!(
            "metric is not Killing ({} violations, first at {first})",
            check.violations.len()
        )));
    }
    let n = alg.dim();
    let quarter = Poly::frac(-1, 4);
    Ok(Tensor::from_fn(Valence::covariant(4), n, |idx| {
        let a = alg.basis_bracket(idx[0], idx[1]);
        let b = alg.basis_bracket(idx[2], idx[3]);
        &quarter * &metric.inner(&a, &b)
    }))
}

/// `ρ(y,z) = g^{ij} R(e_i, y, z, e_j)`.
pub fn ricci(curv: &Tensor, metric: &Metric) -> Result<Tensor> {
    ensure_valence(curv, Valence::covariant(4), "ricci")?;
    let n = metric.dim();
    ensure_dim(n, curv.dim())?;
    Ok(Tensor::from_fn(Valence::covariant(2), n, |ab| {
        let mut acc = Poly::zero();
        for i in 0..n {
            for j in 0..n {
                let gij = metric.inv_entry(i, j);
                if !gij.is_zero() {
                    acc += &(gij * curv.get(&[i, ab[0], ab[1], j]));
                }
            }
        }
        acc
    }))
}

/// `τ = g^{ij} ρ(e_i, e_j)`.
pub fn scalar_curvature(rho: &Tensor, metric: &Metric) -> Result<Poly> {
    ensure_valence(rho, Valence::covariant(2), "scalar curvature")?;
    ensure_dim(metric.dim(), rho.dim())?;
    let n = metric.dim();
    Ok((0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| metric.inv_entry(i, j) * rho.get(&[i, j]))
        .sum())
}

/// `π₁(x,y,z,w) = g(y,z)g(x,w) − g(x,z)g(y,w)` on basis vectors.
pub fn pi1(metric: &Metric, i: usize, j: usize, k: usize, s: usize) -> Poly {
    let g = |a, b| metric.entry(a, b);
    &(g(j, k) * g(i, s)) - &(g(i, k) * g(j, s))
}

/// `ψ₁(ρ)(x,y,z,w) = g(y,z)ρ(x,w) − g(x,z)ρ(y,w) + ρ(y,z)g(x,w) − ρ(x,z)g(y,w)`.
pub fn psi1(rho: &Tensor, metric: &Metric, i: usize, j: usize, k: usize, s: usize) -> Poly {
    let g = |a, b| metric.entry(a, b);
    let r = |a: usize, b: usize| rho.get(&[a, b]);
    let mut acc = g(j, k) * r(i, s);
    acc -= &(g(i, k) * r(j, s));
    acc += &(r(j, k) * g(i, s));
    acc -= &(r(i, k) * g(j, s));
    acc
}

/// π₁ on arbitrary vectors.
pub fn pi1_vectors(metric: &Metric, x: &[Poly], y: &[Poly], z: &[Poly], w: &[Poly]) -> Poly {
    &(metric.inner(y, z) * metric.inner(x, w)) - &(metric.inner(x, z) * metric.inner(y, w))
}

/// Weyl tensor `W = R − 1/(2n−2) (ψ₁(ρ) − τ/(2n−1) π₁)` on a manifold of
/// even dimension `2n ≥ 4`.
pub fn weyl(curv: &Tensor, rho: &Tensor, tau: &Poly, metric: &Metric) -> Result<Tensor> {
    ensure_valence(curv, Valence::covariant(4), "weyl")?;
    ensure_valence(rho, Valence::covariant(2), "weyl")?;
    let dim = metric.dim();
    ensure_dim(dim, curv.dim())?;
    ensure_dim(dim, rho.dim())?;
    if dim < 4 || !dim.is_multiple_of(2) {
        return Err(Error::UnsupportedDimension {
            dim,
            reason: "the Weyl tensor formula needs even dimension 2n with n >= 2".into(),
        });
    }
    let outer = Poly::frac(1, dim as i64 - 2);
    let tau_coeff = tau * &Poly::frac(1, dim as i64 - 1);
    Ok(Tensor::from_fn(Valence::covariant(4), dim, |idx| {
        let (i, j, k, s) = (idx[0], idx[1], idx[2], idx[3]);
        let inner = &psi1(rho, metric, i, j, k, s) - &(&tau_coeff * &pi1(metric, i, j, k, s));
        curv.get(idx) - &(&outer * &inner)
    }))
}

/// A 2-plane spanned by `u` and `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub u: Vector,
    pub v: Vector,
}

impl Plane {
    pub fn new(u: Vector, v: Vector) -> Self {
        Plane { u, v }
    }

    /// The basic plane `α_{ij} = span(X_i, X_j)`, 0-based.
    pub fn basic(dim: usize, i: usize, j: usize) -> Self {
        Plane {
            u: basis_vector(dim, i),
            v: basis_vector(dim, j),
        }
    }

    /// Constant components of both spanning vectors, if they have them.
    pub fn constant_components(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let conv = |w: &Vector| w.iter().map(Poly::as_constant).collect::<Option<Vec<_>>>();
        Some((conv(&self.u)?, conv(&self.v)?))
    }
}

/// `k(α) = R(x,y,y,x) / π₁(x,y,y,x)` kept as an exact quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionalCurvature {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl SectionalCurvature {
    /// The curvature as a polynomial, when the denominator is the constant 1.
    pub fn as_poly(&self) -> Option<Poly> {
        (self.denominator == Poly::one()).then(|| self.numerator.clone())
    }

    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        let den = self.denominator.eval(at)?;
        if den.is_zero() {
            return Err(Error::DegeneratePlane(
                "π₁(x,y,y,x) vanishes at the assignment".into(),
            ));
        }
        Ok(self.numerator.eval(at)? / den)
    }
}

pub fn sectional_curvature(
    curv: &Tensor,
    metric: &Metric,
    plane: &Plane,
) -> Result<SectionalCurvature> {
    ensure_valence(curv, Valence::covariant(4), "sectional curvature")?;
    let n = metric.dim();
    ensure_dim(n, curv.dim())?;
    ensure_dim(n, plane.u.len())?;
    ensure_dim(n, plane.v.len())?;
    let (x, y) = (&plane.u, &plane.v);
    let denominator = pi1_vectors(metric, x, y, y, x);
    if denominator.is_zero() {
        return Err(Error::DegeneratePlane(
            "π₁(x,y,y,x) is identically zero".into(),
        ));
    }
    let mut numerator = Poly::zero();
    for (idx, r) in curv.nonzero() {
        let coeff = &(&x[idx[0]] * &y[idx[1]]) * &(&y[idx[2]] * &x[idx[3]]);
        if !coeff.is_zero() {
            numerator += &(&coeff * r);
        }
    }
    Ok(match denominator.as_constant() {
        Some(c) => SectionalCurvature {
            numerator: numerator.scale(&c.recip()),
            denominator: Poly::one(),
        },
        None => SectionalCurvature {
            numerator,
            denominator,
        },
    })
}

/// `(∇T)(X_i; X_{j1}, …, X_{js}) = −Σ_m T(…, ∇_{X_i} X_{jm}, …)` for a
/// frame-constant (0,s) tensor. The differentiation slot comes first.
pub fn covariant_derivative(conn: &Connection, t: &Tensor) -> Result<Tensor> {
    if t.valence().upper != 0 {
        return Err(Error::Valence {
            upper: t.valence().upper,
            lower: t.valence().lower,
            operation: "covariant derivative",
        });
    }
    let n = conn.dim();
    ensure_dim(n, t.dim())?;
    let s = t.rank();
    Ok(Tensor::from_fn(Valence::covariant(s + 1), n, |idx| {
        let i = idx[0];
        let slots = &idx[1..];
        let mut acc = Poly::zero();
        let mut probe = slots.to_vec();
        for m in 0..s {
            let gamma = &conn.gamma[i][slots[m]];
            for (p, c) in gamma.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                probe[m] = p;
                let value = t.get(&probe);
                if !value.is_zero() {
                    acc -= &(c * value);
                }
            }
            probe[m] = slots[m];
        }
        acc
    }))
}

/// Lowers the contravariant index of a (1,k) tensor into a trailing covariant slot.
pub fn lower_index(t: &Tensor, metric: &Metric) -> Result<Tensor> {
    if t.valence().upper != 1 {
        return Err(Error::Valence {
            upper: t.valence().upper,
            lower: t.valence().lower,
            operation: "lower index",
        });
    }
    let n = metric.dim();
    ensure_dim(n, t.dim())?;
    let lower = t.valence().lower;
    Ok(Tensor::from_fn(Valence::covariant(lower + 1), n, |idx| {
        let (head, last) = idx.split_at(lower);
        let mut probe = head.to_vec();
        probe.push(0);
        let mut acc = Poly::zero();
        for m in 0..n {
            let gmc = metric.entry(m, last[0]);
            if !gmc.is_zero() {
                probe[lower] = m;
                acc += &(t.get(&probe) * gmc);
            }
        }
        acc
    }))
}

/// Full contraction of `T` with itself through the metric, every free index
/// pair contracted with `g^{-1}`. A (1,k) tensor is first lowered, which gives
/// `g^{ij} g^{ks} g(T_{ik}, T_{js})` for the (1,2) case.
pub fn square_norm(t: &Tensor, metric: &Metric) -> Result<Poly> {
    let lowered = match t.valence() {
        Valence { upper: 0, .. } => t.clone(),
        Valence { upper: 1, lower } if lower >= 1 => lower_index(t, metric)?,
        v => {
            return Err(Error::Valence {
                upper: v.upper,
                lower: v.lower,
                operation: "square norm",
            })
        }
    };
    ensure_dim(metric.dim(), lowered.dim())?;
    let mut raised = lowered.clone();
    for slot in 0..raised.rank() {
        raised = raise_slot(&raised, metric, slot);
    }
    Ok(lowered
        .iter()
        .zip(raised.iter())
        .map(|((_, a), (_, b))| a * b)
        .sum())
}

fn raise_slot(t: &Tensor, metric: &Metric, slot: usize) -> Tensor {
    let n = t.dim();
    Tensor::from_fn(t.valence(), n, |idx| {
        let mut probe = idx.to_vec();
        let mut acc = Poly::zero();
        for m in 0..n {
            let g = metric.inv_entry(idx[slot], m);
            if !g.is_zero() {
                probe[slot] = m;
                acc += &(g * t.get(&probe));
            }
        }
        acc
    })
}

/// Componentwise check that a tensor vanishes.
pub fn zero_check(name: &'static str, t: &Tensor) -> Check {
    let mut check = Check::new(name);
    for (idx, p) in t.nonzero() {
        check.record_scalar(idx, p.clone());
    }
    check
}

/// Human label for a tensor component, e.g. `R_1221`.
pub fn component_name(symbol: &str, idx: &[usize]) -> String {
    format!("{symbol}_{}", index_label(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Vector;

    fn lam(k: usize) -> Poly {
        Poly::lambda(k)
    }

    fn vec4(xs: [Poly; 4]) -> Vector {
        xs.to_vec()
    }

    /// Brackets of the Riemannian family, written out independently of the
    /// family constructors.
    fn riemannian_algebra() -> LieAlgebra {
        let z = Poly::zero;
        LieAlgebra::from_brackets(
            4,
            &[
                (0, 1, vec4([z(), z(), lam(1), lam(2)])),
                (0, 2, vec4([z(), -lam(1), z(), lam(4)])),
                (0, 3, vec4([z(), -lam(2), -lam(4), z()])),
                (1, 2, vec4([lam(1), z(), z(), lam(3)])),
                (1, 3, vec4([lam(2), z(), -lam(3), z()])),
                (2, 3, vec4([lam(4), lam(3), z(), z()])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn koszul_gives_half_bracket_for_killing_metric() {
        let alg = riemannian_algebra();
        let g = Metric::euclidean(4);
        let conn = levi_civita(&alg, &g).unwrap();
        let half = Poly::frac(1, 2);
        assert_eq!(
            conn.coefficient(0, 1),
            &vec4([Poly::zero(), Poly::zero(), &half * &lam(1), &half * &lam(2)])
        );
        assert!(torsion_check(&conn, &alg).passed());
        assert!(metric_compatibility_check(&conn, &g).passed());
        assert!(half_bracket_check(&conn, &alg).passed());
    }

    #[test]
    fn abelian_is_flat() {
        let alg = LieAlgebra::abelian(4);
        let g = Metric::neutral4();
        let conn = levi_civita(&alg, &g).unwrap();
        assert!(conn.as_tensor().is_zero());
        let r = curvature(&conn, &alg, &g).unwrap();
        assert!(r.is_zero());
        assert!(curvature_killing_shortcut(&alg, &g).unwrap().is_zero());
        let rho = ricci(&r, &g).unwrap();
        assert!(rho.is_zero());
        let tau = scalar_curvature(&rho, &g).unwrap();
        assert!(tau.is_zero());
        assert!(weyl(&r, &rho, &tau, &g).unwrap().is_zero());
    }

    #[test]
    fn curvature_component_from_definition() {
        let alg = riemannian_algebra();
        let g = Metric::euclidean(4);
        let conn = levi_civita(&alg, &g).unwrap();
        let r = curvature(&conn, &alg, &g).unwrap();
        let expected: Poly = "1/4*l1^2 + 1/4*l2^2".parse().unwrap();
        assert_eq!(r.get(&[0, 1, 1, 0]), &expected);
        let short = curvature_killing_shortcut(&alg, &g).unwrap();
        assert_eq!(short, r);
    }

    #[test]
    fn shortcut_refuses_non_killing_input() {
        let mut alg = LieAlgebra::abelian(4);
        alg.set_constant(0, 1, 0, Poly::one()).unwrap();
        alg.set_constant(1, 0, 0, -Poly::one()).unwrap();
        let err = curvature_killing_shortcut(&alg, &Metric::euclidean(4)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn non_killing_connection_is_still_levi_civita() {
        // [X1,X2] = X1 is not Killing for the Euclidean metric
        let alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![Poly::one(), Poly::zero()])]).unwrap();
        let g = Metric::euclidean(2);
        let conn = levi_civita(&alg, &g).unwrap();
        assert!(torsion_check(&conn, &alg).passed());
        assert!(metric_compatibility_check(&conn, &g).passed());
        assert!(!half_bracket_check(&conn, &alg).passed());
        // this is the hyperbolic plane: curvature -1
        let r = curvature(&conn, &alg, &g).unwrap();
        let k = sectional_curvature(&r, &g, &Plane::basic(2, 0, 1)).unwrap();
        assert_eq!(k.as_poly(), Some(Poly::int(-1)));
    }

    #[test]
    fn pi1_values() {
        assert_eq!(pi1(&Metric::euclidean(4), 0, 1, 1, 0), Poly::one());
        assert_eq!(pi1(&Metric::neutral4(), 0, 2, 2, 0), Poly::int(-1));
        let zero = Tensor::zeros(Valence::covariant(2), 4);
        let g = Metric::neutral4();
        for i in 0..4 {
            for j in 0..4 {
                assert!(psi1(&zero, &g, i, j, j, i).is_zero());
            }
        }
    }

    #[test]
    fn weyl_rejects_low_dimension() {
        let g = Metric::euclidean(2);
        let r = Tensor::zeros(Valence::covariant(4), 2);
        let rho = Tensor::zeros(Valence::covariant(2), 2);
        assert!(matches!(
            weyl(&r, &rho, &Poly::zero(), &g),
            Err(Error::UnsupportedDimension { dim: 2, .. })
        ));
    }

    #[test]
    fn degenerate_planes() {
        let g = Metric::neutral4();
        let r = Tensor::zeros(Valence::covariant(4), 4);
        // X1 + X3 is null and orthogonal to X2 + X4, which is null too
        let plane = Plane::new(
            vec4([Poly::one(), Poly::zero(), Poly::one(), Poly::zero()]),
            vec4([Poly::zero(), Poly::one(), Poly::zero(), Poly::one()]),
        );
        assert!(matches!(
            sectional_curvature(&r, &g, &plane),
            Err(Error::DegeneratePlane(_))
        ));
        let same = Plane::new(
            vec4([Poly::one(), Poly::zero(), Poly::zero(), Poly::zero()]),
            vec4([Poly::int(2), Poly::zero(), Poly::zero(), Poly::zero()]),
        );
        assert!(sectional_curvature(&r, &g, &same).is_err());
    }

    #[test]
    fn metric_is_parallel() {
        let alg = riemannian_algebra();
        let g = Metric::euclidean(4);
        let conn = levi_civita(&alg, &g).unwrap();
        let gt = Tensor::from_fn(Valence::covariant(2), 4, |ij| g.entry(ij[0], ij[1]).clone());
        assert!(covariant_derivative(&conn, &gt).unwrap().is_zero());
    }

    #[test]
    fn square_norm_of_zero_and_valence_errors() {
        let g = Metric::euclidean(4);
        assert!(square_norm(&Tensor::zeros(Valence::mixed(2), 4), &g)
            .unwrap()
            .is_zero());
        let bad = Tensor::zeros(Valence { upper: 2, lower: 1 }, 4);
        assert!(matches!(square_norm(&bad, &g), Err(Error::Valence { .. })));
        let t = Tensor::from_fn(Valence::covariant(2), 4, |ij| {
            Poly::int((ij[0] == ij[1]) as i64 * 3)
        });
        // trace of diag(3,3,3,3)^2 against diag(1,1,-1,-1) twice
        assert_eq!(square_norm(&t, &Metric::neutral4()).unwrap(), Poly::int(36));
    }
}
