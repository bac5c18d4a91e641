//! Almost product structures `P` (with `P² = id`) on a Lie algebra with a
//! metric: the structure tensor `F`, the W₀/W₃ class tests, the Nijenhuis
//! tensor, and the classification of 2-planes.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{Check, LieAlgebra, Metric, Violation};
use crate::error::{Error, Result};
use crate::geometry::{lower_index, Connection, Plane};
use crate::poly::{Assignment, Poly};
use crate::tensor::{
    basis_vector, determinant, identity_matrix, mat_mul, mat_vec, transpose, vec_add, vec_sub,
    Matrix, Tensor, Valence, Vector,
};

/// A (1,1) tensor given by its frame matrix: column `m` holds `P X_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductStructure {
    matrix: Matrix,
}

impl ProductStructure {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Ok(ProductStructure { matrix })
    }

    /// Builds `P` from the images of the basis vectors, `images[m] = P X_m`.
    pub fn from_images(images: Vec<Vector>) -> Result<Self> {
        ProductStructure::new(transpose(&images))
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Poly]) -> Vector {
        mat_vec(&self.matrix, v)
    }

    pub fn image(&self, m: usize) -> Vector {
        self.matrix.iter().map(|row| row[m].clone()).collect()
    }

    pub fn trace(&self) -> Poly {
        (0..self.dim()).map(|i| self.matrix[i][i].clone()).sum()
    }
}

/// `P·P − id = 0`.
pub fn involution_check(p: &ProductStructure) -> Check {
    let sq = mat_mul(&p.matrix, &p.matrix);
    let id = identity_matrix(p.dim());
    let mut check = Check::new("P^2 = id");
    for (i, (row, id_row)) in sq.iter().zip(&id).enumerate() {
        for (j, (a, b)) in row.iter().zip(id_row).enumerate() {
            check.record_scalar(vec![i, j], a - b);
        }
    }
    check
}

/// `g(P X_i, P X_j) − g(X_i, X_j) = 0`.
pub fn compatibility_check(p: &ProductStructure, metric: &Metric) -> Result<Check> {
    if p.dim() != metric.dim() {
        return Err(Error::DimensionMismatch {
            expected: metric.dim(),
            found: p.dim(),
        });
    }
    let mut check = Check::new("g(Px,Py) = g(x,y)");
    for i in 0..p.dim() {
        for j in i..p.dim() {
            let residual = &metric.inner(&p.image(i), &p.image(j)) - metric.entry(i, j);
            check.record_scalar(vec![i, j], residual);
        }
    }
    Ok(check)
}

/// `(∇_{X_i} P) X_j = ∇_{X_i}(P X_j) − P(∇_{X_i} X_j)` as a (1,2) tensor `[i, j, k]`.
pub fn nabla_p(conn: &Connection, p: &ProductStructure) -> Result<Tensor> {
    let n = conn.dim();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    let mut out = Tensor::zeros(Valence::mixed(2), n);
    for i in 0..n {
        let ei = basis_vector(n, i);
        for j in 0..n {
            let value = vec_sub(
                &conn.nabla(&ei, &p.image(j)),
                &p.apply(conn.coefficient(i, j)),
            );
            for (k, c) in value.into_iter().enumerate() {
                out.set(&[i, j, k], c);
            }
        }
    }
    Ok(out)
}

/// `F(x,y,z) = g((∇_x P) y, z)`.
pub fn f_tensor(nabla_p: &Tensor, metric: &Metric) -> Result<Tensor> {
    lower_index(nabla_p, metric)
}

/// `F_{ijk} = F_{ikj}`.
pub fn f_symmetry_check(f: &Tensor) -> Check {
    let n = f.dim();
    let mut check = Check::new("F_ijk = F_ikj");
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                check.record_scalar(vec![i, j, k], f.get(&[i, j, k]) - f.get(&[i, k, j]));
            }
        }
    }
    check
}

/// Evaluates `F(X_i, u, w)` for frame vectors `u`, `w`.
fn f_on(f: &Tensor, i: usize, u: &[Poly], w: &[Poly]) -> Poly {
    let mut acc = Poly::zero();
    for (j, uj) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (k, wk) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            acc += &(&(uj * wk) * f.get(&[i, j, k]));
        }
    }
    acc
}

/// `F(x,y,z) = −F(x,Py,Pz)` and `F(x,y,Pz) = −F(x,Py,z)` on basis vectors.
pub fn f_hybrid_check(f: &Tensor, p: &ProductStructure) -> Check {
    let n = f.dim();
    let mut check = Check::new("F hybrid identities");
    for i in 0..n {
        for j in 0..n {
            let ej = basis_vector(n, j);
            let pj = p.image(j);
            for k in 0..n {
                let ek = basis_vector(n, k);
                let pk = p.image(k);
                let first = f.get(&[i, j, k]) + &f_on(f, i, &pj, &pk);
                let second = &f_on(f, i, &ej, &pk) + &f_on(f, i, &pj, &ek);
                check.record_vector(vec![i, j, k], vec![first, second]);
            }
        }
    }
    check
}

/// Membership in the classes with implemented defining conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub is_w0: bool,
    pub is_w3: bool,
    pub w3_residuals: Vec<Violation>,
}

impl ClassVerdict {
    pub fn label(&self) -> &'static str {
        match (self.is_w0, self.is_w3) {
            (true, _) => "W0",
            (false, true) => "W3",
            (false, false) => "outside implemented classification",
        }
    }
}

/// W₀: `F = 0`. W₃: `F(x,y,z) + F(y,z,x) + F(z,x,y) = 0`.
pub fn classify(f: &Tensor) -> ClassVerdict {
    let n = f.dim();
    let mut cyclic = Check::new("W3 cyclic sum");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // one representative per cyclic class: the smallest rotation
                if (j, k, i) < (i, j, k) || (k, i, j) < (i, j, k) {
                    continue;
                }
                let sum = f.get(&[i, j, k]) + f.get(&[j, k, i]);
                cyclic.record_scalar(vec![i, j, k], &sum + f.get(&[k, i, j]));
            }
        }
    }
    ClassVerdict {
        is_w0: f.is_zero(),
        is_w3: cyclic.passed(),
        w3_residuals: cyclic.violations,
    }
}

fn mixed_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Tensor {
    let mut out = Tensor::zeros(Valence::mixed(2), n);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in f(i, j).into_iter().enumerate() {
                out.set(&[i, j, k], c);
            }
        }
    }
    out
}

fn ensure_same_dim(alg: &LieAlgebra, p: &ProductStructure) -> Result<()> {
    if alg.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: p.dim(),
        });
    }
    Ok(())
}

/// Nijenhuis tensor of a product structure,
/// `N(X,Y) = [PX,PY] + [X,Y] − P[PX,Y] − P[X,PY]`, as a (1,2) tensor `[i, j, k]`.
///
/// This vanishes exactly when `P` is integrable.
pub fn nijenhuis(alg: &LieAlgebra, p: &ProductStructure) -> Result<Tensor> {
    ensure_same_dim(alg, p)?;
    let n = alg.dim();
    let br = |u: &[Poly], v: &[Poly]| alg.bracket(u, v).expect("dimensions checked");
    Ok(mixed_from_fn(n, |i, j| {
        let (ei, ej) = (basis_vector(n, i), basis_vector(n, j));
        let (pi, pj) = (p.image(i), p.image(j));
        let plain = vec_add(&br(&pi, &pj), &br(&ei, &ej));
        let mixed = vec_add(&p.apply(&br(&pi, &ej)), &p.apply(&br(&ei, &pj)));
        vec_sub(&plain, &mixed)
    }))
}

/// The almost-complex style combination
/// `[X,Y] + P[PX,Y] + P[X,PY] − [PX,PY]`, kept for comparison with the
/// product form of [`nijenhuis`]. It does not vanish for every integrable `P`.
pub fn nijenhuis_complex_form(alg: &LieAlgebra, p: &ProductStructure) -> Result<Tensor> {
    ensure_same_dim(alg, p)?;
    let n = alg.dim();
    let br = |u: &[Poly], v: &[Poly]| alg.bracket(u, v).expect("dimensions checked");
    Ok(mixed_from_fn(n, |i, j| {
        let (ei, ej) = (basis_vector(n, i), basis_vector(n, j));
        let (pi, pj) = (p.image(i), p.image(j));
        let plus = vec_add(&p.apply(&br(&pi, &ej)), &p.apply(&br(&ei, &pj)));
        vec_sub(&vec_add(&br(&ei, &ej), &plus), &br(&pi, &pj))
    }))
}

/// The product-form Nijenhuis tensor rebuilt from `∇P` of a torsion-free
/// connection: `N(X,Y) = (∇_{PX}P)Y − (∇_{PY}P)X − P(∇_X P)Y + P(∇_Y P)X`.
///
/// Uses no brackets, so it is an independent route to [`nijenhuis`].
pub fn nijenhuis_from_nabla_p(nabla_p: &Tensor, p: &ProductStructure) -> Result<Tensor> {
    let n = p.dim();
    if nabla_p.dim() != n || nabla_p.valence() != Valence::mixed(2) {
        return Err(Error::Valence {
            upper: nabla_p.valence().upper,
            lower: nabla_p.valence().lower,
            operation: "Nijenhuis tensor from nabla P",
        });
    }
    // (∇_u P) X_j for a frame vector u
    let directed = |u: &[Poly], j: usize| -> Vector {
        (0..n)
            .map(|k| {
                u.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| c * nabla_p.get(&[m, j, k]))
                    .sum()
            })
            .collect()
    };
    Ok(mixed_from_fn(n, |i, j| {
        let (ei, ej) = (basis_vector(n, i), basis_vector(n, j));
        let a = directed(&p.image(i), j);
        let b = directed(&p.image(j), i);
        let c = p.apply(&directed(&ei, j));
        let d = p.apply(&directed(&ej, i));
        vec_add(&vec_sub(&vec_sub(&a, &b), &c), &d)
    }))
}

/// Relation of a 2-plane to `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneType {
    PInvariant,
    TotallyReal,
    Neither,
}

impl fmt::Display for PlaneType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlaneType::PInvariant => "P-invariant",
            PlaneType::TotallyReal => "totally real",
            PlaneType::Neither => "neither",
        })
    }
}

/// Decides whether `Pα = α` or `α ⟂ Pα`. Only planes with constant spanning
/// vectors are accepted; `P` and `g` may be symbolic, in which case the
/// answer must hold identically in the parameters.
pub fn plane_type(p: &ProductStructure, metric: &Metric, plane: &Plane) -> Result<PlaneType> {
    let n = p.dim();
    for len in [metric.dim(), plane.u.len(), plane.v.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    if plane.constant_components().is_none() {
        return Err(Error::SymbolicPlane);
    }
    let (u, v) = (&plane.u, &plane.v);
    if !spans_plane(u, v) {
        return Err(Error::DegeneratePlane(
            "spanning vectors are linearly dependent".into(),
        ));
    }
    let (pu, pv) = (p.apply(u), p.apply(v));
    if in_span(u, v, &pu) && in_span(u, v, &pv) {
        return Ok(PlaneType::PInvariant);
    }
    let orthogonal = [(u, &pu), (u, &pv), (v, &pu), (v, &pv)]
        .iter()
        .all(|(a, b)| metric.inner(a, b).is_zero());
    Ok(if orthogonal {
        PlaneType::TotallyReal
    } else {
        PlaneType::Neither
    })
}

fn rows_minors<'a>(rows: &'a [&'a [Poly]], size: usize) -> impl Iterator<Item = Poly> + 'a {
    let n = rows[0].len();
    combinations(n, size).into_iter().map(move |cols| {
        let m: Matrix = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        determinant(&m)
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn spans_plane(u: &[Poly], v: &[Poly]) -> bool {
    rows_minors(&[u, v], 2).any(|m| !m.is_zero())
}

/// `w ∈ span(u, v)` for independent `u`, `v`: every 3×3 minor of `[u; v; w]` vanishes.
fn in_span(u: &[Poly], v: &[Poly], w: &[Poly]) -> bool {
    if u.len() < 3 {
        return true;
    }
    rows_minors(&[u, v, w], 3).all(|m| m.is_zero())
}

/// Isotropic-P test: the square norm of `∇P` vanishes at the assignment.
pub fn isotropic_p_check(norm_nabla_p: &Poly, at: &Assignment) -> Result<bool> {
    Ok(norm_nabla_p.eval(at)?.is_zero())
}

/// The strict condition `∇P = 0` at the assignment.
pub fn nabla_p_vanishes(nabla_p: &Tensor, at: &Assignment) -> bool {
    nabla_p.substitute(at).is_zero()
}
