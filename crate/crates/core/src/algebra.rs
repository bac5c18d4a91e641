//! Lie algebras given by structure constants, metrics in the invariant frame,
//! and the antisymmetry, Jacobi and Killing predicates.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::tensor::{
    adjugate, basis_vector, determinant, index_label, mat_mul, zero_vector, Matrix, Vector,
};

pub use crate::tensor::{Tensor, Valence};

/// One failed instance of a componentwise identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 0-based frame indices of the failing instance.
    pub indices: Vec<usize>,
    /// Nonzero residual; scalar identities carry a single entry.
    pub residual: Vec<Poly>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): ", index_label(&self.indices))?;
        if let [scalar] = self.residual.as_slice() {
            write!(f, "{scalar}")
        } else {
            let parts: Vec<String> = self.residual.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", parts.join(", "))
        }
    }
}

/// Outcome of a named componentwise check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub violations: Vec<Violation>,
}

impl Check {
    pub fn new(name: &'static str) -> Self {
        Check {
            name,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record_scalar(&mut self, indices: Vec<usize>, residual: Poly) {
        if !residual.is_zero() {
            self.violations.push(Violation {
                indices,
                residual: vec![residual],
            });
        }
    }

    pub(crate) fn record_vector(&mut self, indices: Vec<usize>, residual: Vector) {
        if residual.iter().any(|p| !p.is_zero()) {
            self.violations.push(Violation { indices, residual });
        }
    }
}

/// A Lie algebra on the frame `X_1..X_n`: `[X_i, X_j] = Σ_k C[i][j][k] X_k`.
///
/// Both orientations `C[i][j]` and `C[j][i]` are stored. Nothing is validated
/// at construction; see [`antisymmetry_check`] and [`jacobi_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    structure: Vec<Poly>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            structure: vec![Poly::zero(); dim * dim * dim],
        }
    }

    /// Builds the algebra from the brackets `[X_i, X_j]` for the listed pairs,
    /// filling `[X_j, X_i]` by antisymmetry. Unlisted pairs bracket to zero.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut alg = LieAlgebra::abelian(dim);
        for (i, j, value) in brackets {
            if value.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: value.len(),
                });
            }
            for (k, c) in value.iter().enumerate() {
                alg.set_constant(*i, *j, k, c.clone())?;
                alg.set_constant(*j, *i, k, -c)?;
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> Result<usize> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    dim: self.dim,
                });
            }
        }
        Ok((i * self.dim + j) * self.dim + k)
    }

    /// The coefficient of `X_k` in `[X_i, X_j]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Sets a single orientation; the caller is responsible for antisymmetry.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: Poly) -> Result<()> {
        let slot = self.slot(i, j, k)?;
        self.structure[slot] = value;
        Ok(())
    }

    /// `[X_i, X_j]` as a frame vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        (0..self.dim)
            .map(|k| self.constant(i, j, k).clone())
            .collect()
    }

    pub fn bracket(&self, u: &[Poly], v: &[Poly]) -> Result<Vector> {
        for len in [u.len(), v.len()] {
            if len != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: len,
                });
            }
        }
        let mut out = zero_vector(self.dim);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let coeff = ui * vj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot += &(&coeff * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Structure constants as a (1,2) tensor indexed `[i, j, k]`.
    pub fn as_tensor(&self) -> Tensor {
        Tensor::from_fn(Valence::mixed(2), self.dim, |idx| {
            self.constant(idx[0], idx[1], idx[2]).clone()
        })
    }

    pub fn substitute(&self, at: &crate::poly::Assignment) -> LieAlgebra {
        LieAlgebra {
            dim: self.dim,
            structure: self.structure.iter().map(|p| p.substitute(at)).collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Poly::is_zero)
    }
}

/// `C[i][j][k] + C[j][i][k] = 0` for every index triple.
pub fn antisymmetry_check(alg: &LieAlgebra) -> Check {
    let n = alg.dim();
    let mut check = Check::new("antisymmetry");
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let residual = alg.constant(i, j, k) + alg.constant(j, i, k);
                check.record_scalar(vec![i, j, k], residual);
            }
        }
    }
    check
}

/// Cyclic sum `[[X_i,X_j],X_s] + [[X_j,X_s],X_i] + [[X_s,X_i],X_j]` for `i < j < s`.
///
/// Triples with a repeated index vanish by antisymmetry, which is a precondition.
pub fn jacobi_check(alg: &LieAlgebra) -> Check {
    let n = alg.dim();
    let mut check = Check::new("jacobi");
    let e = |i| basis_vector(n, i);
    let bb = |a: usize, b: usize, c: usize| {
        alg.bracket(&alg.basis_bracket(a, b), &e(c))
            .expect("dimensions agree by construction")
    };
    for i in 0..n {
        for j in i + 1..n {
            for s in j + 1..n {
                let terms = [bb(i, j, s), bb(j, s, i), bb(s, i, j)];
                let residual = (0..n)
                    .map(|l| terms.iter().map(|t| t[l].clone()).sum())
                    .collect();
                check.record_vector(vec![i, j, s], residual);
            }
        }
    }
    check
}

/// `g([X_i,X_j],X_k) + g([X_i,X_k],X_j) = 0` for all basis triples; by
/// trilinearity this is the full Killing condition.
pub fn killing_check(alg: &LieAlgebra, metric: &Metric) -> Result<Check> {
    if alg.dim() != metric.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: metric.dim(),
        });
    }
    let n = alg.dim();
    let mut check = Check::new("killing");
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let a = metric.inner(&alg.basis_bracket(i, j), &basis_vector(n, k));
                let b = metric.inner(&alg.basis_bracket(i, k), &basis_vector(n, j));
                check.record_scalar(vec![i, j, k], &a + &b);
            }
        }
    }
    Ok(check)
}

/// A symmetric metric with polynomial inverse, constant along the frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: Matrix,
    g_inv: Matrix,
    signature: Option<(usize, usize)>,
}

impl Metric {
    /// Validates symmetry and invertibility. For constant diagonal metrics the
    /// signature is derived, and a declared one must agree with it.
    pub fn new(g: Matrix, declared: Option<(usize, usize)>) -> Result<Self> {
        let n = g.len();
        if let Some(row) = g.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if g[i][j] != g[j][i] {
                    return Err(Error::MetricNotSymmetric(i + 1, j + 1));
                }
            }
        }
        let det = determinant(&g);
        let det_inv = match det.as_constant() {
            Some(c) if c.is_zero() => return Err(Error::SingularMetric),
            Some(c) => Poly::constant(c.recip()),
            None => return Err(Error::NonPolynomialInverse(det.to_string())),
        };
        let g_inv = adjugate(&g)
            .into_iter()
            .map(|row| row.iter().map(|x| x * &det_inv).collect())
            .collect();
        let signature = match (diagonal_signature(&g), declared) {
            (Some(actual), Some(declared)) if actual != declared => {
                return Err(Error::SignatureMismatch { declared, actual })
            }
            (Some(actual), _) => Some(actual),
            (None, declared) => declared,
        };
        Ok(Metric {
            g,
            g_inv,
            signature,
        })
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let g = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Poly::int(entries[i])
                        } else {
                            Poly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Metric::new(g, None)
    }

    /// The positive definite metric with orthonormal frame.
    pub fn euclidean(dim: usize) -> Self {
        Metric::diagonal(&vec![1; dim]).expect("identity metric is valid")
    }

    /// `diag(1,1,-1,-1)`, signature (2,2).
    pub fn neutral4() -> Self {
        Metric::diagonal(&[1, 1, -1, -1]).expect("neutral metric is valid")
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.g[i][j]
    }

    pub fn inv_entry(&self, i: usize, j: usize) -> &Poly {
        &self.g_inv[i][j]
    }

    /// `(p, q)`: counts of positive and negative directions, when known.
    pub fn signature(&self) -> Option<(usize, usize)> {
        self.signature
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.is_some_and(|(_, q)| q == 0)
    }

    pub fn inner(&self, u: &[Poly], v: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let gij = &self.g[i][j];
                if !gij.is_zero() {
                    acc += &(&(ui * gij) * vj);
                }
            }
        }
        acc
    }

    /// `g_{kj} v^j`, the covector paired with `v`.
    pub fn lower(&self, v: &[Poly]) -> Vector {
        crate::tensor::mat_vec(&self.g, v)
    }

    /// `g^{kj} w_j`, the vector dual to the covector `w`.
    pub fn raise(&self, w: &[Poly]) -> Vector {
        crate::tensor::mat_vec(&self.g_inv, w)
    }

    /// `g · g⁻¹`, which must be the identity.
    pub fn inverse_product(&self) -> Matrix {
        mat_mul(&self.g, &self.g_inv)
    }
}

fn diagonal_signature(g: &Matrix) -> Option<(usize, usize)> {
    let n = g.len();
    let mut pos = 0;
    let mut neg = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && !g[i][j].is_zero() {
                return None;
            }
        }
        let c = g[i][i].as_constant()?;
        if c.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Some((pos, neg))
}
