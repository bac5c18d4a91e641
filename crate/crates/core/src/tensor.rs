//! Dense tensors with polynomial components in a fixed frame.
//!
//! Storage order puts the covariant (lower) indices first and the single
//! optional contravariant index last, so a (1,2) tensor `T` with
//! `T(X_i, X_j) = Σ_k T[i][j][k] X_k` is indexed as `[i, j, k]`.
//! All indices are 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Assignment, Poly};

/// A frame vector: components with respect to `X_1..X_n`.
pub type Vector = Vec<Poly>;

/// A square matrix of polynomials, row-major.
pub type Matrix = Vec<Vec<Poly>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Valence {
    pub upper: usize,
    pub lower: usize,
}

impl Valence {
    pub const fn covariant(lower: usize) -> Self {
        Valence { upper: 0, lower }
    }

    pub const fn mixed(lower: usize) -> Self {
        Valence { upper: 1, lower }
    }

    pub fn rank(self) -> usize {
        self.upper + self.lower
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.upper, self.lower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    valence: Valence,
    dim: usize,
    components: Vec<Poly>,
}

impl Tensor {
    pub fn zeros(valence: Valence, dim: usize) -> Self {
        Tensor {
            valence,
            dim,
            components: vec![Poly::zero(); dim.pow(valence.rank() as u32)],
        }
    }

    pub fn from_fn(valence: Valence, dim: usize, mut f: impl FnMut(&[usize]) -> Poly) -> Self {
        let mut t = Tensor::zeros(valence, dim);
        let mut idx = vec![0; valence.rank()];
        for slot in 0..t.components.len() {
            t.unflatten(slot, &mut idx);
            t.components[slot] = f(&idx);
        }
        t
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.valence.rank()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "wrong number of indices");
        idx.iter().fold(0, |acc, &i| {
            assert!(
                i < self.dim,
                "index {i} out of range for dimension {}",
                self.dim
            );
            acc * self.dim + i
        })
    }

    fn unflatten(&self, mut slot: usize, idx: &mut [usize]) {
        for pos in (0..idx.len()).rev() {
            idx[pos] = slot % self.dim;
            slot /= self.dim;
        }
    }

    pub fn get(&self, idx: &[usize]) -> &Poly {
        &self.components[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Poly) {
        let slot = self.flatten(idx);
        self.components[slot] = value;
    }

    /// All `(index, component)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Poly)> + '_ {
        self.components.iter().enumerate().map(move |(slot, p)| {
            let mut idx = vec![0; self.rank()];
            self.unflatten(slot, &mut idx);
            (idx, p)
        })
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Poly)> + '_ {
        self.iter().filter(|(_, p)| !p.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Tensor {
        Tensor {
            valence: self.valence,
            dim: self.dim,
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, at: &Assignment) -> Tensor {
        self.map(|p| p.substitute(at))
    }

    /// Componentwise difference; shapes must agree.
    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(Tensor {
            valence: self.valence,
            dim: self.dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.valence != other.valence {
            return Err(Error::Valence {
                upper: other.valence.upper,
                lower: other.valence.lower,
                operation: "componentwise comparison",
            });
        }
        Ok(())
    }
}

/// 1-based rendering of an index tuple, e.g. `[0, 1, 1, 0]` as `1221`.
pub fn index_label(idx: &[usize]) -> String {
    if idx.iter().all(|&i| i < 9) {
        idx.iter().map(|i| (i + 1).to_string()).collect()
    } else {
        idx.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    (0..dim)
        .map(|k| if k == i { Poly::one() } else { Poly::zero() })
        .collect()
}

pub fn zero_vector(dim: usize) -> Vector {
    vec![Poly::zero(); dim]
}

pub fn vec_add(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Poly], c: &Poly) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Poly]) -> bool {
    a.iter().all(Poly::is_zero)
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| basis_vector(n, i)).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Poly]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &Matrix) -> Poly {
    match m.len() {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let term = &m[0][j] * &determinant(&minor(m, 0, j));
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn minor(m: &Matrix, row: usize, col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Classical adjugate: `adj(m)[i][j]` is the `(j, i)` cofactor.
pub fn adjugate(m: &Matrix) -> Matrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![Poly::one()]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = determinant(&minor(m, j, i));
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let t = Tensor::from_fn(Valence::covariant(3), 4, |idx| {
            Poly::int((idx[0] * 100 + idx[1] * 10 + idx[2]) as i64)
        });
        assert_eq!(t.len(), 64);
        assert_eq!(t.get(&[3, 1, 2]), &Poly::int(312));
        for (idx, p) in t.iter() {
            assert_eq!(t.get(&idx), p);
        }
    }

    #[test]
    fn labels_are_one_based() {
        assert_eq!(index_label(&[0, 1, 1, 0]), "1221");
    }

    #[test]
    fn determinant_and_adjugate() {
        let m: Matrix = vec![
            vec![Poly::int(2), Poly::int(1), Poly::zero()],
            vec![Poly::int(1), Poly::int(3), Poly::int(1)],
            vec![Poly::zero(), Poly::int(1), Poly::int(4)],
        ];
        let det = determinant(&m);
        assert_eq!(det, Poly::int(18));
        let prod = mat_mul(&m, &adjugate(&m));
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x, &if i == j { det.clone() } else { Poly::zero() });
            }
        }
    }
}
