//! Everything computable from a Lie algebra, a metric and an optional
//! product structure, gathered in one pass.

use crate::algebra::{killing_check, LieAlgebra, Metric};
use crate::error::Result;
use crate::geometry::{
    covariant_derivative, curvature, curvature_killing_shortcut, levi_civita, lower_index, ricci,
    scalar_curvature, sectional_curvature, square_norm, weyl, Connection, Plane,
    SectionalCurvature,
};
use crate::poly::Poly;
use crate::product::{
    classify, f_tensor, nabla_p, nijenhuis, nijenhuis_complex_form, nijenhuis_from_nabla_p,
    plane_type, ClassVerdict, PlaneType, ProductStructure,
};
use crate::tensor::Tensor;

/// Sectional curvature of the basic plane `span(X_i, X_j)`, `i < j`, 0-based.
#[derive(Clone, Debug)]
pub struct BasicPlane {
    pub i: usize,
    pub j: usize,
    pub curvature: Result<SectionalCurvature, String>,
    pub plane_type: Option<PlaneType>,
}

#[derive(Clone, Debug)]
pub struct ProductAnalysis {
    pub nabla_p: Tensor,
    pub f: Tensor,
    pub class: ClassVerdict,
    pub nijenhuis: Tensor,
    pub norm_n: Poly,
    /// ‖N‖² with `N` rebuilt from `∇P`, lowered to (0,3) and contracted.
    pub norm_n_via_nabla_p: Poly,
    /// ‖N‖² of the almost-complex style combination.
    pub norm_n_complex_form: Poly,
    pub norm_nabla_p: Poly,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub connection: Connection,
    pub curvature: Tensor,
    /// `−¼ g([X_i,X_j],[X_k,X_s])`, present only for Killing metrics.
    pub curvature_closed_form: Option<Tensor>,
    pub ricci: Tensor,
    pub scalar: Poly,
    /// `None` when the dimension is outside the Weyl formula's range.
    pub weyl: Option<Tensor>,
    pub nabla_curvature: Tensor,
    pub planes: Vec<BasicPlane>,
    pub product: Option<ProductAnalysis>,
}

impl Analysis {
    pub fn compute(
        alg: &LieAlgebra,
        metric: &Metric,
        structure: Option<&ProductStructure>,
    ) -> Result<Analysis> {
        let connection = levi_civita(alg, metric)?;
        let curv = curvature(&connection, alg, metric)?;
        let curvature_closed_form = if killing_check(alg, metric)?.passed() {
            Some(curvature_killing_shortcut(alg, metric)?)
        } else {
            None
        };
        let rho = ricci(&curv, metric)?;
        let tau = scalar_curvature(&rho, metric)?;
        let weyl = weyl(&curv, &rho, &tau, metric).ok();
        let nabla_curvature = covariant_derivative(&connection, &curv)?;

        let n = alg.dim();
        let mut planes = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let plane = Plane::basic(n, i, j);
                planes.push(BasicPlane {
                    i,
                    j,
                    curvature: sectional_curvature(&curv, metric, &plane)
                        .map_err(|e| e.to_string()),
                    plane_type: structure
                        .map(|p| plane_type(p, metric, &plane))
                        .transpose()?,
                });
            }
        }

        let product = structure
            .map(|p| -> Result<ProductAnalysis> {
                let np = nabla_p(&connection, p)?;
                let f = f_tensor(&np, metric)?;
                let n_tensor = nijenhuis(alg, p)?;
                let n_alt = nijenhuis_from_nabla_p(&np, p)?;
                let n_alt_lowered = lower_index(&n_alt, metric)?;
                Ok(ProductAnalysis {
                    class: classify(&f),
                    norm_n: square_norm(&n_tensor, metric)?,
                    norm_n_via_nabla_p: square_norm(&n_alt_lowered, metric)?,
                    norm_n_complex_form: square_norm(&nijenhuis_complex_form(alg, p)?, metric)?,
                    norm_nabla_p: square_norm(&np, metric)?,
                    nabla_p: np,
                    f,
                    nijenhuis: n_tensor,
                })
            })
            .transpose()?;

        Ok(Analysis {
            connection,
            curvature: curv,
            curvature_closed_form,
            ricci: rho,
            scalar: tau,
            weyl,
            nabla_curvature,
            planes,
            product,
        })
    }

    pub fn plane(&self, i: usize, j: usize) -> Option<&BasicPlane> {
        self.planes.iter().find(|p| p.i == i && p.j == j)
    }

    /// Sectional curvature of a basic plane as a polynomial, when its
    /// denominator is constant.
    pub fn sectional_poly(&self, i: usize, j: usize) -> Option<Poly> {
        self.plane(i, j)?.curvature.as_ref().ok()?.as_poly()
    }
}
