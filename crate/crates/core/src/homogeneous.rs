//! Invariant connections on homogeneous bundles through equivariant linear maps
//! `φ: g -> k` with `φ|_h = dφ`.
//!
//! Equivariance is imposed infinitesimally: `φ([Y, X]) = [dφ(Y), φ(X)]` for `Y ∈ h`.
//! This agrees with the group-level condition when the isotropy group is connected,
//! which every result records through `connected_isotropy_assumed`.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{
    affine_parts, is_zero_vec, matrix_of_linear_map, solve_affine, unflatten_rect, vec_sub, AffineSolutionSet, Matrix,
    Scalar, Subspace,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangProblem {
    g: LieAlgebra,
    h: LieAlgebra,
    inclusion_h: Matrix,
    k: LieAlgebra,
    dphi: Matrix,
}

impl WangProblem {
    /// `inclusion_h` is `dim g x dim h`; `dphi` is `dim k x dim h` and must be a Lie morphism.
    pub fn new(g: LieAlgebra, inclusion_h: Matrix, k: LieAlgebra, dphi: Matrix) -> Result<Self> {
        if inclusion_h.rows() != g.dim() {
            return Err(Error::Dimension(format!(
                "inclusion with {} rows into an algebra of dimension {}",
                inclusion_h.rows(),
                g.dim()
            )));
        }
        let sub = Subspace::from_basis_matrix(inclusion_h.clone())?;
        if let Some((i, j)) = g.subalgebra_witness(&sub) {
            return Err(Error::NotSubalgebra(i, j));
        }
        let h = g.restrict(&sub)?;
        if dphi.shape() != (k.dim(), h.dim()) {
            return Err(Error::Dimension(format!(
                "isotropy map of shape {:?}, expected {:?}",
                dphi.shape(),
                (k.dim(), h.dim())
            )));
        }
        if let Some((i, j)) = h.morphism_witness(&k, &dphi) {
            return Err(Error::NotMorphism(format!("dphi fails on basis pair ({i}, {j}) of h")));
        }
        Ok(WangProblem {
            g,
            h,
            inclusion_h,
            k,
            dphi,
        })
    }

    /// The problem `(g, h, h, id)` whose solutions are the invariant complements of `h`.
    pub fn reductive(g: LieAlgebra, inclusion_h: Matrix) -> Result<Self> {
        let d = inclusion_h.cols();
        let sub = Subspace::from_basis_matrix(inclusion_h.clone())?;
        if let Some((i, j)) = g.subalgebra_witness(&sub) {
            return Err(Error::NotSubalgebra(i, j));
        }
        let h = g.restrict(&sub)?;
        Self::new(g, inclusion_h, h, Matrix::identity(d))
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn h(&self) -> &LieAlgebra {
        &self.h
    }

    pub fn k(&self) -> &LieAlgebra {
        &self.k
    }

    pub fn inclusion_h(&self) -> &Matrix {
        &self.inclusion_h
    }

    pub fn dphi(&self) -> &Matrix {
        &self.dphi
    }

    fn unknowns(&self) -> usize {
        self.k.dim() * self.g.dim()
    }

    /// Both constraint families evaluated at `φ`: `φ i_h - dφ`, then
    /// `φ([Y, X]) - [dφ Y, φ X]` for each `h`-basis `Y` and `g`-basis `X`.
    pub fn residual(&self, phi: &Matrix) -> Vec<Scalar> {
        let mut out = flatten_rect(&(&(phi * &self.inclusion_h) - &self.dphi));
        let ng = self.g.dim();
        for y in self.inclusion_h.columns().iter().zip(self.dphi.columns()) {
            let (iy, dy) = y;
            for x in 0..ng {
                let xv = crate::linalg::unit_vec(ng, x);
                let lhs = phi.mul_vec(&self.g.bracket(iy, &xv));
                let rhs = self.k.bracket(&dy, &phi.mul_vec(&xv));
                out.extend(vec_sub(&lhs, &rhs));
            }
        }
        out
    }

    pub fn is_solution(&self, phi: &Matrix) -> bool {
        phi.shape() == (self.k.dim(), self.g.dim()) && is_zero_vec(&self.residual(phi))
    }
}

fn flatten_rect(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Solutions `φ` as row-major `dim k x dim g` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangSolution {
    pub set: AffineSolutionSet,
    pub rows: usize,
    pub cols: usize,
    pub connected_isotropy_assumed: bool,
}

impl WangSolution {
    pub fn particular(&self) -> Option<Matrix> {
        self.set.particular().map(|p| unflatten_rect(self.rows, self.cols, p))
    }

    pub fn homogeneous_basis(&self) -> Vec<Matrix> {
        self.set
            .homogeneous()
            .basis_vectors()
            .iter()
            .map(|v| unflatten_rect(self.rows, self.cols, v))
            .collect()
    }

    pub fn contains(&self, phi: &Matrix) -> bool {
        let Some(p) = self.set.particular() else {
            return false;
        };
        phi.shape() == (self.rows, self.cols) && self.set.homogeneous().contains(&vec_sub(&flatten_rect(phi), p))
    }
}

pub fn wang_solve(p: &WangProblem) -> Result<WangSolution> {
    let n = p.unknowns();
    let (rows, cols) = (p.k.dim(), p.g.dim());
    let equations = p.residual(&Matrix::zeros(rows, cols)).len();
    let (lin, constant) = affine_parts(n, equations, |x| p.residual(&unflatten_rect(rows, cols, x)));
    let rhs: Vec<Scalar> = constant.iter().map(|x| -x).collect();
    let set = solve_affine(&lin, &rhs)?;
    for s in set.sample_elements() {
        if !p.is_solution(&unflatten_rect(rows, cols, &s)) {
            return Err(Error::Internal(
                "solver returned a map violating the constraints".into(),
            ));
        }
    }
    Ok(WangSolution {
        set,
        rows,
        cols,
        connected_isotropy_assumed: true,
    })
}

#[derive(Clone, Debug)]
pub struct ReductiveResult {
    pub solution: WangSolution,
    /// `m = ker φ_0` for the particular solution `φ_0`, when one exists.
    pub complement: Option<Subspace>,
}

impl ReductiveResult {
    pub fn is_reductive(&self) -> bool {
        self.complement.is_some()
    }
}

pub fn reductive_test(g: &LieAlgebra, inclusion_h: &Matrix) -> Result<ReductiveResult> {
    let p = WangProblem::reductive(g.clone(), inclusion_h.clone())?;
    let solution = wang_solve(&p)?;
    let complement = match solution.particular() {
        None => None,
        Some(phi0) => {
            let m = phi0.kernel();
            let sum = inclusion_h.hstack(m.basis());
            if sum.rank() != g.dim() {
                return Err(Error::Internal("kernel of the projection is not a complement".into()));
            }
            for y in inclusion_h.columns() {
                for x in m.basis_vectors() {
                    if !m.contains(&g.bracket(&y, &x)) {
                        return Err(Error::Internal("complement is not h-invariant".into()));
                    }
                }
            }
            Some(m)
        }
    };
    Ok(ReductiveResult { solution, complement })
}

/// `dφ ∘ φ_0` for a solution `φ_0` of the reductive problem of `(g, h)`.
pub fn canonical_connection(p: &WangProblem, phi0: &Matrix) -> Result<Matrix> {
    let base = WangProblem::reductive(p.g.clone(), p.inclusion_h.clone())?;
    if !base.is_solution(phi0) {
        return Err(Error::NotMorphism("phi0 does not solve the reductive problem".into()));
    }
    let phi = &p.dphi * phi0;
    if !wang_solve(p)?.contains(&phi) {
        return Err(Error::Internal(
            "canonical connection is not an invariant connection".into(),
        ));
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangDimensionCheck {
    pub reductive: bool,
    pub wang_dim: Option<usize>,
    /// Dimension of the `h`-equivariant linear maps `m -> k`.
    pub equivariant_hom_dim: Option<usize>,
    pub connected_isotropy_assumed: bool,
}

impl WangDimensionCheck {
    pub fn holds(&self) -> bool {
        self.reductive && self.wang_dim.is_some() && self.wang_dim == self.equivariant_hom_dim
    }
}

/// Compares the solution dimension with that of `Hom_h(m, k)` for a reductive complement `m`.
pub fn wang_dimension_check(p: &WangProblem) -> Result<WangDimensionCheck> {
    let red = reductive_test(&p.g, &p.inclusion_h)?;
    let Some(m) = red.complement else {
        return Ok(WangDimensionCheck {
            reductive: false,
            wang_dim: None,
            equivariant_hom_dim: None,
            connected_isotropy_assumed: true,
        });
    };
    let sol = wang_solve(p)?;
    let wang_dim = (!sol.set.is_empty()).then(|| sol.set.dim());
    let (nk, dm) = (p.k.dim(), m.dim());
    let m_basis = m.basis_vectors();
    let hom = matrix_of_linear_map(nk * dm, p.h.dim() * dm * nk, |v| {
        let psi = unflatten_rect(nk, dm, v);
        let mut out = Vec::new();
        for (iy, dy) in p.inclusion_h.columns().iter().zip(p.dphi.columns()) {
            for x in &m_basis {
                let coords = m.coordinates(&p.g.bracket(iy, x)).expect("complement is h-invariant");
                let lhs = psi.mul_vec(&coords);
                let rhs =
                    p.k.bracket(&dy, &psi.mul_vec(&m.coordinates(x).expect("basis vector of m")));
                out.extend(vec_sub(&lhs, &rhs));
            }
        }
        out
    });
    Ok(WangDimensionCheck {
        reductive: true,
        wang_dim,
        equivariant_hom_dim: Some(hom.kernel().dim()),
        connected_isotropy_assumed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{borel_inclusion, rotation, sl2};
    use crate::linalg::int;

    fn e3() -> Matrix {
        Matrix::from_i64(&[&[0], &[0], &[1]])
    }

    #[test]
    fn full_subalgebra_gives_dphi() {
        let g = sl2();
        let p = WangProblem::new(g.clone(), Matrix::identity(3), g, Matrix::identity(3)).unwrap();
        let s = wang_solve(&p).unwrap();
        assert_eq!(s.set.dim(), 0);
        assert_eq!(s.particular().unwrap(), Matrix::identity(3));
        let check = wang_dimension_check(&p).unwrap();
        assert!(check.holds());
        assert_eq!(check.wang_dim, Some(0));
    }

    #[test]
    fn rotation_unique() {
        let p = WangProblem::reductive(rotation(), e3()).unwrap();
        let s = wang_solve(&p).unwrap();
        assert_eq!(s.set.dim(), 0);
        assert_eq!(s.particular().unwrap(), Matrix::from_i64(&[&[0, 0, 1]]));
        let r = reductive_test(&rotation(), &e3()).unwrap();
        let m = r.complement.unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.contains(&[int(1), int(0), int(0)]) && m.contains(&[int(0), int(1), int(0)]));
        let canonical = canonical_connection(&p, &s.particular().unwrap()).unwrap();
        assert_eq!(canonical, s.particular().unwrap());
    }

    #[test]
    fn borel_not_reductive() {
        let r = reductive_test(&sl2(), &borel_inclusion()).unwrap();
        assert!(!r.is_reductive());
        assert!(r.solution.set.is_empty());
        let p = WangProblem::reductive(sl2(), borel_inclusion()).unwrap();
        assert!(!wang_dimension_check(&p).unwrap().reductive);
    }

    #[test]
    fn rotation_into_itself() {
        let p = WangProblem::new(rotation(), e3(), rotation(), e3()).unwrap();
        let check = wang_dimension_check(&p).unwrap();
        assert!(check.holds());
        assert_eq!(check.wang_dim, Some(2));
    }

    #[test]
    fn abelian_zero_isotropy() {
        let g = LieAlgebra::abelian(3);
        let h = Matrix::from_i64(&[&[1], &[0], &[0]]);
        let p = WangProblem::new(g.clone(), h.clone(), LieAlgebra::abelian(2), Matrix::zeros(2, 1)).unwrap();
        let check = wang_dimension_check(&p).unwrap();
        assert!(check.holds());
        assert_eq!(check.wang_dim, Some(4));
        let phi0 = reductive_test(&g, &h).unwrap().solution.particular().unwrap();
        assert!(canonical_connection(&p, &phi0).unwrap().is_zero());
    }

    #[test]
    fn non_morphism_rejected() {
        let p = WangProblem::new(
            rotation(),
            Matrix::identity(3),
            rotation(),
            Matrix::identity(3).scale(&int(2)),
        );
        assert!(matches!(p, Err(Error::NotMorphism(_))));
    }
}
