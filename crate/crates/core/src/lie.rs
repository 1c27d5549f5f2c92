//! Lie algebras given by structure constants, Lie pairs and representations.
//!
//! A Lie algebroid over a point is a Lie algebra whose anchor is the zero map, so
//! the Leibniz rule holds trivially. [`ZeroAnchor`] records that fact in the data model.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{axpy, combine, quotient_chart, unit_vec, zero_vec, Matrix, QuotientChart, Scalar, Subspace};

/// The anchor of a Lie algebroid over a point: identically zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZeroAnchor;

impl ZeroAnchor {
    /// Over a point the Leibniz rule `[x, f y] = f [x, y] + rho(x)(f) y` has `rho = 0`
    /// and constant `f`, so it is satisfied by any bilinear bracket.
    pub fn leibniz_vacuous(&self) -> bool {
        true
    }
}

/// `c[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
pub type StructureConstants = Vec<Vec<Vec<Scalar>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    consts: StructureConstants,
    anchor: ZeroAnchor,
}

/// Violations found by [`LieAlgebra::validate`]. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieValidation {
    pub antisymmetry: Vec<(usize, usize)>,
    pub jacobi: Vec<(usize, usize, usize)>,
}

impl LieValidation {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

impl LieAlgebra {
    /// Wraps a table of shape `dim x dim x dim`. Only the shape is checked;
    /// call [`validate`](Self::validate) for the algebraic identities.
    pub fn from_structure_constants(consts: StructureConstants) -> Result<Self> {
        let dim = consts.len();
        for (i, row) in consts.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::Dimension(format!(
                        "bracket ({i}, {j}) has {} coefficients, expected {dim}",
                        v.len()
                    )));
                }
            }
        }
        Ok(LieAlgebra {
            dim,
            consts,
            anchor: ZeroAnchor,
        })
    }

    /// Builds from sparse entries `(i, j, k, c)` meaning `[e_i, e_j]` has `c` at `e_k`.
    /// Each entry also sets `[e_j, e_i]` to `-c` at `e_k`. Repeated entries must agree.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut consts = vec![vec![zero_vec(dim); dim]; dim];
        let mut set = vec![vec![vec![false; dim]; dim]; dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
                continue;
            }
            for (p, q, val) in [(i, j, c.clone()), (j, i, -c.clone())] {
                if set[p][q][k] && consts[p][q][k] != val {
                    return Err(Error::NotAntisymmetric(p, q));
                }
                set[p][q][k] = true;
                consts[p][q][k] = val;
            }
        }
        Self::from_structure_constants(consts)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            consts: vec![vec![zero_vec(dim); dim]; dim],
            anchor: ZeroAnchor,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn anchor(&self) -> ZeroAnchor {
        self.anchor
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.consts
    }

    /// `[e_i, e_j]`
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.consts[i][j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim, "bracket argument outside the algebra");
        assert_eq!(y.len(), self.dim, "bracket argument outside the algebra");
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.consts[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad_x = [x, .]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.bracket(x, &unit_vec(self.dim, j))).collect();
        Matrix::from_cols(&cols, self.dim).expect("bracket has algebra dimension")
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn validate(&self) -> LieValidation {
        let n = self.dim;
        let mut report = LieValidation::default();
        for i in 0..n {
            for j in i..n {
                let sum: Vec<Scalar> = self.consts[i][j]
                    .iter()
                    .zip(&self.consts[j][i])
                    .map(|(a, b)| a + b)
                    .collect();
                if sum.iter().any(|x| !x.is_zero()) {
                    report.antisymmetry.push((i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobiator(i, j, k).iter().all(Zero::is_zero) {
                        report.jacobi.push((i, j, k));
                    }
                }
            }
        }
        report
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let e = |t| unit_vec(self.dim, t);
        let mut out = self.bracket(&self.consts[i][j], &e(k));
        let t2 = self.bracket(&self.consts[j][k], &e(i));
        let t3 = self.bracket(&self.consts[k][i], &e(j));
        for t in 0..self.dim {
            out[t] = &out[t] + &t2[t] + &t3[t];
        }
        out
    }

    /// Errors with the first violation, if any.
    pub fn check(&self) -> Result<()> {
        let report = self.validate();
        if let Some(&(i, j)) = report.antisymmetry.first() {
            return Err(Error::NotAntisymmetric(i, j));
        }
        if let Some(&(i, j, k)) = report.jacobi.first() {
            return Err(Error::JacobiFails(i, j, k));
        }
        Ok(())
    }

    /// Returns a pair of basis indices whose bracket leaves `sub`, if any.
    pub fn subalgebra_witness(&self, sub: &Subspace) -> Option<(usize, usize)> {
        let basis = sub.basis_vectors();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate().skip(i + 1) {
                if !sub.contains(&self.bracket(x, y)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Structure constants of the subalgebra spanned by `sub`, in its stored basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<LieAlgebra> {
        let basis = sub.basis_vectors();
        let d = basis.len();
        let mut consts = vec![vec![zero_vec(d); d]; d];
        for i in 0..d {
            for j in 0..d {
                consts[i][j] = sub
                    .coordinates(&self.bracket(&basis[i], &basis[j]))
                    .ok_or(Error::NotSubalgebra(i, j))?;
            }
        }
        LieAlgebra::from_structure_constants(consts)
    }

    /// Same algebra written in the basis given by the columns of `t`.
    pub fn change_basis(&self, t: &Matrix) -> Result<LieAlgebra> {
        if t.shape() != (self.dim, self.dim) {
            return Err(Error::Dimension(format!("basis change of shape {:?}", t.shape())));
        }
        let inv = t.inverse().ok_or(Error::NotIndependent)?;
        let cols = t.columns();
        let consts = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| inv.mul_vec(&self.bracket(&cols[i], &cols[j])))
                    .collect()
            })
            .collect();
        LieAlgebra::from_structure_constants(consts)
    }

    /// First basis pair `(i, j)` where the linear map `f: self -> target` fails to preserve brackets.
    pub fn morphism_witness(&self, target: &LieAlgebra, f: &Matrix) -> Option<(usize, usize)> {
        assert_eq!(f.shape(), (target.dim, self.dim), "morphism shape mismatch");
        let cols = f.columns();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if f.mul_vec(&self.consts[i][j]) != target.bracket(&cols[i], &cols[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// A linear action of a Lie algebra on `K^module_dim`, one matrix per basis vector.
/// Flatness is checked by [`flatness_violations`](Self::flatness_violations) or enforced by
/// [`new_flat`](Self::new_flat).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlgebra,
    module_dim: usize,
    action: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: LieAlgebra, module_dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if let Some(m) = action.iter().find(|m| m.shape() != (module_dim, module_dim)) {
            return Err(Error::Dimension(format!(
                "action matrix of shape {:?} on a module of dimension {module_dim}",
                m.shape()
            )));
        }
        Ok(Representation {
            algebra,
            module_dim,
            action,
        })
    }

    pub fn new_flat(algebra: LieAlgebra, module_dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let rep = Self::new(algebra, module_dim, action)?;
        if let Some(&(i, j)) = rep.flatness_violations().first() {
            return Err(Error::NotFlat(i, j));
        }
        Ok(rep)
    }

    pub fn trivial(algebra: LieAlgebra, module_dim: usize) -> Self {
        let action = vec![Matrix::zeros(module_dim, module_dim); algebra.dim()];
        Representation {
            algebra,
            module_dim,
            action,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Action of the basis vector `e_i`.
    pub fn basis_action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        combine(x, &self.action, (self.module_dim, self.module_dim))
    }

    /// Basis pairs `(i, j)`, `i < j`, where `act([e_i,e_j]) != [act(e_i), act(e_j)]`.
    pub fn flatness_violations(&self) -> Vec<(usize, usize)> {
        let n = self.algebra.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.act(self.algebra.basis_bracket(i, j));
                if lhs != self.action[i].commutator(&self.action[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_flat(&self) -> bool {
        self.flatness_violations().is_empty()
    }
}

/// A Lie algebra `L` with a subalgebra `A` and a chosen splitting of `0 -> A -> L -> B -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePair {
    l: LieAlgebra,
    a: LieAlgebra,
    inclusion_a: Matrix,
    chart: QuotientChart,
    pr_a: Matrix,
}

impl LiePair {
    /// `inclusion_a` is `dim L x dim A`; its columns span `A`.
    pub fn new(l: LieAlgebra, inclusion_a: Matrix) -> Result<Self> {
        if inclusion_a.rows() != l.dim() {
            return Err(Error::Dimension(format!(
                "inclusion with {} rows into an algebra of dimension {}",
                inclusion_a.rows(),
                l.dim()
            )));
        }
        let sub = Subspace::from_basis_matrix(inclusion_a.clone())?;
        if let Some((i, j)) = l.subalgebra_witness(&sub) {
            return Err(Error::NotSubalgebra(i, j));
        }
        let a = l.restrict(&sub)?;
        let chart = quotient_chart(l.dim(), &sub)?;
        let pr_a = chart.retraction();
        Ok(LiePair {
            l,
            a,
            inclusion_a,
            chart,
            pr_a,
        })
    }

    /// Same pair with `i_B` replaced. Requires `pr_B * i_B' = id`.
    pub fn with_splitting(&self, i_b: Matrix) -> Result<Self> {
        let chart = self.chart.with_section(i_b.clone())?;
        if chart.projection() != self.chart.projection() {
            return Err(Error::NotASplitting);
        }
        let pr_a = chart.retraction();
        Ok(LiePair {
            chart,
            pr_a,
            ..self.clone()
        })
    }

    pub fn l(&self) -> &LieAlgebra {
        &self.l
    }

    /// `A` with the structure constants induced through `i_A`.
    pub fn a(&self) -> &LieAlgebra {
        &self.a
    }

    pub fn dim_l(&self) -> usize {
        self.l.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.inclusion_a.cols()
    }

    pub fn dim_b(&self) -> usize {
        self.chart.quotient_dim()
    }

    pub fn i_a(&self) -> &Matrix {
        &self.inclusion_a
    }

    pub fn i_b(&self) -> &Matrix {
        self.chart.section()
    }

    pub fn pr_a(&self) -> &Matrix {
        &self.pr_a
    }

    pub fn pr_b(&self) -> &Matrix {
        self.chart.projection()
    }

    pub fn chart(&self) -> &QuotientChart {
        &self.chart
    }

    /// `D_a b = pr_B [i_A a, i_B b]` for basis vectors.
    fn bott_matrix(&self, i: usize) -> Matrix {
        let a = self.inclusion_a.col(i);
        let cols: Vec<Vec<Scalar>> = self
            .i_b()
            .columns()
            .iter()
            .map(|b| self.pr_b().mul_vec(&self.l.bracket(&a, b)))
            .collect();
        Matrix::from_cols(&cols, self.dim_b()).expect("projection lands in B")
    }

    /// The flat Bott representation of `A` on `B = L/A`.
    pub fn bott_connection(&self) -> Result<Representation> {
        let action = (0..self.dim_a()).map(|i| self.bott_matrix(i)).collect();
        let rep = Representation::new(self.a.clone(), self.dim_b(), action)?;
        if let Some(&(i, j)) = rep.flatness_violations().first() {
            return Err(Error::Internal(format!("Bott connection not flat at ({i}, {j})")));
        }
        Ok(rep)
    }

    /// `eth_b a = pr_A [i_B b, i_A a]`
    pub fn eth(&self, b: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let ib = self.i_b().mul_vec(b);
        let ia = self.inclusion_a.mul_vec(a);
        self.pr_a.mul_vec(&self.l.bracket(&ib, &ia))
    }

    /// Basis pairs `(a, b)` where `[i_A a, i_B b] != i_B(D_a b) - i_A(eth_b a)`.
    pub fn bracket_decomposition_check(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim_a() {
            let d = self.bott_matrix(i);
            for j in 0..self.dim_b() {
                let lhs = self.l.bracket(&self.inclusion_a.col(i), &self.i_b().col(j));
                let db = self.i_b().mul_vec(&d.col(j));
                let eth = self
                    .inclusion_a
                    .mul_vec(&self.eth(&unit_vec(self.dim_b(), j), &unit_vec(self.dim_a(), i)));
                let rhs: Vec<Scalar> = db.iter().zip(&eth).map(|(x, y)| x - y).collect();
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The map `I: B -> A` with `i_B' = i_B + i_A I`.
    pub fn splitting_difference(&self, alternative_i_b: &Matrix) -> Result<Matrix> {
        if alternative_i_b.shape() != self.i_b().shape() {
            return Err(Error::Dimension(format!(
                "splitting of shape {:?}, expected {:?}",
                alternative_i_b.shape(),
                self.i_b().shape()
            )));
        }
        if (self.pr_b() * alternative_i_b) != Matrix::identity(self.dim_b()) {
            return Err(Error::NotASplitting);
        }
        let diff = alternative_i_b - self.i_b();
        let i = &self.pr_a * &diff;
        if &self.inclusion_a * &i != diff {
            return Err(Error::Internal("splitting difference does not factor through A".into()));
        }
        Ok(i)
    }

    /// Whether `i_B(B)` is itself a subalgebra, i.e. `L` is a matched sum of `A` and `B`.
    pub fn complement_is_subalgebra(&self) -> bool {
        match Subspace::from_basis_matrix(self.i_b().clone()) {
            Ok(sub) => self.l.subalgebra_witness(&sub).is_none(),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sl2, two_dim};
    use crate::linalg::{int, Matrix};

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn borel() -> Matrix {
        Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]])
    }

    #[test]
    fn abelian_is_valid() {
        assert!(LieAlgebra::abelian(4).validate().is_valid());
    }

    #[test]
    fn sl2_is_valid() {
        let g = sl2();
        assert!(g.validate().is_valid());
        assert_eq!(g.basis_bracket(0, 1), v(&[0, 2, 0]).as_slice());
        assert_eq!(g.basis_bracket(2, 1), v(&[-1, 0, 0]).as_slice());
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let mut c = sl2().structure_constants().clone();
        c[0][1][1] = int(3);
        let g = LieAlgebra::from_structure_constants(c).unwrap();
        assert!(g.validate().antisymmetry.contains(&(0, 1)));
    }

    #[test]
    fn conflicting_entries_rejected() {
        let e = [(0, 1, 1, int(1)), (1, 0, 1, int(1))];
        assert!(matches!(
            LieAlgebra::from_brackets(2, &e),
            Err(Error::NotAntisymmetric(1, 0))
        ));
        let e = [(0, 1, 1, int(1)), (1, 0, 1, int(-1))];
        assert!(LieAlgebra::from_brackets(2, &e).is_ok());
    }

    #[test]
    fn borel_pair() {
        let p = LiePair::new(sl2(), borel()).unwrap();
        assert_eq!(p.dim_b(), 1);
        assert_eq!(p.i_b(), &Matrix::from_i64(&[&[0], &[0], &[1]]));
        let sum = &(p.i_a() * p.pr_a()) + &(p.i_b() * p.pr_b());
        assert_eq!(sum, Matrix::identity(3));
    }

    #[test]
    fn non_subalgebra_rejected() {
        let span_ef = Matrix::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(LiePair::new(sl2(), span_ef), Err(Error::NotSubalgebra(0, 1))));
    }

    #[test]
    fn full_pair() {
        let p = LiePair::new(sl2(), Matrix::identity(3)).unwrap();
        assert_eq!(p.dim_b(), 0);
        let d = p.bott_connection().unwrap();
        assert!(d.action().iter().all(|m| m.shape() == (0, 0)));
    }

    #[test]
    fn borel_bott() {
        let p = LiePair::new(sl2(), borel()).unwrap();
        let d = p.bott_connection().unwrap();
        assert_eq!(d.basis_action(0), &Matrix::from_i64(&[&[-2]]));
        assert_eq!(d.basis_action(1), &Matrix::from_i64(&[&[0]]));
    }

    #[test]
    fn abelian_bott_is_zero() {
        let p = LiePair::new(LieAlgebra::abelian(3), Matrix::from_i64(&[&[1], &[1], &[0]])).unwrap();
        assert!(p.bott_connection().unwrap().action().iter().all(Matrix::is_zero));
        assert_eq!(p.eth(&v(&[1, 0]), &v(&[1])), v(&[0]));
    }

    #[test]
    fn borel_eth() {
        let p = LiePair::new(sl2(), borel()).unwrap();
        assert_eq!(p.eth(&v(&[1]), &v(&[1, 0])), v(&[0, 0]));
        // eth_f e = pr_A([f, e]) = -h
        assert_eq!(p.eth(&v(&[1]), &v(&[0, 1])), v(&[-1, 0]));
    }

    #[test]
    fn decomposition_holds() {
        for p in [
            LiePair::new(sl2(), borel()).unwrap(),
            LiePair::new(sl2(), Matrix::identity(3)).unwrap(),
            LiePair::new(two_dim(), Matrix::from_i64(&[&[0], &[1]])).unwrap(),
        ] {
            assert!(p.bracket_decomposition_check().is_empty());
        }
    }

    #[test]
    fn splitting_difference_borel() {
        let p = LiePair::new(sl2(), borel()).unwrap();
        assert!(p.splitting_difference(p.i_b()).unwrap().is_zero());
        let alt = Matrix::from_i64(&[&[1], &[0], &[1]]);
        assert_eq!(p.splitting_difference(&alt).unwrap(), Matrix::from_i64(&[&[1], &[0]]));
        let bad = Matrix::from_i64(&[&[1], &[0], &[0]]);
        assert!(matches!(p.splitting_difference(&bad), Err(Error::NotASplitting)));
    }

    #[test]
    fn other_splitting_keeps_bott() {
        let p = LiePair::new(sl2(), borel()).unwrap();
        let q = p.with_splitting(Matrix::from_i64(&[&[1], &[-1], &[1]])).unwrap();
        assert_eq!(p.bott_connection().unwrap(), q.bott_connection().unwrap());
        assert!(q.bracket_decomposition_check().is_empty());
    }

    #[test]
    fn sl2_standard_is_flat() {
        let rep = crate::fixtures::sl2_standard();
        assert!(rep.is_flat());
        let skew = Representation::new(sl2(), 2, vec![Matrix::identity(2); 3]).unwrap();
        assert!(!skew.is_flat());
    }

    #[test]
    fn morphism_detection() {
        let g = sl2();
        assert!(g.morphism_witness(&g, &Matrix::identity(3)).is_none());
        assert!(g.morphism_witness(&g, &Matrix::identity(3).scale(&int(2))).is_some());
    }
}
