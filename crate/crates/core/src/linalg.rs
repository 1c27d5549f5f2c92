//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational`; there is no tolerance anywhere.
//! Matrices are dense and row-major. Vectors are plain `Vec<Scalar>`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. A zero denominator is an error.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    t.parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("invalid rational {t:?}: {e}")))
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_cols(cols: &[Vec<Scalar>], rows: usize) -> Result<Self> {
        if let Some(bad) = cols.iter().find(|c| c.len() != rows) {
            return Err(Error::Dimension(format!(
                "column of length {} in a matrix with {rows} rows",
                bad.len()
            )));
        }
        Ok(Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone()))
    }

    /// Small integer matrices, mostly for fixtures and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |r, c| int(rows[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Reassembles a matrix from its row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = zero_vec(self.rows);
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                let a = &self[(r, c)];
                if !a.is_zero() && !x.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Matrix {
        Self::from_fn(end - start, self.cols, |r, c| self[(start + r, c)].clone())
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> Matrix {
        Self::from_fn(self.rows, end - start, |r, c| self[(r, start + c)].clone())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &factor * &m[(row, c)];
                    m[(r, c)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column of the RREF.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = unit_vec(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect();
        Subspace::from_independent(self.cols, basis)
    }

    /// Column space, spanned by the pivot columns of `self`.
    pub fn image(&self) -> Subspace {
        let (_, pivots) = self.rref();
        let basis = pivots.iter().map(|&c| self.col(c)).collect();
        Subspace::from_independent(self.rows, basis)
    }

    /// Exact inverse, if the matrix is square and non-singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.col_block(n, 2 * n))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Linear combination `Σ coeffs[i] * mats[i]`; `shape` is used when `mats` is empty.
pub fn combine(coeffs: &[Scalar], mats: &[Matrix], shape: (usize, usize)) -> Matrix {
    assert_eq!(coeffs.len(), mats.len(), "combination length mismatch");
    let mut out = Matrix::zeros(shape.0, shape.1);
    for (c, m) in coeffs.iter().zip(mats) {
        if c.is_zero() {
            continue;
        }
        assert_eq!(m.shape(), shape, "combination shape mismatch");
        for (o, x) in out.data.iter_mut().zip(&m.data) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// The elementary matrix unit `E_{pq}` of size `n`.
pub fn matrix_unit(n: usize, p: usize, q: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(p, q)] = Scalar::one();
    m
}

/// Row-major entries of a square matrix as a vector in `K^{m*m}`.
pub fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Inverse of [`flatten`] for an `m x m` matrix.
pub fn unflatten(m: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_row_major(m, m, v.to_vec()).expect("vector has m*m entries")
}

/// A `rows x cols` matrix from its row-major entries.
pub fn unflatten_rect(rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_row_major(rows, cols, v.to_vec()).expect("vector has rows*cols entries")
}

/// Matrix of `phi -> [a, phi]` acting on row-major flattened `m x m` matrices.
pub fn commutator_operator(a: &Matrix) -> Matrix {
    let m = a.rows();
    matrix_of_linear_map(m * m, m * m, |v| flatten(&a.commutator(&unflatten(m, v))))
}

/// Matrix of the linear map `f: K^n -> K^m`, obtained by evaluating on unit vectors.
pub fn matrix_of_linear_map(n: usize, m: usize, mut f: impl FnMut(&[Scalar]) -> Vec<Scalar>) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| f(&unit_vec(n, j))).collect();
    for c in &cols {
        assert_eq!(c.len(), m, "linear map returned a vector of the wrong length");
    }
    Matrix::from_cols(&cols, m).expect("column lengths checked")
}

/// Splits an affine map `x -> f(x)` into `(linear part, constant)`.
pub fn affine_parts(n: usize, m: usize, mut f: impl FnMut(&[Scalar]) -> Vec<Scalar>) -> (Matrix, Vec<Scalar>) {
    let constant = f(&zero_vec(n));
    assert_eq!(constant.len(), m, "affine map returned a vector of the wrong length");
    let lin = matrix_of_linear_map(n, m, |x| vec_sub(&f(x), &constant));
    (lin, constant)
}

/// A linear subspace of `K^ambient_dim`, stored through linearly independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Checks independence of the given vectors.
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = Matrix::from_cols(&basis, ambient_dim)?;
        if m.rank() != basis.len() {
            return Err(Error::NotIndependent);
        }
        Ok(Subspace { ambient_dim, basis: m })
    }

    /// Wraps a basis matrix whose columns are linearly independent.
    pub fn from_basis_matrix(basis: Matrix) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::NotIndependent);
        }
        Ok(Subspace {
            ambient_dim: basis.rows(),
            basis,
        })
    }

    /// Any spanning family; redundant vectors are dropped.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let m = Matrix::from_cols(vectors, ambient_dim)?;
        Ok(m.image())
    }

    fn from_independent(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Self {
        let m = Matrix::from_cols(&basis, ambient_dim).expect("basis vectors share one length");
        Subspace { ambient_dim, basis: m }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let set = solve_affine(&self.basis, v).ok()?;
        set.particular().map(<[Scalar]>::to_vec)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }
}

/// A chosen complement of a subspace, with projection onto quotient coordinates and a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientChart {
    subspace: Subspace,
    projection: Matrix,
    section: Matrix,
}

impl QuotientChart {
    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// ambient -> quotient
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// quotient -> ambient, with `projection * section = id`
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// Left inverse of the subspace basis whose kernel is the image of the section.
    pub fn retraction(&self) -> Matrix {
        let full = self.subspace.basis().hstack(&self.section);
        let inv = full.inverse().expect("subspace and section span the ambient space");
        inv.row_block(0, self.subspace.dim())
    }

    /// Same subspace, different section. The new section must satisfy `projection * section = id`.
    pub fn with_section(&self, section: Matrix) -> Result<Self> {
        let q = self.quotient_dim();
        if section.shape() != (self.ambient_dim(), q) {
            return Err(Error::Dimension(format!(
                "section of shape {:?}, expected {:?}",
                section.shape(),
                (self.ambient_dim(), q)
            )));
        }
        let full = self.subspace.basis().hstack(&section);
        let inv = full.inverse().ok_or(Error::NotASplitting)?;
        let projection = inv.row_block(self.subspace.dim(), self.ambient_dim());
        if &projection * &section != Matrix::identity(q) {
            return Err(Error::NotASplitting);
        }
        Ok(QuotientChart {
            subspace: self.subspace.clone(),
            projection,
            section,
        })
    }
}

/// Quotient of `K^ambient_dim` by `sub`, with the complement spanned by the
/// standard basis vectors at the non-pivot positions of the RREF of the subspace basis.
pub fn quotient_chart(ambient_dim: usize, sub: &Subspace) -> Result<QuotientChart> {
    if sub.ambient_dim() != ambient_dim {
        return Err(Error::Dimension(format!(
            "subspace of K^{} inside K^{ambient_dim}",
            sub.ambient_dim()
        )));
    }
    let (_, pivots) = sub.basis().transpose().rref();
    if pivots.len() != sub.dim() {
        return Err(Error::NotIndependent);
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let section = Matrix::from_fn(ambient_dim, free.len(), |r, c| {
        if r == free[c] {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let full = sub.basis().hstack(&section);
    let inv = full.inverse().expect("pivot complement spans the ambient space");
    let projection = inv.row_block(sub.dim(), ambient_dim);
    Ok(QuotientChart {
        subspace: sub.clone(),
        projection,
        section,
    })
}

/// Solution set of a linear system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    particular: Option<Vec<Scalar>>,
    homogeneous: Subspace,
}

impl AffineSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn particular(&self) -> Option<&[Scalar]> {
        self.particular.as_deref()
    }

    pub fn homogeneous(&self) -> &Subspace {
        &self.homogeneous
    }

    /// Dimension of the solution space (of the homogeneous part, when empty).
    pub fn dim(&self) -> usize {
        self.homogeneous.dim()
    }

    pub fn unknowns(&self) -> usize {
        self.homogeneous.ambient_dim()
    }

    /// Particular solution plus `coeffs` times the homogeneous basis.
    pub fn element(&self, coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
        let p = self.particular.as_ref()?;
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        Some(vec_add(p, &self.homogeneous.basis().mul_vec(coeffs)))
    }

    /// Particular solution followed by particular + each homogeneous basis vector.
    pub fn sample_elements(&self) -> Vec<Vec<Scalar>> {
        let Some(p) = &self.particular else {
            return Vec::new();
        };
        let mut out = vec![p.clone()];
        for h in self.homogeneous.basis_vectors() {
            out.push(vec_add(p, &h));
        }
        out
    }
}

pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<AffineSolutionSet> {
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "system with {} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let aug = a.hstack(&Matrix::from_cols(&[b.to_vec()], a.rows())?);
    let (r, pivots) = aug.rref();
    let homogeneous = a.kernel();
    if pivots.last() == Some(&a.cols()) {
        return Ok(AffineSolutionSet {
            particular: None,
            homogeneous,
        });
    }
    let mut x = zero_vec(a.cols());
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, a.cols())].clone();
    }
    Ok(AffineSolutionSet {
        particular: Some(x),
        homogeneous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let s = solve_affine(&Matrix::identity(2), &v(&[1, 2])).unwrap();
        assert_eq!(s.particular().unwrap(), v(&[1, 2]).as_slice());
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn solve_zero_map() {
        let s = solve_affine(&Matrix::zeros(2, 2), &v(&[0, 0])).unwrap();
        assert_eq!(s.particular().unwrap(), v(&[0, 0]).as_slice());
        assert_eq!(s.dim(), 2);
        let s = solve_affine(&Matrix::zeros(2, 2), &v(&[1, 0])).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn solve_shape_mismatch() {
        assert!(matches!(
            solve_affine(&Matrix::zeros(2, 2), &v(&[1])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn rank_one_kernel() {
        let a = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        // spanned by (2, -1)
        assert!(k.contains(&v(&[2, -1])));
        assert!(!k.contains(&v(&[1, 0])));
    }

    #[test]
    fn kernel_image_extremes() {
        let z = Matrix::zeros(3, 3);
        assert_eq!(z.kernel().dim(), 3);
        assert_eq!(z.image().dim(), 0);
        let id = Matrix::identity(3);
        assert_eq!(id.kernel().dim(), 0);
        assert_eq!(id.image().dim(), 3);
    }

    fn check_chart(ch: &QuotientChart) {
        let q = ch.quotient_dim();
        assert_eq!(q, ch.ambient_dim() - ch.subspace().dim());
        assert_eq!(ch.projection() * ch.section(), Matrix::identity(q));
        assert!((ch.projection() * ch.subspace().basis()).is_zero());
    }

    #[test]
    fn coordinate_quotient() {
        let sub = Subspace::new(2, vec![v(&[1, 0])]).unwrap();
        let ch = quotient_chart(2, &sub).unwrap();
        check_chart(&ch);
        assert_eq!(ch.projection(), &Matrix::from_i64(&[&[0, 1]]));
        assert_eq!(ch.section(), &Matrix::from_i64(&[&[0], &[1]]));
    }

    #[test]
    fn diagonal_quotient() {
        let sub = Subspace::new(3, vec![v(&[1, 1, 0])]).unwrap();
        let ch = quotient_chart(3, &sub).unwrap();
        assert_eq!(ch.quotient_dim(), 2);
        check_chart(&ch);
    }

    #[test]
    fn full_quotient() {
        let ch = quotient_chart(4, &Subspace::full(4)).unwrap();
        assert_eq!(ch.quotient_dim(), 0);
        check_chart(&ch);
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(matches!(
            Subspace::new(2, vec![v(&[1, 2]), v(&[2, 4])]),
            Err(Error::NotIndependent)
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_scalar("1/0").is_err());
        assert_eq!(parse_scalar("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), int(7));
    }

    #[test]
    fn chart_with_other_section() {
        let sub = Subspace::new(2, vec![v(&[1, 0])]).unwrap();
        let ch = quotient_chart(2, &sub).unwrap();
        let other = ch.with_section(Matrix::from_i64(&[&[3], &[1]])).unwrap();
        check_chart(&other);
        assert!(ch.with_section(Matrix::from_i64(&[&[1], &[0]])).is_err());
    }
}
