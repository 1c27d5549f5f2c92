//! Connections, curvature, Lie triads and Atiyah cocycles, and the curvature-twisted
//! bracket on `End(E) ⊕ L`.

use crate::cohomology::{exterior_derivative, MultiIndexBasis};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LiePair, Representation};
use crate::linalg::{combine, commutator_operator, flatten, unflatten, unit_vec, Matrix, Scalar};

/// A linear map `L -> End(E)`, one matrix per basis vector of `L`. No flatness is assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    algebra: LieAlgebra,
    module_dim: usize,
    assignment: Vec<Matrix>,
}

impl Connection {
    pub fn new(algebra: LieAlgebra, module_dim: usize, assignment: Vec<Matrix>) -> Result<Self> {
        if assignment.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} matrices for an algebra of dimension {}",
                assignment.len(),
                algebra.dim()
            )));
        }
        if let Some(m) = assignment.iter().find(|m| m.shape() != (module_dim, module_dim)) {
            return Err(Error::Dimension(format!(
                "connection matrix of shape {:?} on a module of dimension {module_dim}",
                m.shape()
            )));
        }
        Ok(Connection {
            algebra,
            module_dim,
            assignment,
        })
    }

    pub fn zero(algebra: LieAlgebra, module_dim: usize) -> Self {
        let assignment = vec![Matrix::zeros(module_dim, module_dim); algebra.dim()];
        Connection {
            algebra,
            module_dim,
            assignment,
        }
    }

    pub fn from_representation(rep: &Representation) -> Self {
        Connection {
            algebra: rep.algebra().clone(),
            module_dim: rep.module_dim(),
            assignment: rep.action().to_vec(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn assignment(&self) -> &[Matrix] {
        &self.assignment
    }

    /// `∇_x` for an arbitrary `x ∈ L`.
    pub fn at(&self, x: &[Scalar]) -> Matrix {
        combine(x, &self.assignment, (self.module_dim, self.module_dim))
    }

    /// `R(x, y) = [∇_x, ∇_y] - ∇_[x,y]`
    pub fn curvature_at(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        &self.at(x).commutator(&self.at(y)) - &self.at(&self.algebra.bracket(x, y))
    }

    pub fn curvature(&self) -> CurvatureForm {
        let n = self.algebra.dim();
        let e = |i| unit_vec(n, i);
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.curvature_at(&e(i), &e(j)));
            }
        }
        CurvatureForm {
            domain: FormDomain::Wedge2L,
            rows: n,
            cols: n,
            module_dim: self.module_dim,
            table,
        }
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }

    /// The operators `[∇_{e_i}, .]` on `End(E)`, flattened row-major.
    pub fn end_action(&self) -> Vec<Matrix> {
        self.assignment.iter().map(commutator_operator).collect()
    }
}

/// Which pairs of basis vectors a [`CurvatureForm`] table is indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormDomain {
    Wedge2L,
    AxL,
    AxB,
    AxA,
    BxB,
}

impl FormDomain {
    pub fn label(&self) -> &'static str {
        match self {
            FormDomain::Wedge2L => "L^L",
            FormDomain::AxL => "A(x)L",
            FormDomain::AxB => "A(x)B",
            FormDomain::AxA => "A^A",
            FormDomain::BxB => "B^B",
        }
    }
}

/// An `End(E)`-valued bilinear table `R(x_i, y_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureForm {
    domain: FormDomain,
    rows: usize,
    cols: usize,
    module_dim: usize,
    table: Vec<Matrix>,
}

impl CurvatureForm {
    pub fn tabulate(
        domain: FormDomain,
        rows: usize,
        cols: usize,
        module_dim: usize,
        mut f: impl FnMut(usize, usize) -> Matrix,
    ) -> Self {
        let mut table = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                table.push(f(i, j));
            }
        }
        CurvatureForm {
            domain,
            rows,
            cols,
            module_dim,
            table,
        }
    }

    pub fn domain(&self) -> FormDomain {
        self.domain
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        &self.table[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Matrix::is_zero)
    }

    /// First index pair with a non-zero value.
    pub fn nonzero_witness(&self) -> Option<(usize, usize)> {
        let k = self.table.iter().position(|m| !m.is_zero())?;
        Some((k / self.cols, k % self.cols))
    }

    /// Entry-wise difference of two tables on the same domain.
    pub fn difference(&self, other: &CurvatureForm) -> CurvatureForm {
        assert_eq!(self.shape(), other.shape(), "form shape mismatch");
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a - b).collect();
        CurvatureForm { table, ..self.clone() }
    }
}

/// A Lie pair `(L, A)` together with a flat `A`-module `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triad {
    pair: LiePair,
    e_rep: Representation,
}

impl Triad {
    /// `e_rep` must be a flat representation of `pair.a()` (same structure constants).
    pub fn new(pair: LiePair, e_rep: Representation) -> Result<Self> {
        if e_rep.algebra() != pair.a() {
            return Err(Error::Dimension(
                "the module is not a representation of the subalgebra A of the pair".into(),
            ));
        }
        if let Some(&(i, j)) = e_rep.flatness_violations().first() {
            return Err(Error::NotFlat(i, j));
        }
        Ok(Triad { pair, e_rep })
    }

    pub fn pair(&self) -> &LiePair {
        &self.pair
    }

    pub fn e_rep(&self) -> &Representation {
        &self.e_rep
    }

    pub fn module_dim(&self) -> usize {
        self.e_rep.module_dim()
    }

    /// `∇̄_a`
    pub fn nabla_bar(&self, a: &[Scalar]) -> Matrix {
        self.e_rep.act(a)
    }

    /// Same triad with another splitting `i_B`.
    pub fn with_splitting(&self, i_b: Matrix) -> Result<Self> {
        Ok(Triad {
            pair: self.pair.with_splitting(i_b)?,
            e_rep: self.e_rep.clone(),
        })
    }
}

/// `∇_l = ∇̄_{pr_A l} + Σ_j (pr_B l)_j b_assignment[j]`
pub fn extend_connection(triad: &Triad, b_assignment: &[Matrix]) -> Result<Connection> {
    let pair = triad.pair();
    let m = triad.module_dim();
    if b_assignment.len() != pair.dim_b() {
        return Err(Error::Dimension(format!(
            "{} matrices for a quotient of dimension {}",
            b_assignment.len(),
            pair.dim_b()
        )));
    }
    if let Some(x) = b_assignment.iter().find(|x| x.shape() != (m, m)) {
        return Err(Error::Dimension(format!(
            "B-assignment matrix of shape {:?}",
            x.shape()
        )));
    }
    let assignment = (0..pair.dim_l())
        .map(|i| {
            let a = triad.nabla_bar(&pair.pr_a().col(i));
            let b = combine(&pair.pr_b().col(i), b_assignment, (m, m));
            &a + &b
        })
        .collect();
    Connection::new(pair.l().clone(), m, assignment)
}

/// Errors with the first `A`-basis vector where `∇ ∘ i_A != ∇̄`.
pub fn check_extending(triad: &Triad, conn: &Connection) -> Result<()> {
    let pair = triad.pair();
    if conn.algebra() != pair.l() || conn.module_dim() != triad.module_dim() {
        return Err(Error::Dimension(
            "connection does not live on the triad's L and E".into(),
        ));
    }
    for i in 0..pair.dim_a() {
        if conn.at(&pair.i_a().col(i)) != *triad.e_rep().basis_action(i) {
            return Err(Error::NotExtending(i));
        }
    }
    Ok(())
}

/// `∇ ∘ i_B`, one matrix per basis vector of `B`.
pub fn b_assignment(triad: &Triad, conn: &Connection) -> Vec<Matrix> {
    triad.pair().i_b().columns().iter().map(|b| conn.at(b)).collect()
}

/// `R(a_i, i_B b_j)` for an extending `∇`.
pub fn atiyah_cocycle(triad: &Triad, conn: &Connection) -> Result<CurvatureForm> {
    check_extending(triad, conn)?;
    let pair = triad.pair();
    let ia = pair.i_a().columns();
    let ib = pair.i_b().columns();
    Ok(CurvatureForm::tabulate(
        FormDomain::AxB,
        pair.dim_a(),
        pair.dim_b(),
        triad.module_dim(),
        |i, j| conn.curvature_at(&ia[i], &ib[j]),
    ))
}

/// `R(a_i, e_j)` over all of `L`.
pub fn a_l_curvature(triad: &Triad, conn: &Connection) -> Result<CurvatureForm> {
    check_extending(triad, conn)?;
    let pair = triad.pair();
    let ia = pair.i_a().columns();
    let n = pair.dim_l();
    Ok(CurvatureForm::tabulate(
        FormDomain::AxL,
        pair.dim_a(),
        n,
        triad.module_dim(),
        |i, j| conn.curvature_at(&ia[i], &unit_vec(n, j)),
    ))
}

pub fn is_a_compatible(triad: &Triad, conn: &Connection) -> Result<bool> {
    Ok(atiyah_cocycle(triad, conn)?.is_zero())
}

/// `End(E) ⊕ L` with coordinates `(φ row-major, l)`.
fn split_parts(m: usize, v: &[Scalar]) -> (Matrix, &[Scalar]) {
    (unflatten(m, &v[..m * m]), &v[m * m..])
}

fn join(phi: &Matrix, l: &[Scalar]) -> Vec<Scalar> {
    let mut v = flatten(phi);
    v.extend_from_slice(l);
    v
}

/// `[φ1 ⊕ l1, φ2 ⊕ l2] = ([φ1,φ2] + [∇_{l1},φ2] - [∇_{l2},φ1] + ω(l1,l2)) ⊕ [l1,l2]`
/// for an arbitrary `End(E)`-valued 2-form `ω` on `L`. Jacobi holds iff `d^∇ ω = 0`.
pub fn twisted_sum(conn: &Connection, omega: &CurvatureForm) -> Result<LieAlgebra> {
    let l = conn.algebra();
    let n = l.dim();
    let m = conn.module_dim();
    if omega.shape() != (n, n) || omega.module_dim() != m {
        return Err(Error::Dimension("twisting form does not match the connection".into()));
    }
    let dim = m * m + n;
    let bracket = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let (p1, l1) = split_parts(m, x);
        let (p2, l2) = split_parts(m, y);
        let mut phi = p1.commutator(&p2);
        phi = &phi + &conn.at(l1).commutator(&p2);
        phi = &phi - &conn.at(l2).commutator(&p1);
        for (i, a) in l1.iter().enumerate() {
            for (j, b) in l2.iter().enumerate() {
                let c = a * b;
                phi = &phi + &omega.get(i, j).scale(&c);
            }
        }
        join(&phi, &l.bracket(l1, l2))
    };
    let consts = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| bracket(&unit_vec(dim, i), &unit_vec(dim, j)))
                .collect()
        })
        .collect();
    LieAlgebra::from_structure_constants(consts)
}

/// `End(E) ⊕_∇ L` together with the connection that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAtiyah {
    algebra: LieAlgebra,
    connection: Connection,
}

impl SplitAtiyah {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn end_dim(&self) -> usize {
        self.connection.module_dim().pow(2)
    }
}

/// The curvature-twisted algebra `End(E) ⊕_∇ L`, with Jacobi verified.
pub fn build_split_atiyah(conn: &Connection) -> Result<SplitAtiyah> {
    let algebra = twisted_sum(conn, &conn.curvature())?;
    let report = algebra.validate();
    if !report.is_valid() {
        return Err(Error::Internal(format!("twisted bracket fails Lie axioms: {report:?}")));
    }
    Ok(SplitAtiyah {
        algebra,
        connection: conn.clone(),
    })
}

/// The direct product `gl(E) × L`, coordinates `(δ row-major, l)`.
pub fn direct_product(module_dim: usize, l: &LieAlgebra) -> LieAlgebra {
    let m = module_dim;
    let dim = m * m + l.dim();
    let bracket = |x: &[Scalar], y: &[Scalar]| {
        let (d1, l1) = split_parts(m, x);
        let (d2, l2) = split_parts(m, y);
        join(&d1.commutator(&d2), &l.bracket(l1, l2))
    };
    let consts = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| bracket(&unit_vec(dim, i), &unit_vec(dim, j)))
                .collect()
        })
        .collect();
    LieAlgebra::from_structure_constants(consts).expect("square table")
}

/// Matrix of `φ ⊕ l -> (φ + ∇_l, l)`.
pub fn split_iso_matrix(conn: &Connection) -> Matrix {
    let m = conn.module_dim();
    let n = conn.algebra().dim();
    let dim = m * m + n;
    crate::linalg::matrix_of_linear_map(dim, dim, |v| {
        let (phi, l) = split_parts(m, v);
        join(&(&phi + &conn.at(l)), l)
    })
}

/// Outcome of a Lie-isomorphism check: basis pairs where brackets are not preserved,
/// and whether the map is invertible.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsoCheck {
    pub violations: Vec<(usize, usize)>,
    pub bijective: bool,
}

impl IsoCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.bijective
    }

    pub fn of(source: &LieAlgebra, target: &LieAlgebra, map: &Matrix) -> Self {
        let mut violations = Vec::new();
        let cols = map.columns();
        for i in 0..source.dim() {
            for j in i + 1..source.dim() {
                if map.mul_vec(source.basis_bracket(i, j)) != target.bracket(&cols[i], &cols[j]) {
                    violations.push((i, j));
                }
            }
        }
        IsoCheck {
            violations,
            bijective: map.inverse().is_some(),
        }
    }
}

/// Checks that `φ ⊕ l -> (φ + ∇_l, l)` is a Lie isomorphism `End(E) ⊕_∇ L -> gl(E) × L`.
pub fn split_iso_check(conn: &Connection) -> Result<IsoCheck> {
    let split = build_split_atiyah(conn)?;
    let target = direct_product(conn.module_dim(), conn.algebra());
    Ok(IsoCheck::of(split.algebra(), &target, &split_iso_matrix(conn)))
}

/// The split algebra, the canonical representation `∇̆(φ ⊕ l) = φ + ∇_l` on `E`,
/// and the checks that `∇̆` is flat and pulls back to `∇` along `l -> 0 ⊕ l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalConstruction {
    pub split: SplitAtiyah,
    pub canonical: Representation,
    pub flatness_violations: Vec<(usize, usize)>,
    pub natural: bool,
}

impl UniversalConstruction {
    pub fn passed(&self) -> bool {
        self.flatness_violations.is_empty() && self.natural
    }
}

pub fn universal_construction(conn: &Connection) -> Result<UniversalConstruction> {
    let split = build_split_atiyah(conn)?;
    let m = conn.module_dim();
    let n = conn.algebra().dim();
    let dim = m * m + n;
    let action = (0..dim)
        .map(|k| {
            let e = unit_vec(dim, k);
            let (phi, l) = split_parts(m, &e);
            &phi + &conn.at(l)
        })
        .collect();
    let canonical = Representation::new(split.algebra().clone(), m, action)?;
    let flatness_violations = canonical.flatness_violations();
    let natural = (0..n).all(|i| {
        let s = join(&Matrix::zeros(m, m), &unit_vec(n, i));
        canonical.act(&s) == conn.assignment()[i]
    });
    Ok(UniversalConstruction {
        split,
        canonical,
        flatness_violations,
        natural,
    })
}

/// An `End(E)`-valued 3-form on `L`, one matrix per increasing index triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForm {
    pub triples: Vec<Vec<usize>>,
    pub values: Vec<Matrix>,
}

impl ThreeForm {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Matrix::is_zero)
    }
}

/// `d^∇ ω` for an `End(E)`-valued 2-form, with `∇^End_l = [∇_l, .]`.
pub fn covariant_derivative_2form(conn: &Connection, omega: &CurvatureForm) -> ThreeForm {
    let n = conn.algebra().dim();
    let m = conn.module_dim();
    let v = m * m;
    let pairs = MultiIndexBasis::new(n, 2);
    let mut cochain = Vec::with_capacity(pairs.len() * v);
    for idx in pairs.indices() {
        cochain.extend(flatten(omega.get(idx[0], idx[1])));
    }
    let d = exterior_derivative(conn.algebra(), &conn.end_action(), v, 2, &cochain);
    let triples = MultiIndexBasis::new(n, 3);
    let values = (0..triples.len())
        .map(|t| unflatten(m, &d[t * v..(t + 1) * v]))
        .collect();
    ThreeForm {
        triples: triples.indices().to_vec(),
        values,
    }
}

/// The Bianchi form `d^∇ R^∇`.
pub fn bianchi(conn: &Connection) -> ThreeForm {
    covariant_derivative_2form(conn, &conn.curvature())
}

/// `End(E)`-component of the Jacobiator of `twisted_sum(∇, ω)` on the basis triple
/// `(l_i, l_j, l_k)` of `L`, read off the structure constants.
pub fn pure_jacobiator_end(algebra: &LieAlgebra, m: usize, i: usize, j: usize, k: usize) -> Matrix {
    let off = m * m;
    let jac = algebra.jacobiator(off + i, off + j, off + k);
    unflatten(m, &jac[..off])
}

/// Helper for callers building `End(E) ⊕ L` vectors.
pub fn split_vector(phi: &Matrix, l: &[Scalar]) -> Vec<Scalar> {
    join(phi, l)
}

/// Pure `L` vector `0 ⊕ l`.
pub fn l_vector(m: usize, l: &[Scalar]) -> Vec<Scalar> {
    join(&Matrix::zeros(m, m), l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{borel_inclusion, sl2, sl2_borel_standard, sl2_standard, two_dim, two_dim_triad};
    use crate::linalg::{frac, int};

    #[test]
    fn flat_rep_has_zero_curvature() {
        let c = Connection::from_representation(&sl2_standard());
        assert!(c.curvature().is_zero());
    }

    #[test]
    fn abelian_curvature_is_commutator() {
        let x = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let y = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        let c = Connection::new(LieAlgebra::abelian(2), 2, vec![x.clone(), y.clone()]).unwrap();
        assert_eq!(c.curvature().get(0, 1), &x.commutator(&y));
    }

    #[test]
    fn two_dim_curvature() {
        let c = Connection::new(two_dim(), 1, vec![Matrix::zeros(1, 1), Matrix::identity(1)]).unwrap();
        assert_eq!(c.curvature().get(0, 1), &Matrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn extend_zero_and_full() {
        let t = sl2_borel_standard();
        let z = extend_connection(&t, &[Matrix::zeros(2, 2)]).unwrap();
        assert!(z.at(&t.pair().i_b().col(0)).is_zero());
        let rho = sl2_standard();
        let full = extend_connection(&t, &[rho.basis_action(2).clone()]).unwrap();
        assert_eq!(full.assignment(), rho.action());
        let degenerate = Triad::new(LiePair::new(sl2(), Matrix::identity(3)).unwrap(), sl2_standard()).unwrap();
        assert_eq!(extend_connection(&degenerate, &[]).unwrap().assignment(), rho.action());
    }

    #[test]
    fn cocycle_scalar_example() {
        for lambda in -2..=2 {
            let t = two_dim_triad(int(lambda));
            let c = extend_connection(&t, &[Matrix::from_fn(1, 1, |_, _| frac(5, 2))]).unwrap();
            let r = atiyah_cocycle(&t, &c).unwrap();
            assert_eq!(r.get(0, 0), &Matrix::from_fn(1, 1, |_, _| int(lambda)));
            assert_eq!(is_a_compatible(&t, &c).unwrap(), lambda == 0);
        }
    }

    #[test]
    fn cocycle_borel_standard_vanishes() {
        let t = sl2_borel_standard();
        let c = Connection::from_representation(&sl2_standard());
        assert!(atiyah_cocycle(&t, &c).unwrap().is_zero());
    }

    #[test]
    fn non_extending_rejected() {
        let t = sl2_borel_standard();
        let c = Connection::zero(sl2(), 2);
        assert!(matches!(atiyah_cocycle(&t, &c), Err(Error::NotExtending(0))));
    }

    #[test]
    fn full_pair_is_vacuously_compatible() {
        let t = Triad::new(LiePair::new(sl2(), Matrix::identity(3)).unwrap(), sl2_standard()).unwrap();
        let c = extend_connection(&t, &[]).unwrap();
        assert!(is_a_compatible(&t, &c).unwrap());
        assert_eq!(atiyah_cocycle(&t, &c).unwrap().shape(), (3, 0));
    }

    #[test]
    fn split_of_zero_on_abelian_is_product() {
        let l = LieAlgebra::abelian(2);
        let c = Connection::zero(l.clone(), 2);
        assert_eq!(build_split_atiyah(&c).unwrap().algebra(), &direct_product(2, &l));
        assert!(split_iso_check(&c).unwrap().passed());
    }

    #[test]
    fn split_iso_for_skew_connection() {
        let skew = Connection::new(
            sl2(),
            2,
            vec![
                Matrix::from_i64(&[&[1, 2], &[0, -1]]),
                Matrix::from_i64(&[&[0, 1], &[3, 0]]),
                Matrix::from_i64(&[&[2, 0], &[1, 1]]),
            ],
        )
        .unwrap();
        assert!(!skew.is_flat());
        assert!(split_iso_check(&skew).unwrap().passed());
        assert!(bianchi(&skew).is_zero());
        let u = universal_construction(&skew).unwrap();
        assert!(u.passed());
    }

    #[test]
    fn bianchi_small_algebra_has_no_triples() {
        let c = Connection::new(two_dim(), 1, vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        assert!(bianchi(&c).triples.is_empty());
    }

    #[test]
    fn other_splitting_same_cocycle() {
        let t = sl2_borel_standard();
        let c = extend_connection(&t, &[Matrix::from_i64(&[&[1, 1], &[2, 0]])]).unwrap();
        let t2 = t.with_splitting(Matrix::from_i64(&[&[1], &[2], &[1]])).unwrap();
        assert_eq!(atiyah_cocycle(&t, &c).unwrap(), atiyah_cocycle(&t2, &c).unwrap());
        assert_eq!(borel_inclusion(), *t.pair().i_a());
    }
}
