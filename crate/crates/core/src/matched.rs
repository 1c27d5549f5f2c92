//! Matched pairs of Lie algebras, matched sums, derivation algebras and equivariant
//! structures.
//!
//! Anchors are zero, so the anchor compatibility of a matched pair holds vacuously.
//! For an equivariant structure the action of `L` back on `g` is the Lie derivative
//! along constant sections, which is zero.

use crate::atiyah::{
    atiyah_cocycle, check_extending, extend_connection, is_a_compatible, twisted_sum, Connection, CurvatureForm,
    FormDomain, IsoCheck, Triad,
};
use crate::error::{Error, Result};
use crate::extension::build_split_extension;
use crate::lie::{LieAlgebra, LiePair, Representation};
use crate::linalg::{flatten, matrix_of_linear_map, unflatten, unit_vec, vec_add, vec_sub, Matrix, Scalar, Subspace};

/// Two Lie algebras with mutual actions `D_a b` (of `A` on `B`) and `D_b a` (of `B` on `A`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub a: LieAlgebra,
    pub b: LieAlgebra,
    pub a_on_b: Representation,
    pub b_on_a: Representation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchedReport {
    pub a_on_b_flatness: Vec<(usize, usize)>,
    pub b_on_a_flatness: Vec<(usize, usize)>,
    /// `(a, b, b')` violating
    /// `D_a[b,b'] = [D_a b, b'] + [b, D_a b'] - D_{D_b a} b' + D_{D_b' a} b`.
    pub condition_i: Vec<(usize, usize, usize)>,
    /// `(b, a, a')` violating the same identity with the roles of `A` and `B` swapped.
    pub condition_ii: Vec<(usize, usize, usize)>,
    /// The anchor condition; always true since both anchors are zero.
    pub condition_iii_vacuous: bool,
}

impl MatchedReport {
    pub fn passed(&self) -> bool {
        self.a_on_b_flatness.is_empty()
            && self.b_on_a_flatness.is_empty()
            && self.condition_i.is_empty()
            && self.condition_ii.is_empty()
            && self.condition_iii_vacuous
    }

    /// A short description of the first violation.
    pub fn first_violation(&self) -> Option<String> {
        if let Some(p) = self.a_on_b_flatness.first() {
            return Some(format!("A-action on B not flat at {p:?}"));
        }
        if let Some(p) = self.b_on_a_flatness.first() {
            return Some(format!("B-action on A not flat at {p:?}"));
        }
        if let Some(t) = self.condition_i.first() {
            return Some(format!("condition (i) fails at (a, b, b') = {t:?}"));
        }
        self.condition_ii
            .first()
            .map(|t| format!("condition (ii) fails at (b, a, a') = {t:?}"))
    }
}

/// Checks `D_x[y,y'] = [D_x y, y'] + [y, D_x y'] - D_{D_y x} y' + D_{D_y' x} y` for all basis
/// triples, where `x` ranges over `X` and `y, y'` over `Y`.
fn compatibility_violations(
    x_alg: &LieAlgebra,
    y_alg: &LieAlgebra,
    x_on_y: &Representation,
    y_on_x: &Representation,
) -> Vec<(usize, usize, usize)> {
    let (nx, ny) = (x_alg.dim(), y_alg.dim());
    let mut out = Vec::new();
    for i in 0..nx {
        let dx = x_on_y.basis_action(i);
        let x = unit_vec(nx, i);
        for j in 0..ny {
            for k in j + 1..ny {
                let (y, y2) = (unit_vec(ny, j), unit_vec(ny, k));
                let lhs = dx.mul_vec(y_alg.basis_bracket(j, k));
                let mut rhs = y_alg.bracket(&dx.mul_vec(&y), &y2);
                rhs = vec_add(&rhs, &y_alg.bracket(&y, &dx.mul_vec(&y2)));
                let dy_x = y_on_x.basis_action(j).mul_vec(&x);
                let dy2_x = y_on_x.basis_action(k).mul_vec(&x);
                rhs = vec_sub(&rhs, &x_on_y.act(&dy_x).mul_vec(&y2));
                rhs = vec_add(&rhs, &x_on_y.act(&dy2_x).mul_vec(&y));
                if lhs != rhs {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

impl MatchedPair {
    /// Checks shapes only; use [`check`](Self::check) for the matched-pair identities.
    pub fn new(a: LieAlgebra, b: LieAlgebra, a_on_b: Vec<Matrix>, b_on_a: Vec<Matrix>) -> Result<Self> {
        let a_on_b = Representation::new(a.clone(), b.dim(), a_on_b)?;
        let b_on_a = Representation::new(b.clone(), a.dim(), b_on_a)?;
        Ok(MatchedPair { a, b, a_on_b, b_on_a })
    }

    pub fn check(&self) -> MatchedReport {
        MatchedReport {
            a_on_b_flatness: self.a_on_b.flatness_violations(),
            b_on_a_flatness: self.b_on_a.flatness_violations(),
            condition_i: compatibility_violations(&self.a, &self.b, &self.a_on_b, &self.b_on_a),
            condition_ii: compatibility_violations(&self.b, &self.a, &self.b_on_a, &self.a_on_b),
            condition_iii_vacuous: self.a.anchor().leibniz_vacuous() && self.b.anchor().leibniz_vacuous(),
        }
    }

    /// Unchecked sum bracket on `A ⊕ B` with `[a, b] = D_a b - D_b a`.
    fn sum_algebra(&self) -> LieAlgebra {
        let (na, nb) = (self.a.dim(), self.b.dim());
        let dim = na + nb;
        let bracket = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            let (xa, xb) = x.split_at(na);
            let (ya, yb) = y.split_at(na);
            // [xa + xb, ya + yb] = [xa,ya] + [xb,yb] + (D_xa yb - D_yb xa) - (D_ya xb - D_xb ya)
            let mut a_part = vec_add(&self.a.bracket(xa, ya), &self.b_on_a.act(xb).mul_vec(ya));
            a_part = vec_sub(&a_part, &self.b_on_a.act(yb).mul_vec(xa));
            let mut b_part = vec_add(&self.b.bracket(xb, yb), &self.a_on_b.act(xa).mul_vec(yb));
            b_part = vec_sub(&b_part, &self.a_on_b.act(ya).mul_vec(xb));
            a_part.extend(b_part);
            a_part
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

    /// The matched sum `A ⋈ B` on `A ⊕ B` (basis of `A`, then of `B`).
    pub fn matched_sum(&self) -> Result<LieAlgebra> {
        let report = self.check();
        if let Some(msg) = report.first_violation() {
            return Err(Error::NotMatched(msg));
        }
        let sum = self.sum_algebra();
        if let Err(e) = sum.check() {
            return Err(Error::Internal(format!("matched sum fails Lie axioms: {e}")));
        }
        Ok(sum)
    }
}

/// Recovers the matched pair structure of `L = A ⊕ B` for complementary subalgebras,
/// with `D_a b = pr_B [a, b]` and `D_b a = pr_A [b, a]`.
pub fn recognize_matched(l: &LieAlgebra, inclusion_a: &Matrix, inclusion_b: &Matrix) -> Result<MatchedPair> {
    let adapted = inclusion_a.hstack(inclusion_b);
    if adapted.rows() != l.dim() || adapted.cols() != l.dim() {
        return Err(Error::Dimension(format!(
            "subspaces of dimensions {} and {} in an algebra of dimension {}",
            inclusion_a.cols(),
            inclusion_b.cols(),
            l.dim()
        )));
    }
    let inv = adapted
        .inverse()
        .ok_or_else(|| Error::NotMatched("the two subspaces are not complementary".into()))?;
    let (na, nb) = (inclusion_a.cols(), inclusion_b.cols());
    let pr_a = inv.row_block(0, na);
    let pr_b = inv.row_block(na, na + nb);
    let sub_a = Subspace::from_basis_matrix(inclusion_a.clone())?;
    let sub_b = Subspace::from_basis_matrix(inclusion_b.clone())?;
    if let Some((i, j)) = l.subalgebra_witness(&sub_a) {
        return Err(Error::NotMatched(format!(
            "A is not a subalgebra: [a_{i}, a_{j}] leaves it"
        )));
    }
    if let Some((i, j)) = l.subalgebra_witness(&sub_b) {
        return Err(Error::NotMatched(format!(
            "B is not a subalgebra: [b_{i}, b_{j}] leaves it"
        )));
    }
    let a = l.restrict(&sub_a)?;
    let b = l.restrict(&sub_b)?;
    let (ca, cb) = (inclusion_a.columns(), inclusion_b.columns());
    let a_on_b = ca
        .iter()
        .map(|x| {
            let cols: Vec<Vec<Scalar>> = cb.iter().map(|y| pr_b.mul_vec(&l.bracket(x, y))).collect();
            Matrix::from_cols(&cols, nb).expect("projection lands in B")
        })
        .collect();
    let b_on_a = cb
        .iter()
        .map(|y| {
            let cols: Vec<Vec<Scalar>> = ca.iter().map(|x| pr_a.mul_vec(&l.bracket(y, x))).collect();
            Matrix::from_cols(&cols, na).expect("projection lands in A")
        })
        .collect();
    MatchedPair::new(a, b, a_on_b, b_on_a)
}

/// The matched pair `(A, B = i_B(B))` of a triad whose complement is a subalgebra.
fn triad_matched_pair(triad: &Triad) -> Result<MatchedPair> {
    let pair = triad.pair();
    if !pair.complement_is_subalgebra() {
        return Err(Error::NotMatched("i_B(B) is not a subalgebra of L".into()));
    }
    recognize_matched(pair.l(), pair.i_a(), pair.i_b())
}

#[derive(Clone, Debug)]
pub struct MatchedAtiyahDecomposition {
    /// Matched-pair identities of `(A, End(E) ⊕_∇° B)`.
    pub matched: MatchedReport,
    /// `(a, φ, b) -> φ ⊕ (i_A a + i_B b)` from `A ⋈ (End(E) ⊕_∇° B)` to `End(E) ⊕_∇ L`.
    pub isomorphism: IsoCheck,
    /// `φ ⊕ b -> φ ⊕ i_B b` from `End(E) ⊕_∇° B` to `End(E) ⊕_∇ L`.
    pub b_inclusion: IsoCheck,
}

impl MatchedAtiyahDecomposition {
    pub fn passed(&self) -> bool {
        self.matched.passed() && self.isomorphism.passed() && self.b_inclusion.violations.is_empty()
    }
}

/// `End(E) ⊕_∇ L ≅ A ⋈ (End(E) ⊕_∇° B)` for `L = A ⋈ B` and any extending `∇`.
pub fn matched_atiyah_decomposition(triad: &Triad, conn: &Connection) -> Result<MatchedAtiyahDecomposition> {
    check_extending(triad, conn)?;
    let mp = triad_matched_pair(triad)?;
    let pair = triad.pair();
    let m = triad.module_dim();
    let m2 = m * m;
    let (na, nb) = (pair.dim_a(), pair.dim_b());

    let b_conn = Connection::new(mp.b.clone(), m, crate::atiyah::b_assignment(triad, conn))?;
    let end_b = twisted_sum(&b_conn, &b_conn.curvature())?;
    let split_l = twisted_sum(conn, &conn.curvature())?;

    // A acts on End ⊕ B through the split extension; End ⊕ B acts on A through its B-part.
    let a_on_eb = build_split_extension(triad, conn)?.action().to_vec();
    let mut eb_on_a = vec![Matrix::zeros(na, na); m2];
    eb_on_a.extend(mp.b_on_a.action().iter().cloned());
    let decomposed = MatchedPair::new(mp.a.clone(), end_b.clone(), a_on_eb, eb_on_a)?;
    let matched = decomposed.check();
    let sum = decomposed.sum_algebra();

    let total = na + m2 + nb;
    let iso = matrix_of_linear_map(total, m2 + pair.dim_l(), |v| {
        let (a, rest) = v.split_at(na);
        let (phi, b) = rest.split_at(m2);
        let mut out = phi.to_vec();
        out.extend(vec_add(&pair.i_a().mul_vec(a), &pair.i_b().mul_vec(b)));
        out
    });
    let isomorphism = IsoCheck::of(&sum, &split_l, &iso);
    let inc = matrix_of_linear_map(m2 + nb, m2 + pair.dim_l(), |v| {
        let (phi, b) = v.split_at(m2);
        let mut out = phi.to_vec();
        out.extend(pair.i_b().mul_vec(b));
        out
    });
    let b_inclusion = IsoCheck::of(&end_b, &split_l, &inc);
    Ok(MatchedAtiyahDecomposition {
        matched,
        isomorphism,
        b_inclusion,
    })
}

#[derive(Clone, Debug)]
pub struct CurvatureSplit {
    pub aa: CurvatureForm,
    pub ab: CurvatureForm,
    pub bb: CurvatureForm,
    /// `R(x, y)` equals the sum of the three blocks applied to the components of `x, y`.
    pub decomposition_holds: bool,
    pub flat: bool,
}

impl CurvatureSplit {
    /// `flat ⇔ (A⊗B block = 0 and B∧B block = 0)`
    pub fn biconditional_holds(&self) -> bool {
        self.flat == (self.ab.is_zero() && self.bb.is_zero())
    }
}

pub fn matched_curvature_split(triad: &Triad, conn: &Connection) -> Result<CurvatureSplit> {
    let ab = atiyah_cocycle(triad, conn)?;
    let mp = triad_matched_pair(triad)?;
    let pair = triad.pair();
    let m = triad.module_dim();
    let ia = pair.i_a().columns();
    let b_conn = Connection::new(mp.b.clone(), m, crate::atiyah::b_assignment(triad, conn))?;
    let bb_full = b_conn.curvature();
    let na = pair.dim_a();
    let nb = pair.dim_b();
    let aa = CurvatureForm::tabulate(FormDomain::AxA, na, na, m, |i, j| conn.curvature_at(&ia[i], &ia[j]));
    let bb = CurvatureForm::tabulate(FormDomain::BxB, nb, nb, m, |i, j| bb_full.get(i, j).clone());

    let n = pair.dim_l();
    let full = conn.curvature();
    let mut decomposition_holds = true;
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (pair.pr_a().col(x), pair.pr_b().col(x));
            let (ya, yb) = (pair.pr_a().col(y), pair.pr_b().col(y));
            let mut sum = Matrix::zeros(m, m);
            for i in 0..na {
                for j in 0..na {
                    sum = &sum + &aa.get(i, j).scale(&(&xa[i] * &ya[j]));
                }
                for j in 0..nb {
                    // R(a, b) and R(b, a) = -R(a, b)
                    let c = &xa[i] * &yb[j] - &xb[j] * &ya[i];
                    sum = &sum + &ab.get(i, j).scale(&c);
                }
            }
            for i in 0..nb {
                for j in 0..nb {
                    sum = &sum + &bb.get(i, j).scale(&(&xb[i] * &yb[j]));
                }
            }
            decomposition_holds &= &sum == full.get(x, y);
        }
    }
    Ok(CurvatureSplit {
        aa,
        ab,
        bb,
        decomposition_holds,
        flat: full.is_zero(),
    })
}

/// `Der(L)`: linear maps `δ` with `δ[x,y] = [δx, y] + [x, δy]`, stored row-major in `End(L)`.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    pub base: LieAlgebra,
    pub carrier: Subspace,
    /// Whether the commutator of any two basis derivations stays in the carrier.
    pub closed: bool,
}

impl DerivationAlgebra {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        let n = self.base.dim();
        self.carrier.basis_vectors().iter().map(|v| unflatten(n, v)).collect()
    }

    /// The commutator bracket in the carrier basis.
    pub fn algebra(&self) -> Result<LieAlgebra> {
        let basis = self.basis();
        let d = basis.len();
        let consts = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        self.carrier
                            .coordinates(&flatten(&basis[i].commutator(&basis[j])))
                            .ok_or(Error::NotSubalgebra(i, j))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_structure_constants(consts)
    }
}

/// First basis pair `(i, j)` where `δ` fails the derivation rule.
pub fn derivation_witness(l: &LieAlgebra, delta: &Matrix) -> Option<(usize, usize)> {
    let n = l.dim();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            let lhs = delta.mul_vec(l.basis_bracket(i, j));
            let rhs = vec_add(&l.bracket(&delta.mul_vec(&x), &y), &l.bracket(&x, &delta.mul_vec(&y)));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn derivation_algebra(l: &LieAlgebra) -> Result<DerivationAlgebra> {
    l.check()?;
    let n = l.dim();
    let equations = n * n * n;
    let system = matrix_of_linear_map(n * n, equations, |v| {
        let delta = unflatten(n, v);
        let mut out = Vec::with_capacity(equations);
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (unit_vec(n, i), unit_vec(n, j));
                let lhs = delta.mul_vec(l.basis_bracket(i, j));
                let rhs = vec_add(&l.bracket(&delta.mul_vec(&x), &y), &l.bracket(&x, &delta.mul_vec(&y)));
                out.extend(vec_sub(&lhs, &rhs));
            }
        }
        out
    });
    let carrier = system.kernel();
    let basis: Vec<Matrix> = carrier.basis_vectors().iter().map(|v| unflatten(n, v)).collect();
    let closed = basis.iter().enumerate().all(|(i, x)| {
        basis[i + 1..]
            .iter()
            .all(|y| carrier.contains(&flatten(&x.commutator(y))))
    });
    Ok(DerivationAlgebra {
        base: l.clone(),
        carrier,
        closed,
    })
}

/// `g` acting on `L` by derivations, as the matched pair `(g, L)` with zero action of `L` on `g`.
pub fn equivariant_structure(g: &LieAlgebra, l: &LieAlgebra, action: Vec<Matrix>) -> Result<MatchedPair> {
    let rep = Representation::new(g.clone(), l.dim(), action)?;
    for (k, x) in rep.action().iter().enumerate() {
        if let Some((i, j)) = derivation_witness(l, x) {
            return Err(Error::NotMorphism(format!(
                "X_{k} is not a derivation: fails on basis pair ({i}, {j})"
            )));
        }
    }
    if let Some(&(i, j)) = rep.flatness_violations().first() {
        return Err(Error::NotMorphism(format!("X_[{i},{j}] != [X_{i}, X_{j}]")));
    }
    let zero = vec![Matrix::zeros(g.dim(), g.dim()); l.dim()];
    let mp = MatchedPair::new(g.clone(), l.clone(), rep.action().to_vec(), zero)?;
    if let Some(msg) = mp.check().first_violation() {
        return Err(Error::Internal(format!("equivariant structure is not matched: {msg}")));
    }
    Ok(mp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariance {
    pub invariant: bool,
    /// First `(v, l)` with `[X^E_v, ∇_l] - ∇_{X^L_v l} != 0`.
    pub witness: Option<(usize, usize)>,
    /// The same question asked as `A`-compatibility for the triad `(g ⋈ L, g, E)`.
    pub compatible_in_sum: bool,
}

/// `g`-invariance of an `L`-connection `∇` on `E`, where `g` acts on `L` by `structure` and
/// on `E` by `x_e`.
pub fn is_g_invariant(structure: &MatchedPair, x_e: &Representation, conn: &Connection) -> Result<Invariance> {
    let g = &structure.a;
    let l = &structure.b;
    if x_e.algebra() != g || conn.algebra() != l || x_e.module_dim() != conn.module_dim() {
        return Err(Error::Dimension(
            "action, connection and structure do not fit together".into(),
        ));
    }
    let mut witness = None;
    'outer: for v in 0..g.dim() {
        for k in 0..l.dim() {
            let lk = unit_vec(l.dim(), k);
            let moved = structure.a_on_b.basis_action(v).mul_vec(&lk);
            let expr = &x_e.basis_action(v).commutator(&conn.at(&lk)) - &conn.at(&moved);
            if !expr.is_zero() {
                witness = Some((v, k));
                break 'outer;
            }
        }
    }
    let sum = structure.matched_sum()?;
    let n = sum.dim();
    let inc_g = Matrix::identity(n).col_block(0, g.dim());
    let pair = LiePair::new(sum, inc_g)?;
    let e = Representation::new(pair.a().clone(), x_e.module_dim(), x_e.action().to_vec())?;
    let triad = Triad::new(pair, e)?;
    let total = extend_connection(&triad, conn.assignment())?;
    let compatible_in_sum = is_a_compatible(&triad, &total)?;
    Ok(Invariance {
        invariant: witness.is_none(),
        witness,
        compatible_in_sum,
    })
}
