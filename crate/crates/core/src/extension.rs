//! The three models of the Atiyah extension of `B` by `End(E)` with their flat `A`-actions:
//!
//! * quotient: `(gl(E) × L) / s_{A,L}(A)`, in quotient-chart coordinates;
//! * embedded: `gl(E) × B` through a splitting `i_B`;
//! * split: `End(E) ⊕ B` through an extending connection `∇`.
//!
//! `gl(E) × L` vectors are `(δ row-major, l)`; the other carriers are `(δ or φ, b)`.

use crate::atiyah::{
    a_l_curvature, atiyah_cocycle, b_assignment, check_extending, extend_connection, Connection, Triad,
};
use crate::error::{Error, Result};
use crate::lie::Representation;
use crate::linalg::{
    combine, flatten, matrix_of_linear_map, quotient_chart, unflatten, unit_vec, Matrix, QuotientChart, Scalar,
    Subspace,
};

fn end_dim(triad: &Triad) -> usize {
    triad.module_dim().pow(2)
}

/// `m² x a` matrix whose columns are `∇̄_{a_i}` flattened.
fn nabla_bar_columns(triad: &Triad) -> Matrix {
    let cols: Vec<Vec<Scalar>> = triad.e_rep().action().iter().map(flatten).collect();
    Matrix::from_cols(&cols, end_dim(triad)).expect("flattened matrices have m² entries")
}

/// `m² x b` matrix whose columns are `∇_{i_B b_j}` flattened.
fn b_connection_columns(triad: &Triad, conn: &Connection) -> Matrix {
    let cols: Vec<Vec<Scalar>> = b_assignment(triad, conn).iter().map(flatten).collect();
    Matrix::from_cols(&cols, end_dim(triad)).expect("flattened matrices have m² entries")
}

/// `[[top_left, top_right], [bottom_left, bottom_right]]`
fn blocks(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Matrix {
    tl.hstack(tr).vstack(&bl.hstack(br))
}

/// `(δ, x) -> (δ, f x)` on `gl(E) × X`.
fn end_plus(m2: usize, f: &Matrix) -> Matrix {
    blocks(
        &Matrix::identity(m2),
        &Matrix::zeros(m2, f.cols()),
        &Matrix::zeros(f.rows(), m2),
        f,
    )
}

/// `End(E) -> gl(E) × X`, `δ -> (δ, 0)`.
fn end_inclusion(m2: usize, x: usize) -> Matrix {
    Matrix::identity(m2).vstack(&Matrix::zeros(x, m2))
}

/// `gl(E) × X -> X`.
fn second_projection(m2: usize, x: usize) -> Matrix {
    Matrix::zeros(x, m2).hstack(&Matrix::identity(x))
}

/// `s_{A,L}: a -> (∇̄_a, i_A a)`
pub fn s_al(triad: &Triad) -> Matrix {
    nabla_bar_columns(triad).vstack(triad.pair().i_a())
}

/// `(δ, l) -> ([∇̄_a, δ], [i_A a, l])` for the basis vector `a_i`.
fn gl_l_action(triad: &Triad, i: usize) -> Matrix {
    let pair = triad.pair();
    let m = triad.module_dim();
    let m2 = m * m;
    let n = pair.dim_l();
    let nabla = triad.e_rep().basis_action(i);
    let a = pair.i_a().col(i);
    matrix_of_linear_map(m2 + n, m2 + n, |v| {
        let delta = unflatten(m, &v[..m2]);
        let mut out = flatten(&nabla.commutator(&delta));
        out.extend(pair.l().bracket(&a, &v[m2..]));
        out
    })
}

#[derive(Clone, Debug)]
pub struct QuotientExtension {
    pub chart: QuotientChart,
    pub rep: Representation,
    /// Whether each `P T_a` kills `s_{A,L}(A)`, so the action does not depend on representatives.
    pub well_defined: bool,
}

impl QuotientExtension {
    pub fn dim(&self) -> usize {
        self.chart.quotient_dim()
    }

    pub fn passed(&self) -> bool {
        self.well_defined && self.rep.is_flat()
    }
}

pub fn build_quotient_extension(triad: &Triad) -> Result<QuotientExtension> {
    let m2 = end_dim(triad);
    let n = triad.pair().dim_l();
    let s = s_al(triad);
    let sub = Subspace::from_basis_matrix(s.clone())?;
    let chart = quotient_chart(m2 + n, &sub)?;
    let mut well_defined = true;
    let action = (0..triad.pair().dim_a())
        .map(|i| {
            let t = gl_l_action(triad, i);
            let pt = chart.projection() * &t;
            well_defined &= (&pt * &s).is_zero();
            &pt * chart.section()
        })
        .collect();
    let rep = Representation::new(triad.pair().a().clone(), chart.quotient_dim(), action)?;
    Ok(QuotientExtension {
        chart,
        rep,
        well_defined,
    })
}

/// `∇_a(δ, b) = ([∇̄_a, δ] + ∇̄_{ð_b a}, D_a b)` on `gl(E) × B`.
pub fn build_embedded_extension(triad: &Triad) -> Result<Representation> {
    let pair = triad.pair();
    let bott = pair.bott_connection()?;
    let m = triad.module_dim();
    let m2 = m * m;
    let nb = pair.dim_b();
    let na = pair.dim_a();
    let action = (0..na)
        .map(|i| {
            let nabla = triad.e_rep().basis_action(i);
            let a = unit_vec(na, i);
            matrix_of_linear_map(m2 + nb, m2 + nb, |v| {
                let delta = unflatten(m, &v[..m2]);
                let b = &v[m2..];
                let eth = triad.nabla_bar(&pair.eth(b, &a));
                let mut out = flatten(&(&nabla.commutator(&delta) + &eth));
                out.extend(bott.basis_action(i).mul_vec(b));
                out
            })
        })
        .collect();
    Representation::new(pair.a().clone(), m2 + nb, action)
}

/// `D_a(φ ⊕ b) = ([∇̄_a, φ] + R(a ⊗ b)) ⊕ D_a b` on `End(E) ⊕ B`.
pub fn build_split_extension(triad: &Triad, conn: &Connection) -> Result<Representation> {
    let cocycle = atiyah_cocycle(triad, conn)?;
    let pair = triad.pair();
    let bott = pair.bott_connection()?;
    let m = triad.module_dim();
    let m2 = m * m;
    let nb = pair.dim_b();
    let action = (0..pair.dim_a())
        .map(|i| {
            let nabla = triad.e_rep().basis_action(i);
            let twists: Vec<Matrix> = (0..nb).map(|j| cocycle.get(i, j).clone()).collect();
            matrix_of_linear_map(m2 + nb, m2 + nb, |v| {
                let phi = unflatten(m, &v[..m2]);
                let b = &v[m2..];
                let twist = combine(b, &twists, (m, m));
                let mut out = flatten(&(&nabla.commutator(&phi) + &twist));
                out.extend(bott.basis_action(i).mul_vec(b));
                out
            })
        })
        .collect();
    Representation::new(pair.a().clone(), m2 + nb, action)
}

/// An intertwiner between two models, with the outcome of its checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelIso {
    pub forward: Matrix,
    pub inverse: Matrix,
    pub mutually_inverse: bool,
    pub equivariant: bool,
    /// For maps out of the quotient model: the lifted map kills `s_{A,L}(A)`.
    pub well_defined: bool,
}

impl ModelIso {
    pub fn passed(&self) -> bool {
        self.mutually_inverse && self.equivariant && self.well_defined
    }

    fn check(src: &Representation, dst: &Representation, forward: Matrix, inverse: Matrix) -> Self {
        let ds = src.module_dim();
        let dd = dst.module_dim();
        let shapes = forward.shape() == (dd, ds) && inverse.shape() == (ds, dd);
        let mutually_inverse =
            shapes && &forward * &inverse == Matrix::identity(dd) && &inverse * &forward == Matrix::identity(ds);
        let equivariant = shapes
            && src
                .action()
                .iter()
                .zip(dst.action())
                .all(|(x, y)| &forward * x == y * &forward);
        ModelIso {
            forward,
            inverse,
            mutually_inverse,
            equivariant,
            well_defined: true,
        }
    }
}

/// `(δ, l) -> (δ - ∇̄_{pr_A l}, pr_B l)` on `gl(E) × L`.
pub fn p_tilde_b(triad: &Triad) -> Matrix {
    let pair = triad.pair();
    let m2 = end_dim(triad);
    let top = Matrix::identity(m2).hstack(&-&(&nabla_bar_columns(triad) * pair.pr_a()));
    let bottom = Matrix::zeros(pair.dim_b(), m2).hstack(pair.pr_b());
    top.vstack(&bottom)
}

/// `(φ, b) -> (φ + ∇°_b, i_B b)` from `End(E) ⊕ B` (or `gl(E) × B`) into `gl(E) × L`.
fn lift_with(triad: &Triad, b_cols: &Matrix) -> Matrix {
    let m2 = end_dim(triad);
    let pair = triad.pair();
    blocks(
        &Matrix::identity(m2),
        b_cols,
        &Matrix::zeros(pair.dim_l(), m2),
        pair.i_b(),
    )
}

pub fn iso_quotient_embedded(triad: &Triad) -> Result<ModelIso> {
    let q = build_quotient_extension(triad)?;
    let e = build_embedded_extension(triad)?;
    let lifted = p_tilde_b(triad);
    let forward = &lifted * q.chart.section();
    let zero = Matrix::zeros(end_dim(triad), triad.pair().dim_b());
    let inverse = q.chart.projection() * &lift_with(triad, &zero);
    let mut iso = ModelIso::check(&q.rep, &e, forward, inverse);
    iso.well_defined = (&lifted * &s_al(triad)).is_zero();
    Ok(iso)
}

/// `(δ, b) -> (δ - ∇°_b) ⊕ b`, inverse `φ ⊕ b -> (φ + ∇°_b, b)`, with `∇°_b = ∇_{i_B b}`.
pub fn iso_embedded_split(triad: &Triad, conn: &Connection) -> Result<ModelIso> {
    let s = build_split_extension(triad, conn)?;
    let e = build_embedded_extension(triad)?;
    let m2 = end_dim(triad);
    let nb = triad.pair().dim_b();
    let cols = b_connection_columns(triad, conn);
    let id_b = Matrix::identity(nb);
    let forward = blocks(&Matrix::identity(m2), &-&cols, &Matrix::zeros(nb, m2), &id_b);
    let inverse = blocks(&Matrix::identity(m2), &cols, &Matrix::zeros(nb, m2), &id_b);
    Ok(ModelIso::check(&e, &s, forward, inverse))
}

/// `(δ, l) -> (δ - ∇_l) ⊕ pr_B l`, inverse `φ ⊕ b -> P(φ + ∇°_b, i_B b)`.
pub fn iso_quotient_split(triad: &Triad, conn: &Connection) -> Result<ModelIso> {
    let q = build_quotient_extension(triad)?;
    let s = build_split_extension(triad, conn)?;
    let pair = triad.pair();
    let m2 = end_dim(triad);
    let n = pair.dim_l();
    let conn_cols: Vec<Vec<Scalar>> = conn.assignment().iter().map(flatten).collect();
    let conn_mat = Matrix::from_cols(&conn_cols, m2)?;
    let lifted = blocks(
        &Matrix::identity(m2),
        &-&conn_mat,
        &Matrix::zeros(pair.dim_b(), m2),
        pair.pr_b(),
    );
    debug_assert_eq!(lifted.cols(), m2 + n);
    let forward = &lifted * q.chart.section();
    let inverse = q.chart.projection() * &lift_with(triad, &b_connection_columns(triad, conn));
    let mut iso = ModelIso::check(&q.rep, &s, forward, inverse);
    iso.well_defined = (&lifted * &s_al(triad)).is_zero();
    Ok(iso)
}

/// `(δ, b) -> (δ + ∇̄_{I b}, b)` from the embedded model for `i_B` to the one for `i_B'`.
pub fn iso_change_splitting(triad: &Triad, alternative_i_b: &Matrix) -> Result<ModelIso> {
    let other = triad.with_splitting(alternative_i_b.clone())?;
    let i = triad.pair().splitting_difference(alternative_i_b)?;
    let e1 = build_embedded_extension(triad)?;
    let e2 = build_embedded_extension(&other)?;
    let m2 = end_dim(triad);
    let nb = triad.pair().dim_b();
    let shift = &nabla_bar_columns(triad) * &i;
    let id_b = Matrix::identity(nb);
    let forward = blocks(&Matrix::identity(m2), &shift, &Matrix::zeros(nb, m2), &id_b);
    let inverse = blocks(&Matrix::identity(m2), &-&shift, &Matrix::zeros(nb, m2), &id_b);
    Ok(ModelIso::check(&e1, &e2, forward, inverse))
}

/// `φ ⊕ b -> (φ + ∇_{i_B b} - ∇'_{i_B b}) ⊕ b` between the split models of `∇` and `∇'`.
pub fn iso_change_connection(triad: &Triad, conn: &Connection, other: &Connection) -> Result<ModelIso> {
    let s1 = build_split_extension(triad, conn)?;
    let s2 = build_split_extension(triad, other)?;
    let m2 = end_dim(triad);
    let nb = triad.pair().dim_b();
    let shift = &b_connection_columns(triad, conn) - &b_connection_columns(triad, other);
    let id_b = Matrix::identity(nb);
    let forward = blocks(&Matrix::identity(m2), &shift, &Matrix::zeros(nb, m2), &id_b);
    let inverse = blocks(&Matrix::identity(m2), &-&shift, &Matrix::zeros(nb, m2), &id_b);
    Ok(ModelIso::check(&s1, &s2, forward, inverse))
}

/// A complementary `B`-connection: `∇°_b` for each basis vector of `B`, relative to `i_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BConnection {
    pub i_b: Matrix,
    pub assignment: Vec<Matrix>,
}

/// `∇°_b = ∇_{i_B b}`
pub fn b_connection_of(triad: &Triad, conn: &Connection) -> BConnection {
    BConnection {
        i_b: triad.pair().i_b().clone(),
        assignment: b_assignment(triad, conn),
    }
}

/// `∇_l = ∇̄_{pr_A l} + ∇°_{pr_B l}`
pub fn connection_of(triad: &Triad, b: &BConnection) -> Result<Connection> {
    if &b.i_b != triad.pair().i_b() {
        return Err(Error::Dimension("B-connection belongs to another splitting".into()));
    }
    extend_connection(triad, &b.assignment)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub tested: usize,
    pub b_to_l_to_b: bool,
    pub l_to_b_to_l: bool,
    /// `dim gl(E) + dim A + dim B`
    pub expected_dim: usize,
    /// Rank of `End(E) ⊕ s_{A,L}(A) ⊕ {(∇°_b, i_B b)}` inside `gl(E) × L`, per tested connection.
    pub decomposition_ranks: Vec<usize>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.b_to_l_to_b && self.l_to_b_to_l && self.decomposition_ranks.iter().all(|&r| r == self.expected_dim)
    }
}

pub fn b_connection_roundtrip(triad: &Triad, family: &[BConnection]) -> Result<RoundTrip> {
    let pair = triad.pair();
    let m2 = end_dim(triad);
    let expected_dim = m2 + pair.dim_a() + pair.dim_b();
    let mut report = RoundTrip {
        tested: family.len(),
        b_to_l_to_b: true,
        l_to_b_to_l: true,
        expected_dim,
        decomposition_ranks: Vec::new(),
    };
    for b in family {
        let conn = connection_of(triad, b)?;
        check_extending(triad, &conn)?;
        let back = b_connection_of(triad, &conn);
        report.b_to_l_to_b &= &back == b;
        report.l_to_b_to_l &= connection_of(triad, &back)? == conn;
        let spanning = end_inclusion(m2, pair.dim_l())
            .hstack(&s_al(triad))
            .hstack(&b_connection_columns(triad, &conn).vstack(pair.i_b()));
        report.decomposition_ranks.push(spanning.rank());
    }
    if expected_dim != m2 + pair.dim_l() {
        return Err(Error::Internal("dim A + dim B != dim L".into()));
    }
    Ok(report)
}

/// The four equivalent formulations of `A`-compatibility, computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompatibilityFlags {
    /// `R(a, l) = 0` for all `a ∈ A`, `l ∈ L`.
    pub a_l_curvature_zero: bool,
    /// `R(a ⊗ b) = 0`.
    pub cocycle_zero: bool,
    /// `b -> 0 ⊕ b` is an `A`-module map `B -> End(E) ⊕ B`.
    pub split_section_equivariant: bool,
    /// `b -> (∇°_b, b)` is an `A`-module map `B -> gl(E) × B`.
    pub embedded_section_equivariant: bool,
}

impl CompatibilityFlags {
    pub fn compatible(&self) -> bool {
        self.cocycle_zero
    }
}

/// Errors with [`Error::Internal`] if the four flags disagree.
pub fn compatibility_conditions(triad: &Triad, conn: &Connection) -> Result<CompatibilityFlags> {
    let pair = triad.pair();
    let bott = pair.bott_connection()?;
    let m2 = end_dim(triad);
    let nb = pair.dim_b();
    let split = build_split_extension(triad, conn)?;
    let emb = build_embedded_extension(triad)?;
    let j = Matrix::zeros(m2, nb).vstack(&Matrix::identity(nb));
    let k = b_connection_columns(triad, conn).vstack(&Matrix::identity(nb));
    let intertwines = |rep: &Representation, map: &Matrix| {
        (0..pair.dim_a()).all(|i| map * bott.basis_action(i) == rep.basis_action(i) * map)
    };
    let flags = CompatibilityFlags {
        a_l_curvature_zero: a_l_curvature(triad, conn)?.is_zero(),
        cocycle_zero: atiyah_cocycle(triad, conn)?.is_zero(),
        split_section_equivariant: intertwines(&split, &j),
        embedded_section_equivariant: intertwines(&emb, &k),
    };
    let all = [
        flags.a_l_curvature_zero,
        flags.cocycle_zero,
        flags.split_section_equivariant,
        flags.embedded_section_equivariant,
    ];
    if all.iter().any(|&f| f != all[0]) {
        return Err(Error::Internal(format!("compatibility conditions disagree: {flags:?}")));
    }
    Ok(flags)
}

/// Exactness of `X --f--> Y --g--> Z` at every spot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCheck {
    pub name: String,
    pub injective: bool,
    pub surjective: bool,
    pub composite_zero: bool,
    pub exact_middle: bool,
}

impl SequenceCheck {
    pub fn of(name: &str, f: &Matrix, g: &Matrix) -> Self {
        let composable = f.rows() == g.cols();
        let rank_f = f.rank();
        SequenceCheck {
            name: name.to_string(),
            injective: rank_f == f.cols(),
            surjective: g.rank() == g.rows(),
            composite_zero: composable && (g * f).is_zero(),
            exact_middle: composable && rank_f == g.kernel().dim(),
        }
    }

    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.composite_zero && self.exact_middle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonReport {
    pub sequences: Vec<SequenceCheck>,
    pub diagrams: Vec<(String, bool)>,
}

impl HexagonReport {
    pub fn passed(&self) -> bool {
        self.sequences.iter().all(SequenceCheck::passed) && self.diagrams.iter().all(|(_, ok)| *ok)
    }
}

/// Exactness of the Atiyah-type sequences relating `D_A(E) = gl(E) × A`,
/// `D_L(E) = gl(E) × L` and the quotient `D_B(E)`, and commutativity of the maps between them.
pub fn hexagon_diagnostics(triad: &Triad, conn: &Connection) -> Result<HexagonReport> {
    check_extending(triad, conn)?;
    let pair = triad.pair();
    let m2 = end_dim(triad);
    let (n, na, nb) = (pair.dim_l(), pair.dim_a(), pair.dim_b());
    let q = build_quotient_extension(triad)?;
    let qe = iso_quotient_embedded(triad)?;
    let qs = iso_quotient_split(triad, conn)?;
    let es = iso_embedded_split(triad, conn)?;

    let nabla_bar = nabla_bar_columns(triad);
    let iota_a = end_inclusion(m2, na);
    let sigma_a = second_projection(m2, na);
    let s_a = nabla_bar.vstack(&Matrix::identity(na));
    let theta_a = Matrix::identity(m2).hstack(&-&nabla_bar);
    let iota_l = end_inclusion(m2, n);
    let sigma_l = second_projection(m2, n);
    let f_al = end_plus(m2, pair.i_a());
    let s_al = s_al(triad);
    let p_b = q.chart.projection().clone();
    let iota_b = &p_b * &iota_l;
    let sigma_l_b = pair.pr_b() * &sigma_l;
    let sigma_b = &sigma_l_b * q.chart.section();
    let p_tilde = p_tilde_b(triad);
    let iota_e = end_inclusion(m2, nb);
    let sigma_e = second_projection(m2, nb);

    let sequences = vec![
        SequenceCheck::of("End -> D_A -> A", &iota_a, &sigma_a),
        SequenceCheck::of("End -> D_L -> L", &iota_l, &sigma_l),
        SequenceCheck::of("End -> D_B -> B", &iota_b, &sigma_b),
        SequenceCheck::of("A -> L -> B", pair.i_a(), pair.pr_b()),
        SequenceCheck::of("A -> D_L -> D_B", &s_al, &p_b),
        SequenceCheck::of("A -> D_A -> End", &s_a, &theta_a),
        SequenceCheck::of("D_A -> D_L -> B", &f_al, &sigma_l_b),
        SequenceCheck::of("End -> gl x B -> B (embedded)", &iota_e, &sigma_e),
        SequenceCheck::of("End -> End + B -> B (split)", &iota_e, &sigma_e),
        SequenceCheck::of("A -> D_L -> gl x B (embedded)", &s_al, &p_tilde),
    ];

    let id = Matrix::identity;
    let d = |name: &str, ok: bool| (name.to_string(), ok);
    let diagrams = vec![
        d("f_AL s_A = s_AL", &f_al * &s_a == s_al),
        d("sigma_L s_AL = i_A", &sigma_l * &s_al == *pair.i_a()),
        d("P_B f_AL = iota_B theta_A", &p_b * &f_al == &iota_b * &theta_a),
        d("sigma_B P_B = pr_B sigma_L", &sigma_b * &p_b == sigma_l_b),
        d("f_AL iota_A = iota_L", &f_al * &iota_a == iota_l),
        d("i_A sigma_A = sigma_L f_AL", pair.i_a() * &sigma_a == &sigma_l * &f_al),
        d("theta_A iota_A = id", &theta_a * &iota_a == id(m2)),
        d("theta_A s_A = 0", (&theta_a * &s_a).is_zero()),
        d(
            "iota_A theta_A + s_A sigma_A = id",
            &(&iota_a * &theta_a) + &(&s_a * &sigma_a) == id(m2 + na),
        ),
        d("P~_B = (quotient -> embedded) P_B", p_tilde == &qe.forward * &p_b),
        d("(quotient -> embedded) iota_B = iota", &qe.forward * &iota_b == iota_e),
        d(
            "sigma (quotient -> embedded) = sigma_B",
            &sigma_e * &qe.forward == sigma_b,
        ),
        d("(quotient -> split) iota_B = iota", &qs.forward * &iota_b == iota_e),
        d("sigma (quotient -> split) = sigma_B", &sigma_e * &qs.forward == sigma_b),
        d("(embedded -> split) iota = iota", &es.forward * &iota_e == iota_e),
        d("sigma (embedded -> split) = sigma", &sigma_e * &es.forward == sigma_e),
        d(
            "(embedded -> split)(quotient -> embedded) = quotient -> split",
            &es.forward * &qe.forward == qs.forward,
        ),
    ];
    Ok(HexagonReport { sequences, diagrams })
}

/// All model checks for one triad and connection.
#[derive(Clone, Debug)]
pub struct ModelCoherence {
    pub quotient_flat: bool,
    pub quotient_well_defined: bool,
    pub embedded_flat: bool,
    pub split_flat: bool,
    pub quotient_embedded: ModelIso,
    pub embedded_split: ModelIso,
    pub quotient_split: ModelIso,
}

impl ModelCoherence {
    pub fn passed(&self) -> bool {
        self.quotient_flat
            && self.quotient_well_defined
            && self.embedded_flat
            && self.split_flat
            && self.quotient_embedded.passed()
            && self.embedded_split.passed()
            && self.quotient_split.passed()
    }
}

pub fn model_coherence(triad: &Triad, conn: &Connection) -> Result<ModelCoherence> {
    let q = build_quotient_extension(triad)?;
    Ok(ModelCoherence {
        quotient_flat: q.rep.is_flat(),
        quotient_well_defined: q.well_defined,
        embedded_flat: build_embedded_extension(triad)?.is_flat(),
        split_flat: build_split_extension(triad, conn)?.is_flat(),
        quotient_embedded: iso_quotient_embedded(triad)?,
        embedded_split: iso_embedded_split(triad, conn)?,
        quotient_split: iso_quotient_split(triad, conn)?,
    })
}
