//! Chevalley-Eilenberg cochains, the Atiyah class and the compatible-connection solver.
//!
//! A `k`-cochain with values in `V` is stored as one block of `dim V` coordinates per
//! increasing multi-index `i_1 < ... < i_k`, blocks ordered lexicographically.

use std::collections::HashMap;

use num_traits::Zero;

use crate::atiyah::{atiyah_cocycle, extend_connection, Connection, CurvatureForm, Triad};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Representation};
use crate::linalg::{
    affine_parts, flatten, is_zero_vec, matrix_of_linear_map, solve_affine, unflatten, vec_sub, zero_vec,
    AffineSolutionSet, Matrix, Scalar,
};

/// Highest cochain degree the complex is built in.
pub const MAX_DEGREE: usize = 3;

/// Lexicographically ordered increasing multi-indices of length `k` from `0..n`.
#[derive(Clone, Debug)]
pub struct MultiIndexBasis {
    indices: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl MultiIndexBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let mut indices = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut indices);
        let lookup = indices.iter().enumerate().map(|(p, idx)| (idx.clone(), p)).collect();
        MultiIndexBasis { indices, lookup }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    /// Position and sign of an arbitrary index tuple; `None` when an index repeats.
    pub fn locate(&self, idx: &[usize]) -> Option<(usize, bool)> {
        let mut sorted = idx.to_vec();
        let mut negative = false;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        self.lookup.get(&sorted).map(|&p| (p, negative))
    }
}

/// `ω(e_{idx_0}, ..., e_{idx_{k-1}})` for a `k`-cochain with values in `K^v`.
fn evaluate(basis: &MultiIndexBasis, v: usize, omega: &[Scalar], idx: &[usize]) -> Vec<Scalar> {
    match basis.locate(idx) {
        None => zero_vec(v),
        Some((p, negative)) => {
            let block = &omega[p * v..(p + 1) * v];
            if negative {
                block.iter().map(|x| -x).collect()
            } else {
                block.to_vec()
            }
        }
    }
}

/// `(dω)(l_0..l_k) = Σ_i (-1)^i ρ(l_i) ω(.., l̂_i, ..)
///                 + Σ_{i<j} (-1)^{i+j} ω([l_i,l_j], .., l̂_i, .., l̂_j, ..)`
///
/// `action` holds one `v x v` matrix per basis vector of `algebra`; it need not be flat.
pub fn exterior_derivative(
    algebra: &LieAlgebra,
    action: &[Matrix],
    v: usize,
    k: usize,
    omega: &[Scalar],
) -> Vec<Scalar> {
    let n = algebra.dim();
    let src = MultiIndexBasis::new(n, k);
    let dst = MultiIndexBasis::new(n, k + 1);
    assert_eq!(omega.len(), src.len() * v, "cochain has the wrong length");
    let mut out = Vec::with_capacity(dst.len() * v);
    for idx in dst.indices() {
        let mut val = zero_vec(v);
        for i in 0..=k {
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i)
                .map(|(_, &x)| x)
                .collect();
            let w = action[idx[i]].mul_vec(&evaluate(&src, v, omega, &rest));
            accumulate(&mut val, &w, i % 2 == 1);
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &x)| x)
                    .collect();
                let br = algebra.basis_bracket(idx[i], idx[j]);
                for (t, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = vec![t];
                    args.extend_from_slice(&rest);
                    let w = evaluate(&src, v, omega, &args);
                    let scaled: Vec<Scalar> = w.iter().map(|x| x * c).collect();
                    accumulate(&mut val, &scaled, (i + j) % 2 == 1);
                }
            }
        }
        out.extend(val);
    }
    out
}

fn accumulate(acc: &mut [Scalar], w: &[Scalar], negate: bool) {
    for (a, x) in acc.iter_mut().zip(w) {
        if negate {
            *a -= x;
        } else {
            *a += x;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The Chevalley-Eilenberg complex of a flat representation, degrees `0..=MAX_DEGREE`.
#[derive(Clone, Debug)]
pub struct CeComplex {
    rep: Representation,
    cochain_dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CeComplex {
    pub fn new(rep: Representation) -> Result<Self> {
        if let Some(&(i, j)) = rep.flatness_violations().first() {
            return Err(Error::NotFlat(i, j));
        }
        let n = rep.algebra().dim();
        let v = rep.module_dim();
        let cochain_dims: Vec<usize> = (0..=MAX_DEGREE + 1).map(|k| binomial(n, k) * v).collect();
        let differentials: Vec<Matrix> = (0..=MAX_DEGREE)
            .map(|k| {
                matrix_of_linear_map(cochain_dims[k], cochain_dims[k + 1], |w| {
                    exterior_derivative(rep.algebra(), rep.action(), v, k, w)
                })
            })
            .collect();
        for k in 0..MAX_DEGREE {
            if !(&differentials[k + 1] * &differentials[k]).is_zero() {
                return Err(Error::Internal(format!("d∘d != 0 in degree {k}")));
            }
        }
        Ok(CeComplex {
            rep,
            cochain_dims,
            differentials,
        })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    /// Dimensions of `Λ^k A* ⊗ V` for `k = 0..=MAX_DEGREE`.
    pub fn cochain_dims(&self) -> &[usize] {
        &self.cochain_dims[..=MAX_DEGREE]
    }

    /// `d_k: C^k -> C^{k+1}` for `k < MAX_DEGREE`.
    pub fn differential(&self, k: usize) -> Result<&Matrix> {
        if k >= MAX_DEGREE {
            return Err(Error::UnsupportedDegree(k));
        }
        Ok(&self.differentials[k])
    }

    /// `dim ker d_k - rank d_{k-1}` for `k < MAX_DEGREE`.
    pub fn cohomology_dim(&self, k: usize) -> Result<usize> {
        let ker = self.differential(k)?.kernel().dim();
        let im = if k == 0 { 0 } else { self.differential(k - 1)?.rank() };
        Ok(ker - im)
    }

    pub fn is_cocycle(&self, k: usize, omega: &[Scalar]) -> Result<bool> {
        let d = self.differential(k)?;
        if omega.len() != d.cols() {
            return Err(Error::Dimension(format!("{}-cochain of length {}", k, omega.len())));
        }
        Ok(is_zero_vec(&d.mul_vec(omega)))
    }

    /// All `s` with `d_{k-1} s = ω`. Requires `ω` to be a cocycle and `k >= 1`.
    pub fn coboundary_witness(&self, k: usize, omega: &[Scalar]) -> Result<AffineSolutionSet> {
        if k == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        if !self.is_cocycle(k, omega)? {
            return Err(Error::NotCocycle(k));
        }
        solve_affine(self.differential(k - 1)?, omega)
    }
}

/// The `A`-module `B* ⊗ End(E)`, coordinates `j * m² + (p * m + q)` for `s(b_j)[p][q]`.
///
/// `(a · s)(b) = [∇̄_a, s(b)] - s(D_a b)`.
pub fn coefficient_module(triad: &Triad) -> Result<Representation> {
    let pair = triad.pair();
    let bott = pair.bott_connection()?;
    let m = triad.module_dim();
    let nb = pair.dim_b();
    let dim = nb * m * m;
    let action = (0..pair.dim_a())
        .map(|i| {
            let nabla = triad.e_rep().basis_action(i);
            let d = bott.basis_action(i);
            matrix_of_linear_map(dim, dim, |s| {
                let blocks = unpack_b_assignment(m, nb, s);
                let mut out = Vec::with_capacity(dim);
                for j in 0..nb {
                    let mut val = nabla.commutator(&blocks[j]);
                    for (k, block) in blocks.iter().enumerate() {
                        let c = &d[(k, j)];
                        if !c.is_zero() {
                            val = &val - &block.scale(c);
                        }
                    }
                    out.extend(flatten(&val));
                }
                out
            })
        })
        .collect();
    let rep = Representation::new(pair.a().clone(), dim, action)?;
    if let Some(&(i, j)) = rep.flatness_violations().first() {
        return Err(Error::Internal(format!("coefficient module not flat at ({i}, {j})")));
    }
    Ok(rep)
}

/// Packs one `m x m` matrix per `B`-basis vector into coefficient-module coordinates.
pub fn pack_b_assignment(blocks: &[Matrix]) -> Vec<Scalar> {
    blocks.iter().flat_map(flatten).collect()
}

pub fn unpack_b_assignment(m: usize, nb: usize, s: &[Scalar]) -> Vec<Matrix> {
    assert_eq!(s.len(), nb * m * m, "B-assignment vector has the wrong length");
    (0..nb).map(|j| unflatten(m, &s[j * m * m..(j + 1) * m * m])).collect()
}

/// The 1-cochain `ω(a_i)(b_j) = R(a_i ⊗ b_j)` of the coefficient module.
pub fn cocycle_cochain(form: &CurvatureForm) -> Vec<Scalar> {
    let (na, nb) = form.shape();
    let mut out = Vec::with_capacity(na * nb * form.module_dim().pow(2));
    for i in 0..na {
        for j in 0..nb {
            out.extend(flatten(form.get(i, j)));
        }
    }
    out
}

/// Rank data certifying that a cocycle is not a coboundary:
/// `rank [d_0 | ω] > rank d_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMembership {
    pub rank_d0: usize,
    pub rank_augmented: usize,
}

#[derive(Clone, Debug)]
pub struct AtiyahClassResult {
    pub cocycle: CurvatureForm,
    pub vanishes: bool,
    /// `s ∈ B* ⊗ End(E)` with `d_A s = ω`, when the class vanishes.
    pub witness: Option<Vec<Scalar>>,
    pub certificate: Option<NonMembership>,
    pub h0_dim: usize,
    pub h1_dim: usize,
}

pub fn atiyah_class(triad: &Triad) -> Result<AtiyahClassResult> {
    let pair = triad.pair();
    let m = triad.module_dim();
    let conn = extend_connection(triad, &vec![Matrix::zeros(m, m); pair.dim_b()])?;
    let cocycle = atiyah_cocycle(triad, &conn)?;
    let omega = cocycle_cochain(&cocycle);
    let complex = CeComplex::new(coefficient_module(triad)?)?;
    if !complex.is_cocycle(1, &omega)? {
        return Err(Error::Internal("Atiyah cocycle is not closed".into()));
    }
    let set = complex.coboundary_witness(1, &omega)?;
    let d0 = complex.differential(0)?;
    let (witness, certificate) = match set.particular() {
        Some(s) => (Some(s.to_vec()), None),
        None => {
            let aug = d0.hstack(&Matrix::from_cols(std::slice::from_ref(&omega), d0.rows())?);
            let cert = NonMembership {
                rank_d0: d0.rank(),
                rank_augmented: aug.rank(),
            };
            (None, Some(cert))
        }
    };
    Ok(AtiyahClassResult {
        cocycle,
        vanishes: witness.is_some(),
        witness,
        certificate,
        h0_dim: complex.cohomology_dim(0)?,
        h1_dim: complex.cohomology_dim(1)?,
    })
}

/// Both sides of `R^{∇'} - R^∇ = d_A((∇' - ∇) ∘ i_B)` as 1-cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCheck {
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl ShiftCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn connection_shift_check(triad: &Triad, conn: &Connection, other: &Connection) -> Result<ShiftCheck> {
    let r = cocycle_cochain(&atiyah_cocycle(triad, conn)?);
    let r2 = cocycle_cochain(&atiyah_cocycle(triad, other)?);
    let delta: Vec<Matrix> = triad
        .pair()
        .i_b()
        .columns()
        .iter()
        .map(|b| &other.at(b) - &conn.at(b))
        .collect();
    let complex = CeComplex::new(coefficient_module(triad)?)?;
    let rhs = complex.differential(0)?.mul_vec(&pack_b_assignment(&delta));
    Ok(ShiftCheck {
        lhs: vec_sub(&r2, &r),
        rhs,
    })
}

/// All `B`-assignments whose extension is `A`-compatible, in coefficient-module coordinates.
#[derive(Clone, Debug)]
pub struct CompatibleSolutions {
    pub set: AffineSolutionSet,
    pub h0_dim: usize,
    pub module_dim: usize,
    pub dim_b: usize,
}

impl CompatibleSolutions {
    /// The connection for the particular solution plus `coeffs` times the homogeneous basis.
    pub fn b_assignment(&self, coeffs: &[Scalar]) -> Option<Vec<Matrix>> {
        let s = self.set.element(coeffs)?;
        Some(unpack_b_assignment(self.module_dim, self.dim_b, &s))
    }

    pub fn contains(&self, b_assignment: &[Matrix]) -> bool {
        let Some(p) = self.set.particular() else {
            return false;
        };
        self.set
            .homogeneous()
            .contains(&vec_sub(&pack_b_assignment(b_assignment), p))
    }
}

pub fn compatible_connection_solve(triad: &Triad) -> Result<CompatibleSolutions> {
    let pair = triad.pair();
    let m = triad.module_dim();
    let nb = pair.dim_b();
    let unknowns = nb * m * m;
    let equations = pair.dim_a() * nb * m * m;
    let mut failure = None;
    let (lin, constant) = affine_parts(unknowns, equations, |x| {
        let blocks = unpack_b_assignment(m, nb, x);
        match extend_connection(triad, &blocks).and_then(|c| atiyah_cocycle(triad, &c)) {
            Ok(form) => cocycle_cochain(&form),
            Err(e) => {
                failure = Some(e);
                zero_vec(equations)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let rhs: Vec<Scalar> = constant.iter().map(|x| -x).collect();
    let set = solve_affine(&lin, &rhs)?;
    let class = atiyah_class(triad)?;
    if set.is_empty() == class.vanishes {
        return Err(Error::Internal("solver and Atiyah class disagree on vanishing".into()));
    }
    if !set.is_empty() && set.dim() != class.h0_dim {
        return Err(Error::Internal(format!(
            "solution space of dimension {} but H^0 of dimension {}",
            set.dim(),
            class.h0_dim
        )));
    }
    Ok(CompatibleSolutions {
        set,
        h0_dim: class.h0_dim,
        module_dim: m,
        dim_b: nb,
    })
}
