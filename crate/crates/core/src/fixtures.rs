//! Standard algebras, triads and a seeded sampler for randomized checks.
//!
//! Random scalars have numerators in `[-3, 3]` and denominators in `{1, 2}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atiyah::{extend_connection, Connection, Triad};
use crate::homogeneous::WangProblem;
use crate::lie::{LieAlgebra, LiePair, Representation};
use crate::linalg::{frac, int, Matrix, Scalar};

/// `sl2` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, int(1))]).expect("sl2 table")
}

/// The standard representation of `sl2` on `Q^2`.
pub fn sl2_standard() -> Representation {
    Representation::new(
        sl2(),
        2,
        vec![
            Matrix::from_i64(&[&[1, 0], &[0, -1]]),
            Matrix::from_i64(&[&[0, 1], &[0, 0]]),
            Matrix::from_i64(&[&[0, 0], &[1, 0]]),
        ],
    )
    .expect("standard rep shape")
}

/// The adjoint representation of `sl2`.
pub fn sl2_adjoint() -> Representation {
    let g = sl2();
    let action = (0..3).map(|i| g.ad(&crate::linalg::unit_vec(3, i))).collect();
    Representation::new(g, 3, action).expect("adjoint rep shape")
}

/// The Borel subalgebra `span(h, e)` of `sl2`.
pub fn borel_inclusion() -> Matrix {
    Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]])
}

/// Restriction of a representation of `L` along the inclusion of `pair.a()`.
pub fn restrict_rep(pair: &LiePair, rep: &Representation) -> Representation {
    let action = pair.i_a().columns().iter().map(|a| rep.act(a)).collect();
    Representation::new(pair.a().clone(), rep.module_dim(), action).expect("restriction shape")
}

pub fn sl2_borel_pair() -> LiePair {
    LiePair::new(sl2(), borel_inclusion()).expect("Borel is a subalgebra")
}

/// `(sl2, Borel, Q^2)` with the restricted standard action.
pub fn sl2_borel_standard() -> Triad {
    let pair = sl2_borel_pair();
    let e = restrict_rep(&pair, &sl2_standard());
    Triad::new(pair, e).expect("restricted rep is flat")
}

/// `(sl2, Borel, sl2)` with the restricted adjoint action.
pub fn sl2_borel_adjoint() -> Triad {
    let pair = sl2_borel_pair();
    let e = restrict_rep(&pair, &sl2_adjoint());
    Triad::new(pair, e).expect("restricted rep is flat")
}

/// `span(x, y)` with `[x, y] = y`.
pub fn two_dim() -> LieAlgebra {
    LieAlgebra::from_brackets(2, &[(0, 1, 1, int(1))]).expect("two-dim table")
}

/// `(two_dim, span(y), Q)` with `∇̄_y = λ`.
pub fn two_dim_triad(lambda: Scalar) -> Triad {
    let pair = LiePair::new(two_dim(), Matrix::from_i64(&[&[0], &[1]])).expect("span(y) is an ideal");
    let e = Representation::new(pair.a().clone(), 1, vec![Matrix::from_fn(1, 1, |_, _| lambda.clone())])
        .expect("scalar action shape");
    Triad::new(pair, e).expect("1-dim algebras act flatly")
}

/// Heisenberg algebra `span(x, y, z)` with `[x, y] = z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, 2, int(1))]).expect("Heisenberg table")
}

/// `(heisenberg, span(z), Q^2)` with `∇̄_z = z_action`.
pub fn heisenberg_triad(z_action: Matrix) -> Triad {
    let pair = LiePair::new(heisenberg(), Matrix::from_i64(&[&[0], &[0], &[1]])).expect("center");
    let e = Representation::new(pair.a().clone(), z_action.rows(), vec![z_action]).expect("square action");
    Triad::new(pair, e).expect("1-dim algebras act flatly")
}

/// `A = L = sl2` acting on `Q^2`.
pub fn sl2_full_triad() -> Triad {
    let pair = LiePair::new(sl2(), Matrix::identity(3)).expect("L is a subalgebra of itself");
    let e = restrict_rep(&pair, &sl2_standard());
    Triad::new(pair, e).expect("standard rep is flat")
}

/// `A = 0 ⊂ sl2` with `E = Q^2`.
pub fn sl2_zero_triad() -> Triad {
    let pair = LiePair::new(sl2(), Matrix::zeros(3, 0)).expect("zero subalgebra");
    Triad::new(pair.clone(), Representation::trivial(pair.a().clone(), 2)).expect("zero algebra")
}

/// Rotation algebra: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn rotation() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (2, 0, 1, int(1))]).expect("rotation table")
}

/// The deterministic triads used for the model-level checks.
pub fn fixture_triads() -> Vec<(&'static str, Triad)> {
    vec![
        ("sl2/borel/standard", sl2_borel_standard()),
        ("sl2/borel/adjoint", sl2_borel_adjoint()),
        ("two-dim/lambda=1", two_dim_triad(int(1))),
        ("two-dim/lambda=0", two_dim_triad(int(0))),
        (
            "heisenberg/center",
            heisenberg_triad(Matrix::from_i64(&[&[1, 2], &[0, -1]])),
        ),
        ("sl2/full", sl2_full_triad()),
        ("sl2/zero", sl2_zero_triad()),
    ]
}

/// Homogeneous-space problems `(g, h, k, dφ)`. All but `sl2/borel` are reductive.
pub fn wang_fixtures() -> Vec<(&'static str, WangProblem)> {
    let e3 = Matrix::from_i64(&[&[0], &[0], &[1]]);
    let e1 = Matrix::from_i64(&[&[1], &[0], &[0]]);
    vec![
        (
            "rotation/isotropy",
            WangProblem::reductive(rotation(), e3.clone()).expect("span(e3)"),
        ),
        (
            "rotation/so3",
            WangProblem::new(rotation(), e3.clone(), rotation(), e3).expect("inclusion"),
        ),
        (
            "abelian/zero",
            WangProblem::new(LieAlgebra::abelian(3), e1, LieAlgebra::abelian(2), Matrix::zeros(2, 1))
                .expect("zero map"),
        ),
        (
            "sl2/full",
            WangProblem::reductive(sl2(), Matrix::identity(3)).expect("whole algebra"),
        ),
        (
            "sl2/borel",
            WangProblem::reductive(sl2(), borel_inclusion()).expect("Borel"),
        ),
    ]
}

/// Seeded source of small rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        let num = self.rng.gen_range(-3i64..=3);
        let den = if self.rng.gen_bool(0.5) { 1 } else { 2 };
        frac(num, den)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.scalar())
    }

    pub fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }

    /// An arbitrary (usually non-flat) connection on `l` with values in `End(Q^m)`.
    pub fn connection(&mut self, l: &LieAlgebra, m: usize) -> Connection {
        let assignment = (0..l.dim()).map(|_| self.matrix(m, m)).collect();
        Connection::new(l.clone(), m, assignment).expect("square matrices")
    }

    /// A random extending connection of the triad.
    pub fn extending_connection(&mut self, triad: &Triad) -> Connection {
        let m = triad.module_dim();
        let b: Vec<Matrix> = (0..triad.pair().dim_b()).map(|_| self.matrix(m, m)).collect();
        extend_connection(triad, &b).expect("shapes match the triad")
    }

    /// One of the randomized triad families: sl2/Borel (standard or adjoint),
    /// the two-dim family with `λ ∈ {-2..2}`, or Heisenberg with a random `∇̄_z`.
    pub fn family_triad(&mut self) -> Triad {
        match self.index(4) {
            0 => sl2_borel_standard(),
            1 => sl2_borel_adjoint(),
            2 => two_dim_triad(int(self.index(5) as i64 - 2)),
            _ => heisenberg_triad(self.matrix(2, 2)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_algebras_are_valid() {
        for g in [sl2(), two_dim(), heisenberg(), rotation()] {
            assert!(g.validate().is_valid());
        }
        assert!(sl2_standard().is_flat());
        assert!(sl2_adjoint().is_flat());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<Scalar> = Sampler::new(7).vector(20);
        let b: Vec<Scalar> = Sampler::new(7).vector(20);
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.numer() <= &3.into() && x.numer() >= &(-3).into()));
    }
}
