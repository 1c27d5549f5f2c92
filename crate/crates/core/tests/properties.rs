use lie_atiyah::atiyah::{
    atiyah_cocycle, bianchi, extend_connection, is_a_compatible, split_iso_check, universal_construction,
};
use lie_atiyah::cohomology::{compatible_connection_solve, connection_shift_check, unpack_b_assignment};
use lie_atiyah::extension::{
    b_connection_of, b_connection_roundtrip, compatibility_conditions, iso_change_connection, iso_change_splitting,
    model_coherence,
};
use lie_atiyah::fixtures::{heisenberg_triad, rotation, sl2, sl2_borel_standard, two_dim, wang_fixtures, Sampler};
use lie_atiyah::homogeneous::wang_solve;
use lie_atiyah::linalg::{frac, is_zero_vec, parse_scalar, solve_affine, Matrix};
use lie_atiyah::matched::{derivation_algebra, derivation_witness};
use lie_atiyah::Scalar;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| frac(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), rows * cols)
        .prop_map(move |v| Matrix::from_row_major(rows, cols, v).expect("sized"))
}

fn shaped_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in shaped_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(is_zero_vec(&m.mul_vec(&v)));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn inverse_when_full_rank(m in matrix(3, 3)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(&m * &inv, Matrix::identity(3));
                prop_assert_eq!(&inv * &m, Matrix::identity(3));
            }
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn affine_solutions_solve(m in shaped_matrix(), x in prop::collection::vec(scalar(), 4)) {
        let x = &x[..m.cols()];
        let b = m.mul_vec(x);
        let set = solve_affine(&m, &b).unwrap();
        prop_assert!(!set.is_empty());
        for s in set.sample_elements() {
            prop_assert_eq!(m.mul_vec(&s), b.clone());
        }
        prop_assert_eq!(set.dim(), m.cols() - m.rank());
    }

    #[test]
    fn scalar_text_round_trip(x in scalar(), y in scalar()) {
        let z = &x * &y - &x;
        prop_assert_eq!(parse_scalar(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn brackets_antisymmetric_and_jacobi(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        for l in [sl2(), two_dim(), rotation()] {
            let n = l.dim();
            let (x, y, z) = (rng.vector(n), rng.vector(n), rng.vector(n));
            let xy = l.bracket(&x, &y);
            let yx: Vec<Scalar> = l.bracket(&y, &x).iter().map(|c| -c).collect();
            prop_assert_eq!(&xy, &yx);
            let j1 = l.bracket(&x, &l.bracket(&y, &z));
            let j2 = l.bracket(&y, &l.bracket(&z, &x));
            let j3 = l.bracket(&z, &xy);
            let sum: Vec<Scalar> = (0..n).map(|i| &j1[i] + &j2[i] + &j3[i]).collect();
            prop_assert!(is_zero_vec(&sum));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cocycle_shift_and_compatibility(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        let t = rng.family_triad();
        let c1 = rng.extending_connection(&t);
        let c2 = rng.extending_connection(&t);
        prop_assert!(connection_shift_check(&t, &c1, &c2).unwrap().holds());
        let flags = compatibility_conditions(&t, &c1).unwrap();
        prop_assert_eq!(flags.compatible(), atiyah_cocycle(&t, &c1).unwrap().is_zero());
        prop_assert_eq!(flags.compatible(), is_a_compatible(&t, &c1).unwrap());
    }

    #[test]
    fn split_algebra_identities(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        let conn = rng.connection(&sl2(), 2);
        prop_assert!(split_iso_check(&conn).unwrap().passed());
        prop_assert!(bianchi(&conn).is_zero());
        prop_assert!(universal_construction(&conn).unwrap().passed());
    }

    #[test]
    fn models_coherent_on_random_heisenberg(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        let t = heisenberg_triad(rng.matrix(2, 2));
        let conn = rng.extending_connection(&t);
        prop_assert!(model_coherence(&t, &conn).unwrap().passed());
    }

    #[test]
    fn change_of_splitting_and_connection(seed in any::<u64>(), x in scalar(), y in scalar()) {
        let mut rng = Sampler::new(seed);
        let t = sl2_borel_standard();
        let alt = Matrix::from_cols(&[vec![x, y, frac(1, 1)]], 3).unwrap();
        prop_assert!(iso_change_splitting(&t, &alt).unwrap().passed());
        let c1 = rng.extending_connection(&t);
        let c2 = rng.extending_connection(&t);
        prop_assert!(iso_change_connection(&t, &c1, &c2).unwrap().passed());
    }

    #[test]
    fn b_connections_round_trip(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        let t = rng.family_triad();
        let family: Vec<_> = (0..3).map(|_| b_connection_of(&t, &rng.extending_connection(&t))).collect();
        prop_assert!(b_connection_roundtrip(&t, &family).unwrap().passed());
    }

    #[test]
    fn compatible_solutions_are_compatible(seed in any::<u64>(), coeffs in prop::collection::vec(scalar(), 8)) {
        let mut rng = Sampler::new(seed);
        let t = rng.family_triad();
        let sol = compatible_connection_solve(&t).unwrap();
        if let Some(blocks) = sol.b_assignment(&coeffs[..sol.set.dim().min(8)]).filter(|_| sol.set.dim() <= 8) {
            let conn = extend_connection(&t, &blocks).unwrap();
            prop_assert!(is_a_compatible(&t, &conn).unwrap());
            prop_assert!(sol.contains(&blocks));
        }
        for s in sol.set.sample_elements() {
            let conn = extend_connection(&t, &unpack_b_assignment(sol.module_dim, sol.dim_b, &s)).unwrap();
            prop_assert!(is_a_compatible(&t, &conn).unwrap());
        }
    }

    #[test]
    fn derivation_combinations_are_derivations(coeffs in prop::collection::vec(scalar(), 3)) {
        for l in [sl2(), two_dim()] {
            let d = derivation_algebra(&l).unwrap();
            let delta = d.basis().iter().zip(&coeffs).fold(Matrix::zeros(l.dim(), l.dim()), |acc, (b, c)| &acc + &b.scale(c));
            prop_assert_eq!(derivation_witness(&l, &delta), None);
        }
    }

    #[test]
    fn wang_solutions_satisfy_constraints(coeffs in prop::collection::vec(scalar(), 4)) {
        for (_, p) in wang_fixtures() {
            let sol = wang_solve(&p).unwrap();
            if let Some(base) = sol.particular() {
                let phi = sol.homogeneous_basis().iter().zip(&coeffs).fold(base, |acc, (b, c)| &acc + &b.scale(c));
                prop_assert!(p.is_solution(&phi));
                prop_assert!(sol.contains(&phi));
            }
        }
    }
}
