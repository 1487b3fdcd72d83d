//! Property suites for the algebra layer: RREF canonicity, subspace
//! arithmetic against brute force, and the row-space transfer lemma used by
//! the repair analysis.

use msrlab_core::algebra::{FieldSpec, Matrix, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, f: &FieldSpec, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<u64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..f.order())).collect())
        .collect();
    Matrix::from_rows(f, &data).unwrap()
}

fn random_nonsingular(rng: &mut ChaCha8Rng, f: &FieldSpec, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.is_nonsingular() {
            return m;
        }
    }
}

/// Row-space transfer: for nonsingular A, B and any P1, Q1, setting
/// P2 = P1*A*B^{-1} and Q2 = Q1*A*B^{-1} satisfies the premise
/// <P1 A> = <P2 B>, <Q1 A> = <Q2 B>, and then
/// (<P1> cap <Q1>) A = (<P2> cap <Q2>) B.
#[test]
fn row_space_transfer_lemma() {
    let fields = [
        FieldSpec::gf2(),
        FieldSpec::prime(13).unwrap(),
        FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap(), // GF(8), x^3 + x + 1
    ];
    for (fi, f) in fields.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(41 + fi as u64);
        for _case in 0..100 {
            let n = 4;
            let a = random_nonsingular(&mut rng, f, n);
            let b = random_nonsingular(&mut rng, f, n);
            let b_inv = b.inverse().unwrap();
            let p1 = random_matrix(&mut rng, f, 2, n);
            let q1 = random_matrix(&mut rng, f, 2, n);
            let a_binv = a.mul(&b_inv).unwrap();
            let p2 = p1.mul(&a_binv).unwrap();
            let q2 = q1.mul(&a_binv).unwrap();
            // premise
            assert_eq!(
                Subspace::row_space(&p1.mul(&a).unwrap()),
                Subspace::row_space(&p2.mul(&b).unwrap())
            );
            assert_eq!(
                Subspace::row_space(&q1.mul(&a).unwrap()),
                Subspace::row_space(&q2.mul(&b).unwrap())
            );
            // conclusion
            let lhs = Subspace::row_space(&p1)
                .intersect(&Subspace::row_space(&q1))
                .unwrap()
                .transform(&a)
                .unwrap();
            let rhs = Subspace::row_space(&p2)
                .intersect(&Subspace::row_space(&q2))
                .unwrap()
                .transform(&b)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

/// subspace intersection agrees with exhaustive vector enumeration over
/// GF(3)^4.
#[test]
fn intersect_matches_brute_force_gf3() {
    let f = FieldSpec::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let all_vectors: Vec<Vec<u64>> = (0..81u64)
        .map(|x| vec![x % 3, (x / 3) % 3, (x / 9) % 3, (x / 27) % 3])
        .collect();
    for _case in 0..60 {
        let u = Subspace::row_space(&random_matrix(&mut rng, &f, 2, 4));
        let v = Subspace::row_space(&random_matrix(&mut rng, &f, 2, 4));
        let w = u.intersect(&v).unwrap();
        let mut count = 0usize;
        for vec in &all_vectors {
            let both = u.contains_vector(vec) && v.contains_vector(vec);
            assert_eq!(both, w.contains_vector(vec));
            if both {
                count += 1;
            }
        }
        assert_eq!(count, 3usize.pow(w.dim() as u32));
    }
}

fn gf7_matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
    proptest::collection::vec(proptest::collection::vec(0u64..7, 4), 1..5)
}

proptest! {
    /// RREF is a row-space invariant: left-multiplying by any nonsingular
    /// matrix leaves the RREF unchanged.
    #[test]
    fn rref_unique_per_row_space(rows in gf7_matrix(), seed in 0u64..1000) {
        let f = FieldSpec::prime(7).unwrap();
        let m = Matrix::from_rows(&f, &rows).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_nonsingular(&mut rng, &f, m.rows());
        let m2 = t.mul(&m).unwrap();
        prop_assert_eq!(m.rref_rank().0, m2.rref_rank().0);
    }

    /// dim(U cap V) + dim(U + V) == dim U + dim V.
    #[test]
    fn dimension_formula(a in gf7_matrix(), b in gf7_matrix()) {
        let f = FieldSpec::prime(7).unwrap();
        let u = Subspace::row_space(&Matrix::from_rows(&f, &a).unwrap());
        let v = Subspace::row_space(&Matrix::from_rows(&f, &b).unwrap());
        let cap = u.intersect(&v).unwrap();
        let sum = u.sum(&v).unwrap();
        prop_assert_eq!(cap.dim() + sum.dim(), u.dim() + v.dim());
    }

    /// Nonsingular transforms preserve subspace dimension.
    #[test]
    fn nonsingular_transform_preserves_dim(a in gf7_matrix(), seed in 0u64..1000) {
        let f = FieldSpec::prime(7).unwrap();
        let v = Subspace::row_space(&Matrix::from_rows(&f, &a).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_nonsingular(&mut rng, &f, 4);
        prop_assert_eq!(v.transform(&t).unwrap().dim(), v.dim());
    }
}

/// solve_left on a tall full-rank matrix reproduces the identity.
#[test]
fn solve_left_tall_identity() {
    let f = FieldSpec::prime(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        // 6x4 with rank 4 (stack a nonsingular 4x4 over two random rows)
        let top = random_nonsingular(&mut rng, &f, 4);
        let extra = random_matrix(&mut rng, &f, 2, 4);
        let m = Matrix::vstack(&[&top, &extra]).unwrap();
        let id = Matrix::identity(&f, 4);
        let t = m.solve_left(&id).unwrap();
        assert_eq!(t.mul(&m).unwrap(), id);
    }
}
