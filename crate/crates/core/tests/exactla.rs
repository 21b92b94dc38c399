mod common;

use common::q;
use freefield::exactla::{determinant, kernel_basis, rank, solve, EchelonBasis, SparseMatrix, SparseVector};
use freefield::Rational;
use num_rational::Rational64;
use num_traits::Zero;
use proptest::prelude::*;

fn to_q(rows: &[Vec<i64>]) -> SparseMatrix<Rational> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
}

/// Determinant by the permutation expansion.
fn leibniz_det(a: &[Vec<i64>]) -> i64 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut p2 = p.clone();
                p2.insert(i, n - 1);
                out.push(p2);
            }
        }
        out
    }
    let n = a.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| a[i][p[i]]).product::<i64>()
        })
        .sum()
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #[test]
    fn rank_nullity_and_kernel(rows in matrix(5, 6)) {
        let m = to_q(&rows);
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(rows in matrix(5, 5), x in prop::collection::vec(-4i64..=4, 5)) {
        let m = to_q(&rows);
        let x = SparseVector::from_dense(&x[..m.cols()].iter().map(|&v| q(v)).collect::<Vec<_>>());
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn determinant_matches_permutation_expansion(n in 1usize..=4, seed in prop::collection::vec(-4i64..=4, 16)) {
        let a: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        prop_assert_eq!(determinant(&to_q(&a)).unwrap(), q(leibniz_det(&a)));
    }

    #[test]
    fn echelon_membership(rows in matrix(4, 5)) {
        let m = to_q(&rows);
        let mut e = EchelonBasis::new(m.cols());
        for i in 0..m.rows() {
            e.insert(m.row(i));
        }
        prop_assert_eq!(e.dim(), rank(&m));
        for i in 0..m.rows() {
            prop_assert!(e.contains(m.row(i)));
        }
    }
}

#[test]
fn inconsistent_system_has_no_solution() {
    let m = to_q(&[vec![1, 1], vec![2, 2]]);
    let b = SparseVector::from_dense(&[q(1), q(3)]);
    assert!(solve(&m, &b).unwrap().is_none());
    assert!(solve(&m, &SparseVector::from_dense(&[q(1)])).is_err());
}

#[test]
fn exactness_over_large_entries() {
    // Hilbert matrix: determinant 1/(2^2·3^3·...) style values only survive exactly
    let n = 6;
    let h: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::new(1.into(), ((i + j + 1) as i64).into())).collect()).collect();
    let det = determinant(&SparseMatrix::from_dense(&h)).unwrap();
    assert_eq!(det, Rational::new(1.into(), 186313420339200000i64.into()));
}

#[test]
fn json_round_trip() {
    let m = to_q(&[vec![1, 0, -2], vec![0, 0, 5]]);
    assert_eq!(SparseMatrix::from_json(&m.to_json()).unwrap(), m);
}

#[test]
fn generic_over_machine_rationals() {
    let m: SparseMatrix<Rational64> = SparseMatrix::from_dense(&[
        vec![Rational64::from_integer(1), Rational64::from_integer(2)],
        vec![Rational64::from_integer(2), Rational64::from_integer(4)],
    ]);
    assert_eq!(rank(&m), 1);
    assert_eq!(kernel_basis(&m).len(), 1);
    assert!(determinant(&m).unwrap().is_zero());
}
