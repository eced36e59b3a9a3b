//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use homotopelab::linalg::Matrix;
use homotopelab::poly::Polynomial;
use homotopelab::{FieldSpec, Scalar};
use proptest::prelude::*;

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(n - 1) {
        // insert n-1 at position k: creates n-1-k inversions
        for k in 0..n {
            let mut p = perm.clone();
            p.insert(k, n - 1);
            out.push((p, even == ((n - 1 - k) % 2 == 0)));
        }
    }
    out
}

/// Leibniz expansion of a scalar determinant.
pub fn leibniz_det(field: FieldSpec, rows: &[Vec<Scalar>]) -> Scalar {
    permutations(rows.len()).into_iter().fold(field.zero(), |acc, (p, even)| {
        let term = p.iter().enumerate().fold(field.one(), |t, (r, &c)| &t * &rows[r][c]);
        if even {
            &acc + &term
        } else {
            &acc - &term
        }
    })
}

/// Leibniz expansion of a determinant of polynomials.
pub fn leibniz_det_poly(field: FieldSpec, nvars: usize, rows: &[Vec<Polynomial>]) -> Polynomial {
    permutations(rows.len()).into_iter().fold(Polynomial::zero(field, nvars), |acc, (p, even)| {
        let term = p
            .iter()
            .enumerate()
            .fold(Polynomial::one(field, nvars), |t, (r, &c)| t.mul(&rows[r][c]).unwrap());
        if even {
            acc.add(&term).unwrap()
        } else {
            acc.sub(&term).unwrap()
        }
    })
}

/// Rank by testing every square minor with the Leibniz oracle.
pub fn minor_rank(m: &Matrix) -> usize {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
    }
    let rows = m.to_rows();
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<Scalar>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                if !leibniz_det(m.field(), &minor).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

pub fn arb_rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q().from_ratio(n, d).unwrap())
}

pub fn arb_residue(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p).prop_map(move |x| fp(p).from_u64(x))
}

/// Scalars over `Q` or over one of a few primes, all from the same field.
pub fn arb_scalars(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop_oneof![
        prop::collection::vec(arb_rational(), n),
        prop::collection::vec(arb_residue(7), n),
        prop::collection::vec(arb_residue(101), n),
        prop::collection::vec(arb_residue(1_000_000_007), n),
    ]
}

pub fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    arb_scalars(rows * cols).prop_map(move |v| {
        let f = v[0].field();
        Matrix::new(f, rows, cols, v).unwrap()
    })
}

/// Small integer matrix over `field`, often of low rank.
pub fn arb_small_matrix(field: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    (prop::collection::vec(-3i64..=3, rows * cols), 0usize..3).prop_map(move |(v, zero_rows)| {
        let mut m = Matrix::new(field, rows, cols, v.into_iter().map(|x| field.from_i64(x)).collect()).unwrap();
        for r in 0..zero_rows.min(rows) {
            for c in 0..cols {
                // duplicate row 0 into the last rows to force dependence
                let x = m.get(0, c).clone();
                m.set(rows - 1 - r, c, x);
            }
        }
        m
    })
}
