mod common;

use common::*;
use homotopelab::algebra::{conjugation_isomorphism, idempotent_decomposition_probe, is_isomorphism_witness, Decomposition};
use homotopelab::constructions::{b16, b_lambda, matrix_algebra, r_lambda, two_dim_a};
use homotopelab::linalg::{unit_vector, vector, LinearMap, Matrix};
use homotopelab::verify::{augmented_mat2_b16, corner_idempotents};
use homotopelab::{Algebra, Error, FieldSpec, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_coords(f: FieldSpec, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-3i64..=3).prop_map(move |x| f.from_i64(x)), n)
}

/// A unit of a local algebra whose basis vector 0 is the unit and the rest
/// span the radical.
fn arb_local_unit(f: FieldSpec, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    (1i64..=4, arb_coords(f, n)).prop_map(move |(c, mut v)| {
        v[0] = f.from_i64(c);
        v
    })
}

fn arb_invertible_mat2(f: FieldSpec) -> impl Strategy<Value = Vec<Scalar>> {
    arb_coords(f, 4).prop_filter("singular", move |v| !(&(&v[0] * &v[3]) - &(&v[1] * &v[2])).is_zero())
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(q()), Just(fp(5)), Just(fp(7))]
}

/// `(a b) c == a (b c)` for every basis triple, by naive element products.
fn associative_oracle(a: &Algebra) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let (x, y, z) = (a.basis_element(i), a.basis_element(j), a.basis_element(k));
                a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap() == a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap()
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn delta_homotopes_of_associative_algebras(f in field_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for a in [matrix_algebra(f, 2), r_lambda(&f.from_i64(2)).unwrap()] {
            let delta: Vec<Scalar> = (0..a.dim()).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
            let left = a.left_delta_homotope(&delta).unwrap();
            let right = a.right_delta_homotope(&delta).unwrap();
            prop_assert_eq!(left.structure(), right.structure());
            prop_assert!(left.is_associative());
            prop_assert!(associative_oracle(&left));
            // A_Δ is unital iff Δ is a unit
            let unital = Algebra::from_structure(left.structure().clone()).unwrap().detect_unit().unit().is_some();
            prop_assert_eq!(unital, a.try_invert_element(&delta).is_ok());
        }
    }

    #[test]
    fn augmented_homotope_is_unital(f in field_strategy(), delta in arb_coords(q(), 4)) {
        let delta: Vec<Scalar> = delta.iter().map(|s| f.from_rational(s.as_rational().unwrap()).unwrap()).collect();
        let a = matrix_algebra(f, 2);
        let hat = a.left_delta_homotope(&delta).unwrap().augment_unit();
        prop_assert_eq!(hat.dim(), 5);
        prop_assert!(hat.is_associative());
        let unit = hat.unit().unwrap().clone();
        for i in 0..5 {
            let e = hat.basis_element(i);
            prop_assert_eq!(hat.mul(&unit, &e).unwrap(), e.clone());
            prop_assert_eq!(hat.mul(&e, &unit).unwrap(), e);
        }
        if let Ok(inv) = a.try_invert_element(&delta) {
            let mut padded = inv;
            padded.push(f.zero());
            prop_assert!(hat.is_idempotent(&padded).unwrap());
        }
    }

    #[test]
    fn conjugation_gives_witnessed_isomorphisms(
        delta in arb_coords(fp(5), 16), u in arb_local_unit(fp(5), 16), v in arb_local_unit(fp(5), 16)
    ) {
        let a = b16(fp(5));
        let (delta_prime, psi) = conjugation_isomorphism(&a, &delta, &u, &v).unwrap();
        let source = a.left_delta_homotope(&delta).unwrap();
        let target = a.left_delta_homotope(&delta_prime).unwrap();
        prop_assert!(is_isomorphism_witness(&source, &target, &psi));
    }

    #[test]
    fn well_tempered_is_conjugation_invariant(
        delta in arb_coords(q(), 4), u in arb_invertible_mat2(q()), v in arb_invertible_mat2(q()),
        rd in arb_coords(fp(7), 4), ru in arb_local_unit(fp(7), 4), rv in arb_local_unit(fp(7), 4),
    ) {
        let m = matrix_algebra(q(), 2);
        let moved = m.mul3(&u, &delta, &v).unwrap();
        prop_assert_eq!(m.is_well_tempered(&delta).unwrap(), m.is_well_tempered(&moved).unwrap());
        prop_assert_eq!(m.is_well_tempered(&delta).unwrap(), !vector::is_zero(&delta));
        let r = r_lambda(&fp(7).from_i64(3)).unwrap();
        let moved = r.mul3(&ru, &rd, &rv).unwrap();
        prop_assert_eq!(r.is_well_tempered(&rd).unwrap(), r.is_well_tempered(&moved).unwrap());
        prop_assert_eq!(r.is_well_tempered(&rd).unwrap(), r.try_invert_element(&rd).is_ok());
    }

    #[test]
    fn rank_normal_form_conjugates_to_a_fixed_representative(
        a in arb_coords(q(), 2), b in arb_coords(q(), 2), c in arb_coords(q(), 2), d in arb_coords(q(), 2)
    ) {
        // two rank-one matrices a b^T and c d^T
        prop_assume!(!vector::is_zero(&a) && !vector::is_zero(&b) && !vector::is_zero(&c) && !vector::is_zero(&d));
        let m = matrix_algebra(q(), 2);
        let outer = |x: &[Scalar], y: &[Scalar]| -> Matrix {
            Matrix::new(q(), 2, 2, vec![&x[0] * &y[0], &x[0] * &y[1], &x[1] * &y[0], &x[1] * &y[1]]).unwrap()
        };
        let (d1, d2) = (outer(&a, &b), outer(&c, &d));
        let to_map = |delta: &Matrix| {
            let (p, qq, r) = delta.rank_normal_form();
            assert_eq!(r, 1);
            conjugation_isomorphism(&m, delta.entries(), p.entries(), qq.entries()).unwrap()
        };
        let ((n1, psi1), (n2, psi2)) = (to_map(&d1), to_map(&d2));
        prop_assert_eq!(&n1, &m.basis_element(0));
        prop_assert_eq!(&n1, &n2);
        let phi = psi2.inverse().unwrap().compose(&psi1).unwrap();
        let src = m.left_delta_homotope(d1.entries()).unwrap();
        let dst = m.left_delta_homotope(d2.entries()).unwrap();
        prop_assert!(is_isomorphism_witness(&src, &dst, &phi));
    }
}

#[test]
fn products_in_small_algebras() {
    let r = r_lambda(&q().from_i64(2)).unwrap();
    let s = vec![q().zero(), q().one(), q().one(), q().zero()];
    assert_eq!(r.mul(&s, &s).unwrap(), vec![q().zero(), q().zero(), q().zero(), q().from_ratio(3, 2).unwrap()]);
    let a = two_dim_a(q());
    assert_eq!(a.mul(&a.basis_element(0), &a.basis_element(0)).unwrap(), a.basis_element(0));
    assert!(matches!(a.mul(&[q().one()], &a.basis_element(0)), Err(Error::DimensionMismatch(_))));
}

#[test]
fn b_lambda_is_the_general_homotope() {
    let lambda = q().from_i64(4);
    let a = two_dim_a(q());
    let f1 = LinearMap::new(a.right_mult_matrix(&[q().one(), lambda.clone()]).unwrap());
    let id = LinearMap::identity(q(), 2);
    let h = a.homotope(&f1, &id, &id).unwrap();
    assert_eq!(h.structure(), b_lambda(&lambda).structure());
    let (e1, e2) = (h.basis_element(0), h.basis_element(1));
    assert_eq!(h.mul(&e2, &e1).unwrap(), vec![lambda, q().one()]);
}

#[test]
fn inverses_in_r_lambda() {
    let r = r_lambda(&q().from_i64(3)).unwrap();
    let unit = r.unit().unwrap().clone();
    assert_eq!(r.try_invert_element(&unit).unwrap(), unit);
    assert_eq!(r.try_invert_element(&r.basis_element(1)), Err(Error::NotAUnit));
    // (1+x)(1-x) = 1 - x^2 = 1 for square-zero x
    let x = vec![q().zero(), q().from_i64(2), q().zero(), q().from_i64(5)];
    assert!(r.is_square_zero(&x).unwrap());
    assert_eq!(r.try_invert_element(&vector::add(&unit, &x)).unwrap(), vector::sub(&unit, &x));
    let y = vec![q().from_i64(2), q().from_i64(1), q().from_i64(-1), q().from_i64(5)];
    let inv = r.try_invert_element(&y).unwrap();
    assert_eq!(r.mul(&inv, &y).unwrap(), unit);
}

#[test]
fn trivial_conjugation() {
    let a = matrix_algebra(q(), 2);
    let one = a.unit().unwrap().clone();
    let delta = vec![q().from_i64(1), q().from_i64(2), q().from_i64(2), q().from_i64(4)];
    let (d, psi) = conjugation_isomorphism(&a, &delta, &one, &one).unwrap();
    assert_eq!(d, delta);
    assert_eq!(psi, LinearMap::identity(q(), 4));
    let singular = vec![q().zero(); 4];
    assert_eq!(conjugation_isomorphism(&a, &delta, &singular, &one).unwrap_err(), Error::NotAUnit);
}

#[test]
fn non_multiplicative_maps_are_rejected() {
    let a = matrix_algebra(q(), 2);
    assert!(is_isomorphism_witness(&a, &a, &LinearMap::identity(q(), 4)));
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        // keep 1 ↦ 1 so that only multiplicativity can fail
        let m = loop {
            let mut data: Vec<Scalar> = (0..16).map(|_| q().from_i64(rng.gen_range(-3..=3))).collect();
            for r in 0..4 {
                data[r * 4] = a.unit().unwrap()[r].clone();
            }
            let m = Matrix::new(q(), 4, 4, data).unwrap();
            if m.rank() == 4 {
                break m;
            }
        };
        // a unit-preserving map with column 0 = 1 is multiplicative only if it is a conjugation
        let phi = LinearMap::new(m.clone());
        let images: Vec<Vec<Scalar>> = (0..4).map(|i| m.column(i)).collect();
        let multiplicative = (0..4).all(|i| {
            (0..4).all(|j| {
                let lhs = phi.apply(&a.mul(&a.basis_element(i), &a.basis_element(j)).unwrap()).unwrap();
                lhs == a.mul(&images[i], &images[j]).unwrap()
            })
        });
        assert_eq!(is_isomorphism_witness(&a, &a, &phi), multiplicative);
        assert!(!multiplicative);
    }
}

#[test]
fn corners_of_the_augmented_mat2_homotope() {
    let (base, hat) = augmented_mat2_b16(&q().from_i64(2)).unwrap();
    assert_eq!(hat.dim(), 65);
    let (e, eps) = corner_idempotents(&base, &hat);
    assert!(hat.is_idempotent(&e).unwrap() && hat.is_idempotent(&eps).unwrap());
    assert!(vector::is_zero(&hat.mul(&e, &eps).unwrap()));
    assert_eq!(hat.corner_subalgebra(&e).unwrap().dim(), 16);
    assert_eq!(hat.corner_subalgebra(&eps).unwrap().dim(), 17);
    let unit = hat.unit().unwrap().clone();
    assert_eq!(hat.corner_subalgebra(&unit).unwrap().dim(), 65);
    let mut not_idempotent = e.clone();
    not_idempotent[64] = q().one();
    assert_eq!(hat.corner_subalgebra(&not_idempotent).unwrap_err(), Error::NotIdempotent);
}

#[test]
fn primitivity_probe_on_the_augmented_homotope() {
    let f2 = fp(2);
    let (base, hat) = augmented_mat2_b16(&f2.one()).unwrap();
    let (e, eps) = corner_idempotents(&base, &hat);
    let unit = hat.unit().unwrap().clone();
    let split = idempotent_decomposition_probe(&hat, &unit, 1 << 17).unwrap();
    assert_eq!(split, Decomposition::Split { first: e, second: eps.clone() });
    let primitive = idempotent_decomposition_probe(&hat, &eps, 1 << 17).unwrap();
    assert_eq!(primitive, Decomposition::Primitive { searched: 1 << 17 });
    assert!(matches!(idempotent_decomposition_probe(&hat, &eps, 1 << 16), Err(Error::BudgetExceeded { .. })));
    assert!(matches!(
        idempotent_decomposition_probe(&b16(q()), &unit_vector(q(), 16, 0), 1 << 20),
        Err(Error::NotPrimeField(_))
    ));
}
