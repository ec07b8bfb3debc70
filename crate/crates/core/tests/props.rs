//! Property tests for the arithmetic and combinatorial substrate.

use cyclerep::field::Field;
use cyclerep::matrix::Mat;
use cyclerep::quiver::{classify_walk, int_moddiv, CyclicQuiver, Walk};
use cyclerep::rep::{hom_basis, walk_dims, walk_rep};
use proptest::prelude::*;
use std::sync::Arc;

fn f101() -> Field {
    Field::prime(101).unwrap()
}

fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(-50i64..50, rows * cols).prop_map(move |vals| {
        let f = f101();
        Mat::from_entries(f, rows, cols, vals.iter().map(|v| f.from_i64(*v)).collect())
    })
}

proptest! {
    #[test]
    fn moddiv_contract(a in -10_000i64..10_000, q in 1i64..500) {
        let (d, m) = int_moddiv(a, q).unwrap();
        prop_assert_eq!(a, d * q + m);
        prop_assert!(0 <= m && m < q);
    }

    #[test]
    fn matrix_mul_associative(
        a in small_mat(3, 4),
        b in small_mat(4, 2),
        c in small_mat(2, 5),
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn matrix_mul_distributive(
        a in small_mat(3, 4),
        b in small_mat(4, 2),
        c in small_mat(4, 2),
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn rank_of_transpose(a in small_mat(5, 7)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn normalization_is_idempotent(p in -40i64..40, len in 0i64..25) {
        let k = CyclicQuiver::new(3, 2).unwrap();
        let w = Walk { p, q: p + len };
        let n = w.normalize(&k);
        prop_assert!(0 <= n.p && n.p <= k.n() as i64);
        prop_assert_eq!(n.q - n.p, w.q - w.p);
        prop_assert_eq!(n.normalize(&k), n);
        prop_assert_eq!(classify_walk(&w, &k), classify_walk(&n, &k));
        // same representation data either way
        let f = f101();
        let a = walk_rep(&w, &k, f);
        let b = walk_rep(&n, &k, f);
        prop_assert_eq!(a.dims, b.dims);
        prop_assert_eq!(a.maps, b.maps);
    }

    #[test]
    fn walk_dims_match_construction(p in 0i64..5, len in 1i64..20) {
        let k = CyclicQuiver::new(2, 3).unwrap();
        let w = Walk { p, q: p + len - 1 };
        let rep = walk_rep(&w, &k, f101());
        prop_assert_eq!(rep.total_dim(), len as usize);
        prop_assert_eq!(walk_dims(&w, &k), rep.dims);
    }

    #[test]
    fn hom_basis_solves_the_intertwining_equations(
        p1 in 0i64..5, len1 in 1i64..9,
        p2 in 0i64..5, len2 in 1i64..9,
    ) {
        let k = CyclicQuiver::new(3, 2).unwrap();
        let f = f101();
        let v = Arc::new(walk_rep(&Walk { p: p1, q: p1 + len1 - 1 }, &k, f));
        let w = Arc::new(walk_rep(&Walk { p: p2, q: p2 + len2 - 1 }, &k, f));
        for b in hom_basis(&v, &w).unwrap() {
            prop_assert!(b.is_morphism());
        }
    }
}
