//! Property tests for the ordering, arithmetic, and linear-algebra
//! invariants the resolution machinery leans on.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mpr::degree::{Grid, Multidegree};
use mpr::field::{Field, PrimeField, Rationals};
use mpr::filtration::MultiFiltration;
use mpr::matrix::Matrix;

fn small_matrix() -> impl Strategy<Value = Matrix<Rationals>> {
    (1usize..6, 1usize..6).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |entries| {
            let mut m = Matrix::zero(Rationals, rows, cols);
            for (k, e) in entries.into_iter().enumerate() {
                m.set(k / cols, k % cols, Rationals.from_i64(e));
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn multidegree_display_parses_back(coords in proptest::collection::vec(0u32..100, 1..5)) {
        let d = Multidegree::new(coords);
        prop_assert_eq!(Multidegree::parse(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn grlex_enumeration_refines_the_partial_order(
        bound in proptest::collection::vec(0u32..4, 1..4),
    ) {
        let grid = Grid::new(Multidegree::new(bound));
        let order = grid.grlex_indices();
        prop_assert_eq!(order.len(), grid.len());
        for (a, &ia) in order.iter().enumerate() {
            let va = grid.point(ia);
            for &ib in &order[a + 1..] {
                let vb = grid.point(ib);
                prop_assert!(!vb.leq(&va), "{vb} follows {va} yet lies below it");
            }
        }
    }

    #[test]
    fn rank_and_nullity_add_up(m in small_matrix()) {
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.cols(), m.cols());
        if ns.cols() > 0 {
            prop_assert!(m.mul(&ns).is_zero());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(
        (m, xs) in small_matrix().prop_flat_map(|m| {
            let cols = m.cols();
            (Just(m), proptest::collection::vec(-3i64..=3, cols))
        }),
    ) {
        let x = Matrix::from_columns(
            Rationals,
            xs.len(),
            &[xs.iter().map(|e| Rationals.from_i64(*e)).collect::<Vec<_>>()],
        );
        let b = m.mul(&x);
        let sol = m.solve(&b).expect("the system is consistent by construction");
        prop_assert_eq!(m.mul(&sol), b);
    }

    #[test]
    fn independent_columns_carry_the_rank(m in small_matrix()) {
        let keep = m.independent_columns();
        prop_assert_eq!(keep.len(), m.rank());
        prop_assert_eq!(m.select_cols(&keep).rank(), keep.len());
    }

    #[test]
    fn prime_field_arithmetic_obeys_the_axioms(a in 0u64..97, b in 0u64..97, c in 0u64..97) {
        let f = PrimeField::new(97).unwrap();
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if a != 0 {
            prop_assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        }
    }

    #[test]
    fn filtrations_round_trip_and_slices_grow(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_filtration(&mut rng, 2, 15, 3);
        let text = f.serialize();
        let back = MultiFiltration::parse(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
        let grid = Grid::new(f.grid_bound());
        for idx in grid.grlex_indices() {
            let v = grid.point(idx);
            let here = f.slice(&v);
            for i in 0..v.r() {
                if let Some(w) = v.minus_unit(i) {
                    let below = f.slice(&w);
                    prop_assert!(
                        below.iter().all(|p| here.contains(p)),
                        "slice at {} lost simplices present below", v
                    );
                }
            }
        }
    }
}
