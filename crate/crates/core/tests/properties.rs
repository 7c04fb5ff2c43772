//! Property tests for the algebraic invariants the constructions lean on.

use mrcode::codes::{verify_locality, Limits, LinearCode, LocalityStructure, PuncturePattern};
use mrcode::gf::{Field, FieldJson};
use mrcode::linalg::{elementary_symmetric_all, pencil_determinant, Matrix};
use mrcode::report::CodeJson;
use proptest::prelude::*;

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(13).unwrap()),
        Just(Field::new(2, 4).unwrap()),
        Just(Field::new(3, 2).unwrap()),
    ]
}

proptest! {
    #[test]
    fn field_axioms_hold(field in small_field(), seed in any::<u64>()) {
        let q = field.q();
        let a = field.element(seed % q).unwrap();
        let b = field.element(seed.wrapping_mul(31) % q).unwrap();
        let c = field.element(seed.wrapping_mul(97).wrapping_add(5) % q).unwrap();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!((&a * &a.inv().unwrap()).value(), 1);
        }
        // subtraction undoes addition
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn sigma_recurrence(field in small_field(), vals in prop::collection::vec(any::<u64>(), 0..6), x in any::<u64>()) {
        let q = field.q();
        let elems: Vec<_> = vals.iter().map(|&v| field.element(v % q).unwrap()).collect();
        let x = field.element(x % q).unwrap();
        let base = elementary_symmetric_all(&field, &elems);
        let mut ext = elems.clone();
        ext.push(x.clone());
        let full = elementary_symmetric_all(&field, &ext);
        for t in 1..=ext.len() {
            let prev = base.get(t).cloned().unwrap_or_else(|| field.zero());
            prop_assert_eq!(&full[t], &(&prev + &(&x * &base[t - 1])));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(field in small_field(), vals in prop::collection::vec(any::<u64>(), 24)) {
        let q = field.q();
        let reduced: Vec<u64> = vals.iter().map(|&v| v % q).collect();
        let m = Matrix::from_values(&field, 4, 6, &reduced).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let red = m.reduce();
        prop_assert_eq!(red.nullspace.rows(), m.cols() - red.rank);
        prop_assert!(m.matmul(&red.nullspace.transpose()).is_zero());
    }

    #[test]
    fn code_duality_and_puncturing(vals in prop::collection::vec(0u64..5, 32), c1 in 0usize..8, c2 in 0usize..8) {
        prop_assume!(c1 != c2);
        let f = Field::prime(5).unwrap();
        let g = Matrix::from_values(&f, 4, 8, &vals).unwrap();
        let Ok(code) = LinearCode::from_generator(g) else {
            return Ok(());
        };
        // G H^T = 0 after construction
        prop_assert!(code.generator().matmul(&code.parity().transpose()).is_zero());
        // dual of dual has the same row space
        let dd = code.dual().dual();
        let stacked = code.generator().vstack(dd.generator());
        prop_assert_eq!(stacked.rank(), code.k());
        // puncture/shorten duality
        let s = PuncturePattern::new(vec![c1, c2]).unwrap();
        let lhs = code.puncture(&s).unwrap().dual();
        let rhs = code.dual().shorten(&s).unwrap();
        prop_assert_eq!(lhs.k(), rhs.k());
        let stacked = lhs.generator().vstack(rhs.generator());
        prop_assert_eq!(stacked.rank(), lhs.k());
    }

    #[test]
    fn pencil_matches_evaluation(vals0 in prop::collection::vec(0u64..13, 9), vals1 in prop::collection::vec(0u64..13, 9), at in 0u64..13) {
        let f = Field::prime(13).unwrap();
        let m0 = Matrix::from_values(&f, 3, 3, &vals0).unwrap();
        let m1 = Matrix::from_values(&f, 3, 3, &vals1).unwrap();
        let p = pencil_determinant(&m0, &m1).unwrap();
        let c = f.element(at).unwrap();
        let mc = Matrix::from_fn(&f, 3, 3, |i, j| &m0.get(i, j) + &(&c * &m1.get(i, j)));
        prop_assert_eq!(p.eval(&c), mc.determinant().unwrap());
    }

    #[test]
    fn field_json_round_trip(p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], m in 1u32..4) {
        let field = Field::new(p, m).unwrap();
        let json = FieldJson::from(&field);
        let text = serde_json::to_string(&json).unwrap();
        let back: FieldJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Field::try_from(&back).unwrap(), field.clone());
        // descriptor round-trips too
        prop_assert_eq!(Field::from_descriptor(&field.descriptor()).unwrap(), field);
    }

    #[test]
    fn distance_never_exceeds_locality_bound(seed in any::<u64>()) {
        // random codes constrained to a single-parity topology: whenever
        // locality verifies, the distance respects the bound
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = Field::prime(5).unwrap();
        let sets = vec![vec![0usize, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let loc = LocalityStructure::new(2, sets.clone()).unwrap();
        let h0 = Matrix::from_fn(&f, 3, 9, |i, col| {
            if sets[i].contains(&col) {
                f.element(rng.gen_range(1..5)).unwrap()
            } else {
                f.zero()
            }
        });
        let g0 = h0.nullspace();
        let k = rng.gen_range(1..=4usize);
        let mix = Matrix::from_fn(&f, k, g0.rows(), |_, _| {
            f.element(rng.gen_range(0..5)).unwrap()
        });
        let g = mix.matmul(&g0);
        let Ok(code) = LinearCode::from_generator(g) else {
            return Ok(());
        };
        if verify_locality(&code, &loc).unwrap() {
            let d = code.min_distance(&Limits::default()).unwrap();
            let bound = mrcode::codes::dmin_bound(9, code.k(), 2).unwrap();
            prop_assert!(d as i64 <= bound, "d = {} exceeds bound {}", d, bound);
        }
    }

    #[test]
    fn code_json_round_trip(vals in prop::collection::vec(0u64..7, 21)) {
        let f = Field::prime(7).unwrap();
        let g = Matrix::from_values(&f, 3, 7, &vals).unwrap();
        let Ok(code) = LinearCode::from_generator(g) else {
            return Ok(());
        };
        let json = CodeJson::new(&code, None);
        let text = serde_json::to_string(&json).unwrap();
        let back: CodeJson = serde_json::from_str(&text).unwrap();
        let field = back.field().unwrap();
        let g2 = back.generator_matrix(&field).unwrap();
        let h2 = back.parity_matrix(&field).unwrap();
        prop_assert_eq!(g2, code.generator().clone());
        prop_assert_eq!(h2, code.parity().clone());
    }
}
