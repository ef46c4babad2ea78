//! Property tests for the linear-algebra substrate and the graded layer.

use std::collections::BTreeMap;

use proptest::prelude::*;

use cotor_core::field::Prime;
use cotor_core::graded::{DegreeWindow, GradedSpace};
use cotor_core::matrix::Matrix;

fn arb_prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(31)]
        .prop_map(|p| Prime::new(p).unwrap())
}

fn arb_matrix() -> impl Strategy<Value = Matrix> {
    (arb_prime(), 0usize..6, 0usize..6).prop_flat_map(|(p, rows, cols)| {
        proptest::collection::vec(0u32..p.get(), rows * cols).prop_map(move |data| {
            let mut m = Matrix::zeros(p, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, data[i * cols + j]);
                }
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn rank_equals_rank_of_transpose(m in arb_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity_and_annihilation(m in arb_matrix()) {
        let (rank, kernel, image) = m.rank_kernel_image();
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for k in &kernel {
            prop_assert!(m.apply(k).iter().all(|&v| v == 0));
        }
        for b in &image {
            let x = m.solve(b).expect("image vector has a preimage");
            prop_assert_eq!(m.apply(&x), b.clone());
        }
    }

    #[test]
    fn solve_returns_actual_solutions(m in arb_matrix(), seed in proptest::collection::vec(0u32..8, 0..6)) {
        // Build b in the image by applying m to something.
        let x0: Vec<u32> = (0..m.cols()).map(|i| seed.get(i).copied().unwrap_or(1) % m.prime().get()).collect();
        let b = m.apply(&x0);
        let x = m.solve(&b).expect("consistent by construction");
        prop_assert_eq!(m.apply(&x), b);
    }
}

fn arb_space() -> impl Strategy<Value = GradedSpace> {
    proptest::collection::vec((0i32..5, 1usize..3), 1..4).prop_map(|parts| {
        let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for (idx, (d, n)) in parts.into_iter().enumerate() {
            let entry = basis.entry(d).or_default();
            for k in 0..n {
                entry.push(format!("g{idx}_{k}"));
            }
        }
        GradedSpace::new(DegreeWindow::new(0, 12), basis).unwrap()
    })
}

proptest! {
    #[test]
    fn tensor_dims_convolve(u in arb_space(), v in arb_space()) {
        let t = u.tensor(&v);
        for d in t.window().iter() {
            let expect: usize = (0..=d).map(|i| u.dim(i) * v.dim(d - i)).sum();
            prop_assert_eq!(t.dim(d), expect);
        }
    }

    #[test]
    fn tensor_associative_dimensions(u in arb_space(), v in arb_space(), w in arb_space()) {
        let left = u.tensor(&v).tensor(&w);
        let right = u.tensor(&v.tensor(&w));
        let cap = left.window().max.min(right.window().max);
        for d in 0..=cap {
            prop_assert_eq!(left.dim(d), right.dim(d));
        }
    }

    #[test]
    fn suspension_composes(u in arb_space(), a in -3i32..4, b in -3i32..4) {
        let two_step = u.suspend(a).suspend(b);
        let one_step = u.suspend(a + b);
        prop_assert_eq!(two_step, one_step);
        prop_assert_eq!(u.suspend(a).suspend(-a), u);
    }
}
