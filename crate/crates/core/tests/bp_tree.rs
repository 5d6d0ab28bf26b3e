//! Belief propagation on cycle-free graphs is exact, and decoding commutes
//! with coset shifts.

mod common;

use rand::Rng;
use swldpc_core::ldpc::{sample_graph, syndrome_encode, DegreeDistribution, Syndrome};
use swldpc_core::rng::seeded;

use common::{beliefs_after, brute_force_posteriors, random_tree};

#[test]
fn tree_beliefs_equal_brute_force_posteriors() {
    let mut rng = seeded(8);
    for _ in 0..200 {
        let n = rng.gen_range(2..=12);
        let g = random_tree(&mut rng, n);
        let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let s = syndrome_encode(&g, &x).unwrap();
        let llrs: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let exact = brute_force_posteriors(&g, &s, &llrs);
        let bp = beliefs_after(&g, &s, &llrs, n + 1);
        for (a, b) in bp.iter().zip(&exact) {
            // a single-variable check pins its bit to +-inf
            assert!(a == b || (a - b).abs() <= 1e-9, "n={n}: {a} vs {b}");
        }
        // the fixed point has been reached, up to rounding
        for (a, b) in bp.iter().zip(beliefs_after(&g, &s, &llrs, n + 3)) {
            assert!(*a == b || (a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn a_leaf_check_pins_the_tree() {
    // one variable pinned to 1 by a single-variable check: posterior -inf
    let g = swldpc_core::ldpc::TannerGraph::from_checks(2, &[vec![0, 1], vec![1]]).unwrap();
    let s = Syndrome(vec![0, 1]);
    let b = beliefs_after(&g, &s, &[2.0, 2.0], 3);
    assert_eq!(b, vec![f64::NEG_INFINITY, f64::NEG_INFINITY]);
}

#[test]
fn coset_shift_flips_signs_exactly() {
    let mut rng = seeded(21);
    let dd = DegreeDistribution::regular(3, 6).unwrap();
    for trial in 0..10 {
        let n = 240;
        let g = sample_graph(n, &dd, trial).unwrap();
        let s = Syndrome((0..g.num_checks()).map(|_| rng.gen_range(0..2)).collect());
        let llrs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..4.0)).collect();
        let e: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let shifted_s = s.xor(&syndrome_encode(&g, &e).unwrap());
        let flip = |v: &[f64]| -> Vec<f64> { v.iter().zip(&e).map(|(&m, &b)| if b == 1 { -m } else { m }).collect() };
        let shifted = beliefs_after(&g, &shifted_s, &flip(&llrs), 8);
        assert_eq!(shifted, flip(&beliefs_after(&g, &s, &llrs, 8)));
    }
}
