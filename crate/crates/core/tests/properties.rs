//! Invariants checked on randomly generated instances.

mod common;

use proptest::prelude::*;
use swldpc_core::bp::{check_node_op, gamma, gamma_inverse, variable_node_op};
use swldpc_core::de::{ConvolutionMode, DeSettings, DensityEvolution};
use swldpc_core::ldpc::{sample_graph, syndrome_encode, DegreeDistribution};
use swldpc_core::rng::seeded;
use swldpc_core::source::{
    are_equivalent, class_degrees_of_freedom, degrade_source, equivalence_class_source, is_degraded,
    source_to_channel, DEGRADE_TOL,
};

use common::{random_map, random_source};

/// Alphas with `alpha_i + alpha_{n-1-i} = 1`.
fn random_alphas(rng: &mut impl rand::Rng, n: usize) -> Vec<f64> {
    let mut a = vec![0.5; n];
    for i in 0..n / 2 {
        a[i] = rng.gen_range(0.0..=1.0);
        a[n - 1 - i] = 1.0 - a[i];
    }
    a
}

proptest! {
    #[test]
    fn conditional_entropy_and_capacity_sum_to_one(seed in any::<u64>()) {
        let s = random_source(&mut seeded(seed), 6);
        let c = source_to_channel(&s).capacity();
        prop_assert!((s.conditional_entropy() + c - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn initial_densities_are_symmetric(seed in any::<u64>()) {
        let d = random_source(&mut seeded(seed), 6).initial_density();
        prop_assert!((d.total_mass() - 1.0).abs() < 1e-12);
        prop_assert!(d.check_symmetry(1e-9));
    }

    #[test]
    fn converted_channel_has_the_same_initial_density(seed in any::<u64>()) {
        let s = random_source(&mut seeded(seed), 6);
        let ch = source_to_channel(&s);
        prop_assert!(ch.initial_density().approx_eq(&s.initial_density(), 1e-12));
        prop_assert_eq!(ch.num_outputs() % 2, 0);
    }

    #[test]
    fn class_members_are_equivalent(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let s = random_source(&mut rng, 6);
        let d = s.initial_density();
        let n = 2 * class_degrees_of_freedom(&d).unwrap()
            + usize::from(d.atoms().iter().any(|&(m, _)| m == 0.0));
        let member = equivalence_class_source(&d, &random_alphas(&mut rng, n)).unwrap();
        prop_assert!(are_equivalent(&s, &member, 1e-12));
        prop_assert!((member.conditional_entropy() - s.conditional_entropy()).abs() < 1e-12);
    }

    #[test]
    fn wrong_alpha_count_is_rejected(seed in any::<u64>()) {
        let d = random_source(&mut seeded(seed), 6).initial_density();
        let n = 2 * class_degrees_of_freedom(&d).unwrap() + 2;
        prop_assert!(equivalence_class_source(&d, &vec![0.5; n + 1]).is_err());
    }

    #[test]
    fn mapped_side_information_is_degraded(seed in any::<u64>(), out in 1usize..5) {
        let mut rng = seeded(seed);
        let s = random_source(&mut rng, 5);
        let t = degrade_source(&s, &random_map(&mut rng, &s, out)).unwrap();
        let (a, b) = (source_to_channel(&s), source_to_channel(&t));
        prop_assert!(is_degraded(&a, &b, DEGRADE_TOL).unwrap());
        prop_assert!(t.conditional_entropy() >= s.conditional_entropy() - 1e-12);
    }

    #[test]
    fn check_node_matches_the_tanh_rule(
        msgs in prop::collection::vec(prop_oneof![-6.0f64..-0.05, 0.05f64..6.0], 1..8),
        s in 0u8..2,
    ) {
        let t: f64 = msgs.iter().map(|m| (m / 2.0).tanh()).product();
        let want = if s == 1 { -2.0 * t.atanh() } else { 2.0 * t.atanh() };
        let got = check_node_op(&msgs, s);
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn variable_node_adds(m0 in -20.0f64..20.0, msgs in prop::collection::vec(-20.0f64..20.0, 0..8)) {
        let want = m0 + msgs.iter().sum::<f64>();
        prop_assert!((variable_node_op(m0, &msgs) - want).abs() < 1e-12);
    }

    #[test]
    fn gamma_round_trip(m in prop_oneof![-25.0f64..-1e-3, 1e-3f64..25.0]) {
        let (sign, mag) = gamma(m);
        let back = gamma_inverse(sign, mag);
        prop_assert!((back - m).abs() <= 1e-9 * m.abs().max(1.0), "{m} -> {back}");
    }

    #[test]
    fn syndrome_encoding_is_linear(
        seed in any::<u64>(),
        bits in prop::collection::vec((0u8..2, 0u8..2), 120),
    ) {
        let g = sample_graph(120, &DegreeDistribution::regular(3, 6).unwrap(), seed).unwrap();
        let (x, y): (Vec<u8>, Vec<u8>) = bits.into_iter().unzip();
        let xy: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
        let sx = syndrome_encode(&g, &x).unwrap();
        let sy = syndrome_encode(&g, &y).unwrap();
        prop_assert_eq!(syndrome_encode(&g, &xy).unwrap(), sx.xor(&sy));
        prop_assert!(syndrome_encode(&g, &vec![0; 120]).unwrap().bits().iter().all(|&b| b == 0));
    }

    #[test]
    fn sampled_graphs_follow_the_degree_distribution(seed in any::<u64>(), which in 0usize..3) {
        let (dd, n) = match which {
            0 => (DegreeDistribution::regular(3, 6).unwrap(), 600),
            1 => (DegreeDistribution::regular(4, 8).unwrap(), 400),
            _ => (DegreeDistribution::awgn_rate_half(), 2000),
        };
        let g = sample_graph(n, &dd, seed).unwrap();
        prop_assert_eq!(g.num_variables(), n);
        let total_v: usize = (0..n).map(|v| g.variable_degree(v)).sum();
        let total_c: usize = (0..g.num_checks()).map(|c| g.check_degree(c)).sum();
        prop_assert_eq!(total_v, g.num_edges());
        prop_assert_eq!(total_c, g.num_edges());
        for (deg, frac) in g.variable_edge_fractions() {
            let want = dd.lambda().iter().find(|&&(d, _)| d == deg).map_or(0.0, |&(_, f)| f);
            prop_assert!((frac - want).abs() < 0.01, "degree {deg}: {frac} vs {want}");
        }
        if dd.is_regular() {
            prop_assert_eq!(g.num_checks() * dd.max_check_degree(), g.num_edges());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn de_step_keeps_mass_and_symmetry(seed in any::<u64>(), dv in 2usize..5, dc in 3usize..8) {
        let s = random_source(&mut seeded(seed), 4);
        let de = DensityEvolution::new(DeSettings {
            mode: ConvolutionMode::Direct,
            ..DeSettings::with_grid(0.125, 16.0)
        })
        .unwrap();
        let dd = DegreeDistribution::regular(dv, dc).unwrap();
        let d0 = de.quantize_symmetric(&s.initial_density());
        prop_assert!(d0.to_discrete().check_symmetry(1e-9));
        let (traj, d) = de.run_fixed(&d0, &dd, 3).unwrap();
        prop_assert!((d.total_mass() - 1.0).abs() < 1e-12);
        prop_assert!(traj.max_mass_defect < 1e-9);
        prop_assert!(d.to_discrete().check_symmetry(1e-9));
    }
}
