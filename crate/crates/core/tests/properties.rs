use chainstate::lattice_energy::{
    bipartite_energy, bipartite_energy_quadrature, equidistant_energy, riesz_lattice_sum,
    BipartiteChain,
};
use chainstate::oracle::direct_bipartite_sum;
use chainstate::potential::{mie_potential, MieParams, PotentialSpec, RieszComponent};
use chainstate::specfun::{hurwitz_zeta, riemann_zeta, theta2, theta3, theta_derivative, ThetaKind};
use chainstate::transition::StationarityBalance;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn mie_pair() -> impl Strategy<Value = MieParams> {
    (1.5f64..12.0, 0.2f64..10.0).prop_map(|(m, gap)| MieParams::new(m + gap, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hurwitz_recurrence(s in 1.05f64..40.0, a in 0.01f64..50.0) {
        let lhs = hurwitz_zeta(s, a).unwrap();
        let rhs = a.powf(-s) + hurwitz_zeta(s, a + 1.0).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-12);
    }

    #[test]
    fn hurwitz_at_half(s in 1.05f64..60.0) {
        let z = riemann_zeta(s).unwrap();
        prop_assert!(rel(hurwitz_zeta(s, 0.5).unwrap(), (2f64.powf(s) - 1.0) * z) <= 1e-12);
    }

    #[test]
    fn hurwitz_decreases_in_shift(s in 1.1f64..20.0, a in 0.05f64..20.0, da in 1e-3f64..1.0) {
        prop_assert!(hurwitz_zeta(s, a + da).unwrap() < hurwitz_zeta(s, a).unwrap());
    }

    #[test]
    fn theta_duplication(x in 0.01f64..60.0) {
        let lhs = theta2(x).unwrap() + theta3(x).unwrap();
        prop_assert!(rel(lhs, theta3(0.25 * x).unwrap()) <= 1e-12);
    }

    #[test]
    fn theta_derivative_signs(x in 0.05f64..20.0, order in 1u32..=3) {
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        for kind in [ThetaKind::Theta2, ThetaKind::Theta3] {
            prop_assert!(sign * theta_derivative(kind, order, x).unwrap() > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exchange_symmetry(p in mie_pair(), a in 0.7f64..4.0, ln_ratio in -2.0f64..2.0) {
        let spec = mie_potential(p);
        let fwd = BipartiteChain::from_log_ratio(a, ln_ratio).unwrap();
        let back = BipartiteChain::from_log_ratio(a, -ln_ratio).unwrap();
        let e1 = bipartite_energy(&spec, &fwd).unwrap().value;
        let e2 = bipartite_energy(&spec, &back).unwrap().value;
        prop_assert!((e1 - e2).abs() <= 1e-13 * e1.abs().max(1.0));
    }

    #[test]
    fn riesz_sum_symmetric(s in 1.2f64..20.0, a in 0.5f64..5.0, ratio in 0.1f64..10.0) {
        let u = riesz_lattice_sum(s, a, ratio).unwrap();
        prop_assert!(rel(riesz_lattice_sum(s, a, 1.0 / ratio).unwrap(), u) <= 1e-13);
    }

    #[test]
    fn equidistant_reduction(p in mie_pair(), a in 0.7f64..4.0) {
        let spec = mie_potential(p);
        let eq = equidistant_energy(&spec, a).unwrap().value;
        let bip = bipartite_energy(&spec, &BipartiteChain::equidistant(a).unwrap()).unwrap().value;
        prop_assert!((eq - bip).abs() <= 1e-13 * eq.abs().max(1.0));
    }

    #[test]
    fn balance_monotone(p in mie_pair(), d1 in 1e-4f64..0.5, d2 in 1e-4f64..0.5) {
        let b = StationarityBalance::new(p).unwrap();
        let (lo, hi) = if d1 < d2 { (d1, d2) } else { (d2, d1) };
        prop_assume!(hi - lo > 1e-6);
        prop_assert!(b.scaled_at(lo).unwrap() < b.scaled_at(hi).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn three_methods_agree(
        s1 in 3.0f64..14.0,
        s2 in 1.5f64..3.0,
        c2 in -3.0f64..3.0,
        a in 0.8f64..3.0,
        ratio in 1.0f64..4.0,
    ) {
        let spec = PotentialSpec::from_components(vec![
            RieszComponent::new(1.0, s1).unwrap(),
            RieszComponent::new(c2, s2).unwrap(),
        ]).unwrap();
        let chain = BipartiteChain::new(a, ratio).unwrap();
        let closed = bipartite_energy(&spec, &chain).unwrap().value;
        let quad = bipartite_energy_quadrature(&spec, &chain).unwrap().value;
        let brute = direct_bipartite_sum(&spec, &chain, 1e-12).unwrap().value;
        let scale: f64 = spec.components().iter()
            .map(|c| (c.coefficient * riesz_lattice_sum(c.exponent, a, ratio).unwrap()).abs())
            .sum();
        prop_assert!((quad - closed).abs() <= 1e-9 * scale);
        prop_assert!((brute - closed).abs() <= 1e-9 * scale);
    }
}
