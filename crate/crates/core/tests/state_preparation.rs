use fflcu::state_prep::{
    grover_rudolph_prepare, AntiderivativeDensity, DensityOracle, DiscreteDensity, GroverRudolph,
    LorentzianDensity,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn squared_amplitudes_are_bin_masses(weights in prop::collection::vec(0.0f64..5.0, 1..6usize)
        .prop_flat_map(|w| {
            let m = w.len();
            prop::collection::vec(0.0f64..5.0, 1usize << m).prop_map(move |v| (m, v))
        })) {
        let (m, w) = weights;
        prop_assume!(w.iter().sum::<f64>() > 1e-6);
        let density = DiscreteDensity::new(&w);
        let s = grover_rudolph_prepare(&density, m).unwrap();
        let total: f64 = w.iter().sum();
        for (a, wi) in s.amplitudes().iter().zip(&w) {
            prop_assert!(a.im == 0.0 && a.re >= 0.0);
            prop_assert!((a.norm_sqr() - wi / total).abs() < 1e-10);
        }
        prop_assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn density_mass_is_additive(lo in -3.0f64..0.0, mid in 0.0f64..1.0, hi in 1.0f64..3.0) {
        let d = AntiderivativeDensity { lo: -3.0, hi: 3.0, antiderivative: |x: f64| x.atan() };
        prop_assert!((d.mass(lo, hi) - d.mass(lo, mid) - d.mass(mid, hi)).abs() < 1e-14);
        let (a, b) = d.domain();
        prop_assert!((d.mass(a, b) - d.total_mass()).abs() < 1e-14);
    }

    #[test]
    fn preparation_inverts(m in 1usize..7, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let masses: Vec<f64> = (0..1usize << m).map(|_| r.random_range(0.0..1.0)).collect();
        let gr = GroverRudolph::from_bin_masses(&masses).unwrap();
        let mut amps = vec![fflcu::Complex64::new(0.0, 0.0); 1 << m];
        amps[0] = fflcu::Complex64::new(1.0, 0.0);
        gr.apply_slice(&mut amps);
        gr.apply_inverse_slice(&mut amps);
        prop_assert!((amps[0].re - 1.0).abs() < 1e-12);
        prop_assert!(amps[1..].iter().all(|a| a.norm() < 1e-12));
    }
}

#[test]
fn uniform_density_is_a_tensor_power_of_plus() {
    let plus = grover_rudolph_prepare(&DiscreteDensity::new(&[1.0, 1.0]), 1).unwrap();
    let plus = plus.amplitudes().to_vec();
    let mut tensor = vec![fflcu::Complex64::new(1.0, 0.0)];
    for m in 1..=8 {
        tensor = tensor
            .iter()
            .flat_map(|a| plus.iter().map(move |b| a * b))
            .collect();
        let s = grover_rudolph_prepare(&DiscreteDensity::new(&vec![1.0; 1 << m]), m).unwrap();
        assert_eq!(s.amplitudes(), &tensor[..], "m={m}");
    }
}

#[test]
fn lorentzian_bins_match_their_closed_form() {
    let d = LorentzianDensity {
        beta_p: 7.0,
        bins: 32,
    };
    let s = grover_rudolph_prepare(&d, 5).unwrap();
    let total = d.total_mass();
    for (i, a) in s.amplitudes().iter().enumerate() {
        let l = i as f64 - 16.0;
        let want = ((std::f64::consts::PI * (l + 1.0) / 7.0).atan()
            - (std::f64::consts::PI * l / 7.0).atan())
            / std::f64::consts::PI;
        assert!((a.norm_sqr() - want / total).abs() < 1e-12);
    }
}
