use proptest::prelude::*;
use sce_core::saturn::{self, legendre, ring_coefficients, SaturnConfig};

proptest! {
    #[test]
    fn axial_series_matches_closed_form(q_tip in 0.1f64..5.0, q_ring in 0.1f64..5.0, r in 1.5f64..200.0) {
        let cfg = SaturnConfig::new(q_tip, q_ring).unwrap();
        let series = saturn::saturn_potential(&cfg, r, 0.0).unwrap();
        let exact = saturn::axial_exact(&cfg, r);
        prop_assert!((series - exact).abs() <= cfg.tol * cfg.l_max as f64 * q_ring.max(1.0));
    }

    #[test]
    fn series_terms_shrink(r in 1.01f64..50.0, theta in 0.0f64..std::f64::consts::PI) {
        let c = ring_coefficients(40);
        let x = theta.cos();
        let mut last = f64::INFINITY;
        for (l, cl) in c.iter().enumerate() {
            // |P_2l| ≤ 1, so the bound c_l r^{-2l} must fall monotonically
            let bound = cl * r.powi(-2 * l as i32);
            prop_assert!(bound < last);
            prop_assert!((cl * legendre(2 * l, x) * r.powi(-2 * l as i32)).abs() <= bound + 1e-300);
            last = bound;
        }
    }

    #[test]
    fn legendre_endpoint_and_bound(n in 0usize..80, x in -1.0f64..=1.0) {
        prop_assert!((legendre(n, 1.0) - 1.0).abs() < 1e-12);
        prop_assert!(legendre(n, x).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn gated_potential_is_smaller_on_axis(q in 0.1f64..5.0, r in 1.05f64..100.0) {
        let cfg = SaturnConfig::new(q, q).unwrap();
        let s = saturn::decay_comparison(&cfg, &[r]).unwrap()[0];
        prop_assert!(s.saturn.abs() <= s.bare.abs());
    }
}

#[test]
fn equal_charges_fall_off_as_inverse_cube() {
    let cfg = SaturnConfig::default();
    let grid: Vec<f64> = [10.0, 20.0, 40.0, 80.0].to_vec();
    let d = saturn::decay_comparison(&cfg, &grid).unwrap();
    let scaled: Vec<f64> = d.iter().map(|s| s.saturn * s.r.powi(3)).collect();
    // r³φ settles to q_tip/2 for a unit ring
    assert!(scaled
        .windows(2)
        .all(|w| (w[1] - 0.5).abs() < (w[0] - 0.5).abs()));
    assert!((scaled[3] - 0.5).abs() < 1e-3);
    let ratios: Vec<f64> = d.iter().map(|s| s.saturn / s.bare).collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn unequal_charges_fall_off_as_net_monopole() {
    let cfg = SaturnConfig::new(2.0, 0.5).unwrap();
    for &r in &[50.0, 100.0, 400.0] {
        let v = saturn::saturn_potential(&cfg, r, 0.4).unwrap() * r;
        assert!((v / 1.5 - 1.0).abs() < 1e-2);
    }
}
