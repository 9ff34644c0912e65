// SPDX-License-Identifier: Apache-2.0

use minorantlab::functional::catalog::{named, NAMED};
use minorantlab::functional::AlphaParam;
use minorantlab::hull::{Affine, EpiPoint, InnerLinearization};
use minorantlab::measure::{linearization_mass, lp_distance, mass_affine_piece, total_mass, total_mass_layer_cake, Simplex};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn splitting_a_triangle_keeps_the_mass(
        ax in -1.0..1.0f64, ay in -1.0..1.0f64, bx in -1.0..1.0f64, by in -1.0..1.0f64,
        cx in -1.0..1.0f64, cy in -1.0..1.0f64, gx in -2.0..2.0f64, gy in -2.0..2.0f64,
        s in 0.1..0.9f64, which in 0usize..3,
    ) {
        let alpha = AlphaParam::Finite([0.0, 1.0, -0.5][which]);
        let offset = if which == 2 { 2.0 * (gx.abs() + gy.abs()) + 0.1 } else { 0.2 };
        let l = Affine { gradient: [gx, gy], offset };
        let (a, b, c) = ([ax, ay], [bx, by], [cx, cy]);
        let Ok(whole) = Simplex::new(2, &[a, b, c]) else { return Ok(()) };
        prop_assume!(whole.volume() > 1e-3);
        let m = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
        let left = Simplex::new(2, &[a, m, c]).unwrap();
        let right = Simplex::new(2, &[m, b, c]).unwrap();
        let w = mass_affine_piece(alpha, &whole, &l).unwrap().value;
        let parts = mass_affine_piece(alpha, &left, &l).unwrap().value + mass_affine_piece(alpha, &right, &l).unwrap().value;
        prop_assert!((w - parts).abs() <= 1e-11 * w.abs().max(1e-3), "{w} vs {parts}");
    }

    #[test]
    fn mass_is_monotone_in_the_base(h in 0.0..1.0f64) {
        // lowering every height raises F
        let pts = [EpiPoint::new([-1.0, -1.0], 0.5), EpiPoint::new([1.0, -1.0], 0.8), EpiPoint::new([0.0, 1.0], 0.3)];
        let lower: Vec<_> = pts.iter().map(|p| EpiPoint::new(p.x, p.t - h)).collect();
        let a = InnerLinearization::build(2, &pts, false).unwrap();
        let b = InnerLinearization::build(2, &lower, false).unwrap();
        let ma = linearization_mass(AlphaParam::LOG, &a, 0).unwrap().value;
        let mb = linearization_mass(AlphaParam::LOG, &b, 0).unwrap().value;
        prop_assert!(mb >= ma * (1.0 - 1e-14));
    }
}

#[test]
fn closed_form_and_layer_cake_agree_on_the_catalog() {
    for id in NAMED {
        let f = named(id).unwrap();
        let (a, b) = (total_mass(&f), total_mass_layer_cake(&f));
        assert!((a.value - b.value).abs() <= 1e-6 * a.value, "{id}: {} vs {}", a.value, b.value);
    }
}

#[test]
fn distance_to_self_is_zero_and_symmetric() {
    let f = named("gaussian_1d").unwrap();
    let g = named("shifted_gaussian_1d").unwrap();
    assert!(lp_distance(&f, &f, 1.0).unwrap().abs() < 1e-12);
    let (a, b) = (lp_distance(&f, &g, 1.0).unwrap(), lp_distance(&g, &f, 1.0).unwrap());
    assert!(a > 0.1 && (a - b).abs() < 1e-9);
}
