// SPDX-License-Identifier: Apache-2.0

use minorantlab::functional::catalog::named;
use minorantlab::hull::{alpha_minorant_from_points, eval_linearization_facets, eval_linearization_lp, EpiPoint, InnerLinearization};
use minorantlab::Error;
use proptest::prelude::*;

fn epi_points(dim: usize) -> impl Strategy<Value = Vec<EpiPoint>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64, -1.0..3.0f64), 3..10).prop_map(move |v| {
        v.into_iter()
            .map(|(a, b, t)| EpiPoint::new([a, if dim == 1 { 0.0 } else { b }], t))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lower_hull_lies_below_its_points(pts in epi_points(2)) {
        let Ok(lin) = InnerLinearization::build(2, &pts, false) else { return Ok(()) };
        for p in &pts {
            prop_assert!(lin.eval(p.x) <= p.t + 1e-9);
        }
    }

    #[test]
    fn lower_hull_is_convex(pts in epi_points(2), s in 0.0..1.0f64, i in 0usize..10, j in 0usize..10) {
        let Ok(lin) = InnerLinearization::build(2, &pts, false) else { return Ok(()) };
        let (a, b) = (pts[i % pts.len()].x, pts[j % pts.len()].x);
        let m = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
        let chord = (1.0 - s) * lin.eval(a) + s * lin.eval(b);
        let v = lin.eval(m);
        // a rounded point on a boundary edge may fall just outside the domain
        if v.is_infinite() {
            prop_assert!(!lin.domain_contains(m));
        } else {
            prop_assert!(v <= chord + 1e-9);
        }
    }

    #[test]
    fn facet_and_lp_oracles_agree(pts in epi_points(1), x in -1.5..1.5f64) {
        let Ok(lin) = InnerLinearization::build(1, &pts, false) else { return Ok(()) };
        let (a, b) = (eval_linearization_facets(&lin, [x, 0.0]), eval_linearization_lp(1, &pts, [x, 0.0]));
        if a.is_finite() && b.is_finite() {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn minorant_points_must_lie_under_the_graph() {
    let f = named("gaussian_2d").unwrap();
    let inside = [([0.0, 0.0], 0.5), ([1.0, 0.0], 0.2), ([0.0, 1.0], 0.2)];
    assert!(alpha_minorant_from_points(&f, &inside).is_ok());
    let above = [([0.0, 0.0], 1.5), ([1.0, 0.0], 0.2), ([0.0, 1.0], 0.2)];
    assert!(matches!(alpha_minorant_from_points(&f, &above), Err(Error::PointAboveGraph { .. })));
}

#[test]
fn minorant_stays_below_host() {
    let f = named("gaussian_2d").unwrap();
    let pts: Vec<_> = [[0.3, 0.1], [-0.8, 0.4], [0.2, -0.9], [0.9, 0.7]]
        .iter()
        .map(|&x| (x, f.eval(x)))
        .collect();
    let q = alpha_minorant_from_points(&f, &pts).unwrap();
    for i in -20..=20 {
        for j in -20..=20 {
            let x = [i as f64 * 0.06, j as f64 * 0.06];
            assert!(q.eval(x) <= f.eval(x) * (1.0 + 1e-12) + 1e-300);
        }
    }
}
