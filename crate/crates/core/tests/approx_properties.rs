// SPDX-License-Identifier: Apache-2.0

use minorantlab::approx::{
    best_minorant, best_minorant_warm, brute_force_minorant_free_heights, g_functional, macbeath_pair,
    steiner_monotonicity_check, OptimizerConfig, SymmetralPoint,
};
use minorantlab::functional::catalog::named;
use minorantlab::symmetry::{chord_bounds, Hyperplane};

fn quick() -> OptimizerConfig {
    OptimizerConfig { restarts: 8, ..OptimizerConfig::default() }
}

#[test]
fn pair_members_stay_below_the_host() {
    let f = named("sheared_gaussian_2d").unwrap();
    let h = Hyperplane::from_angle(0.3);
    let along = [-h.normal()[1], h.normal()[0]];
    let pts: Vec<SymmetralPoint> = [(-0.6, 0.4, 0.9), (0.1, 0.8, -0.5), (0.7, 0.3, 0.2), (0.0, 0.2, 1.0)]
        .iter()
        .map(|&(a, frac, o)| {
            let base = [a * along[0], a * along[1]];
            let height = frac * f.max_value() * (-a * a).exp();
            let half = chord_bounds(&f, &h, base, height).unwrap().half_length();
            SymmetralPoint { base, height, offset: o * half }
        })
        .collect();
    let pair = macbeath_pair(&f, &h, &pts).unwrap();
    for i in -15..=15 {
        for j in -15..=15 {
            let x = [i as f64 * 0.1, j as f64 * 0.1];
            let fx = f.eval(x) * (1.0 + 1e-9);
            assert!(pair.q.eval(x) <= fx && pair.r.eval(x) <= fx, "{x:?}");
        }
    }
    let (p, q, r) = pair.masses();
    assert!(p.value <= 0.5 * (q.value + r.value) + 1e-9);
}

#[test]
fn best_mass_grows_with_the_budget() {
    let f = named("asymmetric_gaussian_2d").unwrap();
    let cfg = quick();
    let mut prev = best_minorant(&f, 3, &cfg).unwrap();
    for n in 4..=6 {
        let warm: Vec<_> = prev.minorant.linearization().break_points().iter().map(|p| p.x).collect();
        let next = best_minorant_warm(&f, n, &cfg, Some(&warm)).unwrap();
        assert!(next.mass.value >= prev.mass.value - prev.optimizer_gap, "N = {n}");
        prev = next;
    }
}

#[test]
fn g_is_nonnegative_up_to_its_bound() {
    for (id, n) in [("gaussian_1d", 3), ("unit_disk", 5), ("skewed_triangle", 4)] {
        let g = g_functional(&named(id).unwrap(), n, &quick()).unwrap();
        assert!(g.value >= -g.gap, "{id}: {} (gap {})", g.value, g.gap);
    }
}

#[test]
fn free_heights_never_beat_graph_heights() {
    let f = named("tent_1d").unwrap();
    let free = brute_force_minorant_free_heights(&f, 3, 41, 4, 1e7).unwrap();
    let best = best_minorant(&f, 3, &quick()).unwrap();
    assert!(free.mass.value <= best.mass.value + 1e-9);
}

#[test]
fn steiner_check_certifies_on_a_smooth_input() {
    let f = named("sheared_gaussian_2d").unwrap();
    let report = steiner_monotonicity_check(&f, &Hyperplane::from_angle(0.4), 4, &quick()).unwrap();
    assert!(report.certificate_ok, "{report:?}");
}
