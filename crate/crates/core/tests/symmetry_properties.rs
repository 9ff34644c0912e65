// SPDX-License-Identifier: Apache-2.0

mod common;

use minorantlab::functional::catalog::named;
use minorantlab::measure::{lp_distance, total_mass};
use minorantlab::symmetry::{rearrange, steiner_symmetrize, steiner_symmetrize_with, Hyperplane};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn symmetral_is_symmetric_about_the_hyperplane() {
    let f = named("sheared_gaussian_2d").unwrap();
    let h = Hyperplane::from_angle(0.7);
    let s = steiner_symmetrize_with(&f, &h, 129).unwrap();
    for k in 0..40 {
        let x = [-1.0 + 0.05 * k as f64, 0.4 - 0.02 * k as f64];
        let (a, b) = (s.eval(x), s.eval(h.reflect(x)));
        assert!((a - b).abs() <= 1e-9 * s.max_value(), "{x:?}: {a} vs {b}");
    }
}

#[test]
fn symmetral_keeps_the_maximum_and_log_concavity() {
    let f = named("asymmetric_gaussian_2d").unwrap();
    let s = steiner_symmetrize_with(&f, &Hyperplane::from_angle(1.1), 129).unwrap();
    // the peak need not sit on a node
    assert!(s.max_value() <= f.max_value() * (1.0 + 1e-12) && s.max_value() >= 0.99 * f.max_value());
    // midpoint log-concavity along a few segments through the bulk
    for (a, b) in [([-0.8, 0.1], [0.6, -0.3]), ([0.0, -1.0], [0.2, 1.0]), ([-0.5, -0.5], [0.5, 0.5])] {
        let m = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
        let (fa, fb, fm) = (s.eval(a), s.eval(b), s.eval(m));
        assert!(fm.ln() >= 0.5 * (fa.ln() + fb.ln()) - 1e-4);
    }
}

#[test]
fn rearrangement_is_rotation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = common::random_quadratic(&mut rng, 2, 0.0);
    let r = rearrange(&f).unwrap();
    for k in 0..12 {
        let th = k as f64 * 0.5;
        let x = [0.7 * th.cos(), 0.7 * th.sin()];
        assert!((r.eval(x) - r.eval([0.7, 0.0])).abs() <= 1e-12);
    }
}

#[test]
fn rearrangement_is_equimeasurable() {
    // equal level-set volumes give equal L^p norms for every p
    let f = named("asymmetric_gaussian_2d").unwrap();
    let r = rearrange(&f).unwrap();
    assert!((total_mass(&r).value - total_mass(&f).value).abs() <= 1e-9 * total_mass(&f).value);
    for t in [0.1, 0.3, 0.6, 0.9] {
        let (a, _) = f.levelset_volume(t * f.max_value());
        let (b, _) = r.levelset_volume(t * f.max_value());
        assert!((a - b).abs() <= 1e-9 * a.max(1e-12), "level {t}: {a} vs {b}");
    }
}

#[test]
fn one_dimensional_steiner_is_the_rearrangement() {
    for id in ["shifted_gaussian_1d", "one_sided_exponential", "asymmetric_tent_1d"] {
        let f = named(id).unwrap();
        let s = steiner_symmetrize(&f, &Hyperplane::origin()).unwrap();
        let r = rearrange(&f).unwrap();
        // nodes agree exactly; between nodes the grid interpolates linearly
        let d = lp_distance(&s, &r, 1.0).unwrap();
        assert!(d <= 1e-2 * total_mass(&f).value, "{id}: {d}");
    }
}
