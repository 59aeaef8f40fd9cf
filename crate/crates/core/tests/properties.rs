//! Property-based invariants: gauge/support duality, polar involution,
//! complex-rotation algebra, and logarithmic-mean bound identities, over
//! randomized bodies, points, and directions.

use std::sync::Arc;

use proptest::prelude::*;

use logbm_core::geometry::body::ConvexBody;
use logbm_core::geometry::builtin::random_sym_polytope;
use logbm_core::geometry::grid::DirectionGrid;
use logbm_core::geometry::linalg::SymMatrix;
use logbm_core::geometry::{ops, vector};
use logbm_core::logmean::{self, log_mean_outer};

const DUALITY_TOL: f64 = 1e-8;

/// A small pool of representative bodies in R^4, indexed so proptest can
/// shrink on the index.
fn body(index: usize) -> ConvexBody<f64> {
    match index % 7 {
        0 => ConvexBody::euclidean_ball(4).unwrap(),
        1 => ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap(),
        2 => ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 0.5], true).unwrap(),
        3 => ConvexBody::lp_ball(2.5, vec![1.0, 2.0], false).unwrap(),
        4 => ConvexBody::hermitian_ellipsoid(
            SymMatrix::diagonal(&[1.0, 1.0, 3.0, 3.0]),
            true,
        )
        .unwrap(),
        5 => random_sym_polytope(4, 10, 11).unwrap(),
        _ => random_sym_polytope(4, 14, 23).unwrap(),
    }
}

fn finite_vec4() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 4).prop_filter("nonzero", |v| {
        v.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-3
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// <x, theta> <= gauge_K(x) * h_K(theta): the defining duality pairing.
    #[test]
    fn gauge_support_pairing(idx in 0usize..7, x in finite_vec4(), theta in finite_vec4()) {
        let k = body(idx);
        let g = ops::gauge(&k, &x).unwrap();
        let h = ops::support(&k, &theta).unwrap();
        let pairing = vector::dot(&x, &theta);
        prop_assert!(pairing <= g * h * (1.0 + DUALITY_TOL) + DUALITY_TOL);
    }

    /// gauge of the polar equals the support of the body.
    #[test]
    fn polar_gauge_is_support(idx in 0usize..7, x in finite_vec4()) {
        let k = body(idx);
        let p = ops::polar(&k).unwrap();
        let lhs = ops::gauge(&p, &x).unwrap();
        let rhs = ops::support(&k, &x).unwrap();
        prop_assert!((lhs - rhs).abs() <= DUALITY_TOL * (1.0 + rhs.abs()),
            "gauge(K°) {lhs} vs h_K {rhs}");
    }

    /// polar(polar(K)) = K, observed through the gauge at random points.
    #[test]
    fn polar_involution(idx in 0usize..7, x in finite_vec4()) {
        let k = body(idx);
        let pp = ops::polar(&ops::polar(&k).unwrap()).unwrap();
        let a = ops::gauge(&k, &x).unwrap();
        let b = ops::gauge(&pp, &x).unwrap();
        prop_assert!((a - b).abs() <= DUALITY_TOL * (1.0 + a.abs()),
            "gauge {a} vs double-polar gauge {b}");
    }

    /// R_{phi1} R_{phi2} = R_{phi1 + phi2}, to 1e-10.
    #[test]
    fn rotation_composition(x in finite_vec4(), phi1 in -7.0f64..7.0, phi2 in -7.0f64..7.0) {
        let once = vector::rotate_complex(
            &vector::rotate_complex(&x, phi2).unwrap(), phi1).unwrap();
        let both = vector::rotate_complex(&x, phi1 + phi2).unwrap();
        for (a, b) in once.iter().zip(&both) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    /// |<x, y>_C| is invariant under rotating either argument, and equals
    /// sup_phi <x, R_phi y> (checked against a fine phi sweep).
    #[test]
    fn herm_abs_is_rotation_sup(x in finite_vec4(), y in finite_vec4(), phi in -7.0f64..7.0) {
        let h = vector::herm_abs(&x, &y);
        let rotated = vector::rotate_complex(&y, phi).unwrap();
        prop_assert!((vector::herm_abs(&x, &rotated) - h).abs() < 1e-10);
        let sweep = (0..720)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / 720.0;
                vector::dot(&x, &vector::rotate_complex(&y, a).unwrap())
            })
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(sweep <= h + 1e-12);
        prop_assert!(h - sweep <= 1e-4 * (1.0 + h)); // sweep gap is O(1/720^2)
    }

    /// The geometric-mean bound lies between the two support values and
    /// collapses exactly at the endpoints.
    #[test]
    fn log_mean_bound_between_supports(a in 0.01f64..10.0, b in 0.01f64..10.0,
                                       lambda in 0.0f64..1.0) {
        let g = logmean::geometric_mean(a, b, lambda);
        prop_assert!(g >= a.min(b) - 1e-12 && g <= a.max(b) + 1e-12);
        prop_assert_eq!(logmean::geometric_mean(a, b, 0.0), a);
        prop_assert_eq!(logmean::geometric_mean(a, b, 1.0), b);
    }

    /// L_lambda(K, K) = K: the outer body's support table matches K's and
    /// the certified shrink stays close to one on a fine 2D grid.
    #[test]
    fn log_mean_of_equal_bodies_is_identity(lambda in 0.05f64..0.95) {
        let k = ConvexBody::<f64>::lp_ball(3.0, vec![1.0], false).unwrap();
        let grid = Arc::new(DirectionGrid::uniform_2d(720).unwrap());
        let lm = log_mean_outer(&k, &k, lambda, Arc::clone(&grid)).unwrap();
        prop_assert!(lm.shrink > 0.98 && lm.shrink <= 1.0);
        for d in grid.directions.iter().take(32) {
            let a = ops::support(&lm.outer, d).unwrap();
            let b = ops::support(&k, d).unwrap();
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + b));
        }
    }
}

/// The outer L_lambda body contains the inner one, and both transform with
/// the expected homogeneity under scaling T.
#[test]
fn log_mean_scaling_identity() {
    let k = ConvexBody::<f64>::euclidean_ball(2).unwrap();
    let t = ConvexBody::lp_ball(2.0, vec![0.5], false).unwrap(); // 2 B_2^2
    let grid = Arc::new(DirectionGrid::uniform_2d(360).unwrap());
    let lm = log_mean_outer(&k, &t, 0.5, grid).unwrap();
    // homothetic pair: L_1/2 = 2^{1/2} B. The outer polytope overshoots the
    // ball between grid normals by ~ sqrt(2) mesh^2 / 8 ~ 1.4e-5 at 360 pairs.
    for d in [&[1.0, 0.0][..], &[0.0, 1.0], &[0.6, 0.8]] {
        let h = ops::support(&lm.outer, d).unwrap();
        assert!(h >= 2.0f64.sqrt() - 1e-12, "support {h} below the ball");
        assert!(h <= 2.0f64.sqrt() + 5e-5, "support {h} above the polytope bound");
    }
}
