//! Acceptance suite: one test per criterion, each printing a single
//! [PASS]/[FAIL] line (visible with --nocapture; the harness result line
//! mirrors it). Criteria with runtime limits assert their own elapsed time.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use logbm_core::geometry::body::{ConvexBody, Halfspace};
use logbm_core::geometry::builtin::random_sym_polytope;
use logbm_core::geometry::grid::DirectionGrid;
use logbm_core::geometry::linalg::SymMatrix;
use logbm_core::geometry::{ops, vector};
use logbm_core::interpolation::closed::ClosedFamily;
use logbm_core::interpolation::sandwich::norm_sandwich;
use logbm_core::verifier::logbm::GridCache;
use logbm_core::verifier::logconcavity::closed_family_volume;
use logbm_core::verifier::{
    check_inclusion_c_in_l, check_log_bm, check_logconcavity_closed, check_real_2d_log_bm,
    check_santalo, default_probes, CheckBody, Verdict, VolumeCfg,
};
use logbm_core::volume::exact2d::volume_exact_2d;
use logbm_core::volume::mc::mc_volume_with;
use logbm_core::volume::rng::SplitMix64;

const PI: f64 = std::f64::consts::PI;

struct Criterion {
    label: &'static str,
    start: Instant,
    limit: Option<f64>,
}

impl Criterion {
    fn new(label: &'static str, limit_secs: Option<f64>) -> Self {
        Self {
            label,
            start: Instant::now(),
            limit: limit_secs,
        }
    }

    fn finish(self, ok: bool, detail: String) {
        let elapsed = self.start.elapsed().as_secs_f64();
        let time_ok = self.limit.map(|l| elapsed <= l).unwrap_or(true);
        let verdict = if ok && time_ok { "PASS" } else { "FAIL" };
        println!("[{verdict}] {}: {detail} ({elapsed:.1}s)", self.label);
        assert!(ok, "{}: {detail}", self.label);
        assert!(
            time_ok,
            "{}: runtime {elapsed:.1}s exceeds {:.0}s limit",
            self.label,
            self.limit.unwrap_or(0.0)
        );
    }
}

/// The full builtin zoo of criterion 1: ball, cube, cross-polytope,
/// 3 lp balls, 3 ellipsoids, 5 seeded random polytopes — all in R^4.
fn builtin_zoo() -> Vec<(String, ConvexBody<f64>)> {
    let mut zoo: Vec<(String, ConvexBody<f64>)> = vec![
        ("ball".into(), ConvexBody::euclidean_ball(4).unwrap()),
        (
            "cube".into(),
            ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], false).unwrap(),
        ),
        (
            "cross".into(),
            ConvexBody::lp_ball(1.0, vec![1.0, 1.0], false).unwrap(),
        ),
        (
            "lp-1c".into(),
            ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap(),
        ),
        (
            "lp-1.5c".into(),
            ConvexBody::lp_ball(1.5, vec![1.0, 2.0], true).unwrap(),
        ),
        (
            "lp-3".into(),
            ConvexBody::lp_ball(3.0, vec![1.0, 0.5], false).unwrap(),
        ),
        (
            "ell-iso".into(),
            ConvexBody::hermitian_ellipsoid(SymMatrix::diagonal(&[2.0; 4]), true).unwrap(),
        ),
        (
            "ell-diag".into(),
            ConvexBody::hermitian_ellipsoid(SymMatrix::diagonal(&[1.0, 1.0, 4.0, 4.0]), true)
                .unwrap(),
        ),
        (
            "ell-full".into(),
            ConvexBody::hermitian_ellipsoid(
                SymMatrix::from_rows(
                    4,
                    vec![
                        2.0, 0.3, 0.0, 0.1, //
                        0.3, 1.5, 0.2, 0.0, //
                        0.0, 0.2, 1.0, 0.1, //
                        0.1, 0.0, 0.1, 2.5,
                    ],
                )
                .unwrap(),
                false,
            )
            .unwrap(),
        ),
    ];
    for seed in [3u64, 7, 11, 19, 31] {
        zoo.push((
            format!("poly-{seed}"),
            random_sym_polytope(4, 10, seed).unwrap(),
        ));
    }
    zoo
}

fn random_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = SplitMix64::keyed(seed, 0);
    (0..count)
        .map(|_| (0..dim).map(|_| 3.0 * rng.next_symmetric()).collect())
        .collect()
}

#[test]
fn criterion_1_duality_suite() {
    let c = Criterion::new("criterion 1 (duality)", Some(10.0));
    let tol = 1e-8;
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for (i, (_, body)) in builtin_zoo().iter().enumerate() {
        let polar = ops::polar(body).unwrap();
        let double = ops::polar(&polar).unwrap();
        for x in random_points(4, 100, 1000 + i as u64) {
            if vector::norm(&x) < 1e-6 {
                continue;
            }
            // gauge/support duality: gauge of the polar equals the support
            let h = ops::support(body, &x).unwrap();
            let gp = ops::gauge(&polar, &x).unwrap();
            worst = worst.max((h - gp).abs() / (1.0 + h.abs()));
            // polar involution through the gauge
            let g = ops::gauge(body, &x).unwrap();
            let gg = ops::gauge(&double, &x).unwrap();
            worst = worst.max((g - gg).abs() / (1.0 + g.abs()));
            checked += 1;
        }
    }
    c.finish(
        worst <= tol,
        format!("{checked} point checks over 14 bodies, worst relative deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_2_volume_calibration() {
    let c = Criterion::new("criterion 2 (volume calibration)", Some(120.0));
    // MC coverage on B_2^4: the 99.9% interval should cover pi^2/2 in at
    // least 99 of 100 seeds
    let truth = PI * PI / 2.0;
    let mut covered = 0usize;
    for seed in 0..100u64 {
        let e = mc_volume_with(&[1.0; 4], 1_000_000, seed, 0.999, |x| {
            vector::norm_sq(x) <= 1.0
        })
        .unwrap();
        if (truth - e.value).abs() <= e.half_width {
            covered += 1;
        }
    }
    // exact-2D versus analytic on the planar cube and cross-polytope
    let cube2 = ConvexBody::h_polytope(vec![
        Halfspace { normal: vec![1.0, 0.0], offset: 1.0 },
        Halfspace { normal: vec![-1.0, 0.0], offset: 1.0 },
        Halfspace { normal: vec![0.0, 1.0], offset: 1.0 },
        Halfspace { normal: vec![0.0, -1.0], offset: 1.0 },
    ])
    .unwrap();
    let s = 0.5f64.sqrt();
    let cross2 = ConvexBody::h_polytope(vec![
        Halfspace { normal: vec![s, s], offset: s },
        Halfspace { normal: vec![-s, s], offset: s },
        Halfspace { normal: vec![s, -s], offset: s },
        Halfspace { normal: vec![-s, -s], offset: s },
    ])
    .unwrap();
    let exact_ok = (volume_exact_2d(&cube2).unwrap().value - 4.0).abs() < 1e-12
        && (volume_exact_2d(&cross2).unwrap().value - 2.0).abs() < 1e-12;
    // complex l1 ball: MC interval must cover pi^2/6
    let l1 = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
    let e = mc_volume_with(&[1.0; 4], 1_000_000, 424242, 0.999, |x| {
        ops::gauge(&l1, x).map(|g| g <= 1.0).unwrap_or(false)
    })
    .unwrap();
    let l1_ok = (PI * PI / 6.0 - e.value).abs() <= e.half_width;
    c.finish(
        covered >= 99 && exact_ok && l1_ok,
        format!(
            "B_2^4 coverage {covered}/100, exact-2D cube/cross to 1e-12: {exact_ok}, \
             complex l1 within CI: {l1_ok}"
        ),
    );
}

/// The Theorem 1 zoo: all pairs from 8 complex bodies at three lambdas.
fn theorem1_zoo() -> Vec<(&'static str, CheckBody)> {
    let hull = |seed: u64| {
        let ConvexBody::VPolytope { vertices } = random_sym_polytope::<f64>(4, 6, seed).unwrap()
        else {
            unreachable!()
        };
        CheckBody::complex_hull(
            vertices
                .into_iter()
                .map(|v| Halfspace { normal: v, offset: 1.0 })
                .collect(),
        )
        .unwrap()
    };
    vec![
        ("ball", CheckBody::Plain(ConvexBody::euclidean_ball(4).unwrap())),
        (
            "l1",
            CheckBody::Plain(ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap()),
        ),
        (
            "l1.5",
            CheckBody::Plain(ConvexBody::lp_ball(1.5, vec![1.0, 1.0], true).unwrap()),
        ),
        (
            "l3",
            CheckBody::Plain(ConvexBody::lp_ball(3.0, vec![1.0, 1.0], true).unwrap()),
        ),
        (
            "ellA",
            CheckBody::Plain(
                ConvexBody::hermitian_ellipsoid(
                    SymMatrix::diagonal(&[1.0, 1.0, 2.0, 2.0]),
                    true,
                )
                .unwrap(),
            ),
        ),
        (
            "ellB",
            CheckBody::Plain(
                ConvexBody::hermitian_ellipsoid(
                    SymMatrix::diagonal(&[1.6, 1.6, 0.7, 0.7]),
                    true,
                )
                .unwrap(),
            ),
        ),
        ("hullA", hull(12)),
        ("hullB", hull(7)),
    ]
}

#[test]
fn criterion_3_theorem1_suite() {
    let c = Criterion::new("criterion 3 (Theorem 1 log-BM)", Some(600.0));
    let zoo = theorem1_zoo();
    let grids = GridCache::default();
    let lambdas = [0.25, 0.5, 0.75];
    let mut worst: (f64, String) = (f64::INFINITY, String::new());
    let mut violated = 0usize;
    let mut total = 0usize;
    let mut index = 0u64;
    for i in 0..zoo.len() {
        for j in (i + 1)..zoo.len() {
            let cfg = VolumeCfg {
                samples: 150_000,
                orbit_reps: 200_000,
                ..VolumeCfg::with_seed(20_260_825 + 1000 * index)
            };
            index += 1;
            let id = format!("{}-{}", zoo[i].0, zoo[j].0);
            let reports =
                check_log_bm(&id, &zoo[i].1, &zoo[j].1, &lambdas, &cfg, &grids).unwrap();
            for r in reports {
                total += 1;
                if r.verdict == Verdict::Violated {
                    violated += 1;
                }
                if r.margin < worst.0 {
                    worst = (r.margin, format!("{id} at lambda {}", r.lambda.unwrap()));
                }
            }
        }
    }
    // all pairs in this zoo are non-homothetic, so every margin must be
    // strictly positive (inner L_lambda body versus CI-upper RHS)
    c.finish(
        violated == 0 && worst.0 > 0.0,
        format!(
            "{total} checks over 28 pairs, {violated} violated, \
             worst inner margin {:+.4} ({})",
            worst.0, worst.1
        ),
    );
}

#[test]
fn criterion_4_theorem3_suite() {
    let c = Criterion::new("criterion 4 (Theorem 3 log-concavity)", None);
    let lambdas = [0.0, 0.25, 0.5, 0.75, 1.0];
    // Hermitian geodesic family: log-volume must be affine in lambda
    let herm = ClosedFamily::HermitianPair {
        a0: SymMatrix::identity(4),
        a1: SymMatrix::diagonal(&[4.0, 4.0, 1.0, 1.0]),
    };
    let v0 = closed_family_volume(&herm, 0.0).unwrap().ln();
    let v1 = closed_family_volume(&herm, 1.0).unwrap().ln();
    let mut affine_dev = 0.0f64;
    for l in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let v = closed_family_volume(&herm, l).unwrap().ln();
        affine_dev = affine_dev.max((v - ((1.0 - l) * v0 + l * v1)).abs());
    }
    let herm_reports = check_logconcavity_closed("herm", &herm, &lambdas).unwrap();
    let herm_ok = affine_dev < 1e-9
        && herm_reports.iter().all(|r| r.margin.abs() < 1e-9)
        && herm_reports.iter().all(|r| r.verdict != Verdict::Violated);
    // lp family: midpoint log-concavity with margin >= -1e-9
    let lp = ClosedFamily::LpPair {
        p0: 1.0,
        p1: f64::INFINITY,
        weights: vec![1.0, 1.0],
    };
    let lp_reports = check_logconcavity_closed("lp", &lp, &lambdas).unwrap();
    let lp_ok = lp_reports
        .iter()
        .all(|r| r.margin >= -1e-9 && r.verdict != Verdict::Violated);
    c.finish(
        herm_ok && lp_ok,
        format!(
            "Hermitian affine deviation {affine_dev:.2e}, \
             lp midpoint margins {:?}",
            lp_reports.iter().map(|r| r.margin).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_5_inclusion_suite() {
    let c = Criterion::new("criterion 5 (Prop. 2 inclusion)", None);
    let pairs = [
        (
            ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap(),
            ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap(),
        ),
        (
            ConvexBody::euclidean_ball(4).unwrap(),
            ConvexBody::lp_ball(1.5, vec![1.0, 1.0], true).unwrap(),
        ),
        (
            ConvexBody::hermitian_ellipsoid(SymMatrix::diagonal(&[1.0, 1.0, 2.0, 2.0]), true)
                .unwrap(),
            ConvexBody::lp_ball(3.0, vec![1.0, 1.0], true).unwrap(),
        ),
    ];
    let grid = Arc::new(DirectionGrid::hopf_orbit(2000).unwrap());
    let mut all_ok = true;
    let mut details = Vec::new();
    for (i, (k, t)) in pairs.iter().enumerate() {
        let probes = default_probes(4, 200, 50 + i as u64);
        let r = check_inclusion_c_in_l(
            &format!("pair-{i}"),
            k,
            t,
            0.5,
            &probes,
            Arc::clone(&grid),
            2,
            0.05,
            8,
        )
        .unwrap();
        all_ok &= r.verdict == Verdict::Holds;
        details.push(format!("pair {i}: min slack {:+.2e}", r.margin));
    }
    c.finish(
        all_ok,
        format!("3 pairs x 200 certified probes, zero violations ({})", details.join(", ")),
    );
}

#[test]
fn criterion_6_interpolation_sandwich() {
    let c = Criterion::new("criterion 6 (interpolation sandwich)", None);
    let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
    let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
    let grid = DirectionGrid::hopf_orbit(4000).unwrap();
    let x = [1.0, 0.0, 0.0, 0.0];
    // Calderon: lambda = 1/2 between l1 and linf is l2, so ||x||_{1/2} = 1
    let mut gaps = Vec::new();
    let mut bracket_ok = true;
    for m in [1usize, 2, 3] {
        let s = norm_sandwich(&k, &t, 0.5, &x, &grid, m, 0.05, 2000).unwrap();
        bracket_ok &= s.lower <= 1.0 + 1e-9 && s.upper >= 1.0 - 1e-9;
        gaps.push(s.upper - s.lower);
    }
    let monotone = gaps.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let gap_ok = *gaps.last().unwrap() <= 0.10;
    c.finish(
        bracket_ok && monotone && gap_ok,
        format!(
            "gaps over m=1,2,3: {:?} (bracket 1, final gap <= 10%, non-increasing)",
            gaps.iter().map(|g| format!("{g:.4}")).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_7_santalo_suite() {
    let c = Criterion::new("criterion 7 (Santalo-type product)", None);
    let ball = ConvexBody::euclidean_ball(4).unwrap();
    let cfg = VolumeCfg {
        samples: 200_000,
        ..VolumeCfg::with_seed(717)
    };
    let eq = check_santalo("ball-ball", &ball, &CheckBody::Plain(ball.clone()), &cfg).unwrap();
    let equality_ok = eq.margin.abs() <= eq.error_budget.total
        && matches!(eq.verdict, Verdict::Holds | Verdict::HoldsWithinCi);
    let pairs = [
        (ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap(), ball.clone()),
        (
            ConvexBody::lp_ball(1.5, vec![1.0, 1.0], true).unwrap(),
            ConvexBody::hermitian_ellipsoid(SymMatrix::diagonal(&[1.0, 1.0, 2.0, 2.0]), true)
                .unwrap(),
        ),
        (
            ConvexBody::lp_ball(3.0, vec![1.0, 0.8], true).unwrap(),
            ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap(),
        ),
    ];
    let mut pairs_ok = true;
    let mut margins = Vec::new();
    for (i, (k, t)) in pairs.iter().enumerate() {
        let cfg = VolumeCfg {
            samples: 200_000,
            ..VolumeCfg::with_seed(718 + i as u64)
        };
        let r = check_santalo(&format!("pair-{i}"), k, &CheckBody::Plain(t.clone()), &cfg)
            .unwrap();
        pairs_ok &= matches!(r.verdict, Verdict::Holds | Verdict::HoldsWithinCi);
        margins.push(format!("{:+.3}", r.margin));
    }
    c.finish(
        equality_ok && pairs_ok,
        format!(
            "self-polar equality margin {:+.4} within budget {:.4}; \
             3 complex pairs hold (margins {})",
            eq.margin,
            eq.error_budget.total,
            margins.join(", ")
        ),
    );
}

#[test]
fn criterion_8_determinism() {
    let c = Criterion::new("criterion 8 (determinism)", None);
    let suite = concat!(env!("CARGO_MANIFEST_DIR"), "/suites/paper-suite.json");
    let tmp = std::env::temp_dir().join(format!("logbm-det-{}", std::process::id()));
    let mut outputs = Vec::new();
    let mut runs_ok = true;
    for (tag, jobs) in [("run1", None), ("run2", None), ("jobs1", Some("1")), ("jobs8", Some("8"))]
    {
        let out = tmp.join(tag);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_logbm"));
        cmd.args(["verify", suite, "--out"]).arg(&out);
        if let Some(j) = jobs {
            cmd.args(["--jobs", j]);
        }
        let status = cmd
            .stdout(std::process::Stdio::null())
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        runs_ok &= status.code() == Some(0);
        outputs.push(std::fs::read(out.join("report.json")).unwrap());
    }
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    // the shipped report must also round-trip through the serde model
    let parsed: Result<serde_json::Value, _> = serde_json::from_slice(&outputs[0]);
    let _ = std::fs::remove_dir_all(&tmp);
    c.finish(
        runs_ok && identical && parsed.is_ok(),
        format!(
            "4 runs (twice, --jobs 1, --jobs 8) exit 0: {runs_ok}, \
             report.json bit-identical: {identical}"
        ),
    );
}

#[test]
fn criterion_9_blyz_planar_suite() {
    let c = Criterion::new("criterion 9 (BLYZ planar)", None);
    let grids = GridCache::default();
    let lambdas = [0.25, 0.5, 0.75];
    let seeds = [1u64, 2, 4, 5, 6, 8, 9, 10, 11, 12];
    let mut worst = f64::INFINITY;
    let mut ok = true;
    for (i, s) in seeds.iter().enumerate() {
        let k: ConvexBody<f64> = random_sym_polytope(2, 8, *s).unwrap();
        let t: ConvexBody<f64> = random_sym_polytope(2, 8, 100 + *s).unwrap();
        let cfg = VolumeCfg::with_seed(900 + i as u64);
        let reports =
            check_real_2d_log_bm(&format!("blyz-{s}"), &k, &t, &lambdas, &cfg, &grids).unwrap();
        for r in reports {
            ok &= r.margin >= 0.0 && r.verdict != Verdict::Violated;
            worst = worst.min(r.margin);
        }
    }
    // homothetic pair: exact equality on the outer body within 1e-9
    let k = ConvexBody::h_polytope(vec![
        Halfspace { normal: vec![1.0, 0.0], offset: 1.0 },
        Halfspace { normal: vec![-1.0, 0.0], offset: 1.0 },
        Halfspace { normal: vec![0.0, 1.0], offset: 1.0 },
        Halfspace { normal: vec![0.0, -1.0], offset: 1.0 },
    ])
    .unwrap();
    let t = ConvexBody::h_polytope(vec![
        Halfspace { normal: vec![1.0, 0.0], offset: 3.0 },
        Halfspace { normal: vec![-1.0, 0.0], offset: 3.0 },
        Halfspace { normal: vec![0.0, 1.0], offset: 3.0 },
        Halfspace { normal: vec![0.0, -1.0], offset: 3.0 },
    ])
    .unwrap();
    let cfg = VolumeCfg::with_seed(990);
    let hom = check_real_2d_log_bm("homothety", &k, &t, &lambdas, &cfg, &grids).unwrap();
    let mut hom_dev = 0.0f64;
    for r in &hom {
        hom_dev = hom_dev.max(r.margin_outer.unwrap().abs());
        ok &= r.verdict != Verdict::Violated;
    }
    c.finish(
        ok && hom_dev < 1e-9,
        format!(
            "10 random polygon pairs x 3 lambdas, worst inner margin {worst:+.4}; \
             homothetic outer deviation {hom_dev:.2e}"
        ),
    );
}
