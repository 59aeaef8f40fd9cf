//! Suite execution: runs every check (in parallel), then writes report.json,
//! summary.csv, and per-check plot files in config order. Results are
//! bit-identical across job counts and repeated runs: all randomness comes
//! from the config seed through counter-based generators.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use logbm_core::geometry::grid::DirectionGrid;
use logbm_core::verifier::{
    check_inclusion_c_in_l, check_log_bm, check_logconcavity_closed,
    check_logconcavity_sandwich, check_real_2d_log_bm, check_santalo,
    check_unconditional_log_bm, default_probes, CheckBody, ErrorBudget, GridCache,
    InequalityReport, Verdict,
};

use crate::config::{
    build_body, build_plain, closed_family, CheckKind, CheckSpec, ExperimentConfig,
    SCHEMA_VERSION,
};

#[derive(Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u64,
    pub config: ExperimentConfig,
    pub reports: Vec<InequalityReport>,
}

pub struct SuiteOutcome {
    pub reports: Vec<InequalityReport>,
    pub exit_code: i32,
}

/// Exit code policy: 0 all holds (possibly within CI), 2 any violated,
/// 3 any inconclusive without a violation. (1 is reserved for config and
/// I/O errors and produced by the caller.)
pub fn exit_code(reports: &[InequalityReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Violated) {
        return 2;
    }
    if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        return 3;
    }
    0
}

fn failure_report(spec: &CheckSpec, message: String) -> InequalityReport {
    InequalityReport {
        check_id: spec.id.clone(),
        kind: spec.kind.as_str().to_string(),
        verdict: Verdict::Inconclusive,
        lambda: None,
        lhs: None,
        rhs: None,
        margin: f64::NAN,
        margin_outer: None,
        error_budget: ErrorBudget::default(),
        notes: vec![format!("check failed: {message}")],
        inputs: serde_json::json!({}),
    }
}

fn run_check(
    cfg: &ExperimentConfig,
    spec: &CheckSpec,
    index: usize,
    grids: &GridCache,
) -> Result<Vec<InequalityReport>, String> {
    let vcfg = cfg.volume_cfg(spec, index);
    let d = &cfg.defaults;
    let probes_n = spec.probes.unwrap_or(d.probes);
    let m = spec.m.unwrap_or(d.m);
    let epsilon = spec.epsilon.unwrap_or(d.epsilon);
    let budget = spec.budget.unwrap_or(d.budget);
    let grid_size = spec.grid_size.unwrap_or(d.grid_size);
    let err = |e: logbm_core::GeomError| e.to_string();
    let k_name = spec.k.as_deref().unwrap();
    let t_name = spec.t.as_deref().unwrap();
    let k_spec = &cfg.bodies[k_name];
    let t_spec = &cfg.bodies[t_name];
    match spec.kind {
        CheckKind::LogBm => {
            let k = build_body(k_spec)?;
            let t = build_body(t_spec)?;
            check_log_bm(&spec.id, &k, &t, &spec.lambdas, &vcfg, grids).map_err(err)
        }
        CheckKind::Unconditional => {
            let k = build_body(k_spec)?;
            let t = build_body(t_spec)?;
            check_unconditional_log_bm(&spec.id, &k, &t, &spec.lambdas, &vcfg, grids)
                .map_err(err)
        }
        CheckKind::LogBm2d => {
            let k = build_plain(k_name, k_spec)?;
            let t = build_plain(t_name, t_spec)?;
            check_real_2d_log_bm(&spec.id, &k, &t, &spec.lambdas, &vcfg, grids).map_err(err)
        }
        CheckKind::Santalo => {
            let k = build_plain(k_name, k_spec)?;
            let t = build_body(t_spec)?;
            check_santalo(&spec.id, &k, &t, &vcfg)
                .map(|r| vec![r])
                .map_err(err)
        }
        CheckKind::Inclusion => {
            let k = build_plain(k_name, k_spec)?;
            let t = build_plain(t_name, t_spec)?;
            let grid = probe_grid(&k, &t, grid_size)?;
            let probes = default_probes(k.dim(), probes_n, vcfg.seed);
            let mut out = Vec::new();
            for &lam in &spec.lambdas {
                out.push(
                    check_inclusion_c_in_l(
                        &spec.id,
                        &k,
                        &t,
                        lam,
                        &probes,
                        Arc::clone(&grid),
                        m,
                        epsilon,
                        budget,
                    )
                    .map_err(err)?,
                );
            }
            Ok(out)
        }
        CheckKind::LogConcavity => {
            let mode = spec.mode.as_deref().unwrap_or("auto");
            let family = closed_family(k_spec, t_spec);
            match (mode, family) {
                ("closed", None) => Err(format!(
                    "check {:?}: no closed-form family for this pair \
                     (need equal-weight complex lp balls or two Hermitian ellipsoids)",
                    spec.id
                )),
                ("closed", Some(f)) | ("auto", Some(f)) => {
                    check_logconcavity_closed(&spec.id, &f, &spec.lambdas).map_err(err)
                }
                _ => {
                    let k = build_plain(k_name, k_spec)?;
                    let t = build_plain(t_name, t_spec)?;
                    let grid = probe_grid(&k, &t, grid_size)?;
                    let probes = default_probes(k.dim(), probes_n, vcfg.seed);
                    check_logconcavity_sandwich(
                        &spec.id,
                        &k,
                        &t,
                        &spec.lambdas,
                        &probes,
                        grid,
                        m,
                        epsilon,
                        budget,
                        &vcfg,
                    )
                    .map_err(err)
                }
            }
        }
    }
}

/// Direction grid for interpolation-based checks: orbit representatives when
/// both bodies are exactly complex (sharper pairings), otherwise a plain
/// sphere grid of the matching dimension.
fn probe_grid(
    k: &logbm_core::geometry::body::ConvexBody<f64>,
    t: &logbm_core::geometry::body::ConvexBody<f64>,
    size: usize,
) -> Result<Arc<DirectionGrid<f64>>, String> {
    let grid = match k.dim() {
        2 => DirectionGrid::uniform_2d(size.max(8)),
        4 => {
            let orbit = CheckBody::Plain(k.clone()).exactly_complex()
                && CheckBody::Plain(t.clone()).exactly_complex();
            if orbit {
                DirectionGrid::hopf_orbit(size)
            } else {
                DirectionGrid::sphere_4d(size)
            }
        }
        d => {
            return Err(format!("no probe grid in dimension {d}"));
        }
    };
    grid.map(Arc::new).map_err(|e| e.to_string())
}

pub fn run_suite(cfg: &ExperimentConfig, out_dir: &Path) -> Result<SuiteOutcome, String> {
    fs::create_dir_all(out_dir)
        .map_err(|e| format!("cannot create output directory {}: {e}", out_dir.display()))?;
    let grids = GridCache::default();
    let results: Vec<Vec<InequalityReport>> = cfg
        .checks
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            eprintln!("[{}/{}] {} ({})", i + 1, cfg.checks.len(), spec.id, spec.kind.as_str());
            run_check(cfg, spec, i, &grids)
                .unwrap_or_else(|msg| vec![failure_report(spec, msg)])
        })
        .collect();
    // files are written single-threaded, in config order
    let reports: Vec<InequalityReport> = results.into_iter().flatten().collect();
    write_outputs(cfg, &reports, out_dir)?;
    Ok(SuiteOutcome {
        exit_code: exit_code(&reports),
        reports,
    })
}

fn write_outputs(
    cfg: &ExperimentConfig,
    reports: &[InequalityReport],
    out_dir: &Path,
) -> Result<(), String> {
    let suite = SuiteReport {
        schema: SCHEMA_VERSION,
        config: cfg.clone(),
        reports: reports.to_vec(),
    };
    let json = serde_json::to_string_pretty(&suite)
        .map_err(|e| format!("report serialization failed: {e}"))?;
    write(out_dir.join("report.json"), json + "\n")?;

    let mut csv = String::from("check_id,lambda,lhs,rhs,margin,budget,verdict\n");
    for r in reports {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.check_id,
            r.lambda.map(|l| l.to_string()).unwrap_or_default(),
            r.lhs.as_ref().map(|v| v.value.to_string()).unwrap_or_default(),
            r.rhs.as_ref().map(|v| v.value.to_string()).unwrap_or_default(),
            r.margin,
            r.error_budget.total,
            verdict_str(r.verdict),
        ));
    }
    write(out_dir.join("summary.csv"), csv)?;

    for spec in &cfg.checks {
        if !matches!(
            spec.kind,
            CheckKind::LogBm | CheckKind::LogBm2d | CheckKind::Unconditional | CheckKind::LogConcavity
        ) {
            continue;
        }
        let mut plot = String::from("lambda,log_lhs,log_rhs\n");
        let mut rows = 0usize;
        for r in reports.iter().filter(|r| r.check_id == spec.id) {
            let (Some(l), Some(lhs), Some(rhs)) = (r.lambda, &r.lhs, &r.rhs) else {
                continue;
            };
            plot.push_str(&format!("{},{},{}\n", l, lhs.value.ln(), rhs.value.ln()));
            rows += 1;
        }
        if rows > 0 {
            write(out_dir.join(format!("check-{}.csv", spec.id)), plot)?;
        }
    }
    Ok(())
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::HoldsWithinCi => "holds-within-ci",
        Verdict::Violated => "violated",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn write(path: std::path::PathBuf, content: String) -> Result<(), String> {
    fs::write(&path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
