//! Experiment configuration: a JSON file naming bodies and listing checks.
//! Everything that influences a result lives in this file (including the
//! mandatory seed), so a suite is reproducible from the config alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use logbm_core::geometry::body::{ConvexBody, Halfspace};
use logbm_core::geometry::builtin::{make_builtin, BodyDescriptor};
use logbm_core::interpolation::closed::ClosedFamily;
use logbm_core::geometry::linalg::SymMatrix;
use logbm_core::verifier::vbody::{CheckBody, VolumeCfg};

pub const SCHEMA_VERSION: u64 = 1;

/// A named body: either a plain built-in descriptor, or the continuous
/// complex hull {x : |<x, n_i>_C| <= b_i} over a halfspace family. For a
/// vertex-listed base body, the vertices are read as halfspace normals with
/// offset 1 (the polar's halfspace description), which is how seeded random
/// symmetric polytopes become random complex bodies.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodySpec {
    Hull(HullSpec),
    Plain(BodyDescriptor),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum HullSpec {
    ComplexHull { of: BodyDescriptor },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    LogBm,
    #[serde(rename = "log-bm-2d")]
    LogBm2d,
    Unconditional,
    Santalo,
    Inclusion,
    LogConcavity,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::LogBm => "log-bm",
            CheckKind::LogBm2d => "log-bm-2d",
            CheckKind::Unconditional => "unconditional",
            CheckKind::Santalo => "santalo",
            CheckKind::Inclusion => "inclusion",
            CheckKind::LogConcavity => "log-concavity",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CheckSpec {
    pub id: String,
    pub kind: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambdas: Vec<f64>,
    /// Volume / grid overrides (fall back to `defaults`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_angles: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_reps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_2d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_4d: Option<usize>,
    /// Interpolation parameters (inclusion / log-concavity sandwich mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    /// log-concavity: "closed", "sandwich", or "auto" (default).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct Defaults {
    pub samples: u64,
    pub confidence: f64,
    pub torus_angles: usize,
    pub orbit_reps: usize,
    pub pairs_2d: usize,
    pub grid_4d: usize,
    pub probes: usize,
    pub m: usize,
    pub epsilon: f64,
    pub budget: usize,
    pub grid_size: usize,
}

impl Default for Defaults {
    fn default() -> Self {
        let v = VolumeCfg::with_seed(0);
        Self {
            samples: v.samples,
            confidence: v.confidence,
            torus_angles: v.torus_angles,
            orbit_reps: v.orbit_reps,
            pairs_2d: v.pairs_2d,
            grid_4d: v.grid_4d,
            probes: 200,
            m: 3,
            epsilon: 0.05,
            budget: 40,
            grid_size: 2000,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u64,
    /// Root seed; every check derives its seeds from this and its position.
    pub seed: u64,
    #[serde(default)]
    pub defaults: Defaults,
    pub bodies: BTreeMap<String, BodySpec>,
    pub checks: Vec<CheckSpec>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.schema != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema
            ));
        }
        if self.checks.is_empty() {
            return Err("config lists no checks".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &self.checks {
            if c.id.is_empty() || !c.id.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '-' || ch == '_') {
                return Err(format!(
                    "check id {:?} must be non-empty and use only [A-Za-z0-9_-] \
                     (it names an output file)",
                    c.id
                ));
            }
            if !seen.insert(&c.id) {
                return Err(format!("duplicate check id {:?}", c.id));
            }
            for name in [&c.k, &c.t].into_iter().flatten() {
                if !self.bodies.contains_key(name) {
                    return Err(format!(
                        "check {:?} references unknown body {:?}",
                        c.id, name
                    ));
                }
            }
            match c.kind {
                CheckKind::Santalo => {
                    require(&c.id, "k", &c.k)?;
                    require(&c.id, "t", &c.t)?;
                }
                _ => {
                    require(&c.id, "k", &c.k)?;
                    require(&c.id, "t", &c.t)?;
                    if c.lambdas.is_empty() {
                        return Err(format!("check {:?} needs a lambdas list", c.id));
                    }
                    for l in &c.lambdas {
                        if !(0.0..=1.0).contains(l) {
                            return Err(format!(
                                "check {:?} has lambda {l} outside [0,1]",
                                c.id
                            ));
                        }
                    }
                }
            }
            if let Some(mode) = &c.mode {
                if c.kind != CheckKind::LogConcavity {
                    return Err(format!("check {:?}: `mode` only applies to log-concavity", c.id));
                }
                if !["closed", "sandwich", "auto"].contains(&mode.as_str()) {
                    return Err(format!(
                        "check {:?}: unknown mode {mode:?} (closed | sandwich | auto)",
                        c.id
                    ));
                }
            }
        }
        // build every body once so descriptor errors surface before any work
        for (name, spec) in &self.bodies {
            build_body(spec).map_err(|e| format!("body {name:?}: {e}"))?;
        }
        Ok(())
    }

    /// Volume configuration for check `index`, seeded so that results depend
    /// only on the config (never on scheduling or job count).
    pub fn volume_cfg(&self, spec: &CheckSpec, index: usize) -> VolumeCfg {
        let d = &self.defaults;
        VolumeCfg {
            samples: spec.samples.unwrap_or(d.samples),
            seed: self.seed.wrapping_add(1000 * index as u64),
            confidence: spec.confidence.unwrap_or(d.confidence),
            torus_angles: spec.torus_angles.unwrap_or(d.torus_angles),
            orbit_reps: spec.orbit_reps.unwrap_or(d.orbit_reps),
            pairs_2d: spec.pairs_2d.unwrap_or(d.pairs_2d),
            grid_4d: spec.grid_4d.unwrap_or(d.grid_4d),
        }
    }
}

fn require(id: &str, field: &str, value: &Option<String>) -> Result<(), String> {
    if value.is_none() {
        return Err(format!("check {id:?} needs field {field:?}"));
    }
    Ok(())
}

/// Builds the verification-layer body for a named spec.
pub fn build_body(spec: &BodySpec) -> Result<CheckBody, String> {
    match spec {
        BodySpec::Plain(desc) => Ok(CheckBody::Plain(
            make_builtin::<f64>(desc).map_err(|e| e.to_string())?,
        )),
        BodySpec::Hull(HullSpec::ComplexHull { of }) => {
            let base: ConvexBody<f64> = make_builtin(of).map_err(|e| e.to_string())?;
            let halfspaces = match base {
                ConvexBody::HPolytope { halfspaces } => halfspaces,
                ConvexBody::VPolytope { vertices } => vertices
                    .into_iter()
                    .map(|v| Halfspace {
                        normal: v,
                        offset: 1.0,
                    })
                    .collect(),
                other => {
                    return Err(format!(
                        "complex-hull needs a polytope base, got {}",
                        other.kind_name()
                    ))
                }
            };
            CheckBody::complex_hull(halfspaces).map_err(|e| e.to_string())
        }
    }
}

/// Plain convex body, for checks that cannot use hull bodies.
pub fn build_plain(name: &str, spec: &BodySpec) -> Result<ConvexBody<f64>, String> {
    match build_body(spec)? {
        CheckBody::Plain(b) => Ok(b),
        CheckBody::ComplexHull { .. } => Err(format!(
            "body {name:?} is a complex hull, but this check needs a plain body"
        )),
    }
}

/// Closed-form interpolation family for a pair of descriptors, when one
/// exists: equal-weight complex l_p pairs, or two Hermitian ellipsoids.
pub fn closed_family(k: &BodySpec, t: &BodySpec) -> Option<ClosedFamily> {
    let (BodySpec::Plain(dk), BodySpec::Plain(dt)) = (k, t) else {
        return None;
    };
    match (dk, dt) {
        (
            BodyDescriptor::LpBall { p: p0, weights: w0, complex: true },
            BodyDescriptor::LpBall { p: p1, weights: w1, complex: true },
        ) if w0 == w1 => Some(ClosedFamily::LpPair {
            p0: p0.value().ok()?,
            p1: p1.value().ok()?,
            weights: w0.clone(),
        }),
        (
            BodyDescriptor::HermitianEllipsoid { matrix: m0, .. },
            BodyDescriptor::HermitianEllipsoid { matrix: m1, .. },
        ) => Some(ClosedFamily::HermitianPair {
            a0: sym_from_rows(m0)?,
            a1: sym_from_rows(m1)?,
        }),
        _ => None,
    }
}

fn sym_from_rows(rows: &[Vec<f64>]) -> Option<SymMatrix<f64>> {
    let dim = rows.len();
    let mut data = Vec::with_capacity(dim * dim);
    for row in rows {
        if row.len() != dim {
            return None;
        }
        data.extend_from_slice(row);
    }
    SymMatrix::from_rows(dim, data).ok()
}
