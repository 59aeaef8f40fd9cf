//! Built-in body constructors driven by a JSON-friendly descriptor schema.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::body::{ConvexBody, Halfspace};
use crate::geometry::linalg::SymMatrix;
use crate::geometry::vector;
use crate::scalar::Scalar;
use crate::volume::rng::SplitMix64;

/// An l_p exponent in JSON: a number, or "inf" (JSON has no infinity literal).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Exponent {
    Finite(f64),
    Named(String),
}

impl Exponent {
    pub fn value(&self) -> Result<f64> {
        match self {
            Exponent::Finite(v) => Ok(*v),
            Exponent::Named(s) => match s.as_str() {
                "inf" | "infinity" | "oo" => Ok(f64::INFINITY),
                other => Err(GeomError::BadDescriptor(format!(
                    "unknown exponent name {other:?}"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfspaceDescriptor {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// Body descriptor consumed by the command-line layer and test suites.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BodyDescriptor {
    /// B_2^{2n}; `dim` counts real dimensions and must be even.
    EuclideanBall { dim: usize },
    /// [-1, 1]^dim.
    Cube { dim: usize },
    /// conv{+-e_i}.
    CrossPolytope { dim: usize },
    LpBall {
        p: Exponent,
        weights: Vec<f64>,
        #[serde(default)]
        complex: bool,
    },
    HermitianEllipsoid {
        /// Row-major 2n x 2n symmetric positive-definite matrix.
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        complex: bool,
    },
    RandomSymPolytope {
        dim: usize,
        pairs: usize,
        seed: u64,
    },
    VPolytope { vertices: Vec<Vec<f64>> },
    HPolytope { halfspaces: Vec<HalfspaceDescriptor> },
}

pub fn make_builtin<S: Scalar>(desc: &BodyDescriptor) -> Result<ConvexBody<S>> {
    match desc {
        BodyDescriptor::EuclideanBall { dim } => ConvexBody::euclidean_ball(*dim),
        BodyDescriptor::Cube { dim } => {
            check_even(*dim)?;
            ConvexBody::lp_ball(S::infinity(), vec![S::one(); dim / 2], false)
        }
        BodyDescriptor::CrossPolytope { dim } => {
            check_even(*dim)?;
            ConvexBody::lp_ball(S::one(), vec![S::one(); dim / 2], false)
        }
        BodyDescriptor::LpBall { p, weights, complex } => ConvexBody::lp_ball(
            S::from_f64c(p.value()?),
            weights.iter().map(|w| S::from_f64c(*w)).collect(),
            *complex,
        ),
        BodyDescriptor::HermitianEllipsoid { matrix, complex } => {
            let dim = matrix.len();
            let mut data = Vec::with_capacity(dim * dim);
            for row in matrix {
                if row.len() != dim {
                    return Err(GeomError::BadDescriptor("matrix is not square".into()));
                }
                data.extend(row.iter().map(|v| S::from_f64c(*v)));
            }
            let m = SymMatrix::from_rows(dim, data)?;
            ConvexBody::hermitian_ellipsoid(m, *complex)
        }
        BodyDescriptor::RandomSymPolytope { dim, pairs, seed } => {
            random_sym_polytope(*dim, *pairs, *seed)
        }
        BodyDescriptor::VPolytope { vertices } => ConvexBody::v_polytope(
            vertices
                .iter()
                .map(|v| v.iter().map(|x| S::from_f64c(*x)).collect())
                .collect(),
        ),
        BodyDescriptor::HPolytope { halfspaces } => ConvexBody::h_polytope(
            halfspaces
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.iter().map(|x| S::from_f64c(*x)).collect(),
                    offset: S::from_f64c(h.offset),
                })
                .collect(),
        ),
    }
}

fn check_even(dim: usize) -> Result<()> {
    if dim == 0 || dim % 2 != 0 {
        return Err(GeomError::OddDimension(dim));
    }
    Ok(())
}

/// Minimum inradius accepted for random polytopes; thinner draws are
/// resampled so gauge and shrink computations stay well conditioned.
const MIN_INRADIUS: f64 = 0.05;
const MAX_ATTEMPTS: u64 = 100;

/// Seeded random symmetric polytope: `pairs` antipodal vertex pairs drawn
/// uniformly from the unit sphere. Deterministic in (dim, pairs, seed);
/// redraws (bumping an attempt counter, not the seed) while the estimated
/// inradius is below the floor.
pub fn random_sym_polytope<S: Scalar>(
    dim: usize,
    pairs: usize,
    seed: u64,
) -> Result<ConvexBody<S>> {
    check_even(dim)?;
    if pairs < dim {
        return Err(GeomError::InvalidParameter(format!(
            "need at least {dim} vertex pairs in dimension {dim}"
        )));
    }
    let probes = inradius_probes(dim);
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = SplitMix64::keyed(seed, attempt);
        let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let v = random_unit(&mut rng, dim);
            vertices.push(v.iter().map(|x| -x).collect());
            vertices.push(v);
        }
        let inradius = probes
            .iter()
            .map(|p| {
                vertices
                    .iter()
                    .map(|v| vector::dot(v, p))
                    .fold(f64::MIN, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        if inradius >= MIN_INRADIUS {
            return ConvexBody::v_polytope(
                vertices
                    .into_iter()
                    .map(|v| v.into_iter().map(S::from_f64c).collect())
                    .collect(),
            );
        }
    }
    Err(GeomError::Degenerate(format!(
        "no polytope with inradius >= {MIN_INRADIUS} in {MAX_ATTEMPTS} attempts"
    )))
}

fn random_unit(rng: &mut SplitMix64, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.next_normal()).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// Fixed probe directions for the inradius floor: coordinate axes plus a
/// seeded spread of random units. An estimate, not a certificate — its only
/// job is rejecting clearly thin bodies, deterministically.
fn inradius_probes(dim: usize) -> Vec<Vec<f64>> {
    let mut probes = Vec::new();
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        probes.push(e.clone());
        e[i] = -1.0;
        probes.push(e);
    }
    let mut rng = SplitMix64::keyed(0x1A2B, dim as u64);
    for _ in 0..512 {
        probes.push(random_unit(&mut rng, dim));
    }
    probes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ops;
    use approx::assert_relative_eq;

    #[test]
    fn descriptor_json_round_trip() {
        let json = r#"{"kind":"lp-ball","p":1,"weights":[1.0,1.0],"complex":true}"#;
        let d: BodyDescriptor = serde_json::from_str(json).unwrap();
        let b: ConvexBody<f64> = make_builtin(&d).unwrap();
        // complex l_1 ball: gauge(1,0,1,0) = |z_1| + |z_2| = 2
        assert_relative_eq!(ops::gauge(&b, &[1.0, 0.0, 1.0, 0.0]).unwrap(), 2.0);
        let back = serde_json::to_string(&d).unwrap();
        let d2: BodyDescriptor = serde_json::from_str(&back).unwrap();
        let b2: ConvexBody<f64> = make_builtin(&d2).unwrap();
        assert_relative_eq!(
            ops::gauge(&b2, &[0.3, 0.4, 0.0, 0.5]).unwrap(),
            ops::gauge(&b, &[0.3, 0.4, 0.0, 0.5]).unwrap()
        );
    }

    #[test]
    fn infinite_exponent_spelled_as_string() {
        let json = r#"{"kind":"lp-ball","p":"inf","weights":[1.0],"complex":false}"#;
        let d: BodyDescriptor = serde_json::from_str(json).unwrap();
        let b: ConvexBody<f64> = make_builtin(&d).unwrap();
        assert_relative_eq!(ops::gauge(&b, &[0.5, -0.25]).unwrap(), 0.5);
    }

    #[test]
    fn euclidean_ball_descriptor() {
        let d = BodyDescriptor::EuclideanBall { dim: 4 };
        let b: ConvexBody<f64> = make_builtin(&d).unwrap();
        assert_relative_eq!(ops::gauge(&b, &[0.0, 0.6, 0.8, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn random_polytope_is_deterministic() {
        let a: ConvexBody<f64> = random_sym_polytope(4, 12, 7).unwrap();
        let b: ConvexBody<f64> = random_sym_polytope(4, 12, 7).unwrap();
        let (ConvexBody::VPolytope { vertices: va }, ConvexBody::VPolytope { vertices: vb }) =
            (&a, &b)
        else {
            panic!("expected v-polytopes");
        };
        assert_eq!(va, vb); // bit-exact
        let c: ConvexBody<f64> = random_sym_polytope(4, 12, 8).unwrap();
        let ConvexBody::VPolytope { vertices: vc } = &c else {
            panic!()
        };
        assert_ne!(va, vc);
    }

    #[test]
    fn random_polytope_vertices_are_unit_and_symmetric() {
        let b: ConvexBody<f64> = random_sym_polytope(4, 10, 3).unwrap();
        let ConvexBody::VPolytope { vertices } = &b else {
            panic!()
        };
        assert_eq!(vertices.len(), 20);
        for v in vertices {
            assert_relative_eq!(vector::norm(v), 1.0, epsilon = 1e-12);
        }
        b.validate().unwrap();
    }

    #[test]
    fn invalid_descriptors_rejected() {
        for json in [
            r#"{"kind":"lp-ball","p":0.5,"weights":[1.0],"complex":false}"#,
            r#"{"kind":"euclidean-ball","dim":3}"#,
        ] {
            let d: BodyDescriptor = serde_json::from_str(json).unwrap();
            assert!(make_builtin::<f64>(&d).is_err());
        }
        // unknown kind fails at parse time
        assert!(serde_json::from_str::<BodyDescriptor>(r#"{"kind":"torus"}"#).is_err());
    }
}
