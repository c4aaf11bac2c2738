use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::collections::BTreeSet;

use super::generators::seeded_rng;
use super::par_map;
use crate::error::{validation, Result};
use crate::grid::{
    attractor_grid, directed_hausdorff, distance_transform, snap_vector, PwtSpec,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeSample {
    /// Snapped vectors in cells, one pair per branch.
    pub offsets: Vec<[isize; 2]>,
    pub status: &'static str,
    /// `d(X_b, X_a)`, for stabilized samples.
    pub directed: Option<f64>,
    pub contained: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemicontinuityReport {
    pub radius: f64,
    pub epsilon: f64,
    pub samples: usize,
    /// Samples left after snapping and collapsing duplicates.
    pub distinct: usize,
    pub invalid: usize,
    pub capped: usize,
    /// Max of `d(X_b, X_a)` over stabilized samples.
    pub max_directed: f64,
    /// Stabilized samples with `X_b ⊆ (X_a)_ε`.
    pub contained: usize,
    pub rows: Vec<ProbeSample>,
}

impl SemicontinuityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Uniform point of the `dim`-ball of radius `radius`.
fn ball_point<R: Rng>(rng: &mut R, dim: usize, radius: f64) -> Vec<f64> {
    let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = radius * rng.gen::<f64>().powf(1.0 / dim as f64);
    if norm == 0.0 {
        return vec![0.0; dim];
    }
    g.iter().map(|x| x * r / norm).collect()
}

/// Perturbs all translation vectors of `spec` jointly within `radius`,
/// snaps, drops duplicates, and compares each perturbed attractor `X_b`
/// with the base attractor `X_a` through the directed distance.
pub fn semicontinuity_probe(
    spec: &PwtSpec,
    radius: f64,
    samples: usize,
    epsilon: f64,
    seed: u64,
    cap: usize,
) -> Result<SemicontinuityReport> {
    if !(radius >= 0.0 && epsilon >= 0.0) {
        return Err(validation("radius and epsilon must be non-negative"));
    }
    let base = spec.compile()?;
    let base_result = attractor_grid(&base, cap)?;
    if !base_result.is_stabilized() {
        return Err(validation(format!(
            "base spec status cap_reached after {cap} steps; the probe needs a stabilized attractor"
        )));
    }
    let xa = base_result.final_set().clone();
    let neighborhood = distance_transform(&xa)?.sublevel(epsilon);

    let geometry = spec.geometry;
    let h = geometry.h;
    let vectors = spec.vectors();
    let mut rng = seeded_rng(seed);
    let mut seen = BTreeSet::new();
    let mut distinct = Vec::new();
    for _ in 0..samples {
        let delta = ball_point(&mut rng, 2 * vectors.len(), radius);
        let offsets: Vec<[isize; 2]> = vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                snap_vector([v[0] + delta[2 * k], v[1] + delta[2 * k + 1]], &geometry).offset
            })
            .collect();
        if seen.insert(offsets.clone()) {
            distinct.push(offsets);
        }
    }

    let rows = par_map(&distinct, |_, offsets| {
        let snapped: Vec<[f64; 2]> = offsets
            .iter()
            .map(|o| [o[0] as f64 * h, o[1] as f64 * h])
            .collect();
        let result = spec
            .with_vectors(&snapped)
            .and_then(|s| s.compile())
            .and_then(|map| attractor_grid(&map, cap));
        let (status, directed, contained) = match result {
            Err(_) => ("invalid", None, None),
            Ok(res) if !res.is_stabilized() => ("cap_reached", None, None),
            Ok(res) => {
                let xb = res.final_set();
                let d = directed_hausdorff(xb, &xa).ok();
                let inside = xb.is_subset(&neighborhood).ok();
                ("stabilized", d, inside)
            }
        };
        ProbeSample {
            offsets: offsets.clone(),
            status,
            directed,
            contained,
        }
    });

    Ok(SemicontinuityReport {
        radius,
        epsilon,
        samples,
        distinct: rows.len(),
        invalid: rows.iter().filter(|r| r.status == "invalid").count(),
        capped: rows.iter().filter(|r| r.status == "cap_reached").count(),
        max_directed: rows.iter().filter_map(|r| r.directed).fold(0.0, f64::max),
        contained: rows.iter().filter(|r| r.contained == Some(true)).count(),
        rows,
    })
}
