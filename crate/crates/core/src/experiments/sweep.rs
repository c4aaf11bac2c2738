use rand::Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use super::par_map;
use super::generators::seeded_rng;
use crate::error::{validation, Result};
use crate::grid::{attractor_grid, PwtSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    FiniteType,
    Semicontinuity,
    Convergence,
    ResolutionScaling,
}

/// Closed range of one vector component. `steps` points are evenly spaced
/// from `min` to `max` (a single point sits at `min`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentRange {
    pub min: f64,
    pub max: f64,
    #[serde(default = "one")]
    pub steps: usize,
}

fn one() -> usize {
    1
}

impl ComponentRange {
    fn value(&self, k: usize) -> f64 {
        if self.steps <= 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * k as f64 / (self.steps - 1) as f64
        }
    }
}

/// How parameter samples are drawn. Ranges are listed per vector component:
/// `v0x, v0y, v1x, v1y, ...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sampling {
    /// Cartesian product of the component ranges, last component fastest.
    Grid { ranges: Vec<ComponentRange> },
    /// `count` uniform draws from the box spanned by the ranges.
    Random {
        count: usize,
        seed: u64,
        ranges: Vec<ComponentRange>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub base_spec: PwtSpec,
    pub sampling: Sampling,
    pub cap: usize,
    /// Cell sizes; a finite-type sweep runs at the first one (or the base
    /// geometry when empty).
    #[serde(default)]
    pub resolutions: Vec<f64>,
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default)]
    pub radius: f64,
    /// Write measured wall times to the CSV instead of zeros.
    #[serde(default)]
    pub record_timings: bool,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap < 1 {
            return Err(validation("cap must be at least 1"));
        }
        let (ranges, count) = match &self.sampling {
            Sampling::Grid { ranges } => (ranges, None),
            Sampling::Random { ranges, count, .. } => (ranges, Some(*count)),
        };
        let expected = 2 * self.base_spec.branches.len();
        if ranges.len() != expected {
            return Err(validation(format!(
                "expected {expected} component ranges (two per branch), got {}",
                ranges.len()
            )));
        }
        for r in ranges {
            if r.steps < 1 {
                return Err(validation("range steps must be at least 1"));
            }
            if !(r.min.is_finite() && r.max.is_finite() && r.min <= r.max) {
                return Err(validation(format!("invalid range [{}, {}]", r.min, r.max)));
            }
        }
        if count == Some(0) {
            return Err(validation("random sampling needs count >= 1"));
        }
        if self.resolutions.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(validation("resolutions must be positive cell sizes"));
        }
        if self.epsilon < 0.0 || self.radius < 0.0 {
            return Err(validation("epsilon and radius must be non-negative"));
        }
        Ok(())
    }

    /// The base spec at the sweep's working resolution.
    pub fn working_spec(&self) -> Result<PwtSpec> {
        match self.resolutions.first() {
            Some(&h) => Ok(self
                .base_spec
                .with_geometry(self.base_spec.geometry.with_cell_size(h)?)),
            None => Ok(self.base_spec.clone()),
        }
    }

    /// All parameter samples, in sample-index order.
    pub fn samples(&self) -> Vec<Vec<[f64; 2]>> {
        let flat: Vec<Vec<f64>> = match &self.sampling {
            Sampling::Grid { ranges } => {
                let total: usize = ranges.iter().map(|r| r.steps).product();
                (0..total)
                    .map(|mut idx| {
                        let mut values = vec![0.0; ranges.len()];
                        for (slot, r) in values.iter_mut().zip(ranges).rev() {
                            *slot = r.value(idx % r.steps);
                            idx /= r.steps;
                        }
                        values
                    })
                    .collect()
            }
            Sampling::Random { count, seed, ranges } => {
                let mut rng = seeded_rng(*seed);
                (0..*count)
                    .map(|_| {
                        ranges
                            .iter()
                            .map(|r| {
                                if r.min < r.max {
                                    rng.gen_range(r.min..r.max)
                                } else {
                                    r.min
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        flat.into_iter()
            .map(|v| v.chunks(2).map(|c| [c[0], c[1]]).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStatus {
    Stabilized,
    CapReached,
    /// The perturbed spec fails validation (an image leaves the domain).
    Invalid,
}

impl SampleStatus {
    pub fn label(self) -> &'static str {
        match self {
            Self::Stabilized => "stabilized",
            Self::CapReached => "cap_reached",
            Self::Invalid => "invalid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub sample_id: usize,
    pub vectors: Vec<[f64; 2]>,
    pub status: SampleStatus,
    /// `N` when stabilized, the number of iterations run when capped.
    pub steps: Option<usize>,
    pub attractor_cells: Option<usize>,
    pub residuals: Vec<[f64; 2]>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub record_timings: bool,
}

impl SweepTable {
    /// Stabilized samples over valid samples; 0 when none is valid.
    pub fn stabilized_fraction(&self) -> f64 {
        let valid = self
            .rows
            .iter()
            .filter(|r| r.status != SampleStatus::Invalid)
            .count();
        let stabilized = self
            .rows
            .iter()
            .filter(|r| r.status == SampleStatus::Stabilized)
            .count();
        if valid == 0 {
            0.0
        } else {
            stabilized as f64 / valid as f64
        }
    }

    /// `sample_id,v0x,v0y,v1x,v1y,...,status,steps,attractor_cells,wall_ms`
    /// plus a trailing `# stabilized_fraction=` line. Without recorded
    /// timings the wall-time column is 0 so the bytes depend only on the
    /// inputs.
    pub fn to_csv(&self) -> String {
        let m = self.rows.first().map_or(2, |r| r.vectors.len());
        let mut out = String::from("sample_id");
        for k in 0..m {
            out.push_str(&format!(",v{k}x,v{k}y"));
        }
        out.push_str(",status,steps,attractor_cells,wall_ms\n");
        for r in &self.rows {
            out.push_str(&r.sample_id.to_string());
            for v in &r.vectors {
                out.push_str(&format!(",{},{}", v[0], v[1]));
            }
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            let wall = if self.record_timings { r.wall_ms } else { 0.0 };
            out.push_str(&format!(
                ",{},{},{},{}\n",
                r.status.label(),
                opt(r.steps),
                opt(r.attractor_cells),
                wall
            ));
        }
        out.push_str(&format!("# stabilized_fraction={}\n", self.stabilized_fraction()));
        out
    }
}

/// Runs `attractor_grid` for every parameter sample. Samples run in
/// parallel; rows come back in sample order.
pub fn finite_type_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    if config.mode != SweepMode::FiniteType {
        return Err(validation("finite_type_sweep needs mode = finite_type"));
    }
    let base = config.working_spec()?;
    let samples = config.samples();
    let rows = par_map(&samples, |sample_id, vectors| {
        let start = Instant::now();
        let compiled = base.with_vectors(vectors).and_then(|s| s.compile());
        let (status, steps, cells, residuals) = match compiled {
            Err(_) => (SampleStatus::Invalid, None, None, Vec::new()),
            Ok(map) => match attractor_grid(&map, config.cap) {
                Ok(res) => {
                    let status = if res.is_stabilized() {
                        SampleStatus::Stabilized
                    } else {
                        SampleStatus::CapReached
                    };
                    (
                        status,
                        Some(res.steps().unwrap_or(config.cap)),
                        Some(res.final_set().count()),
                        map.residuals(),
                    )
                }
                Err(_) => (SampleStatus::Invalid, None, None, map.residuals()),
            },
        };
        SweepRow {
            sample_id,
            vectors: vectors.clone(),
            status,
            steps,
            attractor_cells: cells,
            residuals,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    });
    Ok(SweepTable {
        rows,
        record_timings: config.record_timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusSpec;
    use crate::grid::RegionSpec;

    fn torus_config(sampling: Sampling) -> SweepConfig {
        let base = TorusSpec::new(
            RegionSpec::rect([0.0, 0.0], [0.5, 1.0]),
            [0.0, 0.0],
            [0.0, 0.0],
            32,
        )
        .unwrap();
        SweepConfig {
            mode: SweepMode::FiniteType,
            base_spec: base.to_pwt_spec(),
            sampling,
            cap: 500,
            resolutions: vec![],
            epsilon: 0.0,
            radius: 0.0,
            record_timings: false,
        }
    }

    fn r(min: f64, max: f64, steps: usize) -> ComponentRange {
        ComponentRange { min, max, steps }
    }

    #[test]
    fn grid_sampling_enumerates_product() {
        let config = torus_config(Sampling::Grid {
            ranges: vec![r(0.0, 0.5, 2), r(0.0, 0.0, 1), r(0.0, 0.25, 3), r(0.0, 0.0, 1)],
        });
        let s = config.samples();
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![[0.0, 0.0], [0.0, 0.0]]);
        assert_eq!(s[1], vec![[0.0, 0.0], [0.125, 0.0]]);
        assert_eq!(s[5], vec![[0.5, 0.0], [0.25, 0.0]]);
    }

    #[test]
    fn bijective_sweep_is_fully_stabilized_at_zero() {
        // Equal vectors make the double rotation a single rotation.
        let config = torus_config(Sampling::Grid {
            ranges: vec![r(0.0, 0.5, 3), r(0.25, 0.25, 1), r(0.0, 0.5, 3), r(0.25, 0.25, 1)],
        });
        let samples = config.samples();
        let table = finite_type_sweep(&config).unwrap();
        for (row, v) in table.rows.iter().zip(&samples) {
            if v[0] == v[1] {
                assert_eq!(row.status, SampleStatus::Stabilized);
                assert_eq!(row.steps, Some(0));
            }
        }
        let equal = SweepConfig {
            sampling: Sampling::Grid {
                ranges: vec![r(0.25, 0.25, 1), r(0.5, 0.5, 1), r(0.25, 0.25, 1), r(0.5, 0.5, 1)],
            },
            ..config
        };
        let t = finite_type_sweep(&equal).unwrap();
        assert_eq!(t.stabilized_fraction(), 1.0);
    }

    #[test]
    fn random_sweep_is_deterministic() {
        let config = torus_config(Sampling::Random {
            count: 12,
            seed: 9,
            ranges: vec![r(0.0, 1.0, 1); 4],
        });
        let a = finite_type_sweep(&config).unwrap().to_csv();
        let b = finite_type_sweep(&config).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("sample_id,v0x,v0y,v1x,v1y,status,steps,attractor_cells,wall_ms\n"));
        assert!(a.lines().last().unwrap().starts_with("# stabilized_fraction="));
        assert_eq!(a.lines().count(), 14);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut c = torus_config(Sampling::Grid {
            ranges: vec![r(0.0, 1.0, 0); 4],
        });
        assert!(finite_type_sweep(&c).is_err());
        c.sampling = Sampling::Grid {
            ranges: vec![r(1.0, 0.0, 2); 4],
        };
        assert!(c.validate().is_err());
        c.sampling = Sampling::Grid {
            ranges: vec![r(0.0, 1.0, 2); 3],
        };
        assert!(c.validate().is_err());
        c.sampling = Sampling::Random {
            count: 0,
            seed: 1,
            ranges: vec![r(0.0, 1.0, 1); 4],
        };
        assert!(c.validate().is_err());
        c.sampling = Sampling::Random {
            count: 1,
            seed: 1,
            ranges: vec![r(0.0, 1.0, 1); 4],
        };
        c.mode = SweepMode::Semicontinuity;
        assert!(finite_type_sweep(&c).is_err());
    }
}
