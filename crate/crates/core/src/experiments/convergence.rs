use serde::Serialize;

use crate::error::Result;
use crate::grid::{attractor_grid, distance_transform, PwtMap};

/// Directed distances `d(F^n(Ω), A_ref)` for `n = 0..=steps`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceCurve {
    pub points: Vec<(usize, f64)>,
    /// Stabilization step, when the run stabilized.
    pub steps: Option<usize>,
    /// True when `A_ref` is only the last iterate at the cap.
    pub reference_is_last_iterate: bool,
}

impl ConvergenceCurve {
    pub fn is_non_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].1 <= w[0].1)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,directed_hausdorff\n");
        for (n, d) in &self.points {
            out.push_str(&format!("{n},{d}\n"));
        }
        out
    }
}

/// Iterates to the attractor (or the cap), then measures each iterate's
/// directed distance to it. Distances come from one distance transform of
/// the reference, so each point costs a single pass over the iterate.
pub fn convergence_curve(map: &PwtMap, cap: usize) -> Result<ConvergenceCurve> {
    let result = attractor_grid(map, cap)?;
    let field = distance_transform(result.final_set())?;
    let last = result.area_trace().len() - 1;
    let mut points = Vec::with_capacity(last + 1);
    let mut current = map.omega().clone();
    for n in 0..=last {
        let d = field.max_over(&current)?.unwrap_or(0.0);
        points.push((n, d));
        if n < last {
            current = map.apply(&current)?;
        }
    }
    Ok(ConvergenceCurve {
        points,
        steps: result.steps(),
        reference_is_last_iterate: !result.is_stabilized(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{BranchSpec, GridGeometry, PwtSpec, RegionSpec};

    #[test]
    fn identity_curve_is_zero() {
        let spec = PwtSpec {
            omega: RegionSpec::disk([0.5, 0.5], 0.5),
            branches: vec![BranchSpec {
                region: RegionSpec::disk([0.5, 0.5], 0.5),
                vector: [0.0, 0.0],
            }],
            geometry: GridGeometry::unit_square(32),
        };
        let curve = convergence_curve(&spec.compile().unwrap(), 10).unwrap();
        assert_eq!(curve.points, vec![(0, 0.0)]);
        assert_eq!(curve.steps, Some(0));
    }

    #[test]
    fn split_square_curve_decreases_to_zero() {
        let g = GridGeometry::unit_square(8);
        let spec = PwtSpec {
            omega: RegionSpec::rect([0.0, 0.0], [1.0, 1.0]),
            branches: vec![
                BranchSpec {
                    region: RegionSpec::rect([0.0, 0.0], [0.5, 1.0]),
                    vector: [0.25, 0.0],
                },
                BranchSpec {
                    region: RegionSpec::rect([0.5, 0.0], [1.0, 1.0]),
                    vector: [-0.5, 0.0],
                },
            ],
            geometry: g,
        };
        let curve = convergence_curve(&spec.compile().unwrap(), 100).unwrap();
        assert!(curve.is_non_increasing());
        assert_eq!(curve.points.last().unwrap().1, 0.0);
        assert!(curve.points[0].1 > 0.0);
        assert_eq!(curve.points.len(), curve.steps.unwrap() + 1);
    }
}
