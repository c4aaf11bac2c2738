use serde::Serialize;

use super::par_map;
use crate::error::{validation, Result};
use crate::grid::{attractor_grid, PwtSpec};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub h: f64,
    pub status: &'static str,
    /// `N(h)` when stabilized.
    pub steps: Option<usize>,
    pub cells: usize,
    /// `cells * h²`.
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub label: &'static str,
}

impl ScalingReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,status,steps,cells,area\n");
        for r in &self.rows {
            let steps = r.steps.map(|n| n.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{steps},{},{}\n", r.h, r.status, r.cells, r.area));
        }
        out.push_str(&format!("# label={}\n", self.label));
        out
    }
}

/// A heuristic reading of `N(h)` across resolutions, coarse to fine.
fn label(rows: &[ScalingRow]) -> &'static str {
    let capped = rows.iter().filter(|r| r.steps.is_none()).count();
    if capped == 0 {
        return "finite at all resolutions";
    }
    if capped == rows.len() {
        return "cap_reached at all resolutions";
    }
    let first_capped = rows.iter().position(|r| r.steps.is_none()).unwrap_or(rows.len());
    let capped_suffix = rows[first_capped..].iter().all(|r| r.steps.is_none());
    let growing = rows[..first_capped].windows(2).all(|w| w[0].steps <= w[1].steps);
    if capped_suffix && growing {
        "infinite-type evidence"
    } else {
        "inconclusive"
    }
}

/// Runs the spec at each cell size in `hs` (strictly decreasing) with the
/// same physical extent.
pub fn resolution_scaling(spec: &PwtSpec, hs: &[f64], cap: usize) -> Result<ScalingReport> {
    if hs.is_empty() {
        return Err(validation("at least one resolution is needed"));
    }
    if hs.windows(2).any(|w| w[1] >= w[0]) {
        return Err(validation("resolutions must be strictly decreasing in h"));
    }
    let specs = hs
        .iter()
        .map(|&h| Ok(spec.with_geometry(spec.geometry.with_cell_size(h)?)))
        .collect::<Result<Vec<_>>>()?;
    let rows = par_map(&specs, |_, s| -> Result<ScalingRow> {
        let res = attractor_grid(&s.compile()?, cap)?;
        let h = s.geometry.h;
        let cells = res.final_set().count();
        Ok(ScalingRow {
            h,
            status: res.status_label(),
            steps: res.steps(),
            cells,
            area: cells as f64 * h * h,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ScalingReport {
        label: label(&rows),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::bridge::itm_to_grid_spec;
    use crate::itm::{Interval1, ItmBranch, ItmSpec, Mode};
    use crate::rational::{int, ratio};

    fn derived() -> PwtSpec {
        let spec = ItmSpec::new(
            Interval1::new(int(0), int(1)).unwrap(),
            vec![
                ItmBranch {
                    region: Interval1::new(int(0), ratio(1, 2)).unwrap(),
                    vector: ratio(1, 4),
                },
                ItmBranch {
                    region: Interval1::new(ratio(1, 2), int(1)).unwrap(),
                    vector: ratio(-1, 2),
                },
            ],
            Mode::Line,
        )
        .unwrap();
        itm_to_grid_spec(&spec, 1.0 / 8.0).unwrap()
    }

    #[test]
    fn derived_spec_has_n_one_at_fine_resolutions() {
        let hs = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 64.0, 1.0 / 256.0];
        let report = resolution_scaling(&derived(), &hs, 100).unwrap();
        assert_eq!(report.label, "finite at all resolutions");
        for r in &report.rows {
            assert_eq!(r.steps, Some(1), "h = {}", r.h);
            // The band keeps its 1/8 height at every resolution.
            assert_eq!(r.area, 0.75 / 8.0);
        }
    }

    #[test]
    fn increasing_resolutions_are_rejected() {
        assert!(resolution_scaling(&derived(), &[1.0 / 16.0, 1.0 / 8.0], 10).is_err());
        assert!(resolution_scaling(&derived(), &[], 10).is_err());
    }

    #[test]
    fn labels() {
        let row = |steps: Option<usize>| ScalingRow {
            h: 1.0,
            status: if steps.is_some() { "stabilized" } else { "cap_reached" },
            steps,
            cells: 0,
            area: 0.0,
        };
        assert_eq!(label(&[row(Some(2)), row(Some(5)), row(None)]), "infinite-type evidence");
        assert_eq!(label(&[row(None), row(None)]), "cap_reached at all resolutions");
        assert_eq!(label(&[row(Some(5)), row(Some(2)), row(None)]), "inconclusive");
        assert_eq!(label(&[row(None), row(Some(2))]), "inconclusive");
    }
}
