//! Iterate snapshots and their layer stacks for figure output.

use crate::error::Result;
use crate::grid::{attractor_grid_with, AttractorResult2, GridSet, PwtMap};
use crate::render::{RenderLayers, BLACK, BLUE, GRAY, GREEN, RED, WHITE};
use crate::torus::DoubleRotation;

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub n: usize,
    /// `K_n = F^n(Ω)`.
    pub iterate: GridSet,
    /// Cells lost at step `n`: `K_{n-1} \ K_n` (empty for `n = 0`).
    pub lost: GridSet,
}

#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub result: AttractorResult2,
    pub snapshots: Vec<Snapshot>,
    /// `lost_trace[n]` is the number of cells lost at step `n`.
    pub lost_trace: Vec<usize>,
}

impl IterationRecord {
    /// `n,cells,lost_cells` per iterate.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("n,cells,lost_cells\n");
        for (n, (cells, lost)) in self
            .result
            .area_trace()
            .iter()
            .zip(&self.lost_trace)
            .enumerate()
        {
            out.push_str(&format!("{n},{cells},{lost}\n"));
        }
        out
    }
}

/// `0, 1, 2, 4, 8, ...` up to `last`, always ending with `last`.
pub fn default_snapshot_steps(last: usize) -> Vec<usize> {
    let mut steps = vec![0];
    let mut n = 1;
    while n < last {
        steps.push(n);
        n *= 2;
    }
    if last > 0 {
        steps.push(last);
    }
    steps
}

/// Iterates to the attractor or the cap, keeping the iterates listed in
/// `steps` (`None` picks [`default_snapshot_steps`]). Requested steps past
/// the end are clamped to the final iterate.
pub fn record_iteration(map: &PwtMap, cap: usize, steps: Option<&[usize]>) -> Result<IterationRecord> {
    // First pass finds the final step; the map is cheap to replay.
    let result = attractor_grid_with(map, cap, |_, _| {})?;
    let last = result.area_trace().len() - 1;
    let mut wanted: Vec<usize> = match steps {
        Some(s) => s.iter().map(|&n| n.min(last)).collect(),
        None => default_snapshot_steps(last),
    };
    wanted.sort_unstable();
    wanted.dedup();

    let mut snapshots = Vec::with_capacity(wanted.len());
    let mut lost_trace = vec![0];
    let mut previous: Option<GridSet> = None;
    attractor_grid_with(map, cap, |n, set| {
        let lost = match &previous {
            Some(p) => p.difference(set).expect("iterates share a geometry"),
            None => GridSet::empty(*set.geometry()),
        };
        if n > 0 {
            lost_trace.push(lost.count());
        }
        if wanted.binary_search(&n).is_ok() {
            snapshots.push(Snapshot {
                n,
                iterate: set.clone(),
                lost,
            });
        }
        previous = Some(set.clone());
    })?;
    Ok(IterationRecord {
        result,
        snapshots,
        lost_trace,
    })
}

/// Blue `f^n(T)`, green `R ∩ f^n(T)`, red for the region lost at step `n`.
pub fn torus_layers(rotation: &DoubleRotation, snapshot: &Snapshot) -> Result<RenderLayers> {
    let in_region = snapshot.iterate.intersection(rotation.region())?;
    Ok(RenderLayers::new(WHITE)
        .layer(snapshot.iterate.clone(), BLUE)
        .layer(in_region, GREEN)
        .layer(snapshot.lost.clone(), RED))
}

/// Gray domain with the iterate in black.
pub fn planar_layers(map: &PwtMap, snapshot: &Snapshot) -> RenderLayers {
    RenderLayers::new(WHITE)
        .layer(map.omega().clone(), GRAY)
        .layer(snapshot.iterate.clone(), BLACK)
}
