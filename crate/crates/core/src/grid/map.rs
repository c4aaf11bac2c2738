use serde::{Deserialize, Serialize};
use std::fmt;

use super::geometry::GridGeometry;
use super::region::{rasterize, RegionSpec};
use super::set::{shift_or_row, target_row, GridSet};
use crate::error::{validation, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchSpec {
    pub region: RegionSpec,
    pub vector: [f64; 2],
}

/// Serializable description of a planar (or toral) piecewise translation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PwtSpec {
    pub omega: RegionSpec,
    pub branches: Vec<BranchSpec>,
    #[serde(rename = "grid")]
    pub geometry: GridGeometry,
}

impl PwtSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn vectors(&self) -> Vec<[f64; 2]> {
        self.branches.iter().map(|b| b.vector).collect()
    }

    /// Same regions with new translation vectors.
    pub fn with_vectors(&self, vectors: &[[f64; 2]]) -> Result<Self> {
        if vectors.len() != self.branches.len() {
            return Err(validation(format!(
                "expected {} vectors, got {}",
                self.branches.len(),
                vectors.len()
            )));
        }
        let mut spec = self.clone();
        for (b, v) in spec.branches.iter_mut().zip(vectors) {
            b.vector = *v;
        }
        Ok(spec)
    }

    pub fn with_geometry(&self, geometry: GridGeometry) -> Self {
        Self {
            geometry,
            ..self.clone()
        }
    }

    pub fn compile(&self) -> Result<PwtMap> {
        PwtMap::compile(self)
    }
}

/// A translation vector rounded to whole cells.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnappedVector {
    pub offset: [isize; 2],
    /// `v - offset * h`; each component lies in `[-h/2, h/2]`.
    pub residual: [f64; 2],
}

/// Rounds `v / h` to the nearest integer per component, ties toward +∞.
pub fn snap_vector(v: [f64; 2], geometry: &GridGeometry) -> SnappedVector {
    let h = geometry.h;
    let snap = |x: f64| (x / h + 0.5).floor() as isize;
    let offset = [snap(v[0]), snap(v[1])];
    SnappedVector {
        offset,
        residual: [v[0] - offset[0] as f64 * h, v[1] - offset[1] as f64 * h],
    }
}

#[derive(Clone, Debug)]
pub struct CompiledBranch {
    /// Branch raster restricted to the domain raster.
    pub mask: GridSet,
    pub vector: [f64; 2],
    pub snapped: SnappedVector,
}

/// A piecewise translation on a grid, validated and ready to iterate.
#[derive(Clone, Debug)]
pub struct PwtMap {
    geometry: GridGeometry,
    omega: GridSet,
    branches: Vec<CompiledBranch>,
}

impl PwtMap {
    pub fn compile(spec: &PwtSpec) -> Result<Self> {
        spec.geometry.validate()?;
        let omega = rasterize(&spec.omega, &spec.geometry)?;
        let branches = spec
            .branches
            .iter()
            .map(|b| Ok((rasterize(&b.region, &spec.geometry)?, b.vector)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(omega, branches)
    }

    /// Builds a map from pre-rasterized masks. Branch masks are clipped to
    /// `omega`; the clipped masks must cover `omega` and every snapped image
    /// must stay inside it.
    pub fn from_masks(omega: GridSet, branches: Vec<(GridSet, [f64; 2])>) -> Result<Self> {
        let geometry = *omega.geometry();
        if branches.is_empty() {
            return Err(validation("a piecewise translation needs at least one branch"));
        }
        if omega.is_empty() {
            return Err(validation("domain rasterizes to the empty set"));
        }
        let mut cover = GridSet::empty(geometry);
        let mut compiled = Vec::with_capacity(branches.len());
        for (k, (mask, vector)) in branches.into_iter().enumerate() {
            let mask = mask.intersection(&omega)?;
            let snapped = snap_vector(vector, &geometry);
            let image = mask.shifted(snapped.offset[0], snapped.offset[1]);
            if image.count() != mask.count() || !image.is_subset(&omega)? {
                return Err(validation(format!(
                    "branch {k} with vector {vector:?} maps cells outside the domain"
                )));
            }
            cover = cover.union(&mask)?;
            compiled.push(CompiledBranch {
                mask,
                vector,
                snapped,
            });
        }
        if cover != omega {
            let missing = omega.difference(&cover)?.count();
            return Err(validation(format!(
                "branches leave {missing} domain cells uncovered"
            )));
        }
        Ok(Self {
            geometry,
            omega,
            branches: compiled,
        })
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn omega(&self) -> &GridSet {
        &self.omega
    }

    pub fn branches(&self) -> &[CompiledBranch] {
        &self.branches
    }

    pub fn residuals(&self) -> Vec<[f64; 2]> {
        self.branches.iter().map(|b| b.snapped.residual).collect()
    }

    /// `F(K) = ⋃ (K ∩ B_i) + offset_i`.
    pub fn apply(&self, set: &GridSet) -> Result<GridSet> {
        if set.geometry() != &self.geometry {
            return Err(Error::Geometry(format!(
                "set grid {:?} does not match map grid {:?}",
                set.geometry(),
                self.geometry
            )));
        }
        if !set.is_subset(&self.omega)? {
            return Err(Error::Domain("set is not inside the domain raster".into()));
        }
        Ok(self.apply_unchecked(set))
    }

    pub(crate) fn apply_unchecked(&self, set: &GridSet) -> GridSet {
        let g = &self.geometry;
        let mut out = GridSet::empty(*g);
        let mut tmp = vec![0u64; set.words_per_row()];
        for branch in &self.branches {
            let [dx, dy] = branch.snapped.offset;
            for j in 0..g.ny {
                let mut any = 0;
                for ((t, &a), &b) in tmp.iter_mut().zip(set.row(j)).zip(branch.mask.row(j)) {
                    *t = a & b;
                    any |= *t;
                }
                if any == 0 {
                    continue;
                }
                if let Some(tj) = target_row(j, dy, g.ny, g.wrap) {
                    shift_or_row(out.row_mut(tj), &tmp, dx, g.nx, g.wrap);
                }
            }
        }
        out
    }

    /// True when the snapped images of the branches are pairwise disjoint
    /// and tile the domain, so the map permutes cells.
    pub fn is_cell_bijection(&self) -> bool {
        let mut seen = GridSet::empty(self.geometry);
        for b in &self.branches {
            let img = b.mask.shifted(b.snapped.offset[0], b.snapped.offset[1]);
            if !img.is_disjoint(&seen).expect("same geometry") {
                return false;
            }
            seen = seen.union(&img).expect("same geometry");
        }
        seen == self.omega
    }
}

pub fn apply_grid(map: &PwtMap, set: &GridSet) -> Result<GridSet> {
    map.apply(set)
}

#[derive(Clone, Debug, PartialEq)]
pub enum AttractorResult2 {
    /// `F^{steps+1}(Ω) = F^steps(Ω) = attractor`.
    Stabilized {
        steps: usize,
        attractor: GridSet,
        area_trace: Vec<usize>,
    },
    /// `area_trace[n]` is the cell count of `F^n(Ω)`.
    CapReached {
        last: GridSet,
        area_trace: Vec<usize>,
    },
}

impl AttractorResult2 {
    pub fn is_stabilized(&self) -> bool {
        matches!(self, Self::Stabilized { .. })
    }

    pub fn steps(&self) -> Option<usize> {
        match self {
            Self::Stabilized { steps, .. } => Some(*steps),
            Self::CapReached { .. } => None,
        }
    }

    /// The attractor, or the last iterate when the cap was reached.
    pub fn final_set(&self) -> &GridSet {
        match self {
            Self::Stabilized { attractor, .. } => attractor,
            Self::CapReached { last, .. } => last,
        }
    }

    pub fn area_trace(&self) -> &[usize] {
        match self {
            Self::Stabilized { area_trace, .. } | Self::CapReached { area_trace, .. } => area_trace,
        }
    }

    pub fn status_label(&self) -> &'static str {
        match self {
            Self::Stabilized { .. } => "stabilized",
            Self::CapReached { .. } => "cap_reached",
        }
    }
}

impl fmt::Display for AttractorResult2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Stabilized {
                steps, attractor, ..
            } => write!(f, "stabilized N={steps} cells={}", attractor.count()),
            Self::CapReached { last, area_trace } => write!(
                f,
                "cap_reached steps={} cells={}",
                area_trace.len() - 1,
                last.count()
            ),
        }
    }
}

pub const DEFAULT_GRID_CAP: usize = 100_000;

pub fn attractor_grid(map: &PwtMap, cap: usize) -> Result<AttractorResult2> {
    attractor_grid_with(map, cap, |_, _| {})
}

/// As [`attractor_grid`], calling `observe(n, F^n(Ω))` for every iterate
/// produced, starting with `n = 0`.
pub fn attractor_grid_with(
    map: &PwtMap,
    cap: usize,
    mut observe: impl FnMut(usize, &GridSet),
) -> Result<AttractorResult2> {
    if cap < 1 {
        return Err(validation("cap must be at least 1"));
    }
    let mut current = map.omega.clone();
    let mut trace = vec![current.count()];
    observe(0, &current);
    for n in 0..cap {
        let next = map.apply_unchecked(&current);
        if next == current {
            return Ok(AttractorResult2::Stabilized {
                steps: n,
                attractor: current,
                area_trace: trace,
            });
        }
        if !next.is_subset(&current)? {
            return Err(Error::Invariant(format!(
                "F^{}(Ω) is not contained in F^{n}(Ω)",
                n + 1
            )));
        }
        trace.push(next.count());
        observe(n + 1, &next);
        current = next;
    }
    Ok(AttractorResult2::CapReached {
        last: current,
        area_trace: trace,
    })
}
