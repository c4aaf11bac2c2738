use serde::{Deserialize, Serialize};

use super::geometry::GridGeometry;
use super::set::GridSet;
use crate::error::{validation, Result};

/// A closed planar region, sampled at cell centers by [`rasterize`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RegionSpec {
    Rect {
        lo: [f64; 2],
        hi: [f64; 2],
    },
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    /// Convex polygon, vertices counter-clockwise.
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    /// Points of `outer` that are not in `region`.
    Complement {
        region: Box<RegionSpec>,
        outer: Box<RegionSpec>,
    },
    Union {
        regions: Vec<RegionSpec>,
    },
    Intersection {
        regions: Vec<RegionSpec>,
    },
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl RegionSpec {
    pub fn rect(lo: [f64; 2], hi: [f64; 2]) -> Self {
        Self::Rect { lo, hi }
    }

    pub fn disk(center: [f64; 2], radius: f64) -> Self {
        Self::Disk { center, radius }
    }

    pub fn complement_within(region: RegionSpec, outer: RegionSpec) -> Self {
        Self::Complement {
            region: Box::new(region),
            outer: Box::new(outer),
        }
    }

    /// Circular sector between two angles in radians, counter-clockwise from
    /// `start` to `end`; the span must be below π. Built as a disk cut by a
    /// wedge polygon.
    pub fn sector(center: [f64; 2], radius: f64, start: f64, end: f64) -> Self {
        let far = 4.0 * radius;
        let mid = 0.5 * (start + end);
        let ray = |t: f64| [center[0] + far * t.cos(), center[1] + far * t.sin()];
        Self::Intersection {
            regions: vec![
                Self::disk(center, radius),
                Self::Polygon {
                    vertices: vec![center, ray(start), ray(mid), ray(end)],
                },
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Rect { lo, hi } => {
                if !(lo[0] < hi[0] && lo[1] < hi[1]) {
                    return Err(validation(format!("rect needs lo < hi, got {lo:?} {hi:?}")));
                }
            }
            Self::Disk { radius, center } => {
                if !(*radius > 0.0 && radius.is_finite() && center.iter().all(|c| c.is_finite())) {
                    return Err(validation(format!("disk radius must be positive, got {radius}")));
                }
            }
            Self::Polygon { vertices } => {
                let n = vertices.len();
                if n < 3 {
                    return Err(validation("polygon needs at least three vertices"));
                }
                for k in 0..n {
                    let c = cross(vertices[k], vertices[(k + 1) % n], vertices[(k + 2) % n]);
                    if c < 0.0 {
                        return Err(validation(
                            "polygon must be convex with counter-clockwise vertices",
                        ));
                    }
                }
                let area2: f64 = (0..n)
                    .map(|k| cross([0.0, 0.0], vertices[k], vertices[(k + 1) % n]))
                    .sum();
                if area2 <= 0.0 {
                    return Err(validation("polygon has zero or negative area"));
                }
            }
            Self::Complement { region, outer } => {
                region.validate()?;
                outer.validate()?;
            }
            Self::Union { regions } | Self::Intersection { regions } => {
                if regions.is_empty() {
                    return Err(validation("union/intersection needs at least one region"));
                }
                for r in regions {
                    r.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Closed membership: boundary points are inside (except for
    /// `Complement`, which removes the closed inner region).
    pub fn contains(&self, p: [f64; 2]) -> bool {
        match self {
            Self::Rect { lo, hi } => {
                lo[0] <= p[0] && p[0] <= hi[0] && lo[1] <= p[1] && p[1] <= hi[1]
            }
            Self::Disk { center, radius } => {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                dx * dx + dy * dy <= radius * radius
            }
            Self::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|k| cross(vertices[k], vertices[(k + 1) % n], p) >= 0.0)
            }
            Self::Complement { region, outer } => outer.contains(p) && !region.contains(p),
            Self::Union { regions } => regions.iter().any(|r| r.contains(p)),
            Self::Intersection { regions } => regions.iter().all(|r| r.contains(p)),
        }
    }
}

/// Cell `(i, j)` is set iff its center lies in the closed region.
pub fn rasterize(region: &RegionSpec, geometry: &GridGeometry) -> Result<GridSet> {
    region.validate()?;
    Ok(GridSet::from_fn(*geometry, |i, j| {
        region.contains(geometry.cell_center(i, j))
    }))
}
