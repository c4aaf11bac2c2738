//! Running line-mode interval maps through the grid engine.

use crate::error::{validation, Result};
use crate::grid::{BranchSpec, GridGeometry, GridSet, PwtSpec, RegionSpec, Wrap};
use crate::itm::{Interval1, IntervalUnion, ItmSpec, Mode};
use crate::rational::{to_f64, Rational};

/// A band `[lo, hi] x [-1, 1]`; on a one-row grid centered at `y = 0` it
/// selects exactly the cells whose centers lie in `[lo, hi]`.
fn band(interval: &Interval1) -> RegionSpec {
    RegionSpec::rect([to_f64(interval.lo()), -1.0], [to_f64(interval.hi()), 1.0])
}

/// One-row grid version of a line-mode spec with cell size `h`. The domain
/// length must be a whole number of cells.
pub fn itm_to_grid_spec(spec: &ItmSpec, h: f64) -> Result<PwtSpec> {
    if spec.mode() != Mode::Line {
        return Err(validation("only line-mode specs run on a one-row grid"));
    }
    let omega = spec.omega();
    let length = to_f64(&omega.length());
    let cells = (length / h).round();
    if cells < 1.0 || (cells * h - length).abs() > 1e-9 * length.max(1.0) {
        return Err(validation(format!(
            "domain length {length} is not a multiple of h = {h}"
        )));
    }
    let geometry = GridGeometry::new(
        cells as usize,
        1,
        h,
        [to_f64(omega.lo()), -0.5 * h],
        Wrap::None,
    )?;
    Ok(PwtSpec {
        omega: band(omega),
        branches: spec
            .branches()
            .iter()
            .map(|b| BranchSpec {
                region: band(&b.region),
                vector: [to_f64(&b.vector), 0.0],
            })
            .collect(),
        geometry,
    })
}

/// The closed cells of a one-row set as an exact interval union. `h` and the
/// origin are taken as the exact rationals given, not from the float
/// geometry.
pub fn cells_to_interval_union(set: &GridSet, origin: &Rational, h: &Rational) -> Result<IntervalUnion> {
    if set.ny() != 1 {
        return Err(validation("expected a one-row grid"));
    }
    IntervalUnion::from_bounds(set.cells().map(|(i, _)| {
        let lo = origin + h * Rational::from_integer(i.into());
        let hi = &lo + h;
        (lo, hi)
    }))
}
