use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wrap {
    #[default]
    None,
    /// Periodic in both axes; translations wrap modulo `(nx, ny)`.
    Torus,
}

/// Uniform square grid. Cell `(i, j)` has center
/// `origin + ((i + 1/2) h, (j + 1/2) h)`; `i` runs along x, `j` along y.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridGeometry {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    #[serde(default)]
    pub wrap: Wrap,
    #[serde(default)]
    pub origin: [f64; 2],
}

impl GridGeometry {
    pub fn new(nx: usize, ny: usize, h: f64, origin: [f64; 2], wrap: Wrap) -> Result<Self> {
        let g = Self {
            nx,
            ny,
            h,
            wrap,
            origin,
        };
        g.validate()?;
        Ok(g)
    }

    /// `n × n` cells covering `[0, 1]²`.
    pub fn unit_square(n: usize) -> Self {
        Self {
            nx: n,
            ny: n,
            h: 1.0 / n as f64,
            wrap: Wrap::None,
            origin: [0.0, 0.0],
        }
    }

    /// `n × n` cells covering the unit torus `[0, 1)²`.
    pub fn unit_torus(n: usize) -> Self {
        Self {
            wrap: Wrap::Torus,
            ..Self::unit_square(n)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 {
            return Err(validation("grid needs at least one cell per axis"));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(validation(format!("cell size must be positive, got {}", self.h)));
        }
        if !self.origin.iter().all(|c| c.is_finite()) {
            return Err(validation("grid origin must be finite"));
        }
        if self.wrap == Wrap::Torus {
            let px = self.nx as f64 * self.h;
            let py = self.ny as f64 * self.h;
            if (px - 1.0).abs() > 1e-9 || (py - 1.0).abs() > 1e-9 {
                return Err(validation(format!(
                    "torus grid must have period 1 in both axes, got {px} x {py}"
                )));
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.origin[0] + (i as f64 + 0.5) * self.h,
            self.origin[1] + (j as f64 + 0.5) * self.h,
        ]
    }

    /// Physical extent `(nx h, ny h)`.
    pub fn extent(&self) -> [f64; 2] {
        [self.nx as f64 * self.h, self.ny as f64 * self.h]
    }

    /// Same physical window at a different cell size. Axis counts are
    /// rounded and never drop below one cell.
    pub fn with_cell_size(&self, h: f64) -> Result<Self> {
        let [ex, ey] = self.extent();
        let nx = ((ex / h).round() as usize).max(1);
        let ny = ((ey / h).round() as usize).max(1);
        let h = if self.wrap == Wrap::Torus { 1.0 / nx as f64 } else { h };
        Self::new(nx, ny, h, self.origin, self.wrap)
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.nx.div_ceil(64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers() {
        let g = GridGeometry::unit_square(4);
        assert_eq!(g.cell_center(0, 0), [0.125, 0.125]);
        assert_eq!(g.cell_center(3, 1), [0.875, 0.375]);
    }

    #[test]
    fn torus_needs_unit_period() {
        assert!(GridGeometry::new(4, 4, 0.25, [0.0, 0.0], Wrap::Torus).is_ok());
        assert!(GridGeometry::new(4, 4, 0.5, [0.0, 0.0], Wrap::Torus).is_err());
        assert!(GridGeometry::new(0, 4, 0.5, [0.0, 0.0], Wrap::None).is_err());
        assert!(GridGeometry::new(4, 4, -1.0, [0.0, 0.0], Wrap::None).is_err());
    }

    #[test]
    fn rescaling_keeps_extent() {
        let g = GridGeometry::unit_square(8).with_cell_size(1.0 / 32.0).unwrap();
        assert_eq!((g.nx, g.ny), (32, 32));
        let strip = GridGeometry::new(8, 1, 0.125, [0.0, -0.0625], Wrap::None).unwrap();
        let fine = strip.with_cell_size(1.0 / 64.0).unwrap();
        assert_eq!((fine.nx, fine.ny), (64, 8));
    }
}
