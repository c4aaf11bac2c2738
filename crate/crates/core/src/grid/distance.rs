//! Exact Euclidean distance transform (separable lower-envelope algorithm of
//! Felzenszwalb and Huttenlocher) and the Hausdorff distances built on it.
//!
//! Squared distances between cell centers are integers in cell units, so the
//! transform is computed in exact integer arithmetic and converted to
//! physical length once, as `h * sqrt(sq)`. On a torus each 1-D pass runs on
//! three tiled copies of the line, which yields the wrapped metric.

use super::geometry::{GridGeometry, Wrap};
use super::set::GridSet;
use crate::error::{Error, Result};

const UNREACHED: u64 = u64::MAX;

/// Distance from every cell center to the nearest center of a source set.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField {
    geometry: GridGeometry,
    /// Squared distance in cell units, row-major.
    sq: Vec<u64>,
}

impl DistanceField {
    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn squared_cells(&self, i: usize, j: usize) -> u64 {
        self.sq[j * self.geometry.nx + i]
    }

    /// Physical distance, `h * sqrt(squared cell distance)`.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        cell_length(&self.geometry, self.squared_cells(i, j))
    }

    /// Largest distance over the cells of `set`, or `None` if `set` is empty.
    pub fn max_over(&self, set: &GridSet) -> Result<Option<f64>> {
        if set.geometry() != &self.geometry {
            return Err(Error::Geometry("set and distance field grids differ".into()));
        }
        Ok(set
            .cells()
            .map(|(i, j)| self.squared_cells(i, j))
            .max()
            .map(|sq| cell_length(&self.geometry, sq)))
    }

    /// Cells whose distance is at most `eps`.
    pub fn sublevel(&self, eps: f64) -> GridSet {
        let g = self.geometry;
        GridSet::from_fn(g, |i, j| self.dist(i, j) <= eps)
    }
}

/// Converts a squared distance in cell units to physical length. Every
/// distance reported by this module goes through here.
pub fn cell_length(geometry: &GridGeometry, squared_cells: u64) -> f64 {
    geometry.h * (squared_cells as f64).sqrt()
}

pub fn distance_transform(set: &GridSet) -> Result<DistanceField> {
    if set.is_empty() {
        return Err(Error::EmptySet("distance transform"));
    }
    let g = *set.geometry();
    let (nx, ny) = (g.nx, g.ny);
    let periodic = g.wrap == Wrap::Torus;
    let mut sq = vec![UNREACHED; nx * ny];
    let mut env = Envelope::default();

    let mut line_in = vec![UNREACHED; nx.max(ny)];
    let mut line_out = vec![0u64; nx.max(ny)];
    for j in 0..ny {
        for (i, v) in line_in[..nx].iter_mut().enumerate() {
            *v = if set.contains(i, j) { 0 } else { UNREACHED };
        }
        env.transform(&line_in[..nx], &mut line_out[..nx], periodic);
        sq[j * nx..(j + 1) * nx].copy_from_slice(&line_out[..nx]);
    }
    for i in 0..nx {
        for j in 0..ny {
            line_in[j] = sq[j * nx + i];
        }
        env.transform(&line_in[..ny], &mut line_out[..ny], periodic);
        for j in 0..ny {
            sq[j * nx + i] = line_out[j];
        }
    }
    Ok(DistanceField { geometry: g, sq })
}

/// Intersection abscissa of two parabolas as an exact fraction `num / den`,
/// `den > 0`.
#[derive(Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn le(self, other: Frac) -> bool {
        self.num * other.den <= other.num * self.den
    }

    fn lt_int(self, p: i128) -> bool {
        self.num < p * self.den
    }
}

/// Scratch buffers for the 1-D lower envelope, reused across lines.
#[derive(Default)]
struct Envelope {
    sites: Vec<(i128, i128)>,
    starts: Vec<Frac>,
}

impl Envelope {
    /// `out[p] = min_q (p - q)^2 + f[q]` over finite `f[q]`; with `periodic`
    /// the minimum also runs over the translates `q ± n`.
    fn transform(&mut self, f: &[u64], out: &mut [u64], periodic: bool) {
        let n = f.len();
        let (lo, hi) = if periodic {
            (-(n as i128), 2 * n as i128)
        } else {
            (0, n as i128)
        };
        self.sites.clear();
        self.starts.clear();
        for q in lo..hi {
            let fq = f[q.rem_euclid(n as i128) as usize];
            if fq == UNREACHED {
                continue;
            }
            let fq = fq as i128;
            let key = fq + q * q;
            let mut start = None;
            while let Some(&(v, fv)) = self.sites.last() {
                let s = Frac {
                    num: key - (fv + v * v),
                    den: 2 * (q - v),
                };
                let last_start = *self.starts.last().expect("one start per site");
                // The first site's interval starts at -inf and is never removed.
                if self.sites.len() > 1 && s.le(last_start) {
                    self.sites.pop();
                    self.starts.pop();
                } else {
                    start = Some(s);
                    break;
                }
            }
            self.sites.push((q, fq));
            self.starts.push(start.unwrap_or(Frac { num: -1, den: 0 }));
        }
        if self.sites.is_empty() {
            out.fill(UNREACHED);
            return;
        }
        let mut k = 0;
        for (p, o) in out.iter_mut().enumerate() {
            let p = p as i128;
            while k + 1 < self.sites.len() && self.starts[k + 1].lt_int(p) {
                k += 1;
            }
            let (v, fv) = self.sites[k];
            *o = ((p - v) * (p - v) + fv) as u64;
        }
    }
}

/// `sup_{x∈X} d(x, Y)`: how far `X` reaches outside `Y`.
pub fn directed_hausdorff(x: &GridSet, y: &GridSet) -> Result<f64> {
    x.check_same_geometry(y)?;
    if x.is_empty() {
        return Err(Error::EmptySet("directed Hausdorff distance"));
    }
    let field = distance_transform(y)?;
    Ok(field.max_over(x)?.expect("nonempty"))
}

pub fn hausdorff(x: &GridSet, y: &GridSet) -> Result<f64> {
    Ok(directed_hausdorff(x, y)?.max(directed_hausdorff(y, x)?))
}

/// `X_ε`: cells within distance `eps` of `X`.
pub fn epsilon_neighborhood(x: &GridSet, eps: f64) -> Result<GridSet> {
    if eps.is_nan() || eps < 0.0 {
        return Err(crate::error::validation(format!("epsilon must be nonnegative, got {eps}")));
    }
    Ok(distance_transform(x)?.sublevel(eps))
}
