//! Seeded generators for random specs used by tests, sweeps and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::error::{validation, Result};
use crate::grid::{BranchSpec, GridGeometry, PwtSpec, RegionSpec};
use crate::itm::{Interval1, ItmBranch, ItmSpec, Mode};
use crate::rational::{ratio, Rational};
use crate::torus::{LatticeBasis, TorusSpec};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(num: i64, den: u64) -> Rational {
    ratio(num, den as i64)
}

/// `count - 1` distinct sorted cut points in `1..den`, bracketed by 0 and `den`.
fn random_cuts<R: Rng>(rng: &mut R, count: usize, den: u64) -> Vec<u64> {
    let mut inner = rand::seq::index::sample(rng, (den - 1) as usize, count - 1)
        .into_iter()
        .map(|k| k as u64 + 1)
        .collect::<Vec<_>>();
    inner.sort_unstable();
    let mut cuts = vec![0];
    cuts.extend(inner);
    cuts.push(den);
    cuts
}

/// Line-mode ITM on `[0,1]` with `branches` consecutive intervals whose
/// endpoints and vectors are multiples of `1/den`. Each vector is uniform
/// among those keeping its image inside `[0,1]`.
pub fn random_itm<R: Rng>(rng: &mut R, branches: usize, den: u64) -> Result<ItmSpec> {
    if branches == 0 || den < branches as u64 {
        return Err(validation("need 1 <= branches <= den"));
    }
    let cuts = random_cuts(rng, branches, den);
    let parts = cuts
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0] as i64, w[1] as i64);
            let t = rng.gen_range(-a..=den as i64 - b);
            Ok(ItmBranch {
                region: Interval1::new(q(a, den), q(b, den))?,
                vector: q(t, den),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ItmSpec::new(Interval1::new(q(0, 1), q(1, 1))?, parts, Mode::Line)
}

/// Two-branch line-mode ITM with a uniformly drawn denominator in `2..=max_den`.
pub fn random_two_branch_itm<R: Rng>(rng: &mut R, max_den: u64) -> Result<ItmSpec> {
    let den = rng.gen_range(2..=max_den.max(2));
    random_itm(rng, 2, den)
}

/// Interval exchange of `[0,1]`: random interval lengths on the `1/den`
/// lattice, permuted uniformly.
pub fn random_exchange<R: Rng>(rng: &mut R, max_branches: usize, den: u64) -> Result<ItmSpec> {
    let m = rng.gen_range(1..=max_branches.max(1)).min(den as usize);
    let cuts = random_cuts(rng, m, den);
    let lengths: Vec<u64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut target = vec![0u64; m];
    let mut pos = 0;
    for &k in &order {
        target[k] = pos;
        pos += lengths[k];
    }
    let parts = (0..m)
        .map(|k| {
            Ok(ItmBranch {
                region: Interval1::new(q(cuts[k] as i64, den), q(cuts[k + 1] as i64, den))?,
                vector: q(target[k] as i64 - cuts[k] as i64, den),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ItmSpec::new(Interval1::new(q(0, 1), q(1, 1))?, parts, Mode::Line)
}

/// Disk of radius 1/2 in the unit square cut into three sectors, each
/// translated roughly toward the center by a whole number of cells. The
/// result compiles at `n x n` and its lattice basis is nonsingular.
pub fn random_disk_spec<R: Rng>(rng: &mut R, n: usize) -> Result<PwtSpec> {
    let geometry = GridGeometry::unit_square(n);
    let h = geometry.h;
    let center = [0.5, 0.5];
    let radius: f64 = 0.5;
    for _ in 0..256 {
        let weights: Vec<f64> = (0..3).map(|_| rng.gen_range(1.0..1.5)).collect();
        let total: f64 = weights.iter().sum();
        let mut angle = rng.gen_range(0.0..2.0 * PI);
        let mut branches = Vec::with_capacity(3);
        for w in &weights {
            let span = 2.0 * PI * w / total;
            let jitter = rng.gen_range(-0.05..0.05) * PI;
            let bisector = angle + 0.5 * span;
            let limit = radius.min(2.0 * radius * (0.5 * span + jitter.abs()).cos());
            let s = rng.gen_range(0.2..0.9) * limit;
            let dir = bisector + jitter;
            let snap = |x: f64| (x / h).round() * h;
            branches.push(BranchSpec {
                region: RegionSpec::sector(center, radius, angle, angle + span),
                vector: [snap(-s * dir.cos()), snap(-s * dir.sin())],
            });
            angle += span;
        }
        let spec = PwtSpec {
            omega: RegionSpec::disk(center, radius),
            branches,
            geometry,
        };
        let Ok(map) = spec.compile() else { continue };
        if LatticeBasis::from_map(&map).is_ok() {
            return Ok(spec);
        }
    }
    Err(validation("no valid disk spec found in 256 attempts"))
}

/// Double rotation of the unit torus on an `n x n` grid: a random
/// axis-aligned rectangle and two uniform vectors in `[0,1)²`.
pub fn random_torus_spec<R: Rng>(rng: &mut R, n: usize) -> Result<TorusSpec> {
    let lo = [rng.gen_range(0.0..0.5), rng.gen_range(0.0..0.5)];
    let size = [rng.gen_range(0.2..0.5), rng.gen_range(0.2..0.5)];
    let v0 = [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
    let v1 = [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
    TorusSpec::new(
        RegionSpec::rect(lo, [lo[0] + size[0], lo[1] + size[1]]),
        v0,
        v1,
        n,
    )
}
