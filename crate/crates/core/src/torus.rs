//! Double rotations of the flat torus `[0,1)²` and the lattice projection
//! that conjugates an `m = d + 1` branch translation to a single rotation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::grid::{
    hausdorff, rasterize, snap_vector, BranchSpec, GridGeometry, GridSet, PwtMap, PwtSpec,
    RegionSpec, Wrap,
};
use crate::rational::Rational;

/// `x ↦ x + v0 (mod 1)` on `region`, `x ↦ x + v1 (mod 1)` elsewhere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PwtSpec", into = "PwtSpec")]
pub struct TorusSpec {
    pub region: RegionSpec,
    pub v0: [f64; 2],
    pub v1: [f64; 2],
    pub geometry: GridGeometry,
}

fn unit_square() -> RegionSpec {
    RegionSpec::rect([0.0, 0.0], [1.0, 1.0])
}

impl TorusSpec {
    pub fn new(region: RegionSpec, v0: [f64; 2], v1: [f64; 2], n: usize) -> Result<Self> {
        let spec = Self {
            region,
            v0,
            v1,
            geometry: GridGeometry::unit_torus(n),
        };
        spec.region.validate()?;
        spec.geometry.validate()?;
        Ok(spec)
    }

    pub fn to_pwt_spec(&self) -> PwtSpec {
        PwtSpec {
            omega: unit_square(),
            branches: vec![
                BranchSpec {
                    region: self.region.clone(),
                    vector: self.v0,
                },
                BranchSpec {
                    region: RegionSpec::complement_within(self.region.clone(), unit_square()),
                    vector: self.v1,
                },
            ],
            geometry: self.geometry,
        }
    }

    pub fn compile(&self) -> Result<DoubleRotation> {
        let map = self.to_pwt_spec().compile()?;
        let region = map.branches()[0].mask.clone();
        Ok(DoubleRotation {
            spec: self.clone(),
            map,
            region,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

impl TryFrom<PwtSpec> for TorusSpec {
    type Error = Error;

    /// Accepts a two-branch torus spec whose second branch rasterizes to the
    /// complement of the first.
    fn try_from(spec: PwtSpec) -> Result<Self> {
        let g = spec.geometry;
        if g.wrap != Wrap::Torus {
            return Err(validation("a double rotation needs \"wrap\": \"torus\""));
        }
        g.validate()?;
        if spec.branches.len() != 2 {
            return Err(validation(format!(
                "a double rotation has exactly two branches, got {}",
                spec.branches.len()
            )));
        }
        let omega = rasterize(&spec.omega, &g)?;
        if omega != GridSet::full(g) {
            return Err(validation("a double rotation acts on the whole torus"));
        }
        let r = rasterize(&spec.branches[0].region, &g)?;
        let rc = rasterize(&spec.branches[1].region, &g)?;
        if rc != r.complement() {
            return Err(validation(
                "second branch must be the complement of the first on the torus raster",
            ));
        }
        Ok(Self {
            region: spec.branches[0].region.clone(),
            v0: spec.branches[0].vector,
            v1: spec.branches[1].vector,
            geometry: g,
        })
    }
}

impl From<TorusSpec> for PwtSpec {
    fn from(spec: TorusSpec) -> Self {
        spec.to_pwt_spec()
    }
}

/// A compiled double rotation.
#[derive(Clone, Debug)]
pub struct DoubleRotation {
    spec: TorusSpec,
    map: PwtMap,
    region: GridSet,
}

impl DoubleRotation {
    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn map(&self) -> &PwtMap {
        &self.map
    }

    /// Raster of the region `R` carrying `v0`.
    pub fn region(&self) -> &GridSet {
        &self.region
    }

    pub fn geometry(&self) -> &GridGeometry {
        self.map.geometry()
    }
}

pub fn double_rotation_apply(rotation: &DoubleRotation, set: &GridSet) -> Result<GridSet> {
    rotation.map.apply(set)
}

/// `K ∖ f(K)`: cells of `K` that are no longer covered after one step.
pub fn lost_region(rotation: &DoubleRotation, set: &GridSet) -> Result<GridSet> {
    set.difference(&double_rotation_apply(rotation, set)?)
}

/// Base vector `v0` and basis `B = [v1 - v0, v2 - v0]` of the lattice `L`;
/// `R^2 / L` is identified with `[0,1)²` through `x ↦ frac(B⁻¹ x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeBasis {
    pub v0: [f64; 2],
    /// Columns are `v1 - v0` and `v2 - v0`.
    pub basis: [[f64; 2]; 2],
    inverse: [[f64; 2]; 2],
}

impl LatticeBasis {
    /// From `d + 1 = 3` translation vectors.
    pub fn from_vectors(vectors: &[[f64; 2]]) -> Result<Self> {
        if vectors.len() != 3 {
            return Err(validation(format!(
                "a planar lattice needs d + 1 = 3 vectors, got {}",
                vectors.len()
            )));
        }
        let v0 = vectors[0];
        let c1 = [vectors[1][0] - v0[0], vectors[1][1] - v0[1]];
        let c2 = [vectors[2][0] - v0[0], vectors[2][1] - v0[1]];
        Self::new(v0, [c1, c2])
    }

    /// From the snapped vectors a grid map actually applies.
    pub fn from_map(map: &PwtMap) -> Result<Self> {
        let h = map.geometry().h;
        let effective: Vec<[f64; 2]> = map
            .branches()
            .iter()
            .map(|b| [b.snapped.offset[0] as f64 * h, b.snapped.offset[1] as f64 * h])
            .collect();
        Self::from_vectors(&effective)
    }

    /// `columns[k]` is the k-th basis vector.
    pub fn new(v0: [f64; 2], columns: [[f64; 2]; 2]) -> Result<Self> {
        let [[a, c], [b, d]] = columns;
        let det = a * d - b * c;
        let scale = (a.abs() + b.abs() + c.abs() + d.abs()).max(f64::MIN_POSITIVE);
        if !det.is_finite() || det.abs() <= 1e-12 * scale * scale {
            return Err(validation("lattice basis is singular"));
        }
        // Matrix [[a, b], [c, d]] in column form; inverse stored by columns too.
        let inverse = [[d / det, -c / det], [-b / det, a / det]];
        Ok(Self {
            v0,
            basis: columns,
            inverse,
        })
    }

    /// Lattice coordinates `B⁻¹ x`.
    pub fn coordinates(&self, x: [f64; 2]) -> [f64; 2] {
        let [c0, c1] = self.inverse;
        [c0[0] * x[0] + c1[0] * x[1], c0[1] * x[0] + c1[1] * x[1]]
    }

    /// `B n` for integer `n`.
    pub fn lattice_vector(&self, n: [i64; 2]) -> [f64; 2] {
        let [c0, c1] = self.basis;
        [
            c0[0] * n[0] as f64 + c1[0] * n[1] as f64,
            c0[1] * n[0] as f64 + c1[1] * n[1] as f64,
        ]
    }
}

/// Index of the torus cell holding lattice coordinate `u`, half-open `[0,1)`
/// convention per axis.
fn torus_index(u: f64, n: usize) -> usize {
    let f = u - u.floor();
    ((f * n as f64).floor() as usize).min(n - 1)
}

/// `π(K)` rasterized on `torus`: each planar cell center `x` lands in the
/// torus cell containing `frac(B⁻¹ x)`.
pub fn project_to_torus(set: &GridSet, lattice: &LatticeBasis, torus: &GridGeometry) -> Result<GridSet> {
    if torus.wrap != Wrap::Torus {
        return Err(validation("projection target must be a torus grid"));
    }
    torus.validate()?;
    let g = set.geometry();
    let mut out = GridSet::empty(*torus);
    for (i, j) in set.cells() {
        let u = lattice.coordinates(g.cell_center(i, j));
        out.insert(torus_index(u[0], torus.nx), torus_index(u[1], torus.ny));
    }
    Ok(out)
}

/// Rotation of a torus mask by `v0` expressed in lattice coordinates and
/// snapped to torus cells.
pub fn rotate_on_torus(set: &GridSet, lattice: &LatticeBasis) -> GridSet {
    let rotation = lattice.coordinates(lattice.v0);
    let snapped = snap_vector(rotation, set.geometry());
    set.shifted(snapped.offset[0], snapped.offset[1])
}

/// Wrapped Hausdorff distance between `π(F(K))` and `R(π(K))` on the torus
/// grid. Zero in the continuum; on grids it is bounded by one torus cell
/// diagonal.
pub fn check_projection_lemma(
    map: &PwtMap,
    set: &GridSet,
    lattice: &LatticeBasis,
    torus: &GridGeometry,
) -> Result<f64> {
    if map.branches().len() != 3 {
        return Err(validation(format!(
            "projection lemma needs m = d + 1 = 3 branches, got {}",
            map.branches().len()
        )));
    }
    if set.is_empty() {
        return Err(Error::EmptySet("projection lemma input"));
    }
    let image = map.apply(set)?;
    let lhs = project_to_torus(&image, lattice, torus)?;
    let rhs = rotate_on_torus(&project_to_torus(set, lattice, torus)?, lattice);
    hausdorff(&lhs, &rhs)
}

/// Outcome of [`rational_dependence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    Independent,
    /// Primitive integer coefficients `c` with `Σ c_k v_k = 0`, first nonzero
    /// coefficient positive.
    Dependent(Vec<BigInt>),
}

/// Searches for a nonzero rational relation among exact vectors by
/// reducing the `d × m` matrix with the vectors as columns.
pub fn rational_dependence_check(vectors: &[Vec<Rational>]) -> Result<Dependence> {
    let m = vectors.len();
    if m == 0 {
        return Ok(Dependence::Independent);
    }
    let d = vectors[0].len();
    if vectors.iter().any(|v| v.len() != d) {
        return Err(validation("vectors must share one dimension"));
    }
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|r| (0..m).map(|c| vectors[c][r].clone()).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..m {
        if row == d {
            break;
        }
        let Some(p) = (row..d).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[row].clone();
        for (r, line) in a.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let factor = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let Some(free) = (0..m).find(|c| !pivots.contains(c)) else {
        return Ok(Dependence::Independent);
    };
    let mut coeffs = vec![Rational::zero(); m];
    coeffs[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = -a[r][free].clone();
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut ints {
        *c /= &gcd;
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    Ok(Dependence::Dependent(ints))
}
