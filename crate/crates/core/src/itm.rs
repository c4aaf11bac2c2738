//! Exact engine for piecewise translations of the line and the circle.
//!
//! Sets are finite unions of closed intervals with rational endpoints, so
//! images, containment and stabilization are decided exactly. This covers
//! interval translation maps (images may overlap), interval exchanges
//! (images tile the domain) and circle double rotations (`mode = circle`,
//! translation mod 1).

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{validation, Error, Result};
use crate::rational::{format_rational, int, is_unit_interval, parse_rational, Rational, PQ};

/// Closed interval `[lo, hi]`; `lo == hi` is a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval1 {
    lo: Rational,
    hi: Rational,
}

impl Interval1 {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(validation(format!(
                "malformed interval [{}, {}]",
                PQ(&lo),
                PQ(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval1) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval1) -> Option<Interval1> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval1 { lo, hi })
    }

    pub fn translate(&self, v: &Rational) -> Interval1 {
        Interval1 {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }
}

impl fmt::Display for Interval1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", PQ(&self.lo), PQ(&self.hi))
    }
}

/// Compact subset of the line stored as sorted, pairwise disjoint,
/// non-touching closed intervals. The empty sequence is the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    parts: Vec<Interval1>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_interval(interval: Interval1) -> Self {
        Self {
            parts: vec![interval],
        }
    }

    /// Canonical form of an arbitrary finite union: sort by `lo`, merge
    /// overlapping and touching intervals.
    pub fn normalize(parts: impl IntoIterator<Item = Interval1>) -> Self {
        let mut parts: Vec<Interval1> = parts.into_iter().collect();
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval1> = Vec::with_capacity(parts.len());
        for part in parts {
            match merged.last_mut() {
                Some(last) if part.lo <= last.hi => {
                    if part.hi > last.hi {
                        last.hi = part.hi;
                    }
                }
                _ => merged.push(part),
            }
        }
        Self { parts: merged }
    }

    /// Validating variant of [`normalize`](Self::normalize) for raw
    /// `(lo, hi)` pairs.
    pub fn from_bounds(bounds: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let parts = bounds
            .into_iter()
            .map(|(lo, hi)| Interval1::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(parts))
    }

    pub fn parts(&self) -> &[Interval1] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.parts.partition_point(|p| &p.hi < x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    /// Each part is connected, so it lies in `other` iff it lies in a single
    /// part of `other`.
    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().all(|p| {
            let idx = other.parts.partition_point(|q| q.hi < p.lo);
            other.parts.get(idx).is_some_and(|q| q.contains_interval(p))
        })
    }

    pub fn intersect_interval(&self, interval: &Interval1) -> IntervalUnion {
        // Intersections of disjoint sorted parts with one interval stay
        // disjoint and sorted.
        IntervalUnion {
            parts: self
                .parts
                .iter()
                .filter_map(|p| p.intersect(interval))
                .collect(),
        }
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(c) = a.intersect(b) {
                out.push(c);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::normalize(self.parts.iter().chain(&other.parts).cloned())
    }

    pub fn translate(&self, v: &Rational) -> IntervalUnion {
        IntervalUnion {
            parts: self.parts.iter().map(|p| p.translate(v)).collect(),
        }
    }

    pub fn total_length(&self) -> Rational {
        self.parts
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.length())
    }

    /// Distance from `x` to the set; `None` for the empty set.
    pub fn distance_to(&self, x: &Rational) -> Option<Rational> {
        let idx = self.parts.partition_point(|p| &p.hi < x);
        let right = self.parts.get(idx).map(|p| {
            if p.lo <= *x {
                Rational::zero()
            } else {
                &p.lo - x
            }
        });
        let left = idx.checked_sub(1).map(|k| x - &self.parts[k].hi);
        match (left, right) {
            (Some(l), Some(r)) => Some(l.min(r)),
            (l, r) => l.or(r),
        }
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Sum of part lengths.
pub fn total_length(set: &IntervalUnion) -> Rational {
    set.total_length()
}

/// Directed (pseudo-)Hausdorff distance `sup_{x∈X} d(x, Y)`, exact.
///
/// `d(·, Y)` is piecewise linear, so the supremum over a part of `X` is
/// attained at one of its endpoints or at the midpoint of a gap of `Y`.
pub fn directed_hausdorff_exact(x: &IntervalUnion, y: &IntervalUnion) -> Result<Rational> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet("directed Hausdorff distance"));
    }
    let two = int(2);
    let gap_midpoints: Vec<Rational> = y
        .parts
        .windows(2)
        .map(|w| (&w[0].hi + &w[1].lo) / &two)
        .collect();
    let mut best = Rational::zero();
    for part in &x.parts {
        let candidates = [&part.lo, &part.hi]
            .into_iter()
            .chain(gap_midpoints.iter().filter(|m| part.contains(m)));
        for c in candidates {
            let d = y.distance_to(c).expect("nonempty");
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

pub fn hausdorff_exact(x: &IntervalUnion, y: &IntervalUnion) -> Result<Rational> {
    let a = directed_hausdorff_exact(x, y)?;
    let b = directed_hausdorff_exact(y, x)?;
    Ok(a.max(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Translation on the line; images must stay inside the domain.
    Line,
    /// Translation mod 1 on `[0, 1]` with `0 ~ 1`.
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItmBranch {
    pub region: Interval1,
    pub vector: Rational,
}

/// A validated piecewise translation of an interval or of the circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawItmSpec", into = "RawItmSpec")]
pub struct ItmSpec {
    omega: Interval1,
    branches: Vec<ItmBranch>,
    mode: Mode,
}

impl ItmSpec {
    /// Checks that the regions lie in and cover `omega`, and in line mode
    /// that every translated region stays in `omega`.
    pub fn new(omega: Interval1, branches: Vec<ItmBranch>, mode: Mode) -> Result<Self> {
        if branches.is_empty() {
            return Err(validation("a piecewise translation needs at least one branch"));
        }
        if mode == Mode::Circle && !is_unit_interval(&omega.lo, &omega.hi) {
            return Err(validation("circle mode requires omega = [0, 1]"));
        }
        for (i, b) in branches.iter().enumerate() {
            if !omega.contains_interval(&b.region) {
                return Err(validation(format!(
                    "branch {i} region {} is not inside omega {omega}",
                    b.region
                )));
            }
            if mode == Mode::Line && !omega.contains_interval(&b.region.translate(&b.vector)) {
                return Err(validation(format!(
                    "branch {i} maps {} outside omega {omega}",
                    b.region
                )));
            }
        }
        let cover = IntervalUnion::normalize(branches.iter().map(|b| b.region.clone()));
        if cover != IntervalUnion::from_interval(omega.clone()) {
            return Err(validation(format!(
                "branch regions cover {cover}, not omega {omega}"
            )));
        }
        Ok(Self {
            omega,
            branches,
            mode,
        })
    }

    pub fn omega(&self) -> &Interval1 {
        &self.omega
    }

    pub fn branches(&self) -> &[ItmBranch] {
        &self.branches
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Image of a single interval under one branch translation, with the
    /// circle wrap applied in circle mode.
    fn push_image(&self, part: &Interval1, v: &Rational, out: &mut Vec<Interval1>) {
        let moved = part.translate(v);
        match self.mode {
            Mode::Line => out.push(moved),
            Mode::Circle => {
                let shift = moved.lo.floor();
                let lo = &moved.lo - &shift;
                let hi = &moved.hi - &shift;
                let one = int(1);
                if hi <= one {
                    out.push(Interval1 { lo, hi });
                } else {
                    out.push(Interval1 {
                        lo,
                        hi: one.clone(),
                    });
                    out.push(Interval1 {
                        lo: Rational::zero(),
                        hi: hi - one,
                    });
                }
            }
        }
    }

    /// Circle mode: 0 and 1 are the same point, so the canonical form holds
    /// both or neither.
    fn identify_endpoints(&self, set: IntervalUnion) -> IntervalUnion {
        if self.mode != Mode::Circle || set.is_empty() {
            return set;
        }
        let zero = Rational::zero();
        let one = int(1);
        match (set.contains(&zero), set.contains(&one)) {
            (true, false) => set.union(&IntervalUnion::from_interval(Interval1::point(one))),
            (false, true) => set.union(&IntervalUnion::from_interval(Interval1::point(zero))),
            _ => set,
        }
    }

    /// Set image of one branch's region, ignoring every other branch.
    pub fn branch_image(&self, index: usize) -> IntervalUnion {
        let b = &self.branches[index];
        let mut out = Vec::with_capacity(2);
        self.push_image(&b.region, &b.vector, &mut out);
        IntervalUnion::normalize(out)
    }
}

#[derive(Serialize, Deserialize)]
struct RawItmSpec {
    mode: Mode,
    omega: [String; 2],
    branches: Vec<RawItmBranch>,
}

#[derive(Serialize, Deserialize)]
struct RawItmBranch {
    region: [String; 2],
    vector: String,
}

fn parse_interval(raw: &[String; 2]) -> Result<Interval1> {
    Interval1::new(parse_rational(&raw[0])?, parse_rational(&raw[1])?)
}

impl TryFrom<RawItmSpec> for ItmSpec {
    type Error = Error;

    fn try_from(raw: RawItmSpec) -> Result<Self> {
        let omega = parse_interval(&raw.omega)?;
        let branches = raw
            .branches
            .iter()
            .map(|b| {
                Ok(ItmBranch {
                    region: parse_interval(&b.region)?,
                    vector: parse_rational(&b.vector)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ItmSpec::new(omega, branches, raw.mode)
    }
}

impl From<ItmSpec> for RawItmSpec {
    fn from(spec: ItmSpec) -> Self {
        let bounds = |i: &Interval1| [format_rational(&i.lo), format_rational(&i.hi)];
        RawItmSpec {
            mode: spec.mode,
            omega: bounds(&spec.omega),
            branches: spec
                .branches
                .iter()
                .map(|b| RawItmBranch {
                    region: bounds(&b.region),
                    vector: format_rational(&b.vector),
                })
                .collect(),
        }
    }
}

/// `F(K) = ⋃ (K ∩ B_i) + v_i`. A point in several branches has one image per
/// branch.
pub fn apply_itm(spec: &ItmSpec, set: &IntervalUnion) -> Result<IntervalUnion> {
    if !set.is_subset(&IntervalUnion::from_interval(spec.omega.clone())) {
        return Err(Error::Domain(format!(
            "set {set} is not inside omega {}",
            spec.omega
        )));
    }
    let mut images = Vec::new();
    for branch in &spec.branches {
        for part in set.intersect_interval(&branch.region).parts() {
            spec.push_image(part, &branch.vector, &mut images);
        }
    }
    Ok(spec.identify_endpoints(IntervalUnion::normalize(images)))
}

/// Outcome of iterating the map on its whole domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttractorResult1 {
    /// `F^{steps+1}(Ω) = F^steps(Ω) = attractor`.
    Finite {
        steps: usize,
        attractor: IntervalUnion,
    },
    /// No stabilization within the cap. `length_trace[n]` is the length of
    /// `F^n(Ω)`.
    CapReached {
        last: IntervalUnion,
        length_trace: Vec<Rational>,
    },
}

impl AttractorResult1 {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite { .. })
    }
}

impl fmt::Display for AttractorResult1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite { steps, attractor } => write!(f, "finite N={steps} A={attractor}"),
            Self::CapReached { last, length_trace } => write!(
                f,
                "cap_reached steps={} length={}",
                length_trace.len() - 1,
                PQ(&last.total_length())
            ),
        }
    }
}

pub const DEFAULT_CAP: usize = 100_000;

/// Iterates from `Ω` for at most `cap` applications of the map, stopping at
/// the first exact repeat. Containment `F^{n+1}(Ω) ⊆ F^n(Ω)` is checked at
/// every step.
pub fn attractor_exact(spec: &ItmSpec, cap: usize) -> Result<AttractorResult1> {
    if cap < 1 {
        return Err(validation("cap must be at least 1"));
    }
    let mut current = IntervalUnion::from_interval(spec.omega.clone());
    let mut trace = vec![current.total_length()];
    for n in 0..cap {
        let next = apply_itm(spec, &current)?;
        if next == current {
            return Ok(AttractorResult1::Finite {
                steps: n,
                attractor: current,
            });
        }
        if !next.is_subset(&current) {
            return Err(Error::Invariant(format!(
                "F^{}(Ω) = {next} is not contained in F^{n}(Ω) = {current}",
                n + 1
            )));
        }
        trace.push(next.total_length());
        current = next;
    }
    Ok(AttractorResult1::CapReached {
        last: current,
        length_trace: trace,
    })
}

/// True iff the branch images overlap only in finitely many points and
/// together cover `Ω`, i.e. the map is an interval exchange.
pub fn is_exchange(spec: &ItmSpec) -> bool {
    let images: Vec<IntervalUnion> = (0..spec.branches.len())
        .map(|i| spec.branch_image(i))
        .collect();
    for (i, a) in images.iter().enumerate() {
        for b in &images[i + 1..] {
            if a.intersect(b).total_length().is_positive() {
                return false;
            }
        }
    }
    // The images lie in Ω and their union is closed, so full length means
    // the union is all of Ω.
    let union = images
        .iter()
        .fold(IntervalUnion::empty(), |acc, img| acc.union(img));
    union.total_length() == spec.omega.length()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ratio};

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval1 {
        Interval1::new(ratio(lo.0, lo.1), ratio(hi.0, hi.1)).unwrap()
    }

    fn unit() -> Interval1 {
        iv((0, 1), (1, 1))
    }

    fn branch(lo: (i64, i64), hi: (i64, i64), v: (i64, i64)) -> ItmBranch {
        ItmBranch {
            region: iv(lo, hi),
            vector: ratio(v.0, v.1),
        }
    }

    fn derived_spec() -> ItmSpec {
        ItmSpec::new(
            unit(),
            vec![branch((0, 1), (1, 2), (1, 4)), branch((1, 2), (1, 1), (-1, 2))],
            Mode::Line,
        )
        .unwrap()
    }

    fn half_swap() -> ItmSpec {
        ItmSpec::new(
            unit(),
            vec![branch((0, 1), (1, 2), (1, 2)), branch((1, 2), (1, 1), (-1, 2))],
            Mode::Line,
        )
        .unwrap()
    }

    #[test]
    fn touching_intervals_merge() {
        let u = IntervalUnion::normalize([iv((0, 1), (1, 4)), iv((1, 4), (3, 4))]);
        assert_eq!(u.parts(), &[iv((0, 1), (3, 4))]);
    }

    #[test]
    fn normalize_empty() {
        assert!(IntervalUnion::normalize([]).is_empty());
    }

    #[test]
    fn normalize_matches_membership_oracle() {
        let input = [iv((1, 2), (1, 1)), iv((0, 1), (1, 4)), iv((1, 5), (1, 3))];
        let u = IntervalUnion::normalize(input.clone());
        assert_eq!(u.parts(), &[iv((0, 1), (1, 3)), iv((1, 2), (1, 1))]);
        for k in -10..=610 {
            let x = ratio(k, 600);
            let expected = input.iter().any(|p| p.contains(&x));
            assert_eq!(u.contains(&x), expected, "x = {}", PQ(&x));
        }
    }

    #[test]
    fn malformed_interval_is_rejected() {
        assert!(Interval1::new(ratio(1, 2), ratio(1, 3)).is_err());
        assert!(IntervalUnion::from_bounds([(ratio(1, 2), ratio(1, 3))]).is_err());
        assert!(Interval1::new(ratio(1, 2), ratio(1, 2)).is_ok());
    }

    #[test]
    fn lengths() {
        assert_eq!(total_length(&IntervalUnion::empty()), int(0));
        assert_eq!(
            total_length(&IntervalUnion::from_interval(iv((0, 1), (3, 4)))),
            ratio(3, 4)
        );
        let u = IntervalUnion::normalize([iv((0, 1), (1, 3)), iv((1, 2), (1, 1))]);
        assert_eq!(total_length(&u), ratio(5, 6));
    }

    #[test]
    fn derived_spec_first_image() {
        let spec = derived_spec();
        let omega = IntervalUnion::from_interval(unit());
        let image = apply_itm(&spec, &omega).unwrap();
        assert_eq!(image, IntervalUnion::from_interval(iv((0, 1), (3, 4))));
    }

    #[test]
    fn identity_branch_is_identity() {
        let spec = ItmSpec::new(unit(), vec![branch((0, 1), (1, 1), (0, 1))], Mode::Line).unwrap();
        let k = IntervalUnion::normalize([iv((1, 7), (2, 7)), iv((1, 2), (1, 2))]);
        assert_eq!(apply_itm(&spec, &k).unwrap(), k);
    }

    #[test]
    fn circle_wrap_matches_sampling_oracle() {
        let spec = ItmSpec::new(unit(), vec![branch((0, 1), (1, 1), (3, 4))], Mode::Circle).unwrap();
        let k = IntervalUnion::from_interval(iv((1, 2), (1, 1)));
        let image = apply_itm(&spec, &k).unwrap();
        assert_eq!(image, IntervalUnion::from_interval(iv((1, 4), (3, 4))));
        // Oracle: y is in the image iff y - 3/4 (mod 1) lies in K on the circle.
        for s in 0..=480 {
            let y = ratio(s, 480);
            let pre = frac(&(&y - ratio(3, 4)));
            let in_k = k.contains(&pre) || (pre == int(0) && k.contains(&int(1)));
            assert_eq!(image.contains(&y), in_k, "y = {}", PQ(&y));
        }
    }

    #[test]
    fn circle_image_touching_one_contains_zero() {
        let spec = ItmSpec::new(unit(), vec![branch((0, 1), (1, 1), (1, 2))], Mode::Circle).unwrap();
        let k = IntervalUnion::from_interval(iv((1, 4), (1, 2)));
        let image = apply_itm(&spec, &k).unwrap();
        assert_eq!(
            image,
            IntervalUnion::normalize([Interval1::point(int(0)), iv((3, 4), (1, 1))])
        );
    }

    #[test]
    fn set_outside_omega_is_a_domain_error() {
        let k = IntervalUnion::from_interval(iv((1, 2), (3, 2)));
        assert!(matches!(apply_itm(&derived_spec(), &k), Err(Error::Domain(_))));
    }

    #[test]
    fn spec_validation() {
        // Image leaves omega.
        assert!(ItmSpec::new(unit(), vec![branch((0, 1), (1, 1), (1, 4))], Mode::Line).is_err());
        // Regions do not cover omega.
        assert!(ItmSpec::new(unit(), vec![branch((0, 1), (1, 2), (0, 1))], Mode::Line).is_err());
        // Circle mode needs the unit interval.
        let half = iv((0, 1), (1, 2));
        assert!(ItmSpec::new(
            half,
            vec![branch((0, 1), (1, 2), (0, 1))],
            Mode::Circle
        )
        .is_err());
        // Circle mode allows any vector.
        assert!(ItmSpec::new(unit(), vec![branch((0, 1), (1, 1), (7, 3))], Mode::Circle).is_ok());
    }

    #[test]
    fn derived_spec_attractor() {
        let result = attractor_exact(&derived_spec(), 10).unwrap();
        assert_eq!(
            result,
            AttractorResult1::Finite {
                steps: 1,
                attractor: IntervalUnion::from_interval(iv((0, 1), (3, 4))),
            }
        );
        assert_eq!(result.to_string(), "finite N=1 A=[0/1,3/4]");
    }

    #[test]
    fn exchange_is_finite_at_zero() {
        let result = attractor_exact(&half_swap(), 5).unwrap();
        assert_eq!(
            result,
            AttractorResult1::Finite {
                steps: 0,
                attractor: IntervalUnion::from_interval(unit())
            }
        );
    }

    #[test]
    fn zero_cap_is_rejected() {
        assert!(attractor_exact(&half_swap(), 0).is_err());
    }

    #[test]
    fn exchange_detection() {
        assert!(is_exchange(&half_swap()));
        assert!(!is_exchange(&derived_spec()));
        let identity =
            ItmSpec::new(unit(), vec![branch((0, 1), (1, 1), (0, 1))], Mode::Line).unwrap();
        assert!(is_exchange(&identity));
    }

    #[test]
    fn overlap_of_derived_images_is_a_quarter() {
        let spec = derived_spec();
        let overlap = spec.branch_image(0).intersect(&spec.branch_image(1));
        assert_eq!(overlap.total_length(), ratio(1, 4));
    }

    #[test]
    fn json_round_trip_and_decimal_rejection() {
        let json = r#"{"mode":"line","omega":["0","1"],"branches":[
            {"region":["0","1/2"],"vector":"1/4"},
            {"region":["1/2","1"],"vector":"-1/2"}]}"#;
        let spec = ItmSpec::from_json(json).unwrap();
        assert_eq!(spec, derived_spec());
        assert_eq!(ItmSpec::from_json(&spec.to_json()).unwrap(), spec);
        let decimal = json.replace("\"1/4\"", "\"0.25\"");
        assert!(ItmSpec::from_json(&decimal).is_err());
    }

    #[test]
    fn exact_hausdorff_on_unions() {
        let x = IntervalUnion::normalize([iv((0, 1), (1, 4))]);
        let y = IntervalUnion::normalize([iv((0, 1), (1, 8)), iv((7, 8), (1, 1))]);
        // Farthest point of y from x is 1, at distance 3/4.
        assert_eq!(directed_hausdorff_exact(&y, &x).unwrap(), ratio(3, 4));
        // Farthest point of x from y is 1/4, at distance 1/8.
        assert_eq!(directed_hausdorff_exact(&x, &y).unwrap(), ratio(1, 8));
        // Gap midpoint: x = [0,1], y = {0, 1}: sup at 1/2.
        let ends = IntervalUnion::normalize([Interval1::point(int(0)), Interval1::point(int(1))]);
        let full = IntervalUnion::from_interval(unit());
        assert_eq!(directed_hausdorff_exact(&full, &ends).unwrap(), ratio(1, 2));
        assert_eq!(hausdorff_exact(&full, &ends).unwrap(), ratio(1, 2));
        assert!(hausdorff_exact(&full, &IntervalUnion::empty()).is_err());
    }
}
