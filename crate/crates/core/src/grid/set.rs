use std::fmt;

use super::geometry::{GridGeometry, Wrap};
use crate::error::{Error, Result};

/// Occupied cells of a grid, one bit per cell, rows packed into `u64` words.
/// Bits past `nx` in the last word of a row are always zero, so structural
/// equality is set equality.
#[derive(Clone, PartialEq)]
pub struct GridSet {
    geometry: GridGeometry,
    words_per_row: usize,
    words: Vec<u64>,
}

impl GridSet {
    pub fn empty(geometry: GridGeometry) -> Self {
        let words_per_row = geometry.words_per_row();
        Self {
            geometry,
            words_per_row,
            words: vec![0; words_per_row * geometry.ny],
        }
    }

    pub fn full(geometry: GridGeometry) -> Self {
        Self::from_fn(geometry, |_, _| true)
    }

    pub fn from_fn(geometry: GridGeometry, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut set = Self::empty(geometry);
        for j in 0..geometry.ny {
            for i in 0..geometry.nx {
                if f(i, j) {
                    set.insert(i, j);
                }
            }
        }
        set
    }

    pub fn from_cells(geometry: GridGeometry, cells: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut set = Self::empty(geometry);
        for (i, j) in cells {
            set.insert(i, j);
        }
        set
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn nx(&self) -> usize {
        self.geometry.nx
    }

    pub fn ny(&self) -> usize {
        self.geometry.ny
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.geometry.nx && j < self.geometry.ny);
        self.words[j * self.words_per_row + i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(i < self.geometry.nx && j < self.geometry.ny, "cell ({i}, {j}) out of range");
        self.words[j * self.words_per_row + i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize, j: usize) {
        assert!(i < self.geometry.nx && j < self.geometry.ny, "cell ({i}, {j}) out of range");
        self.words[j * self.words_per_row + i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Set cells in row-major order (`j` outer, `i` inner).
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let wpr = self.words_per_row;
        self.words.iter().enumerate().flat_map(move |(k, &word)| {
            let j = k / wpr;
            let base = (k % wpr) * 64;
            BitIter(word).map(move |b| (base + b, j))
        })
    }

    pub(crate) fn row(&self, j: usize) -> &[u64] {
        &self.words[j * self.words_per_row..(j + 1) * self.words_per_row]
    }

    pub(crate) fn row_mut(&mut self, j: usize) -> &mut [u64] {
        let wpr = self.words_per_row;
        &mut self.words[j * wpr..(j + 1) * wpr]
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    pub fn check_same_geometry(&self, other: &GridSet) -> Result<()> {
        if self.geometry != other.geometry {
            return Err(Error::Geometry(format!(
                "{:?} vs {:?}",
                self.geometry, other.geometry
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &GridSet, op: impl Fn(u64, u64) -> u64) -> Result<GridSet> {
        self.check_same_geometry(other)?;
        Ok(GridSet {
            geometry: self.geometry,
            words_per_row: self.words_per_row,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GridSet) -> Result<GridSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GridSet) -> Result<GridSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    /// All cells of the grid not in `self`.
    pub fn complement(&self) -> GridSet {
        GridSet::full(self.geometry).difference(self).expect("same geometry")
    }

    pub fn is_subset(&self, other: &GridSet) -> Result<bool> {
        self.check_same_geometry(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &GridSet) -> Result<bool> {
        self.check_same_geometry(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0))
    }

    /// Translation by whole cells. Without wrap, cells that leave the grid
    /// are dropped.
    pub fn shifted(&self, dx: isize, dy: isize) -> GridSet {
        let mut out = GridSet::empty(self.geometry);
        for j in 0..self.geometry.ny {
            if let Some(tj) = target_row(j, dy, self.geometry.ny, self.geometry.wrap) {
                shift_or_row(out.row_mut(tj), self.row(j), dx, self.geometry.nx, self.geometry.wrap);
            }
        }
        out
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

pub(crate) fn target_row(j: usize, dy: isize, ny: usize, wrap: Wrap) -> Option<usize> {
    let t = j as isize + dy;
    match wrap {
        Wrap::Torus => Some(t.rem_euclid(ny as isize) as usize),
        Wrap::None => (0..ny as isize).contains(&t).then_some(t as usize),
    }
}

/// `dst[c] |= src[c - dx]`, with periodic columns under `Wrap::Torus`.
pub(crate) fn shift_or_row(dst: &mut [u64], src: &[u64], dx: isize, nx: usize, wrap: Wrap) {
    match wrap {
        Wrap::None => shift_or_open(dst, src, dx, nx),
        Wrap::Torus => {
            let d = dx.rem_euclid(nx as isize);
            shift_or_open(dst, src, d, nx);
            if d != 0 {
                shift_or_open(dst, src, d - nx as isize, nx);
            }
        }
    }
}

fn shift_or_open(dst: &mut [u64], src: &[u64], dx: isize, nx: usize) {
    let n = dst.len();
    let (ws, bs) = (dx.unsigned_abs() / 64, dx.unsigned_abs() % 64);
    if ws >= n {
        return;
    }
    if dx >= 0 {
        for k in (ws..n).rev() {
            let mut w = src[k - ws] << bs;
            if bs > 0 && k > ws {
                w |= src[k - ws - 1] >> (64 - bs);
            }
            dst[k] |= w;
        }
    } else {
        for k in 0..n - ws {
            let mut w = src[k + ws] >> bs;
            if bs > 0 && k + ws + 1 < n {
                w |= src[k + ws + 1] << (64 - bs);
            }
            dst[k] |= w;
        }
    }
    let tail = nx % 64;
    if tail != 0 {
        dst[n - 1] &= (1u64 << tail) - 1;
    }
}

impl fmt::Debug for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GridSet {}x{} h={} wrap={:?} count={}",
            self.nx(),
            self.ny(),
            self.geometry.h,
            self.geometry.wrap,
            self.count()
        )?;
        if self.nx() <= 64 && self.ny() <= 64 {
            for j in (0..self.ny()).rev() {
                let row: String = (0..self.nx())
                    .map(|i| if self.contains(i, j) { '#' } else { '.' })
                    .collect();
                writeln!(f, "{row}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_shift(set: &GridSet, dx: isize, dy: isize) -> GridSet {
        let g = *set.geometry();
        let mut out = GridSet::empty(g);
        for (i, j) in set.cells() {
            let (ti, tj) = (i as isize + dx, j as isize + dy);
            match g.wrap {
                Wrap::Torus => out.insert(
                    ti.rem_euclid(g.nx as isize) as usize,
                    tj.rem_euclid(g.ny as isize) as usize,
                ),
                Wrap::None => {
                    if (0..g.nx as isize).contains(&ti) && (0..g.ny as isize).contains(&tj) {
                        out.insert(ti as usize, tj as usize);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn insert_count_and_cells() {
        let g = GridGeometry::unit_square(70);
        let set = GridSet::from_cells(g, [(0, 0), (69, 0), (64, 3), (1, 69)]);
        assert_eq!(set.count(), 4);
        let cells: Vec<_> = set.cells().collect();
        assert_eq!(cells, vec![(0, 0), (69, 0), (64, 3), (1, 69)]);
        assert!(set.contains(64, 3) && !set.contains(63, 3));
    }

    #[test]
    fn full_set_has_no_stray_bits() {
        let g = GridGeometry::unit_square(70);
        let full = GridSet::full(g);
        assert_eq!(full.count(), 4900);
        assert_eq!(full.complement().count(), 0);
        assert_eq!(full.shifted(-3, 0).count(), 67 * 70);
    }

    #[test]
    fn torus_shift_has_order_n() {
        let g = GridGeometry::unit_torus(4);
        let set = GridSet::from_cells(g, [(0, 0), (3, 1), (2, 2)]);
        let mut k = set.clone();
        for _ in 0..4 {
            k = k.shifted(1, 0);
            assert_eq!(k.count(), 3);
        }
        assert_eq!(k, set);
    }

    #[test]
    fn set_algebra() {
        let g = GridGeometry::unit_square(5);
        let a = GridSet::from_cells(g, [(0, 0), (1, 1)]);
        let b = GridSet::from_cells(g, [(1, 1), (2, 2)]);
        assert_eq!(a.union(&b).unwrap().count(), 3);
        assert_eq!(a.intersection(&b).unwrap(), GridSet::from_cells(g, [(1, 1)]));
        assert_eq!(a.difference(&b).unwrap(), GridSet::from_cells(g, [(0, 0)]));
        assert!(a.intersection(&b).unwrap().is_subset(&a).unwrap());
        assert!(!a.is_subset(&b).unwrap());
        let other = GridSet::empty(GridGeometry::unit_square(6));
        assert!(matches!(a.union(&other), Err(Error::Geometry(_))));
    }

    proptest! {
        #[test]
        fn word_shift_matches_cellwise_shift(
            nx in 1usize..200,
            ny in 1usize..6,
            torus in any::<bool>(),
            dx in -260isize..260,
            dy in -8isize..8,
            seed in any::<u64>(),
        ) {
            let wrap = if torus { Wrap::Torus } else { Wrap::None };
            let g = GridGeometry { nx, ny, h: 1.0, wrap, origin: [0.0, 0.0] };
            let mut state = seed | 1;
            let set = GridSet::from_fn(g, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state & 3 == 0
            });
            prop_assert_eq!(set.shifted(dx, dy), naive_shift(&set, dx, dy));
        }
    }
}
