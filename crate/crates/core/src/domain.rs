//! Staircase index domains and fillings on them.
//!
//! A domain is an `a x b` rectangle with a union of bottom-left corner
//! rectangles removed. It is stored as `row_start[j]`, the smallest abscissa
//! present in row `j`, which is non-increasing in `j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::MAX_SIZE;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexDomain {
    a: usize,
    b: usize,
    row_start: Vec<usize>,
    col_start: Vec<usize>,
    removed: Vec<(usize, usize)>,
}

impl IndexDomain {
    /// The full `a x b` rectangle.
    pub fn rectangle(a: usize, b: usize) -> Result<IndexDomain> {
        IndexDomain::new(a, b, &[])
    }

    /// The `a x b` rectangle minus the corner rectangles `[0..a'-1] x [0..b'-1]`.
    pub fn new(a: usize, b: usize, removed: &[(usize, usize)]) -> Result<IndexDomain> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidDomain(format!(
                "bounding rectangle {a}x{b} is empty"
            )));
        }
        let mut row_start = vec![0usize; b];
        for &(ra, rb) in removed {
            if ra == 0 || rb == 0 {
                return Err(Error::InvalidDomain(format!(
                    "removed rectangle {ra}x{rb} is empty"
                )));
            }
            if ra > a || rb > b {
                return Err(Error::InvalidDomain(format!(
                    "removed rectangle {ra}x{rb} does not fit inside {a}x{b}"
                )));
            }
            for s in &mut row_start[..rb] {
                *s = (*s).max(ra);
            }
        }
        if row_start[b - 1] >= a {
            return Err(Error::InvalidDomain(format!(
                "removed rectangles leave no cell of {a}x{b}"
            )));
        }
        Ok(IndexDomain::from_row_start(a, row_start))
    }

    fn from_row_start(a: usize, row_start: Vec<usize>) -> IndexDomain {
        let b = row_start.len();
        let col_start = (0..a)
            .map(|i| row_start.iter().position(|&s| s <= i).unwrap_or(b))
            .collect();
        // Canonical removed list: the outer corners of the staircase.
        let mut removed = Vec::new();
        for j in 0..b {
            let next = if j + 1 < b { row_start[j + 1] } else { 0 };
            if row_start[j] > next {
                removed.push((row_start[j], j + 1));
            }
        }
        IndexDomain {
            a,
            b,
            row_start,
            col_start,
            removed,
        }
    }

    /// Length of the bounding rectangle.
    pub fn a(&self) -> usize {
        self.a
    }

    /// Width of the bounding rectangle.
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn row_start(&self) -> &[usize] {
        &self.row_start
    }

    pub fn col_start(&self) -> &[usize] {
        &self.col_start
    }

    /// Removed corner rectangles in canonical form, sorted by increasing width.
    pub fn removed(&self) -> &[(usize, usize)] {
        &self.removed
    }

    pub fn is_rectangle(&self) -> bool {
        self.removed.is_empty()
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        j < self.b && i < self.a && i >= self.row_start[j]
    }

    /// Number of cells.
    pub fn cell_count(&self) -> usize {
        self.row_start.iter().map(|&s| self.a - s).sum()
    }

    /// Cells in row-major `(i, j)` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.a).flat_map(move |i| (self.col_start[i]..self.b).map(move |j| (i, j)))
    }

    /// `(i - row_start[j]) + (j - col_start[i]) + 1`.
    pub fn hook_length(&self, i: usize, j: usize) -> Result<u64> {
        if !self.contains(i, j) {
            return Err(Error::CellOutsideDomain { i, j });
        }
        Ok(self.hook_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn hook_unchecked(&self, i: usize, j: usize) -> u64 {
        ((i - self.row_start[j]) + (j - self.col_start[i]) + 1) as u64
    }

    /// Hook lengths of all cells, in the order of [`IndexDomain::cells`].
    pub fn hooks(&self) -> impl Iterator<Item = u64> + '_ {
        self.cells().map(|(i, j)| self.hook_unchecked(i, j))
    }

    /// Parses `AxB` followed by zero or more `-A'xB'` removed corners.
    pub fn parse(spec: &str) -> Result<IndexDomain> {
        let mut parts = spec.trim().split('-');
        let dims = |s: &str| -> Result<(usize, usize)> {
            let (x, y) = s
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::InvalidDomain(format!("expected AxB, got {s:?}")))?;
            let p = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidDomain(format!("bad dimension {t:?} in {s:?}")))
            };
            Ok((p(x)?, p(y)?))
        };
        let (a, b) = dims(parts.next().unwrap_or(""))?;
        let removed = parts.map(dims).collect::<Result<Vec<_>>>()?;
        IndexDomain::new(a, b, &removed)
    }
}

impl fmt::Display for IndexDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.a, self.b)?;
        for (ra, rb) in &self.removed {
            write!(f, "-{ra}x{rb}")?;
        }
        Ok(())
    }
}

/// Non-negative values on the cells of an [`IndexDomain`]: either a skew
/// diagram (hook-weighted multiplicities) or a skew plane partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewFilling {
    domain: IndexDomain,
    // row-major over the bounding rectangle, zero off the domain
    values: Vec<u64>,
}

impl SkewFilling {
    pub fn zeros(domain: IndexDomain) -> SkewFilling {
        let values = vec![0; domain.a * domain.b];
        SkewFilling { domain, values }
    }

    /// Builds a filling from `(i, j, value)` triples, all of which must lie in the domain.
    pub fn from_cells<I>(domain: IndexDomain, cells: I) -> Result<SkewFilling>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut f = SkewFilling::zeros(domain);
        for (i, j, v) in cells {
            f.set(i, j, v)?;
        }
        Ok(f)
    }

    pub(crate) fn from_raw(domain: IndexDomain, values: Vec<u64>) -> SkewFilling {
        debug_assert_eq!(values.len(), domain.a * domain.b);
        SkewFilling { domain, values }
    }

    pub fn domain(&self) -> &IndexDomain {
        &self.domain
    }

    /// Value at `(i, j)`; 0 off the domain.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        if self.domain.contains(i, j) {
            self.values[i * self.domain.b + j]
        } else {
            0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) -> Result<()> {
        if !self.domain.contains(i, j) {
            return Err(Error::CellOutsideDomain { i, j });
        }
        self.values[i * self.domain.b + j] = v;
        Ok(())
    }

    /// Row-major values over the bounding rectangle.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Plain sum of the values (the size of a skew plane partition).
    pub fn total(&self) -> Result<u64> {
        let mut s: u64 = 0;
        for &v in &self.values {
            s = s
                .checked_add(v)
                .filter(|&t| t <= MAX_SIZE)
                .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
        }
        Ok(s)
    }

    /// Hook-weighted sum (the size of a skew diagram).
    pub fn weighted_size(&self) -> Result<u64> {
        let mut s: u64 = 0;
        for (i, j) in self.domain.cells() {
            let v = self.values[i * self.domain.b + j];
            s = v
                .checked_mul(self.domain.hook_unchecked(i, j))
                .and_then(|t| s.checked_add(t))
                .filter(|&t| t <= MAX_SIZE)
                .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
        }
        Ok(s)
    }

    /// Largest hook length over non-zero cells.
    pub fn max_hook_length(&self) -> u64 {
        self.domain
            .cells()
            .filter(|&(i, j)| self.get(i, j) != 0)
            .map(|(i, j)| self.domain.hook_unchecked(i, j))
            .max()
            .unwrap_or(0)
    }

    /// True iff values are non-increasing along rows and columns inside the domain.
    pub fn is_skew_plane_partition(&self) -> bool {
        self.domain.cells().all(|(i, j)| {
            let v = self.get(i, j);
            self.get(i + 1, j) <= v && self.get(i, j + 1) <= v
        })
    }

    /// Rows bottom to top over the bounding rectangle (zeros off the domain).
    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.domain.b)
            .map(|j| (0..self.domain.a).map(|i| self.get(i, j)).collect())
            .collect()
    }
}
