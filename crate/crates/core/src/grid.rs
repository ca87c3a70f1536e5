//! Dense two-dimensional arrays for multiset diagrams and plane partitions.
//!
//! Both types index cells by `(i, j)` where `i` is the abscissa and `j` the
//! ordinate, with `(0, 0)` at the bottom-left. Reads outside the stored
//! rectangle return 0, and every constructor trims the storage to the tight
//! bounding rectangle, so structural equality is equality of the objects.

use crate::error::{Error, Result};

/// Largest total size accepted anywhere in the crate.
pub const MAX_SIZE: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct Grid {
    length: usize,
    width: usize,
    data: Vec<u64>,
}

impl Grid {
    /// Builds a grid from row-major `data[i * width + j]` and trims it.
    pub(crate) fn from_dense(length: usize, width: usize, data: Vec<u64>) -> Result<Grid> {
        if data.len() != length * width {
            return Err(Error::InvalidArgument(format!(
                "dense buffer holds {} entries, expected {length}x{width}",
                data.len()
            )));
        }
        Ok(Grid {
            length,
            width,
            data,
        }
        .trimmed())
    }

    fn trimmed(self) -> Grid {
        let mut tl = 0;
        let mut tw = 0;
        for i in 0..self.length {
            for j in 0..self.width {
                if self.data[i * self.width + j] != 0 {
                    tl = tl.max(i + 1);
                    tw = tw.max(j + 1);
                }
            }
        }
        if tl == self.length && tw == self.width {
            return self;
        }
        let mut data = Vec::with_capacity(tl * tw);
        for i in 0..tl {
            data.extend_from_slice(&self.data[i * self.width..i * self.width + tw]);
        }
        Grid {
            length: tl,
            width: tw,
            data,
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> u64 {
        if i < self.length && j < self.width {
            self.data[i * self.width + j]
        } else {
            0
        }
    }

    pub(crate) fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let w = self.width;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| (k / w, k % w, v))
    }

    pub(crate) fn data(&self) -> &[u64] {
        &self.data
    }

    pub(crate) fn dims(&self) -> (usize, usize) {
        (self.length, self.width)
    }

    fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.width)
            .map(|j| (0..self.length).map(|i| self.get(i, j)).collect())
            .collect()
    }
}

fn checked_total(cells: impl Iterator<Item = (u64, u64)>) -> Result<u64> {
    let mut total: u64 = 0;
    for (m, weight) in cells {
        total = m
            .checked_mul(weight)
            .and_then(|t| total.checked_add(t))
            .filter(|&t| t <= MAX_SIZE)
            .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
    }
    Ok(total)
}

/// The diagram of a multiset of `Z x N^2`: entry `(i, j)` is the multiplicity
/// of the pair `(i, j)`, which weighs `i + j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    grid: Grid,
    size: u64,
}

impl Diagram {
    pub fn empty() -> Diagram {
        Diagram::default()
    }

    /// Builds a diagram from `(i, j, multiplicity)` triples. Repeated cells add up.
    pub fn from_cells<I>(cells: I) -> Result<Diagram>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let cells: Vec<_> = cells.into_iter().filter(|c| c.2 != 0).collect();
        let length = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let width = cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
        let mut data = vec![0u64; length * width];
        for (i, j, m) in cells {
            let slot = &mut data[i * width + j];
            *slot = slot
                .checked_add(m)
                .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
        }
        Diagram::from_dense(length, width, data)
    }

    /// Builds a diagram from a row-major buffer `data[i * width + j]`.
    /// Zero margins are trimmed away.
    pub fn from_dense(length: usize, width: usize, data: Vec<u64>) -> Result<Diagram> {
        let grid = Grid::from_dense(length, width, data)?;
        let size = checked_total(grid.nonzero().map(|(i, j, m)| (m, (i + j + 1) as u64)))?;
        Ok(Diagram { grid, size })
    }

    /// Multiplicity at `(i, j)`; 0 outside the bounding rectangle.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.grid.get(i, j)
    }

    /// Number of occupied abscissae (the bounding rectangle is tight).
    pub fn length(&self) -> usize {
        self.grid.length
    }

    /// Number of occupied ordinates.
    pub fn width(&self) -> usize {
        self.grid.width
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `sum m[i,j] * (i + j + 1)`, the size of the underlying multiset.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Largest `i + j + 1` over non-zero cells, 0 for the empty diagram.
    pub fn max_hook_length(&self) -> u64 {
        self.nonzero()
            .map(|(i, j, _)| (i + j + 1) as u64)
            .max()
            .unwrap_or(0)
    }

    /// Non-zero cells as `(i, j, multiplicity)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.grid.nonzero()
    }

    pub(crate) fn grid(&self) -> &Grid {
        &self.grid
    }
}

/// A finite array of non-negative integers, non-increasing along both axes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PlanePartition {
    grid: Grid,
    size: u64,
}

impl PlanePartition {
    pub fn empty() -> PlanePartition {
        PlanePartition::default()
    }

    /// Builds a partition from rows listed bottom to top: `rows[j][i]` is the
    /// height at `(i, j)`. Ragged rows are padded with zeros.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<PlanePartition> {
        let width = rows.len();
        let length = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut data = vec![0u64; length * width];
        for (j, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                data[i * width + j] = v;
            }
        }
        PlanePartition::from_dense(length, width, data)
    }

    /// Builds a partition from a row-major buffer `data[i * width + j]`,
    /// rejecting arrays that are not monotone.
    pub fn from_dense(length: usize, width: usize, data: Vec<u64>) -> Result<PlanePartition> {
        let grid = Grid::from_dense(length, width, data)?;
        if let Some((i, j)) = first_monotonicity_violation(&grid) {
            return Err(Error::NotAPlanePartition(format!(
                "entry at ({i}, {j}) is smaller than a neighbour above or to the right"
            )));
        }
        let size = checked_total(grid.nonzero().map(|(_, _, v)| (v, 1)))?;
        Ok(PlanePartition { grid, size })
    }

    /// For arrays already known to be monotone (outputs of Pak's transform).
    pub(crate) fn from_dense_trusted(
        length: usize,
        width: usize,
        data: Vec<u64>,
    ) -> PlanePartition {
        let grid = Grid::from_dense(length, width, data).expect("buffer matches dimensions");
        debug_assert!(first_monotonicity_violation(&grid).is_none());
        let size = grid.data().iter().sum();
        PlanePartition { grid, size }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.grid.get(i, j)
    }

    pub fn length(&self) -> usize {
        self.grid.length
    }

    pub fn width(&self) -> usize {
        self.grid.width
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Number of cubes.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Largest entry (the height at the origin).
    pub fn height(&self) -> u64 {
        self.get(0, 0)
    }

    /// Rows bottom to top; row `j` lists `a[0,j], a[1,j], ...` over the full length.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.grid.rows()
    }

    pub(crate) fn grid(&self) -> &Grid {
        &self.grid
    }
}

fn first_monotonicity_violation(grid: &Grid) -> Option<(usize, usize)> {
    for i in 0..grid.length {
        for j in 0..grid.width {
            let v = grid.get(i, j);
            if grid.get(i + 1, j) > v || grid.get(i, j + 1) > v {
                return Some((i, j));
            }
        }
    }
    None
}

/// True iff the rectangular array (`matrix[j][i]`, ragged rows padded with 0)
/// is non-increasing along both axes.
pub fn validate_plane_partition(matrix: &[Vec<u64>]) -> bool {
    let at = |i: usize, j: usize| matrix.get(j).and_then(|r| r.get(i)).copied().unwrap_or(0);
    for (j, row) in matrix.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            if at(i + 1, j) > v || at(i, j + 1) > v {
                return false;
            }
        }
    }
    // Cells past the end of a short row read as 0, so a longer row above it
    // must be caught too.
    for j in 1..matrix.len() {
        if matrix[j].iter().skip(matrix[j - 1].len()).any(|&v| v > 0) {
            return false;
        }
    }
    true
}
