//! Pak's size-preserving bijection between multiset diagrams and plane
//! partitions, its inverse, and the skew-domain variant.
//!
//! Cells are processed in reverse lexicographic order. Processing `(i, j)`
//! first adds `max(D[i+1,j], D[i,j+1])` to the cell, then walks the up-right
//! diagonal `(i+c, j+c)` inside the bounding rectangle, replacing each entry
//! by `max(right, up) + min(left, down) - entry`. Reads outside the rectangle
//! are 0. The diagonal updates never read one another or the starting cell,
//! so undoing a step is the same toggle followed by a subtraction.
//!
//! Work happens on a scratch copy padded by one zero row and column on the
//! high sides, which makes every neighbour read in-bounds.

use crate::domain::{IndexDomain, SkewFilling};
use crate::error::{Error, Result};
use crate::grid::{Diagram, PlanePartition};
use crate::oracle::psi_cost;

/// Work accounting for one run of the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TransformStats {
    /// Cells written: one per scanned cell plus one per diagonal step.
    pub diagonal_updates: u64,
    pub length: usize,
    pub width: usize,
    pub max_hook_length: u64,
}

struct Scratch {
    buf: Vec<u64>,
    len: usize,
    wid: usize,
    stride: usize,
}

impl Scratch {
    /// `cell(i, j)` gives the value of each in-rectangle cell.
    fn new(len: usize, wid: usize, cell: impl Fn(usize, usize) -> u64) -> Scratch {
        let stride = wid + 1;
        let mut buf = vec![0u64; (len + 1) * stride];
        for i in 0..len {
            for j in 0..wid {
                buf[i * stride + j] = cell(i, j);
            }
        }
        Scratch {
            buf,
            len,
            wid,
            stride,
        }
    }

    fn into_dense(self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len * self.wid);
        for i in 0..self.len {
            out.extend_from_slice(&self.buf[i * self.stride..i * self.stride + self.wid]);
        }
        out
    }

    #[inline]
    fn steps(&self, i: usize, j: usize) -> usize {
        (self.len - 1 - i).min(self.wid - 1 - j)
    }

    /// Runs the forward scan over cells `(i, j)` with `j >= col_start[i]`.
    fn forward(&mut self, col_start: Option<&[usize]>) -> u64 {
        self.forward_with(col_start, Scratch::steps)
    }

    #[inline(always)]
    fn forward_with(
        &mut self,
        col_start: Option<&[usize]>,
        walk: impl Fn(&Scratch, usize, usize) -> usize,
    ) -> u64 {
        let s = self.stride;
        let mut updates = 0u64;
        for i in (0..self.len).rev() {
            let j0 = col_start.map_or(0, |c| c[i]);
            for j in (j0..self.wid).rev() {
                let steps = walk(self, i, j);
                let buf = &mut self.buf;
                let p = i * s + j;
                buf[p] += buf[p + s].max(buf[p + 1]);
                let mut q = p;
                for _ in 0..steps {
                    q += s + 1;
                    buf[q] = buf[q + s].max(buf[q + 1]) + buf[q - s].min(buf[q - 1]) - buf[q];
                }
                updates += steps as u64 + 1;
            }
        }
        updates
    }

    /// Exact reverse of [`Scratch::forward`]; fails on arrays outside the image.
    fn inverse(&mut self, col_start: Option<&[usize]>) -> Result<()> {
        let s = self.stride;
        for i in 0..self.len {
            let j0 = col_start.map_or(0, |c| c[i]);
            for j in j0..self.wid {
                let steps = self.steps(i, j);
                let buf = &mut self.buf;
                let p = i * s + j;
                for c in (1..=steps).rev() {
                    let q = p + c * (s + 1);
                    let hi = buf[q + s].max(buf[q + 1]);
                    let lo = buf[q - s].min(buf[q - 1]);
                    buf[q] = (hi + lo).checked_sub(buf[q]).ok_or_else(|| {
                        Error::NotAPlanePartition(format!(
                            "inverse toggle underflows at ({}, {})",
                            i + c,
                            j + c
                        ))
                    })?;
                }
                let above = buf[p + s].max(buf[p + 1]);
                buf[p] = buf[p].checked_sub(above).ok_or_else(|| {
                    Error::NotAPlanePartition(format!(
                        "entry at ({i}, {j}) is below its neighbours"
                    ))
                })?;
            }
        }
        Ok(())
    }
}

/// Maps a diagram to the plane partition of the same size.
pub fn pak_forward(d: &Diagram) -> (PlanePartition, TransformStats) {
    let (len, wid) = d.grid().dims();
    if len == 0 {
        return (PlanePartition::empty(), TransformStats::default());
    }
    let mut scratch = Scratch::new(len, wid, |i, j| d.get(i, j));
    let updates = scratch.forward(None);
    let stats = TransformStats {
        diagonal_updates: updates,
        length: len,
        width: wid,
        max_hook_length: d.max_hook_length(),
    };
    let p = PlanePartition::from_dense_trusted(len, wid, scratch.into_dense());
    debug_assert_eq!(p.size(), d.size());
    (p, stats)
}

/// Maps a plane partition back to its diagram.
pub fn pak_inverse(p: &PlanePartition) -> Result<Diagram> {
    let (len, wid) = p.grid().dims();
    if len == 0 {
        return Ok(Diagram::empty());
    }
    let mut scratch = Scratch::new(len, wid, |i, j| p.get(i, j));
    scratch.inverse(None)?;
    Diagram::from_dense(len, wid, scratch.into_dense())
}

/// The forward transform restricted to a staircase domain: a skew diagram
/// (hook-weighted multiplicities) becomes a skew plane partition.
pub fn pak_forward_skew(f: &SkewFilling) -> (SkewFilling, TransformStats) {
    let dom = f.domain();
    let (len, wid) = (dom.a(), dom.b());
    let mut scratch = Scratch::new(len, wid, |i, j| f.get(i, j));
    let updates = scratch.forward(Some(dom.col_start()));
    let stats = TransformStats {
        diagonal_updates: updates,
        length: len,
        width: wid,
        max_hook_length: f.max_hook_length(),
    };
    (
        SkewFilling::from_raw(dom.clone(), scratch.into_dense()),
        stats,
    )
}

/// Inverse of [`pak_forward_skew`].
pub fn pak_inverse_skew(p: &SkewFilling) -> Result<SkewFilling> {
    if !p.is_skew_plane_partition() {
        return Err(Error::NotAPlanePartition(
            "filling is not monotone on its domain".into(),
        ));
    }
    let dom = p.domain();
    let mut scratch = Scratch::new(dom.a(), dom.b(), |i, j| p.get(i, j));
    scratch.inverse(Some(dom.col_start()))?;
    Ok(SkewFilling::from_raw(dom.clone(), scratch.into_dense()))
}

/// Cell updates [`pak_forward`] performs on `d`: `psi(length, width)`,
/// since every cell of the bounding rectangle is scanned.
pub fn transform_cost(d: &Diagram) -> u64 {
    psi_cost(d.length() as u64, d.width() as u64)
}

/// Cell updates [`pak_forward_skew`] performs on any filling of `dom`.
pub fn transform_cost_skew(dom: &IndexDomain) -> u64 {
    dom.cells()
        .map(|(i, j)| 1 + (dom.a() - 1 - i).min(dom.b() - 1 - j) as u64)
        .sum()
}
