//! Brute-force enumerators. Partitions are listed by monotone-matrix
//! backtracking and diagrams by a bounded knapsack over hook-weighted cells,
//! so the two sides of the bijection are produced independently.

use crate::domain::{IndexDomain, SkewFilling};
use crate::error::{Error, Result};
use crate::grid::{Diagram, PlanePartition};

/// Largest size the enumerators accept.
pub const ENUMERATION_CAP: u64 = 14;

fn check_cap(n: u64) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// All plane partitions of size `n`.
pub fn enumerate_partitions(n: u64) -> Result<Vec<PlanePartition>> {
    check_cap(n)?;
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    stack_rows(n, &mut rows, &mut out);
    Ok(out)
}

// Appends rows (each a partition contained in the one below) until `left` is used up.
fn stack_rows(left: u64, rows: &mut Vec<Vec<u64>>, out: &mut Vec<PlanePartition>) {
    if left == 0 {
        out.push(PlanePartition::from_rows(rows).expect("rows are monotone"));
        return;
    }
    let below = rows.last().cloned();
    let mut row = Vec::new();
    fill_row(left, left, below.as_deref(), &mut row, &mut |row, rest| {
        rows.push(row.to_vec());
        stack_rows(rest, rows, out);
        rows.pop();
    });
}

// Every non-empty weakly decreasing row with sum <= `left`, entries bounded by `cap` and `below`.
fn fill_row(
    left: u64,
    cap: u64,
    below: Option<&[u64]>,
    row: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64], u64),
) {
    let i = row.len();
    let bound = match below {
        Some(b) => b.get(i).copied().unwrap_or(0),
        None => u64::MAX,
    };
    let hi = cap.min(bound).min(left);
    for v in 1..=hi {
        row.push(v);
        emit(row, left - v);
        fill_row(left - v, v, below, row, emit);
        row.pop();
    }
}

/// Plane partitions of size `n` fitting in an `a x b` base.
pub fn enumerate_partitions_boxed(a: usize, b: usize, n: u64) -> Result<Vec<PlanePartition>> {
    Ok(enumerate_partitions(n)?
        .into_iter()
        .filter(|p| p.length() <= a && p.width() <= b)
        .collect())
}

// Multiplicity vectors over `weights` with weighted sum exactly `n`.
fn knapsack(weights: &[u64], n: u64) -> Vec<Vec<u64>> {
    fn go(weights: &[u64], k: usize, left: u64, mult: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == weights.len() {
            if left == 0 {
                out.push(mult.clone());
            }
            return;
        }
        for m in 0..=left / weights[k] {
            mult[k] = m;
            go(weights, k + 1, left - m * weights[k], mult, out);
        }
        mult[k] = 0;
    }
    let mut out = Vec::new();
    go(weights, 0, n, &mut vec![0; weights.len()], &mut out);
    out
}

fn cell_diagrams(cells: Vec<(usize, usize, u64)>, n: u64) -> Vec<Vec<(usize, usize, u64)>> {
    // heaviest first so the weight-1 cell closes every branch
    let mut cells = cells;
    cells.sort_by(|x, y| y.2.cmp(&x.2).then((x.0, x.1).cmp(&(y.0, y.1))));
    let weights: Vec<u64> = cells.iter().map(|c| c.2).collect();
    knapsack(&weights, n)
        .into_iter()
        .map(|mult| {
            cells
                .iter()
                .zip(mult)
                .filter(|(_, m)| *m > 0)
                .map(|(&(i, j, _), m)| (i, j, m))
                .collect()
        })
        .collect()
}

/// All diagrams of size `n`.
pub fn enumerate_diagrams(n: u64) -> Result<Vec<Diagram>> {
    check_cap(n)?;
    let n_us = n as usize;
    let cells = (0..n_us)
        .flat_map(|i| (0..n_us - i).map(move |j| (i, j, (i + j + 1) as u64)))
        .collect();
    cell_diagrams(cells, n)
        .into_iter()
        .map(Diagram::from_cells)
        .collect()
}

/// Diagrams of size `n` supported in `[0, a) x [0, b)`.
pub fn enumerate_diagrams_boxed(a: usize, b: usize, n: u64) -> Result<Vec<Diagram>> {
    check_cap(n)?;
    let cells = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, j, (i + j + 1) as u64)))
        .filter(|c| c.2 <= n.max(1))
        .collect();
    cell_diagrams(cells, n)
        .into_iter()
        .map(Diagram::from_cells)
        .collect()
}

/// Skew diagrams on `dom` of (hook-weighted) size `n`.
pub fn enumerate_skew_diagrams(dom: &IndexDomain, n: u64) -> Result<Vec<SkewFilling>> {
    check_cap(n)?;
    let cells = dom
        .cells()
        .map(|(i, j)| (i, j, dom.hook_unchecked(i, j)))
        .filter(|c| c.2 <= n.max(1))
        .collect();
    cell_diagrams(cells, n)
        .into_iter()
        .map(|c| SkewFilling::from_cells(dom.clone(), c))
        .collect()
}

/// Skew plane partitions on `dom` with `n` cubes.
pub fn enumerate_skew(dom: &IndexDomain, n: u64) -> Result<Vec<SkewFilling>> {
    check_cap(n)?;
    // far cells first, so both upper neighbours are set before a cell is chosen
    let mut cells: Vec<(usize, usize)> = dom.cells().collect();
    cells.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
    let mut out = Vec::new();
    let mut f = SkewFilling::zeros(dom.clone());
    fn go(
        cells: &[(usize, usize)],
        k: usize,
        left: u64,
        f: &mut SkewFilling,
        out: &mut Vec<SkewFilling>,
    ) {
        if k == cells.len() {
            if left == 0 {
                out.push(f.clone());
            }
            return;
        }
        let (i, j) = cells[k];
        let lo = f.get(i + 1, j).max(f.get(i, j + 1));
        for v in lo..=left {
            f.set(i, j, v).expect("cell in domain");
            go(cells, k + 1, left - v, f, out);
        }
        f.set(i, j, 0).expect("cell in domain");
    }
    go(&cells, 0, n, &mut f, &mut out);
    Ok(out)
}
