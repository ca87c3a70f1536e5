//! Static renderings of a height array: an isometric SVG of the heap of
//! cubes and a binary grayscale height map.

use std::fmt::Write;

/// Largest SVG side, in pixels.
pub const MAX_SIDE: u64 = 16_384;
/// Largest height-map side.
pub const MAX_PPM_SIDE: u64 = 65_535;

const MARGIN: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TooLarge {
    pub width: u64,
    pub height: u64,
}

impl std::fmt::Display for TooLarge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "image would be {}x{} px, over the raster limit; use --format ppm for a height map",
            self.width, self.height
        )
    }
}

/// Heights indexed `h[i][j]`, built from rows bottom to top (`rows[j][i]`).
fn heights(rows: &[Vec<u64>]) -> (usize, usize, impl Fn(usize, usize) -> u64 + '_) {
    let wid = rows.len();
    let len = rows.iter().map(Vec::len).max().unwrap_or(0);
    let h = move |i: usize, j: usize| rows.get(j).and_then(|r| r.get(i)).copied().unwrap_or(0);
    (len, wid, h)
}

// Screen offsets of one step along i, j and k for scale s: (dx, dy) per
// horizontal unit and dz per unit of height.
fn geometry(s: i64) -> (i64, i64, i64) {
    (7 * s, 4 * s, 8 * s)
}

/// Isometric view from above the far corner. Only exposed faces are drawn,
/// in order of decreasing `i + j`, then increasing height.
pub fn render_svg(rows: &[Vec<u64>]) -> Result<String, TooLarge> {
    let (len, wid, h) = heights(rows);
    // bounding box of the occupied cells at scale 1
    let occupied: Vec<(i64, i64, i64)> = (0..len)
        .flat_map(|i| (0..wid).map(move |j| (i, j)))
        .filter(|&(i, j)| h(i, j) > 0)
        .map(|(i, j)| (i as i64, j as i64, h(i, j) as i64))
        .collect();
    let (dx1, dy1, dz1) = geometry(1);
    let bound = |f: &dyn Fn(&(i64, i64, i64)) -> i64, max: bool| {
        let it = occupied.iter().map(f);
        if max { it.max() } else { it.min() }.unwrap_or(0)
    };
    let (xmin, xmax) = (
        bound(&|c| (c.0 - c.1 - 1) * dx1, false),
        bound(&|c| (c.0 - c.1 + 1) * dx1, true),
    );
    let (ymin, ymax) = (
        bound(&|c| (c.0 + c.1) * dy1 - c.2 * dz1, false),
        bound(&|c| (c.0 + c.1 + 2) * dy1, true),
    );
    let extent = |s: i64| {
        (
            ((xmax - xmin) * s + 2 * MARGIN) as u64,
            ((ymax - ymin) * s + 2 * MARGIN) as u64,
        )
    };
    let scale = (1..=4)
        .rev()
        .find(|&s| {
            let (w, ht) = extent(s);
            w <= MAX_SIDE && ht <= MAX_SIDE
        })
        .ok_or_else(|| {
            let (width, height) = extent(1);
            TooLarge { width, height }
        })?;
    let (dx, dy, dz) = geometry(scale);
    let (width, height) = extent(scale);
    let x0 = MARGIN - xmin * scale;
    let y0 = MARGIN - ymin * scale;
    let pt = |i: usize, j: usize, k: u64| {
        let (i, j, k) = (i as i64, j as i64, k as i64);
        (x0 + (i - j) * dx, y0 + (i + j) * dy - k * dz)
    };

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <style>path{{stroke:#000;stroke-width:1;stroke-linejoin:round}}.t{{fill:#f0f0f0}}.l{{fill:#a8a8a8}}.r{{fill:#686868}}</style>\n"
    );
    let mut face = |class: &str, corners: [(i64, i64); 4]| {
        let [a, b, c, d] = corners;
        let _ = writeln!(
            svg,
            "<path class=\"{class}\" d=\"M{} {}L{} {}L{} {}L{} {}Z\"/>",
            a.0, a.1, b.0, b.1, c.0, c.1, d.0, d.1
        );
    };
    let mut cubes: Vec<(usize, usize, u64)> = (0..len)
        .flat_map(|i| (0..wid).map(move |j| (i, j)))
        .flat_map(|(i, j)| (0..h(i, j)).map(move |k| (i, j, k)))
        .collect();
    cubes.sort_by_key(|&(i, j, k)| (std::cmp::Reverse(i + j), k, i));
    for (i, j, k) in cubes {
        if h(i + 1, j) <= k {
            face(
                "l",
                [
                    pt(i + 1, j, k),
                    pt(i + 1, j + 1, k),
                    pt(i + 1, j + 1, k + 1),
                    pt(i + 1, j, k + 1),
                ],
            );
        }
        if h(i, j + 1) <= k {
            face(
                "r",
                [
                    pt(i, j + 1, k),
                    pt(i + 1, j + 1, k),
                    pt(i + 1, j + 1, k + 1),
                    pt(i, j + 1, k + 1),
                ],
            );
        }
        if k + 1 == h(i, j) {
            face(
                "t",
                [
                    pt(i, j, k + 1),
                    pt(i + 1, j, k + 1),
                    pt(i + 1, j + 1, k + 1),
                    pt(i, j + 1, k + 1),
                ],
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Binary (P5) grayscale map: one pixel per cell, column `i`, top row the
/// highest `j`; intensity proportional to height.
pub fn render_ppm(rows: &[Vec<u64>]) -> Result<Vec<u8>, TooLarge> {
    let (len, wid, h) = heights(rows);
    let (w, ht) = (len.max(1), wid.max(1));
    if w as u64 > MAX_PPM_SIDE || ht as u64 > MAX_PPM_SIDE {
        return Err(TooLarge {
            width: w as u64,
            height: ht as u64,
        });
    }
    let top = rows.iter().flatten().copied().max().unwrap_or(0);
    let mut out = format!("P5\n{w} {ht}\n255\n").into_bytes();
    for r in 0..ht {
        let j = ht - 1 - r;
        for i in 0..w {
            let v = (u128::from(h(i, j)) * 255 + u128::from(top / 2)).checked_div(u128::from(top));
            out.push(v.unwrap_or(0) as u8);
        }
    }
    Ok(out)
}
