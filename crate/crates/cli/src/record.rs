//! The JSON output record and the plain-text formats.

use planepart_core::{validate_plane_partition, IndexDomain, SkewFilling};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "planepart/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    /// "exact" or "approximate".
    pub mode: String,
    /// "unconstrained", "boxed" or "skew".
    pub class: String,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub domain: Option<String>,
    /// Absent when the sample was drawn by enumeration.
    pub x_used: Option<f64>,
    pub seed: u64,
    pub stream: u64,
    pub rejections: u64,
    pub size: u64,
    /// Heights, rows bottom to top: `rows[j][i]`.
    pub rows: Vec<Vec<u64>>,
}

impl OutputRecord {
    /// Checks monotonicity of the payload and that `size` is its sum.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema != SCHEMA {
            return Err(format!("unknown schema {:?}", self.schema));
        }
        let sum: u64 = self.rows.iter().flatten().sum();
        if sum != self.size {
            return Err(format!("size {} but payload sums to {sum}", self.size));
        }
        let monotone = match &self.domain {
            Some(spec) => {
                let dom = IndexDomain::parse(spec).map_err(|e| e.to_string())?;
                let cells = self
                    .rows
                    .iter()
                    .enumerate()
                    .flat_map(|(j, row)| row.iter().enumerate().map(move |(i, &v)| (i, j, v)));
                let cells: Vec<_> = cells.filter(|c| c.2 > 0).collect();
                SkewFilling::from_cells(dom, cells)
                    .map_err(|e| e.to_string())?
                    .is_skew_plane_partition()
            }
            None => validate_plane_partition(&self.rows),
        };
        if !monotone {
            return Err("payload is not monotone".into());
        }
        if let (Some(a), Some(b)) = (self.a, self.b) {
            if self.rows.len() > b || self.rows.iter().any(|r| r.len() > a) {
                return Err(format!("payload exceeds the {a}x{b} box"));
            }
        }
        Ok(())
    }

    /// Rows bottom to top, space-separated, one per line.
    pub fn to_matrix(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// One `i j k` line per unit cube.
    pub fn to_cubes(&self) -> String {
        let mut cells: Vec<(usize, usize, u64)> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(i, &h)| (i, j, h)))
            .collect();
        cells.sort_unstable();
        let mut s = String::new();
        for (i, j, h) in cells {
            for k in 0..h {
                s.push_str(&format!("{i} {j} {k}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(rows: Vec<Vec<u64>>) -> OutputRecord {
        OutputRecord {
            schema: SCHEMA.into(),
            mode: "exact".into(),
            class: "unconstrained".into(),
            n: rows.iter().flatten().sum(),
            epsilon: None,
            a: None,
            b: None,
            domain: None,
            x_used: Some(0.5),
            seed: 1,
            stream: 0,
            rejections: 0,
            size: rows.iter().flatten().sum(),
            rows,
        }
    }

    #[test]
    fn text_formats() {
        let r = record(vec![vec![2, 1], vec![1]]);
        assert_eq!(r.to_matrix(), "2 1\n1\n");
        assert_eq!(r.to_cubes(), "0 0 0\n0 0 1\n0 1 0\n1 0 0\n");
        assert!(r.validate().is_ok());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let r = record(vec![vec![3, 1], vec![2]]);
        let text = serde_json::to_string(&r).unwrap();
        let back: OutputRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let mut bad = r.clone();
        bad.size += 1;
        assert!(bad.validate().is_err());
        let mut bad = r;
        bad.rows = vec![vec![1, 2]];
        bad.size = 3;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn skew_payload_validates_on_its_domain() {
        let mut r = record(vec![vec![0, 2], vec![1, 1]]);
        r.domain = Some("2x2-1x1".into());
        r.class = "skew".into();
        assert!(r.validate().is_ok());
        r.domain = None;
        assert!(r.validate().is_err());
    }
}
