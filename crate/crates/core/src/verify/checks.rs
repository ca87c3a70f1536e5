//! Exhaustive checks of the transform against the enumerators and the
//! coefficient tables. Each report's statistic counts discrepancies.

use std::collections::HashSet;

use super::enumerate::{
    enumerate_diagrams, enumerate_diagrams_boxed, enumerate_partitions, enumerate_partitions_boxed,
    enumerate_skew, enumerate_skew_diagrams,
};
use super::TestReport;
use crate::dist::RandomSource;
use crate::domain::IndexDomain;
use crate::error::Result;
use crate::grid::{validate_plane_partition, Diagram, PlanePartition};
use crate::oracle::{boxed_counts, exact_counts, skew_counts, CountTable};
use crate::pak::{pak_forward, pak_forward_skew, pak_inverse, pak_inverse_skew};
use crate::sampler::gamma_m;

fn table_entry(t: &CountTable, n: u64) -> usize {
    t.get_u64(n as usize).expect("small coefficient") as usize
}

// Discrepancies between the images of `diagrams` and the expected partition set.
fn image_defects(diagrams: &[Diagram], n: u64, expected: &[PlanePartition], count: usize) -> u64 {
    let mut defects = 0u64;
    let mut images = HashSet::new();
    for d in diagrams {
        let (p, _) = pak_forward(d);
        if p.size() != n || !validate_plane_partition(&p.rows()) {
            defects += 1;
        }
        images.insert(p);
    }
    let want: HashSet<&PlanePartition> = expected.iter().collect();
    defects += (diagrams.len() - images.len()) as u64;
    defects += images.len().abs_diff(count) as u64;
    defects += images.iter().filter(|p| !want.contains(p)).count() as u64;
    defects
}

/// The transform on all diagrams of size `0..=n_max` is injective, size
/// preserving, and hits exactly the plane partitions counted by the table.
pub fn bijection_check(n_max: u64) -> Result<TestReport> {
    let table = exact_counts(n_max as usize);
    let mut defects = 0;
    let mut samples = 0;
    for n in 0..=n_max {
        let diagrams = enumerate_diagrams(n)?;
        let partitions = enumerate_partitions(n)?;
        samples += diagrams.len() as u64;
        defects += image_defects(&diagrams, n, &partitions, table_entry(&table, n));
    }
    Ok(TestReport::new(
        format!("bijection n<={n_max}"),
        defects as f64,
        0.0,
        samples,
        0,
    ))
}

/// Diagrams inside an `a x b` box map onto the `a x b`-boxed partitions,
/// for all boxes up to `ab_max x ab_max`.
pub fn boxed_refinement_check(ab_max: usize, n_max: u64) -> Result<TestReport> {
    let mut defects = 0;
    let mut samples = 0;
    for a in 1..=ab_max {
        for b in 1..=ab_max {
            let table = boxed_counts(a, b, n_max as usize);
            for n in 0..=n_max {
                let diagrams = enumerate_diagrams_boxed(a, b, n)?;
                let partitions = enumerate_partitions_boxed(a, b, n)?;
                samples += diagrams.len() as u64;
                defects += image_defects(&diagrams, n, &partitions, table_entry(&table, n));
            }
        }
    }
    Ok(TestReport::new(
        format!("boxed refinement a,b<={ab_max} n<={n_max}"),
        defects as f64,
        0.0,
        samples,
        0,
    ))
}

/// The skew transform maps skew diagrams on `dom` onto the skew plane
/// partitions counted by the table, and inverts.
pub fn skew_check(dom: &IndexDomain, n_max: u64) -> Result<TestReport> {
    let table = skew_counts(dom, n_max as usize);
    let mut defects = 0u64;
    let mut samples = 0;
    for n in 0..=n_max {
        let diagrams = enumerate_skew_diagrams(dom, n)?;
        let want: HashSet<_> = enumerate_skew(dom, n)?.into_iter().collect();
        samples += diagrams.len() as u64;
        let mut images = HashSet::new();
        for d in &diagrams {
            let (p, _) = pak_forward_skew(d);
            if !p.is_skew_plane_partition() || p.total()? != n {
                defects += 1;
            }
            if pak_inverse_skew(&p).ok().as_ref() != Some(d) {
                defects += 1;
            }
            if !want.contains(&p) {
                defects += 1;
            }
            images.insert(p);
        }
        defects += (diagrams.len() - images.len()) as u64;
        defects += images.len().abs_diff(table_entry(&table, n)) as u64;
    }
    Ok(TestReport::new(
        format!("skew {dom} n<={n_max}"),
        defects as f64,
        0.0,
        samples,
        0,
    ))
}

/// Inverse after forward is the identity on all diagrams of size
/// `0..=n_max` and on `random` free samples at `x`.
pub fn roundtrip_check(
    n_max: u64,
    random: u64,
    x: f64,
    rng: &mut RandomSource,
) -> Result<TestReport> {
    let mut defects = 0u64;
    let mut samples = 0u64;
    let mut check = |d: &Diagram| {
        samples += 1;
        let (p, _) = pak_forward(d);
        if pak_inverse(&p).ok().as_ref() != Some(d) {
            defects += 1;
        }
    };
    for n in 0..=n_max {
        enumerate_diagrams(n)?.iter().for_each(&mut check);
    }
    for _ in 0..random {
        check(&gamma_m(x, rng)?);
    }
    Ok(TestReport::new(
        format!("roundtrip n<={n_max} + {random} free samples at x={x}"),
        defects as f64,
        0.0,
        samples,
        rng.seed(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        assert!(bijection_check(8).unwrap().passed);
        assert!(boxed_refinement_check(2, 6).unwrap().passed);
        let dom = IndexDomain::parse("3x3-1x1").unwrap();
        assert!(skew_check(&dom, 6).unwrap().passed);
        let mut rng = RandomSource::new(3, 0);
        let r = roundtrip_check(6, 20, 0.8, &mut rng).unwrap();
        assert!(r.passed);
        assert_eq!(r.seed, 3);
    }
}
