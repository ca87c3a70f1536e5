use crate::error::{Error, Result};

/// A Boltzmann parameter, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BoltzmannParam(f64);

impl BoltzmannParam {
    pub fn new(x: f64) -> Result<BoltzmannParam> {
        if x > 0.0 && x < 1.0 {
            Ok(BoltzmannParam(x))
        } else {
            Err(Error::InvalidParameter(x))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetMode {
    Exact,
    Approximate,
}

/// Target size `n`, optionally widened to `[n(1 - eps), n(1 + eps)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetSpec {
    n: u64,
    epsilon: Option<f64>,
}

impl TargetSpec {
    pub fn exact(n: u64) -> Result<TargetSpec> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "target size must be at least 1".into(),
            ));
        }
        Ok(TargetSpec { n, epsilon: None })
    }

    pub fn approximate(n: u64, epsilon: f64) -> Result<TargetSpec> {
        let mut spec = TargetSpec::exact(n)?;
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance ratio must lie in (0, 1), got {epsilon}"
            )));
        }
        spec.epsilon = Some(epsilon);
        Ok(spec)
    }

    pub fn new(n: u64, epsilon: Option<f64>) -> Result<TargetSpec> {
        match epsilon {
            Some(eps) => TargetSpec::approximate(n, eps),
            None => TargetSpec::exact(n),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn mode(&self) -> TargetMode {
        match self.epsilon {
            Some(_) => TargetMode::Approximate,
            None => TargetMode::Exact,
        }
    }

    /// Accepted sizes as an inclusive range; approximate bounds are rounded
    /// outward to `ceil(n(1 - eps))..=floor(n(1 + eps))`.
    pub fn window(&self) -> (u64, u64) {
        match self.epsilon {
            None => (self.n, self.n),
            Some(eps) => {
                let n = self.n as f64;
                let lo = (n * (1.0 - eps)).ceil().max(1.0) as u64;
                let hi = (n * (1.0 + eps)).floor() as u64;
                (lo.min(self.n), hi.max(self.n))
            }
        }
    }

    #[inline]
    pub fn accepts(&self, size: u64) -> bool {
        let (lo, hi) = self.window();
        (lo..=hi).contains(&size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(TargetSpec::exact(7).unwrap().window(), (7, 7));
        assert_eq!(
            TargetSpec::approximate(10_000, 0.1).unwrap().window(),
            (9_000, 11_000)
        );
        assert_eq!(TargetSpec::approximate(10, 0.25).unwrap().window(), (8, 12));
        assert_eq!(TargetSpec::approximate(1, 0.3).unwrap().window(), (1, 1));
        assert_eq!(
            TargetSpec::approximate(1_000_000, 0.05).unwrap().window(),
            (950_000, 1_050_000)
        );
    }

    #[test]
    fn invalid_specs() {
        assert!(TargetSpec::exact(0).is_err());
        assert!(TargetSpec::approximate(5, 0.0).is_err());
        assert!(TargetSpec::approximate(5, 1.0).is_err());
        assert!(TargetSpec::approximate(5, f64::NAN).is_err());
        assert!(BoltzmannParam::new(0.0).is_err());
        assert!(BoltzmannParam::new(1.0).is_err());
        assert!(BoltzmannParam::new(0.5).is_ok());
    }
}
